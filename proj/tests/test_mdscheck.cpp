#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <random>

#include "mdsforge/mdscheck.hpp"

using namespace mdsforge;

namespace {

// assemble the (k+1)x(k+1) representative with interior R
SquareMatrix border_with_ones(const SquareMatrix& r) {
    size_t n = r.n() + 1;
    SquareMatrix m(r.field(), n);
    for (size_t i = 0; i < n; ++i) {
        m.set(0, i, 1);
        m.set(i, 0, 1);
    }
    for (size_t i = 1; i < n; ++i)
        for (size_t j = 1; j < n; ++j) m.set(i, j, r.at(i - 1, j - 1));
    return m;
}

}  // namespace

TEST_CASE("is_mds basics") {
    auto F = make_field("2^4/0x13");
    CHECK_FALSE(is_mds(SquareMatrix::identity(F, 2)));
    CHECK_FALSE(is_mds(SquareMatrix::identity(F, 4)));
    CHECK(is_mds(SquareMatrix(F, 1, {0x5})));

    // the worked 4x4 example matrix is MDS
    auto M = SquareMatrix::parse(F, "0xD,0x7,0xA,0x3;0x7,0xD,0x3,0xA;0xA,0x3,0xD,0x7;0x3,0xA,0x7,0xD");
    CHECK(is_mds(M));
}

TEST_CASE("2x2 MDS census over F_4") {
    auto F = make_field("2^2/0x7");
    int count = 0;
    for (uint64_t code = 0; code < 256; ++code) {
        std::vector<uint64_t> e = {code & 3, (code >> 2) & 3, (code >> 4) & 3, (code >> 6) & 3};
        count += is_mds(SquareMatrix(F, 2, e));
    }
    CHECK(count == 54);
}

TEST_CASE("is_involutory") {
    auto F = make_field("2^4/0x13");
    CHECK(is_involutory(SquareMatrix::identity(F, 3)));

    auto M = SquareMatrix::parse(F, "0xA,0xC,0x6,0x1;0xC,0xA,0x1,0x6;0x6,0x1,0xA,0xC;0x1,0x6,0xC,0xA");
    CHECK(is_involutory(M));
    CHECK_FALSE(is_involutory(SquareMatrix::parse(F, "0x1,0x1;0x1,0x2")));

    // a representative matrix is never involutory: its (1,1) entry would need
    // the whole first row of ones to cancel against the first column of ones
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<uint64_t> d(0, 15);
    for (int t = 0; t < 200; ++t) {
        SquareMatrix r(F, 3);
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 3; ++j) r.set(i, j, d(rng));
        CHECK_FALSE(is_involutory(border_with_ones(r)));
    }
}

TEST_CASE("check_R on 1x1 interiors") {
    auto F = make_field("2^4/0x13");
    for (uint64_t a = 2; a < 16; ++a) CHECK(check_R(SquareMatrix(F, 1, {a})).empty());
    CHECK(check_R(SquareMatrix(F, 1, {1})).front().kind == RViolationKind::EntryOne);
    CHECK(check_R(SquareMatrix(F, 1, {0})).front().kind == RViolationKind::NotMds);

    auto F7 = make_field("7");
    for (uint64_t a = 2; a < 7; ++a) CHECK(check_R(SquareMatrix(F7, 1, {a})).empty());
}

TEST_CASE("check_R violation classes and fail-fast order") {
    auto F = make_field("2^3/0xB");

    // entry equal to one is reported before anything else
    auto v1 = check_R(SquareMatrix::parse(F, "0x1,0x1;0x2,0x2"));
    REQUIRE_FALSE(v1.empty());
    for (const auto& v : v1) CHECK(v.kind == RViolationKind::EntryOne);
    CHECK(v1.size() == 2);
    CHECK(v1[0].rows == std::vector<size_t>{0});
    CHECK(v1[0].cols == std::vector<size_t>{0});

    // repeats in a row
    auto v2 = check_R(SquareMatrix::parse(F, "0x2,0x2;0x3,0x4"));
    REQUIRE_FALSE(v2.empty());
    CHECK(v2[0].kind == RViolationKind::RepeatInRowOrCol);
    CHECK(v2[0].rows == std::vector<size_t>{0});
    CHECK(v2[0].cols == std::vector<size_t>{0, 1});

    // repeats in a column
    auto v2c = check_R(SquareMatrix::parse(F, "0x2,0x3;0x2,0x4"));
    REQUIRE_FALSE(v2c.empty());
    CHECK(v2c[0].kind == RViolationKind::RepeatInRowOrCol);
    CHECK(v2c[0].rows == std::vector<size_t>{0, 1});
    CHECK(v2c[0].cols == std::vector<size_t>{0});

    // singular 2x2 over F_7 with distinct rows/columns: 2*6 = 3*4
    auto F7 = make_field("7");
    auto v3 = check_R(SquareMatrix::parse(F7, "2,3;4,6"));
    REQUIRE_FALSE(v3.empty());
    CHECK(v3[0].kind == RViolationKind::NotMds);
    CHECK(v3[0].rows == std::vector<size_t>{0, 1});
    CHECK(v3[0].cols == std::vector<size_t>{0, 1});

    // fixtures found by exhaustive scan: first failing class is exactly these
    auto v5 = check_R(SquareMatrix::parse(F, "0x5,0x7,0x4;0x7,0x2,0x3;0x4,0x3,0x2"));
    REQUIRE_FALSE(v5.empty());
    CHECK(v5[0].kind == RViolationKind::RMinusUSingular);

    auto v6 = check_R(SquareMatrix::parse(F, "0x2,0x7,0x4;0x5,0x2,0x3;0x4,0x3,0x2"));
    REQUIRE_FALSE(v6.empty());
    CHECK(v6[0].kind == RViolationKind::ModifiedSingular);
    CHECK(v6[0].rows == std::vector<size_t>{0});
    CHECK(v6[0].cols.empty());
}

TEST_CASE("check_R survivor count over F_8 is 390") {
    auto F = make_field("2^3/0xB");
    int count = 0;
    for (uint64_t a = 0; a < 8; ++a)
        for (uint64_t b = 0; b < 8; ++b)
            for (uint64_t c = 0; c < 8; ++c)
                for (uint64_t d = 0; d < 8; ++d) {
                    uint64_t r[4] = {a, b, c, d};
                    count += check_R_codes(*F, r, 2);
                }
    CHECK(count == 390);  // (2^3-2)(2^3-3)(2^6 - 9*2^3 + 21)
}

TEST_CASE("check_R_order2 closed form") {
    auto F = make_field("2^3/0xB");
    CHECK_FALSE(check_R_order2(F->el(2), F->el(2), F->el(3), F->el(4)));  // b == a

    // exhaustive agreement: closed form == check_R == is_mds of assembled 3x3
    for (uint64_t a = 0; a < 8; ++a)
        for (uint64_t b = 0; b < 8; ++b)
            for (uint64_t c = 0; c < 8; ++c)
                for (uint64_t d = 0; d < 8; ++d) {
                    bool fast = check_R_order2_codes(*F, a, b, c, d);
                    uint64_t r[4] = {a, b, c, d};
                    CHECK(fast == check_R_codes(*F, r, 2));
                    SquareMatrix R(F, 2, {a, b, c, d});
                    CHECK(fast == is_mds(border_with_ones(R)));
                }

    // over F_4 exactly two tuples survive
    auto F4 = make_field("2^2/0x7");
    int count = 0;
    std::vector<std::array<uint64_t, 4>> passes;
    for (uint64_t a = 0; a < 4; ++a)
        for (uint64_t b = 0; b < 4; ++b)
            for (uint64_t c = 0; c < 4; ++c)
                for (uint64_t d = 0; d < 4; ++d)
                    if (check_R_order2_codes(*F4, a, b, c, d)) {
                        ++count;
                        passes.push_back({a, b, c, d});
                    }
    CHECK(count == 2);
    // they are [[w, w^2],[w^2, w]] and its conjugate -- entries drawn from {w, w^2}
    for (auto& t : passes)
        for (uint64_t e : t) CHECK(e >= 2);

    // odd characteristic routes through the same five conditions
    auto F7 = make_field("7");
    for (uint64_t a = 0; a < 7; ++a)
        for (uint64_t b = 0; b < 7; ++b)
            for (uint64_t c = 0; c < 7; ++c)
                for (uint64_t d = 0; d < 7; ++d) {
                    bool fast = check_R_order2_codes(*F7, a, b, c, d);
                    SquareMatrix R(F7, 2, {a, b, c, d});
                    CHECK(fast == is_mds(border_with_ones(R)));
                }
}

TEST_CASE("is_representative_mds") {
    auto F = make_field("2^4/0x13");
    auto M1 = SquareMatrix::parse(F, "0x1,0x1,0x1,0x1;0x1,0xC,0xD,0x5;0x1,0xD,0x5,0x7;0x1,0x5,0x7,0x8");
    CHECK(is_representative_mds(M1));
    CHECK(is_mds(M1));

    for (uint64_t a = 2; a < 16; ++a)
        CHECK(is_representative_mds(SquareMatrix(F, 2, {1, 1, 1, a})));
    CHECK_FALSE(is_representative_mds(SquareMatrix(F, 2, {1, 1, 1, 1})));

    CHECK_THROWS_AS(is_representative_mds(SquareMatrix::identity(F, 3)),
                    std::invalid_argument);
}

TEST_CASE("order-3 minors escape the five conditions at n = 5") {
    // This interior passes all five conditions, yet the bordered 5x5 cannot
    // be MDS (there is no [10,5] MDS code over GF(8)); the failures sit
    // exactly at minor order 3, the order the conditions leave open.
    auto F = make_field("2^3/0xB");
    auto R = SquareMatrix::parse(F, "0x7,0x4,0x3,0x5;0x4,0x2,0x7,0x6;0x3,0x5,0x6,0x2;0x6,0x7,0x2,0x3");
    CHECK(check_R(R).empty());

    auto M1 = border_with_ones(R);
    CHECK_FALSE(is_representative_mds(M1));
    CHECK_FALSE(is_mds(M1));

    int zero3 = 0;
    std::vector<std::vector<size_t>> triples;
    for (size_t a = 0; a < 5; ++a)
        for (size_t b = a + 1; b < 5; ++b)
            for (size_t c = b + 1; c < 5; ++c) triples.push_back({a, b, c});
    for (const auto& rs : triples)
        for (const auto& cs : triples) zero3 += minor_det(M1, rs, cs) == 0;
    CHECK(zero3 == 8);

    // orders 1, 2, 4 and 5 are all fine, exactly as the theory promises
    for (size_t i = 0; i < 5; ++i)
        for (size_t j = 0; j < 5; ++j) CHECK(M1.at(i, j) != 0);
    for (size_t r1 = 0; r1 < 5; ++r1)
        for (size_t r2 = r1 + 1; r2 < 5; ++r2)
            for (size_t c1 = 0; c1 < 5; ++c1)
                for (size_t c2 = c1 + 1; c2 < 5; ++c2)
                    CHECK(minor_det(M1, {r1, r2}, {c1, c2}) != 0);
    for (size_t r = 0; r < 5; ++r)
        for (size_t c = 0; c < 5; ++c) {
            std::vector<size_t> rs, cs;
            for (size_t i = 0; i < 5; ++i) {
                if (i != r) rs.push_back(i);
                if (i != c) cs.push_back(i);
            }
            CHECK(minor_det(M1, rs, cs) != 0);
        }
    CHECK(det(M1) != 0);
}

TEST_CASE("representative equivalence, exhaustive n = 3 over F_4") {
    auto F = make_field("2^2/0x7");
    for (uint64_t code = 0; code < 256; ++code) {
        std::vector<uint64_t> e = {code & 3, (code >> 2) & 3, (code >> 4) & 3, (code >> 6) & 3};
        SquareMatrix R(F, 2, e);
        CHECK(is_representative_mds(border_with_ones(R)) == is_mds(border_with_ones(R)));
    }
}

TEST_CASE("representative equivalence, sampled n = 4 over F_8") {
    auto F = make_field("2^3/0xB");
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<uint64_t> d(0, 7);
    for (int t = 0; t < 3000; ++t) {
        SquareMatrix R(F, 3);
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 3; ++j) R.set(i, j, d(rng));
        auto M1 = border_with_ones(R);
        CHECK(is_representative_mds(M1) == is_mds(M1));
    }
}
