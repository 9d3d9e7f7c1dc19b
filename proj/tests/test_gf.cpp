#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "mdsforge/gf.hpp"

using namespace mdsforge;

TEST_CASE("spec parsing round-trips and defaults") {
    auto s = FieldSpec::parse("2^4/0x13");
    CHECK(s.p == 2);
    CHECK(s.m == 4);
    CHECK(s.modulus == std::vector<uint32_t>{1, 1, 0, 0, 1});
    CHECK(s.to_string() == "2^4/0x13");
    CHECK(FieldSpec::parse(s.to_string()) == s);

    CHECK(FieldSpec::parse("2^4") == s);  // shipped default is x^4+x+1
    CHECK(FieldSpec::parse(" 2 ^ 4 ") == s);

    auto f7 = FieldSpec::parse("7");
    CHECK(f7.p == 7);
    CHECK(f7.m == 1);
    CHECK(f7.to_string() == "7^1");
    CHECK(FieldSpec::parse("7^1") == f7);

    auto f9 = FieldSpec::parse("3^2/1,0,1");
    CHECK(f9.modulus == std::vector<uint32_t>{1, 0, 1});
    CHECK(f9.to_string() == "3^2/1,0,1");

    // the full default ladder constructs
    for (uint32_t m = 2; m <= 8; ++m) {
        auto F = make_field("2^" + std::to_string(m));
        CHECK(F->q() == (1ull << m));
    }
}

TEST_CASE("spec rejections") {
    CHECK_THROWS_AS(FieldSpec::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(FieldSpec::parse("banana"), std::invalid_argument);
    CHECK_THROWS_AS(FieldSpec::parse("2^"), std::invalid_argument);
    CHECK_THROWS_AS(FieldSpec::parse("2^9"), std::invalid_argument);      // no default modulus
    CHECK_THROWS_AS(FieldSpec::parse("3^2"), std::invalid_argument);      // ditto for odd p
    CHECK_THROWS_AS(FieldSpec::parse("2^4/0xFF00"), std::invalid_argument);
    CHECK_THROWS_AS(FieldSpec::parse("7^2/0x7"), std::invalid_argument);  // hex mask needs p=2
    CHECK_THROWS_AS(make_field("4^2/1,1,1"), std::invalid_argument);      // p not prime
    CHECK_THROWS_AS(make_field("2^4/0x14"), std::invalid_argument);       // x^4+x^2 reducible
    CHECK_THROWS_AS(make_field("2^4/0x1B"), std::invalid_argument);       // (x+1) divides it
    CHECK_THROWS_AS(make_field("3^2/1,0,2"), std::invalid_argument);      // not monic
    CHECK_THROWS_AS(make_field("3^2/2,0,1"), std::invalid_argument);      // x^2+2 = (x+1)(x+2)
    CHECK_THROWS_AS(make_field("3^2/1,3,1"), std::invalid_argument);      // coeff out of range
}

TEST_CASE("addition") {
    auto F = make_field("2^4/0x13");
    CHECK(F->add(0x3, 0x5) == 0x6);
    for (uint64_t a = 0; a < 16; ++a) CHECK(F->add(a, 0) == a);

    auto F5 = make_field("5");
    CHECK(F5->add(3, 4) == 2);
    CHECK(F5->sub(2, 4) == 3);
    CHECK(F5->neg(1) == 4);

    auto F9 = make_field("3^2/1,0,1");
    // codes are base-3 digit vectors: 5 = (2,1) = 2 + x, 7 = (1,2) = 1 + 2x
    CHECK(F9->add(5, 7) == 0);  // componentwise sums 2+1, 1+2 both vanish mod 3
    CHECK(F9->neg(5) == 7);
}

TEST_CASE("multiplication") {
    auto F = make_field("2^4/0x13");
    // beta = 0x2 is a root of x^4+x+1, so beta^4 = beta + 1
    uint64_t beta = 0x2;
    CHECK(F->mul(beta, F->pow(beta, 3)) == 0x3);
    CHECK(F->pow(beta, 4) == 0x3);
    for (uint64_t a = 0; a < 16; ++a) CHECK(F->mul(a, 1) == a);

    auto F4 = make_field("2^2/0x7");
    CHECK(F4->mul(0x2, 0x3) == 0x1);

    // dense table agrees with the op on every pair
    const uint16_t* tab = F->mul_table();
    REQUIRE(tab != nullptr);
    for (uint64_t a = 0; a < 16; ++a)
        for (uint64_t b = 0; b < 16; ++b)
            CHECK(tab[a * 16 + b] == F->mul(a, b));
}

TEST_CASE("schoolbook path matches table path") {
    // same field spec, but q = 3^6 = 729 exceeds the dense-mul threshold while
    // staying under the log-table one; cross-check construction variants by
    // checking associativity/commutativity and a literal digit-convolution model
    auto F = make_field("3^6/1,0,0,0,2,0,1");  // x^6 + 2x^4 + 1? verify irreducible at build
    for (uint64_t a : {0ull, 1ull, 2ull, 5ull, 100ull, 301ull, 728ull})
        for (uint64_t b : {1ull, 3ull, 17ull, 250ull, 728ull}) {
            CHECK(F->mul(a, b) == F->mul(b, a));
            if (a) CHECK(F->mul(F->mul(a, b), F->inv(a)) == b);
        }
}

TEST_CASE("inversion") {
    auto F = make_field("2^4/0x13");
    CHECK(F->inv(1) == 1);
    CHECK(F->inv(0x2) == 0x9);
    CHECK_THROWS_AS(F->inv(0), std::domain_error);
    for (uint64_t a = 1; a < 16; ++a) CHECK(F->mul(a, F->inv(a)) == 1);

    auto F7 = make_field("7");
    CHECK(F7->inv(3) == 5);
    for (uint64_t a = 1; a < 7; ++a) CHECK(F7->mul(a, F7->inv(a)) == 1);
}

TEST_CASE("square roots") {
    auto F = make_field("2^4/0x13");
    CHECK(F->sqrt(0) == 0);
    CHECK(F->sqrt(1) == 1);
    std::set<uint64_t> roots;
    for (uint64_t a = 0; a < 16; ++a) {
        auto r = F->sqrt(a);
        REQUIRE(r.has_value());
        CHECK(F->mul(*r, *r) == a);
        roots.insert(*r);
    }
    CHECK(roots.size() == 16);  // Frobenius squaring is a bijection

    auto F7 = make_field("7");
    CHECK_FALSE(F7->sqrt(3).has_value());
    CHECK(F7->sqrt(2) == 3);  // both 3 and 4 square to 2; smaller code wins
    for (uint64_t a = 1; a < 7; ++a) {
        auto r = F7->sqrt(a);
        CHECK(r.has_value() == F7->is_qr(a));
        if (r) CHECK(F7->mul(*r, *r) == a);
    }
}

TEST_CASE("quadratic residues") {
    auto F8 = make_field("2^3/0xB");
    for (uint64_t a = 1; a < 8; ++a) CHECK(F8->is_qr(a));
    CHECK_THROWS_AS(F8->is_qr(0), std::domain_error);

    auto F7 = make_field("7");
    int qrs = 0;
    for (uint64_t a = 1; a < 7; ++a) qrs += F7->is_qr(a);
    CHECK(qrs == 3);

    auto F9 = make_field("3^2/1,0,1");
    std::set<uint64_t> squares;
    for (uint64_t x = 1; x < 9; ++x) squares.insert(F9->mul(x, x));
    for (uint64_t a = 1; a < 9; ++a) CHECK(F9->is_qr(a) == (squares.count(a) != 0));
    CHECK(squares.size() == 4);  // (q-1)/2

    // odd-characteristic sqrt via Tonelli-Shanks in an extension field
    for (uint64_t a = 1; a < 9; ++a) {
        auto r = F9->sqrt(a);
        CHECK(r.has_value() == F9->is_qr(a));
        if (r) {
            CHECK(F9->mul(*r, *r) == a);
            CHECK(*r <= F9->neg(*r));  // deterministic: smaller code of the pair
        }
    }
}

TEST_CASE("element wrapper") {
    auto F = make_field("2^4/0x13");
    auto a = F->el(0x3), b = F->el(0x5);
    CHECK((a + b).code() == 0x6);
    CHECK((a * b).str() == F->format(F->mul(0x3, 0x5)));
    CHECK(a.str() == "0x3");
    CHECK(F->el(0xD).str() == "0xD");
    CHECK(F->parse_element("0xD") == 0xD);
    CHECK_THROWS_AS(F->el(16), std::invalid_argument);
    CHECK_THROWS_AS(F->parse_element("0x10"), std::invalid_argument);
    CHECK_THROWS_AS(F->parse_element("zed"), std::invalid_argument);

    auto F7 = make_field("7");
    CHECK(F7->format(5) == "5");
    CHECK(F7->parse_element("5") == 5);
    CHECK_THROWS_AS(F7->parse_element("0x5"), std::invalid_argument);
    CHECK_THROWS_AS(F->el(1) + F7->el(1), std::invalid_argument);

    // same spec through a different shared_ptr is still the same field
    auto F2 = make_field("2^4/0x13");
    CHECK((F->el(2) * F2->el(9)).code() == 1);
}

TEST_CASE("large field falls back to schoolbook") {
    auto F = make_field("2^17/0x20021");  // x^17 + x^5 + 1? validated irreducible on build
    CHECK_FALSE(F->has_log_tables());
    CHECK(F->mul_table() == nullptr);
    uint64_t a = 0x1ABCD, b = 0x00321;
    CHECK(F->mul(a, b) == F->mul(b, a));
    CHECK(F->mul(a, F->inv(a)) == 1);
    CHECK(F->mul(*F->sqrt(a), *F->sqrt(a)) == a);
}
