#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "mdsforge/decomp.hpp"
#include "mdsforge/mdscheck.hpp"

using namespace mdsforge;

namespace {

const char* kM36 = "0xD,0x7,0xA,0x3;0x7,0xD,0x3,0xA;0xA,0x3,0xD,0x7;0x3,0xA,0x7,0xD";
const char* kM38 = "0xA,0xC,0x6,0x1;0xC,0xA,0x1,0x6;0x6,0x1,0xA,0xC;0x1,0x6,0xC,0xA";
const char* kM1 = "0x1,0x1,0x1,0x1;0x1,0xC,0xD,0x5;0x1,0xD,0x5,0x7;0x1,0x5,0x7,0x8";

SquareMatrix rep3(const std::shared_ptr<const Field>& F, uint64_t a, uint64_t b, uint64_t c,
                  uint64_t d) {
    return SquareMatrix(F, 3, {1, 1, 1, 1, a, b, 1, c, d});
}

}  // namespace

TEST_CASE("decompose the 4x4 worked example") {
    auto F = make_field("2^4/0x13");
    auto M = SquareMatrix::parse(F, kM36);
    auto t = decompose(M);
    CHECK(t.d1.diag() == std::vector<uint64_t>{0xD, 0x7, 0xA, 0x3});
    CHECK(t.d2.diag() == std::vector<uint64_t>{0x1, 0xF, 0xE, 0xC});
    CHECK(t.m1 == SquareMatrix::parse(F, kM1));
    CHECK(compose(t) == M);

    // the involutory variant shares the same M1; its D1 carries the lambdas
    auto t8 = decompose(SquareMatrix::parse(F, kM38));
    CHECK(t8.m1 == t.m1);
    CHECK(t8.d1.diag() == std::vector<uint64_t>{0xA, 0xC, 0x6, 0x1});
}

TEST_CASE("decompose fixes representatives") {
    auto F = make_field("2^4/0x13");
    auto M1 = SquareMatrix::parse(F, kM1);
    auto t = decompose(M1);
    CHECK(t.d1.diag() == std::vector<uint64_t>(4, 1));
    CHECK(t.d2.diag() == std::vector<uint64_t>(4, 1));
    CHECK(t.m1 == M1);
}

TEST_CASE("decompose refuses zero entries") {
    auto F = make_field("2^3/0xB");
    CHECK_THROWS_AS(decompose(SquareMatrix::identity(F, 3)), std::domain_error);
}

TEST_CASE("round trips both ways") {
    auto F = make_field("2^3/0xB");
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<uint64_t> dnz(1, 7);

    for (size_t n : {2, 3, 4})
        for (int t = 0; t < 333; ++t) {
            SquareMatrix M(F, n);
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j) M.set(i, j, dnz(rng));
            auto tr = decompose(M);
            CHECK(compose(tr) == M);
            CHECK(has_ones_border(tr.m1));
            CHECK(tr.d2.at(0) == 1);
        }

    for (int t = 0; t < 500; ++t) {
        size_t n = 3;
        std::vector<uint64_t> d1(n), d2(n);
        for (auto& v : d1) v = dnz(rng);
        d2[0] = 1;
        for (size_t i = 1; i < n; ++i) d2[i] = dnz(rng);
        SquareMatrix m1(F, n);
        for (size_t i = 0; i < n; ++i) {
            m1.set(0, i, 1);
            m1.set(i, 0, 1);
        }
        for (size_t i = 1; i < n; ++i)
            for (size_t j = 1; j < n; ++j) m1.set(i, j, dnz(rng));
        DecompositionTriple triple{DiagonalMatrix(F, d1), m1, DiagonalMatrix(F, d2)};
        auto back = decompose(compose(triple));
        CHECK(back.d1 == triple.d1);
        CHECK(back.d2 == triple.d2);
        CHECK(back.m1 == triple.m1);
    }
}

TEST_CASE("compose validates its triple") {
    auto F = make_field("2^3/0xB");
    auto M1 = rep3(F, 2, 3, 3, 6);
    DiagonalMatrix good(F, {2, 3, 4}), bad0(F, {2, 0, 4});
    DiagonalMatrix d2(F, {1, 5, 6}), d2bad(F, {2, 5, 6});
    CHECK_NOTHROW(compose({good, M1, d2}));
    CHECK_THROWS_AS(compose({bad0, M1, d2}), std::invalid_argument);
    CHECK_THROWS_AS(compose({good, M1, d2bad}), std::invalid_argument);
    CHECK_THROWS_AS(compose({good, SquareMatrix::identity(F, 3), d2}), std::invalid_argument);
    CHECK_THROWS_AS(compose({DiagonalMatrix(F, {2, 3}), M1, d2}), std::invalid_argument);
}

TEST_CASE("certificate for the worked example") {
    auto F = make_field("2^4/0x13");
    auto M1 = SquareMatrix::parse(F, kM1);
    auto cert = involutory_certificate(M1);
    REQUIRE(cert.has_value());
    CHECK(cert->alphas == std::vector<uint64_t>{0xA, 0x8, 0x2, 0xC});

    // certificate existence is a property of M1, not of the sandwich: the
    // non-involutory example shares this M1
    CHECK_FALSE(is_involutory(SquareMatrix::parse(F, kM36)));
    CHECK(is_involutory(SquareMatrix::parse(F, kM38)));

    auto member = involutory_member(M1, *cert, {0xC, 0x6, 0x1});
    CHECK(member == SquareMatrix::parse(F, kM38));
    CHECK(is_involutory(member));
    CHECK(is_mds(member));

    std::mt19937_64 rng(31);
    std::uniform_int_distribution<uint64_t> dnz(1, 15);
    for (int t = 0; t < 100; ++t) {
        std::vector<uint64_t> lam = {dnz(rng), dnz(rng), dnz(rng)};
        auto m = involutory_member(M1, *cert, lam);
        CHECK(is_involutory(m));
        CHECK(is_mds(m));
    }
}

TEST_CASE("certificate requires representative, non-singular input") {
    auto F = make_field("2^4/0x13");
    CHECK_THROWS_AS(involutory_certificate(SquareMatrix::identity(F, 3)),
                    std::invalid_argument);
    CHECK_THROWS_AS(involutory_certificate(SquareMatrix::all_ones(F, 3)), std::domain_error);
}

TEST_CASE("members are injective in lambda") {
    auto F = make_field("2^3/0xB");
    auto M1 = rep3(F, 2, 3, 3, 6);
    auto cert = involutory_certificate(M1);
    REQUIRE(cert.has_value());
    std::set<std::vector<uint64_t>> seen;
    for (uint64_t l2 = 1; l2 < 8; ++l2)
        for (uint64_t l3 = 1; l3 < 8; ++l3) {
            auto m = involutory_member(M1, *cert, {l2, l3});
            CHECK(is_involutory(m));
            seen.insert(m.codes());
        }
    CHECK(seen.size() == 49);
}

TEST_CASE("absent certificate really means no involutory sandwich") {
    auto F = make_field("2^3/0xB");
    auto M1 = rep3(F, 2, 3, 3, 2);  // passes check_R, fails the pairwise test
    CHECK(is_representative_mds(M1));
    CHECK_FALSE(involutory_certificate(M1).has_value());
    // exhaustive: no diagonal pair whatsoever turns this M1 involutory
    for (uint64_t l1 = 1; l1 < 8; ++l1)
        for (uint64_t l2 = 1; l2 < 8; ++l2)
            for (uint64_t l3 = 1; l3 < 8; ++l3)
                for (uint64_t t2 = 1; t2 < 8; ++t2)
                    for (uint64_t t3 = 1; t3 < 8; ++t3) {
                        auto m = sandwich(DiagonalMatrix(F, {l1, l2, l3}), M1,
                                          DiagonalMatrix(F, {1, t2, t3}));
                        CHECK_FALSE(is_involutory(m));
                    }
}

TEST_CASE("refusal classes over F_8, exhaustively") {
    auto F = make_field("2^3/0xB");
    int cert = 0, nonqr = 0, asym = 0, pair = 0;
    for (uint64_t a = 2; a < 8; ++a)
        for (uint64_t b = 2; b < 8; ++b)
            for (uint64_t c = 2; c < 8; ++c)
                for (uint64_t d = 2; d < 8; ++d) {
                    if (!check_R_order2_codes(*F, a, b, c, d)) continue;
                    auto out = certificate_explain(rep3(F, a, b, c, d));
                    if (out.cert)
                        ++cert;
                    else if (out.failure == CertFailure::NonQrDiagonalRatio)
                        ++nonqr;
                    else if (out.failure == CertFailure::AsymmetricRatio)
                        ++asym;
                    else
                        ++pair;
                }
    CHECK(cert == 24);  // 1176 involutory MDS / 7^2 lambda choices
    CHECK(nonqr == 0);  // characteristic 2: diagonal ratios are always residues here
    CHECK(asym == 288);
    CHECK(pair == 78);
    CHECK(cert + nonqr + asym + pair == 390);

    auto o1 = certificate_explain(rep3(F, 2, 3, 4, 2));
    CHECK_FALSE(o1.cert.has_value());
    CHECK(o1.failure == CertFailure::AsymmetricRatio);
    auto o2 = certificate_explain(rep3(F, 2, 3, 3, 2));
    CHECK_FALSE(o2.cert.has_value());
    CHECK(o2.failure == CertFailure::PairwiseMismatch);
}

TEST_CASE("certified implies symmetric first line and QR corner") {
    auto F = make_field("2^3/0xB");
    for (uint64_t a = 2; a < 8; ++a)
        for (uint64_t b = 2; b < 8; ++b)
            for (uint64_t c = 2; c < 8; ++c)
                for (uint64_t d = 2; d < 8; ++d) {
                    if (!check_R_order2_codes(*F, a, b, c, d)) continue;
                    auto M1 = rep3(F, a, b, c, d);
                    if (!involutory_certificate(M1)) continue;
                    auto M2 = inverse(M1);
                    CHECK(F->is_qr(M2.at(0, 0)));
                    for (size_t i = 1; i < 3; ++i) CHECK(M2.at(i, 0) == M2.at(0, i));
                }
}

TEST_CASE("odd characteristic: canonical and negated certificates") {
    auto F5 = make_field("5");
    // n=2 representatives are [[1,1],[1,a]]; only a=3 admits a certificate
    CHECK(certificate_explain(SquareMatrix(F5, 2, {1, 1, 1, 2})).failure ==
          CertFailure::NonQrDiagonalRatio);
    CHECK(involutory_certificate(SquareMatrix(F5, 2, {1, 1, 1, 3})).has_value());
    CHECK_FALSE(involutory_certificate(SquareMatrix(F5, 2, {1, 1, 1, 4})).has_value());

    auto F7 = make_field("7");
    std::set<std::vector<uint64_t>> family;
    int certified = 0;
    for (uint64_t a = 2; a < 7; ++a) {
        SquareMatrix M1(F7, 2, {1, 1, 1, a});
        auto cert = involutory_certificate(M1);
        if (!cert) continue;
        ++certified;
        auto negc = negate_certificate(*cert);
        CHECK(negc.alphas != cert->alphas);
        for (uint64_t lam = 1; lam < 7; ++lam) {
            for (const auto& cc : {*cert, negc}) {
                auto m = involutory_member(M1, cc, {lam});
                CHECK(is_involutory(m));
                CHECK(is_mds(m));
                family.insert(m.codes());
            }
        }
    }
    CHECK(certified == 2);  // a = 2 and a = 6
    // both sign families together hit every involutory MDS matrix exactly once
    std::set<std::vector<uint64_t>> brute;
    for (uint64_t code = 0; code < 7 * 7 * 7 * 7; ++code) {
        uint64_t t = code;
        std::vector<uint64_t> e(4);
        for (auto& v : e) {
            v = t % 7;
            t /= 7;
        }
        SquareMatrix m(F7, 2, e);
        if (is_involutory(m) && is_mds(m)) brute.insert(e);
    }
    CHECK(brute.size() == 24);
    CHECK(family == brute);

    // characteristic 2: negation is the identity
    auto F = make_field("2^4/0x13");
    auto cert2 = involutory_certificate(SquareMatrix::parse(F, kM1));
    REQUIRE(cert2.has_value());
    CHECK(negate_certificate(*cert2).alphas == cert2->alphas);
}

TEST_CASE("involutory_member argument validation") {
    auto F = make_field("2^3/0xB");
    auto M1 = rep3(F, 2, 3, 3, 6);
    auto cert = involutory_certificate(M1);
    REQUIRE(cert.has_value());
    CHECK_THROWS_AS(involutory_member(M1, *cert, {0, 1}), std::domain_error);
    CHECK_THROWS_AS(involutory_member(M1, *cert, {1}), std::invalid_argument);
    InvolutoryCertificate wrong{make_field("2^4/0x13"), {1, 1, 1}};
    CHECK_THROWS_AS(involutory_member(M1, wrong, {1, 1}), std::invalid_argument);
}
