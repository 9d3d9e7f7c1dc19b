#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mdsforge/counting.hpp"
#include "mdsforge/enumerate.hpp"

using namespace mdsforge;

namespace {

// Just enough 256-bit arithmetic to check the polynomial identity past the
// point where the public API refuses for overflow. Products of two u128s,
// split into 64-bit halves.
struct U256 {
    u128 hi = 0, lo = 0;
    friend bool operator==(const U256&, const U256&) = default;
};

U256 mul_wide(u128 a, u128 b) {
    const u128 mask = ~(uint64_t)0;
    const u128 a0 = a & mask, a1 = a >> 64;
    const u128 b0 = b & mask, b1 = b >> 64;
    const u128 p00 = a0 * b0;
    const u128 p01 = a0 * b1;
    const u128 p10 = a1 * b0;
    const u128 p11 = a1 * b1;
    u128 mid = (p00 >> 64) + (p01 & mask) + (p10 & mask);
    U256 r;
    r.lo = (p00 & mask) | (mid << 64);
    r.hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
    return r;
}

U256 sub_wide(U256 a, U256 b) {
    U256 r;
    r.lo = a.lo - b.lo;
    r.hi = a.hi - b.hi - (a.lo < b.lo ? 1 : 0);
    return r;
}

u128 pw(u128 base, unsigned e) {
    u128 r = 1;
    while (e--) r *= base;
    return r;
}

}  // namespace

TEST_CASE("3x3 closed forms reproduce the published tiers") {
    CHECK(formula_rep3(1) == 0);
    CHECK(formula_rep3(2) == 2);
    CHECK(formula_rep3(3) == 390);
    CHECK(formula_rep3(4) == 24206);

    CHECK(formula_mds3(1) == 0);
    CHECK(formula_mds3(2) == 486);
    CHECK(formula_mds3(3) == 6554730);
    CHECK(formula_mds3(4) == 18381431250ull);

    CHECK(formula_inv3(1) == 0);
    CHECK(formula_inv3(2) == 0);
    CHECK(formula_inv3(3) == 1176);
    CHECK(formula_inv3(4) == 37800);

    CHECK(formula_noninv3(2) == 486);
    CHECK(formula_noninv3(3) == 6553554);
    CHECK(formula_noninv3(4) == formula_mds3(4) - formula_inv3(4));
}

TEST_CASE("non-involutory polynomial equals the difference for every degree") {
    for (uint32_t m = 2; m <= 14; ++m) {
        CAPTURE(m);
        CHECK(formula_noninv3(m) == formula_mds3(m) - formula_inv3(m));
    }
    // From m = 15 the totals outgrow 128 bits and the API refuses, so the
    // identity is re-established here in 256 bits from the factored forms.
    for (uint32_t m : {15u, 16u}) {
        CAPTURE(m);
        const u128 x = (u128)1 << m;
        const U256 mds = mul_wide(pw(x - 1, 5),
                                  (x - 2) * (x - 3) * (x * x - 9 * x + 21));
        const U256 inv = mul_wide(pw(x - 1, 2) * (x - 2) * (x - 4), 1);
        // x^6 - 15x^5 + 87x^4 - 244x^3 + 345x^2 - 238x + 67 via signed Horner
        __int128 poly = 1;
        for (__int128 c : {-15, 87, -244, 345, -238, 67}) poly = poly * (__int128)x + c;
        const U256 noninv = mul_wide(pw(x - 1, 2) * (x - 2), (u128)poly);
        CHECK(sub_wide(mds, inv) == noninv);
    }
}

TEST_CASE("overflow and argument refusals") {
    CHECK_THROWS_AS(formula_rep3(0), std::invalid_argument);
    // the quartic-scale forms hug 2^128 at m = 32 and burst at 33
    CHECK_NOTHROW(formula_rep3(32));
    CHECK_THROWS_AS(formula_rep3(33), std::domain_error);
    CHECK_NOTHROW(formula_mds3(14));
    CHECK_THROWS_AS(formula_mds3(15), std::domain_error);
    CHECK_NOTHROW(formula_inv3(32));
    CHECK_THROWS_AS(formula_inv3(33), std::domain_error);
    CHECK_NOTHROW(formula_noninv3(14));
    CHECK_THROWS_AS(formula_noninv3(15), std::domain_error);
}

TEST_CASE("4x4 table carries the published censuses") {
    auto t2 = table_4x4(2);
    REQUIRE(t2.has_value());
    CHECK(t2->rep_mds == 0);
    CHECK(t2->total_mds == 0);
    CHECK(t2->rep_inv == 0);
    CHECK(t2->total_inv == 0);

    auto t3 = table_4x4(3);
    REQUIRE(t3.has_value());
    CHECK(t3->rep_mds == 720);
    CHECK(t3->total_mds == 592950960);  // 720 * 7^7
    CHECK(t3->rep_inv == 48);
    CHECK(t3->total_inv == 16464);  // 48 * 7^3

    auto t4 = table_4x4(4);
    REQUIRE(t4.has_value());
    CHECK(t4->rep_mds == 464227344);
    CHECK(t4->total_mds == u128(464227344) * pw(15, 7));
    CHECK(t4->rep_inv == 71856);
    CHECK(t4->total_inv == 242514000);  // 71856 * 15^3

    CHECK_FALSE(table_4x4(5).has_value());
    CHECK_FALSE(table_4x4(1).has_value());
}

TEST_CASE("known representative counts cover exactly the charted cases") {
    CHECK(known_rep_count(FieldSpec::parse("7"), 2) == u128(5));
    CHECK(known_rep_count(FieldSpec::parse("2^6"), 2) == u128(62));
    CHECK(known_rep_count(FieldSpec::parse("2^5"), 3) == formula_rep3(5));
    CHECK(known_rep_count(FieldSpec::parse("2^3"), 4) == u128(720));
    CHECK_FALSE(known_rep_count(FieldSpec::parse("2^5"), 4).has_value());
    CHECK_FALSE(known_rep_count(FieldSpec::parse("5"), 3).has_value());
    CHECK_FALSE(known_rep_count(FieldSpec::parse("2^3"), 5).has_value());
}

TEST_CASE("verify ties formulas to the census") {
    for (EnumKind kind :
         {EnumKind::Representatives, EnumKind::AllMds, EnumKind::AllInvolutory}) {
        CAPTURE(to_string(kind));
        auto rep = verify(FieldSpec::parse("2^3"), 3, kind);
        CHECK(rep.source == CountSource::ClosedForm);
        REQUIRE(rep.formula_value.has_value());
        REQUIRE(rep.enumerated_value.has_value());
        CHECK(rep.agrees);

        auto rep4 = verify(FieldSpec::parse("2^3"), 4, kind);
        CHECK(rep4.source == CountSource::Table);
        CHECK(rep4.agrees);
    }
    CHECK(*verify(FieldSpec::parse("2^3"), 3, EnumKind::AllMds).enumerated_value == 6554730);
    CHECK(*verify(FieldSpec::parse("2^3"), 4, EnumKind::AllInvolutory).enumerated_value == 16464);

    // GF(4), n = 4: the empty census agrees with the all-zero table row
    auto empty = verify(FieldSpec::parse("2^2"), 4, EnumKind::AllMds);
    CHECK(empty.source == CountSource::Table);
    CHECK(empty.agrees);
    CHECK(*empty.enumerated_value == 0);

    // odd characteristic has no formula: enumeration only, nothing to agree with
    auto odd = verify(FieldSpec::parse("5"), 3, EnumKind::AllInvolutory);
    CHECK(odd.source == CountSource::EnumerationOnly);
    CHECK_FALSE(odd.formula_value.has_value());
    REQUIRE(odd.enumerated_value.has_value());
    CHECK(*odd.enumerated_value == 128);
    CHECK_FALSE(odd.agrees);
}
