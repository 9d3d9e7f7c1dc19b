#pragma once
// Closed-form counts for 3x3 structures over GF(2^m), the tabulated 4x4
// census values for m = 2, 3, 4, and a verifier tying them to enumeration.
// Everything is exact 128-bit integer arithmetic; anything that would not
// fit is refused rather than wrapped.

#include "mdsforge/enumerate.hpp"

namespace mdsforge {

// Number of 2x2 interiors R over GF(2^m) passing all five conditions,
// i.e. of 3x3 representative MDS matrices: (2^m-2)(2^m-3)(2^{2m}-9*2^m+21).
u128 formula_rep3(uint32_t m);
// All 3x3 MDS matrices: (2^m-1)^5 * formula_rep3(m).
u128 formula_mds3(uint32_t m);
// All 3x3 involutory MDS matrices: (2^m-1)^2 (2^m-2) (2^m-4).
u128 formula_inv3(uint32_t m);
// All 3x3 non-involutory MDS matrices; degree-6 polynomial form, must equal
// formula_mds3(m) - formula_inv3(m).
u128 formula_noninv3(uint32_t m);

struct Table4x4 {
    u128 rep_mds = 0;    // representative MDS matrices
    u128 total_mds = 0;  // rep_mds * (2^m-1)^7
    u128 rep_inv = 0;    // representatives carrying an involutory certificate
    u128 total_inv = 0;  // rep_inv * (2^m-1)^3
};
// The published 4x4 census numbers; only m = 2, 3, 4 are known.
std::optional<Table4x4> table_4x4(uint32_t m);

// Representative count when a closed form or table covers (field, n):
// n=2 anywhere (q-2), n=3 over GF(2^m), n=4 over GF(2^m) with m in {2,3,4}.
std::optional<u128> known_rep_count(const FieldSpec& field, uint32_t n);

enum class CountSource { ClosedForm, Table, EnumerationOnly };
const char* to_string(CountSource s);

struct CountReport {
    FieldSpec field;
    uint32_t n = 0;
    EnumKind kind = EnumKind::Representatives;
    std::optional<u128> formula_value;     // from formula or table
    std::optional<u128> enumerated_value;  // from the census engine
    bool agrees = false;                   // both present and equal
    CountSource source = CountSource::EnumerationOnly;
};

// Run the census and compare against the closed form / table when one
// exists. Also re-checks the multiplicative structure internally (totals
// are reps times the diagonal-pair factor).
CountReport verify(const FieldSpec& field, uint32_t n, EnumKind kind,
                   const CountOptions& opts = {});

}  // namespace mdsforge
