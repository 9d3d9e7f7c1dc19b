#pragma once
// The predicates that drive everything else: is a matrix MDS, is it
// involutory, and does an interior block R qualify its all-ones-bordered
// carrier M1 as a representative MDS matrix.
//
// check_R evaluates five conditions on R (order n-1):
//   1. R itself is MDS.
//   2. Replacing any row, any column, or one of each with all ones leaves
//      the matrix non-singular.
//   3. No entry equals 1.
//   4. Entries are distinct within every row and every column.
//   5. R - U is non-singular (U = all ones).
// For n <= 4 these are necessary AND sufficient for M1 to be MDS; from
// n = 5 on they stop constraining the middle minor orders, so
// is_representative_mds adds a full minor scan there.

#include <cstdint>
#include <vector>

#include "mdsforge/matlin.hpp"

namespace mdsforge {

enum class RViolationKind {
    NotMds,            // condition 1
    ModifiedSingular,  // condition 2
    EntryOne,          // condition 3
    RepeatInRowOrCol,  // condition 4
    RMinusUSingular,   // condition 5
};

const char* to_string(RViolationKind k);

// One failed condition with the indices that witness it (0-based).
//   NotMds:           rows/cols = the singular minor's index sets.
//   ModifiedSingular: rows = {i} if row i was replaced, cols = {j} likewise
//                     (one or both non-empty).
//   EntryOne:         rows = {i}, cols = {j} of the offending entry.
//   RepeatInRowOrCol: the two equal positions: rows = {i}, cols = {j1, j2}
//                     for a row repeat; rows = {i1, i2}, cols = {j} for a
//                     column repeat.
//   RMinusUSingular:  no indices.
// detail carries a 1-based human-readable description.
struct RViolation {
    RViolationKind kind;
    std::vector<size_t> rows;
    std::vector<size_t> cols;
    std::string detail;
};

// Every minor of every order nonzero. Checks order 1 first, then ascending,
// stopping at the first zero (cheap failures dominate enumeration loads).
bool is_mds(const SquareMatrix& a);
bool is_mds_codes(const Field& f, const uint64_t* a, size_t n);

bool is_involutory(const SquareMatrix& a);

// Full five-condition check in fail-fast order 3, 4, 1, 5, 2; reports the
// violations of the first failing condition class and stops there.
std::vector<RViolation> check_R(const SquareMatrix& r);
// Boolean-only variant for enumeration loops (no violation assembly).
bool check_R_pass(const SquareMatrix& r);
bool check_R_codes(const Field& f, const uint64_t* r, size_t k);

// Closed-form check_R for a 2x2 interior [[a,b],[c,d]], i.e. the 3x3
// representative: entries outside {0,1}, b != a, c != a, d != b, d != c,
// ad != bc, and (a-1)(d-1) != (b-1)(c-1). In characteristic 2 the last two
// read d != a^-1 bc and d+1 != (a+1)^-1 (b+1)(c+1).
bool check_R_order2(const FieldElement& a, const FieldElement& b,
                    const FieldElement& c, const FieldElement& d);
bool check_R_order2_codes(const Field& f, uint64_t a, uint64_t b, uint64_t c, uint64_t d);

// All-ones first row and column?
bool has_ones_border(const SquareMatrix& m1);

// MDS test for a matrix in representative form: check_R on the interior,
// plus a full minor scan for n >= 5. Throws invalid_argument when the
// border is not all ones.
bool is_representative_mds(const SquareMatrix& m1);

}  // namespace mdsforge
