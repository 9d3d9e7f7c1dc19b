#pragma once
// The diagonal-equivalence correspondence. Any matrix with all entries
// nonzero factors uniquely as M = D1 * M1 * D2 where M1 is representative
// (all-ones first row and column) and D2's first entry is 1. On top of that
// sits the involutory certificate: an alpha-vector tying M1's inverse to M1
// entrywise, whose existence decides whether ANY diagonal sandwich of M1 can
// be involutory, and whose value parameterizes all of them.

#include <optional>

#include "mdsforge/matlin.hpp"

namespace mdsforge {

struct DecompositionTriple {
    DiagonalMatrix d1;  // lambda_1 .. lambda_n
    SquareMatrix m1;    // representative form
    DiagonalMatrix d2;  // 1, theta_2 .. theta_n
};

// alpha_1 .. alpha_n, all nonzero, with inverse(M1)_{i,j} = alpha_i alpha_j M1_{i,j}.
struct InvolutoryCertificate {
    std::shared_ptr<const Field> field;
    std::vector<uint64_t> alphas;
};

// Why no certificate exists, in evaluation order.
enum class CertFailure {
    NonQrDiagonalRatio,  // some d_{i,i}/c_{i,i} is zero or a non-residue
    AsymmetricRatio,     // some d_{i,j} c_{j,i} != d_{j,i} c_{i,j}
    PairwiseMismatch,    // alphas constructed, but some d_{i,j} != alpha_i alpha_j c_{i,j}
};

const char* to_string(CertFailure f);

struct CertOutcome {
    std::optional<InvolutoryCertificate> cert;
    // set when cert is absent: the first failed condition and its witness
    CertFailure failure = CertFailure::NonQrDiagonalRatio;
    size_t witness_i = 0;  // 0-based
    size_t witness_j = 0;
};

// Unique factorization; throws domain_error if any entry is zero.
DecompositionTriple decompose(const SquareMatrix& m);

// sandwich(d1, m1, d2) after validating the triple invariants
// (invalid_argument on violation).
SquareMatrix compose(const DecompositionTriple& t);

// Certificate search for a representative non-singular M1: alpha_1 is the
// deterministic square root of d_{1,1}, alpha_j = d_{1,j} / alpha_1, then
// every pair (i,j) is verified. Throws invalid_argument when M1 is not
// representative, domain_error when singular.
std::optional<InvolutoryCertificate> involutory_certificate(const SquareMatrix& m1);
// Same, but explains a refusal with the first failed condition.
CertOutcome certificate_explain(const SquareMatrix& m1);

// Negating every alpha gives the only other certificate with the same
// squares; in characteristic 2 it is the same vector.
InvolutoryCertificate negate_certificate(const InvolutoryCertificate& cert);

// Build the involutory member D1 M1 D2 with D1 = Diag(alpha_1, lambdas...)
// and D2 = Diag(1, alpha_2/lambda_2, ...). lambdas has n-1 entries; zero
// entries throw domain_error; a certificate from another field or order
// throws invalid_argument.
SquareMatrix involutory_member(const SquareMatrix& m1, const InvolutoryCertificate& cert,
                               const std::vector<uint64_t>& lambdas);

}  // namespace mdsforge
