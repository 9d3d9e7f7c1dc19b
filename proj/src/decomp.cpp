#include "mdsforge/decomp.hpp"

#include "mdsforge/mdscheck.hpp"

namespace mdsforge {

const char* to_string(CertFailure f) {
    switch (f) {
        case CertFailure::NonQrDiagonalRatio: return "NonQrDiagonalRatio";
        case CertFailure::AsymmetricRatio: return "AsymmetricRatio";
        case CertFailure::PairwiseMismatch: return "PairwiseMismatch";
    }
    return "?";
}

DecompositionTriple decompose(const SquareMatrix& m) {
    const Field& F = *m.field();
    size_t n = m.n();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (m.at(i, j) == 0)
                throw std::domain_error("decomposition requires all entries nonzero");

    std::vector<uint64_t> d1(n), d2(n);
    uint64_t a11_inv = F.inv(m.at(0, 0));
    d2[0] = 1;
    for (size_t i = 0; i < n; ++i) d1[i] = m.at(i, 0);
    for (size_t j = 1; j < n; ++j) d2[j] = F.mul(a11_inv, m.at(0, j));

    SquareMatrix m1(m.field(), n);
    for (size_t i = 0; i < n; ++i) {
        uint64_t ai1_inv = F.inv(m.at(i, 0));
        for (size_t j = 0; j < n; ++j) {
            // c_{i,j} = a_{i,1}^-1 a_{i,j} a_{1,1} a_{1,j}^-1
            uint64_t c = F.mul(F.mul(ai1_inv, m.at(i, j)),
                               F.mul(m.at(0, 0), F.inv(m.at(0, j))));
            m1.set(i, j, c);
        }
    }
    return {DiagonalMatrix(m.field(), std::move(d1)), std::move(m1),
            DiagonalMatrix(m.field(), std::move(d2))};
}

SquareMatrix compose(const DecompositionTriple& t) {
    if (t.d1.n() != t.m1.n() || t.d2.n() != t.m1.n())
        throw std::invalid_argument("triple orders disagree");
    if (t.d2.at(0) != 1)
        throw std::invalid_argument("D2 must start with 1");
    if (!t.d1.is_nonsingular() || !t.d2.is_nonsingular())
        throw std::invalid_argument("diagonal factors must be non-singular");
    if (!has_ones_border(t.m1))
        throw std::invalid_argument("M1 must be in representative form");
    return sandwich(t.d1, t.m1, t.d2);
}

CertOutcome certificate_explain(const SquareMatrix& m1) {
    if (!has_ones_border(m1))
        throw std::invalid_argument("certificate requires a representative matrix");
    const Field& F = *m1.field();
    size_t n = m1.n();
    SquareMatrix m2 = inverse(m1);  // throws domain_error when singular

    CertOutcome out;
    // the diagonal ratios must be squares (alpha_i^2 = d_ii / c_ii)
    for (size_t i = 0; i < n; ++i) {
        uint64_t d = m2.at(i, i);
        if (d == 0 || !F.is_qr(F.mul(d, F.inv(m1.at(i, i))))) {
            out.failure = CertFailure::NonQrDiagonalRatio;
            out.witness_i = out.witness_j = i;
            return out;
        }
    }
    // cross ratios must be symmetric: d_ij c_ji = d_ji c_ij
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (F.mul(m2.at(i, j), m1.at(j, i)) != F.mul(m2.at(j, i), m1.at(i, j))) {
                out.failure = CertFailure::AsymmetricRatio;
                out.witness_i = i;
                out.witness_j = j;
                return out;
            }
    // construct the canonical alpha-vector off the first row and verify all pairs
    std::vector<uint64_t> alpha(n);
    alpha[0] = *F.sqrt(m2.at(0, 0));
    uint64_t a1_inv = F.inv(alpha[0]);
    for (size_t j = 1; j < n; ++j) alpha[j] = F.mul(m2.at(0, j), a1_inv);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (m2.at(i, j) != F.mul(F.mul(alpha[i], alpha[j]), m1.at(i, j))) {
                out.failure = CertFailure::PairwiseMismatch;
                out.witness_i = i;
                out.witness_j = j;
                return out;
            }
    out.cert = InvolutoryCertificate{m1.field(), std::move(alpha)};
    return out;
}

std::optional<InvolutoryCertificate> involutory_certificate(const SquareMatrix& m1) {
    return certificate_explain(m1).cert;
}

InvolutoryCertificate negate_certificate(const InvolutoryCertificate& cert) {
    InvolutoryCertificate neg = cert;
    for (auto& a : neg.alphas) a = cert.field->neg(a);
    return neg;
}

SquareMatrix involutory_member(const SquareMatrix& m1, const InvolutoryCertificate& cert,
                               const std::vector<uint64_t>& lambdas) {
    const Field& F = *m1.field();
    size_t n = m1.n();
    if (!cert.field->same_field(F) || cert.alphas.size() != n)
        throw std::invalid_argument("certificate does not match the matrix");
    if (lambdas.size() != n - 1)
        throw std::invalid_argument("expected n-1 lambda values");
    for (uint64_t l : lambdas)
        if (l == 0) throw std::domain_error("lambda values must be nonzero");
    for (uint64_t a : cert.alphas)
        if (a == 0 || a >= F.q()) throw std::invalid_argument("certificate alphas must be nonzero field elements");

    std::vector<uint64_t> d1(n), d2(n);
    d1[0] = cert.alphas[0];
    d2[0] = 1;
    for (size_t i = 1; i < n; ++i) {
        d1[i] = lambdas[i - 1];
        d2[i] = F.mul(cert.alphas[i], F.inv(lambdas[i - 1]));
    }
    return sandwich(DiagonalMatrix(m1.field(), std::move(d1)), m1,
                    DiagonalMatrix(m1.field(), std::move(d2)));
}

}  // namespace mdsforge
