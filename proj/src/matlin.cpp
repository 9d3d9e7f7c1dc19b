#include "mdsforge/matlin.hpp"

#include <sstream>

namespace mdsforge {

SquareMatrix SquareMatrix::identity(std::shared_ptr<const Field> f, size_t n) {
    SquareMatrix a(std::move(f), n);
    for (size_t i = 0; i < n; ++i) a.set(i, i, 1);
    return a;
}

SquareMatrix SquareMatrix::all_ones(std::shared_ptr<const Field> f, size_t n) {
    SquareMatrix a(std::move(f), n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) a.set(i, j, 1);
    return a;
}

namespace {
std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else if (!isspace((unsigned char)c)) {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}
}  // namespace

SquareMatrix SquareMatrix::parse(std::shared_ptr<const Field> f, const std::string& text) {
    auto rows = split(text, ';');
    size_t n = rows.size();
    std::vector<uint64_t> codes;
    codes.reserve(n * n);
    for (size_t i = 0; i < n; ++i) {
        auto cells = split(rows[i], ',');
        if (cells.size() != n)
            throw std::invalid_argument("matrix text: row " + std::to_string(i + 1) + " has " +
                                        std::to_string(cells.size()) + " entries, expected " +
                                        std::to_string(n));
        for (size_t j = 0; j < n; ++j) {
            try {
                codes.push_back(f->parse_element(cells[j]));
            } catch (const std::invalid_argument& e) {
                throw std::invalid_argument("matrix text: row " + std::to_string(i + 1) +
                                            ", entry " + std::to_string(j + 1) + ": " + e.what());
            }
        }
    }
    return SquareMatrix(std::move(f), n, std::move(codes));
}

std::string SquareMatrix::to_text() const {
    std::string out;
    for (size_t i = 0; i < n_; ++i) {
        if (i) out += ';';
        for (size_t j = 0; j < n_; ++j) {
            if (j) out += ',';
            out += f_->format(at(i, j));
        }
    }
    return out;
}

SquareMatrix DiagonalMatrix::to_matrix() const {
    SquareMatrix a(f_, n());
    for (size_t i = 0; i < n(); ++i) a.set(i, i, diag_[i]);
    return a;
}

SquareMatrix mat_mul(const SquareMatrix& a, const SquareMatrix& b) {
    if (a.n() != b.n() || !a.field()->same_field(*b.field()))
        throw std::invalid_argument("matrix product: order or field mismatch");
    const Field& F = *a.field();
    size_t n = a.n();
    SquareMatrix c(a.field(), n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            uint64_t acc = 0;
            for (size_t k = 0; k < n; ++k)
                acc = F.add(acc, F.mul(a.at(i, k), b.at(k, j)));
            c.set(i, j, acc);
        }
    return c;
}

// In-place elimination on a scratch copy; returns the determinant.
uint64_t det_codes(const Field& F, std::vector<uint64_t> w, size_t n) {
    uint64_t sign_flip = 0;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && w[piv * n + col] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            for (size_t j = col; j < n; ++j) std::swap(w[piv * n + j], w[col * n + j]);
            sign_flip ^= 1;
        }
        uint64_t inv_p = F.inv(w[col * n + col]);
        for (size_t r = col + 1; r < n; ++r) {
            uint64_t factor = F.mul(w[r * n + col], inv_p);
            if (!factor) continue;
            w[r * n + col] = 0;
            for (size_t j = col + 1; j < n; ++j)
                w[r * n + j] = F.sub(w[r * n + j], F.mul(factor, w[col * n + j]));
        }
    }
    uint64_t d = 1;
    for (size_t i = 0; i < n; ++i) d = F.mul(d, w[i * n + i]);
    return sign_flip ? F.neg(d) : d;
}

uint64_t det(const SquareMatrix& a) {
    return det_codes(*a.field(), a.codes(), a.n());
}

bool is_nonsingular(const SquareMatrix& a) { return det(a) != 0; }

SquareMatrix inverse(const SquareMatrix& a) {
    const Field& F = *a.field();
    size_t n = a.n();
    // augmented [A | I], full Gauss-Jordan
    std::vector<uint64_t> w(n * 2 * n, 0);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) w[i * 2 * n + j] = a.at(i, j);
        w[i * 2 * n + n + i] = 1;
    }
    size_t stride = 2 * n;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && w[piv * stride + col] == 0) ++piv;
        if (piv == n) throw std::domain_error("matrix is singular");
        if (piv != col)
            for (size_t j = 0; j < stride; ++j) std::swap(w[piv * stride + j], w[col * stride + j]);
        uint64_t inv_p = F.inv(w[col * stride + col]);
        for (size_t j = 0; j < stride; ++j)
            w[col * stride + j] = F.mul(w[col * stride + j], inv_p);
        for (size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            uint64_t factor = w[r * stride + col];
            if (!factor) continue;
            for (size_t j = 0; j < stride; ++j)
                w[r * stride + j] = F.sub(w[r * stride + j], F.mul(factor, w[col * stride + j]));
        }
    }
    SquareMatrix b(a.field(), n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) b.set(i, j, w[i * stride + n + j]);
    return b;
}

uint64_t minor_det(const SquareMatrix& a, const std::vector<size_t>& rows,
                   const std::vector<size_t>& cols) {
    if (rows.empty() || rows.size() != cols.size())
        throw std::invalid_argument("minor: row/column index sets must have equal size >= 1");
    for (size_t i : rows)
        if (i >= a.n()) throw std::invalid_argument("minor: row index out of range");
    for (size_t j : cols)
        if (j >= a.n()) throw std::invalid_argument("minor: column index out of range");
    size_t k = rows.size();
    std::vector<uint64_t> sub(k * k);
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) sub[i * k + j] = a.at(rows[i], cols[j]);
    return det_codes(*a.field(), std::move(sub), k);
}

SquareMatrix sandwich(const DiagonalMatrix& d1, const SquareMatrix& a,
                      const DiagonalMatrix& d2) {
    if (d1.n() != a.n() || d2.n() != a.n())
        throw std::invalid_argument("sandwich: order mismatch");
    if (!d1.is_nonsingular() || !d2.is_nonsingular())
        throw std::domain_error("sandwich: diagonal factor is singular");
    const Field& F = *a.field();
    size_t n = a.n();
    SquareMatrix c(a.field(), n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            c.set(i, j, F.mul(d1.at(i), F.mul(a.at(i, j), d2.at(j))));
    return c;
}

}  // namespace mdsforge
