#pragma once
// Dense square matrices and diagonal matrices over GF(p^m), with the handful
// of exact-linear-algebra operations the rest of the toolkit leans on:
// product, determinant, inverse, minors, and diagonal sandwiching.
//
// Everything is a value type holding element codes plus a shared Field.
// Indices are 0-based here; user-facing text switches to 1-based.

#include <cstddef>
#include <string>
#include <vector>

#include "mdsforge/gf.hpp"

namespace mdsforge {

class SquareMatrix {
public:
    SquareMatrix(std::shared_ptr<const Field> f, size_t n)
        : f_(std::move(f)), n_(n), codes_(n * n, 0) {
        if (n_ == 0) throw std::invalid_argument("matrix order must be >= 1");
    }
    SquareMatrix(std::shared_ptr<const Field> f, size_t n, std::vector<uint64_t> codes)
        : f_(std::move(f)), n_(n), codes_(std::move(codes)) {
        if (n_ == 0) throw std::invalid_argument("matrix order must be >= 1");
        if (codes_.size() != n_ * n_)
            throw std::invalid_argument("entry count does not match order");
        for (uint64_t c : codes_)
            if (c >= f_->q()) throw std::invalid_argument("matrix entry code out of range");
    }

    static SquareMatrix identity(std::shared_ptr<const Field> f, size_t n);
    static SquareMatrix all_ones(std::shared_ptr<const Field> f, size_t n);
    // Text form: rows split by ';', entries by ','. Throws invalid_argument
    // with a 1-based row/column note on malformed input.
    static SquareMatrix parse(std::shared_ptr<const Field> f, const std::string& text);

    size_t n() const { return n_; }
    const std::shared_ptr<const Field>& field() const { return f_; }
    uint64_t at(size_t i, size_t j) const { return codes_[i * n_ + j]; }
    void set(size_t i, size_t j, uint64_t code) { codes_[i * n_ + j] = code; }
    const std::vector<uint64_t>& codes() const { return codes_; }
    std::string to_text() const;

    friend bool operator==(const SquareMatrix& a, const SquareMatrix& b) {
        return a.n_ == b.n_ && a.f_->same_field(*b.f_) && a.codes_ == b.codes_;
    }
    friend bool operator!=(const SquareMatrix& a, const SquareMatrix& b) { return !(a == b); }
    // Ordering by entry codes, row-major; used to canonicalize matrix sets.
    friend bool operator<(const SquareMatrix& a, const SquareMatrix& b) {
        return a.codes_ < b.codes_;
    }

private:
    std::shared_ptr<const Field> f_;
    size_t n_;
    std::vector<uint64_t> codes_;
};

class DiagonalMatrix {
public:
    DiagonalMatrix(std::shared_ptr<const Field> f, std::vector<uint64_t> diag)
        : f_(std::move(f)), diag_(std::move(diag)) {
        if (diag_.empty()) throw std::invalid_argument("diagonal must be non-empty");
        for (uint64_t c : diag_)
            if (c >= f_->q()) throw std::invalid_argument("diagonal entry code out of range");
    }

    size_t n() const { return diag_.size(); }
    const std::shared_ptr<const Field>& field() const { return f_; }
    uint64_t at(size_t i) const { return diag_[i]; }
    const std::vector<uint64_t>& diag() const { return diag_; }
    bool is_nonsingular() const {
        for (uint64_t c : diag_)
            if (c == 0) return false;
        return true;
    }
    SquareMatrix to_matrix() const;

    friend bool operator==(const DiagonalMatrix& a, const DiagonalMatrix& b) {
        return a.f_->same_field(*b.f_) && a.diag_ == b.diag_;
    }
    friend bool operator!=(const DiagonalMatrix& a, const DiagonalMatrix& b) {
        return !(a == b);
    }

private:
    std::shared_ptr<const Field> f_;
    std::vector<uint64_t> diag_;
};

SquareMatrix mat_mul(const SquareMatrix& a, const SquareMatrix& b);
uint64_t det(const SquareMatrix& a);
// Code-level determinant of an n*n row-major scratch buffer (consumed).
uint64_t det_codes(const Field& f, std::vector<uint64_t> w, size_t n);
// Gauss-Jordan; singular input throws domain_error.
SquareMatrix inverse(const SquareMatrix& a);
bool is_nonsingular(const SquareMatrix& a);
// Determinant of the sub-matrix picked out by the given row/column index
// lists (equal length >= 1, entries in [0, n)).
uint64_t minor_det(const SquareMatrix& a, const std::vector<size_t>& rows,
                   const std::vector<size_t>& cols);
// (D1 A D2)_{i,j} = d1_i * a_{i,j} * d2_j, computed entrywise in O(n^2).
// Singular D1 or D2 throws domain_error.
SquareMatrix sandwich(const DiagonalMatrix& d1, const SquareMatrix& a,
                      const DiagonalMatrix& d2);

}  // namespace mdsforge
