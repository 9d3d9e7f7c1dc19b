#include "mdsforge/mdscheck.hpp"

#include <optional>

namespace mdsforge {

namespace {

// advance a k-subset of [0, n) in lexicographic order
bool next_combo(std::vector<size_t>& c, size_t n) {
    size_t k = c.size();
    for (size_t i = k; i-- > 0;) {
        if (c[i] + (k - i) < n) {
            ++c[i];
            for (size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::vector<size_t> first_combo(size_t k) {
    std::vector<size_t> c(k);
    for (size_t i = 0; i < k; ++i) c[i] = i;
    return c;
}

uint64_t det2(const Field& F, uint64_t a, uint64_t b, uint64_t c, uint64_t d) {
    return F.sub(F.mul(a, d), F.mul(b, c));
}

// First singular minor in ascending-order scan, or nothing if MDS.
std::optional<std::pair<std::vector<size_t>, std::vector<size_t>>> first_zero_minor(
    const Field& F, const uint64_t* a, size_t n) {
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (a[i * n + j] == 0) return {{{i}, {j}}};
    for (size_t r1 = 0; r1 + 1 < n; ++r1)
        for (size_t r2 = r1 + 1; r2 < n; ++r2)
            for (size_t c1 = 0; c1 + 1 < n; ++c1)
                for (size_t c2 = c1 + 1; c2 < n; ++c2)
                    if (det2(F, a[r1 * n + c1], a[r1 * n + c2], a[r2 * n + c1],
                             a[r2 * n + c2]) == 0)
                        return {{{r1, r2}, {c1, c2}}};
    std::vector<uint64_t> scratch;
    for (size_t k = 3; k <= n; ++k) {
        auto rows = first_combo(k);
        do {
            auto cols = first_combo(k);
            do {
                scratch.assign(k * k, 0);
                for (size_t i = 0; i < k; ++i)
                    for (size_t j = 0; j < k; ++j)
                        scratch[i * k + j] = a[rows[i] * n + cols[j]];
                if (det_codes(F, scratch, k) == 0) return {{rows, cols}};
            } while (next_combo(cols, n));
        } while (next_combo(rows, n));
    }
    return std::nullopt;
}

std::string one_based(const std::vector<size_t>& v) {
    std::string s = "{";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i] + 1);
    }
    return s + "}";
}

}  // namespace

const char* to_string(RViolationKind k) {
    switch (k) {
        case RViolationKind::NotMds: return "NotMds";
        case RViolationKind::ModifiedSingular: return "ModifiedSingular";
        case RViolationKind::EntryOne: return "EntryOne";
        case RViolationKind::RepeatInRowOrCol: return "RepeatInRowOrCol";
        case RViolationKind::RMinusUSingular: return "RMinusUSingular";
    }
    return "?";
}

bool is_mds_codes(const Field& F, const uint64_t* a, size_t n) {
    for (size_t i = 0; i < n * n; ++i)
        if (a[i] == 0) return false;
    for (size_t r1 = 0; r1 + 1 < n; ++r1)
        for (size_t r2 = r1 + 1; r2 < n; ++r2)
            for (size_t c1 = 0; c1 + 1 < n; ++c1)
                for (size_t c2 = c1 + 1; c2 < n; ++c2)
                    if (det2(F, a[r1 * n + c1], a[r1 * n + c2], a[r2 * n + c1],
                             a[r2 * n + c2]) == 0)
                        return false;
    std::vector<uint64_t> scratch;
    for (size_t k = 3; k <= n; ++k) {
        auto rows = first_combo(k);
        do {
            auto cols = first_combo(k);
            do {
                scratch.assign(k * k, 0);
                for (size_t i = 0; i < k; ++i)
                    for (size_t j = 0; j < k; ++j)
                        scratch[i * k + j] = a[rows[i] * n + cols[j]];
                if (det_codes(F, scratch, k) == 0) return false;
            } while (next_combo(cols, n));
        } while (next_combo(rows, n));
    }
    return true;
}

bool is_mds(const SquareMatrix& a) {
    return is_mds_codes(*a.field(), a.codes().data(), a.n());
}

bool is_involutory(const SquareMatrix& a) {
    const Field& F = *a.field();
    size_t n = a.n();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            uint64_t acc = 0;
            for (size_t k = 0; k < n; ++k) acc = F.add(acc, F.mul(a.at(i, k), a.at(k, j)));
            if (acc != (i == j ? 1u : 0u)) return false;
        }
    return true;
}

// ---------------------------------------------------------------------------
// check_R

namespace {

// determinant of R with selected lines forced to all ones; ri/ci = SIZE_MAX
// means "leave that line alone"
uint64_t det_with_ones(const Field& F, const uint64_t* r, size_t k, size_t ri, size_t ci) {
    std::vector<uint64_t> w(k * k);
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j)
            w[i * k + j] = (i == ri || j == ci) ? 1 : r[i * k + j];
    return det_codes(F, std::move(w), k);
}

}  // namespace

bool check_R_codes(const Field& F, const uint64_t* r, size_t k) {
    // condition 3: no entry equals one
    for (size_t i = 0; i < k * k; ++i)
        if (r[i] == 1) return false;
    // condition 4: rows and columns repeat-free
    for (size_t i = 0; i < k; ++i)
        for (size_t j1 = 0; j1 + 1 < k; ++j1)
            for (size_t j2 = j1 + 1; j2 < k; ++j2) {
                if (r[i * k + j1] == r[i * k + j2]) return false;
                if (r[j1 * k + i] == r[j2 * k + i]) return false;
            }
    // condition 1: R is MDS
    if (!is_mds_codes(F, r, k)) return false;
    // condition 5: R - U non-singular
    {
        std::vector<uint64_t> w(k * k);
        for (size_t i = 0; i < k * k; ++i) w[i] = F.sub(r[i], 1);
        if (det_codes(F, std::move(w), k) == 0) return false;
    }
    // condition 2: every all-ones line replacement stays non-singular
    for (size_t i = 0; i < k; ++i)
        if (det_with_ones(F, r, k, i, SIZE_MAX) == 0) return false;
    for (size_t j = 0; j < k; ++j)
        if (det_with_ones(F, r, k, SIZE_MAX, j) == 0) return false;
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j)
            if (det_with_ones(F, r, k, i, j) == 0) return false;
    return true;
}

bool check_R_pass(const SquareMatrix& r) {
    return check_R_codes(*r.field(), r.codes().data(), r.n());
}

std::vector<RViolation> check_R(const SquareMatrix& rm) {
    const Field& F = *rm.field();
    size_t k = rm.n();
    const uint64_t* r = rm.codes().data();
    std::vector<RViolation> out;

    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j)
            if (r[i * k + j] == 1)
                out.push_back({RViolationKind::EntryOne,
                               {i},
                               {j},
                               "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                   ") equals 1"});
    if (!out.empty()) return out;

    for (size_t i = 0; i < k; ++i)
        for (size_t j1 = 0; j1 + 1 < k; ++j1)
            for (size_t j2 = j1 + 1; j2 < k; ++j2) {
                if (r[i * k + j1] == r[i * k + j2])
                    out.push_back({RViolationKind::RepeatInRowOrCol,
                                   {i},
                                   {j1, j2},
                                   "row " + std::to_string(i + 1) + " repeats a value at columns " +
                                       one_based({j1, j2})});
                if (r[j1 * k + i] == r[j2 * k + i])
                    out.push_back({RViolationKind::RepeatInRowOrCol,
                                   {j1, j2},
                                   {i},
                                   "column " + std::to_string(i + 1) + " repeats a value at rows " +
                                       one_based({j1, j2})});
            }
    if (!out.empty()) return out;

    if (auto z = first_zero_minor(F, r, k)) {
        out.push_back({RViolationKind::NotMds, z->first, z->second,
                       "singular minor at rows " + one_based(z->first) + ", columns " +
                           one_based(z->second)});
        return out;
    }

    {
        std::vector<uint64_t> w(k * k);
        for (size_t i = 0; i < k * k; ++i) w[i] = F.sub(r[i], 1);
        if (det_codes(F, std::move(w), k) == 0) {
            out.push_back({RViolationKind::RMinusUSingular, {}, {}, "R - U is singular"});
            return out;
        }
    }

    for (size_t i = 0; i < k; ++i)
        if (det_with_ones(F, r, k, i, SIZE_MAX) == 0)
            out.push_back({RViolationKind::ModifiedSingular,
                           {i},
                           {},
                           "all-ones replacement of row " + std::to_string(i + 1) + " is singular"});
    for (size_t j = 0; j < k; ++j)
        if (det_with_ones(F, r, k, SIZE_MAX, j) == 0)
            out.push_back({RViolationKind::ModifiedSingular,
                           {},
                           {j},
                           "all-ones replacement of column " + std::to_string(j + 1) +
                               " is singular"});
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j)
            if (det_with_ones(F, r, k, i, j) == 0)
                out.push_back({RViolationKind::ModifiedSingular,
                               {i},
                               {j},
                               "all-ones replacement of row " + std::to_string(i + 1) +
                                   " and column " + std::to_string(j + 1) + " is singular"});
    return out;
}

bool check_R_order2_codes(const Field& F, uint64_t a, uint64_t b, uint64_t c, uint64_t d) {
    if (a < 2 || b < 2 || c < 2 || d < 2) return false;  // entries must avoid {0, 1}
    if (b == a || c == a || d == b || d == c) return false;
    if (F.mul(a, d) == F.mul(b, c)) return false;
    uint64_t a1 = F.sub(a, 1), b1 = F.sub(b, 1), c1 = F.sub(c, 1), d1 = F.sub(d, 1);
    return F.mul(a1, d1) != F.mul(b1, c1);
}

bool check_R_order2(const FieldElement& a, const FieldElement& b, const FieldElement& c,
                    const FieldElement& d) {
    const auto& F = a.field();
    if (!F->same_field(*b.field()) || !F->same_field(*c.field()) || !F->same_field(*d.field()))
        throw std::invalid_argument("elements belong to different fields");
    return check_R_order2_codes(*F, a.code(), b.code(), c.code(), d.code());
}

bool has_ones_border(const SquareMatrix& m1) {
    size_t n = m1.n();
    for (size_t i = 0; i < n; ++i)
        if (m1.at(0, i) != 1 || m1.at(i, 0) != 1) return false;
    return true;
}

bool is_representative_mds(const SquareMatrix& m1) {
    if (!has_ones_border(m1))
        throw std::invalid_argument("matrix is not in representative form (all-ones border)");
    size_t n = m1.n();
    if (n == 1) return true;
    size_t k = n - 1;
    std::vector<uint64_t> r(k * k);
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) r[i * k + j] = m1.at(i + 1, j + 1);
    const Field& F = *m1.field();
    if (!check_R_codes(F, r.data(), k)) return false;
    // conditions 1-5 pin down minor orders 1, 2, n-1, n; the middle orders
    // are only free from n = 5 on, so scan them there
    if (n >= 5) return is_mds_codes(F, m1.codes().data(), n);
    return true;
}

}  // namespace mdsforge
