#pragma once
// Exact arithmetic in GF(p^m).
//
// Elements travel as canonical integer codes in [0, q): the base-p positional
// encoding of the coefficient vector, so for p = 2 a code is the familiar
// polynomial bitmask and code(0) = 0, code(1) = 1 in every field.
// A Field owns whatever tables make sense for its size (discrete log/antilog
// for q <= 2^16, a dense multiplication table for q <= 256) and falls back to
// schoolbook reduce-mod-modulus beyond that.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mdsforge {

class Field;
class FieldElement;

// The raw recipe for a field: characteristic, degree, monic irreducible
// modulus with coefficients constant-term-first (x^4+x+1 is {1,1,0,0,1}).
struct FieldSpec {
    uint32_t p = 2;
    uint32_t m = 1;
    std::vector<uint32_t> modulus;

    // Grammar: "p^m/modulus" where modulus is a 0x.. bitmask for p = 2 or a
    // comma-separated coefficient list (constant first) otherwise. "p^1"
    // takes no modulus, and "2^m" alone picks the shipped default for
    // m in [2, 8]. Throws std::invalid_argument with a position note.
    static FieldSpec parse(const std::string& text);

    std::string to_string() const;  // canonical, round-trips through parse
    bool operator==(const FieldSpec& o) const = default;
};

std::shared_ptr<const Field> make_field(const FieldSpec& spec);
std::shared_ptr<const Field> make_field(const std::string& spec_text);

class Field : public std::enable_shared_from_this<Field> {
public:
    uint32_t p() const { return spec_.p; }
    uint32_t m() const { return spec_.m; }
    uint64_t q() const { return q_; }
    const FieldSpec& spec() const { return spec_; }
    const std::string& spec_string() const { return spec_string_; }
    bool same_field(const Field& o) const { return spec_ == o.spec_; }

    // ---- code-level arithmetic (the hot path) ----
    uint64_t add(uint64_t a, uint64_t b) const {
        if (spec_.p == 2) return a ^ b;
        if (!add_dense_.empty()) return add_dense_[a * q_ + b];
        return add_general(a, b);
    }
    uint64_t neg(uint64_t a) const {
        if (spec_.p == 2) return a;
        if (!neg_.empty()) return neg_[a];
        return neg_general(a);
    }
    uint64_t sub(uint64_t a, uint64_t b) const { return add(a, neg(b)); }
    uint64_t mul(uint64_t a, uint64_t b) const {
        if (!log_.empty()) {
            if (a == 0 || b == 0) return 0;
            return exp_[log_[a] + log_[b]];
        }
        return mul_schoolbook(a, b);
    }
    uint64_t inv(uint64_t a) const;          // domain_error on 0
    uint64_t pow(uint64_t a, uint64_t e) const;
    bool is_qr(uint64_t a) const;            // domain_error on 0
    std::optional<uint64_t> sqrt(uint64_t a) const;

    // Raw table views for tight enumeration loops; null when unavailable.
    // mul_row(a) points at q entries with mul_row(a)[b] = a*b (q <= 256).
    const uint16_t* mul_table() const {
        return mul_dense_.empty() ? nullptr : mul_dense_.data();
    }
    const uint16_t* add_table() const {
        return add_dense16_.empty() ? nullptr : add_dense16_.data();
    }
    bool has_log_tables() const { return !log_.empty(); }

    // ---- element text form: 0x.. hex for p = 2, decimal otherwise ----
    std::string format(uint64_t code) const;
    uint64_t parse_element(const std::string& text) const;

    FieldElement el(uint64_t code) const;
    FieldElement zero() const;
    FieldElement one() const;

private:
    friend std::shared_ptr<const Field> make_field(const FieldSpec&);
    explicit Field(FieldSpec spec);

    uint64_t add_general(uint64_t a, uint64_t b) const;
    uint64_t neg_general(uint64_t a) const;
    uint64_t mul_schoolbook(uint64_t a, uint64_t b) const;
    uint64_t pow_schoolbook(uint64_t a, uint64_t e) const;

    FieldSpec spec_;
    std::string spec_string_;
    uint64_t q_ = 0;
    uint64_t mod_mask_ = 0;            // p = 2: modulus as bitmask
    std::vector<uint32_t> exp_;        // g^i, doubled for wrap-free indexing
    std::vector<uint32_t> log_;
    std::vector<uint16_t> mul_dense_;  // q*q, q <= 256
    std::vector<uint8_t> add_dense_;   // q*q, odd p, q <= 256
    std::vector<uint16_t> add_dense16_;// same content, uint16 view for loops
    std::vector<uint32_t> neg_;        // q <= 2^16
    uint64_t generator_ = 0;
    // Tonelli-Shanks bits for odd characteristic: q-1 = 2^s * t.
    uint32_t ts_s_ = 0;
    uint64_t ts_t_ = 0;
    uint64_t nonresidue_ = 0;
};

// A field element bound to its field. Mixing fields throws
// std::invalid_argument; arithmetic on codes stays exact throughout.
class FieldElement {
public:
    FieldElement() = default;
    FieldElement(std::shared_ptr<const Field> f, uint64_t code)
        : f_(std::move(f)), code_(code) {
        if (code_ >= f_->q()) throw std::invalid_argument("element code out of range");
    }

    uint64_t code() const { return code_; }
    const std::shared_ptr<const Field>& field() const { return f_; }
    bool is_zero() const { return code_ == 0; }
    bool is_one() const { return code_ == 1; }
    std::string str() const { return f_->format(code_); }

    FieldElement inv() const { return with(f_->inv(code_)); }
    FieldElement pow(uint64_t e) const { return with(f_->pow(code_, e)); }
    bool is_qr() const { return f_->is_qr(code_); }
    std::optional<FieldElement> sqrt() const {
        auto r = f_->sqrt(code_);
        if (!r) return std::nullopt;
        return with(*r);
    }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        a.check(b); return a.with(a.f_->add(a.code_, b.code_));
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        a.check(b); return a.with(a.f_->sub(a.code_, b.code_));
    }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        a.check(b); return a.with(a.f_->mul(a.code_, b.code_));
    }
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
        a.check(b); return a.with(a.f_->mul(a.code_, b.f_->inv(b.code_)));
    }
    FieldElement operator-() const { return with(f_->neg(code_)); }
    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        a.check(b); return a.code_ == b.code_;
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) {
        return !(a == b);
    }

private:
    FieldElement with(uint64_t c) const { FieldElement e; e.f_ = f_; e.code_ = c; return e; }
    void check(const FieldElement& o) const {
        if (!f_ || !o.f_ || !f_->same_field(*o.f_))
            throw std::invalid_argument("elements belong to different fields");
    }
    std::shared_ptr<const Field> f_;
    uint64_t code_ = 0;
};

// Free-function spellings of the element operations.
inline FieldElement add(const FieldElement& a, const FieldElement& b) { return a + b; }
inline FieldElement mul(const FieldElement& a, const FieldElement& b) { return a * b; }
inline FieldElement inv(const FieldElement& a) { return a.inv(); }
inline std::optional<FieldElement> sqrt(const FieldElement& a) { return a.sqrt(); }
inline bool is_qr(const FieldElement& a) { return a.is_qr(); }

}  // namespace mdsforge
