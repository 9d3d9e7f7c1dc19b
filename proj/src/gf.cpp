#include "mdsforge/gf.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>

namespace mdsforge {
namespace {

// ---------------------------------------------------------------------------
// Small modular / polynomial helpers used only at construction time.
// Polynomials are coefficient vectors over Z_p, constant term first.

bool is_prime_u32(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; (uint64_t)d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

uint32_t mod_inv_u32(uint32_t a, uint32_t p) {
    // extended Euclid; a is nonzero mod p, p prime
    int64_t t = 0, nt = 1, r = p, nr = a % p;
    while (nr != 0) {
        int64_t qq = r / nr;
        std::swap(t -= qq * nt, nt);
        std::swap(r -= qq * nr, nr);
    }
    return (uint32_t)(t < 0 ? t + p : t);
}

using Poly = std::vector<uint32_t>;

void poly_trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// a * b reduced mod monic f
Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, uint32_t p) {
    if (a.empty() || b.empty()) return {};
    size_t mdeg = f.size() - 1;
    std::vector<uint64_t> c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + (uint64_t)a[i] * b[j]) % p;
    for (size_t i = c.size(); i-- > mdeg;) {
        uint64_t coef = c[i] % p;
        if (!coef) continue;
        c[i] = 0;
        for (size_t j = 0; j < mdeg; ++j) {
            uint64_t sub = coef * f[j] % p;
            c[i - mdeg + j] = (c[i - mdeg + j] + p - sub) % p;
        }
    }
    Poly r(c.begin(), c.begin() + std::min(c.size(), mdeg));
    for (auto& v : r) v %= p;
    poly_trim(r);
    return r;
}

Poly poly_powmod(Poly base, uint64_t e, const Poly& f, uint32_t p) {
    Poly r = {1};
    while (e) {
        if (e & 1) r = poly_mulmod(r, base, f, p);
        base = poly_mulmod(base, base, f, p);
        e >>= 1;
    }
    return r;
}

// a mod f, f monic
Poly poly_mod(Poly a, const Poly& f, uint32_t p) {
    poly_trim(a);
    size_t mdeg = f.size() - 1;
    while (a.size() > mdeg) {
        uint64_t coef = a.back();
        size_t shift = a.size() - 1 - mdeg;
        if (coef)
            for (size_t j = 0; j <= mdeg; ++j) {
                uint64_t sub = coef * f[j] % p;
                a[shift + j] = (uint32_t)((a[shift + j] + p - sub) % p);
            }
        poly_trim(a);
    }
    return a;
}

Poly poly_gcd(Poly a, Poly b, uint32_t p) {
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        // a mod b with monic-ized b
        uint32_t lead_inv = mod_inv_u32(b.back(), p);
        Poly bm(b.size());
        for (size_t i = 0; i < b.size(); ++i)
            bm[i] = (uint32_t)((uint64_t)b[i] * lead_inv % p);
        a = poly_mod(std::move(a), bm, p);
        std::swap(a, b);
    }
    return a;
}

// x^(p^k) mod f via k successive Frobenius steps
Poly frobenius_power(uint32_t k, const Poly& f, uint32_t p) {
    Poly t = {0, 1};
    for (uint32_t i = 0; i < k; ++i) t = poly_powmod(std::move(t), p, f, p);
    return t;
}

bool poly_irreducible(const Poly& f, uint32_t p) {
    uint32_t m = (uint32_t)f.size() - 1;
    if (m == 1) return true;
    // x^(p^m) must equal x mod f...
    Poly xm = frobenius_power(m, f, p);
    if (xm != Poly{0, 1}) return false;
    // ...and x^(p^(m/r)) - x must be coprime to f for every prime r | m.
    uint32_t rem = m;
    for (uint32_t r = 2; r <= rem; ++r) {
        if (rem % r) continue;
        while (rem % r == 0) rem /= r;
        Poly t = frobenius_power(m / r, f, p);
        // t - x
        if (t.size() < 2) t.resize(2, 0);
        t[1] = (uint32_t)((t[1] + p - 1) % p);
        poly_trim(t);
        Poly g = poly_gcd(t, f, p);
        if (g.size() != 1) return false;
    }
    return true;
}

// Default irreducible moduli for GF(2^m), m = 2..8, as bitmasks.
constexpr std::array<uint64_t, 9> kDefaultMask2 = {0, 0, 0x7, 0xB, 0x13, 0x25, 0x43, 0x83, 0x11B};

uint64_t checked_pow_u64(uint32_t p, uint32_t m) {
    uint64_t q = 1;
    for (uint32_t i = 0; i < m; ++i) {
        if (q > UINT64_MAX / p) throw std::invalid_argument("field order p^m does not fit 64 bits");
        q *= p;
    }
    return q;
}

[[noreturn]] void parse_fail(const std::string& text, size_t pos, const std::string& what) {
    throw std::invalid_argument("field spec \"" + text + "\": " + what +
                                " (at position " + std::to_string(pos) + ")");
}

uint64_t parse_u64(const std::string& text, size_t& pos, const char* what) {
    uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), v);
    if (ec != std::errc() || ptr == text.data() + pos)
        parse_fail(text, pos, std::string("expected ") + what);
    pos = (size_t)(ptr - text.data());
    return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// FieldSpec

FieldSpec FieldSpec::parse(const std::string& raw) {
    std::string text;
    for (char c : raw)
        if (!isspace((unsigned char)c)) text.push_back(c);
    if (text.empty()) parse_fail(raw, 0, "empty spec");

    FieldSpec s;
    size_t pos = 0;
    uint64_t p = parse_u64(text, pos, "prime p");
    if (p < 2 || p >= (1u << 16)) parse_fail(text, 0, "p must be a prime below 2^16");
    s.p = (uint32_t)p;
    s.m = 1;
    if (pos < text.size() && text[pos] == '^') {
        ++pos;
        uint64_t m = parse_u64(text, pos, "degree m");
        if (m < 1 || m > 63) parse_fail(text, pos, "degree m must be in [1, 63]");
        s.m = (uint32_t)m;
    }
    if (pos < text.size()) {
        if (text[pos] != '/') parse_fail(text, pos, "expected '/' before modulus");
        ++pos;
        std::string mod = text.substr(pos);
        if (mod.empty()) parse_fail(text, pos, "empty modulus");
        if (mod.size() > 2 && (mod[1] == 'x' || mod[1] == 'X') && mod[0] == '0') {
            if (s.p != 2) parse_fail(text, pos, "hex bitmask modulus only makes sense for p = 2");
            uint64_t mask = 0;
            auto [ptr, ec] = std::from_chars(mod.data() + 2, mod.data() + mod.size(), mask, 16);
            if (ec != std::errc() || ptr != mod.data() + mod.size())
                parse_fail(text, pos + 2, "bad hex bitmask");
            s.modulus.assign(s.m + 1, 0);
            for (uint32_t i = 0; i <= s.m; ++i) s.modulus[i] = (mask >> i) & 1;
            if (mask >> (s.m + 1)) parse_fail(text, pos, "bitmask degree exceeds m");
        } else {
            size_t mp = pos;
            while (true) {
                s.modulus.push_back((uint32_t)parse_u64(text, mp, "modulus coefficient"));
                if (mp == text.size()) break;
                if (text[mp] != ',') parse_fail(text, mp, "expected ',' in coefficient list");
                ++mp;
            }
        }
    } else if (s.m == 1) {
        s.modulus = {0, 1};  // x itself; elements are plain residues mod p
    } else if (s.p == 2 && s.m >= 2 && s.m <= 8) {
        uint64_t mask = kDefaultMask2[s.m];
        s.modulus.assign(s.m + 1, 0);
        for (uint32_t i = 0; i <= s.m; ++i) s.modulus[i] = (mask >> i) & 1;
    } else {
        parse_fail(text, pos, "no default modulus shipped for this field; append /modulus");
    }
    return s;
}

std::string FieldSpec::to_string() const {
    std::string out = std::to_string(p) + "^" + std::to_string(m);
    if (m == 1) return out;
    if (p == 2) {
        uint64_t mask = 0;
        for (uint32_t i = 0; i <= m; ++i)
            if (i < modulus.size() && modulus[i]) mask |= 1ull << i;
        char buf[32];
        std::snprintf(buf, sizeof buf, "/0x%llX", (unsigned long long)mask);
        return out + buf;
    }
    out += "/";
    for (size_t i = 0; i < modulus.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(modulus[i]);
    }
    return out;
}

std::shared_ptr<const Field> make_field(const FieldSpec& spec) {
    return std::shared_ptr<const Field>(new Field(spec));
}

std::shared_ptr<const Field> make_field(const std::string& spec_text) {
    return make_field(FieldSpec::parse(spec_text));
}

// ---------------------------------------------------------------------------
// Field construction: validate, then build whatever tables fit.

Field::Field(FieldSpec spec) : spec_(std::move(spec)) {
    if (spec_.p >= (1u << 16)) throw std::invalid_argument("p must be below 2^16");
    if (!is_prime_u32(spec_.p)) throw std::invalid_argument("p is not prime");
    if (spec_.m < 1 || spec_.m > 63) throw std::invalid_argument("degree m must be in [1, 63]");
    if (spec_.modulus.size() != spec_.m + 1)
        throw std::invalid_argument("modulus must have degree exactly m");
    for (uint32_t c : spec_.modulus)
        if (c >= spec_.p) throw std::invalid_argument("modulus coefficient out of range [0, p)");
    if (spec_.modulus.back() != 1) throw std::invalid_argument("modulus must be monic");
    q_ = checked_pow_u64(spec_.p, spec_.m);

    if (spec_.m >= 2) {
        Poly f(spec_.modulus.begin(), spec_.modulus.end());
        if (!poly_irreducible(f, spec_.p))
            throw std::invalid_argument("modulus is reducible over Z_" + std::to_string(spec_.p));
    }
    if (spec_.p == 2) {
        mod_mask_ = 0;
        for (uint32_t i = 0; i <= spec_.m; ++i)
            if (spec_.modulus[i]) mod_mask_ |= 1ull << i;
    }
    spec_string_ = spec_.to_string();

    if (spec_.p != 2 && q_ <= 65536) {
        neg_.resize(q_);
        for (uint64_t a = 0; a < q_; ++a) neg_[a] = (uint32_t)neg_general(a);
    }
    if (spec_.p != 2 && q_ <= 256) {
        add_dense_.resize(q_ * q_);
        add_dense16_.resize(q_ * q_);
        for (uint64_t a = 0; a < q_; ++a)
            for (uint64_t b = 0; b < q_; ++b) {
                uint64_t s = add_general(a, b);
                add_dense_[a * q_ + b] = (uint8_t)s;
                add_dense16_[a * q_ + b] = (uint16_t)s;
            }
    }

    if (q_ <= 65536) {
        // Discrete log tables over a generator found by ascending-code scan,
        // so identical specs always get identical tables.
        uint64_t n = q_ - 1;
        std::vector<uint64_t> prime_factors;
        uint64_t t = n;
        for (uint64_t d = 2; d * d <= t; ++d)
            if (t % d == 0) {
                prime_factors.push_back(d);
                while (t % d == 0) t /= d;
            }
        if (t > 1) prime_factors.push_back(t);
        for (uint64_t c = 1; c < q_; ++c) {
            bool ok = true;
            for (uint64_t r : prime_factors)
                if (pow_schoolbook(c, n / r) == 1) { ok = false; break; }
            if (ok) { generator_ = c; break; }
        }
        exp_.resize(2 * n);
        log_.assign(q_, 0);
        uint64_t acc = 1;
        for (uint64_t i = 0; i < n; ++i) {
            exp_[i] = (uint32_t)acc;
            exp_[i + n] = (uint32_t)acc;
            log_[acc] = (uint32_t)i;
            acc = mul_schoolbook(acc, generator_);
        }
    }
    if (q_ <= 256) {
        mul_dense_.resize(q_ * q_);
        for (uint64_t a = 0; a < q_; ++a)
            for (uint64_t b = 0; b < q_; ++b)
                mul_dense_[a * q_ + b] = (uint16_t)mul(a, b);
    }

    if (spec_.p != 2) {
        ts_t_ = q_ - 1;
        ts_s_ = 0;
        while ((ts_t_ & 1) == 0) { ts_t_ >>= 1; ++ts_s_; }
        for (uint64_t c = 2; c < q_; ++c)
            if (pow(c, (q_ - 1) / 2) != 1) { nonresidue_ = c; break; }
    }
}

// ---------------------------------------------------------------------------
// Arithmetic

uint64_t Field::add_general(uint64_t a, uint64_t b) const {
    uint32_t p = spec_.p;
    if (spec_.m == 1) return (a + b) % p;
    uint64_t res = 0, pw = 1;
    while (a || b) {
        uint64_t da = a % p, db = b % p;
        res += ((da + db) % p) * pw;
        a /= p;
        b /= p;
        pw *= p;
    }
    return res;
}

uint64_t Field::neg_general(uint64_t a) const {
    uint32_t p = spec_.p;
    if (spec_.m == 1) return a ? p - a : 0;
    uint64_t res = 0, pw = 1;
    while (a) {
        uint64_t d = a % p;
        res += (d ? p - d : 0) * pw;
        a /= p;
        pw *= p;
    }
    return res;
}

uint64_t Field::mul_schoolbook(uint64_t a, uint64_t b) const {
    if (spec_.p == 2) {
        uint64_t r = 0;
        uint32_t m = spec_.m;
        while (b) {
            if (b & 1) r ^= a;
            b >>= 1;
            if (!b) break;
            a <<= 1;
            if ((a >> m) & 1) a ^= mod_mask_;
        }
        return r;
    }
    // odd p: convolve base-p digit vectors, reduce by the monic modulus
    uint32_t p = spec_.p, m = spec_.m;
    std::vector<uint32_t> da(m, 0), db(m, 0);
    for (uint32_t i = 0; i < m; ++i) { da[i] = a % p; a /= p; }
    for (uint32_t i = 0; i < m; ++i) { db[i] = b % p; b /= p; }
    std::vector<uint64_t> c(2 * m - 1, 0);
    for (uint32_t i = 0; i < m; ++i)
        for (uint32_t j = 0; j < m; ++j)
            c[i + j] = (c[i + j] + (uint64_t)da[i] * db[j]) % p;
    for (uint32_t i = 2 * m - 2; i >= m && i < 2 * m; --i) {
        uint64_t coef = c[i];
        if (coef) {
            c[i] = 0;
            for (uint32_t j = 0; j < m; ++j) {
                uint64_t sub = coef * spec_.modulus[j] % p;
                c[i - m + j] = (c[i - m + j] + p - sub) % p;
            }
        }
        if (i == m) break;
    }
    uint64_t res = 0;
    for (uint32_t i = m; i-- > 0;) res = res * p + c[i];
    return res;
}

uint64_t Field::pow_schoolbook(uint64_t a, uint64_t e) const {
    uint64_t r = 1;
    while (e) {
        if (e & 1) r = mul_schoolbook(r, a);
        a = mul_schoolbook(a, a);
        e >>= 1;
    }
    return r;
}

uint64_t Field::pow(uint64_t a, uint64_t e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    if (!log_.empty()) {
        uint64_t n = q_ - 1;
        return exp_[(uint64_t)log_[a] * (e % n) % n];
    }
    return pow_schoolbook(a, e);
}

uint64_t Field::inv(uint64_t a) const {
    if (a == 0) throw std::domain_error("inverse of zero in " + spec_string_);
    if (!log_.empty()) return exp_[(q_ - 1) - log_[a]];
    return pow_schoolbook(a, q_ - 2);
}

bool Field::is_qr(uint64_t a) const {
    if (a == 0) throw std::domain_error("quadratic residue test on zero");
    if (spec_.p == 2) return true;
    return pow(a, (q_ - 1) / 2) == 1;
}

std::optional<uint64_t> Field::sqrt(uint64_t a) const {
    if (a == 0) return 0;
    if (spec_.p == 2) return pow(a, q_ / 2);  // squaring is Frobenius, so invert it
    if (pow(a, (q_ - 1) / 2) != 1) return std::nullopt;
    uint64_t r;
    if (ts_s_ == 1) {
        r = pow(a, (q_ + 1) / 4);
    } else {
        // Tonelli-Shanks in the multiplicative group of order 2^s * t
        uint64_t c = pow(nonresidue_, ts_t_);
        r = pow(a, (ts_t_ + 1) / 2);
        uint64_t t = pow(a, ts_t_);
        uint32_t mbits = ts_s_;
        while (t != 1) {
            uint64_t t2 = t;
            uint32_t i = 0;
            while (t2 != 1) { t2 = mul(t2, t2); ++i; }
            uint64_t b = c;
            for (uint32_t j = 0; j + i + 1 < mbits; ++j) b = mul(b, b);
            mbits = i;
            c = mul(b, b);
            t = mul(t, c);
            r = mul(r, b);
        }
    }
    // two roots r and -r: pick the smaller code so the answer is deterministic
    uint64_t other = neg(r);
    return std::min(r, other);
}

// ---------------------------------------------------------------------------
// Text forms

std::string Field::format(uint64_t code) const {
    if (spec_.p == 2) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "0x%llX", (unsigned long long)code);
        return buf;
    }
    return std::to_string(code);
}

uint64_t Field::parse_element(const std::string& text) const {
    uint64_t v = 0;
    bool ok = false;
    if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
        if (spec_.p != 2)
            throw std::invalid_argument("element \"" + text + "\": hex form is for p = 2 fields");
        auto [ptr, ec] = std::from_chars(text.data() + 2, text.data() + text.size(), v, 16);
        ok = ec == std::errc() && ptr == text.data() + text.size();
    } else if (!text.empty()) {
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        ok = ec == std::errc() && ptr == text.data() + text.size();
    }
    if (!ok) throw std::invalid_argument("bad element literal \"" + text + "\"");
    if (v >= q_)
        throw std::invalid_argument("element \"" + text + "\" out of range for " + spec_string_);
    return v;
}

FieldElement Field::el(uint64_t code) const {
    return FieldElement(shared_from_this(), code);
}
FieldElement Field::zero() const { return el(0); }
FieldElement Field::one() const { return el(1); }

}  // namespace mdsforge
