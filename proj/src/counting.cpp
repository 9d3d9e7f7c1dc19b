#include "mdsforge/counting.hpp"

#include <stdexcept>

namespace mdsforge {

namespace {

u128 checked_mul(u128 a, u128 b) {
    if (a != 0 && b > ~(u128)0 / a) throw std::domain_error("count exceeds 128 bits");
    return a * b;
}

u128 checked_pow2(uint32_t e) {
    if (e >= 128) throw std::domain_error("count exceeds 128 bits");
    return (u128)1 << e;
}

u128 upow(u128 base, uint32_t e) {
    u128 r = 1;
    while (e--) r = checked_mul(r, base);
    return r;
}

void require_m(uint32_t m) {
    if (m == 0) throw std::invalid_argument("extension degree must be at least 1");
}

}  // namespace

u128 formula_rep3(uint32_t m) {
    require_m(m);
    if (m == 1) return 0;  // 2^m - 2 vanishes
    const u128 x = checked_pow2(m);
    const u128 x2 = checked_mul(x, x);
    // x^2 - 9x + 21 > 0 for every real x, so plain subtraction is safe here
    return checked_mul(checked_mul(x - 2, x - 3), x2 + 21 - 9 * x);
}

u128 formula_mds3(uint32_t m) {
    require_m(m);
    const u128 x = checked_pow2(m);
    return checked_mul(upow(x - 1, 5), formula_rep3(m));
}

u128 formula_inv3(uint32_t m) {
    require_m(m);
    if (m <= 2) return 0;  // (2^m - 2) or (2^m - 4) vanishes
    const u128 x = checked_pow2(m);
    return checked_mul(checked_mul(upow(x - 1, 2), x - 2), x - 4);
}

u128 formula_noninv3(uint32_t m) {
    require_m(m);
    if (m == 1) return 0;
    const u128 x = checked_pow2(m);
    // x^6 - 15x^5 + 87x^4 - 244x^3 + 345x^2 - 238x + 67, positive for x >= 4;
    // signed Horner keeps the alternating partial sums exact.
    __int128 poly = 1;
    const __int128 xs = (__int128)x;
    const __int128 coeff[6] = {-15, 87, -244, 345, -238, 67};
    for (__int128 c : coeff) poly = poly * xs + c;
    if (poly < 0) throw std::domain_error("count exceeds 128 bits");
    return checked_mul(checked_mul(upow(x - 1, 2), x - 2), (u128)poly);
}

std::optional<Table4x4> table_4x4(uint32_t m) {
    Table4x4 t;
    switch (m) {
        case 2:
            return t;  // all zero: no 4x4 MDS matrix exists over GF(4)
        case 3:
            t.rep_mds = 720;
            t.rep_inv = 48;
            break;
        case 4:
            t.rep_mds = 464'227'344;
            t.rep_inv = 71'856;
            break;
        default:
            return std::nullopt;
    }
    const u128 q1 = checked_pow2(m) - 1;
    t.total_mds = checked_mul(t.rep_mds, upow(q1, 7));
    t.total_inv = checked_mul(t.rep_inv, upow(q1, 3));
    return t;
}

std::optional<u128> known_rep_count(const FieldSpec& field, uint32_t n) {
    if (n == 2) {
        auto f = make_field(field);
        return (u128)f->q() - 2;
    }
    if (field.p != 2) return std::nullopt;
    if (n == 3) return formula_rep3(field.m);
    if (n == 4) {
        if (auto t = table_4x4(field.m)) return t->rep_mds;
    }
    return std::nullopt;
}

const char* to_string(CountSource s) {
    switch (s) {
        case CountSource::ClosedForm: return "closed-form";
        case CountSource::Table: return "table";
        case CountSource::EnumerationOnly: return "enumeration-only";
    }
    return "?";
}

CountReport verify(const FieldSpec& field, uint32_t n, EnumKind kind, const CountOptions& opts) {
    CountReport rep;
    rep.field = field;
    rep.n = n;
    rep.kind = kind;

    auto f = make_field(field);
    const u128 q1 = f->q() - 1;

    if (f->p() == 2 && n == 3) {
        rep.source = CountSource::ClosedForm;
        switch (kind) {
            case EnumKind::Representatives: rep.formula_value = formula_rep3(f->m()); break;
            case EnumKind::AllMds: rep.formula_value = formula_mds3(f->m()); break;
            case EnumKind::AllInvolutory: rep.formula_value = formula_inv3(f->m()); break;
        }
    } else if (f->p() == 2 && n == 4) {
        if (auto t = table_4x4(f->m())) {
            rep.source = CountSource::Table;
            switch (kind) {
                case EnumKind::Representatives: rep.formula_value = t->rep_mds; break;
                case EnumKind::AllMds: rep.formula_value = t->total_mds; break;
                case EnumKind::AllInvolutory: rep.formula_value = t->total_inv; break;
            }
        }
    }
    if (!rep.formula_value) rep.source = CountSource::EnumerationOnly;

    EnumSpec spec;
    spec.field = field;
    spec.n = n;
    spec.kind = kind;
    spec.mode = EnumMode::CountOnly;
    CountOutcome outcome = count(spec, opts);
    if (outcome.complete) {
        rep.enumerated_value = outcome.value;
        // The member totals must be exact multiples of the representative
        // counts; recheck the factorization before comparing to the formula.
        u128 expect = 0;
        switch (kind) {
            case EnumKind::Representatives: expect = outcome.representatives; break;
            case EnumKind::AllMds:
                expect = checked_mul(outcome.representatives, upow(q1, 2 * n - 1));
                break;
            case EnumKind::AllInvolutory:
                expect = checked_mul(outcome.certified, upow(q1, n - 1));
                if (f->p() != 2) expect = checked_mul(expect, 2);
                break;
        }
        if (expect != outcome.value)
            throw std::domain_error("census self-check failed: member total is not the "
                                    "expected multiple of the representative count");
    }

    rep.agrees = rep.formula_value && rep.enumerated_value &&
                 *rep.formula_value == *rep.enumerated_value;
    return rep;
}

}  // namespace mdsforge
