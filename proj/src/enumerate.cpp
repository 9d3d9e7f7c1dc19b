#include "mdsforge/enumerate.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "mdsforge/counting.hpp"
#include "mdsforge/mdscheck.hpp"

namespace mdsforge {

std::string u128_str(u128 v) {
    if (v == 0) return "0";
    char buf[40];
    int pos = 40;
    while (v > 0) {
        buf[--pos] = char('0' + (unsigned)(v % 10));
        v /= 10;
    }
    return std::string(buf + pos, buf + 40);
}

u128 u128_parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty integer literal");
    u128 v = 0;
    constexpr u128 kMax = ~(u128)0;
    for (char ch : text) {
        if (ch < '0' || ch > '9')
            throw std::invalid_argument("bad digit in integer literal: " + text);
        unsigned d = unsigned(ch - '0');
        if (v > (kMax - d) / 10) throw std::invalid_argument("integer literal exceeds 128 bits");
        v = v * 10 + d;
    }
    return v;
}

const char* to_string(EnumKind k) {
    switch (k) {
        case EnumKind::Representatives: return "representatives";
        case EnumKind::AllMds: return "mds";
        case EnumKind::AllInvolutory: return "involutory";
    }
    return "?";
}

namespace {

constexpr uint64_t kFnvOffset = 1469598103934665603ull;
constexpr uint64_t kFnvPrime = 1099511628211ull;

uint64_t fnv1a(const std::string& s) {
    uint64_t h = kFnvOffset;
    for (unsigned char c : s) {
        h ^= c;
        h *= kFnvPrime;
    }
    return h;
}

u128 checked_mul_u128(u128 a, u128 b) {
    if (a != 0 && b > ~(u128)0 / a) throw std::domain_error("count exceeds 128 bits");
    return a * b;
}

u128 upow(u128 base, uint64_t e) {
    u128 r = 1;
    while (e--) r = checked_mul_u128(r, base);
    return r;
}

// Canonical per-matrix hash; both the enumeration side and the brute-force
// side funnel through this so their set digests are comparable.
uint64_t matrix_fingerprint(const Field& f, const uint64_t* codes, size_t n) {
    std::string s = f.spec_string();
    s += '|';
    s += std::to_string(n);
    s += '|';
    for (size_t i = 0; i < n * n; ++i) {
        s += f.format(codes[i]);
        s += (i + 1) % n == 0 ? ';' : ',';
    }
    return fnv1a(s);
}

std::vector<uint64_t> bordered_codes(const uint64_t* interior, size_t k) {
    size_t n = k + 1;
    std::vector<uint64_t> m(n * n, 1);
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) m[(i + 1) * n + (j + 1)] = interior[i * k + j];
    return m;
}

bool interior_is_representative(const Field& f, const uint64_t* interior, size_t k) {
    if (!check_R_codes(f, interior, k)) return false;
    if (k + 1 >= 5) {
        // The five interior conditions leave minor orders 3..n-2 unchecked
        // from order 5 on; scan the bordered matrix in full.
        std::vector<uint64_t> m = bordered_codes(interior, k);
        return is_mds_codes(f, m.data(), k + 1);
    }
    return true;
}

bool bordered_has_certificate(const std::shared_ptr<const Field>& f,
                              const uint64_t* interior, size_t k) {
    SquareMatrix m1(f, k + 1, bordered_codes(interior, k));
    return involutory_certificate(m1).has_value();
}

struct BlockTally {
    uint64_t reps = 0;
    uint64_t cert = 0;
};

// ---------------------------------------------------------------------------
// Odometer route (n != 4): flat scan of M_{n-1}(F*) in row-major code order.

struct OdometerScratch {
    std::shared_ptr<const Field> fp;
    uint32_t k = 0;
    std::vector<uint64_t> codes;  // k*k interior entries, values 1..q-1

    void init(std::shared_ptr<const Field> f, uint32_t kk) {
        fp = std::move(f);
        k = kk;
        codes.assign(size_t(k) * k, 1);
    }
    // Entry (i,j) carries weight (q-1)^(cells-1-(i*k+j)): index order is
    // row-major order of the interior.
    void seek(uint64_t index) {
        const uint64_t q1 = fp->q() - 1;
        for (size_t i = codes.size(); i-- > 0;) {
            codes[i] = index % q1 + 1;
            index /= q1;
        }
    }
    void advance() {
        const uint64_t top = fp->q() - 1;
        for (size_t i = codes.size(); i-- > 0;) {
            if (codes[i] < top) {
                ++codes[i];
                return;
            }
            codes[i] = 1;
        }
    }
};

BlockTally odometer_block(OdometerScratch& sc, uint64_t start, uint64_t len,
                          const std::function<void(const uint64_t*)>* sink) {
    BlockTally t;
    const Field& f = *sc.fp;
    sc.seek(start);
    for (uint64_t i = 0; i < len; ++i, sc.advance()) {
        if (!interior_is_representative(f, sc.codes.data(), sc.k)) continue;
        ++t.reps;
        if (sink) (*sink)(sc.codes.data());
        if (bordered_has_certificate(sc.fp, sc.codes.data(), sc.k)) ++t.cert;
    }
    return t;
}

// ---------------------------------------------------------------------------
// Nested route (n = 4).
//
// Interior R = [[l1, l1*t2, l1*t3], [l2, a*l2*t2, b*l2*t3], [l3, c*l3*t2,
// d*l3*t3]] with everything over F*. For a fixed unit (a,b,c,d) the sixteen
// order-3 minors of the bordered matrix split cleanly:
//   - det R itself reduces to the unit conditions (the 2x2 closed form);
//   - three minors lose their theta dependence up to a unit factor (checked
//     once per lambda triple);
//   - three lose their lambda dependence (once per theta pair);
//   - nine depend on both and use the bordered-determinant identity
//     det [[1,1,1],[1,p,q],[1,r,s]] = (p-1)(s-1) - (q-1)(r-1)
// so the inner loop touches only the nine leaf minors, the six product
// entries, and det(R - U). Orders 1 and 2 of the bordered matrix are exactly
// the unit filter plus the row/column distinctness conditions, which also
// split by phase.
//
// An involutory certificate forces inverse(M1)_{i,1} = inverse(M1)_{1,i},
// i.e. equality of complementary first-row/first-column cofactors, whose
// sign factors agree. In the split form that reads
//     t2*t3*C1 == l2*l3*B1,  t3*C2 == l1*l3*B2,  t2*C3 == l1*l2*B3,
// a three-multiply early reject that leaves the full certificate check to a
// q^-3-ish fraction of survivors.

struct NestedScratch {
    std::shared_ptr<const Field> fp;
    uint32_t q = 0;
    const uint16_t* mt = nullptr;
    std::vector<uint16_t> sub_t;  // [x*q + y] = x - y
    std::vector<uint16_t> dec;    // [x] = x - 1

    struct LS {
        uint16_t l1, l2, l3, u2, u3, w2, w3;  // u = a/b * l2, w = c/d * l3
        uint16_t c1, c2, c3;                  // theta-free minor values
        uint16_t l23, l13, l12;               // pair products for the cert test
    };
    struct TS {
        uint16_t t2, t3, p2, p3, q2, q3;  // p = a/b * t, q = c/d * t
        uint16_t b1, b2, b3;              // lambda-free minor values
        uint16_t t23;
    };
    std::vector<LS> ls;
    std::vector<TS> ts;

    void init(std::shared_ptr<const Field> f) {
        fp = std::move(f);
        q = (uint32_t)fp->q();
        mt = fp->mul_table();
        if (!mt) throw std::invalid_argument("the 4x4 census path needs dense field tables (q <= 256)");
        sub_t.resize(size_t(q) * q);
        dec.resize(q);
        for (uint32_t x = 0; x < q; ++x) {
            dec[x] = (uint16_t)fp->sub(x, 1);
            for (uint32_t y = 0; y < q; ++y) sub_t[size_t(x) * q + y] = (uint16_t)fp->sub(x, y);
        }
        ls.reserve(size_t(q) * q * q / 4);
        ts.reserve(size_t(q) * q / 4);
    }

    uint32_t mul(uint32_t x, uint32_t y) const { return mt[x * q + y]; }
    uint32_t sub(uint32_t x, uint32_t y) const { return sub_t[size_t(x) * q + y]; }

    BlockTally unit(uint32_t a, uint32_t b, uint32_t c, uint32_t d,
                    const std::function<void(const std::array<uint64_t, 9>&)>* sink) {
        BlockTally tally;
        const Field& f = *fp;

        ls.clear();
        for (uint32_t l1 = 2; l1 < q; ++l1) {
            for (uint32_t l2 = 2; l2 < q; ++l2) {
                if (l2 == l1) continue;
                const uint32_t u2 = mul(a, l2), u3 = mul(b, l2);
                if (u2 == l1 || u3 == l1) continue;
                const uint32_t sl2 = sub(l2, l1), su2 = sub(u2, l1), su3 = sub(u3, l1);
                for (uint32_t l3 = 2; l3 < q; ++l3) {
                    if (l3 == l1 || l3 == l2) continue;
                    const uint32_t w2 = mul(c, l3), w3 = mul(d, l3);
                    if (w2 == l1 || w3 == l1 || w2 == u2 || w3 == u3) continue;
                    const uint32_t sw2 = sub(w2, l1), sw3 = sub(w3, l1);
                    const uint32_t c1 = sub(mul(su2, sw3), mul(su3, sw2));
                    if (!c1) continue;
                    const uint32_t sl3 = sub(l3, l1);
                    const uint32_t c2 = sub(mul(sl2, sw3), mul(sl3, su3));
                    if (!c2) continue;
                    const uint32_t c3 = sub(mul(sl2, sw2), mul(sl3, su2));
                    if (!c3) continue;
                    ls.push_back({(uint16_t)l1, (uint16_t)l2, (uint16_t)l3, (uint16_t)u2,
                                  (uint16_t)u3, (uint16_t)w2, (uint16_t)w3, (uint16_t)c1,
                                  (uint16_t)c2, (uint16_t)c3, (uint16_t)mul(l2, l3),
                                  (uint16_t)mul(l1, l3), (uint16_t)mul(l1, l2)});
                }
            }
        }
        if (ls.empty()) return tally;

        ts.clear();
        for (uint32_t t2 = 2; t2 < q; ++t2) {
            const uint32_t p2 = mul(a, t2), q2 = mul(c, t2);
            if (p2 == 1 || q2 == 1) continue;
            for (uint32_t t3 = 2; t3 < q; ++t3) {
                if (t3 == t2) continue;
                const uint32_t p3 = mul(b, t3), q3 = mul(d, t3);
                if (p3 == 1 || q3 == 1 || p3 == p2 || q3 == q2) continue;
                const uint32_t b1 = sub(mul(dec[p2], dec[q3]), mul(dec[q2], dec[p3]));
                if (!b1) continue;
                const uint32_t b2 = sub(mul(dec[t2], dec[q3]), mul(dec[t3], dec[q2]));
                if (!b2) continue;
                const uint32_t b3 = sub(mul(dec[t2], dec[p3]), mul(dec[t3], dec[p2]));
                if (!b3) continue;
                ts.push_back({(uint16_t)t2, (uint16_t)t3, (uint16_t)p2, (uint16_t)p3,
                              (uint16_t)q2, (uint16_t)q3, (uint16_t)b1, (uint16_t)b2,
                              (uint16_t)b3, (uint16_t)mul(t2, t3)});
            }
        }
        if (ts.empty()) return tally;

        for (const LS& L : ls) {
            for (const TS& T : ts) {
                const uint32_t r12 = mul(L.l1, T.t2);
                if (r12 == 1) continue;
                const uint32_t r13 = mul(L.l1, T.t3);
                if (r13 == 1) continue;
                const uint32_t r22 = mul(L.u2, T.t2);
                if (r22 == 1) continue;
                const uint32_t r23 = mul(L.u3, T.t3);
                if (r23 == 1) continue;
                const uint32_t r32 = mul(L.w2, T.t2);
                if (r32 == 1) continue;
                const uint32_t r33 = mul(L.w3, T.t3);
                if (r33 == 1) continue;

                const uint32_t f00 = dec[L.l1], f01 = dec[r12], f02 = dec[r13];
                const uint32_t f10 = dec[L.l2], f11 = dec[r22], f12 = dec[r23];
                const uint32_t f20 = dec[L.l3], f21 = dec[r32], f22 = dec[r33];

                // nine doubly-bordered order-3 minors
                const uint32_t m00 = sub(mul(f11, f22), mul(f12, f21));
                if (!m00) continue;
                const uint32_t m01 = sub(mul(f10, f22), mul(f12, f20));
                if (!m01) continue;
                const uint32_t m02 = sub(mul(f10, f21), mul(f11, f20));
                if (!m02) continue;
                if (mul(f01, f22) == mul(f02, f21)) continue;
                if (mul(f00, f22) == mul(f02, f20)) continue;
                if (mul(f00, f21) == mul(f01, f20)) continue;
                if (mul(f01, f12) == mul(f02, f11)) continue;
                if (mul(f00, f12) == mul(f02, f10)) continue;
                if (mul(f00, f11) == mul(f01, f10)) continue;
                // det(R - U), cofactors along the first row
                const uint32_t det =
                    f.add(sub(mul(f00, m00), mul(f01, m01)), mul(f02, m02));
                if (!det) continue;

                ++tally.reps;
                if (sink) {
                    (*sink)({L.l1, r12, r13, L.l2, r22, r23, L.l3, r32, r33});
                }

                if (mul(T.t23, L.c1) != mul(L.l23, T.b1)) continue;
                if (mul(T.t3, L.c2) != mul(L.l13, T.b2)) continue;
                if (mul(T.t2, L.c3) != mul(L.l12, T.b3)) continue;
                const uint64_t interior[9] = {L.l1, r12, r13, L.l2, r22, r23, L.l3, r32, r33};
                if (bordered_has_certificate(fp, interior, 3)) ++tally.cert;
            }
        }
        return tally;
    }
};

// ---------------------------------------------------------------------------
// Job layout: a flat index space cut into blocks. For n = 4 the indices are
// (a,b,c,d) tuples (lexicographic, entries 2..q-1); otherwise they are
// interior matrices in row-major code order.

struct JobLayout {
    std::shared_ptr<const Field> field;
    uint32_t n = 0;
    bool nested = false;
    uint64_t space = 0;  // total flat indices
    uint64_t chunk = 1;  // indices per block
    uint64_t blocks = 0;
    std::string job_text;
    uint64_t digest = 0;
};

uint64_t checked_pow_u64(uint64_t base, uint64_t e, const char* what) {
    u128 r = 1;
    while (e--) {
        r *= base;
        if (r > (u128)1 << 63) throw std::invalid_argument(what);
    }
    return (uint64_t)r;
}

JobLayout plan_job(const FieldSpec& fs, uint32_t n) {
    if (n < 2) throw std::invalid_argument("order must be at least 2");
    JobLayout job;
    job.field = make_field(fs);
    job.n = n;
    job.nested = (n == 4);
    const uint64_t q = job.field->q();
    if (job.nested) {
        if (q > 256)
            throw std::invalid_argument("the 4x4 census path needs dense field tables (q <= 256)");
        job.space = q < 2 ? 0 : (q - 2) * (q - 2) * (q - 2) * (q - 2);
        // One unit tuple per block keeps checkpoints fine-grained; chunk up
        // only if the tuple space would blow past the slot table budget.
        job.chunk = std::max<uint64_t>(1, job.space / 65536);
    } else {
        const uint64_t cells = uint64_t(n - 1) * (n - 1);
        job.space = checked_pow_u64(q - 1, cells,
                                    "interior scan space exceeds 2^63; nothing enumerable here");
        job.chunk = std::max<uint64_t>(1, job.space / 65536);
    }
    job.blocks = job.space == 0 ? 0 : (job.space + job.chunk - 1) / job.chunk;
    std::ostringstream os;
    os << "mdsforge census v1|field=" << job.field->spec_string() << "|n=" << n
       << "|route=" << (job.nested ? "nested" : "odometer") << "|space=" << job.space
       << "|chunk=" << job.chunk;
    job.job_text = os.str();
    job.digest = fnv1a(job.job_text);
    return job;
}

void decode_unit(uint64_t index, uint64_t q, uint32_t out[4]) {
    const uint64_t base = q - 2;
    for (int i = 3; i >= 0; --i) {
        out[i] = uint32_t(index % base + 2);
        index /= base;
    }
}

std::string digest_hex(uint64_t d) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)d);
    return buf;
}

struct CheckpointState {
    uint64_t cursor = 0;
    u128 reps = 0;
    u128 cert = 0;
};

void write_checkpoint(const std::string& path, const JobLayout& job, const CheckpointState& st) {
    nlohmann::json j{
        {"version", 1},
        {"kind", "mdsforge-census-checkpoint"},
        {"job", job.job_text},
        {"digest", digest_hex(job.digest)},
        {"cursor", st.cursor},
        {"blocks", job.blocks},
        {"representatives", u128_str(st.reps)},
        {"certified", u128_str(st.cert)},
        {"written_unix", (uint64_t)std::time(nullptr)},
    };
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::invalid_argument("cannot write checkpoint file: " + tmp);
        out << j.dump(2) << '\n';
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::invalid_argument("cannot move checkpoint into place: " + path);
}

std::optional<CheckpointState> read_checkpoint(const std::string& path, const JobLayout& job) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("checkpoint file is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || j.value("version", 0) != 1 ||
        j.value("kind", "") != "mdsforge-census-checkpoint")
        throw std::invalid_argument("not a census checkpoint: " + path);
    if (j.value("digest", "") != digest_hex(job.digest))
        throw std::invalid_argument(
            "checkpoint belongs to a different census job (digest mismatch); "
            "refusing to resume from " + path);
    CheckpointState st;
    st.cursor = j.at("cursor").get<uint64_t>();
    st.reps = u128_parse(j.at("representatives").get<std::string>());
    st.cert = u128_parse(j.at("certified").get<std::string>());
    if (st.cursor > job.blocks)
        throw std::invalid_argument("checkpoint cursor is beyond the job size: " + path);
    return st;
}

u128 kind_value(EnumKind kind, const JobLayout& job, u128 reps, u128 cert) {
    const u128 q1 = job.field->q() - 1;
    switch (kind) {
        case EnumKind::Representatives: return reps;
        case EnumKind::AllMds: return checked_mul_u128(reps, upow(q1, 2 * uint64_t(job.n) - 1));
        case EnumKind::AllInvolutory: {
            u128 members = checked_mul_u128(cert, upow(q1, uint64_t(job.n) - 1));
            if (job.field->p() != 2) members = checked_mul_u128(members, 2);
            return members;
        }
    }
    return 0;
}

// Stream cardinality when a closed form or table already pins it down; lets
// hopeless stream requests fail fast instead of after hours.
std::optional<u128> known_stream_cardinality(const EnumSpec& spec, const Field& f) {
    const u128 q1 = f.q() - 1;
    const std::optional<u128> reps = known_rep_count(spec.field, spec.n);
    switch (spec.kind) {
        case EnumKind::Representatives: return reps;
        case EnumKind::AllMds:
            if (!reps) return std::nullopt;
            return checked_mul_u128(*reps, upow(q1, 2 * uint64_t(spec.n) - 1));
        case EnumKind::AllInvolutory:
            if (f.p() == 2 && spec.n == 3) return formula_inv3(f.m());
            if (f.p() == 2 && spec.n == 4) {
                if (auto t = table_4x4(f.m())) return t->total_inv;
            }
            return std::nullopt;
    }
    return std::nullopt;
}

void enforce_stream_bound(const EnumSpec& spec, const Field& f) {
    if (auto card = known_stream_cardinality(spec, f)) {
        if (*card > spec.stream_limit)
            throw std::invalid_argument(
                "stream would emit " + u128_str(*card) + " matrices, above the bound of " +
                std::to_string(spec.stream_limit) + "; use count mode or raise the limit");
    }
}

// Wraps a sink with the dynamic bound for cases with no closed form.
class BoundedEmitter {
public:
    BoundedEmitter(const EnumSpec& spec, const MatrixSink& sink)
        : limit_(spec.stream_limit), sink_(sink) {}
    void operator()(const SquareMatrix& m) {
        if (++emitted_ > limit_)
            throw std::invalid_argument(
                "stream bound of " + std::to_string(limit_) +
                " matrices exceeded; use count mode or raise the limit");
        sink_(m);
    }

private:
    uint64_t limit_;
    uint64_t emitted_ = 0;
    const MatrixSink& sink_;
};

// Ascending representative stream shared by all three enumerations.
void stream_representatives(const std::shared_ptr<const Field>& f, uint32_t n,
                            uint64_t collect_cap,
                            const std::function<void(const SquareMatrix&)>& emit) {
    const uint32_t k = n - 1;
    if (n == 4) {
        // The nested generator's natural order is unit-major, not row-major;
        // collect and sort. Interiors fit in bytes since the path requires
        // q <= 256.
        NestedScratch sc;
        sc.init(f);
        std::vector<std::array<uint8_t, 9>> interiors;
        std::function<void(const std::array<uint64_t, 9>&)> keep =
            [&](const std::array<uint64_t, 9>& r) {
                if (interiors.size() >= collect_cap)
                    throw std::invalid_argument(
                        "stream bound of " + std::to_string(collect_cap) +
                        " matrices exceeded; use count mode or raise the limit");
                std::array<uint8_t, 9> packed;
                for (int i = 0; i < 9; ++i) packed[i] = (uint8_t)r[i];
                interiors.push_back(packed);
            };
        const uint64_t q = f->q();
        for (uint32_t a = 2; a < q; ++a)
            for (uint32_t b = 2; b < q; ++b)
                for (uint32_t c = 2; c < q; ++c)
                    for (uint32_t d = 2; d < q; ++d) {
                        if (!check_R_order2_codes(*f, a, b, c, d)) continue;
                        sc.unit(a, b, c, d, &keep);
                    }
        std::sort(interiors.begin(), interiors.end());
        for (const auto& packed : interiors) {
            uint64_t interior[9];
            for (int i = 0; i < 9; ++i) interior[i] = packed[i];
            emit(SquareMatrix(f, n, bordered_codes(interior, k)));
        }
        return;
    }
    OdometerScratch sc;
    sc.init(f, k);
    const uint64_t cells = uint64_t(k) * k;
    const uint64_t space =
        checked_pow_u64(f->q() - 1, cells, "interior scan space exceeds 2^63; nothing enumerable here");
    for (uint64_t i = 0; i < space; ++i, sc.advance()) {
        if (!interior_is_representative(*f, sc.codes.data(), k)) continue;
        emit(SquareMatrix(f, n, bordered_codes(sc.codes.data(), k)));
    }
}

}  // namespace

// ---------------------------------------------------------------------------

void MatrixSetDigest::add(const SquareMatrix& m) {
    sum += matrix_fingerprint(*m.field(), m.codes().data(), m.n());
    ++count;
}

void enum_representatives(const EnumSpec& spec, const MatrixSink& sink) {
    auto f = make_field(spec.field);
    if (spec.n < 2) throw std::invalid_argument("order must be at least 2");
    enforce_stream_bound(spec, *f);
    BoundedEmitter emit(spec, sink);
    stream_representatives(f, spec.n, spec.stream_limit,
                           [&](const SquareMatrix& m) { emit(m); });
}

void enum_mds(const EnumSpec& spec, const MatrixSink& sink) {
    auto f = make_field(spec.field);
    if (spec.n < 2) throw std::invalid_argument("order must be at least 2");
    enforce_stream_bound(spec, *f);
    BoundedEmitter emit(spec, sink);
    const uint32_t n = spec.n;
    const uint64_t q = f->q();
    // Members of one representative family: D2 = Diag(1, t2..tn) varies
    // slower than D1 = Diag(l1..ln), both lexicographic by code.
    std::vector<uint64_t> theta(n, 1), lambda(n, 1);
    auto bump = [&](std::vector<uint64_t>& v, size_t lo) {
        for (size_t i = v.size(); i-- > lo;) {
            if (v[i] < q - 1) {
                ++v[i];
                return true;
            }
            v[i] = 1;
        }
        return false;
    };
    stream_representatives(f, n, spec.stream_limit, [&](const SquareMatrix& m1) {
        std::fill(theta.begin(), theta.end(), 1);
        do {
            DiagonalMatrix d2(f, theta);
            std::fill(lambda.begin(), lambda.end(), 1);
            do {
                emit(sandwich(DiagonalMatrix(f, lambda), m1, d2));
            } while (bump(lambda, 0));
        } while (bump(theta, 1));  // first entry pinned to 1
    });
}

void enum_involutory(const EnumSpec& spec, const MatrixSink& sink) {
    auto f = make_field(spec.field);
    if (spec.n < 2) throw std::invalid_argument("order must be at least 2");
    enforce_stream_bound(spec, *f);
    BoundedEmitter emit(spec, sink);
    const uint32_t n = spec.n;
    const uint64_t q = f->q();
    std::vector<uint64_t> lambdas(n - 1, 1);
    auto bump = [&]() {
        for (size_t i = lambdas.size(); i-- > 0;) {
            if (lambdas[i] < q - 1) {
                ++lambdas[i];
                return true;
            }
            lambdas[i] = 1;
        }
        return false;
    };
    auto family = [&](const SquareMatrix& m1, const InvolutoryCertificate& cert) {
        std::fill(lambdas.begin(), lambdas.end(), 1);
        do {
            emit(involutory_member(m1, cert, lambdas));
        } while (bump());
    };
    stream_representatives(f, n, spec.stream_limit, [&](const SquareMatrix& m1) {
        auto cert = involutory_certificate(m1);
        if (!cert) return;
        family(m1, *cert);
        if (f->p() != 2) {
            // The negated certificate generates the disjoint second half of
            // this representative's involutory family.
            family(m1, negate_certificate(*cert));
        }
    });
}

void enum_stream(const EnumSpec& spec, const MatrixSink& sink) {
    switch (spec.kind) {
        case EnumKind::Representatives: return enum_representatives(spec, sink);
        case EnumKind::AllMds: return enum_mds(spec, sink);
        case EnumKind::AllInvolutory: return enum_involutory(spec, sink);
    }
}

CountOutcome count(const EnumSpec& spec, const CountOptions& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    JobLayout job = plan_job(spec.field, spec.n);
    const unsigned workers = std::clamp(opts.workers, 1u, 256u);

    CountOutcome out;
    out.blocks_total = job.blocks;

    CheckpointState st;
    if (!opts.checkpoint_path.empty()) {
        if (auto loaded = read_checkpoint(opts.checkpoint_path, job)) {
            st = *loaded;
            out.resumed = true;
        }
    }

    struct Slot {
        uint64_t reps = 0;
        uint64_t cert = 0;
        std::atomic<bool> done{false};
    };
    std::vector<Slot> slots(job.blocks);

    std::mutex fold_mtx;
    std::atomic<uint64_t> next{st.cursor};
    std::atomic<bool> stop{false};
    uint64_t folded_this_run = 0;
    // Backdated so the first folded block writes immediately; time_point::min()
    // would overflow the subtraction below and suppress every throttled write.
    auto last_write = std::chrono::steady_clock::now() - std::chrono::hours(1);
    std::exception_ptr failure;

    auto fold = [&](bool final_pass) {
        // fold_mtx held
        while (st.cursor < job.blocks && slots[st.cursor].done.load(std::memory_order_acquire)) {
            st.reps += slots[st.cursor].reps;
            st.cert += slots[st.cursor].cert;
            ++st.cursor;
            ++folded_this_run;
        }
        if (opts.halt_after_blocks && folded_this_run >= opts.halt_after_blocks) stop = true;
        if (!opts.checkpoint_path.empty()) {
            const auto now = std::chrono::steady_clock::now();
            if (final_pass || now - last_write > std::chrono::milliseconds(100)) {
                write_checkpoint(opts.checkpoint_path, job, st);
                last_write = now;
            }
        }
    };

    auto worker = [&]() {
        try {
            NestedScratch nested;
            OdometerScratch odo;
            if (job.nested)
                nested.init(job.field);
            else
                odo.init(job.field, job.n - 1);
            while (!stop.load(std::memory_order_relaxed)) {
                const uint64_t blk = next.fetch_add(1);
                if (blk >= job.blocks) break;
                const uint64_t start = blk * job.chunk;
                const uint64_t len = std::min(job.chunk, job.space - start);
                BlockTally tally;
                if (job.nested) {
                    uint32_t u[4];
                    for (uint64_t i = 0; i < len; ++i) {
                        decode_unit(start + i, job.field->q(), u);
                        if (!check_R_order2_codes(*job.field, u[0], u[1], u[2], u[3])) continue;
                        BlockTally one = nested.unit(u[0], u[1], u[2], u[3], nullptr);
                        tally.reps += one.reps;
                        tally.cert += one.cert;
                    }
                } else {
                    tally = odometer_block(odo, start, len, nullptr);
                }
                slots[blk].reps = tally.reps;
                slots[blk].cert = tally.cert;
                slots[blk].done.store(true, std::memory_order_release);
                std::lock_guard<std::mutex> lk(fold_mtx);
                fold(false);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lk(fold_mtx);
            if (!failure) failure = std::current_exception();
            stop = true;
        }
    };

    if (st.cursor < job.blocks) {
        std::vector<std::thread> pool;
        for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
        worker();
        for (auto& t : pool) t.join();
        std::lock_guard<std::mutex> lk(fold_mtx);
        fold(true);
    } else if (!opts.checkpoint_path.empty() && !out.resumed) {
        write_checkpoint(opts.checkpoint_path, job, st);
    }
    if (failure) std::rethrow_exception(failure);

    out.representatives = st.reps;
    out.certified = st.cert;
    out.blocks_done = folded_this_run;
    out.complete = (st.cursor == job.blocks);
    if (out.complete) out.value = kind_value(spec.kind, job, st.reps, st.cert);
    out.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

u128 count_representatives_literal(const FieldSpec& fs, uint32_t n) {
    if (n < 2) throw std::invalid_argument("order must be at least 2");
    auto f = make_field(fs);
    const uint32_t k = n - 1;
    const uint64_t space = checked_pow_u64(
        f->q() - 1, uint64_t(k) * k, "interior scan space exceeds 2^63; nothing enumerable here");
    OdometerScratch sc;
    sc.init(f, k);
    u128 reps = 0;
    for (uint64_t i = 0; i < space; ++i, sc.advance())
        if (interior_is_representative(*f, sc.codes.data(), k)) ++reps;
    return reps;
}

BruteForceResult brute_force_mds(const FieldSpec& fs, uint32_t n) {
    if (n < 1) throw std::invalid_argument("order must be at least 1");
    auto f = make_field(fs);
    const uint64_t q = f->q();
    const uint64_t cells = uint64_t(n) * n;
    u128 space = 1;
    for (uint64_t i = 0; i < cells; ++i) {
        space *= q;
        if (space > (u128)1 << 30)
            throw std::invalid_argument("brute force is capped at q^(n^2) <= 2^30 matrices");
    }
    std::vector<uint64_t> codes(cells, 0);
    BruteForceResult res;
    const uint64_t total = (uint64_t)space;
    for (uint64_t i = 0;; ++i) {
        if (is_mds_codes(*f, codes.data(), n)) {
            ++res.count;
            res.digest += matrix_fingerprint(*f, codes.data(), n);
        }
        if (i + 1 == total) break;
        for (size_t j = cells; j-- > 0;) {
            if (codes[j] < q - 1) {
                ++codes[j];
                break;
            }
            codes[j] = 0;
        }
    }
    return res;
}

}  // namespace mdsforge
