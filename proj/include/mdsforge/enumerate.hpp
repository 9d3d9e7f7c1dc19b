#pragma once
// Exhaustive generation and counting of n x n MDS / involutory MDS matrices.
//
// Everything runs through representatives: the interior R is scanned (a plain
// odometer for n != 4, the nested parameterization for n = 4), each survivor
// of the interior conditions becomes one representative M1, and the full
// families are either streamed as diagonal sandwiches of M1 or obtained by
// multiplying counts with the appropriate power of (q-1).

#include "mdsforge/decomp.hpp"
#include "mdsforge/gf.hpp"
#include "mdsforge/matlin.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

namespace mdsforge {

using u128 = unsigned __int128;

std::string u128_str(u128 v);
u128 u128_parse(const std::string& text);  // throws std::invalid_argument

enum class EnumKind { Representatives, AllMds, AllInvolutory };
const char* to_string(EnumKind k);

enum class EnumMode { Stream, CountOnly };

struct EnumSpec {
    FieldSpec field;
    uint32_t n = 2;
    EnumKind kind = EnumKind::Representatives;
    EnumMode mode = EnumMode::Stream;
    // Stream mode refuses jobs whose output would exceed this many matrices.
    uint64_t stream_limit = 100'000'000ull;
};

using MatrixSink = std::function<void(const SquareMatrix&)>;

// Representative MDS matrices in ascending row-major order of their codes.
// (For n = 4 the nested generator does not produce that order natively, so
// the stream is collected and sorted before emission.)
void enum_representatives(const EnumSpec& spec, const MatrixSink& sink);

// All MDS matrices: representatives ascending, and within one representative
// the D2 diagonal (first entry pinned to 1) varies slower than D1, both in
// lexicographic code order.
void enum_mds(const EnumSpec& spec, const MatrixSink& sink);

// All involutory MDS matrices: certified representatives ascending; within
// one representative the certificate's member matrices in lexicographic
// lambda order, and in odd characteristic the negated-certificate family
// follows the canonical one (the two families are disjoint and together
// exhaust the involutory MDS matrices sharing that representative).
void enum_involutory(const EnumSpec& spec, const MatrixSink& sink);

// Dispatch on spec.kind.
void enum_stream(const EnumSpec& spec, const MatrixSink& sink);

struct CountOptions {
    unsigned workers = 1;
    // When set, census progress is persisted here (JSON) and a matching file
    // is resumed from. A file written for a different job is refused.
    std::string checkpoint_path;
    // Test hook: stop after folding this many blocks in this run (0 = run to
    // completion). The checkpoint, if any, stays valid for resumption.
    uint64_t halt_after_blocks = 0;
};

struct CountOutcome {
    u128 value = 0;            // per spec.kind (members, not representatives,
                               // for AllMds / AllInvolutory)
    u128 representatives = 0;  // interior survivors
    u128 certified = 0;        // survivors carrying an involutory certificate
    uint64_t blocks_total = 0;
    uint64_t blocks_done = 0;  // folded in this run (excludes resumed ones)
    bool resumed = false;
    bool complete = true;
    double elapsed_seconds = 0.0;
};

CountOutcome count(const EnumSpec& spec, const CountOptions& opts = {});

// Cross-check route: scan every interior in M_{n-1}(F*) with the plain
// odometer regardless of n, apply the interior conditions (and the full
// minor scan for n >= 5). Slow by design; exists so the n = 4 nested
// generator has an independent witness.
u128 count_representatives_literal(const FieldSpec& field, uint32_t n);

// Ground truth by brute force: scan all q^{n^2} matrices and test minors.
// Refused when q^{n^2} > 2^30. The digest is order-independent (wrapping
// sum of per-matrix FNV-1a hashes) so it can be compared against any
// enumeration order.
struct BruteForceResult {
    uint64_t count = 0;
    uint64_t digest = 0;
};
BruteForceResult brute_force_mds(const FieldSpec& field, uint32_t n);

// Order-independent fingerprint of a set of matrices.
struct MatrixSetDigest {
    uint64_t sum = 0;
    uint64_t count = 0;
    void add(const SquareMatrix& m);
    bool operator==(const MatrixSetDigest&) const = default;
};

}  // namespace mdsforge
