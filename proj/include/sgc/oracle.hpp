#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "sgc/scheme.hpp"

namespace sgc {

inline constexpr std::uint64_t kOracleCap = 10'000'000;

// Exact joint distribution of (W, X, Z_k) from enumerating all p^(m + L_W)
// message/key realizations. Tuples are digit-packed base p, most significant
// symbol first; counts are sorted by (w, x, z).
struct JointTable {
    std::uint64_t p = 2;
    std::size_t message_len = 0;
    std::size_t signal_len = 0;
    std::size_t key_len = 0;
    std::vector<std::pair<std::array<std::uint64_t, 3>, std::uint64_t>> counts;
    std::uint64_t total = 0;
};

// Throws TooLarge beyond the enumeration cap.
JointTable enumerate_joint(const LinearScheme& sch, std::size_t k, std::uint64_t cap = kOracleCap);

// Exact H(W | X, Z_q) per qualified receiver and I(W; X, Z_e) per
// eavesdropper, in p-ary units, computed combinatorially from support sizes
// (which are always powers of p for linear maps) - no floating point.
struct EntropicReport {
    std::vector<std::int64_t> deficits;  // index 0 = first qualified receiver
    std::vector<std::int64_t> leakages;  // index 0 = first eavesdropper
};
EntropicReport entropic_check(const LinearScheme& sch, std::uint64_t cap = kOracleCap);

// Named almost-surely rank conditions, measured empirically over seeded
// generic draws.
enum class SzPredicate {
    QualifiedStackWithEave,  // [H_1;...;H_N;H_e] has full row rank for every e
    OverlapCompletion,       // [H_Q; H_e] has full rank for every e
    LeftNullDimOne,          // each [V; H_e] stack leaves an (m-d)/3-dim left null space
    SingularFamily,          // full-row-rank predicate on a deliberately singular family
};

SzPredicate parse_sz_predicate(const std::string& name);

double schwartz_zippel_trial(SzPredicate predicate, const GenericShape& shape, int trials, Rng& rng);

} // namespace sgc
