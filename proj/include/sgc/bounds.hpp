#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sgc/keymodel.hpp"
#include "sgc/rat.hpp"

namespace sgc {

struct RateBound {
    Rat value;
    std::size_t witness_qualified;     // 0-based
    std::size_t witness_eavesdropper;  // 0-based
};

// min over qualified q and eavesdropper e of H(z_q | z_e).
RateBound rate_upper_bound(const Instance& inst);

// Bandwidth floor for a target rate: |Q| R - (sum_i H(z_{q_i} | u) - H(z_Q | u))
// with u = eave_fn * z_e, clamped from below by R. eave_fn has d_e columns
// and may have zero rows (empty side information).
Rat bandwidth_lower_bound(const Instance& inst, const Rat& rate,
                          const std::vector<std::size_t>& qualified_set, std::size_t e,
                          const MatrixFp& eave_fn);

// Converse for conditionally independent eavesdropper keys. shared_fn maps
// the basis symbols to side information u available to every eavesdropper
// (its rows must lie in every eavesdropper row space). Returns the raw
// right-hand side (K-N) H(z_{1:K}|u) - sum_e H(z_e|u) and the multiplier
// K-N-1 applied to the bandwidth term, for assembling rate bounds.
struct NewconTerms {
    Rat rhs;
    std::int64_t multiplier;
};
NewconTerms newcon_bound(const Instance& inst, const MatrixFp& shared_fn);

// Assembled rate bound: R <= (rhs + mult * slack(Q)) / (1 + mult * |Q|).
Rat newcon_rate_bound(const Instance& inst, const MatrixFp& shared_fn,
                      const std::vector<std::size_t>& qualified_set);

// Capacity value (normalized by d) or an explicit bracket when the regime is
// open. Brackets never claim unproven achievability: the lower end is unset.
struct CapacityResult {
    std::optional<Rat> value;
    std::string regime;  // "full-rate", "overlap-limited", "aligned", "open"
    std::optional<Rat> bracket_lo;
    std::optional<Rat> bracket_hi;

    bool unsolved() const { return !value.has_value(); }
};

CapacityResult generic_capacity(std::size_t N, std::size_t E, const Rat& gamma);
CapacityResult n2e2_capacity(const Rat& gamma);

} // namespace sgc
