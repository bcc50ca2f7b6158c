#include "sgc/bounds.hpp"

#include <algorithm>

namespace sgc {

namespace {

// H(z_S | u) as ranks, with the side-information rows adjoined.
std::int64_t cond_entropy_given(const Instance& inst, std::uint32_t mask, const MatrixFp& u_rows) {
    MatrixFp stacked = stack_v(stacked_keys(inst, mask), u_rows);
    return static_cast<std::int64_t>(rank(stacked)) - static_cast<std::int64_t>(rank(u_rows));
}

std::uint32_t mask_of(const std::vector<std::size_t>& receivers, std::size_t limit, const char* what) {
    std::uint32_t mask = 0;
    for (std::size_t r : receivers) {
        if (r >= limit) throw Error(Errc::DimensionMismatch, std::string(what) + " index out of range");
        mask |= 1u << r;
    }
    return mask;
}

} // namespace

RateBound rate_upper_bound(const Instance& inst) {
    RateBound best{Rat(0), 0, inst.num_qualified};
    bool first = true;
    for (std::size_t q = 0; q < inst.num_qualified; ++q)
        for (std::size_t e = inst.num_qualified; e < inst.num_receivers(); ++e) {
            Rat v(conditional_entropy(inst, 1u << q, 1u << e));
            if (first || v < best.value) {
                best = {v, q, e};
                first = false;
            }
        }
    return best;
}

Rat bandwidth_lower_bound(const Instance& inst, const Rat& rate,
                          const std::vector<std::size_t>& qualified_set, std::size_t e,
                          const MatrixFp& eave_fn) {
    if (e < inst.num_qualified || e >= inst.num_receivers())
        throw Error(Errc::DimensionMismatch, "eavesdropper index out of range");
    if (eave_fn.cols() != inst.keys[e].rows())
        throw Error(Errc::DimensionMismatch, "side-information map must have d_e columns");
    std::uint32_t q_mask = mask_of(qualified_set, inst.num_qualified, "qualified");
    MatrixFp u_rows = eave_fn * inst.keys[e];
    std::int64_t singles = 0;
    for (std::size_t q : qualified_set) singles += cond_entropy_given(inst, 1u << q, u_rows);
    std::int64_t joint = cond_entropy_given(inst, q_mask, u_rows);
    Rat value = Rat(static_cast<std::int64_t>(qualified_set.size())) * rate - Rat(singles - joint);
    return std::max(value, rate);
}

NewconTerms newcon_bound(const Instance& inst, const MatrixFp& shared_fn) {
    if (shared_fn.cols() != inst.basis_dim)
        throw Error(Errc::DimensionMismatch, "shared side information must map the m basis symbols");
    const std::size_t N = inst.num_qualified;
    const std::size_t K = inst.num_receivers();
    for (std::size_t e = N; e < K; ++e)
        if (!row_space_contains(inst.keys[e], shared_fn))
            throw Error(Errc::UsageError,
                        "shared side information is not a function of eavesdropper " + std::to_string(e + 1));
    std::uint32_t eave_mask = 0;
    std::int64_t singles = 0;
    for (std::size_t e = N; e < K; ++e) {
        eave_mask |= 1u << e;
        singles += cond_entropy_given(inst, 1u << e, shared_fn);
    }
    std::int64_t joint = cond_entropy_given(inst, eave_mask, shared_fn);
    if (singles != joint)
        throw Error(Errc::IndependenceViolated,
                    "eavesdropper keys are not conditionally independent given the side information");
    std::uint32_t all_mask = (1u << K) - 1;
    std::int64_t everything = cond_entropy_given(inst, all_mask, shared_fn);
    Rat rhs = Rat(static_cast<std::int64_t>(K - N)) * Rat(everything) - Rat(singles);
    return NewconTerms{rhs, static_cast<std::int64_t>(K - N) - 1};
}

Rat newcon_rate_bound(const Instance& inst, const MatrixFp& shared_fn,
                      const std::vector<std::size_t>& qualified_set) {
    NewconTerms terms = newcon_bound(inst, shared_fn);
    std::uint32_t q_mask = mask_of(qualified_set, inst.num_qualified, "qualified");
    std::int64_t singles = 0;
    for (std::size_t q : qualified_set) singles += cond_entropy_given(inst, 1u << q, shared_fn);
    std::int64_t joint = cond_entropy_given(inst, q_mask, shared_fn);
    Rat slack(singles - joint);
    Rat denom = Rat(1) + Rat(terms.multiplier) * Rat(static_cast<std::int64_t>(qualified_set.size()));
    return (terms.rhs + Rat(terms.multiplier) * slack) / denom;
}

CapacityResult generic_capacity(std::size_t N, std::size_t E, const Rat& gamma) {
    if (gamma < Rat(1)) throw Error(Errc::BadGamma, "need gamma >= 1");
    if (N < 1 || E < 1) throw Error(Errc::BadGamma, "need N >= 1 and E >= 1");
    const Rat full_edge(static_cast<std::int64_t>(std::min(N, E)) + 1);
    const Rat small_edge = Rat(1) + Rat(1, static_cast<std::int64_t>(std::min(N, E)));
    if (gamma >= full_edge) return {Rat(1), "full-rate", {}, {}};
    if (gamma <= small_edge) return {gamma - Rat(1), "overlap-limited", {}, {}};
    CapacityResult open;
    open.regime = "open";
    open.bracket_hi = std::min(Rat(1), gamma - Rat(1));
    return open;
}

CapacityResult n2e2_capacity(const Rat& gamma) {
    if (gamma < Rat(1)) throw Error(Errc::BadGamma, "need gamma >= 1");
    if (gamma >= Rat(5, 2)) return {Rat(1), "full-rate", {}, {}};
    if (gamma >= Rat(2)) return {Rat(2, 3) * (gamma - Rat(1)), "aligned", {}, {}};
    if (gamma <= Rat(5, 3)) return {gamma - Rat(1), "overlap-limited", {}, {}};
    CapacityResult open;
    open.regime = "open";
    open.bracket_hi = std::min(Rat(1), gamma - Rat(1));
    return open;
}

} // namespace sgc
