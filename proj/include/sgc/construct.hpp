#pragma once

#include <cstdint>

#include "sgc/scheme.hpp"

namespace sgc {

inline constexpr int kDefaultMaxRetries = 50;

// A successfully built scheme together with how many instance resamples the
// almost-surely rank conditions cost, plus construction metadata (regime,
// eigenvalues, leakage budget for the epsilon schemes, ...).
struct ConstructorOutcome {
    LinearScheme scheme;
    int retries_used = 0;
    nlohmann::json notes;
};

// The hand-built reference schemes for SG1..SG4.
ConstructorOutcome construct_extra_entropic(NamedInstance which, std::uint64_t p);

// gamma >= min(N+1, E+1), rate d. Either a one-time-pad stack over the
// qualified keys (gamma >= N+1) or identity key precoder with the message
// sent along the null space of the stacked eavesdropper keys (gamma >= E+1).
ConstructorOutcome construct_large_gamma(const Instance& inst, Rng& rng,
                                         int max_retries = kDefaultMaxRetries);

// gamma <= max(1+1/N, 1+1/E), rate m-d. Either the common qualified overlap
// as a one-time pad (gamma <= 1+1/N) or the common eavesdropper overlap
// broadcast next to a randomly padded message (gamma <= 1+1/E).
ConstructorOutcome construct_small_gamma(const Instance& inst, Rng& rng,
                                         int max_retries = kDefaultMaxRetries);

// N = E = 2 across the solved regimes; gamma in (5/3, 2) raises Unsolved.
// The [2, 5/2] regime needs 3 | (m - d); use n2e2_spatial_triple to obtain a
// compliant instance at triple the dimensions.
ConstructorOutcome construct_n2e2(const Instance& inst, Rng& rng,
                                  int max_retries = kDefaultMaxRetries);

// Fresh fully generic instance at (3d, 3m) for the same gamma.
Instance n2e2_spatial_triple(std::uint64_t p, std::size_t d, std::size_t m, Rng& rng);

// Re-expresses the keys in the basis where receiver 1 holds the first d
// coordinates and receiver 2 the rest. Requires [H_1; H_2] square and
// invertible (throws Singular otherwise).
struct BasisChange {
    Instance transformed;
    MatrixFp basis_map;  // stacked [H_1; H_2]
};
BasisChange change_of_basis(const Instance& inst);

// gamma = 2, E = 2, N in {3, 4} at d = 3, m = 6. N = 3 aligns a generic
// two-dimensional slice of the third key into the first two; N = 4 uses a
// two-dimensional invariant subspace obtained from the characteristic
// polynomial of the alignment map, resampling when it is irreducible.
ConstructorOutcome construct_alignment_smallN(const Instance& inst, Rng& rng,
                                              int max_retries = kDefaultMaxRetries);

// N > 2, E = 2, gamma = 2 with diagonal keys. Precoder rows are products of
// the qualified diagonal key matrices up to total degree max_degree+1 applied
// to the all-ones row; zero leakage, message length C(max_degree, 2N).
ConstructorOutcome construct_asymptotic_N(std::uint64_t p, std::size_t N, std::size_t max_degree,
                                          Rng& rng, int max_retries = kDefaultMaxRetries);

// N = 2, E > 2, gamma = 2 with diagonal keys; product rows come from the
// eavesdropper matrices. Correctness is exact; per-eavesdropper leakage is at
// most C(max_degree+1, 2E) - C(max_degree, 2E) symbols.
ConstructorOutcome construct_asymptotic_E(std::uint64_t p, std::size_t E, std::size_t max_degree,
                                          Rng& rng, int max_retries = kDefaultMaxRetries);

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

} // namespace sgc
