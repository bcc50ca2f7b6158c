#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sgc/matfp.hpp"
#include "sgc/rat.hpp"

namespace sgc {

// A secure-groupcast instance: K receivers, each holding d_k linear
// combinations of m independent basis symbols over F_p. Receivers
// 0..num_qualified-1 must decode, the rest must learn nothing.
struct Instance {
    PrimeField field;
    std::size_t basis_dim;        // m
    std::size_t num_qualified;    // N
    std::vector<MatrixFp> keys;   // K matrices, each d_k x m

    std::size_t num_receivers() const { return keys.size(); }
    std::size_t num_eavesdroppers() const { return keys.size() - num_qualified; }
    bool is_qualified(std::size_t k) const { return k < num_qualified; }

    bool uniform_key_dim() const;
    // Common per-receiver key dimension d; throws BadDimensions when the
    // receivers have unequal key sizes.
    std::size_t key_dim() const;
    // Space expansion factor m/d for uniform instances.
    Rat gamma() const;
};

Instance make_instance(std::uint64_t p, std::size_t basis_dim, std::size_t num_qualified,
                       std::vector<MatrixFp> keys);

enum class NamedInstance { SG1, SG2, SG3, SG4 };

NamedInstance parse_named_instance(const std::string& name);
std::string named_instance_label(NamedInstance which);

// The four reference instances, transcribed exactly. SG1/SG2 accept any
// prime; SG3/SG4 need p >= 5 and throw FieldTooSmall otherwise.
Instance named_instance(NamedInstance which, std::uint64_t p);

struct GenericShape {
    std::uint64_t p = kDefaultPrime;
    std::size_t d = 1;
    std::size_t m = 2;
    std::size_t N = 1;
    std::size_t E = 1;
    bool diagonal = false;  // keys split as [D1 D2] with nonzero random diagonals; requires m == 2d
};

// Fully random key matrices, entry-wise uniform; never retries internally.
Instance sample_generic_instance(const GenericShape& shape, Rng& rng);

// Joint entropies of every subset of keys, in p-ary symbol units. Bit k of a
// mask selects receiver k (0-based).
struct EntropyProfile {
    std::size_t num_receivers = 0;
    std::vector<std::int64_t> values;  // indexed by subset mask; values[0] == 0

    std::int64_t of(std::uint32_t mask) const { return values.at(mask); }
    bool operator==(const EntropyProfile&) const = default;
};

MatrixFp stacked_keys(const Instance& inst, std::uint32_t mask);
std::int64_t subset_entropy(const Instance& inst, std::uint32_t mask);
EntropyProfile entropy_profile(const Instance& inst);

// H(S | T) = H(S u T) - H(T), as ranks.
std::int64_t conditional_entropy(const Instance& inst, std::uint32_t s_mask, std::uint32_t t_mask);

} // namespace sgc
