#pragma once

#include <cstdint>
#include <random>

#include "sgc/error.hpp"

namespace sgc {

// Deterministic generator; the standard fixes mt19937_64 output exactly, so a
// seed reproduces the same draws on every platform.
using Rng = std::mt19937_64;

bool is_prime_u64(std::uint64_t n);

// Arithmetic context for F_p. The modulus is validated at construction and
// all element values are residues in [0, p).
class PrimeField {
public:
    explicit PrimeField(std::uint64_t p);

    std::uint64_t p() const { return p_; }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t s = a + b;
        return s >= p_ || s < a ? s - p_ : s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p_ - b; }
    std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p_);
    }

    // a^e with 0^0 = 1.
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;

    // Multiplicative inverse; throws ZeroInverse for a = 0.
    std::uint64_t inv(std::uint64_t a) const;

    // Reduces a signed integer to its residue.
    std::uint64_t from_int(std::int64_t v) const;

    // Uniform residue in [0, p) via rejection sampling (unbiased and
    // implementation-independent, unlike std::uniform_int_distribution).
    std::uint64_t sample(Rng& rng) const;
    std::uint64_t sample_nonzero(Rng& rng) const;

    bool operator==(const PrimeField& other) const { return p_ == other.p_; }
    bool operator!=(const PrimeField& other) const { return p_ != other.p_; }

private:
    std::uint64_t p_;
};

// Default modulus for "sufficiently large field" constructions: 2^31 - 1.
inline constexpr std::uint64_t kDefaultPrime = 2147483647ULL;

} // namespace sgc
