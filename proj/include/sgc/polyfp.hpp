#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sgc/matfp.hpp"

namespace sgc {

// Dense univariate polynomial over F_p, coefficients low to high, normalized
// so the leading coefficient is nonzero (the zero polynomial is empty).
struct PolyFp {
    PrimeField field;
    std::vector<std::uint64_t> coeffs;

    explicit PolyFp(PrimeField f) : field(f) {}
    PolyFp(PrimeField f, std::vector<std::uint64_t> c);

    bool is_zero() const { return coeffs.empty(); }
    // Degree of the zero polynomial is reported as -1.
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    std::uint64_t eval(std::uint64_t x) const;
};

PolyFp poly_add(const PolyFp& a, const PolyFp& b);
PolyFp poly_sub(const PolyFp& a, const PolyFp& b);
PolyFp poly_mul(const PolyFp& a, const PolyFp& b);
// Remainder of a modulo b (b nonzero).
PolyFp poly_mod(const PolyFp& a, const PolyFp& b);
// Exact quotient a / b; throws Singular if the division leaves a remainder.
PolyFp poly_div_exact(const PolyFp& a, const PolyFp& b);
PolyFp poly_monic(const PolyFp& a);
PolyFp poly_gcd(const PolyFp& a, const PolyFp& b);
// base^e mod m via repeated squaring; scales to exponents near 2^63.
PolyFp poly_powmod(const PolyFp& base, std::uint64_t e, const PolyFp& m);

// Characteristic polynomial det(xI - A) by the Berkowitz method: exact,
// division free, valid for every p and dimension.
PolyFp characteristic_polynomial(const MatrixFp& a);

// One root in F_p if any exists. Splits gcd(x^p - x, f) with seeded
// Cantor-Zassenhaus for large p; brute force below 4096.
std::optional<std::uint64_t> find_root(const PolyFp& f, Rng& rng);

// Evaluates the polynomial at a square matrix.
MatrixFp poly_at_matrix(const PolyFp& f, const MatrixFp& a);

} // namespace sgc
