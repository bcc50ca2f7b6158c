#include "sgc/polyfp.hpp"

#include <algorithm>

namespace sgc {

namespace {

void normalize(std::vector<std::uint64_t>& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

} // namespace

PolyFp::PolyFp(PrimeField f, std::vector<std::uint64_t> c) : field(f), coeffs(std::move(c)) {
    for (std::uint64_t& v : coeffs) v %= field.p();
    normalize(coeffs);
}

std::uint64_t PolyFp::eval(std::uint64_t x) const {
    std::uint64_t acc = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = field.add(field.mul(acc, x), coeffs[i]);
    return acc;
}

PolyFp poly_add(const PolyFp& a, const PolyFp& b) {
    const PrimeField& f = a.field;
    std::vector<std::uint64_t> c(std::max(a.coeffs.size(), b.coeffs.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        std::uint64_t av = i < a.coeffs.size() ? a.coeffs[i] : 0;
        std::uint64_t bv = i < b.coeffs.size() ? b.coeffs[i] : 0;
        c[i] = f.add(av, bv);
    }
    normalize(c);
    PolyFp out(f);
    out.coeffs = std::move(c);
    return out;
}

PolyFp poly_sub(const PolyFp& a, const PolyFp& b) {
    const PrimeField& f = a.field;
    std::vector<std::uint64_t> c(std::max(a.coeffs.size(), b.coeffs.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        std::uint64_t av = i < a.coeffs.size() ? a.coeffs[i] : 0;
        std::uint64_t bv = i < b.coeffs.size() ? b.coeffs[i] : 0;
        c[i] = f.sub(av, bv);
    }
    normalize(c);
    PolyFp out(f);
    out.coeffs = std::move(c);
    return out;
}

PolyFp poly_mul(const PolyFp& a, const PolyFp& b) {
    const PrimeField& f = a.field;
    PolyFp out(f);
    if (a.is_zero() || b.is_zero()) return out;
    std::vector<std::uint64_t> c(a.coeffs.size() + b.coeffs.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        if (a.coeffs[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs.size(); ++j)
            c[i + j] = f.add(c[i + j], f.mul(a.coeffs[i], b.coeffs[j]));
    }
    normalize(c);
    out.coeffs = std::move(c);
    return out;
}

namespace {

// Long division; returns {quotient, remainder}.
std::pair<PolyFp, PolyFp> poly_divmod(const PolyFp& a, const PolyFp& b) {
    const PrimeField& f = a.field;
    if (b.is_zero()) throw Error(Errc::Singular, "polynomial division by zero");
    PolyFp q(f), r(f);
    r.coeffs = a.coeffs;
    std::uint64_t lead_inv = f.inv(b.coeffs.back());
    if (r.coeffs.size() >= b.coeffs.size()) q.coeffs.assign(r.coeffs.size() - b.coeffs.size() + 1, 0);
    while (r.coeffs.size() >= b.coeffs.size() && !r.coeffs.empty()) {
        std::size_t shift = r.coeffs.size() - b.coeffs.size();
        std::uint64_t factor = f.mul(r.coeffs.back(), lead_inv);
        q.coeffs[shift] = factor;
        for (std::size_t i = 0; i < b.coeffs.size(); ++i)
            r.coeffs[shift + i] = f.sub(r.coeffs[shift + i], f.mul(factor, b.coeffs[i]));
        normalize(r.coeffs);
    }
    normalize(q.coeffs);
    return {std::move(q), std::move(r)};
}

} // namespace

PolyFp poly_mod(const PolyFp& a, const PolyFp& b) { return poly_divmod(a, b).second; }

PolyFp poly_div_exact(const PolyFp& a, const PolyFp& b) {
    auto [q, r] = poly_divmod(a, b);
    if (!r.is_zero()) throw Error(Errc::Singular, "polynomial division is not exact");
    return q;
}

PolyFp poly_monic(const PolyFp& a) {
    if (a.is_zero()) return a;
    const PrimeField& f = a.field;
    std::uint64_t inv = f.inv(a.coeffs.back());
    PolyFp out(f);
    out.coeffs = a.coeffs;
    for (std::uint64_t& c : out.coeffs) c = f.mul(c, inv);
    return out;
}

PolyFp poly_gcd(const PolyFp& a, const PolyFp& b) {
    PolyFp x = a, y = b;
    while (!y.is_zero()) {
        PolyFp r = poly_mod(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return poly_monic(x);
}

PolyFp poly_powmod(const PolyFp& base, std::uint64_t e, const PolyFp& m) {
    const PrimeField& f = base.field;
    PolyFp result(f, {1});
    PolyFp acc = poly_mod(base, m);
    while (e > 0) {
        if (e & 1) result = poly_mod(poly_mul(result, acc), m);
        acc = poly_mod(poly_mul(acc, acc), m);
        e >>= 1;
    }
    return result;
}

PolyFp characteristic_polynomial(const MatrixFp& a) {
    if (a.rows() != a.cols()) throw Error(Errc::DimensionMismatch, "characteristic polynomial of a non-square matrix");
    const PrimeField& f = a.field();
    std::size_t n = a.rows();
    if (n == 0) return PolyFp(f, {1});
    // Berkowitz iteration: grow the leading principal submatrix one row and
    // column at a time, multiplying by a lower-triangular Toeplitz matrix.
    // Coefficient vectors run from the leading term down.
    std::vector<std::uint64_t> poly = {1, f.neg(a.at(0, 0))};
    for (std::size_t r = 1; r < n; ++r) {
        std::vector<std::uint64_t> t(r + 2);
        t[0] = 1;
        t[1] = f.neg(a.at(r, r));
        std::vector<std::uint64_t> w(r);
        for (std::size_t i = 0; i < r; ++i) w[i] = a.at(i, r);
        for (std::size_t k = 2; k <= r + 1; ++k) {
            std::uint64_t dot = 0;
            for (std::size_t i = 0; i < r; ++i) dot = f.add(dot, f.mul(a.at(r, i), w[i]));
            t[k] = f.neg(dot);
            if (k == r + 1) break;
            std::vector<std::uint64_t> next(r, 0);
            for (std::size_t i = 0; i < r; ++i) {
                if (w[i] == 0) continue;
                for (std::size_t j = 0; j < r; ++j) next[j] = f.add(next[j], f.mul(a.at(j, i), w[i]));
            }
            w = std::move(next);
        }
        std::vector<std::uint64_t> out(r + 2, 0);
        for (std::size_t i = 0; i < r + 2; ++i)
            for (std::size_t j = 0; j < poly.size() && j <= i; ++j)
                out[i] = f.add(out[i], f.mul(t[i - j], poly[j]));
        poly = std::move(out);
    }
    std::reverse(poly.begin(), poly.end());
    return PolyFp(f, std::move(poly));
}

namespace {

// Equal-degree splitting of a squarefree product of linear factors.
std::uint64_t root_of_linear_product(const PolyFp& g, Rng& rng) {
    const PrimeField& f = g.field;
    if (g.degree() == 1) return f.mul(f.neg(g.coeffs[0]), f.inv(g.coeffs[1]));
    if (f.p() < 4096) {
        for (std::uint64_t x = 0; x < f.p(); ++x)
            if (g.eval(x) == 0) return x;
        throw Error(Errc::Singular, "claimed linear product has no root");
    }
    for (;;) {
        std::uint64_t shift = f.sample(rng);
        PolyFp base(f, {shift, 1});
        PolyFp probe = poly_powmod(base, (f.p() - 1) / 2, g);
        probe = poly_sub(probe, PolyFp(f, {1}));
        PolyFp h = poly_gcd(probe, g);
        if (h.degree() > 0 && h.degree() < g.degree())
            return root_of_linear_product(h.degree() <= g.degree() - h.degree() ? h : poly_div_exact(g, h), rng);
    }
}

} // namespace

std::optional<std::uint64_t> find_root(const PolyFp& poly, Rng& rng) {
    const PrimeField& f = poly.field;
    if (poly.is_zero()) return 0;
    PolyFp fm = poly_monic(poly);
    if (fm.degree() == 0) return std::nullopt;
    if (f.p() < 4096) {
        for (std::uint64_t x = 0; x < f.p(); ++x)
            if (fm.eval(x) == 0) return x;
        return std::nullopt;
    }
    PolyFp x(f, {0, 1});
    PolyFp xp = poly_powmod(x, f.p(), fm);
    PolyFp g = poly_gcd(poly_sub(xp, x), fm);
    if (g.degree() <= 0) return std::nullopt;
    return root_of_linear_product(g, rng);
}

MatrixFp poly_at_matrix(const PolyFp& f, const MatrixFp& a) {
    if (a.rows() != a.cols()) throw Error(Errc::DimensionMismatch, "polynomial of a non-square matrix");
    const PrimeField& fld = a.field();
    MatrixFp acc(fld, a.rows(), a.cols());
    for (std::size_t i = f.coeffs.size(); i-- > 0;) {
        acc = acc * a;
        for (std::size_t j = 0; j < a.rows(); ++j) acc.at(j, j) = fld.add(acc.at(j, j), f.coeffs[i]);
    }
    return acc;
}

} // namespace sgc
