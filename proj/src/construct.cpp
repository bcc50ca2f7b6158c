#include "sgc/construct.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <utility>

#include "sgc/polyfp.hpp"

namespace sgc {

namespace {

MatrixFp first_cols(const MatrixFp& a, std::size_t n) {
    MatrixFp out(a.field(), a.rows(), n);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < n; ++j) out.at(i, j) = a.at(i, j);
    return out;
}

// Canonical basis rows of the row space.
MatrixFp row_space_basis(const MatrixFp& a) {
    RrefResult r = rref(a);
    return slice_rows(r.rref, 1, r.rank);
}

// Canonical basis of the common row-space overlap of the selected keys.
MatrixFp common_overlap(const Instance& inst, std::size_t first, std::size_t count) {
    MatrixFp acc = row_space_basis(inst.keys[first]);
    for (std::size_t k = first + 1; k < first + count; ++k)
        acc = row_space_intersection(acc, inst.keys[k]);
    return acc;
}

GenericShape shape_of(const Instance& inst) {
    GenericShape s;
    s.p = inst.field.p();
    s.d = inst.key_dim();
    s.m = inst.basis_dim;
    s.N = inst.num_qualified;
    s.E = inst.num_eavesdroppers();
    return s;
}

// Runs `attempt` on the given instance, resampling a fresh generic instance
// with the same shape after each failed almost-surely rank condition.
ConstructorOutcome retry_generic(const Instance& start, Rng& rng, int max_retries, const char* what,
                                 const std::function<std::optional<LinearScheme>(const Instance&, Rng&, nlohmann::json&)>& attempt) {
    GenericShape shape = shape_of(start);
    Instance inst = start;
    for (int tries = 0; tries <= max_retries; ++tries) {
        nlohmann::json notes;
        if (auto scheme = attempt(inst, rng, notes))
            return ConstructorOutcome{std::move(*scheme), tries, std::move(notes)};
        if (tries < max_retries) inst = sample_generic_instance(shape, rng);
    }
    throw Error(Errc::RetriesExhausted,
                std::string(what) + " rank conditions failed " + std::to_string(max_retries + 1) +
                    " times at p=" + std::to_string(start.field.p()));
}

nlohmann::json base_provenance(const char* constructor, const Instance& inst) {
    return nlohmann::json{{"constructor", constructor},
                          {"p", inst.field.p()},
                          {"d", inst.key_dim()},
                          {"m", inst.basis_dim},
                          {"N", inst.num_qualified},
                          {"E", inst.num_eavesdroppers()}};
}

} // namespace

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

ConstructorOutcome construct_extra_entropic(NamedInstance which, std::uint64_t p) {
    Instance inst = named_instance(which, p);
    const PrimeField& f = inst.field;
    nlohmann::json prov{{"constructor", "extra_entropic"},
                        {"name", named_instance_label(which)},
                        {"p", p}};
    MatrixFp msg(f, 0, 0), key(f, 0, 0);
    switch (which) {
        case NamedInstance::SG1:
            // X = W + s1
            msg = MatrixFp::from_rows(f, {{1}});
            key = MatrixFp::from_rows(f, {{1, 0, 0}});
            break;
        case NamedInstance::SG2:
            // X = (W + s2; -W + s3)
            msg = MatrixFp::from_rows(f, {{1}, {-1}});
            key = MatrixFp::from_rows(f, {{0, 1, 0}, {0, 0, 1}});
            break;
        case NamedInstance::SG3: {
            // X = (W123 + s123; W456 + s456 + s789; -W123 - W456 + s_(10:12) + s_(13:15))
            std::vector<std::vector<std::int64_t>> vw, v;
            for (std::size_t i = 0; i < 3; ++i) {
                std::vector<std::int64_t> mrow(6, 0), krow(15, 0);
                mrow[i] = 1;
                krow[i] = 1;
                vw.push_back(mrow);
                v.push_back(krow);
            }
            for (std::size_t i = 0; i < 3; ++i) {
                std::vector<std::int64_t> mrow(6, 0), krow(15, 0);
                mrow[3 + i] = 1;
                krow[3 + i] = 1;
                krow[6 + i] = 1;
                vw.push_back(mrow);
                v.push_back(krow);
            }
            for (std::size_t i = 0; i < 3; ++i) {
                std::vector<std::int64_t> mrow(6, 0), krow(15, 0);
                mrow[i] = -1;
                mrow[3 + i] = -1;
                krow[9 + i] = 1;
                krow[12 + i] = 1;
                vw.push_back(mrow);
                v.push_back(krow);
            }
            msg = MatrixFp::from_rows(f, vw);
            key = MatrixFp::from_rows(f, v);
            break;
        }
        case NamedInstance::SG4: {
            // Two independent 4-row halves; each sends two message symbols
            // one-time padded so the eavesdropper overlaps project W to zero.
            std::vector<std::vector<std::int64_t>> vw, v;
            auto half = [&](std::size_t w0, std::size_t s0) {
                // rows: (W_a + s_{s0}; W_b + s_{s0+1}+s_{s0+2};
                //        -2W_a - 3W_b + s_{s0+4}; W_a + 2W_b + s_{s0+3}+s_{s0+5})
                std::vector<std::int64_t> m1(4, 0), m2(4, 0), m3(4, 0), m4(4, 0);
                m1[w0] = 1;
                m2[w0 + 1] = 1;
                m3[w0] = -2;
                m3[w0 + 1] = -3;
                m4[w0] = 1;
                m4[w0 + 1] = 2;
                std::vector<std::int64_t> k1(15, 0), k2(15, 0), k3(15, 0), k4(15, 0);
                k1[s0] = 1;
                k2[s0 + 1] = 1;
                k2[s0 + 2] = 1;
                k3[s0 + 4] = 1;
                k4[s0 + 3] = 1;
                k4[s0 + 5] = 1;
                for (auto* r : {&m1, &m2, &m3, &m4}) vw.push_back(*r);
                for (auto* r : {&k1, &k2, &k3, &k4}) v.push_back(*r);
            };
            half(0, 3);   // message symbols 1,2 over s4..s9
            half(2, 9);   // message symbols 3,4 over s10..s15
            msg = MatrixFp::from_rows(f, vw);
            key = MatrixFp::from_rows(f, v);
            break;
        }
    }
    LinearScheme sch = make_scheme(std::move(inst), std::move(msg), std::move(key), prov);
    return ConstructorOutcome{std::move(sch), 0, nlohmann::json{{"name", named_instance_label(which)}}};
}

ConstructorOutcome construct_large_gamma(const Instance& start, Rng& rng, int max_retries) {
    const std::size_t d = start.key_dim();
    const std::size_t m = start.basis_dim;
    const std::size_t N = start.num_qualified;
    const std::size_t E = start.num_eavesdroppers();

    if (m >= (N + 1) * d) {
        // X = (W + z_1; ...; W + z_N)
        auto attempt = [&](const Instance& inst, Rng&, nlohmann::json& notes) -> std::optional<LinearScheme> {
            std::vector<MatrixFp> qual(inst.keys.begin(), inst.keys.begin() + N);
            MatrixFp key = stack_v(qual);
            for (std::size_t e = N; e < inst.num_receivers(); ++e)
                if (rank(stack_v(key, inst.keys[e])) != (N + 1) * d) return std::nullopt;
            std::vector<MatrixFp> ids(N, MatrixFp::identity(inst.field, d));
            MatrixFp msg = stack_v(ids);
            auto prov = base_provenance("large_gamma", inst);
            prov["variant"] = "qualified_otp";
            LinearScheme sch = make_scheme(inst, std::move(msg), std::move(key), prov);
            if (!verify_feasibility(sch).pass) return std::nullopt;
            notes["variant"] = "qualified_otp";
            return sch;
        };
        return retry_generic(start, rng, max_retries, "large_gamma(qualified_otp)", attempt);
    }
    if (m >= (E + 1) * d) {
        // X = V_W W + s with the message inside the eavesdropper null space.
        auto attempt = [&](const Instance& inst, Rng&, nlohmann::json& notes) -> std::optional<LinearScheme> {
            std::vector<MatrixFp> eav(inst.keys.begin() + N, inst.keys.end());
            MatrixFp null_basis = right_null_space(stack_v(eav));
            if (null_basis.cols() < d) return std::nullopt;
            MatrixFp msg = first_cols(null_basis, d);
            for (std::size_t q = 0; q < N; ++q)
                if (rank(inst.keys[q] * msg) != d) return std::nullopt;
            auto prov = base_provenance("large_gamma", inst);
            prov["variant"] = "eavesdropper_nullspace";
            LinearScheme sch = make_scheme(inst, std::move(msg), MatrixFp::identity(inst.field, m), prov);
            if (!verify_feasibility(sch).pass) return std::nullopt;
            notes["variant"] = "eavesdropper_nullspace";
            return sch;
        };
        return retry_generic(start, rng, max_retries, "large_gamma(eavesdropper_nullspace)", attempt);
    }
    throw Error(Errc::RegimeMismatch, "need gamma >= min(N+1, E+1)");
}

ConstructorOutcome construct_small_gamma(const Instance& start, Rng& rng, int max_retries) {
    const std::size_t d = start.key_dim();
    const std::size_t m = start.basis_dim;
    const std::size_t N = start.num_qualified;
    const std::size_t E = start.num_eavesdroppers();
    const std::size_t r = m - d;  // achievable message length

    if (m == d) {
        // gamma = 1: every receiver sees the whole key space; rate 0.
        auto prov = base_provenance("small_gamma", start);
        prov["variant"] = "empty_message";
        LinearScheme sch = make_scheme(start, MatrixFp(start.field, 0, 0), MatrixFp(start.field, 0, m), prov);
        return ConstructorOutcome{std::move(sch), 0, nlohmann::json{{"variant", "empty_message"}}};
    }

    if (N * r <= d) {
        // X = W + H_Q s with H_Q spanning part of the common qualified overlap.
        auto attempt = [&](const Instance& inst, Rng&, nlohmann::json& notes) -> std::optional<LinearScheme> {
            MatrixFp overlap = common_overlap(inst, 0, N);
            if (overlap.rows() < r) return std::nullopt;
            MatrixFp pad = slice_rows(overlap, 1, r);
            for (std::size_t e = N; e < inst.num_receivers(); ++e)
                if (rank(stack_v(pad, inst.keys[e])) != m) return std::nullopt;
            auto prov = base_provenance("small_gamma", inst);
            prov["variant"] = "qualified_overlap_pad";
            LinearScheme sch = make_scheme(inst, MatrixFp::identity(inst.field, r), std::move(pad), prov);
            if (!verify_feasibility(sch).pass) return std::nullopt;
            notes["variant"] = "qualified_overlap_pad";
            return sch;
        };
        return retry_generic(start, rng, max_retries, "small_gamma(qualified_overlap_pad)", attempt);
    }
    if (E * r <= d) {
        // X = (H_E s; W + H_rand s): broadcast the common eavesdropper
        // overlap, send the message along fresh random rows.
        auto attempt = [&](const Instance& inst, Rng& inner_rng, nlohmann::json& notes) -> std::optional<LinearScheme> {
            MatrixFp overlap = common_overlap(inst, N, E);
            if (overlap.rows() < r) return std::nullopt;
            MatrixFp shared = slice_rows(overlap, 1, r);
            MatrixFp padding = MatrixFp::random(inst.field, r, m, inner_rng);
            for (std::size_t q = 0; q < N; ++q)
                if (rank(stack_v(shared, inst.keys[q])) != m) return std::nullopt;
            for (std::size_t e = N; e < inst.num_receivers(); ++e)
                if (rank(stack_v(padding, inst.keys[e])) != m) return std::nullopt;
            MatrixFp msg = stack_v(MatrixFp(inst.field, r, r), MatrixFp::identity(inst.field, r));
            auto prov = base_provenance("small_gamma", inst);
            prov["variant"] = "eavesdropper_overlap_broadcast";
            LinearScheme sch = make_scheme(inst, std::move(msg), stack_v(shared, padding), prov);
            if (!verify_feasibility(sch).pass) return std::nullopt;
            notes["variant"] = "eavesdropper_overlap_broadcast";
            return sch;
        };
        return retry_generic(start, rng, max_retries, "small_gamma(eavesdropper_overlap_broadcast)", attempt);
    }
    throw Error(Errc::RegimeMismatch, "need gamma <= max(1+1/N, 1+1/E)");
}

Instance n2e2_spatial_triple(std::uint64_t p, std::size_t d, std::size_t m, Rng& rng) {
    GenericShape shape;
    shape.p = p;
    shape.d = 3 * d;
    shape.m = 3 * m;
    shape.N = 2;
    shape.E = 2;
    return sample_generic_instance(shape, rng);
}

namespace {

// gamma in [5/2, 3): key precoder stacks both qualified keys; the message
// hides in the null space of the two eavesdropper overlaps.
ConstructorOutcome n2e2_paired_stack(const Instance& start, Rng& rng, int max_retries) {
    const std::size_t d = start.key_dim();
    const std::size_t m = start.basis_dim;
    auto attempt = [&](const Instance& inst, Rng&, nlohmann::json& notes) -> std::optional<LinearScheme> {
        MatrixFp key = stack_v(inst.keys[0], inst.keys[1]);
        if (rank(key) != 2 * d) return std::nullopt;
        std::vector<MatrixFp> extracts;
        for (std::size_t e = 2; e < 4; ++e) {
            OverlapPair ov = overlap_of(key, inst.keys[e]);
            if (ov.signal_side.rows() != 3 * d - m) return std::nullopt;
            extracts.push_back(std::move(ov.signal_side));
        }
        MatrixFp null_basis = right_null_space(stack_v(extracts));
        if (null_basis.cols() < d) return std::nullopt;
        MatrixFp msg = first_cols(null_basis, d);
        if (rank(slice_rows(msg, 1, d)) != d) return std::nullopt;
        if (rank(slice_rows(msg, d + 1, 2 * d)) != d) return std::nullopt;
        auto prov = base_provenance("n2e2", inst);
        prov["variant"] = "paired_key_stack";
        LinearScheme sch = make_scheme(inst, std::move(msg), std::move(key), prov);
        if (!verify_feasibility(sch).pass) return std::nullopt;
        notes["variant"] = "paired_key_stack";
        return sch;
    };
    return retry_generic(start, rng, max_retries, "n2e2(paired_key_stack)", attempt);
}

// gamma in [2, 5/2]: instance must already carry the x3 spatial extension
// (3 | m - d). Key precoder takes the first 2(m-d)/3 rows of each qualified
// key; message length 2(m-d)/3.
ConstructorOutcome n2e2_triple_slice(const Instance& start, Rng& rng, int max_retries) {
    const std::size_t d = start.key_dim();
    const std::size_t m = start.basis_dim;
    if ((m - d) % 3 != 0)
        throw Error(Errc::RegimeMismatch,
                    "gamma in [2, 5/2] needs the x3 spatial extension (3 | m-d); "
                    "resample via n2e2_spatial_triple");
    const std::size_t w = 2 * (m - d) / 3;  // message length
    auto attempt = [&](const Instance& inst, Rng&, nlohmann::json& notes) -> std::optional<LinearScheme> {
        MatrixFp key = stack_v(slice_rows(inst.keys[0], 1, w), slice_rows(inst.keys[1], 1, w));
        if (rank(key) != 2 * w) return std::nullopt;
        std::vector<MatrixFp> extracts;
        for (std::size_t e = 2; e < 4; ++e) {
            OverlapPair ov = overlap_of(key, inst.keys[e]);
            if (ov.signal_side.rows() != (m - d) / 3) return std::nullopt;
            extracts.push_back(std::move(ov.signal_side));
        }
        MatrixFp null_basis = right_null_space(stack_v(extracts));
        if (null_basis.cols() < w) return std::nullopt;
        MatrixFp msg = first_cols(null_basis, w);
        if (rank(slice_rows(msg, 1, w)) != w) return std::nullopt;
        if (rank(slice_rows(msg, w + 1, 2 * w)) != w) return std::nullopt;
        auto prov = base_provenance("n2e2", inst);
        prov["variant"] = "triple_slice";
        LinearScheme sch = make_scheme(inst, std::move(msg), std::move(key), prov);
        if (!verify_feasibility(sch).pass) return std::nullopt;
        notes["variant"] = "triple_slice";
        return sch;
    };
    return retry_generic(start, rng, max_retries, "n2e2(triple_slice)", attempt);
}

// gamma in [3/2, 5/3]: both eavesdropper overlaps with the transmit key
// space collapse onto one shared subspace of the eavesdropper overlap, along
// which the message projects to zero.
ConstructorOutcome n2e2_shared_overlap(const Instance& start, Rng& rng, int max_retries) {
    const std::size_t d = start.key_dim();
    const std::size_t m = start.basis_dim;
    const std::size_t w1 = 2 * d - m;       // pad-only message part
    const std::size_t w2 = 2 * m - 3 * d;   // aligned message part
    const std::size_t lw = m - d;           // w1 + w2
    auto attempt = [&](const Instance& inst, Rng& inner_rng, nlohmann::json& notes) -> std::optional<LinearScheme> {
        const PrimeField& f = inst.field;
        MatrixFp qual_overlap = row_space_intersection(inst.keys[0], inst.keys[1]);
        if (qual_overlap.rows() != w1) return std::nullopt;
        MatrixFp eave_overlap = row_space_intersection(inst.keys[2], inst.keys[3]);
        if (eave_overlap.rows() != w1) return std::nullopt;
        // w2 generic dimensions of the eavesdropper overlap.
        MatrixFp mix = MatrixFp::random(f, w2, w1, inner_rng);
        MatrixFp shared = mix * eave_overlap;
        if (rank(shared) != w2) return std::nullopt;

        MatrixFp top1 = slice_rows(inst.keys[0], 1, lw);
        MatrixFp top2 = slice_rows(inst.keys[1], 1, lw);
        MatrixFp basis = stack_v(std::vector<MatrixFp>{top1, top2, qual_overlap});
        if (rank(basis) != m) return std::nullopt;
        // shared = C1 top1 + C2 top2 + C12 qual_overlap
        MatrixFp coeff = shared * invert(basis);
        MatrixFp c1(f, w2, lw), c2(f, w2, lw), c12(f, w2, w1);
        for (std::size_t i = 0; i < w2; ++i) {
            for (std::size_t j = 0; j < lw; ++j) {
                c1.at(i, j) = coeff.at(i, j);
                c2.at(i, j) = coeff.at(i, lw + j);
            }
            for (std::size_t j = 0; j < w1; ++j) c12.at(i, j) = coeff.at(i, 2 * lw + j);
        }

        MatrixFp key = stack_v(std::vector<MatrixFp>{qual_overlap, c1 * top1, c2 * top2});
        // Message blocks: (W1 + pad; W2 + ...; -C12 W1 - W2 + ...).
        MatrixFp msg = stack_v(std::vector<MatrixFp>{
            stack_h(MatrixFp::identity(f, w1), MatrixFp(f, w1, w2)),
            stack_h(MatrixFp(f, w2, w1), MatrixFp::identity(f, w2)),
            stack_h(c12.negated(), MatrixFp::identity(f, w2).negated())});
        auto prov = base_provenance("n2e2", inst);
        prov["variant"] = "shared_overlap";
        LinearScheme sch = make_scheme(inst, std::move(msg), std::move(key), prov);
        // Both eavesdropper overlaps must be exactly the shared subspace.
        for (std::size_t e = 2; e < 4; ++e) {
            OverlapPair ov = overlap_of(sch.key_precoder, inst.keys[e]);
            MatrixFp overlap_rows = ov.signal_side * sch.key_precoder;
            if (rank(overlap_rows) != w2) return std::nullopt;
            if (rank(stack_v(shared, overlap_rows)) != w2) return std::nullopt;
        }
        if (!verify_feasibility(sch).pass) return std::nullopt;
        notes["variant"] = "shared_overlap";
        return sch;
    };
    return retry_generic(start, rng, max_retries, "n2e2(shared_overlap)", attempt);
}

} // namespace

ConstructorOutcome construct_n2e2(const Instance& inst, Rng& rng, int max_retries) {
    if (inst.num_qualified != 2 || inst.num_eavesdroppers() != 2)
        throw Error(Errc::RegimeMismatch, "constructor handles N = 2, E = 2 only");
    Rat gamma = inst.gamma();
    if (gamma >= Rat(3)) return construct_large_gamma(inst, rng, max_retries);
    if (gamma < Rat(3, 2)) return construct_small_gamma(inst, rng, max_retries);
    if (gamma >= Rat(5, 2)) return n2e2_paired_stack(inst, rng, max_retries);
    if (gamma >= Rat(2)) return n2e2_triple_slice(inst, rng, max_retries);
    if (gamma <= Rat(5, 3)) return n2e2_shared_overlap(inst, rng, max_retries);
    throw Error(Errc::Unsolved, "gamma in (5/3, 2) is an open regime; no scheme is claimed");
}

BasisChange change_of_basis(const Instance& inst) {
    if (inst.num_qualified < 2) throw Error(Errc::RegimeMismatch, "basis change needs N >= 2");
    if (inst.keys[0].rows() + inst.keys[1].rows() != inst.basis_dim)
        throw Error(Errc::RegimeMismatch, "basis change needs [H_1; H_2] square");
    MatrixFp basis_map = stack_v(inst.keys[0], inst.keys[1]);
    MatrixFp inv = invert(basis_map);  // throws Singular when rank deficient
    std::vector<MatrixFp> keys;
    keys.reserve(inst.num_receivers());
    for (const MatrixFp& k : inst.keys) keys.push_back(k * inv);
    Instance transformed = make_instance(inst.field.p(), inst.basis_dim, inst.num_qualified, std::move(keys));
    return BasisChange{std::move(transformed), std::move(basis_map)};
}

ConstructorOutcome construct_alignment_smallN(const Instance& start, Rng& rng, int max_retries) {
    const std::size_t N = start.num_qualified;
    if ((N != 3 && N != 4) || start.num_eavesdroppers() != 2)
        throw Error(Errc::RegimeMismatch, "alignment constructor handles N in {3, 4}, E = 2");
    if (start.key_dim() != 3 || start.basis_dim != 6)
        throw Error(Errc::RegimeMismatch, "alignment constructor is built for d = 3, m = 6");

    auto attempt = [&](const Instance& inst, Rng& inner_rng, nlohmann::json& notes) -> std::optional<LinearScheme> {
        const PrimeField& f = inst.field;
        const std::size_t d = 3;
        std::optional<BasisChange> maybe_bc;
        try {
            maybe_bc = change_of_basis(inst);
        } catch (const Error& err) {
            if (err.code() == Errc::Singular) return std::nullopt;
            throw;
        }
        BasisChange& bc = *maybe_bc;
        auto halves = [&](std::size_t k) {
            MatrixFp lo(f, d, d), hi(f, d, d);
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) {
                    lo.at(i, j) = bc.transformed.keys[k].at(i, j);
                    hi.at(i, j) = bc.transformed.keys[k].at(i, d + j);
                }
            return std::make_pair(lo, hi);
        };

        MatrixFp slice(f, 2, d);  // rows to align from the third qualified key
        if (N == 3) {
            slice = MatrixFp::random(f, 2, d, inner_rng);
            if (rank(slice) != 2) return std::nullopt;
        } else {
            auto [a3, b3] = halves(2);
            auto [a4, b4] = halves(3);
            MatrixFp cycle(f, d, d);
            try {
                cycle = b3 * invert(b4) * a4 * invert(a3);
            } catch (const Error& err) {
                if (err.code() == Errc::Singular) return std::nullopt;
                throw;
            }
            // Two-dimensional invariant subspace of cycle^T: peel one rational
            // eigenvalue off the characteristic cubic, keep the kernel of the
            // residual quadratic factor. Irreducible cubic -> resample.
            MatrixFp ct = cycle.transposed();
            PolyFp charpoly = characteristic_polynomial(ct);
            std::optional<std::uint64_t> root = find_root(charpoly, inner_rng);
            if (!root) return std::nullopt;
            PolyFp linear(f, {f.neg(*root), 1});
            PolyFp residual = poly_div_exact(charpoly, linear);
            MatrixFp kernel = right_null_space(poly_at_matrix(residual, ct));
            if (kernel.cols() != 2) return std::nullopt;
            slice = kernel.transposed();
            if (rank(slice) != 2) return std::nullopt;
            if (rank(stack_v(slice, slice * cycle)) != 2) return std::nullopt;
            notes["eigenvalue"] = *root;
        }

        auto [a2, b2] = halves(2);
        MatrixFp left = slice * a2;
        MatrixFp right = slice * b2;
        if (rank(left) != 2 || rank(right) != 2) return std::nullopt;
        // Back to the original coordinates.
        MatrixFp key = block_diag(left, right) * bc.basis_map;
        if (rank(key) != 4) return std::nullopt;

        std::vector<MatrixFp> extracts;
        for (std::size_t e = N; e < N + 2; ++e) {
            OverlapPair ov = overlap_of(key, inst.keys[e]);
            if (ov.signal_side.rows() != 1) return std::nullopt;
            extracts.push_back(std::move(ov.signal_side));
        }
        MatrixFp null_basis = right_null_space(stack_v(extracts));
        if (null_basis.cols() < 2) return std::nullopt;
        MatrixFp msg = first_cols(null_basis, 2);
        auto prov = base_provenance("alignment_smallN", inst);
        prov["variant"] = N == 3 ? "generic_slice" : "invariant_subspace";
        LinearScheme sch = make_scheme(inst, std::move(msg), std::move(key), prov);
        if (!verify_feasibility(sch).pass) return std::nullopt;
        notes["variant"] = prov["variant"];
        return sch;
    };
    return retry_generic(start, rng, max_retries, "alignment_smallN", attempt);
}

namespace {

// All tuples of `slots` strictly positive exponents with sum <= cap, in
// lexicographic order; there are C(cap, slots) of them.
void enumerate_exponents(std::size_t slots, std::uint64_t cap, std::vector<std::uint64_t>& cur,
                         std::vector<std::vector<std::uint64_t>>& out) {
    if (cur.size() == slots) {
        out.push_back(cur);
        return;
    }
    std::uint64_t used = 0;
    for (std::uint64_t v : cur) used += v;
    std::uint64_t remaining_slots = slots - cur.size() - 1;
    if (cap < used + 1 + remaining_slots) return;
    for (std::uint64_t v = 1; used + v + remaining_slots <= cap; ++v) {
        cur.push_back(v);
        enumerate_exponents(slots, cap, cur, out);
        cur.pop_back();
    }
}

// Product-basis precoder: row per exponent tuple, entry j is the product of
// the selected diagonal entries raised to the tuple exponents.
MatrixFp product_rows(const PrimeField& f, const std::vector<std::vector<std::uint64_t>>& diagonals,
                      std::uint64_t degree_cap) {
    std::vector<std::vector<std::uint64_t>> tuples;
    std::vector<std::uint64_t> cur;
    enumerate_exponents(diagonals.size(), degree_cap, cur, tuples);
    const std::size_t d = diagonals.empty() ? 0 : diagonals[0].size();
    MatrixFp rows(f, tuples.size(), d);
    for (std::size_t t = 0; t < tuples.size(); ++t)
        for (std::size_t j = 0; j < d; ++j) {
            std::uint64_t v = 1;
            for (std::size_t i = 0; i < diagonals.size(); ++i)
                v = f.mul(v, f.pow(diagonals[i][j], tuples[t][i]));
            rows.at(t, j) = v;
        }
    return rows;
}

// Diagonals of the two halves of each selected key, in receiver order.
std::vector<std::vector<std::uint64_t>> half_diagonals(const Instance& inst, std::size_t first,
                                                       std::size_t count) {
    const std::size_t d = inst.key_dim();
    std::vector<std::vector<std::uint64_t>> out;
    for (std::size_t k = first; k < first + count; ++k)
        for (std::size_t half = 0; half < 2; ++half) {
            std::vector<std::uint64_t> diag(d);
            for (std::size_t j = 0; j < d; ++j) diag[j] = inst.keys[k].at(j, half * d + j);
            out.push_back(std::move(diag));
        }
    return out;
}

} // namespace

ConstructorOutcome construct_asymptotic_N(std::uint64_t p, std::size_t N, std::size_t max_degree,
                                          Rng& rng, int max_retries) {
    if (N <= 2) throw Error(Errc::RegimeMismatch, "asymptotic qualified alignment needs N > 2");
    const std::uint64_t hi_rows = binomial(max_degree + 1, 2 * N);
    if (hi_rows == 0 || (3 * hi_rows) % 2 != 0)
        throw Error(Errc::BadDelta, "need C(" + std::to_string(max_degree + 1) + ", " +
                                        std::to_string(2 * N) + ") positive and even; got " +
                                        std::to_string(hi_rows));
    const std::size_t d = static_cast<std::size_t>(3 * hi_rows / 2);
    const std::size_t lw = static_cast<std::size_t>(binomial(max_degree, 2 * N));

    GenericShape shape;
    shape.p = p;
    shape.d = d;
    shape.m = 2 * d;
    shape.N = N;
    shape.E = 2;
    shape.diagonal = true;

    for (int tries = 0; tries <= max_retries; ++tries) {
        Instance inst = sample_generic_instance(shape, rng);
        const PrimeField& f = inst.field;
        MatrixFp carrier = product_rows(f, half_diagonals(inst, 0, N), max_degree + 1);
        if (carrier.rows() != hi_rows || rank(carrier) != hi_rows) continue;
        MatrixFp key = block_diag(carrier, carrier);

        std::vector<MatrixFp> extracts;
        bool ok = true;
        for (std::size_t e = N; e < N + 2; ++e) {
            OverlapPair ov = overlap_of(key, inst.keys[e]);
            if (ov.signal_side.rows() != d / 3) {
                ok = false;
                break;
            }
            extracts.push_back(std::move(ov.signal_side));
        }
        if (!ok) continue;
        MatrixFp null_basis = right_null_space(stack_v(extracts));
        if (null_basis.cols() < lw) continue;
        MatrixFp msg = first_cols(null_basis, lw);
        auto prov = base_provenance("asymptotic_N", inst);
        prov["max_degree"] = max_degree;
        LinearScheme sch = make_scheme(inst, std::move(msg), std::move(key), prov);
        if (!verify_feasibility(sch).pass) continue;
        nlohmann::json notes{{"max_degree", max_degree},
                             {"d", d},
                             {"message_len", lw},
                             {"signal_len", 2 * hi_rows}};
        return ConstructorOutcome{std::move(sch), tries, std::move(notes)};
    }
    throw Error(Errc::RetriesExhausted, "asymptotic_N rank conditions kept failing");
}

ConstructorOutcome construct_asymptotic_E(std::uint64_t p, std::size_t E, std::size_t max_degree,
                                          Rng& rng, int max_retries) {
    if (E <= 2) throw Error(Errc::RegimeMismatch, "asymptotic eavesdropper alignment needs E > 2");
    const std::uint64_t hi_rows = binomial(max_degree + 1, 2 * E);
    if (hi_rows == 0)
        throw Error(Errc::BadDelta, "need C(" + std::to_string(max_degree + 1) + ", " +
                                        std::to_string(2 * E) + ") positive");
    const std::size_t d = static_cast<std::size_t>(3 * hi_rows);
    const std::size_t block = static_cast<std::size_t>(hi_rows);  // d/3 rows per signal block
    const std::int64_t leak_budget =
        static_cast<std::int64_t>(hi_rows - binomial(max_degree, 2 * E));

    GenericShape shape;
    shape.p = p;
    shape.d = d;
    shape.m = 2 * d;
    shape.N = 2;
    shape.E = E;
    shape.diagonal = true;

    for (int tries = 0; tries <= max_retries; ++tries) {
        Instance inst = sample_generic_instance(shape, rng);
        const PrimeField& f = inst.field;
        MatrixFp carrier = product_rows(f, half_diagonals(inst, 2, E), max_degree + 1);
        if (carrier.rows() != hi_rows || rank(carrier) != hi_rows) continue;

        MatrixFp paired = stack_v(inst.keys[0], inst.keys[1]);
        MatrixFp paired_inv(f, 0, 0);
        try {
            paired_inv = invert(paired);
        } catch (const Error& err) {
            if (err.code() == Errc::Singular) continue;
            throw;
        }
        auto quadrant = [&](std::size_t bi, std::size_t bj) {
            MatrixFp q(f, d, d);
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) q.at(i, j) = paired_inv.at(bi * d + i, bj * d + j);
            return q;
        };
        // Signal blocks (carrier * inv-quadrant * z_q); receiver 1 strips the
        // first two, receiver 2 the last two.
        MatrixFp key = stack_v(std::vector<MatrixFp>{
            carrier * quadrant(0, 0) * inst.keys[0], carrier * quadrant(1, 0) * inst.keys[0],
            carrier * quadrant(0, 1) * inst.keys[1], carrier * quadrant(1, 1) * inst.keys[1]});
        if (rank(key) != 4 * block) continue;
        MatrixFp eye = MatrixFp::identity(f, block);
        MatrixFp zero(f, block, block);
        MatrixFp msg = stack_v(std::vector<MatrixFp>{stack_h(eye, zero), stack_h(zero, eye),
                                                     stack_h(eye.negated(), zero),
                                                     stack_h(zero, eye.negated())});
        auto prov = base_provenance("asymptotic_E", inst);
        prov["max_degree"] = max_degree;
        LinearScheme sch = make_scheme(inst, std::move(msg), std::move(key), prov);
        if (exact_decoding_deficit(sch, 0) != 0 || exact_decoding_deficit(sch, 1) != 0) continue;
        std::int64_t worst = 0;
        for (std::size_t e = 2; e < inst.num_receivers(); ++e)
            worst = std::max(worst, exact_leakage(sch, e));
        if (worst > leak_budget) continue;
        nlohmann::json notes{{"max_degree", max_degree},
                             {"d", d},
                             {"message_len", 2 * block},
                             {"signal_len", 4 * block},
                             {"epsilon_leakage", true},
                             {"leakage_bound", leak_budget},
                             {"max_leakage", worst}};
        return ConstructorOutcome{std::move(sch), tries, std::move(notes)};
    }
    throw Error(Errc::RetriesExhausted, "asymptotic_E rank conditions kept failing");
}

} // namespace sgc
