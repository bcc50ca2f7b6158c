#include "sgc/oracle.hpp"

#include <algorithm>
#include <string>

namespace sgc {

namespace {

// p^e, throwing TooLarge when the result would exceed limit.
std::uint64_t checked_pow(std::uint64_t p, std::size_t e, std::uint64_t limit) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < e; ++i) {
        if (r > limit / p) throw Error(Errc::TooLarge, "enumeration space exceeds the oracle cap");
        r *= p;
    }
    return r;
}

void decode_digits(std::uint64_t index, std::uint64_t p, std::vector<std::uint64_t>& out) {
    for (std::size_t i = out.size(); i-- > 0;) {
        out[i] = index % p;
        index /= p;
    }
}

std::uint64_t encode_digits(const std::vector<std::uint64_t>& digits, std::uint64_t p) {
    std::uint64_t v = 0;
    for (std::uint64_t d : digits) v = v * p + d;
    return v;
}

std::int64_t exact_log_p(std::uint64_t value, std::uint64_t p) {
    std::int64_t e = 0;
    while (value > 1) {
        if (value % p != 0)
            throw Error(Errc::TooLarge, "count " + std::to_string(value) + " is not a power of p");
        value /= p;
        ++e;
    }
    return e;
}

} // namespace

JointTable enumerate_joint(const LinearScheme& sch, std::size_t k, std::uint64_t cap) {
    const Instance& inst = sch.inst;
    if (k >= inst.num_receivers()) throw Error(Errc::BadDimensions, "receiver index out of range");
    const PrimeField& f = inst.field;
    const std::uint64_t p = f.p();
    const std::size_t m = inst.basis_dim;
    const std::size_t lw = sch.message_len;
    const std::size_t lx = sch.signal_len;
    const std::size_t dk = inst.keys[k].rows();

    const std::uint64_t msg_states = checked_pow(p, lw, cap);
    const std::uint64_t key_states = checked_pow(p, m, cap);
    if (msg_states > cap / key_states)
        throw Error(Errc::TooLarge, "p^(m+L_W) exceeds the oracle cap");
    // Encoded tuples must fit in 64 bits.
    checked_pow(p, lw + lx + dk, UINT64_MAX / 2);

    std::vector<std::uint64_t> entries;
    entries.reserve(msg_states * key_states);
    std::vector<std::uint64_t> s(m), w(lw), x(lx), z(dk);
    const std::uint64_t x_base = checked_pow(p, lx, UINT64_MAX / 2);
    const std::uint64_t z_base = checked_pow(p, dk, UINT64_MAX / 2);
    for (std::uint64_t si = 0; si < key_states; ++si) {
        decode_digits(si, p, s);
        std::vector<std::uint64_t> key_part(lx, 0);
        for (std::size_t i = 0; i < lx; ++i)
            for (std::size_t j = 0; j < m; ++j)
                key_part[i] = f.add(key_part[i], f.mul(sch.key_precoder.at(i, j), s[j]));
        for (std::size_t i = 0; i < dk; ++i) {
            z[i] = 0;
            for (std::size_t j = 0; j < m; ++j) z[i] = f.add(z[i], f.mul(inst.keys[k].at(i, j), s[j]));
        }
        const std::uint64_t z_enc = encode_digits(z, p);
        for (std::uint64_t wi = 0; wi < msg_states; ++wi) {
            decode_digits(wi, p, w);
            for (std::size_t i = 0; i < lx; ++i) {
                std::uint64_t v = key_part[i];
                for (std::size_t j = 0; j < lw; ++j)
                    v = f.add(v, f.mul(sch.msg_precoder.at(i, j), w[j]));
                x[i] = v;
            }
            entries.push_back((wi * x_base + encode_digits(x, p)) * z_base + z_enc);
        }
    }
    std::sort(entries.begin(), entries.end());

    JointTable table;
    table.p = p;
    table.message_len = lw;
    table.signal_len = lx;
    table.key_len = dk;
    table.total = entries.size();
    for (std::size_t i = 0; i < entries.size();) {
        std::size_t j = i;
        while (j < entries.size() && entries[j] == entries[i]) ++j;
        std::uint64_t code = entries[i];
        std::uint64_t z_enc = code % z_base;
        std::uint64_t wx = code / z_base;
        table.counts.push_back({{wx / x_base, wx % x_base, z_enc}, j - i});
        i = j;
    }
    return table;
}

EntropicReport entropic_check(const LinearScheme& sch, std::uint64_t cap) {
    const Instance& inst = sch.inst;
    const std::uint64_t p = inst.field.p();
    EntropicReport report;
    for (std::size_t k = 0; k < inst.num_receivers(); ++k) {
        JointTable table = enumerate_joint(sch, k, cap);
        // table.counts holds one entry per realized (w, x, z) triple, sorted
        // with w most significant. Every distribution here is uniform on its
        // support, so entropies are exact base-p logs of support sizes.

        // Per-w support sizes of (x, z); translates of one another, so they
        // must agree - verified, not assumed.
        std::uint64_t slice_size = 0;
        {
            std::size_t i = 0;
            while (i < table.counts.size()) {
                std::size_t j = i;
                while (j < table.counts.size() && table.counts[j].first[0] == table.counts[i].first[0]) ++j;
                if (slice_size == 0)
                    slice_size = j - i;
                else if (slice_size != j - i)
                    throw Error(Errc::TooLarge, "per-message support sizes differ; map is not linear");
                i = j;
            }
        }

        // Distinct (x, z) pairs and the number of compatible w per pair.
        std::vector<std::array<std::uint64_t, 3>> triples;
        triples.reserve(table.counts.size());
        for (const auto& entry : table.counts) triples.push_back(entry.first);
        std::sort(triples.begin(), triples.end(), [](const auto& a, const auto& b) {
            if (a[1] != b[1]) return a[1] < b[1];
            if (a[2] != b[2]) return a[2] < b[2];
            return a[0] < b[0];
        });
        std::uint64_t pair_count = 0;
        std::uint64_t w_per_pair = 0;
        for (std::size_t i = 0; i < triples.size();) {
            std::size_t j = i;
            while (j < triples.size() && triples[j][1] == triples[i][1] && triples[j][2] == triples[i][2]) ++j;
            ++pair_count;
            if (w_per_pair == 0)
                w_per_pair = j - i;
            else if (w_per_pair != j - i)
                throw Error(Errc::TooLarge, "message multiplicity differs across pairs; map is not linear");
            i = j;
        }

        if (inst.is_qualified(k)) {
            report.deficits.push_back(exact_log_p(w_per_pair == 0 ? 1 : w_per_pair, p));
        } else {
            report.leakages.push_back(exact_log_p(pair_count, p) - exact_log_p(slice_size, p));
        }
    }
    return report;
}

SzPredicate parse_sz_predicate(const std::string& name) {
    if (name == "qualified-stack") return SzPredicate::QualifiedStackWithEave;
    if (name == "overlap-completion") return SzPredicate::OverlapCompletion;
    if (name == "left-null-dim") return SzPredicate::LeftNullDimOne;
    if (name == "singular-family") return SzPredicate::SingularFamily;
    throw Error(Errc::UsageError, "unknown predicate '" + name + "'");
}

namespace {

MatrixFp row_space_basis(const MatrixFp& a) {
    RrefResult r = rref(a);
    return slice_rows(r.rref, 1, r.rank);
}

bool run_predicate(SzPredicate predicate, const GenericShape& shape, Rng& rng) {
    Instance inst = sample_generic_instance(shape, rng);
    const std::size_t N = shape.N;
    const std::size_t d = shape.d;
    const std::size_t m = shape.m;
    switch (predicate) {
        case SzPredicate::QualifiedStackWithEave: {
            std::vector<MatrixFp> qual(inst.keys.begin(), inst.keys.begin() + N);
            MatrixFp stacked = stack_v(qual);
            for (std::size_t e = N; e < inst.num_receivers(); ++e)
                if (rank(stack_v(stacked, inst.keys[e])) != (N + 1) * d) return false;
            return true;
        }
        case SzPredicate::OverlapCompletion: {
            if (m <= d) return false;
            MatrixFp acc = row_space_basis(inst.keys[0]);
            for (std::size_t q = 1; q < N; ++q) acc = row_space_intersection(acc, inst.keys[q]);
            if (acc.rows() < m - d) return false;
            MatrixFp pad = slice_rows(acc, 1, m - d);
            for (std::size_t e = N; e < inst.num_receivers(); ++e)
                if (rank(stack_v(pad, inst.keys[e])) != m) return false;
            return true;
        }
        case SzPredicate::LeftNullDimOne: {
            if (N != 2 || m <= d || (m - d) % 3 != 0) return false;
            std::size_t w = 2 * (m - d) / 3;
            if (w > d) return false;
            MatrixFp precoder = stack_v(slice_rows(inst.keys[0], 1, w), slice_rows(inst.keys[1], 1, w));
            for (std::size_t e = N; e < inst.num_receivers(); ++e)
                if (left_null_space(stack_v(precoder, inst.keys[e])).rows() != (m - d) / 3) return false;
            return true;
        }
        case SzPredicate::SingularFamily: {
            // Replace each eavesdropper key with a qualified copy; the
            // stacked matrix is rank deficient for every draw.
            std::vector<MatrixFp> qual(inst.keys.begin(), inst.keys.begin() + N);
            MatrixFp stacked = stack_v(qual);
            for (std::size_t e = N; e < inst.num_receivers(); ++e)
                if (rank(stack_v(stacked, inst.keys[0])) != (N + 1) * d) return false;
            return true;
        }
    }
    return false;
}

} // namespace

double schwartz_zippel_trial(SzPredicate predicate, const GenericShape& shape, int trials, Rng& rng) {
    if (trials < 1) throw Error(Errc::UsageError, "need at least one trial");
    int successes = 0;
    for (int t = 0; t < trials; ++t)
        if (run_predicate(predicate, shape, rng)) ++successes;
    return static_cast<double>(successes) / trials;
}

} // namespace sgc
