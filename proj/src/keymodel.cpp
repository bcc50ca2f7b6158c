#include "sgc/keymodel.hpp"

#include <algorithm>

namespace sgc {

bool Instance::uniform_key_dim() const {
    for (const MatrixFp& k : keys)
        if (k.rows() != keys.front().rows()) return false;
    return !keys.empty();
}

std::size_t Instance::key_dim() const {
    if (!uniform_key_dim()) throw Error(Errc::BadDimensions, "receivers have unequal key dimensions");
    return keys.front().rows();
}

Rat Instance::gamma() const {
    return Rat(static_cast<std::int64_t>(basis_dim), static_cast<std::int64_t>(key_dim()));
}

Instance make_instance(std::uint64_t p, std::size_t basis_dim, std::size_t num_qualified,
                       std::vector<MatrixFp> keys) {
    PrimeField field(p);
    if (keys.size() < 2) throw Error(Errc::BadDimensions, "need at least two receivers");
    if (num_qualified < 1 || num_qualified >= keys.size())
        throw Error(Errc::BadDimensions, "need 1 <= N < K");
    for (std::size_t k = 0; k < keys.size(); ++k) {
        if (keys[k].field() != field)
            throw Error(Errc::BadDimensions, "key " + std::to_string(k + 1) + " uses a different field");
        if (keys[k].cols() != basis_dim)
            throw Error(Errc::BadDimensions, "key " + std::to_string(k + 1) + " has " +
                                                 std::to_string(keys[k].cols()) + " columns, expected " +
                                                 std::to_string(basis_dim));
    }
    return Instance{field, basis_dim, num_qualified, std::move(keys)};
}

NamedInstance parse_named_instance(const std::string& name) {
    if (name == "SG1") return NamedInstance::SG1;
    if (name == "SG2") return NamedInstance::SG2;
    if (name == "SG3") return NamedInstance::SG3;
    if (name == "SG4") return NamedInstance::SG4;
    throw Error(Errc::UsageError, "unknown named instance '" + name + "'");
}

std::string named_instance_label(NamedInstance which) {
    switch (which) {
        case NamedInstance::SG1: return "SG1";
        case NamedInstance::SG2: return "SG2";
        case NamedInstance::SG3: return "SG3";
        case NamedInstance::SG4: return "SG4";
    }
    return "?";
}

namespace {

// Rows selecting basis symbols first..last (1-based, inclusive).
std::vector<std::vector<std::int64_t>> unit_rows(std::size_t m, std::size_t first, std::size_t last) {
    std::vector<std::vector<std::int64_t>> rows;
    for (std::size_t i = first; i <= last; ++i) {
        std::vector<std::int64_t> row(m, 0);
        row[i - 1] = 1;
        rows.push_back(std::move(row));
    }
    return rows;
}

void append(std::vector<std::vector<std::int64_t>>& dst, std::vector<std::vector<std::int64_t>> src) {
    for (auto& r : src) dst.push_back(std::move(r));
}

// Rows (s_a + c*s_b), ..., over three consecutive symbols each.
std::vector<std::vector<std::int64_t>> paired_rows(std::size_t m, std::size_t a, std::size_t b,
                                                   std::int64_t coeff) {
    std::vector<std::vector<std::int64_t>> rows;
    for (std::size_t i = 0; i < 3; ++i) {
        std::vector<std::int64_t> row(m, 0);
        row[a - 1 + i] = 1;
        row[b - 1 + i] = coeff;
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

Instance named_instance(NamedInstance which, std::uint64_t p) {
    PrimeField field(p);
    if ((which == NamedInstance::SG3 || which == NamedInstance::SG4) && p < 5)
        throw Error(Errc::FieldTooSmall, named_instance_label(which) + " needs p >= 5");

    if (which == NamedInstance::SG1 || which == NamedInstance::SG2) {
        const std::size_t m = 3;
        auto k1 = MatrixFp::from_rows(field, {{1, 0, 0}, {0, 1, 0}});  // (s1; s2)
        auto k2 = MatrixFp::from_rows(field, {{1, 0, 0}, {0, 0, 1}});  // (s1; s3)
        MatrixFp k3 = which == NamedInstance::SG1
                          ? MatrixFp::from_rows(field, {{0, 1, 0}, {0, 0, 1}})   // (s2; s3)
                          : MatrixFp::from_rows(field, {{1, 0, 0}, {0, 1, 1}});  // (s1; s2+s3)
        return make_instance(p, m, 2, {k1, k2, k3});
    }

    const std::size_t m = 15;
    if (which == NamedInstance::SG3) {
        std::vector<std::vector<std::int64_t>> r1, r2, r3, r4;
        append(r1, unit_rows(m, 1, 3));
        append(r1, unit_rows(m, 4, 6));
        append(r1, unit_rows(m, 7, 9));
        append(r2, unit_rows(m, 1, 3));
        append(r2, unit_rows(m, 10, 12));
        append(r2, unit_rows(m, 13, 15));
        std::vector<std::vector<std::int64_t>> all_sum;
        for (std::size_t i = 0; i < 3; ++i) {
            std::vector<std::int64_t> row(m, 0);
            for (std::size_t block = 0; block < 5; ++block) row[3 * block + i] = 1;
            all_sum.push_back(std::move(row));
        }
        append(r3, unit_rows(m, 4, 6));
        append(r3, unit_rows(m, 10, 12));
        append(r3, all_sum);
        append(r4, unit_rows(m, 7, 9));
        append(r4, unit_rows(m, 13, 15));
        append(r4, all_sum);
        return make_instance(p, m, 2,
                             {MatrixFp::from_rows(field, r1), MatrixFp::from_rows(field, r2),
                              MatrixFp::from_rows(field, r3), MatrixFp::from_rows(field, r4)});
    }

    // SG4
    std::vector<std::vector<std::int64_t>> r1, r2, r3, r4;
    append(r1, unit_rows(m, 1, 3));
    append(r1, unit_rows(m, 4, 6));
    append(r1, unit_rows(m, 10, 12));
    append(r2, unit_rows(m, 1, 3));
    append(r2, unit_rows(m, 7, 9));
    append(r2, unit_rows(m, 13, 15));
    append(r3, unit_rows(m, 1, 3));
    append(r3, paired_rows(m, 4, 7, 1));  // s4+s7; s5+s8; s6+s9
    append(r3, paired_rows(m, 10, 13, 1));
    append(r4, unit_rows(m, 1, 3));
    {
        // s4+2s7; s5+3s8; s6+4s9 and s10+2s13; s11+3s14; s12+4s15
        for (std::size_t i = 0; i < 3; ++i) {
            std::vector<std::int64_t> row(m, 0);
            row[3 + i] = 1;
            row[6 + i] = static_cast<std::int64_t>(i) + 2;
            r4.push_back(std::move(row));
        }
        for (std::size_t i = 0; i < 3; ++i) {
            std::vector<std::int64_t> row(m, 0);
            row[9 + i] = 1;
            row[12 + i] = static_cast<std::int64_t>(i) + 2;
            r4.push_back(std::move(row));
        }
    }
    return make_instance(p, m, 2,
                         {MatrixFp::from_rows(field, r1), MatrixFp::from_rows(field, r2),
                          MatrixFp::from_rows(field, r3), MatrixFp::from_rows(field, r4)});
}

Instance sample_generic_instance(const GenericShape& shape, Rng& rng) {
    PrimeField field(shape.p);
    if (shape.N < 1 || shape.E < 1) throw Error(Errc::BadDimensions, "need N >= 1 and E >= 1");
    if (shape.m < shape.d) throw Error(Errc::BadDimensions, "need m >= d");
    if (shape.diagonal && shape.m != 2 * shape.d)
        throw Error(Errc::BadDimensions, "diagonal keys need m == 2d");
    std::vector<MatrixFp> keys;
    const std::size_t K = shape.N + shape.E;
    keys.reserve(K);
    for (std::size_t k = 0; k < K; ++k) {
        if (shape.diagonal) {
            MatrixFp lo = MatrixFp::random_nonzero_diagonal(field, shape.d, rng);
            MatrixFp hi = MatrixFp::random_nonzero_diagonal(field, shape.d, rng);
            keys.push_back(stack_h(lo, hi));
        } else {
            keys.push_back(MatrixFp::random(field, shape.d, shape.m, rng));
        }
    }
    return make_instance(shape.p, shape.m, shape.N, std::move(keys));
}

MatrixFp stacked_keys(const Instance& inst, std::uint32_t mask) {
    std::vector<MatrixFp> blocks;
    for (std::size_t k = 0; k < inst.num_receivers(); ++k)
        if (mask & (1u << k)) blocks.push_back(inst.keys[k]);
    if (blocks.empty()) return MatrixFp(inst.field, 0, inst.basis_dim);
    return stack_v(blocks);
}

std::int64_t subset_entropy(const Instance& inst, std::uint32_t mask) {
    return static_cast<std::int64_t>(rank(stacked_keys(inst, mask)));
}

EntropyProfile entropy_profile(const Instance& inst) {
    const std::size_t K = inst.num_receivers();
    if (K > 20) throw Error(Errc::TooManyReceivers, "profile over 2^K subsets needs K <= 20");
    EntropyProfile profile;
    profile.num_receivers = K;
    profile.values.resize(std::size_t{1} << K, 0);
    for (std::uint32_t mask = 1; mask < profile.values.size(); ++mask)
        profile.values[mask] = subset_entropy(inst, mask);
    return profile;
}

std::int64_t conditional_entropy(const Instance& inst, std::uint32_t s_mask, std::uint32_t t_mask) {
    return subset_entropy(inst, s_mask | t_mask) - subset_entropy(inst, t_mask);
}

} // namespace sgc
