#include "sgc/scheme.hpp"

namespace sgc {

LinearScheme make_scheme(Instance inst, MatrixFp msg_precoder, MatrixFp key_precoder,
                         nlohmann::json provenance, std::size_t blocks) {
    if (blocks < 1) throw Error(Errc::BadDimensions, "need at least one key block");
    if (key_precoder.cols() != inst.basis_dim)
        throw Error(Errc::BadDimensions, "key precoder must have m columns");
    if (msg_precoder.rows() != key_precoder.rows())
        throw Error(Errc::BadDimensions, "precoders must agree on the signal length");
    if (msg_precoder.field() != inst.field || key_precoder.field() != inst.field)
        throw Error(Errc::BadDimensions, "precoders must live in the instance field");
    LinearScheme sch{std::move(inst), blocks,          msg_precoder.cols(), msg_precoder.rows(),
                     std::move(msg_precoder), std::move(key_precoder), std::move(provenance)};
    return sch;
}

OverlapPair overlap_of(const MatrixFp& precoder, const MatrixFp& key) {
    const PrimeField& f = precoder.field();
    // Rows (u | w) of the left null space of [precoder; key] give
    // u * precoder = (-w) * key.
    MatrixFp ln = left_null_space(stack_v(precoder, key));
    MatrixFp signal_side(f, ln.rows(), precoder.rows());
    MatrixFp key_side(f, ln.rows(), key.rows());
    for (std::size_t i = 0; i < ln.rows(); ++i) {
        for (std::size_t j = 0; j < precoder.rows(); ++j) signal_side.at(i, j) = ln.at(i, j);
        for (std::size_t j = 0; j < key.rows(); ++j)
            key_side.at(i, j) = f.neg(ln.at(i, precoder.rows() + j));
    }
    return OverlapPair{std::move(signal_side), std::move(key_side)};
}

OverlapDecomposition overlap_decomposition(const LinearScheme& sch, std::size_t k) {
    const Instance& inst = sch.inst;
    if (k >= inst.num_receivers()) throw Error(Errc::BadDimensions, "receiver index out of range");
    const MatrixFp& key = inst.keys[k];
    const PrimeField& f = inst.field;

    auto [signal_side, key_side] = overlap_of(sch.key_precoder, key);

    // Extend the overlap rows to the full row space of H_k using the RREF
    // transform rows: row i of rref(H_k) equals transform(i) * H_k.
    RrefResult key_canon = rref(key);
    MatrixFp overlap_rows = key_side * key;
    MatrixFp span = overlap_rows;
    std::size_t span_rank = rank(span);
    std::vector<std::vector<std::int64_t>> complement_coeffs;
    for (std::size_t i = 0; i < key_canon.rank; ++i) {
        MatrixFp candidate = slice_rows(key_canon.rref, i + 1, i + 1);
        MatrixFp grown = stack_v(span, candidate);
        if (rank(grown) > span_rank) {
            span = std::move(grown);
            ++span_rank;
            std::vector<std::int64_t> coeff(key.rows());
            for (std::size_t j = 0; j < key.rows(); ++j)
                coeff[j] = static_cast<std::int64_t>(key_canon.transform.at(i, j));
            complement_coeffs.push_back(std::move(coeff));
        }
    }
    MatrixFp key_complement = complement_coeffs.empty()
                                  ? MatrixFp(f, 0, key.rows())
                                  : MatrixFp::from_rows(f, complement_coeffs);

    std::size_t overlap_dim = rank(signal_side);
    return OverlapDecomposition{k, std::move(signal_side), std::move(key_side),
                                std::move(key_complement), overlap_dim};
}

namespace {

// rank([msg_precoder key_precoder; 0 H_k]) - rank([key_precoder; H_k]),
// the joint-signal rank gain attributable to the message.
std::int64_t message_rank_gain(const LinearScheme& sch, std::size_t k) {
    const MatrixFp& key = sch.inst.keys[k];
    MatrixFp zero(sch.inst.field, key.rows(), sch.message_len);
    MatrixFp joint = stack_v(stack_h(sch.msg_precoder, sch.key_precoder), stack_h(zero, key));
    MatrixFp keys_only = stack_v(sch.key_precoder, key);
    return static_cast<std::int64_t>(rank(joint)) - static_cast<std::int64_t>(rank(keys_only));
}

} // namespace

std::int64_t exact_leakage(const LinearScheme& sch, std::size_t eavesdropper) {
    return message_rank_gain(sch, eavesdropper);
}

std::int64_t exact_decoding_deficit(const LinearScheme& sch, std::size_t qualified) {
    return static_cast<std::int64_t>(sch.message_len) - message_rank_gain(sch, qualified);
}

VerificationReport verify_feasibility(const LinearScheme& sch) {
    VerificationReport report;
    report.precoder_full_row_rank = rank(sch.key_precoder) == sch.signal_len;
    bool all_correct = true;
    bool all_secure = true;
    for (std::size_t k = 0; k < sch.inst.num_receivers(); ++k) {
        OverlapDecomposition od = overlap_decomposition(sch, k);
        MatrixFp projected = od.signal_side * sch.msg_precoder;
        if (sch.inst.is_qualified(k)) {
            std::size_t corr = rank(projected);
            all_correct = all_correct && corr == sch.message_len;
            report.qualified.push_back(
                {k, corr, od.overlap_dim, exact_decoding_deficit(sch, k)});
        } else {
            bool zero = projected.is_zero();
            all_secure = all_secure && zero;
            report.eavesdroppers.push_back({k, zero, od.overlap_dim, exact_leakage(sch, k)});
        }
    }
    report.pass = all_correct && all_secure && report.precoder_full_row_rank;
    return report;
}

RateBandwidth rate_and_bandwidth(const LinearScheme& sch) {
    auto blocks = static_cast<std::int64_t>(sch.blocks);
    return {Rat(static_cast<std::int64_t>(sch.message_len), blocks),
            Rat(static_cast<std::int64_t>(sch.signal_len), blocks)};
}

} // namespace sgc
