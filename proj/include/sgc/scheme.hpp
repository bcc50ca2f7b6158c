#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "sgc/keymodel.hpp"
#include "sgc/rat.hpp"

namespace sgc {

// Transmit-signal description X = msg_precoder * W + key_precoder * s over
// one key block. All constructions here use blocks == 1; spatial scaling of
// the instance replaces block extension.
struct LinearScheme {
    Instance inst;
    std::size_t blocks = 1;       // L
    std::size_t message_len = 0;  // L_W
    std::size_t signal_len = 0;   // L_X
    MatrixFp msg_precoder;        // signal_len x message_len
    MatrixFp key_precoder;        // signal_len x basis_dim
    nlohmann::json provenance;
};

LinearScheme make_scheme(Instance inst, MatrixFp msg_precoder, MatrixFp key_precoder,
                         nlohmann::json provenance, std::size_t blocks = 1);

// Maximal-rank pair with signal_side * key_precoder == key_side * H_k; the
// rows identify rowspan(key_precoder) ∩ rowspan(H_k). key_complement extends
// key_side * H_k to the full row space of H_k, with the extension independent
// of rowspan(key_precoder).
struct OverlapDecomposition {
    std::size_t receiver = 0;  // 0-based
    MatrixFp signal_side;      // rows x signal_len
    MatrixFp key_side;         // rows x d_k
    MatrixFp key_complement;   // rows x d_k
    std::size_t overlap_dim = 0;
};

OverlapDecomposition overlap_decomposition(const LinearScheme& sch, std::size_t k);

// The (U, P) pair alone, for precoders that are still being designed:
// signal_side * precoder == key_side * key, rows spanning the row-space
// overlap.
struct OverlapPair {
    MatrixFp signal_side;
    MatrixFp key_side;
};
OverlapPair overlap_of(const MatrixFp& precoder, const MatrixFp& key);

struct VerificationReport {
    struct Qualified {
        std::size_t receiver;           // 0-based
        std::size_t correctness_rank;   // rank of (overlap rows applied to msg_precoder)
        std::size_t overlap_dim;
        std::int64_t decoding_deficit;  // H(W | X, Z_k) in symbols
    };
    struct Eavesdropper {
        std::size_t receiver;
        bool residual_zero;   // overlap rows annihilate msg_precoder
        std::size_t overlap_dim;
        std::int64_t leakage;  // I(W; X, Z_k) in symbols
    };
    bool pass = false;
    bool precoder_full_row_rank = false;
    std::vector<Qualified> qualified;
    std::vector<Eavesdropper> eavesdroppers;
};

// Checks the rank form of correctness and security for every receiver.
// Failures are report entries, never exceptions.
VerificationReport verify_feasibility(const LinearScheme& sch);

// I(W; X, Z_e) in p-ary symbols, exact at any p:
// rank([msg_precoder key_precoder; 0 H_e]) - rank([key_precoder; H_e]).
std::int64_t exact_leakage(const LinearScheme& sch, std::size_t eavesdropper);

// H(W | X, Z_q) in p-ary symbols.
std::int64_t exact_decoding_deficit(const LinearScheme& sch, std::size_t qualified);

struct RateBandwidth {
    Rat rate;       // L_W / L
    Rat bandwidth;  // L_X / L
};
RateBandwidth rate_and_bandwidth(const LinearScheme& sch);

} // namespace sgc
