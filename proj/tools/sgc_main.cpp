#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sgc/bounds.hpp"
#include "sgc/construct.hpp"
#include "sgc/jsonio.hpp"
#include "sgc/oracle.hpp"

namespace {

using nlohmann::json;
using namespace sgc;

constexpr int kExitPass = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitUnsolved = 3;

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

// One instance source per run: a JSON file, a named instance, or generic
// sampling parameters.
struct InstanceOptions {
    std::string path;
    std::string named;
    std::uint64_t p = kDefaultPrime;
    std::size_t d = 0;
    std::size_t m = 0;
    std::string gamma;
    std::size_t n = 0;
    std::size_t e = 0;
    bool diagonal = false;

    void add_flags(CLI::App* cmd) {
        cmd->add_option("--instance", path, "instance JSON file");
        cmd->add_option("--named", named, "named instance: SG1, SG2, SG3 or SG4");
        cmd->add_option("--p", p, "prime modulus");
        cmd->add_option("--d", d, "per-receiver key dimension");
        cmd->add_option("--m", m, "basis dimension");
        cmd->add_option("--gamma", gamma, "space expansion factor m/d as an exact rational");
        cmd->add_option("--n", n, "number of qualified receivers");
        cmd->add_option("--e", e, "number of eavesdropping receivers");
        cmd->add_flag("--diagonal", diagonal, "diagonal generic keys (requires m = 2d)");
    }

    bool has_generic() const { return n > 0 || e > 0 || d > 0 || m > 0 || !gamma.empty(); }

    Instance resolve(Rng& rng) const {
        int sources = (!path.empty()) + (!named.empty()) + has_generic();
        if (sources != 1)
            throw Error(Errc::UsageError,
                        "supply exactly one of --instance, --named, or generic parameters (--d/--m/--n/--e)");
        if (!path.empty()) return load_instance(path);
        if (!named.empty()) return named_instance(parse_named_instance(named), p);
        GenericShape shape;
        shape.p = p;
        shape.N = n;
        shape.E = e;
        shape.diagonal = diagonal;
        if (d == 0) throw Error(Errc::UsageError, "generic instances need --d");
        shape.d = d;
        if (m > 0) {
            shape.m = m;
        } else if (!gamma.empty()) {
            Rat g = parse_rational(gamma);
            Rat md = g * Rat(static_cast<std::int64_t>(d));
            if (md.denominator() != 1)
                throw Error(Errc::UsageError, "--gamma " + gamma + " with --d " + std::to_string(d) +
                                                  " gives a non-integer m");
            shape.m = static_cast<std::size_t>(md.numerator());
        } else {
            throw Error(Errc::UsageError, "generic instances need --m or --gamma");
        }
        return sample_generic_instance(shape, rng);
    }
};

json rat_json(const Rat& r) { return rat_to_string(r); }

json report_to_json(const VerificationReport& rep, const LinearScheme& sch) {
    json q = json::array();
    for (const auto& e : rep.qualified)
        q.push_back({{"receiver", e.receiver + 1},
                     {"correctness_rank", e.correctness_rank},
                     {"overlap_dim", e.overlap_dim},
                     {"decoding_deficit", e.decoding_deficit}});
    json ev = json::array();
    for (const auto& e : rep.eavesdroppers)
        ev.push_back({{"receiver", e.receiver + 1},
                      {"residual_zero", e.residual_zero},
                      {"overlap_dim", e.overlap_dim},
                      {"leakage", e.leakage}});
    RateBandwidth rb = rate_and_bandwidth(sch);
    return json{{"pass", rep.pass},
                {"precoder_full_row_rank", rep.precoder_full_row_rank},
                {"message_len", sch.message_len},
                {"signal_len", sch.signal_len},
                {"rate", rat_json(rb.rate)},
                {"bandwidth", rat_json(rb.bandwidth)},
                {"qualified", std::move(q)},
                {"eavesdroppers", std::move(ev)}};
}

// Index spec "1:3" or "2,5" (1-based) into identity rows over the basis.
MatrixFp basis_rows_from_spec(const PrimeField& field, std::size_t m, const std::string& spec) {
    std::vector<std::size_t> idx;
    if (!spec.empty()) {
        auto colon = spec.find(':');
        if (colon != std::string::npos) {
            std::size_t lo = std::stoull(spec.substr(0, colon));
            std::size_t hi = std::stoull(spec.substr(colon + 1));
            for (std::size_t i = lo; i <= hi; ++i) idx.push_back(i);
        } else {
            std::size_t pos = 0;
            while (pos < spec.size()) {
                auto comma = spec.find(',', pos);
                if (comma == std::string::npos) comma = spec.size();
                idx.push_back(std::stoull(spec.substr(pos, comma - pos)));
                pos = comma + 1;
            }
        }
    }
    MatrixFp rows(field, idx.size(), m);
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (idx[i] < 1 || idx[i] > m)
            throw Error(Errc::UsageError, "basis index " + std::to_string(idx[i]) + " out of [1, m]");
        rows.at(i, idx[i] - 1) = 1;
    }
    return rows;
}

bool epsilon_contract_ok(const ConstructorOutcome& outcome, const VerificationReport& rep) {
    if (!outcome.notes.contains("epsilon_leakage") || !outcome.notes["epsilon_leakage"].get<bool>())
        return false;
    std::int64_t budget = outcome.notes["leakage_bound"].get<std::int64_t>();
    for (const auto& q : rep.qualified)
        if (q.decoding_deficit != 0) return false;
    for (const auto& e : rep.eavesdroppers)
        if (e.leakage > budget) return false;
    return rep.precoder_full_row_rank;
}

int cmd_synthesize(const InstanceOptions& iopts, std::uint64_t seed, int max_retries,
                   std::size_t delta, const std::string& out_path,
                   const std::string& save_instance_path) {
    Rng rng(seed);
    ConstructorOutcome outcome{LinearScheme{named_instance(NamedInstance::SG1, 2), 1, 0, 0,
                                            MatrixFp(PrimeField(2), 0, 0), MatrixFp(PrimeField(2), 0, 3),
                                            json::object()},
                               0, json::object()};
    if (!iopts.named.empty()) {
        outcome = construct_extra_entropic(parse_named_instance(iopts.named), iopts.p);
    } else if (delta > 0) {
        if (iopts.n == 2 && iopts.e > 2)
            outcome = construct_asymptotic_E(iopts.p, iopts.e, delta, rng, max_retries);
        else if (iopts.n > 2 && iopts.e == 2)
            outcome = construct_asymptotic_N(iopts.p, iopts.n, delta, rng, max_retries);
        else
            throw Error(Errc::UsageError, "--delta applies to N > 2, E = 2 or N = 2, E > 2");
    } else {
        Instance inst = iopts.resolve(rng);
        const std::size_t N = inst.num_qualified;
        const std::size_t E = inst.num_eavesdroppers();
        Rat g = inst.gamma();
        if (N == 2 && E == 2) {
            if (g >= Rat(2) && g < Rat(5, 2) && (inst.basis_dim - inst.key_dim()) % 3 != 0) {
                inst = n2e2_spatial_triple(inst.field.p(), inst.key_dim(), inst.basis_dim, rng);
                g = inst.gamma();
            }
            outcome = construct_n2e2(inst, rng, max_retries);
        } else if ((N == 3 || N == 4) && E == 2 && g == Rat(2) && inst.key_dim() == 3) {
            outcome = construct_alignment_smallN(inst, rng, max_retries);
        } else if (g >= Rat(static_cast<std::int64_t>(std::min(N, E)) + 1)) {
            outcome = construct_large_gamma(inst, rng, max_retries);
        } else if (g <= Rat(1) + Rat(1, static_cast<std::int64_t>(std::min(N, E)))) {
            outcome = construct_small_gamma(inst, rng, max_retries);
        } else {
            throw Error(Errc::Unsolved, "no constructor covers gamma = " + rat_to_string(g) +
                                            " for N = " + std::to_string(N) + ", E = " + std::to_string(E));
        }
    }
    VerificationReport rep = verify_feasibility(outcome.scheme);
    bool ok = rep.pass || epsilon_contract_ok(outcome, rep);
    json doc{{"constructor", outcome.scheme.provenance.value("constructor", "?")},
             {"retries_used", outcome.retries_used},
             {"notes", outcome.notes},
             {"verification", report_to_json(rep, outcome.scheme)},
             {"ok", ok}};
    if (!out_path.empty()) {
        save_scheme(outcome.scheme, out_path);
        doc["scheme_written"] = out_path;
    }
    if (!save_instance_path.empty()) {
        save_instance(outcome.scheme.inst, save_instance_path);
        doc["instance_written"] = save_instance_path;
    }
    emit(doc);
    return ok ? kExitPass : kExitVerifyFail;
}

int cmd_verify(const InstanceOptions& iopts, std::uint64_t seed, const std::string& scheme_path) {
    Rng rng(seed);
    Instance inst = iopts.resolve(rng);
    LinearScheme sch = load_scheme(scheme_path, std::move(inst));
    VerificationReport rep = verify_feasibility(sch);
    emit(report_to_json(rep, sch));
    return rep.pass ? kExitPass : kExitVerifyFail;
}

int cmd_bounds(const InstanceOptions& iopts, std::uint64_t seed, const std::string& rate_str,
               const std::string& ue_spec, bool ue_given, bool enumerate_ue) {
    Rng rng(seed);
    Instance inst = iopts.resolve(rng);
    json doc;
    RateBound rb = rate_upper_bound(inst);
    doc["rate_upper"] = {{"value", rat_json(rb.value)},
                         {"qualified", rb.witness_qualified + 1},
                         {"eavesdropper", rb.witness_eavesdropper + 1}};

    if (!rate_str.empty()) {
        Rat rate = parse_rational(rate_str);
        Rat best = rate;
        json witness;
        const std::size_t N = inst.num_qualified;
        for (std::size_t e = N; e < inst.num_receivers(); ++e) {
            std::vector<MatrixFp> candidates;
            candidates.push_back(MatrixFp(inst.field, 0, inst.keys[e].rows()));
            if (enumerate_ue && inst.keys[e].rows() <= 6) {
                RrefResult canon = rref(inst.keys[e]);
                for (std::uint32_t mask = 1; mask < (1u << canon.rank); ++mask) {
                    std::vector<std::vector<std::int64_t>> rows;
                    for (std::size_t i = 0; i < canon.rank; ++i) {
                        if (!(mask & (1u << i))) continue;
                        std::vector<std::int64_t> row(inst.keys[e].rows());
                        for (std::size_t j = 0; j < inst.keys[e].rows(); ++j)
                            row[j] = static_cast<std::int64_t>(canon.transform.at(i, j));
                        rows.push_back(std::move(row));
                    }
                    candidates.push_back(MatrixFp::from_rows(inst.field, rows));
                }
            }
            for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
                for (std::uint32_t qmask = 1; qmask < (1u << N); ++qmask) {
                    std::vector<std::size_t> qset;
                    for (std::size_t q = 0; q < N; ++q)
                        if (qmask & (1u << q)) qset.push_back(q);
                    Rat v = bandwidth_lower_bound(inst, rate, qset, e, candidates[ci]);
                    if (v > best) {
                        best = v;
                        json qj = json::array();
                        for (std::size_t q : qset) qj.push_back(q + 1);
                        witness = {{"qualified_set", qj},
                                   {"eavesdropper", e + 1},
                                   {"side_info_rows", candidates[ci].rows()}};
                    }
                }
            }
        }
        doc["bandwidth_lower"] = {{"rate", rat_json(rate)}, {"value", rat_json(best)}};
        if (!witness.is_null()) doc["bandwidth_lower"]["witness"] = witness;
    }

    if (ue_given) {
        MatrixFp shared = basis_rows_from_spec(inst.field, inst.basis_dim, ue_spec);
        try {
            NewconTerms terms = newcon_bound(inst, shared);
            Rat best_rate(0);
            json best_q;
            bool first = true;
            const std::size_t N = inst.num_qualified;
            for (std::uint32_t qmask = 1; qmask < (1u << N); ++qmask) {
                std::vector<std::size_t> qset;
                for (std::size_t q = 0; q < N; ++q)
                    if (qmask & (1u << q)) qset.push_back(q);
                Rat v = newcon_rate_bound(inst, shared, qset);
                if (first || v < best_rate) {
                    best_rate = v;
                    best_q = json::array();
                    for (std::size_t q : qset) best_q.push_back(q + 1);
                    first = false;
                }
            }
            doc["newcon"] = {{"rhs", rat_json(terms.rhs)},
                             {"multiplier", terms.multiplier},
                             {"rate_upper", rat_json(best_rate)},
                             {"qualified_set", best_q}};
        } catch (const Error& err) {
            if (err.code() != Errc::IndependenceViolated) throw;
            doc["newcon"] = {{"skipped", err.what()}};
        }
    }
    emit(doc);
    return kExitPass;
}

int cmd_profile(const InstanceOptions& iopts, std::uint64_t seed) {
    Rng rng(seed);
    Instance inst = iopts.resolve(rng);
    EntropyProfile prof = entropy_profile(inst);
    json rows = json::array();
    for (std::uint32_t mask = 1; mask < prof.values.size(); ++mask) {
        json subset = json::array();
        for (std::size_t k = 0; k < prof.num_receivers; ++k)
            if (mask & (1u << k)) subset.push_back(k + 1);
        rows.push_back({{"subset", std::move(subset)}, {"entropy", prof.values[mask]}});
    }
    emit(json{{"receivers", prof.num_receivers}, {"profile", std::move(rows)}});
    return kExitPass;
}

int cmd_oracle(const InstanceOptions& iopts, std::uint64_t seed, const std::string& scheme_path,
               std::uint64_t cap) {
    Rng rng(seed);
    Instance inst = iopts.resolve(rng);
    LinearScheme sch = load_scheme(scheme_path, std::move(inst));
    EntropicReport oracle = entropic_check(sch, cap);
    json rank_deficits = json::array(), rank_leakages = json::array();
    bool match = true;
    for (std::size_t q = 0; q < sch.inst.num_qualified; ++q) {
        std::int64_t v = exact_decoding_deficit(sch, q);
        rank_deficits.push_back(v);
        match = match && v == oracle.deficits[q];
    }
    for (std::size_t e = sch.inst.num_qualified; e < sch.inst.num_receivers(); ++e) {
        std::int64_t v = exact_leakage(sch, e);
        rank_leakages.push_back(v);
        match = match && v == oracle.leakages[e - sch.inst.num_qualified];
    }
    emit(json{{"oracle", {{"deficits", oracle.deficits}, {"leakages", oracle.leakages}}},
              {"rank_identity", {{"deficits", rank_deficits}, {"leakages", rank_leakages}}},
              {"match", match}});
    return match ? kExitPass : kExitVerifyFail;
}

int cmd_curve(std::size_t n, std::size_t e, const std::string& grid) {
    auto first_colon = grid.find(':');
    auto second_colon = grid.find(':', first_colon + 1);
    if (first_colon == std::string::npos || second_colon == std::string::npos)
        throw Error(Errc::UsageError, "--gamma grid must be start:stop:step");
    Rat start = parse_rational(grid.substr(0, first_colon));
    Rat stop = parse_rational(grid.substr(first_colon + 1, second_colon - first_colon - 1));
    Rat step = parse_rational(grid.substr(second_colon + 1));
    if (step <= Rat(0)) throw Error(Errc::UsageError, "grid step must be positive");
    json rows = json::array();
    for (Rat g = start; g <= stop; g += step) {
        CapacityResult cap = (n == 2 && e == 2) ? n2e2_capacity(g) : generic_capacity(n, e, g);
        json row{{"gamma", rat_json(g)}, {"regime", cap.regime}};
        if (cap.value) {
            row["value"] = rat_json(*cap.value);
        } else {
            row["unsolved"] = true;
            if (cap.bracket_lo) row["bracket_lo"] = rat_json(*cap.bracket_lo);
            if (cap.bracket_hi) row["bracket_hi"] = rat_json(*cap.bracket_hi);
        }
        rows.push_back(std::move(row));
    }
    emit(json{{"N", n}, {"E", e}, {"table", std::move(rows)}});
    return kExitPass;
}

int cmd_sz_trial(const std::string& predicate, const InstanceOptions& iopts, int trials,
                 std::uint64_t seed) {
    GenericShape shape;
    shape.p = iopts.p;
    shape.d = iopts.d;
    shape.m = iopts.m;
    shape.N = iopts.n;
    shape.E = iopts.e;
    shape.diagonal = iopts.diagonal;
    if (shape.d == 0 || shape.m == 0 || shape.N == 0 || shape.E == 0)
        throw Error(Errc::UsageError, "sz-trial needs --p --d --m --n --e");
    Rng rng(seed);
    double fraction = schwartz_zippel_trial(parse_sz_predicate(predicate), shape, trials, rng);
    emit(json{{"predicate", predicate}, {"trials", trials}, {"fraction", fraction}});
    return kExitPass;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"linear secure-groupcast schemes over prime fields: construct, verify, bound"};
    app.require_subcommand(1);

    InstanceOptions iopts;
    std::uint64_t seed = 1;
    int max_retries = kDefaultMaxRetries;
    std::size_t delta = 0;
    std::uint64_t oracle_cap = kOracleCap;
    std::string out_path, save_instance_path, scheme_path, rate_str, ue_spec, grid, predicate;
    bool enumerate_ue = false;
    int trials = 100;

    auto* synth = app.add_subcommand("synthesize", "pick a constructor by regime and emit a scheme");
    iopts.add_flags(synth);
    synth->add_option("--seed", seed, "rng seed");
    synth->add_option("--max-retries", max_retries, "instance resamples allowed per construction");
    synth->add_option("--delta", delta, "product degree bound for the asymptotic schemes");
    synth->add_option("--out", out_path, "write the scheme JSON here");
    synth->add_option("--save-instance", save_instance_path, "write the instance JSON here");

    auto* verify = app.add_subcommand("verify", "check a scheme JSON against an instance");
    iopts.add_flags(verify);
    verify->add_option("--seed", seed, "rng seed (for generic instance sources)");
    verify->add_option("--scheme", scheme_path, "scheme JSON file")->required();

    auto* bounds = app.add_subcommand("bounds", "converse bounds for an instance");
    iopts.add_flags(bounds);
    bounds->add_option("--seed", seed, "rng seed (for generic instance sources)");
    bounds->add_option("--rate", rate_str, "rate for the bandwidth bound, as a rational");
    auto* ue_opt = bounds->add_option("--ue", ue_spec,
                                      "shared side information as 1-based basis indices, e.g. 1:3");
    bounds->add_flag("--enumerate-ue", enumerate_ue,
                     "search side information over row subsets of rref(H_e) (d_e <= 6)");

    auto* profile = app.add_subcommand("profile", "entropy of every key subset");
    iopts.add_flags(profile);
    profile->add_option("--seed", seed, "rng seed (for generic instance sources)");

    auto* oracle = app.add_subcommand("oracle", "exhaustive entropic check of a scheme");
    iopts.add_flags(oracle);
    oracle->add_option("--seed", seed, "rng seed (for generic instance sources)");
    oracle->add_option("--scheme", scheme_path, "scheme JSON file")->required();
    oracle->add_option("--oracle-cap", oracle_cap, "max joint states to enumerate");

    auto* curve = app.add_subcommand("curve", "capacity (or brackets) over a gamma grid");
    std::size_t curve_n = 0, curve_e = 0;
    curve->add_option("--n", curve_n, "qualified receivers")->required();
    curve->add_option("--e", curve_e, "eavesdropping receivers")->required();
    curve->add_option("--gamma", grid, "grid start:stop:step, exact rationals")->required();

    auto* sz = app.add_subcommand("sz-trial", "empirical success fraction of a rank condition");
    iopts.add_flags(sz);
    sz->add_option("--predicate", predicate, "qualified-stack | overlap-completion | left-null-dim | singular-family")
        ->required();
    sz->add_option("--trials", trials, "number of seeded draws");
    sz->add_option("--seed", seed, "rng seed");

    try {
        app.parse(argc, argv);
        if (synth->parsed()) return cmd_synthesize(iopts, seed, max_retries, delta, out_path, save_instance_path);
        if (verify->parsed()) return cmd_verify(iopts, seed, scheme_path);
        if (bounds->parsed()) return cmd_bounds(iopts, seed, rate_str, ue_spec, ue_opt->count() > 0, enumerate_ue);
        if (profile->parsed()) return cmd_profile(iopts, seed);
        if (oracle->parsed()) return cmd_oracle(iopts, seed, scheme_path, oracle_cap);
        if (curve->parsed()) return cmd_curve(curve_n, curve_e, grid);
        if (sz->parsed()) return cmd_sz_trial(predicate, iopts, trials, seed);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    } catch (const Error& e) {
        emit(json{{"error", {{"code", e.code_name()}, {"message", e.what()}}}});
        return (e.code() == Errc::Unsolved || e.code() == Errc::RetriesExhausted) ? kExitUnsolved : kExitUsage;
    } catch (const std::exception& e) {
        emit(json{{"error", {{"code", "Internal"}, {"message", e.what()}}}});
        return kExitUsage;
    }
}
