// qebp-lab: decoding laboratory CLI.
//
// Subcommands: bler-sweep, decode, optimize-params, rep-analytics, rounds.
// Exit codes: 0 success, 2 spec validation failure, 3 runtime error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qebp/channel.hpp"
#include "qebp/experiment.hpp"
#include "qebp/minsum.hpp"
#include "qebp/oracle.hpp"
#include "qebp/param_opt.hpp"
#include "qebp/qebp.hpp"
#include "qebp/rep_analytics.hpp"
#include "qebp/rng.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

qebp::SignConvention sign_from_string(const std::string& s) {
    if (s == "main_text") return qebp::SignConvention::main_text;
    if (s == "appendix") return qebp::SignConvention::appendix;
    throw qebp::SpecError("unknown sign convention '" + s + "'");
}

std::vector<std::size_t> parse_n_list(const std::string& text) {
    std::vector<std::size_t> out;
    if (text.find(':') != std::string::npos) {
        long start, stop, step;
        char c1, c2;
        std::istringstream in(text);
        if (!(in >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0)
            throw qebp::SpecError("bad n-list '" + text + "'");
        for (long v = start; v <= stop; v += step) out.push_back(static_cast<std::size_t>(v));
    } else {
        std::istringstream in(text);
        std::string item;
        while (std::getline(in, item, ','))
            if (!item.empty()) out.push_back(static_cast<std::size_t>(std::stoul(item)));
    }
    if (out.empty()) throw qebp::SpecError("empty n-list");
    return out;
}

void warn_degree_one(const qebp::LinearCode& code, const std::string& id) {
    if (code.has_degree_one_checks())
        std::clog << "note: code " << id << " has degree-1 parity checks; min-sum treats their "
                  << "messages as saturated satisfied evidence\n";
}

nlohmann::json decode_result_json(const qebp::DecodeResult& res) {
    nlohmann::json j;
    j["word"] = qebp::format_bits(res.word);
    j["converged"] = res.converged;
    j["iterations"] = res.iterations;
    j["final_llrs"] = res.final_llrs;
    return j;
}

int cmd_bler_sweep(const std::string& spec_path, const std::string& out_csv,
                   const std::string& out_json, int threads_override) {
    qebp::ExperimentSpec spec = qebp::spec_from_json_text(read_file(spec_path));
    if (threads_override > 0) spec.threads = threads_override;
    const qebp::LinearCode code = qebp::load_code(spec.code_id);
    warn_degree_one(code, spec.code_id);
    const qebp::ExperimentRecord record = qebp::run_bler_sweep(spec);
    if (!out_csv.empty())
        qebp::emit_csv(record, out_csv);
    else
        std::cout << qebp::to_csv(record);
    if (!out_json.empty()) qebp::emit_json(record, out_json);
    std::clog << "bler-sweep finished in " << record.wall_seconds << " s\n";
    return 0;
}

struct DecodeArgs {
    std::string code_id = "reg_12_8";
    std::string decoder = "bp";
    std::string y_bits;
    double eps = -1.0;
    double snr_db = std::numeric_limits<double>::quiet_NaN();
    int p = 1;
    double alpha = 1.0, eta = 2.0;
    int shots = 10000;
    int max_iter = 50;
    int starts = 10;
    std::uint64_t seed = 1;
    std::string sign = "main_text";
    std::vector<double> gammas, betas;
    bool shot_marginals = false;
};

int cmd_decode(const DecodeArgs& args) {
    const qebp::LinearCode code = qebp::load_code(args.code_id);
    warn_degree_one(code, args.code_id);
    const qebp::Word y = qebp::parse_bits(args.y_bits);
    if (y.size() != code.n()) throw qebp::SpecError("--y length does not match the code length");

    double eps = args.eps;
    if (eps < 0) {
        if (std::isnan(args.snr_db)) throw qebp::SpecError("provide --eps or --snr-db");
        const qebp::BscParams bsc = qebp::crossover_from_snr({args.snr_db});
        if (bsc.clamped) std::clog << "note: crossover clamped to " << qebp::kEpsMin << "\n";
        eps = bsc.epsilon;
    }

    std::mt19937_64 rng(args.seed);
    const qebp::DecoderKind kind = qebp::decoder_from_name(args.decoder);

    qebp::QaoaConfig cfg;
    cfg.p = args.p;
    cfg.alpha = args.alpha;
    cfg.eta = args.eta;
    cfg.shots = args.shots;
    cfg.sign = sign_from_string(args.sign);
    if (!args.gammas.empty() || !args.betas.empty()) {
        if (args.gammas.size() != static_cast<std::size_t>(args.p) ||
            args.betas.size() != static_cast<std::size_t>(args.p))
            throw qebp::SpecError("--gammas/--betas must each have p entries");
        cfg.gammas = args.gammas;
        cfg.betas = args.betas;
    } else if (kind != qebp::DecoderKind::bp && kind != qebp::DecoderKind::ml) {
        const qebp::Syndrome s = code.syndrome(y);
        std::mt19937_64 opt_rng(qebp::derive_seed(args.seed, 0x7061726d5f6f7074ULL,
                                                  code.syndrome_bits(qebp::pack_bits_lsb(y))));
        qebp::OptResult opt = qebp::optimize_parameters(code, s, args.p, args.alpha, args.eta,
                                                        cfg.sign, args.starts, opt_rng);
        cfg.gammas = opt.gammas;
        cfg.betas = opt.betas;
        std::clog << "optimized parameters for this syndrome, cost " << opt.cost << "\n";
    }

    qebp::DecodeResult res;
    switch (kind) {
        case qebp::DecoderKind::bp:
            res = qebp::plain_bp_decode(code, y, eps, args.max_iter);
            break;
        case qebp::DecoderKind::ml: {
            res.word = qebp::ml_decode(code, y);
            res.converged = true;
            break;
        }
        case qebp::DecoderKind::qebp:
            res = qebp::qebp_decode(code, y, eps, cfg, qebp::QebpMode::marginal, args.max_iter,
                                    rng, args.shot_marginals);
            break;
        case qebp::DecoderKind::qebp_1s:
            res = qebp::qebp_decode(code, y, eps, cfg, qebp::QebpMode::one_sample, args.max_iter,
                                    rng);
            break;
        case qebp::DecoderKind::qaoa:
        case qebp::DecoderKind::qaoa_postsel: {
            const qebp::Syndrome s = code.syndrome(y);
            const std::vector<double> dist =
                qebp::outcome_distribution(qebp::qaoa_state(code, s, cfg));
            const std::vector<int> counts = qebp::sample_outcomes(dist, cfg.shots, rng);
            std::uint64_t pick;
            if (kind == qebp::DecoderKind::qaoa_postsel) {
                const std::uint64_t s_bits = code.syndrome_bits(qebp::pack_bits_lsb(y));
                std::uint64_t best = 0;
                int best_count = 0;
                for (std::size_t z = 0; z < counts.size(); ++z) {
                    if (!counts[z]) continue;
                    const qebp::Word cand = qebp::index_to_word(z, code.n());
                    if (code.syndrome_bits(qebp::pack_bits_lsb(cand)) != s_bits) continue;
                    if (counts[z] > best_count) {
                        best_count = counts[z];
                        best = z;
                    }
                }
                if (best_count == 0) {
                    best = qebp::top_ranked(counts);
                    std::clog << "note: no sampled string satisfied the codeword condition; "
                              << "falling back to the overall top string\n";
                }
                pick = best;
            } else {
                pick = qebp::top_ranked(counts);
            }
            res.word = qebp::word_xor(y, qebp::index_to_word(pick, code.n()));
            res.converged = code.is_codeword(res.word);
            break;
        }
    }
    std::cout << decode_result_json(res).dump(2) << "\n";
    return 0;
}

int cmd_optimize_params(const std::string& code_id, const std::string& syndrome_bits, int p,
                        int starts, std::uint64_t seed, double alpha, double eta,
                        const std::string& sign) {
    const qebp::LinearCode code = qebp::load_code(code_id);
    const qebp::Syndrome s = qebp::parse_bits(syndrome_bits);
    if (s.size() != code.num_checks())
        throw qebp::SpecError("--syndrome length does not match the number of checks");
    std::mt19937_64 rng(seed);
    const qebp::OptResult opt =
        qebp::optimize_parameters(code, s, p, alpha, eta, sign_from_string(sign), starts, rng);

    nlohmann::json j;
    j["gammas"] = opt.gammas;
    j["betas"] = opt.betas;
    j["cost"] = opt.cost;
    j["starts_used"] = opt.starts_used;
    nlohmann::json trace = nlohmann::json::array();
    for (const auto& t : opt.trace) {
        nlohmann::json tj;
        tj["initial_gammas"] = t.initial_gammas;
        tj["initial_betas"] = t.initial_betas;
        tj["initial_cost"] = t.initial_cost;
        tj["final_cost"] = t.final_cost;
        tj["iterations"] = t.iterations;
        trace.push_back(tj);
    }
    j["trace"] = trace;
    std::cout << j.dump(2) << "\n";
    return 0;
}

struct RepArgs {
    std::string strategy = "one_sample";
    std::string n_list = "3:23:2";
    std::string snr = "2";
    int rounds = 1000;
    std::uint64_t seed = 1;
    std::string mode = "expected";
    double gamma = std::numeric_limits<double>::quiet_NaN();
    double beta = std::numeric_limits<double>::quiet_NaN();
    double alpha = 1.0, eta = 2.0;
    bool include_zero_error = false;
};

qebp::RepParams resolve_rep_params(double gamma, double beta, double alpha, double eta) {
    qebp::RepParams params;
    params.alpha = alpha;
    params.eta = eta;
    if (std::isnan(gamma) || std::isnan(beta)) {
        const qebp::SharedOptResult opt = qebp::optimize_shared_parameters(alpha, eta);
        params.gamma = opt.gamma;
        params.beta = opt.beta;
        std::clog << "shared parameters: gamma=" << opt.gamma << " beta=" << opt.beta
                  << " |lambda|=" << opt.lambda_abs << " (appendix sign convention)\n";
    } else {
        params.gamma = gamma;
        params.beta = beta;
    }
    return params;
}

int cmd_rep_analytics(const RepArgs& args) {
    const qebp::RepParams params = resolve_rep_params(args.gamma, args.beta, args.alpha, args.eta);
    const std::vector<std::size_t> ns = parse_n_list(args.n_list);
    const std::vector<double> snrs = qebp::parse_snr_grid(args.snr);

    std::cout << "n,eb_n0_db,strategy,r,bler\n";
    for (double snr : snrs) {
        const double eps = qebp::crossover_from_snr({snr}).epsilon;
        for (std::size_t n : ns) {
            double bler = 0.0;
            int r_col = 0;
            if (args.strategy == "one_sample") {
                bler = qebp::bler_one_sample(n, eps, params, args.include_zero_error);
                r_col = 1;
            } else if (args.strategy == "post_selection") {
                bler = qebp::bler_post_selection(n, eps, params, args.include_zero_error);
                r_col = 0;
            } else if (args.strategy == "ranking") {
                const qebp::RankingMode mode = args.mode == "monte_carlo"
                                                   ? qebp::RankingMode::monte_carlo
                                                   : qebp::RankingMode::expected;
                bler = qebp::bler_ranking(n, eps, args.rounds, params, mode, args.seed);
                r_col = args.rounds;
            } else if (args.strategy == "majority_vote") {
                bler = qebp::bler_majority_vote(n, eps);
                r_col = 0;
            } else {
                throw qebp::SpecError("unknown strategy '" + args.strategy + "'");
            }
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", bler);
            std::cout << n << "," << snr << "," << args.strategy << "," << r_col << "," << buf
                      << "\n";
        }
    }
    return 0;
}

int cmd_rounds(const std::string& n_list, double snr_db, double gamma, double beta, double alpha,
               double eta) {
    const qebp::RepParams params = resolve_rep_params(gamma, beta, alpha, eta);
    const std::vector<std::size_t> ns = parse_n_list(n_list);
    const double eps = qebp::crossover_from_snr({snr_db}).epsilon;

    std::vector<std::pair<double, double>> points;
    for (std::size_t n : ns)
        points.emplace_back(static_cast<double>(n),
                            qebp::expected_rounds_postselection(n, eps, params));
    const auto [a, b] = qebp::fit_exponential(points);

    std::cout << "n,expected_rounds,fitted_a,fitted_b\n";
    for (const auto& [x, rounds] : points) {
        char rb[64], ab[64], bb[64];
        std::snprintf(rb, sizeof rb, "%.17g", rounds);
        std::snprintf(ab, sizeof ab, "%.17g", a);
        std::snprintf(bb, sizeof bb, "%.17g", b);
        std::cout << static_cast<std::size_t>(x) << "," << rb << "," << ab << "," << bb << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qebp-lab: QAOA syndrome decoding, min-sum BP and QEBP experiments"};
    app.require_subcommand(1);

    // bler-sweep
    std::string spec_path, out_csv, out_json;
    int threads_override = 0;
    auto* sweep = app.add_subcommand("bler-sweep", "Monte Carlo BLER sweep from a JSON spec");
    sweep->add_option("--spec", spec_path, "experiment spec JSON file")->required();
    sweep->add_option("--out", out_csv, "output CSV path (default stdout)");
    sweep->add_option("--json", out_json, "also write the full record as JSON");
    sweep->add_option("--threads", threads_override, "worker threads (overrides spec)");

    // decode
    DecodeArgs dargs;
    auto* dec = app.add_subcommand("decode", "decode a single received word");
    dec->add_option("--code", dargs.code_id, "code id or .alist/.json path");
    dec->add_option("--decoder", dargs.decoder, "bp|qaoa|qaoa-postsel|qebp|qebp-1s|ml")
        ->required();
    dec->add_option("--y", dargs.y_bits, "received word, e.g. 100100000000")->required();
    dec->add_option("--eps", dargs.eps, "channel crossover probability");
    dec->add_option("--snr-db", dargs.snr_db, "Eb/N0 in dB (alternative to --eps)");
    dec->add_option("--p", dargs.p, "QAOA layers");
    dec->add_option("--alpha", dargs.alpha, "weight-penalty coefficient");
    dec->add_option("--eta", dargs.eta, "parity-check coefficient");
    dec->add_option("--shots", dargs.shots, "measurement samples");
    dec->add_option("--max-iter", dargs.max_iter, "BP iteration cap");
    dec->add_option("--starts", dargs.starts, "optimizer restarts");
    dec->add_option("--seed", dargs.seed, "RNG seed");
    dec->add_option("--sign", dargs.sign, "main_text|appendix");
    dec->add_option("--gammas", dargs.gammas, "fixed gamma angles (skips optimization)");
    dec->add_option("--betas", dargs.betas, "fixed beta angles");
    dec->add_flag("--shot-marginals", dargs.shot_marginals,
                  "estimate QEBP marginals from shots instead of exactly");

    // optimize-params
    std::string opt_code = "reg_12_8", opt_syndrome, opt_sign = "main_text";
    int opt_p = 1, opt_starts = 10;
    std::uint64_t opt_seed = 1;
    double opt_alpha = 1.0, opt_eta = 2.0;
    auto* opt = app.add_subcommand("optimize-params", "variational parameter search");
    opt->add_option("--code", opt_code, "code id or file");
    opt->add_option("--syndrome", opt_syndrome, "syndrome bits, e.g. 10010000")->required();
    opt->add_option("--p", opt_p, "QAOA layers");
    opt->add_option("--starts", opt_starts, "random initializations");
    opt->add_option("--seed", opt_seed, "RNG seed");
    opt->add_option("--alpha", opt_alpha, "weight-penalty coefficient");
    opt->add_option("--eta", opt_eta, "parity-check coefficient");
    opt->add_option("--sign", opt_sign, "main_text|appendix");

    // rep-analytics
    RepArgs rargs;
    auto* rep = app.add_subcommand("rep-analytics",
                                   "exact repetition-code BLER (transfer-matrix method)");
    rep->add_option("--strategy", rargs.strategy,
                    "one_sample|post_selection|ranking|majority_vote")
        ->required();
    rep->add_option("--n-list", rargs.n_list, "code lengths, e.g. 3,5,7 or 3:23:2");
    rep->add_option("--snr", rargs.snr, "Eb/N0 grid in dB");
    rep->add_option("--rounds", rargs.rounds, "ranking rounds r");
    rep->add_option("--seed", rargs.seed, "seed for monte_carlo ranking");
    rep->add_option("--mode", rargs.mode, "expected|monte_carlo (ranking only)");
    rep->add_option("--gamma", rargs.gamma, "shared gamma (default: optimized)");
    rep->add_option("--beta", rargs.beta, "shared beta (default: optimized)");
    rep->add_option("--alpha", rargs.alpha, "weight-penalty coefficient");
    rep->add_option("--eta", rargs.eta, "parity-check coefficient");
    rep->add_flag("--include-zero-error", rargs.include_zero_error,
                  "include the constant error strings in the sums (non-standard variant)");

    // rounds
    std::string rounds_n = "3:11:1";
    double rounds_snr = 2.0;
    double rounds_gamma = std::numeric_limits<double>::quiet_NaN();
    double rounds_beta = std::numeric_limits<double>::quiet_NaN();
    double rounds_alpha = 1.0, rounds_eta = 2.0;
    auto* rnd = app.add_subcommand("rounds", "expected post-selection rounds and 2^(an+b) fit");
    rnd->add_option("--n-list", rounds_n, "code lengths");
    rnd->add_option("--snr", rounds_snr, "Eb/N0 in dB");
    rnd->add_option("--gamma", rounds_gamma, "shared gamma (default: optimized)");
    rnd->add_option("--beta", rounds_beta, "shared beta (default: optimized)");
    rnd->add_option("--alpha", rounds_alpha, "weight-penalty coefficient");
    rnd->add_option("--eta", rounds_eta, "parity-check coefficient");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep->parsed()) return cmd_bler_sweep(spec_path, out_csv, out_json, threads_override);
        if (dec->parsed()) return cmd_decode(dargs);
        if (opt->parsed())
            return cmd_optimize_params(opt_code, opt_syndrome, opt_p, opt_starts, opt_seed,
                                       opt_alpha, opt_eta, opt_sign);
        if (rep->parsed()) return cmd_rep_analytics(rargs);
        if (rnd->parsed())
            return cmd_rounds(rounds_n, rounds_snr, rounds_gamma, rounds_beta, rounds_alpha,
                              rounds_eta);
    } catch (const qebp::SpecError& e) {
        std::cerr << "spec error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "spec error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
