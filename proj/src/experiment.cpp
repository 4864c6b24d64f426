#include "qebp/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "qebp/channel.hpp"
#include "qebp/minsum.hpp"
#include "qebp/oracle.hpp"
#include "qebp/param_opt.hpp"
#include "qebp/qebp.hpp"
#include "qebp/rng.hpp"

namespace qebp {

std::string decoder_name(DecoderKind d) {
    switch (d) {
        case DecoderKind::bp: return "bp";
        case DecoderKind::qaoa: return "qaoa";
        case DecoderKind::qaoa_postsel: return "qaoa_postsel";
        case DecoderKind::qebp: return "qebp";
        case DecoderKind::qebp_1s: return "qebp_1s";
        case DecoderKind::ml: return "ml";
    }
    throw std::logic_error("decoder_name: bad enum");
}

DecoderKind decoder_from_name(const std::string& name) {
    std::string id = name;
    std::replace(id.begin(), id.end(), '-', '_');
    if (id == "bp") return DecoderKind::bp;
    if (id == "qaoa") return DecoderKind::qaoa;
    if (id == "qaoa_postsel") return DecoderKind::qaoa_postsel;
    if (id == "qebp") return DecoderKind::qebp;
    if (id == "qebp_1s") return DecoderKind::qebp_1s;
    if (id == "ml") return DecoderKind::ml;
    throw SpecError("unknown decoder '" + name + "'");
}

LinearCode load_code(const std::string& code_id) {
    if (code_id.size() > 6 && code_id.substr(code_id.size() - 6) == ".alist") {
        std::ifstream in(code_id);
        if (!in) throw std::runtime_error("cannot open code file " + code_id);
        std::stringstream buf;
        buf << in.rdbuf();
        return load_alist(buf.str());
    }
    if (code_id.size() > 5 && code_id.substr(code_id.size() - 5) == ".json") {
        std::ifstream in(code_id);
        if (!in) throw std::runtime_error("cannot open code file " + code_id);
        std::stringstream buf;
        buf << in.rdbuf();
        return code_from_json_text(buf.str());
    }
    return bundled_code(code_id);
}

QaoaSyndromeCache::QaoaSyndromeCache(const LinearCode& code, const ExperimentSpec& spec)
    : code_(code),
      p_(spec.p),
      alpha_(spec.alpha),
      eta_(spec.eta),
      sign_(spec.sign),
      param_mode_(spec.param_mode),
      fixed_gammas_(spec.fixed_gammas),
      fixed_betas_(spec.fixed_betas),
      opt_starts_(spec.opt_starts),
      master_seed_(spec.master_seed) {}

void QaoaSyndromeCache::check_compatible(const ExperimentSpec& spec) const {
    if (spec.p != p_ || spec.alpha != alpha_ || spec.eta != eta_ || spec.sign != sign_ ||
        spec.param_mode != param_mode_ || spec.fixed_gammas != fixed_gammas_ ||
        spec.fixed_betas != fixed_betas_ || spec.opt_starts != opt_starts_ ||
        spec.master_seed != master_seed_)
        throw SpecError("QaoaSyndromeCache: spec incompatible with cache parameters");
}

std::size_t QaoaSyndromeCache::size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return entries_.size();
}

const QaoaSyndromeCache::Entry& QaoaSyndromeCache::get(std::uint64_t syndrome_bits) {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = entries_.find(syndrome_bits);
        if (it != entries_.end()) return *it->second;
    }

    auto entry = std::make_unique<Entry>();
    Syndrome s(code_.num_checks());
    for (std::size_t j = 0; j < s.size(); ++j) s[j] = (syndrome_bits >> j) & 1u;

    if (param_mode_ == ParamMode::per_syndrome) {
        std::mt19937_64 rng(derive_seed(master_seed_, 0x7061726d5f6f7074ULL, syndrome_bits));
        OptResult opt = optimize_parameters(code_, s, p_, alpha_, eta_, sign_, opt_starts_, rng);
        entry->gammas = opt.gammas;
        entry->betas = opt.betas;
        entry->opt_cost = opt.cost;
    } else {
        if (fixed_gammas_.size() != static_cast<std::size_t>(p_) ||
            fixed_betas_.size() != static_cast<std::size_t>(p_))
            throw SpecError("fixed param mode requires p gammas and p betas");
        entry->gammas = fixed_gammas_;
        entry->betas = fixed_betas_;
        QaoaEvaluator eval(code_, s, alpha_, eta_, sign_);
        entry->opt_cost = eval.cost(entry->gammas, entry->betas);
    }

    QaoaConfig cfg;
    cfg.p = p_;
    cfg.gammas = entry->gammas;
    cfg.betas = entry->betas;
    cfg.alpha = alpha_;
    cfg.eta = eta_;
    cfg.sign = sign_;
    entry->dist = outcome_distribution(qaoa_state(code_, s, cfg));
    entry->marginals = marginal_error_probs(entry->dist, code_.n());
    entry->alias = std::make_unique<AliasTable>(entry->dist);

    const std::size_t size = entry->dist.size();
    for (std::uint64_t z = 0; z < size; ++z) {
        Word w = index_to_word(z, code_.n());
        if (code_.syndrome_bits(pack_bits_lsb(w)) == syndrome_bits)
            entry->coset.push_back(static_cast<std::uint32_t>(z));
    }

    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = entries_.emplace(syndrome_bits, std::move(entry));
    return *it->second;
}

std::pair<double, double> wilson_interval(int successes, int trials) {
    if (trials < 1) throw std::invalid_argument("wilson_interval: trials must be >= 1");
    const double z = 1.959963984540054;  // 95%
    const double n = trials;
    const double phat = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    double lo = std::max(0.0, center - half);
    double hi = std::min(1.0, center + half);
    if (successes == 0) lo = 0.0;
    if (successes == trials) hi = 1.0;
    return {lo, hi};
}

namespace {

struct TrialOutcome {
    bool block_error = false;
    int iterations = 0;
    double opt_cost = 0.0;
    bool postsel_fallback = false;
};

struct TrialContext {
    const ExperimentSpec& spec;
    const LinearCode& code;
    const MlDecoder* ml = nullptr;
    QaoaSyndromeCache* cache = nullptr;
    const std::vector<Word>* codewords = nullptr;  // for random-codeword transmission
    double epsilon = 0.0;
};

TrialOutcome run_trial(const TrialContext& ctx, std::mt19937_64& rng) {
    const std::size_t n = ctx.code.n();
    // The codeword draw is reserved whether or not it is used, so the channel
    // stream is identical with and without --random-codeword and the symmetry
    // comparison is exact per trial.
    const std::uint64_t codeword_entropy = rng();
    Word x(n, 0);
    if (ctx.spec.random_codeword) {
        const auto& cws = *ctx.codewords;
        x = cws[splitmix64(codeword_entropy) % cws.size()];
    }
    BscParams bsc{ctx.epsilon, false};
    const Word e = sample_bsc_error(n, bsc, rng);
    const Word y = word_xor(x, e);

    TrialOutcome out;
    switch (ctx.spec.decoder) {
        case DecoderKind::bp: {
            DecodeResult res = plain_bp_decode(ctx.code, y, ctx.epsilon, ctx.spec.max_iter);
            out.block_error = res.word != x;
            out.iterations = res.iterations;
            break;
        }
        case DecoderKind::ml: {
            out.block_error = ctx.ml->decode(y) != x;
            break;
        }
        case DecoderKind::qaoa: {
            const auto& ent = ctx.cache->get(ctx.code.syndrome_bits(pack_bits_lsb(y)));
            out.opt_cost = ent.opt_cost;
            const std::vector<int> counts = sample_counts(*ent.alias, ctx.spec.shots, rng);
            const Word ehat = index_to_word(top_ranked(counts), n);
            out.block_error = word_xor(y, ehat) != x;
            break;
        }
        case DecoderKind::qaoa_postsel: {
            const auto& ent = ctx.cache->get(ctx.code.syndrome_bits(pack_bits_lsb(y)));
            out.opt_cost = ent.opt_cost;
            const std::vector<int> counts = sample_counts(*ent.alias, ctx.spec.shots, rng);
            // Rank only strings whose correction lands on a codeword; those
            // are exactly the indices in the syndrome's coset.
            std::uint64_t best_idx = 0;
            int best_count = 0;
            for (std::uint32_t z : ent.coset) {
                if (counts[z] > best_count) {
                    best_count = counts[z];
                    best_idx = z;
                }
            }
            if (best_count == 0) {
                best_idx = top_ranked(counts);
                out.postsel_fallback = true;
            }
            const Word ehat = index_to_word(best_idx, n);
            out.block_error = word_xor(y, ehat) != x;
            break;
        }
        case DecoderKind::qebp: {
            const auto& ent = ctx.cache->get(ctx.code.syndrome_bits(pack_bits_lsb(y)));
            out.opt_cost = ent.opt_cost;
            std::vector<double> marginals;
            if (ctx.spec.shot_marginals) {
                const std::vector<int> counts =
                    sample_counts(*ent.alias, ctx.spec.shots, rng);
                marginals.assign(n, 0.0);
                for (std::size_t z = 0; z < counts.size(); ++z) {
                    if (!counts[z]) continue;
                    for (std::size_t i = 0; i < n; ++i)
                        if ((z >> (n - 1 - i)) & 1u)
                            marginals[i] += static_cast<double>(counts[z]);
                }
                for (double& m : marginals) m /= ctx.spec.shots;
            } else {
                marginals = ent.marginals;
            }
            std::vector<double> eps(n);
            for (std::size_t i = 0; i < n; ++i)
                eps[i] = combined_crossover(ctx.epsilon, marginals[i]);
            DecodeResult res = decode(ctx.code, y, eps, ctx.spec.max_iter);
            out.block_error = res.word != x;
            out.iterations = res.iterations;
            break;
        }
        case DecoderKind::qebp_1s: {
            const auto& ent = ctx.cache->get(ctx.code.syndrome_bits(pack_bits_lsb(y)));
            out.opt_cost = ent.opt_cost;
            const std::vector<int> counts = sample_counts(*ent.alias, ctx.spec.shots, rng);
            const Word ehat = index_to_word(top_ranked(counts), n);
            std::vector<double> eps(n);
            for (std::size_t i = 0; i < n; ++i)
                eps[i] = combined_crossover(ctx.epsilon, static_cast<double>(ehat[i]));
            DecodeResult res = decode(ctx.code, y, eps, ctx.spec.max_iter);
            out.block_error = res.word != x;
            out.iterations = res.iterations;
            break;
        }
    }
    return out;
}

void validate_spec(const ExperimentSpec& spec) {
    if (spec.trials < 1) throw SpecError("trials must be >= 1");
    if (spec.snr_grid_db.empty()) throw SpecError("snr_grid_db must be nonempty");
    if (spec.p < 1) throw SpecError("p must be >= 1");
    if (spec.shots < 1) throw SpecError("shots must be >= 1");
    if (spec.max_iter < 1) throw SpecError("max_iter must be >= 1");
    if (spec.opt_starts < 1) throw SpecError("opt_starts must be >= 1");
    if (spec.param_mode == ParamMode::fixed &&
        (spec.fixed_gammas.size() != static_cast<std::size_t>(spec.p) ||
         spec.fixed_betas.size() != static_cast<std::size_t>(spec.p)))
        throw SpecError("fixed param mode requires p gammas and p betas");
}

bool decoder_uses_qaoa(DecoderKind d) {
    return d == DecoderKind::qaoa || d == DecoderKind::qaoa_postsel || d == DecoderKind::qebp ||
           d == DecoderKind::qebp_1s;
}

ExperimentRecord run_bler_sweep_with(const ExperimentSpec& spec, QaoaSyndromeCache& cache,
                                     const LinearCode& code) {
    const auto t0 = std::chrono::steady_clock::now();

    std::optional<MlDecoder> ml;
    std::vector<Word> codewords;
    if (spec.decoder == DecoderKind::ml) ml.emplace(code);
    if (spec.random_codeword) codewords = MlDecoder(code).codewords();

    ExperimentRecord record;
    record.spec = spec;

    // Fixed chunk partition: per-chunk partial sums are combined in chunk
    // order, so results do not depend on the number of worker threads.
    constexpr int kChunks = 64;
    struct Partial {
        int errors = 0;
        long long iters = 0;
        double opt_cost = 0.0;
        int fallbacks = 0;
    };

    for (std::size_t si = 0; si < spec.snr_grid_db.size(); ++si) {
        const BscParams bsc = crossover_from_snr({spec.snr_grid_db[si]});
        TrialContext ctx{spec, code, ml ? &*ml : nullptr, &cache,
                         spec.random_codeword ? &codewords : nullptr, bsc.epsilon};

        std::vector<Partial> partials(kChunks);
        std::atomic<int> next_chunk{0};
        auto worker = [&] {
            for (;;) {
                const int c = next_chunk.fetch_add(1);
                if (c >= kChunks) return;
                const long long lo = static_cast<long long>(spec.trials) * c / kChunks;
                const long long hi = static_cast<long long>(spec.trials) * (c + 1) / kChunks;
                Partial part;
                for (long long t = lo; t < hi; ++t) {
                    std::mt19937_64 rng(
                        derive_seed(spec.master_seed, si, static_cast<std::uint64_t>(t)));
                    const TrialOutcome out = run_trial(ctx, rng);
                    part.errors += out.block_error;
                    part.iters += out.iterations;
                    part.opt_cost += out.opt_cost;
                    part.fallbacks += out.postsel_fallback;
                }
                partials[c] = part;
            }
        };

        const int threads = std::max(1, spec.threads);
        if (threads == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (int w = 0; w < threads; ++w) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }

        Partial total;
        for (const Partial& p : partials) {
            total.errors += p.errors;
            total.iters += p.iters;
            total.opt_cost += p.opt_cost;
            total.fallbacks += p.fallbacks;
        }

        SnrPointResult point;
        point.eb_n0_db = spec.snr_grid_db[si];
        point.epsilon = bsc.epsilon;
        point.block_errors = total.errors;
        point.bler = static_cast<double>(total.errors) / spec.trials;
        std::tie(point.bler_lo, point.bler_hi) = wilson_interval(total.errors, spec.trials);
        point.mean_iters = static_cast<double>(total.iters) / spec.trials;
        point.mean_opt_cost =
            decoder_uses_qaoa(spec.decoder) ? total.opt_cost / spec.trials : 0.0;
        point.postsel_fallbacks = total.fallbacks;
        record.points.push_back(point);
    }

    record.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return record;
}

}  // namespace

ExperimentRecord run_bler_sweep(const ExperimentSpec& spec) {
    validate_spec(spec);
    const LinearCode code = load_code(spec.code_id);
    QaoaSyndromeCache cache(code, spec);
    return run_bler_sweep_with(spec, cache, code);
}

ExperimentRecord run_bler_sweep(const ExperimentSpec& spec, QaoaSyndromeCache& cache) {
    validate_spec(spec);
    cache.check_compatible(spec);
    const LinearCode code = load_code(spec.code_id);
    return run_bler_sweep_with(spec, cache, code);
}

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string to_csv(const ExperimentRecord& record) {
    std::ostringstream out;
    out << "code,decoder,p,eb_n0_db,bler,bler_lo,bler_hi,mean_iters,trials,seed\n";
    for (const auto& pt : record.points) {
        out << record.spec.code_id << "," << decoder_name(record.spec.decoder) << ","
            << record.spec.p << "," << fmt_double(pt.eb_n0_db) << "," << fmt_double(pt.bler)
            << "," << fmt_double(pt.bler_lo) << "," << fmt_double(pt.bler_hi) << ","
            << fmt_double(pt.mean_iters) << "," << record.spec.trials << ","
            << record.spec.master_seed << "\n";
    }
    return out.str();
}

void emit_csv(const ExperimentRecord& record, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << to_csv(record);
    if (!out) throw std::runtime_error("write failed for " + path);
}

namespace {

nlohmann::json spec_to_json(const ExperimentSpec& s) {
    nlohmann::json j;
    j["code_id"] = s.code_id;
    j["decoder"] = decoder_name(s.decoder);
    j["p"] = s.p;
    j["alpha"] = s.alpha;
    j["eta"] = s.eta;
    j["shots"] = s.shots;
    j["snr_grid_db"] = s.snr_grid_db;
    j["trials"] = s.trials;
    j["max_iter"] = s.max_iter;
    j["master_seed"] = s.master_seed;
    j["param_mode"] = s.param_mode == ParamMode::per_syndrome ? "per_syndrome" : "fixed";
    j["fixed_gammas"] = s.fixed_gammas;
    j["fixed_betas"] = s.fixed_betas;
    j["sign"] = s.sign == SignConvention::main_text ? "main_text" : "appendix";
    j["random_codeword"] = s.random_codeword;
    j["opt_starts"] = s.opt_starts;
    j["threads"] = s.threads;
    j["shot_marginals"] = s.shot_marginals;
    return j;
}

ExperimentSpec spec_from_json(const nlohmann::json& j) {
    ExperimentSpec s;
    try {
        if (j.contains("code_id")) s.code_id = j.at("code_id").get<std::string>();
        if (j.contains("decoder")) s.decoder = decoder_from_name(j.at("decoder").get<std::string>());
        if (j.contains("p")) s.p = j.at("p").get<int>();
        if (j.contains("alpha")) s.alpha = j.at("alpha").get<double>();
        if (j.contains("eta")) s.eta = j.at("eta").get<double>();
        if (j.contains("shots")) s.shots = j.at("shots").get<int>();
        if (j.contains("snr_grid_db")) s.snr_grid_db = j.at("snr_grid_db").get<std::vector<double>>();
        if (j.contains("trials")) s.trials = j.at("trials").get<int>();
        if (j.contains("max_iter")) s.max_iter = j.at("max_iter").get<int>();
        if (j.contains("master_seed")) s.master_seed = j.at("master_seed").get<std::uint64_t>();
        if (j.contains("param_mode")) {
            const std::string m = j.at("param_mode").get<std::string>();
            if (m == "per_syndrome")
                s.param_mode = ParamMode::per_syndrome;
            else if (m == "fixed")
                s.param_mode = ParamMode::fixed;
            else
                throw SpecError("unknown param_mode '" + m + "'");
        }
        if (j.contains("fixed_gammas")) s.fixed_gammas = j.at("fixed_gammas").get<std::vector<double>>();
        if (j.contains("fixed_betas")) s.fixed_betas = j.at("fixed_betas").get<std::vector<double>>();
        if (j.contains("sign")) {
            const std::string m = j.at("sign").get<std::string>();
            if (m == "main_text")
                s.sign = SignConvention::main_text;
            else if (m == "appendix")
                s.sign = SignConvention::appendix;
            else
                throw SpecError("unknown sign convention '" + m + "'");
        }
        if (j.contains("random_codeword")) s.random_codeword = j.at("random_codeword").get<bool>();
        if (j.contains("opt_starts")) s.opt_starts = j.at("opt_starts").get<int>();
        if (j.contains("threads")) s.threads = j.at("threads").get<int>();
        if (j.contains("shot_marginals")) s.shot_marginals = j.at("shot_marginals").get<bool>();
    } catch (const nlohmann::json::exception& e) {
        throw SpecError(std::string("malformed experiment spec: ") + e.what());
    }
    return s;
}

}  // namespace

std::string spec_to_json_text(const ExperimentSpec& spec) { return spec_to_json(spec).dump(2); }

ExperimentSpec spec_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SpecError(std::string("spec JSON parse error: ") + e.what());
    }
    return spec_from_json(j);
}

std::string to_json_text(const ExperimentRecord& record) {
    nlohmann::json j;
    j["spec"] = spec_to_json(record.spec);
    j["version"] = record.version;
    j["wall_seconds"] = record.wall_seconds;
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : record.points) {
        nlohmann::json pj;
        pj["eb_n0_db"] = p.eb_n0_db;
        pj["epsilon"] = p.epsilon;
        pj["bler"] = p.bler;
        pj["bler_lo"] = p.bler_lo;
        pj["bler_hi"] = p.bler_hi;
        pj["mean_iters"] = p.mean_iters;
        pj["mean_opt_cost"] = p.mean_opt_cost;
        pj["block_errors"] = p.block_errors;
        pj["postsel_fallbacks"] = p.postsel_fallbacks;
        pts.push_back(pj);
    }
    j["points"] = pts;
    return j.dump(2);
}

ExperimentRecord record_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(std::string("record JSON parse error: ") + e.what());
    }
    ExperimentRecord r;
    r.spec = spec_from_json(j.at("spec"));
    r.version = j.at("version").get<std::string>();
    r.wall_seconds = j.at("wall_seconds").get<double>();
    for (const auto& pj : j.at("points")) {
        SnrPointResult p;
        p.eb_n0_db = pj.at("eb_n0_db").get<double>();
        p.epsilon = pj.at("epsilon").get<double>();
        p.bler = pj.at("bler").get<double>();
        p.bler_lo = pj.at("bler_lo").get<double>();
        p.bler_hi = pj.at("bler_hi").get<double>();
        p.mean_iters = pj.at("mean_iters").get<double>();
        p.mean_opt_cost = pj.at("mean_opt_cost").get<double>();
        p.block_errors = pj.at("block_errors").get<int>();
        p.postsel_fallbacks = pj.at("postsel_fallbacks").get<int>();
        r.points.push_back(p);
    }
    return r;
}

void emit_json(const ExperimentRecord& record, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << to_json_text(record) << "\n";
    if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace qebp
