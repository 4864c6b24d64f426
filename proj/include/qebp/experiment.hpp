#ifndef QEBP_EXPERIMENT_HPP
#define QEBP_EXPERIMENT_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "qebp/gf2.hpp"
#include "qebp/qaoa.hpp"

namespace qebp {

inline constexpr const char* kVersion = "0.1.0";

enum class DecoderKind { bp, qaoa, qaoa_postsel, qebp, qebp_1s, ml };
enum class ParamMode { per_syndrome, fixed };

std::string decoder_name(DecoderKind d);
DecoderKind decoder_from_name(const std::string& name);

struct ExperimentSpec {
    std::string code_id = "reg_12_8";
    DecoderKind decoder = DecoderKind::bp;
    int p = 1;
    double alpha = 1.0;
    double eta = 2.0;
    int shots = 10000;
    std::vector<double> snr_grid_db;
    int trials = 10000;
    int max_iter = 50;
    std::uint64_t master_seed = 1;
    ParamMode param_mode = ParamMode::per_syndrome;
    std::vector<double> fixed_gammas, fixed_betas;
    SignConvention sign = SignConvention::main_text;
    bool random_codeword = false;
    int opt_starts = 10;
    int threads = 1;
    // qebp decoder: estimate the per-bit correction probabilities from
    // `shots` samples instead of the exact marginals.
    bool shot_marginals = false;

    bool operator==(const ExperimentSpec&) const = default;
};

struct SnrPointResult {
    double eb_n0_db = 0.0;
    double epsilon = 0.0;
    double bler = 0.0, bler_lo = 0.0, bler_hi = 0.0;
    double mean_iters = 0.0;
    double mean_opt_cost = 0.0;
    int block_errors = 0;
    int postsel_fallbacks = 0;

    bool operator==(const SnrPointResult&) const = default;
};

struct ExperimentRecord {
    ExperimentSpec spec;
    std::vector<SnrPointResult> points;
    double wall_seconds = 0.0;
    std::string version = kVersion;

    bool operator==(const ExperimentRecord&) const = default;
};

// Thrown for malformed specs; the CLI maps it to exit code 2.
struct SpecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Per-syndrome QAOA state shared across trials (and across sweeps that agree
// on code/p/alpha/eta/sign/seed/param_mode): resolved angles, outcome
// distribution, exact marginals and an alias sampler. Entries are built
// lazily, keyed by packed syndrome bits, with the optimizer seeded from
// (master_seed, syndrome) so results are independent of trial order.
class QaoaSyndromeCache {
public:
    QaoaSyndromeCache(const LinearCode& code, const ExperimentSpec& spec);

    struct Entry {
        std::vector<double> gammas, betas;
        double opt_cost = 0.0;
        std::vector<double> dist;
        std::vector<double> marginals;
        std::unique_ptr<AliasTable> alias;
        std::vector<std::uint32_t> coset;  // indices z with syndrome(z) == key, ascending
    };

    const Entry& get(std::uint64_t syndrome_bits);
    void check_compatible(const ExperimentSpec& spec) const;
    std::size_t size() const;

private:
    const LinearCode& code_;
    int p_;
    double alpha_, eta_;
    SignConvention sign_;
    ParamMode param_mode_;
    std::vector<double> fixed_gammas_, fixed_betas_;
    int opt_starts_;
    std::uint64_t master_seed_;

    mutable std::mutex mu_;
    std::map<std::uint64_t, std::unique_ptr<Entry>> entries_;
};

std::pair<double, double> wilson_interval(int successes, int trials);

ExperimentRecord run_bler_sweep(const ExperimentSpec& spec);
ExperimentRecord run_bler_sweep(const ExperimentSpec& spec, QaoaSyndromeCache& cache);

std::string to_csv(const ExperimentRecord& record);
void emit_csv(const ExperimentRecord& record, const std::string& path);

std::string to_json_text(const ExperimentRecord& record);
ExperimentRecord record_from_json_text(const std::string& text);
void emit_json(const ExperimentRecord& record, const std::string& path);

std::string spec_to_json_text(const ExperimentSpec& spec);
ExperimentSpec spec_from_json_text(const std::string& text);

LinearCode load_code(const std::string& code_id);

}  // namespace qebp

#endif
