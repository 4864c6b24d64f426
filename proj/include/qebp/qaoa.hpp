#ifndef QEBP_QAOA_HPP
#define QEBP_QAOA_HPP

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "qebp/gf2.hpp"

namespace qebp {

// The main text's cost Hamiltonian carries leading minus signs; the
// repetition-code form and its transfer-matrix derivation carry plus signs.
// Both are supported; general decoding defaults to main_text.
enum class SignConvention { main_text, appendix };

struct QaoaConfig {
    int p = 1;
    std::vector<double> gammas;  // length p
    std::vector<double> betas;   // length p
    double alpha = 1.0;
    double eta = 2.0;
    SignConvention sign = SignConvention::main_text;
    int shots = 10000;
};

using Statevector = std::vector<std::complex<double>>;

// Basis-state index convention: word bit 0 (the paper's bit 1) is the most
// significant index bit, so printed bitstrings read left to right.
inline constexpr std::size_t kMaxQubits = 24;

std::uint64_t word_to_index(const Word& w);
Word index_to_word(std::uint64_t idx, std::size_t n);

// Diagonal of the cost operator: entry for basis state z is
//   sign * [ eta * sum_j (1-2 s_j) (-1)^{parity_j(z)} + alpha * sum_i (-1)^{z_i} ]
// with sign = -1 for main_text and +1 for appendix.
std::vector<double> cost_diagonal(const LinearCode& code, const Syndrome& s, double alpha,
                                  double eta, SignConvention sign);

// p layers of exp(-i beta B) exp(-i gamma C) applied to |+>^n.
Statevector qaoa_state(const LinearCode& code, const Syndrome& s, const QaoaConfig& cfg);

// exp(-i beta X) on one qubit of the state, in place.
void apply_mixer(Statevector& state, std::size_t n, std::size_t qubit, double beta);

std::vector<double> outcome_distribution(const Statevector& state);

// eps_i = sum over outcomes with bit i set.
std::vector<double> marginal_error_probs(const std::vector<double>& dist, std::size_t n);

double cost_expectation(const Statevector& state, const std::vector<double>& diag);

// Repeated-evaluation engine for one (code, syndrome, alpha, eta, sign)
// instance: precomputes the cost diagonal and its integer phase plan so the
// optimizer's inner loop avoids per-call trigonometry. Not thread-safe;
// create one per thread.
class QaoaEvaluator {
public:
    QaoaEvaluator(const LinearCode& code, const Syndrome& s, double alpha, double eta,
                  SignConvention sign);

    std::size_t n() const { return n_; }
    const std::vector<double>& diagonal() const { return diag_; }

    Statevector state(const std::vector<double>& gammas, const std::vector<double>& betas) const;
    double cost(const std::vector<double>& gammas, const std::vector<double>& betas) const;

private:
    void run(const std::vector<double>& gammas, const std::vector<double>& betas) const;

    std::size_t n_ = 0;
    std::vector<double> diag_;
    bool integral_ = false;
    long long diag_lo_ = 0;
    std::vector<std::int32_t> phase_index_;
    mutable Statevector work_;
    mutable std::vector<std::complex<double>> phase_table_;
};

// O(1)-per-draw sampler over a fixed distribution (Vose alias method).
class AliasTable {
public:
    explicit AliasTable(const std::vector<double>& probs);
    std::size_t sample(std::mt19937_64& rng) const;
    std::size_t size() const { return prob_.size(); }

private:
    std::vector<double> prob_;
    std::vector<std::uint32_t> alias_;
};

// Multinomial counts of `shots` draws.
std::vector<int> sample_counts(const AliasTable& table, int shots, std::mt19937_64& rng);
std::vector<int> sample_outcomes(const std::vector<double>& dist, int shots, std::mt19937_64& rng);

// Index of the maximum count; ties break toward the smaller basis-state index.
std::uint64_t top_ranked(const std::vector<int>& counts);

}  // namespace qebp

#endif
