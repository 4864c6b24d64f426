#include "qebp/qaoa.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "qebp/rng.hpp"

namespace qebp {

std::uint64_t word_to_index(const Word& w) {
    std::uint64_t idx = 0;
    for (auto b : w) idx = (idx << 1) | b;
    return idx;
}

Word index_to_word(std::uint64_t idx, std::size_t n) {
    Word w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = (idx >> (n - 1 - i)) & 1u;
    return w;
}

namespace {

void check_capacity(std::size_t n) {
    if (n > kMaxQubits)
        throw std::length_error("statevector capacity exceeded (n > 24)");
}

// Row mask in index space: variable i contributes bit (n-1-i).
std::uint64_t index_mask(const LinearCode& code, std::size_t check) {
    std::uint64_t m = 0;
    for (int i : code.check_adjacency()[check])
        m |= std::uint64_t{1} << (code.n() - 1 - static_cast<std::size_t>(i));
    return m;
}

}  // namespace

std::vector<double> cost_diagonal(const LinearCode& code, const Syndrome& s, double alpha,
                                  double eta, SignConvention sign) {
    const std::size_t n = code.n();
    check_capacity(n);
    if (s.size() != code.num_checks())
        throw std::invalid_argument("cost_diagonal: syndrome length != number of checks");

    const std::size_t size = std::size_t{1} << n;
    const double sigma = sign == SignConvention::main_text ? -1.0 : 1.0;

    std::vector<std::uint64_t> masks(code.num_checks());
    std::vector<double> check_sign(code.num_checks());
    for (std::size_t j = 0; j < code.num_checks(); ++j) {
        masks[j] = index_mask(code, j);
        check_sign[j] = s[j] ? -1.0 : 1.0;
    }

    std::vector<double> diag(size);
    for (std::uint64_t z = 0; z < size; ++z) {
        double c = alpha * (static_cast<double>(n) - 2.0 * std::popcount(z));
        for (std::size_t j = 0; j < masks.size(); ++j) {
            const double parity = (std::popcount(z & masks[j]) & 1) ? -1.0 : 1.0;
            c += eta * check_sign[j] * parity;
        }
        diag[z] = sigma * c;
    }
    return diag;
}

void apply_mixer(Statevector& state, std::size_t n, std::size_t qubit, double beta) {
    const std::size_t stride = std::size_t{1} << (n - 1 - qubit);
    const double c = std::cos(beta), s = std::sin(beta);
    for (std::size_t base = 0; base < state.size(); base += 2 * stride) {
        for (std::size_t off = 0; off < stride; ++off) {
            std::complex<double>& a0 = state[base + off];
            std::complex<double>& a1 = state[base + off + stride];
            const double x0 = a0.real(), y0 = a0.imag();
            const double x1 = a1.real(), y1 = a1.imag();
            // (c I - i s X) acting on (a0, a1)
            a0 = {c * x0 + s * y1, c * y0 - s * x1};
            a1 = {c * x1 + s * y0, c * y1 - s * x0};
        }
    }
}

Statevector qaoa_state(const LinearCode& code, const Syndrome& s, const QaoaConfig& cfg) {
    if (cfg.p < 1) throw std::invalid_argument("qaoa_state: p must be >= 1");
    if (cfg.gammas.size() != static_cast<std::size_t>(cfg.p) ||
        cfg.betas.size() != static_cast<std::size_t>(cfg.p))
        throw std::invalid_argument("qaoa_state: angle vectors must have length p");
    QaoaEvaluator eval(code, s, cfg.alpha, cfg.eta, cfg.sign);
    return eval.state(cfg.gammas, cfg.betas);
}

QaoaEvaluator::QaoaEvaluator(const LinearCode& code, const Syndrome& s, double alpha, double eta,
                             SignConvention sign)
    : n_(code.n()), diag_(cost_diagonal(code, s, alpha, eta, sign)) {
    check_capacity(n_);
    double cmin = diag_[0], cmax = diag_[0];
    integral_ = true;
    for (double c : diag_) {
        cmin = std::min(cmin, c);
        cmax = std::max(cmax, c);
        if (integral_ && std::abs(c - std::llround(c)) > 1e-12) integral_ = false;
    }
    if (integral_ && cmax - cmin < 16384.0) {
        diag_lo_ = std::llround(cmin);
        phase_index_.resize(diag_.size());
        for (std::size_t z = 0; z < diag_.size(); ++z)
            phase_index_[z] = static_cast<std::int32_t>(std::llround(diag_[z]) - diag_lo_);
        phase_table_.resize(static_cast<std::size_t>(std::llround(cmax) - diag_lo_) + 1);
    } else {
        integral_ = false;
    }
    work_.resize(diag_.size());
}

void QaoaEvaluator::run(const std::vector<double>& gammas, const std::vector<double>& betas) const {
    if (gammas.size() != betas.size() || gammas.empty())
        throw std::invalid_argument("QaoaEvaluator: angle vectors must be nonempty, equal length");
    const std::size_t size = diag_.size();
    const std::complex<double> init(1.0 / std::sqrt(static_cast<double>(size)), 0.0);
    std::fill(work_.begin(), work_.end(), init);
    for (std::size_t layer = 0; layer < gammas.size(); ++layer) {
        const double gamma = gammas[layer];
        if (integral_) {
            for (std::size_t t = 0; t < phase_table_.size(); ++t)
                phase_table_[t] =
                    std::polar(1.0, -gamma * static_cast<double>(diag_lo_ + static_cast<long long>(t)));
            for (std::size_t z = 0; z < size; ++z) work_[z] *= phase_table_[phase_index_[z]];
        } else {
            for (std::size_t z = 0; z < size; ++z) work_[z] *= std::polar(1.0, -gamma * diag_[z]);
        }
        for (std::size_t q = 0; q < n_; ++q) apply_mixer(work_, n_, q, betas[layer]);
    }
}

Statevector QaoaEvaluator::state(const std::vector<double>& gammas,
                                 const std::vector<double>& betas) const {
    run(gammas, betas);
    return work_;
}

double QaoaEvaluator::cost(const std::vector<double>& gammas,
                           const std::vector<double>& betas) const {
    run(gammas, betas);
    double sum = 0.0;
    for (std::size_t z = 0; z < work_.size(); ++z) sum += std::norm(work_[z]) * diag_[z];
    return sum;
}

std::vector<double> outcome_distribution(const Statevector& state) {
    std::vector<double> probs(state.size());
    for (std::size_t z = 0; z < state.size(); ++z) probs[z] = std::norm(state[z]);
    return probs;
}

namespace {

// Pairwise (binary-tree) summation: summing 2^k equal values is exact, so a
// uniform distribution yields marginals of exactly 1/2.
double pairwise_sum(const double* v, std::size_t len) {
    if (len == 0) return 0.0;
    if (len == 1) return v[0];
    if (len == 2) return v[0] + v[1];
    const std::size_t half = len / 2;
    return pairwise_sum(v, half) + pairwise_sum(v + half, len - half);
}

}  // namespace

std::vector<double> marginal_error_probs(const std::vector<double>& dist, std::size_t n) {
    if (dist.size() != (std::size_t{1} << n))
        throw std::invalid_argument("marginal_error_probs: size mismatch");
    const double total = pairwise_sum(dist.data(), dist.size());
    std::vector<double> eps(n, 0.0);
    std::vector<double> blocks;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t stride = std::size_t{1} << (n - 1 - i);
        blocks.clear();
        for (std::size_t base = stride; base < dist.size(); base += 2 * stride)
            blocks.push_back(pairwise_sum(dist.data() + base, stride));
        eps[i] = pairwise_sum(blocks.data(), blocks.size()) / total;
    }
    return eps;
}

double cost_expectation(const Statevector& state, const std::vector<double>& diag) {
    if (state.size() != diag.size())
        throw std::invalid_argument("cost_expectation: dimension mismatch");
    double sum = 0.0;
    for (std::size_t z = 0; z < state.size(); ++z) sum += std::norm(state[z]) * diag[z];
    return sum;
}

AliasTable::AliasTable(const std::vector<double>& probs) {
    const std::size_t n = probs.size();
    if (n == 0) throw std::invalid_argument("AliasTable: empty distribution");
    double total = 0.0;
    for (double p : probs) total += p;
    if (total <= 0.0) throw std::invalid_argument("AliasTable: zero-mass distribution");

    prob_.assign(n, 0.0);
    alias_.assign(n, 0);
    std::vector<double> scaled(n);
    for (std::size_t i = 0; i < n; ++i) scaled[i] = probs[i] * static_cast<double>(n) / total;

    std::vector<std::uint32_t> small, large;
    for (std::size_t i = 0; i < n; ++i)
        (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));

    while (!small.empty() && !large.empty()) {
        const std::uint32_t s = small.back();
        small.pop_back();
        const std::uint32_t l = large.back();
        prob_[s] = scaled[s];
        alias_[s] = l;
        scaled[l] -= 1.0 - scaled[s];
        if (scaled[l] < 1.0) {
            large.pop_back();
            small.push_back(l);
        }
    }
    for (std::uint32_t i : large) prob_[i] = 1.0;
    for (std::uint32_t i : small) prob_[i] = 1.0;
}

std::size_t AliasTable::sample(std::mt19937_64& rng) const {
    const double u = uniform_unit(rng) * static_cast<double>(prob_.size());
    std::size_t i = static_cast<std::size_t>(u);
    if (i >= prob_.size()) i = prob_.size() - 1;
    return (u - static_cast<double>(i)) < prob_[i] ? i : alias_[i];
}

std::vector<int> sample_counts(const AliasTable& table, int shots, std::mt19937_64& rng) {
    if (shots < 1) throw std::invalid_argument("sample_counts: shots must be >= 1");
    std::vector<int> counts(table.size(), 0);
    for (int t = 0; t < shots; ++t) ++counts[table.sample(rng)];
    return counts;
}

std::vector<int> sample_outcomes(const std::vector<double>& dist, int shots, std::mt19937_64& rng) {
    return sample_counts(AliasTable(dist), shots, rng);
}

std::uint64_t top_ranked(const std::vector<int>& counts) {
    if (counts.empty()) throw std::domain_error("top_ranked: empty counts");
    std::size_t best = 0;
    for (std::size_t i = 1; i < counts.size(); ++i)
        if (counts[i] > counts[best]) best = i;
    return best;
}

}  // namespace qebp
