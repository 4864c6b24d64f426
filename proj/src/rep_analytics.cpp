#include "qebp/rep_analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qebp/optimize.hpp"
#include "qebp/qaoa.hpp"
#include "qebp/rng.hpp"

namespace qebp {

namespace {

constexpr std::size_t kMaxSumLength = 23;  // 2^n sweep guard
const c64 kI{0.0, 1.0};

void check_sum_guard(std::size_t n) {
    if (n < 2) throw std::domain_error("repetition analytics: n must be >= 2");
    if (n > kMaxSumLength) throw std::length_error("repetition analytics: n > 23");
}

// exp(-i (-1)^{e_n} alpha gamma Z) applied to the boundary contraction.
std::array<c64, 2> end_rotation(int e_last, double alpha, double gamma) {
    const double phase = (e_last ? -1.0 : 1.0) * alpha * gamma;
    return {std::exp(-kI * phase), std::exp(kI * phase)};
}

}  // namespace

TransferMatrix transfer_matrix(int e_bit, double alpha, double eta, double gamma, double beta) {
    const double sgn = e_bit ? -1.0 : 1.0;
    const c64 rt = std::sqrt(c64(0.0, -0.5 * std::sin(2.0 * beta)));
    TransferMatrix t;
    t.m00 = std::cos(beta) * std::exp(-kI * gamma * (eta + sgn * alpha));
    t.m01 = rt * std::exp(-kI * gamma * (-eta - sgn * alpha));
    t.m10 = rt * std::exp(-kI * gamma * (-eta + sgn * alpha));
    t.m11 = -kI * std::sin(beta) * std::exp(-kI * gamma * (eta - sgn * alpha));
    return t;
}

std::array<c64, 2> boundary_vector(double beta) {
    return {std::sqrt(c64(std::cos(beta), 0.0)), std::sqrt(c64(0.0, -std::sin(beta)))};
}

std::pair<c64, c64> transfer_eigenvalues(int e_bit, double alpha, double eta, double gamma,
                                         double beta) {
    const TransferMatrix t = transfer_matrix(e_bit, alpha, eta, gamma, beta);
    const c64 tr = t.trace(), det = t.det();
    const c64 disc = std::sqrt(tr * tr - 4.0 * det);
    c64 l1 = 0.5 * (tr + disc), l2 = 0.5 * (tr - disc);
    const double a1 = std::abs(l1), a2 = std::abs(l2);
    if (a2 > a1 || (a2 == a1 && l2.real() > l1.real())) std::swap(l1, l2);
    return {l1, l2};
}

std::pair<c64, c64> printed_eigenvalue_formula(int e_bit, double alpha, double eta, double gamma,
                                               double beta) {
    const double sgn = e_bit ? -1.0 : 1.0;
    const c64 first = 0.5 *
                      (std::cos(alpha * gamma) * std::exp(-kI * beta) -
                       kI * sgn * std::sin(alpha * gamma) * std::exp(kI * beta)) *
                      std::exp(-kI * gamma * eta);
    const c64 radicand =
        -2.0 * kI * std::sin(2.0 * beta) * std::exp(kI * gamma * eta) +
        (std::cos(alpha * gamma) * std::cos(alpha * gamma) * std::exp(2.0 * kI * beta) -
         std::sin(alpha * gamma) * std::sin(alpha * gamma) * std::exp(-2.0 * kI * beta) -
         kI * sgn * std::sin(alpha * gamma)) *
            std::exp(-kI * gamma * eta);
    const c64 sq = 0.5 * std::sqrt(radicand);
    return {first + sq, first - sq};
}

double success_probability(std::size_t n, const Word& e, const RepParams& params) {
    check_sum_guard(n);
    if (e.size() != n) throw std::invalid_argument("success_probability: |e| != n");
    const std::array<c64, 2> u = boundary_vector(params.beta);
    std::array<c64, 2> v = u;
    for (std::size_t k = 0; k + 1 < n; ++k)
        v = transfer_matrix(e[k], params.alpha, params.eta, params.gamma, params.beta).apply(v);
    const std::array<c64, 2> rot = end_rotation(e[n - 1], params.alpha, params.gamma);
    const c64 amp = u[0] * rot[0] * v[0] + u[1] * rot[1] * v[1];
    return std::norm(amp) / std::ldexp(1.0, static_cast<int>(n));
}

namespace {

// One pass over all 2^n error strings, visiting P(e | s(e)) together with the
// complement string's probability. Bond products are carried down a DFS over
// the bits, so the whole sweep costs O(2^n) matrix applications.
struct RepSums {
    double one_sample = 0.0;        // sum P(w) (1 - P(e)), constants excluded
    double post_selection = 0.0;    // sum P(w) P(e') / (P(e)+P(e')), constants excluded
    double p_termination = 0.0;     // sum over all e of P(w) (P(e)+P(e'))
    double one_sample_all = 0.0;    // including the constant strings
    double post_selection_all = 0.0;
    long skipped = 0;               // post-selection terms with vanishing denominator
};

class RepSweep {
public:
    RepSweep(std::size_t n, double eps, const RepParams& params) : n_(n), params_(params) {
        t_[0] = transfer_matrix(0, params.alpha, params.eta, params.gamma, params.beta);
        t_[1] = transfer_matrix(1, params.alpha, params.eta, params.gamma, params.beta);
        u_ = boundary_vector(params.beta);
        rot_[0] = end_rotation(0, params.alpha, params.gamma);
        rot_[1] = end_rotation(1, params.alpha, params.gamma);
        pw_.resize(n + 1);
        for (std::size_t w = 0; w <= n; ++w)
            pw_[w] = std::pow(eps, static_cast<double>(w)) *
                     std::pow(1.0 - eps, static_cast<double>(n - w));
        scale_ = 1.0 / std::ldexp(1.0, static_cast<int>(n));
    }

    RepSums run() {
        descend(0, 0, u_, u_);
        return sums_;
    }

private:
    void descend(std::size_t depth, std::size_t weight, const std::array<c64, 2>& v,
                 const std::array<c64, 2>& vc) {
        if (depth == n_ - 1) {
            for (int last = 0; last < 2; ++last) {
                const std::array<c64, 2>& r = rot_[last];
                const std::array<c64, 2>& rc = rot_[1 - last];
                const c64 amp = u_[0] * r[0] * v[0] + u_[1] * r[1] * v[1];
                const c64 ampc = u_[0] * rc[0] * vc[0] + u_[1] * rc[1] * vc[1];
                const double pe = std::norm(amp) * scale_;
                const double pec = std::norm(ampc) * scale_;
                const std::size_t w = weight + static_cast<std::size_t>(last);
                const bool constant = w == 0 || w == n_;
                accumulate(pw_[w], pe, pec, constant);
            }
            return;
        }
        descend(depth + 1, weight, t_[0].apply(v), t_[1].apply(vc));
        descend(depth + 1, weight + 1, t_[1].apply(v), t_[0].apply(vc));
    }

    void accumulate(double pw, double pe, double pec, bool constant) {
        sums_.p_termination += pw * (pe + pec);
        const double os = pw * (1.0 - pe);
        double ps = 0.0;
        bool usable = pe + pec > 1e-300;
        if (usable)
            ps = pw * pec / (pe + pec);
        else
            ++sums_.skipped;
        sums_.one_sample_all += os;
        sums_.post_selection_all += ps;
        if (!constant) {
            sums_.one_sample += os;
            sums_.post_selection += ps;
        }
    }

    std::size_t n_;
    RepParams params_;
    TransferMatrix t_[2];
    std::array<c64, 2> u_;
    std::array<c64, 2> rot_[2];
    std::vector<double> pw_;
    double scale_ = 1.0;
    RepSums sums_;
};

RepSums compute_rep_sums(std::size_t n, double eps, const RepParams& params) {
    check_sum_guard(n);
    return RepSweep(n, eps, params).run();
}

}  // namespace

std::vector<double> rep_outcome_distribution(std::size_t n, const Syndrome& s,
                                             const RepParams& params) {
    check_sum_guard(n);
    if (s.size() != n - 1)
        throw std::invalid_argument("rep_outcome_distribution: syndrome length != n-1");

    // Bond between sites k and k+1 flips the sign of eta when the outcome's
    // implied syndrome bit differs from s_k; that generalized bond is exactly
    // transfer_matrix with +/- eta.
    TransferMatrix bond[2][2];  // [z_k][t_k]
    for (int z = 0; z < 2; ++z)
        for (int t = 0; t < 2; ++t)
            bond[z][t] = transfer_matrix(z, params.alpha, t ? -params.eta : params.eta,
                                         params.gamma, params.beta);
    const std::array<c64, 2> u = boundary_vector(params.beta);
    const std::array<c64, 2> rot[2] = {end_rotation(0, params.alpha, params.gamma),
                                       end_rotation(1, params.alpha, params.gamma)};
    const double scale = 1.0 / std::ldexp(1.0, static_cast<int>(n));

    std::vector<double> dist(std::size_t{1} << n);
    // Iterative DFS over z_1..z_n; z_1 is the most significant index bit.
    struct Frame {
        std::array<c64, 2> v;
        std::uint64_t prefix;
        std::size_t depth;  // bits placed
        int last_bit;
    };
    std::vector<Frame> stack;
    stack.push_back({u, 0, 1, 0});
    stack.push_back({u, 1, 1, 1});
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        if (f.depth == n) {
            const c64 amp =
                u[0] * rot[f.last_bit][0] * f.v[0] + u[1] * rot[f.last_bit][1] * f.v[1];
            dist[f.prefix] = std::norm(amp) * scale;
            continue;
        }
        const int k = static_cast<int>(f.depth);  // choosing z_{k+1}, bond index k
        for (int next = 0; next < 2; ++next) {
            const int t = s[k - 1] ^ f.last_bit ^ next;
            stack.push_back({bond[f.last_bit][t].apply(f.v), (f.prefix << 1) | next,
                             f.depth + 1, next});
        }
    }
    return dist;
}

namespace {

double lambda_abs(double gamma, double beta, double alpha, double eta) {
    return std::abs(transfer_eigenvalues(0, alpha, eta, gamma, beta).first);
}

}  // namespace

SharedOptResult optimize_shared_parameters(double alpha, double eta) {
    constexpr double kTwoPi = 2.0 * std::numbers::pi;
    const auto objective = [&](const std::vector<double>& x) {
        return -lambda_abs(x[0], x[1], alpha, eta);
    };

    // Coarse grid; refine every discrete local maximum.
    constexpr int kG = 72, kB = 36;
    std::vector<double> grid(kG * kB);
    for (int gi = 0; gi < kG; ++gi)
        for (int bi = 0; bi < kB; ++bi)
            grid[gi * kB + bi] = lambda_abs(kTwoPi * gi / kG, std::numbers::pi * bi / kB, alpha, eta);

    struct Candidate {
        double gamma, beta, value, det;
    };
    std::vector<Candidate> candidates;
    for (int gi = 0; gi < kG; ++gi) {
        for (int bi = 0; bi < kB; ++bi) {
            const double v = grid[gi * kB + bi];
            bool local_max = true;
            for (int dg = -1; dg <= 1 && local_max; ++dg) {
                for (int db = -1; db <= 1; ++db) {
                    if (!dg && !db) continue;
                    const int gj = (gi + dg + kG) % kG;
                    const int bj = bi + db;
                    if (bj < 0 || bj >= kB) continue;
                    if (grid[gj * kB + bj] > v) {
                        local_max = false;
                        break;
                    }
                }
            }
            if (!local_max) continue;
            MinimizeResult mr = minimize_nelder_mead(
                objective, {kTwoPi * gi / kG, std::numbers::pi * bi / kB}, 0.05,
                {1e-12, 1e-15, 6000});
            double g = std::fmod(mr.x[0], kTwoPi);
            if (g < 0) g += kTwoPi;
            double b = std::fmod(mr.x[1], std::numbers::pi);
            if (b < 0) b += std::numbers::pi;
            const double det = std::abs(transfer_matrix(0, alpha, eta, g, b).det());
            candidates.push_back({g, b, -mr.f, det});
        }
    }

    // Drop degenerate maximizers, keep the best survivor; lexicographic
    // tie-break among symmetry twins.
    const Candidate* best = nullptr;
    for (const auto& c : candidates) {
        if (c.det < 1e-6) continue;
        if (!best || c.value > best->value + 1e-9 ||
            (std::abs(c.value - best->value) <= 1e-9 &&
             (c.gamma < best->gamma - 1e-9 ||
              (std::abs(c.gamma - best->gamma) <= 1e-9 && c.beta < best->beta - 1e-9))))
            best = &c;
    }
    if (!best) {
        // Degenerate everywhere (e.g. eta = 0); fall back to the plain best.
        for (const auto& c : candidates)
            if (!best || c.value > best->value) best = &c;
    }
    if (!best) throw std::runtime_error("optimize_shared_parameters: no candidates");
    return {best->gamma, best->beta, best->value};
}

double bler_one_sample(std::size_t n, double eps, const RepParams& params, bool include_constant) {
    const RepSums sums = compute_rep_sums(n, eps, params);
    return include_constant ? sums.one_sample_all : sums.one_sample;
}

double bler_post_selection(std::size_t n, double eps, const RepParams& params,
                           bool include_constant) {
    const RepSums sums = compute_rep_sums(n, eps, params);
    return include_constant ? sums.post_selection_all : sums.post_selection;
}

double expected_rounds_postselection(std::size_t n, double eps, const RepParams& params) {
    const RepSums sums = compute_rep_sums(n, eps, params);
    return 1.0 / sums.p_termination;
}

double bler_ranking(std::size_t n, double eps, int r, const RepParams& params, RankingMode mode,
                    std::uint64_t seed) {
    check_sum_guard(n);
    if (n > 16) throw std::length_error("bler_ranking: n > 16");
    if (r < 1) throw std::invalid_argument("bler_ranking: r must be >= 1");

    std::vector<double> pw(n + 1);
    for (std::size_t w = 0; w <= n; ++w)
        pw[w] = std::pow(eps, static_cast<double>(w)) *
                std::pow(1.0 - eps, static_cast<double>(n - w));

    double bler = 0.0;
    const std::size_t num_syndromes = std::size_t{1} << (n - 1);
    for (std::uint64_t sb = 0; sb < num_syndromes; ++sb) {
        Syndrome s(n - 1);
        for (std::size_t j = 0; j + 1 < n; ++j) s[j] = (sb >> j) & 1u;

        // The two error strings with this syndrome: prefix-sum of s starting
        // from e_1 = 0, and its complement.
        Word e0(n, 0);
        for (std::size_t j = 1; j < n; ++j) e0[j] = e0[j - 1] ^ s[j - 1];
        const std::uint64_t idx0 = word_to_index(e0);
        const std::uint64_t idx1 = (~idx0) & ((std::uint64_t{1} << n) - 1);

        const std::vector<double> dist = rep_outcome_distribution(n, s, params);
        bool fail0, fail1;
        if (mode == RankingMode::expected) {
            std::size_t top = 0;
            for (std::size_t z = 1; z < dist.size(); ++z)
                if (dist[z] > dist[top]) top = z;
            fail0 = top != idx0;
            fail1 = top != idx1;
        } else {
            std::mt19937_64 rng(derive_seed(seed, 0x72616e6bULL, sb));
            const std::vector<int> counts = sample_counts(AliasTable(dist), r, rng);
            std::size_t top = 0;
            int ties = 1;
            for (std::size_t z = 1; z < counts.size(); ++z) {
                if (counts[z] > counts[top]) {
                    top = z;
                    ties = 1;
                } else if (counts[z] == counts[top]) {
                    ++ties;
                }
            }
            fail0 = ties > 1 || top != idx0;
            fail1 = ties > 1 || top != idx1;
        }

        const std::size_t w0 = static_cast<std::size_t>(std::popcount(idx0));
        if (sb != 0) {  // skip the two constant strings (syndrome 0)
            bler += pw[w0] * (fail0 ? 1.0 : 0.0);
            bler += pw[n - w0] * (fail1 ? 1.0 : 0.0);
        }
    }
    return bler;
}

double bler_majority_vote(std::size_t n, double eps) {
    if (n % 2 == 0) throw std::domain_error("bler_majority_vote: n must be odd");
    double sum = 0.0;
    for (std::size_t m = (n + 1) / 2; m <= n; ++m) {
        const double log_binom = std::lgamma(static_cast<double>(n) + 1.0) -
                                 std::lgamma(static_cast<double>(m) + 1.0) -
                                 std::lgamma(static_cast<double>(n - m) + 1.0);
        sum += std::exp(log_binom + static_cast<double>(m) * std::log(eps) +
                        static_cast<double>(n - m) * std::log1p(-eps));
    }
    return sum;
}

std::pair<double, double> fit_exponential(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2) throw std::invalid_argument("fit_exponential: need >= 2 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : points) {
        if (y <= 0) throw std::domain_error("fit_exponential: y must be positive");
        const double ly = std::log2(y);
        sx += x;
        sy += ly;
        sxx += x * x;
        sxy += x * ly;
    }
    const double m = static_cast<double>(points.size());
    const double a = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    const double b = (sy - a * sx) / m;
    return {a, b};
}

}  // namespace qebp
