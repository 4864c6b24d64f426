#ifndef QEBP_REP_ANALYTICS_HPP
#define QEBP_REP_ANALYTICS_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "qebp/gf2.hpp"

namespace qebp {

// Exact level-1 QAOA analytics for the [n,1] repetition code, built on the
// transfer-matrix form of the decoding amplitude. The cost Hamiltonian here
// carries plus signs (the appendix convention of the qaoa module).

using c64 = std::complex<double>;

struct RepParams {
    double alpha = 1.0;
    double eta = 2.0;
    double gamma = 0.0;
    double beta = 0.0;
};

struct TransferMatrix {
    c64 m00, m01, m10, m11;

    c64 trace() const { return m00 + m11; }
    c64 det() const { return m00 * m11 - m01 * m10; }
    std::array<c64, 2> apply(const std::array<c64, 2>& v) const {
        return {m00 * v[0] + m01 * v[1], m10 * v[0] + m11 * v[1]};
    }
};

// Bond matrix for one chain link carrying error bit e_bit; principal square
// roots throughout.
TransferMatrix transfer_matrix(int e_bit, double alpha, double eta, double gamma, double beta);

// (sqrt(cos beta), sqrt(-i sin beta)).
std::array<c64, 2> boundary_vector(double beta);

// Numeric eigenvalues of the bond matrix via trace/determinant; first entry
// has the larger modulus (ties break toward larger real part).
std::pair<c64, c64> transfer_eigenvalues(int e_bit, double alpha, double eta, double gamma,
                                         double beta);

// The eigenvalue expression as printed in the source derivation; kept only
// for logged comparison against the numeric eigenvalues (they disagree).
std::pair<c64, c64> printed_eigenvalue_formula(int e_bit, double alpha, double eta, double gamma,
                                               double beta);

// P(e | s = e H^T): probability that the circuit fed with e's syndrome
// returns exactly e. O(n) per call.
double success_probability(std::size_t n, const Word& e, const RepParams& params);

// Full outcome distribution P(z | s) for a fixed syndrome s (any r-bit
// vector), indexed like the qaoa module's basis states. O(2^n).
std::vector<double> rep_outcome_distribution(std::size_t n, const Syndrome& s,
                                             const RepParams& params);

struct SharedOptResult {
    double gamma = 0.0;
    double beta = 0.0;
    double lambda_abs = 0.0;
};

// Maximize |lambda_{0,+}| over [0,2pi) x [0,pi) by grid seeding plus local
// refinement. Degenerate maximizers with det T_0 -> 0 (the syndrome coupling
// drops out of the circuit and the success probability vanishes) are
// discarded; ties in |lambda| resolve to the lexicographically smallest
// (gamma, beta).
SharedOptResult optimize_shared_parameters(double alpha = 1.0, double eta = 2.0);

// Closed-form block error rates under a BSC with crossover eps, summing over
// error strings excluding the two constant strings (pass include_constant
// to keep them; labeled non-paper).
double bler_one_sample(std::size_t n, double eps, const RepParams& params,
                       bool include_constant = false);
double bler_post_selection(std::size_t n, double eps, const RepParams& params,
                           bool include_constant = false);

enum class RankingMode { expected, monte_carlo };

// Ranking over r measurement rounds. Expected mode uses the infinite-shot
// top string (argmax of the outcome distribution); monte_carlo draws r shots
// per error string, ties counting as failures. Guarded at n <= 16: the
// computation scans a distribution per syndrome.
double bler_ranking(std::size_t n, double eps, int r, const RepParams& params, RankingMode mode,
                    std::uint64_t seed = 0);

// Majority-vote decoding, odd n.
double bler_majority_vote(std::size_t n, double eps);

// 1 / P_termination for post-selected decoding.
double expected_rounds_postselection(std::size_t n, double eps, const RepParams& params);

// Least-squares fit of log2(y) = a x + b; returns (a, b).
std::pair<double, double> fit_exponential(const std::vector<std::pair<double, double>>& points);

}  // namespace qebp

#endif
