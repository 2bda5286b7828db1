// mixing.hpp — exact distributions on the full q^n configuration space
// (desk-scale ground truth via uniformization), total-variation distance, the
// two distinguishing statistics, and the empirical autocorrelation estimator.
#pragma once

#include <cstdint>
#include <vector>

#include "noisyvoter/dual.hpp"

namespace nv {

// Dense probability vector over all q^n configurations, encoded in base q
// with vertex 0 as the least-significant digit. Hard cap q^n <= 2^22.
struct ExactDistribution {
  int q = 0;
  int n = 0;
  std::vector<double> probs;
};

long long config_count(int q, int n);
long long encode_config(const ColorConfig& x);
ColorConfig decode_config(long long s, int q, int n);

// Law of X_t from x0: e^(tQ) delta_x0 with Q = n(P - I), computed as a
// Poisson(nt) mixture of powers of the one-update kernel P (applied as an
// operator, never materialized). The mixture is truncated once the Poisson
// mass reaches 1 - tail_tol and renormalized, so the result sums to 1.
ExactDistribution exact_distribution(const Graph& g, const ModelParams& p, const ColorConfig& x0,
                                     double t, double tail_tol = 1e-12);

// Same, started from the uniform distribution over all q^n configurations.
ExactDistribution exact_distribution_uniform(const Graph& g, const ModelParams& p, double t,
                                             double tail_tol = 1e-12);

// Stationary law: power iteration of P from uniform until successive total
// variation <= tol/10 and one-step L1 residual <= tol. Iteration cap 10^7.
ExactDistribution exact_stationary(const Graph& g, const ModelParams& p, double tol = 1e-12);

// (1/2) sum |a - b|.
double tv_distance(const ExactDistribution& a, const ExactDistribution& b);

// P(X(v) = c) under the distribution, as a length-q vector.
std::vector<double> single_site_marginal(const ExactDistribution& dist, int v);

// R(x) = sum_v pi(v) (marg[v][x(v)] - 1/q): the pi-weighted overlap of x with
// the time-t marginals. Mean A2(t) under the time-t law, mean 0 at
// stationarity.
double statistic_R_auto(const std::vector<std::vector<double>>& marg, const ColorConfig& x,
                        const Graph& g);

// Edge statistic: sum over unordered edges u < v of
// 1{x(u) = x(v)} - marg[v][x(u)].
double statistic_R_edge(const Graph& g, const std::vector<std::vector<double>>& marg,
                        const ColorConfig& x);

// Unbiased Monte-Carlo estimate of A2(t): independent pairs of forward runs
// scored by sum_v pi(v) (1{X(v) = X'(v)} - 1/q). reps counts runs; pairs are
// floor(reps/2).
Estimate empirical_autocorr(const Graph& g, const ModelParams& p, const ColorConfig& x0, double t,
                            long long reps, uint64_t seed);

}  // namespace nv
