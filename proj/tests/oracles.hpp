// oracles.hpp — independent reference implementations used only by tests.
// Everything here recomputes quantities from first principles (dense matrix
// exponentials, brute-force state enumeration, linear solves) with no calls
// into the library's own numerical paths, so agreement between the two routes
// is evidence, not circularity.
#pragma once

#include <vector>

#include "noisyvoter/dual.hpp"

namespace nvtest {

struct Mat {
  int n = 0;
  std::vector<double> a;  // row-major

  static Mat zero(int n) { return {n, std::vector<double>(static_cast<size_t>(n) * n, 0.0)}; }
  static Mat identity(int n) {
    Mat m = zero(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
  }
  double& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  double at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
};

Mat matmul(const Mat& x, const Mat& y);

// e^A by scaling-and-squaring with a Taylor series on the scaled matrix.
Mat expm(const Mat& A);

// mu^T E for a row distribution.
std::vector<double> apply_row(const std::vector<double>& mu, const Mat& E);

// Dense Gaussian elimination with partial pivoting.
std::vector<double> solve_linear(Mat A, std::vector<double> b);

// Monic characteristic polynomial coefficients, descending powers
// (size n+1, leading 1), via the Faddeev-LeVerrier recurrence.
std::vector<double> char_poly(const Mat& A);

// ---- brute-force voter chain on the full q^n state space ----
// State index: base-q digits, vertex 0 least significant.

long long state_count(int q, int n);  // q^n, guarded against overflow
long long encode_state(const nv::ColorConfig& x);
nv::ColorConfig decode_state(long long s, int q, int n);

// Full generator built directly from the update rule: vertex at rate 1,
// noise color with prob theta/q each, copy each neighbor with prob
// (1-theta)/deg. Rows sum to zero.
Mat voter_generator(const nv::Graph& g, const nv::ModelParams& p);

// delta_x0 * e^(tQ)
std::vector<double> chain_dist_at(const nv::Graph& g, const nv::ModelParams& p,
                                  const nv::ColorConfig& x0, double t);

// Stationary row vector: solve mu Q = 0 with sum(mu) = 1 by a direct
// linear solve (no power iteration).
std::vector<double> chain_stationary(const nv::Graph& g, const nv::ModelParams& p);

// ---- exact two-walker chain (ordered pairs + meet/dead absorbers) ----
struct PairChain {
  int n = 0;
  int meet = 0, dead = 0;
  Mat gen;
  int idx(int a, int b) const { return a * n + b; }
};

PairChain make_pair_chain(const nv::Graph& g, double theta);

// Absorption probability of ever meeting, by a linear solve on the jump chain.
double pair_meet_prob_exact(const nv::Graph& g, double theta, int u, int v);

// P(meet within time t), by matrix exponential of the pair generator.
double pair_meet_by_exact(const PairChain& pc, int u, int v, double t);

}  // namespace nvtest
