// dynamics.hpp — forward-in-time simulation of the noisy voter model and the
// exact one-step expectation of the discrete chain.
//
// Update rule: every vertex carries a rate-1 clock; when it rings, with
// probability theta the vertex resamples its color uniformly in [0,q), else it
// copies a uniformly chosen neighbor. Simulated by the equivalent
// superposition: a global rate-n clock picks a uniform vertex per event.
#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "noisyvoter/graph.hpp"
#include "noisyvoter/patterns.hpp"

namespace nv {

struct ModelParams {
  double theta;  // noise probability, in (0,1]; theta=1 is the pure-noise chain
  int q;         // colors, >= 2
};

// Hard per-run event budget; exceeding it is an error, never silent truncation.
inline constexpr long long kEventCap = 1'000'000'000LL;

void check_params(const ModelParams& p);

// State at time t, deterministic given seed. Event draw order per event is
// fixed (gap, vertex, noise coin, then color or neighbor index) so forward and
// backward consumers of one seed see the same event stream.
ColorConfig run_forward(const Graph& g, const ModelParams& p, const ColorConfig& x0, double t,
                        uint64_t seed);

// Exact E_x[ sum_v w(v) * omega^(k * X_1(v)) ] for one step of the discrete
// chain (one uniformly chosen vertex updates). Cost O(sum_v d(v) + n).
std::complex<double> one_step_expectation(const Graph& g, const ModelParams& p,
                                          const ColorConfig& x, int k,
                                          const std::vector<std::complex<double>>& w);

}  // namespace nv
