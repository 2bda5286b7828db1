#include "noisyvoter/dynamics.hpp"

#include <cmath>
#include <complex>

#include "event_gen.hpp"
#include "noisyvoter/errors.hpp"

namespace nv {

void check_params(const ModelParams& p) {
  if (!(p.theta > 0.0) || !(p.theta <= 1.0) || !std::isfinite(p.theta))
    fail(Err::BadParams, "theta must lie in (0, 1]");
  if (p.q < 2) fail(Err::BadParams, "q must be at least 2");
}

static void check_run_inputs(const Graph& g, const ModelParams& p, const ColorConfig& x0,
                             double t) {
  check_params(p);
  if (x0.q != p.q) fail(Err::ParamMismatch, "configuration q does not match model q");
  if (x0.n() != g.n) fail(Err::SizeMismatch, "configuration size does not match graph");
  if (t < 0 || !std::isfinite(t)) fail(Err::NegativeTime, "time must be finite and nonnegative");
}

ColorConfig run_forward(const Graph& g, const ModelParams& p, const ColorConfig& x0, double t,
                        uint64_t seed) {
  check_run_inputs(g, p, x0, t);
  ColorConfig x = x0;
  EventGen gen(g, p, seed);
  Event e;
  long long count = 0;
  while (gen.next(t, e)) {
    apply_event_forward(g, x.colors, e);
    if (++count > kEventCap) fail(Err::EventCap, "event budget exceeded");
  }
  return x;
}

std::complex<double> one_step_expectation(const Graph& g, const ModelParams& p,
                                          const ColorConfig& x, int k,
                                          const std::vector<std::complex<double>>& w) {
  check_params(p);
  if (x.q != p.q) fail(Err::ParamMismatch, "configuration q does not match model q");
  if (x.n() != g.n) fail(Err::SizeMismatch, "configuration size does not match graph");
  if (k < 1 || k >= p.q) fail(Err::KOutOfRange, "power k must lie in [1, q)");
  if (static_cast<int>(w.size()) != g.n) fail(Err::SizeMismatch, "weight size does not match graph");

  const double n = static_cast<double>(g.n);
  const double two_pi = 2.0 * std::acos(-1.0);
  auto omega_k = [&](int c) {
    double a = two_pi * static_cast<double>((static_cast<long long>(k) * c) % p.q) /
               static_cast<double>(p.q);
    return std::complex<double>(std::cos(a), std::sin(a));
  };

  // One step updates a uniformly chosen vertex: each site keeps its color
  // with prob 1-1/n; the updated site's noise mass averages omega^{k c} over
  // all colors, which is zero for 1 <= k < q, leaving the copy mass.
  std::complex<double> s{0, 0};
  std::complex<double> out{0, 0};
  for (int v = 0; v < g.n; ++v) s += w[v] * omega_k(x[v]);
  out = (1.0 - 1.0 / n) * s;
  for (int v = 0; v < g.n; ++v) {
    std::complex<double> avg{0, 0};
    for (int u : g.adj[v]) avg += omega_k(x[u]);
    out += ((1.0 - p.theta) / n) * w[v] * (avg / static_cast<double>(g.deg(v)));
  }
  return out;
}

}  // namespace nv
