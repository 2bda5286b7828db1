#include "noisyvoter/mixing.hpp"

#include <cmath>

#include "noisyvoter/errors.hpp"

namespace nv {

static constexpr long long kStateCap = 1LL << 22;

long long config_count(int q, int n) {
  long long s = 1;
  for (int i = 0; i < n; ++i) {
    s *= q;
    if (s > kStateCap) fail(Err::StateSpaceTooLarge, "q^n exceeds the 2^22 state cap");
  }
  return s;
}

long long encode_config(const ColorConfig& x) {
  long long s = 0;
  for (int v = x.n() - 1; v >= 0; --v) s = s * x.q + x[v];
  return s;
}

ColorConfig decode_config(long long s, int q, int n) {
  ColorConfig x{q, std::vector<int>(static_cast<size_t>(n))};
  for (int v = 0; v < n; ++v) {
    x.colors[static_cast<size_t>(v)] = static_cast<int>(s % q);
    s /= q;
  }
  return x;
}

// One application of the discrete one-update kernel: pick a uniform vertex,
// then noise (prob theta, uniform color) or copy (uniform neighbor).
static void apply_kernel(const Graph& g, const ModelParams& p, const std::vector<double>& in,
                         std::vector<double>& out, const std::vector<long long>& pw) {
  const long long ns = static_cast<long long>(in.size());
  const double n = static_cast<double>(g.n);
  std::fill(out.begin(), out.end(), 0.0);
  for (long long s = 0; s < ns; ++s) {
    double mass = in[static_cast<size_t>(s)];
    if (mass == 0.0) continue;
    for (int v = 0; v < g.n; ++v) {
      long long stride = pw[static_cast<size_t>(v)];
      int c = static_cast<int>((s / stride) % p.q);
      long long base = s - static_cast<long long>(c) * stride;
      double noise = mass * p.theta / (n * p.q);
      for (int cp = 0; cp < p.q; ++cp) out[static_cast<size_t>(base + cp * stride)] += noise;
      double copy_w = mass * (1.0 - p.theta) / (n * g.deg(v));
      for (int u : g.adj[v]) {
        int cu = static_cast<int>((s / pw[static_cast<size_t>(u)]) % p.q);
        out[static_cast<size_t>(base + static_cast<long long>(cu) * stride)] += copy_w;
      }
    }
  }
}

static std::vector<long long> strides(int q, int n) {
  std::vector<long long> pw(static_cast<size_t>(n));
  pw[0] = 1;
  for (int v = 1; v < n; ++v) pw[static_cast<size_t>(v)] = pw[static_cast<size_t>(v) - 1] * q;
  return pw;
}

static ExactDistribution uniformize(const Graph& g, const ModelParams& p,
                                    std::vector<double> cur, double t, double tail_tol) {
  check_params(p);
  if (t < 0 || !std::isfinite(t)) fail(Err::NegativeTime, "time must be finite and nonnegative");
  if (!(tail_tol > 0) || tail_tol >= 1) fail(Err::BadParams, "tail tolerance must be in (0,1)");
  const double lambda = g.n * t;

  // Poisson(lambda) weights in log space; truncate at cumulative mass
  // 1 - tail_tol and renormalize so the output is exactly a distribution.
  std::vector<double> w;
  double cum = 0;
  for (int j = 0;; ++j) {
    double lw = -lambda + j * std::log(lambda > 0 ? lambda : 1.0) - std::lgamma(j + 1.0);
    double pj = std::exp(lw);
    w.push_back(pj);
    cum += pj;
    if (cum >= 1.0 - tail_tol) break;
    if (j > 100000000) fail(Err::NoConvergence, "Poisson truncation did not stabilize");
  }
  for (double& x : w) x /= cum;

  auto pw = strides(p.q, g.n);
  ExactDistribution out;
  out.q = p.q;
  out.n = g.n;
  out.probs.assign(cur.size(), 0.0);
  std::vector<double> next(cur.size());
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (j > 0) {
      apply_kernel(g, p, cur, next, pw);
      cur.swap(next);
    }
    if (w[j] == 0.0) continue;
    for (std::size_t i = 0; i < cur.size(); ++i) out.probs[i] += w[j] * cur[i];
  }
  return out;
}

ExactDistribution exact_distribution(const Graph& g, const ModelParams& p, const ColorConfig& x0,
                                     double t, double tail_tol) {
  check_config(g, x0);
  if (x0.q != p.q) fail(Err::ParamMismatch, "configuration q does not match model q");
  long long ns = config_count(p.q, g.n);
  std::vector<double> delta(static_cast<size_t>(ns), 0.0);
  delta[static_cast<size_t>(encode_config(x0))] = 1.0;
  return uniformize(g, p, std::move(delta), t, tail_tol);
}

ExactDistribution exact_distribution_uniform(const Graph& g, const ModelParams& p, double t,
                                             double tail_tol) {
  long long ns = config_count(p.q, g.n);
  std::vector<double> u(static_cast<size_t>(ns), 1.0 / static_cast<double>(ns));
  return uniformize(g, p, std::move(u), t, tail_tol);
}

ExactDistribution exact_stationary(const Graph& g, const ModelParams& p, double tol) {
  check_params(p);
  if (!(tol > 0)) fail(Err::BadParams, "tolerance must be positive");
  long long ns = config_count(p.q, g.n);
  auto pw = strides(p.q, g.n);
  std::vector<double> cur(static_cast<size_t>(ns), 1.0 / static_cast<double>(ns));
  std::vector<double> next(cur.size());
  for (long long it = 0; it < 10000000; ++it) {
    apply_kernel(g, p, cur, next, pw);
    double l1 = 0;
    for (std::size_t i = 0; i < cur.size(); ++i) l1 += std::fabs(next[i] - cur[i]);
    cur.swap(next);
    if (0.5 * l1 <= tol / 10 && l1 <= tol) {
      ExactDistribution out;
      out.q = p.q;
      out.n = g.n;
      out.probs = std::move(cur);
      return out;
    }
  }
  fail(Err::NoConvergence, "stationary power iteration hit the 10^7 cap");
}

double tv_distance(const ExactDistribution& a, const ExactDistribution& b) {
  if (a.q != b.q || a.n != b.n) fail(Err::ShapeMismatch, "distributions over different spaces");
  double s = 0;
  for (std::size_t i = 0; i < a.probs.size(); ++i) s += std::fabs(a.probs[i] - b.probs[i]);
  return 0.5 * s;
}

std::vector<double> single_site_marginal(const ExactDistribution& dist, int v) {
  if (v < 0 || v >= dist.n) fail(Err::VertexOutOfRange, "vertex out of range");
  long long stride = 1;
  for (int i = 0; i < v; ++i) stride *= dist.q;
  std::vector<double> out(static_cast<size_t>(dist.q), 0.0);
  for (std::size_t s = 0; s < dist.probs.size(); ++s)
    out[static_cast<size_t>((static_cast<long long>(s) / stride) % dist.q)] += dist.probs[s];
  return out;
}

static void check_marg_shape(const Graph& g, const std::vector<std::vector<double>>& marg,
                             const ColorConfig& x) {
  if (static_cast<int>(marg.size()) != g.n || x.n() != g.n)
    fail(Err::ShapeMismatch, "marginal matrix or configuration size does not match graph");
  for (const auto& row : marg)
    if (static_cast<int>(row.size()) != x.q)
      fail(Err::ShapeMismatch, "marginal row length does not match q");
}

double statistic_R_auto(const std::vector<std::vector<double>>& marg, const ColorConfig& x,
                        const Graph& g) {
  check_marg_shape(g, marg, x);
  double r = 0;
  for (int v = 0; v < g.n; ++v)
    r += g.pi[v] * (marg[static_cast<size_t>(v)][static_cast<size_t>(x[v])] - 1.0 / x.q);
  return r;
}

double statistic_R_edge(const Graph& g, const std::vector<std::vector<double>>& marg,
                        const ColorConfig& x) {
  check_marg_shape(g, marg, x);
  double r = 0;
  for (int v = 0; v < g.n; ++v)
    for (int u : g.adj[v]) {
      if (u <= v) continue;
      r += (x[v] == x[u] ? 1.0 : 0.0) - marg[static_cast<size_t>(u)][static_cast<size_t>(x[v])];
    }
  return r;
}

Estimate empirical_autocorr(const Graph& g, const ModelParams& p, const ColorConfig& x0, double t,
                            long long reps, uint64_t seed) {
  if (reps < 2) fail(Err::BadParams, "need at least two runs to form a pair");
  long long pairs = reps / 2;
  // variance accumulated on deviations from the first pair: exactly zero
  // when every pair scores the same (e.g. t = 0)
  double shift = 0, dsum = 0, dsumsq = 0;
  for (long long i = 0; i < pairs; ++i) {
    ColorConfig a = run_forward(g, p, x0, t, substream(seed, static_cast<uint64_t>(2 * i)));
    ColorConfig b = run_forward(g, p, x0, t, substream(seed, static_cast<uint64_t>(2 * i + 1)));
    double stat = 0;
    for (int v = 0; v < g.n; ++v) stat += g.pi[v] * ((a[v] == b[v] ? 1.0 : 0.0) - 1.0 / p.q);
    if (i == 0) shift = stat;
    double d = stat - shift;
    dsum += d;
    dsumsq += d * d;
  }
  double mean = shift + dsum / static_cast<double>(pairs);
  double se = 0;
  if (pairs > 1) {
    double var = (dsumsq - dsum * dsum / static_cast<double>(pairs)) /
                 static_cast<double>(pairs - 1);
    se = std::sqrt(std::max(var, 0.0) / static_cast<double>(pairs));
  }
  return {mean, se};
}

}  // namespace nv
