#include "noisyvoter/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "noisyvoter/errors.hpp"

namespace nv {

static const double kTwoPi = 2.0 * std::acos(-1.0);

Spectrum eigendecompose(const Graph& g, double tol) {
  if (!g.connected) fail(Err::Disconnected, "eigendecomposition needs a connected graph");
  if (g.n > 4000) fail(Err::TooLarge, "dense eigensolve capped at n = 4000");
  const int n = g.n;

  std::vector<double> A(static_cast<size_t>(n) * n, 0.0);
  for (int v = 0; v < n; ++v)
    for (int u : g.adj[v])
      A[static_cast<size_t>(v) * n + u] = 1.0 / std::sqrt(double(g.deg(v)) * g.deg(u));
  std::vector<double> V(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) V[static_cast<size_t>(i) * n + i] = 1.0;

  auto off_frobenius = [&] {
    double s = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        double x = A[static_cast<size_t>(i) * n + j];
        s += 2 * x * x;
      }
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < 100; ++sweep) {
    if (off_frobenius() <= tol * n) break;
    if (sweep == 99) fail(Err::NoConvergence, "Jacobi sweeps exhausted");
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = A[static_cast<size_t>(p) * n + q];
        if (apq == 0.0) continue;
        double tau = (A[static_cast<size_t>(q) * n + q] - A[static_cast<size_t>(p) * n + p]) /
                     (2.0 * apq);
        double t = (tau >= 0 ? 1.0 : -1.0) / (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = t * c;
        for (int i = 0; i < n; ++i) {
          double aip = A[static_cast<size_t>(i) * n + p];
          double aiq = A[static_cast<size_t>(i) * n + q];
          A[static_cast<size_t>(i) * n + p] = c * aip - s * aiq;
          A[static_cast<size_t>(i) * n + q] = s * aip + c * aiq;
        }
        for (int j = 0; j < n; ++j) {
          double apj = A[static_cast<size_t>(p) * n + j];
          double aqj = A[static_cast<size_t>(q) * n + j];
          A[static_cast<size_t>(p) * n + j] = c * apj - s * aqj;
          A[static_cast<size_t>(q) * n + j] = s * apj + c * aqj;
        }
        for (int i = 0; i < n; ++i) {
          double vip = V[static_cast<size_t>(i) * n + p];
          double viq = V[static_cast<size_t>(i) * n + q];
          V[static_cast<size_t>(i) * n + p] = c * vip - s * viq;
          V[static_cast<size_t>(i) * n + q] = s * vip + c * viq;
        }
      }
    }
  }

  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return A[static_cast<size_t>(a) * n + a] > A[static_cast<size_t>(b) * n + b];
  });

  Spectrum spec;
  spec.n = n;
  spec.pi = g.pi;
  spec.lambdas.resize(static_cast<size_t>(n));
  spec.psis.assign(static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(n)));
  for (int l = 0; l < n; ++l) {
    int col = order[static_cast<size_t>(l)];
    spec.lambdas[static_cast<size_t>(l)] =
        std::clamp(A[static_cast<size_t>(col) * n + col], -1.0, 1.0);
    auto& psi = spec.psis[static_cast<size_t>(l)];
    int arg_max = 0;
    for (int v = 0; v < n; ++v) {
      psi[static_cast<size_t>(v)] = V[static_cast<size_t>(v) * n + col] / std::sqrt(g.pi[v]);
      if (std::fabs(psi[static_cast<size_t>(v)]) > std::fabs(psi[static_cast<size_t>(arg_max)]))
        arg_max = v;
    }
    if (psi[static_cast<size_t>(arg_max)] < 0)  // deterministic sign convention
      for (double& x : psi) x = -x;
  }
  return spec;
}

static std::vector<std::complex<double>> roots_of_unity(int q) {
  std::vector<std::complex<double>> w(static_cast<size_t>(q));
  for (int c = 0; c < q; ++c) {
    double a = kTwoPi * c / q;
    w[static_cast<size_t>(c)] = {std::cos(a), std::sin(a)};
  }
  return w;
}

std::vector<std::vector<std::complex<double>>> projections(const Spectrum& spec,
                                                           const ColorConfig& x0) {
  if (x0.n() != spec.n) fail(Err::SizeMismatch, "configuration size does not match spectrum");
  const int n = spec.n, q = x0.q;
  auto w = roots_of_unity(q);
  std::vector<std::vector<std::complex<double>>> out(
      static_cast<size_t>(n), std::vector<std::complex<double>>(static_cast<size_t>(q) - 1));
  for (int l = 0; l < n; ++l) {
    const auto& psi = spec.psis[static_cast<size_t>(l)];
    for (int k = 1; k < q; ++k) {
      std::complex<double> s{0, 0};
      for (int v = 0; v < n; ++v) {
        int e = static_cast<int>((static_cast<long long>(k) * x0[v]) % q);
        s += w[static_cast<size_t>(e)] * psi[static_cast<size_t>(v)] * spec.pi[static_cast<size_t>(v)];
      }
      out[static_cast<size_t>(l)][static_cast<size_t>(k) - 1] = s;
    }
  }
  return out;
}

// Shared by the graph-based and closed-form constructors: sort by rate,
// merge rates within 1e-12, drop negligible weights.
static AutocorrCurve finish_curve(std::vector<std::pair<double, double>> terms, long long n,
                                  double theta, int q) {
  std::sort(terms.begin(), terms.end());
  AutocorrCurve curve;
  curve.n = n;
  curve.theta = theta;
  curve.q = q;
  for (auto [rate, weight] : terms) {
    if (weight < 0) weight = 0;  // |.|^2 rounding guard
    if (!curve.rates.empty() && rate - curve.rates.back() <= 1e-12) {
      curve.weights.back() += weight;
    } else {
      curve.rates.push_back(rate);
      curve.weights.push_back(weight);
    }
  }
  std::size_t keep = 0;
  for (std::size_t i = 0; i < curve.rates.size(); ++i) {
    if (curve.weights[i] <= 1e-14) continue;
    curve.rates[keep] = curve.rates[i];
    curve.weights[keep] = curve.weights[i];
    ++keep;
  }
  curve.rates.resize(keep);
  curve.weights.resize(keep);
  return curve;
}

AutocorrCurve autocorr_curve(const Spectrum& spec, const ColorConfig& x0, const ModelParams& p) {
  check_params(p);
  if (x0.q != p.q) fail(Err::ParamMismatch, "configuration q does not match model q");
  if (x0.n() != spec.n) fail(Err::SizeMismatch, "configuration size does not match spectrum");
  auto proj = projections(spec, x0);
  std::vector<std::pair<double, double>> terms;
  terms.reserve(static_cast<size_t>(spec.n));
  for (int l = 0; l < spec.n; ++l) {
    double alpha = 0;
    for (int k = 1; k < p.q; ++k) alpha += std::norm(proj[static_cast<size_t>(l)][static_cast<size_t>(k) - 1]);
    alpha /= p.q;
    double gamma = 1.0 - (1.0 - p.theta) * spec.lambdas[static_cast<size_t>(l)];
    terms.emplace_back(gamma, alpha);
  }
  return finish_curve(std::move(terms), spec.n, p.theta, p.q);
}

double eval_autocorr(const AutocorrCurve& curve, double t, Flavor flavor) {
  if (t < 0 || !std::isfinite(t)) fail(Err::NegativeTime, "time must be finite and nonnegative");
  double scale = flavor == Flavor::A2 ? 2.0 : 1.0;
  double s = 0;
  for (std::size_t i = 0; i < curve.rates.size(); ++i)
    s += curve.weights[i] * std::exp(-scale * curve.rates[i] * t);
  return s;
}

double t_x0(const AutocorrCurve& curve, long long n_threshold) {
  if (n_threshold < 1) fail(Err::BadParams, "threshold n must be at least 1");
  double target = 1.0 / static_cast<double>(n_threshold);
  if (eval_autocorr(curve, 0.0) <= target) return 0.0;
  // A2(0) > 1/n forces q >= 2 terms and theta from a real curve here.
  double hi = std::log((curve.q - 1.0) * static_cast<double>(n_threshold) / curve.q) /
                  (2.0 * curve.theta) +
              1.0;
  double lo = 0.0;
  while (hi - lo > 1e-9 * hi) {
    double mid = 0.5 * (lo + hi);
    (eval_autocorr(curve, mid) > target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

TmixPrediction predicted_tmix(const AutocorrCurve& curve, long long n, double theta) {
  if (curve.theta != 0 && std::fabs(theta - curve.theta) > 1e-12)
    fail(Err::ParamMismatch, "theta does not match the curve");
  TmixPrediction out;
  out.t_x0_value = t_x0(curve, n);
  out.noise_value = std::log(static_cast<double>(n)) / (4.0 * theta);
  out.autocorr_branch = out.t_x0_value >= out.noise_value;
  out.value = std::max(out.t_x0_value, out.noise_value);
  return out;
}

LatticeSpectrum lattice_pattern_spectrum(int d, int q, const std::vector<int>& v, double theta) {
  check_params({theta, q});
  if (d < 1) fail(Err::BadParams, "dimension must be at least 1");
  if (static_cast<int>(v.size()) != d) fail(Err::SizeMismatch, "direction vector length != d");
  for (int vi : v)
    if (vi < 0 || vi >= q) fail(Err::ComponentOutOfRange, "direction component outside [0, q)");

  LatticeSpectrum out;
  out.lambda_k.resize(static_cast<size_t>(q) - 1);
  out.lambda_star = -1.0;
  std::vector<std::pair<double, double>> terms;
  for (int k = 1; k < q; ++k) {
    double lam = 0;
    for (int vi : v) lam += std::cos(kTwoPi * ((static_cast<long long>(k) * vi) % q) / q);
    lam /= d;
    out.lambda_k[static_cast<size_t>(k) - 1] = lam;
    out.lambda_star = std::max(out.lambda_star, lam);
    terms.emplace_back(1.0 - (1.0 - theta) * lam, 1.0 / q);
  }
  out.theta_v = (1.0 - out.lambda_star) / (2.0 - out.lambda_star);
  out.curve = finish_curve(std::move(terms), 0, theta, q);
  out.tmix_coefficient =
      std::max(d / (4.0 * theta), d / (2.0 * (1.0 - (1.0 - theta) * out.lambda_star)));
  return out;
}

std::vector<std::vector<double>> marginals(const Spectrum& spec, const ColorConfig& x0,
                                           const ModelParams& p, double t) {
  check_params(p);
  if (x0.q != p.q) fail(Err::ParamMismatch, "configuration q does not match model q");
  if (x0.n() != spec.n) fail(Err::SizeMismatch, "configuration size does not match spectrum");
  if (t < 0 || !std::isfinite(t)) fail(Err::NegativeTime, "time must be finite and nonnegative");
  const int n = spec.n, q = p.q;
  double survive = std::exp(-p.theta * t);
  double s = (1.0 - p.theta) * t;

  std::vector<std::vector<double>> out(static_cast<size_t>(n),
                                       std::vector<double>(static_cast<size_t>(q),
                                                           (1.0 - survive) / q));
  std::vector<double> coef(static_cast<size_t>(q));
  for (int l = 0; l < n; ++l) {
    const auto& psi = spec.psis[static_cast<size_t>(l)];
    double w = survive * std::exp(-s * (1.0 - spec.lambdas[static_cast<size_t>(l)]));
    if (w < 1e-300) continue;
    std::fill(coef.begin(), coef.end(), 0.0);
    for (int u = 0; u < n; ++u)
      coef[static_cast<size_t>(x0[u])] += psi[static_cast<size_t>(u)] * spec.pi[static_cast<size_t>(u)];
    for (int vtx = 0; vtx < n; ++vtx) {
      double f = w * psi[static_cast<size_t>(vtx)];
      for (int c = 0; c < q; ++c) out[static_cast<size_t>(vtx)][static_cast<size_t>(c)] += f * coef[static_cast<size_t>(c)];
    }
  }
  for (auto& row : out)
    for (double& x : row) x = std::clamp(x, 0.0, 1.0);
  return out;
}

double eigenfunction_residual(const Graph& g, const ModelParams& p, const Spectrum& spec, int l,
                              int k, const ColorConfig& x) {
  check_params(p);
  if (l < 0 || l >= spec.n) fail(Err::BadParams, "eigenpair index out of range");
  if (k < 1 || k >= p.q) fail(Err::KOutOfRange, "power k must lie in [1, q)");
  if (x.n() != g.n || spec.n != g.n) fail(Err::SizeMismatch, "sizes do not match the graph");
  const auto& psi = spec.psis[static_cast<size_t>(l)];
  auto w = roots_of_unity(p.q);

  std::vector<std::complex<double>> weight(static_cast<size_t>(g.n));
  std::complex<double> functional{0, 0};
  for (int v = 0; v < g.n; ++v) {
    weight[static_cast<size_t>(v)] = psi[static_cast<size_t>(v)] * g.pi[v];
    int e = static_cast<int>((static_cast<long long>(k) * x[v]) % p.q);
    functional += w[static_cast<size_t>(e)] * psi[static_cast<size_t>(v)] * g.pi[v];
  }
  std::complex<double> stepped = one_step_expectation(g, p, x, k, weight);
  double gamma = 1.0 - (1.0 - p.theta) * spec.lambdas[static_cast<size_t>(l)];
  return std::abs(stepped - (1.0 - gamma / g.n) * functional);
}

VarianceBounds stationary_variance(const Graph& g, const ModelParams& p, const Spectrum& spec,
                                   int l, int k, const std::vector<Estimate>& hG) {
  check_params(p);
  if (l < 0 || l >= spec.n) fail(Err::BadParams, "eigenpair index out of range");
  if (k < 1 || k >= p.q) fail(Err::KOutOfRange, "power k must lie in [1, q)");
  if (spec.n != g.n || static_cast<int>(hG.size()) != g.n)
    fail(Err::SizeMismatch, "sizes do not match the graph");
  for (const Estimate& h : hG)
    if (h.value + h.se < 0 || h.value - h.se > 1)
      fail(Err::BadHG, "coalescence estimate outside [0,1] beyond its standard error");

  const auto& psi = spec.psis[static_cast<size_t>(l)];
  double gamma = 1.0 - (1.0 - p.theta) * spec.lambdas[static_cast<size_t>(l)];
  double base = 0, value = 0, var = 0;
  for (int v = 0; v < g.n; ++v) {
    double w = g.pi[v] * g.pi[v] * psi[static_cast<size_t>(v)] * psi[static_cast<size_t>(v)];
    base += w;
    value += w * (1.0 - (1.0 - p.theta) * hG[static_cast<size_t>(v)].value);
    double dv = w * (1.0 - p.theta) * hG[static_cast<size_t>(v)].se;
    var += dv * dv;
  }
  VarianceBounds out;
  out.formula = {value / gamma, std::sqrt(var) / gamma};
  out.lower = p.theta * base / gamma;
  out.upper = base / gamma;
  return out;
}

}  // namespace nv
