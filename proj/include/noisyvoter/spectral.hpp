// spectral.hpp — eigendecomposition of the random-walk operator in L2(pi),
// the autocorrelation curves A1/A2, the mixing-time predictor, closed-form
// torus-pattern spectra, and the stationary variance identity.
#pragma once

#include <complex>
#include <vector>

#include "noisyvoter/dual.hpp"

namespace nv {

// Walk eigenpairs: P psi_l = lambda_l psi_l with psi_l orthonormal under
// <f,g> = sum_v f(v) conj(g(v)) pi(v). lambdas sorted descending, so index 0
// is the constant eigenfunction (lambda = 1, psi = all-ones up to sign).
struct Spectrum {
  int n = 0;
  std::vector<double> lambdas;
  std::vector<std::vector<double>> psis;  // psis[l][v]
  std::vector<double> pi;
};

// Cyclic Jacobi on the symmetric normalized adjacency N(u,v) =
// 1/sqrt(d(u)d(v)), stopping when the off-diagonal Frobenius norm is at most
// tol * n; psi_l(v) = phi_l(v)/sqrt(pi(v)) restores L2(pi) orthonormality.
// Dense O(n^3) work; n capped at 4000.
Spectrum eigendecompose(const Graph& g, double tol = 1e-11);

// Psi[l][k-1] = sum_v omega^(k x0(v)) psi_l(v) pi(v) for k = 1..q-1, with
// omega = exp(2 pi i / q). Rows satisfy Parseval: sum_l |Psi[l][k-1]|^2 = 1.
std::vector<std::vector<std::complex<double>>> projections(const Spectrum& spec,
                                                           const ColorConfig& x0);

// A2(t) = sum alpha_l exp(-2 gamma_l t) with gamma_l = 1-(1-theta)lambda_l
// and alpha_l = (1/q) sum_k |Psi_l^(k)(x0)|^2. Rates deduplicated within
// 1e-12 (weights summed); negligible weights dropped. Weights sum to (q-1)/q.
struct AutocorrCurve {
  std::vector<double> rates;    // ascending
  std::vector<double> weights;  // nonnegative
  long long n = 0;              // graph size (0 for closed-form curves)
  double theta = 0;
  int q = 0;
};

AutocorrCurve autocorr_curve(const Spectrum& spec, const ColorConfig& x0, const ModelParams& p);

enum class Flavor { A1, A2 };

// A2 flavor: sum alpha exp(-2 gamma t); A1 flavor: sum alpha exp(-gamma t).
double eval_autocorr(const AutocorrCurve& curve, double t, Flavor flavor = Flavor::A2);

// First t with A2(t) <= 1/n_threshold: 0 if already below at t=0, else
// bisection on [0, (1/(2 theta)) log((q-1) n/q) + 1] (the global decay bound
// guarantees a sign change) to relative tolerance 1e-9.
double t_x0(const AutocorrCurve& curve, long long n_threshold);

struct TmixPrediction {
  double value;
  double t_x0_value;
  double noise_value;    // log(n)/(4 theta)
  bool autocorr_branch;  // true when t_x0 dominates
};

TmixPrediction predicted_tmix(const AutocorrCurve& curve, long long n, double theta);

// Closed-form spectrum of the pattern x_v on the d-torus: lambda_k =
// (1/d) sum_i cos(2 pi k v_i / q) for k = 1..q-1; no graph needed. The curve
// is A2(t) = (1/q) sum_k exp(-2(1-(1-theta)lambda_k)t), and tmix_coefficient
// is the predicted coefficient of log n: max{d/(4 theta),
// d/(2(1-(1-theta)lambda_star))}, switching branches at theta_v.
struct LatticeSpectrum {
  std::vector<double> lambda_k;  // k = 1..q-1
  double lambda_star;
  double theta_v;  // (1 - lambda_star) / (2 - lambda_star)
  AutocorrCurve curve;
  double tmix_coefficient;
};

LatticeSpectrum lattice_pattern_spectrum(int d, int q, const std::vector<int>& v, double theta);

// P(X_t(v) = c) = (1 - e^(-theta t))/q + e^(-theta t) (H_s 1_{x0=c})(v) with
// H_s the rate-1 walk semigroup at s = (1-theta) t, applied spectrally.
// Rows sum to 1; entries clamped to [0,1] against rounding.
std::vector<std::vector<double>> marginals(const Spectrum& spec, const ColorConfig& x0,
                                           const ModelParams& p, double t);

// |one-step expectation at w = psi_l pi  minus  (1 - gamma_l/n) Psi_l^(k)(x)|;
// zero in exact arithmetic for every l, k, x.
double eigenfunction_residual(const Graph& g, const ModelParams& p, const Spectrum& spec, int l,
                              int k, const ColorConfig& x);

// Stationary variance of Psi_l^(k): formula value
// (1/gamma_l) sum_v pi^2 |psi_l|^2 (1 - (1-theta) h(v)) with Monte-Carlo error
// propagated from h, plus the exact sandwich bounds
// (theta/gamma_l) sum pi^2 psi^2 <= Var <= (1/gamma_l) sum pi^2 psi^2.
struct VarianceBounds {
  Estimate formula;
  double lower;
  double upper;
};

VarianceBounds stationary_variance(const Graph& g, const ModelParams& p, const Spectrum& spec,
                                   int l, int k, const std::vector<Estimate>& hG);

}  // namespace nv
