#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "noisyvoter/mixing.hpp"
#include "noisyvoter/spectral.hpp"
#include "oracles.hpp"
#include "support.hpp"

using nv::ColorConfig;
using nv::ModelParams;
using nvtest::thrown_kind;

namespace {

nv::Graph k2() { return nv::build_graph(2, {{0, 1}}); }

std::complex<double> embed(int color, int k, int q) {
  return std::exp(std::complex<double>(0.0, 2.0 * M_PI * k * color / q));
}

// complex sample mean plus the modulus of its componentwise standard error
struct CMean {
  std::complex<double> mean;
  double se;
};

CMean cmean(const std::vector<std::complex<double>>& xs) {
  std::complex<double> s{0, 0};
  for (auto x : xs) s += x;
  std::complex<double> m = s / static_cast<double>(xs.size());
  double vr = 0, vi = 0;
  for (auto x : xs) {
    vr += (x.real() - m.real()) * (x.real() - m.real());
    vi += (x.imag() - m.imag()) * (x.imag() - m.imag());
  }
  double n = static_cast<double>(xs.size());
  return {m, std::sqrt((vr + vi) / (n - 1) / n)};
}

// Cov(A,B) = E[A conj(B)] - E[A] conj(E[B]) from paired samples, with a
// conservative error bound (all samples lie on the unit circle).
struct CovEst {
  std::complex<double> value;
  double se;
};

CovEst complex_cov(const std::vector<std::complex<double>>& as,
                   const std::vector<std::complex<double>>& bs) {
  std::vector<std::complex<double>> prod(as.size());
  for (std::size_t i = 0; i < as.size(); ++i) prod[i] = as[i] * std::conj(bs[i]);
  CMean mp = cmean(prod), ma = cmean(as), mb = cmean(bs);
  return {mp.mean - ma.mean * std::conj(mb.mean), mp.se + ma.se + mb.se};
}

struct MeanSe {
  double mean;
  double se;
};

MeanSe mean_se(const std::vector<double>& xs) {
  double s = 0;
  for (double x : xs) s += x;
  double m = s / static_cast<double>(xs.size());
  double v = 0;
  for (double x : xs) v += (x - m) * (x - m);
  double n = static_cast<double>(xs.size());
  return {m, std::sqrt(v / (n - 1) / n)};
}

}  // namespace

TEST_SUITE("mixing") {

TEST_CASE("config encoding round trip and caps") {
  CHECK(nv::config_count(3, 4) == 81);
  CHECK(nv::config_count(2, 22) == 4194304);
  for (long long s = 0; s < 81; ++s) {
    ColorConfig x = nv::decode_config(s, 3, 4);
    CHECK(x.q == 3);
    CHECK(x.n() == 4);
    CHECK(nv::encode_config(x) == s);
  }
  ColorConfig x{3, {2, 0, 1, 2}};
  CHECK(nv::decode_config(nv::encode_config(x), 3, 4).colors == x.colors);
  // vertex 0 is the least-significant digit
  CHECK(nv::encode_config(ColorConfig{3, {2, 0, 1, 2}}) == 2 + 9 + 54);

  CHECK(thrown_kind([] { nv::config_count(2, 23); }) == nv::Err::StateSpaceTooLarge);
  CHECK(thrown_kind([] { nv::exact_distribution(nv::torus(5, 2), {0.5, 3},
                                                nv::monochromatic(25, 3, 0), 1.0); }) ==
        nv::Err::StateSpaceTooLarge);
}

TEST_CASE("exact_distribution point mass at t=0") {
  nv::Graph g = nv::torus(4, 1);
  ColorConfig x0{2, {0, 1, 1, 0}};
  nv::ExactDistribution d = nv::exact_distribution(g, {0.5, 2}, x0, 0.0);
  for (long long s = 0; s < 16; ++s)
    CHECK(std::fabs(d.probs[s] - (s == nv::encode_config(x0) ? 1.0 : 0.0)) <= 1e-12);
}

TEST_CASE("exact_distribution pure-noise product form") {
  nv::Graph g = nv::torus(4, 1);
  ColorConfig x0{2, {0, 1, 1, 0}};
  double t = 0.7;
  nv::ExactDistribution d = nv::exact_distribution(g, {1.0, 2}, x0, t);
  double total = 0;
  for (long long s = 0; s < 16; ++s) {
    ColorConfig x = nv::decode_config(s, 2, 4);
    double expect = 1;
    for (int v = 0; v < 4; ++v)
      expect *= (1 - std::exp(-t)) / 2 + (x[v] == x0[v] ? std::exp(-t) : 0.0);
    CHECK(std::fabs(d.probs[s] - expect) <= 1e-10);
    total += d.probs[s];
  }
  CHECK(std::fabs(total - 1.0) <= 1e-12);
}

TEST_CASE("exact_distribution agrees with the matrix-exponential oracle") {
  nv::Graph g = k2();
  ModelParams p{0.4, 3};
  ColorConfig x0{3, {2, 0}};
  for (double t : {0.2, 1.0, 3.5}) {
    nv::ExactDistribution d = nv::exact_distribution(g, p, x0, t);
    std::vector<double> oracle = nvtest::chain_dist_at(g, p, x0, t);
    for (std::size_t s = 0; s < 9; ++s) CHECK(std::fabs(d.probs[s] - oracle[s]) <= 1e-9);
  }
}

TEST_CASE("exact_distribution_uniform") {
  nv::Graph g = nv::torus(4, 1);
  // pure noise keeps the uniform distribution invariant
  nv::ExactDistribution du = nv::exact_distribution_uniform(g, {1.0, 2}, 0.9);
  for (double pr : du.probs) CHECK(std::fabs(pr - 1.0 / 16) <= 1e-10);

  // uniform start equals the average over all point starts
  ModelParams p{0.5, 2};
  nv::ExactDistribution mix = nv::exact_distribution_uniform(g, p, 0.8);
  std::vector<double> avg(16, 0.0);
  for (long long s0 = 0; s0 < 16; ++s0) {
    nv::ExactDistribution d = nv::exact_distribution(g, p, nv::decode_config(s0, 2, 4), 0.8);
    for (int s = 0; s < 16; ++s) avg[s] += d.probs[s] / 16;
  }
  for (int s = 0; s < 16; ++s) CHECK(std::fabs(mix.probs[s] - avg[s]) <= 1e-10);
}

TEST_CASE("exact_stationary") {
  // pure noise: uniform over all configurations
  nv::ExactDistribution u = nv::exact_stationary(nv::torus(4, 1), {1.0, 2});
  for (double pr : u.probs) CHECK(std::fabs(pr - 1.0 / 16) <= 1e-10);

  // K_2 agreement probability 3/4 at theta = 1/2
  nv::ExactDistribution s2 = nv::exact_stationary(k2(), {0.5, 2});
  CHECK(std::fabs(s2.probs[0] + s2.probs[3] - 0.75) <= 1e-9);

  // single-site marginals are uniform by color symmetry
  nv::ExactDistribution s5 = nv::exact_stationary(nv::torus(5, 1), {0.3, 3});
  for (int v = 0; v < 5; ++v) {
    std::vector<double> m = nv::single_site_marginal(s5, v);
    for (double pr : m) CHECK(std::fabs(pr - 1.0 / 3) <= 1e-10);
  }

  // brute-force generator null space as referee
  for (auto [g, p] : {std::pair{k2(), ModelParams{0.6, 3}},
                      std::pair{nv::torus(4, 1), ModelParams{0.35, 2}}}) {
    nv::ExactDistribution st = nv::exact_stationary(g, p);
    std::vector<double> oracle = nvtest::chain_stationary(g, p);
    for (std::size_t s = 0; s < oracle.size(); ++s)
      CHECK(std::fabs(st.probs[s] - oracle[s]) <= 1e-9);
  }
}

TEST_CASE("tv_distance basics") {
  nv::Graph g = nv::torus(4, 1);
  nv::ExactDistribution a = nv::exact_distribution(g, {0.5, 2}, nv::monochromatic(4, 2, 0), 0.4);
  CHECK(nv::tv_distance(a, a) == 0.0);

  nv::ExactDistribution p0 = nv::exact_distribution(g, {0.5, 2}, nv::monochromatic(4, 2, 0), 0.0);
  nv::ExactDistribution p1 = nv::exact_distribution(g, {0.5, 2}, nv::monochromatic(4, 2, 1), 0.0);
  CHECK(std::fabs(nv::tv_distance(p0, p1) - 1.0) <= 1e-12);

  nv::ExactDistribution other = nv::exact_distribution(k2(), {0.5, 2}, ColorConfig{2, {0, 0}}, 0.0);
  CHECK(thrown_kind([&] { nv::tv_distance(p0, other); }) == nv::Err::ShapeMismatch);
}

TEST_CASE("tv profile decreases to stationarity") {
  nv::Graph g = nv::torus(6, 1);
  ModelParams p{0.5, 2};
  ColorConfig x0 = nv::monochromatic(6, 2, 0);
  nv::ExactDistribution mu = nv::exact_stationary(g, p);
  std::vector<double> mu_oracle = nvtest::chain_stationary(g, p);

  double prev = 2.0;
  for (int i = 0; i <= 12; ++i) {
    double t = 0.5 * i;
    nv::ExactDistribution dt = nv::exact_distribution(g, p, x0, t);
    double dtv = nv::tv_distance(dt, mu);
    CHECK(dtv < prev);  // strictly decreasing along this grid
    prev = dtv;

    // referee route: matrix exponential against the null-space stationary law
    std::vector<double> dist_oracle = nvtest::chain_dist_at(g, p, x0, t);
    double dtv_oracle = 0;
    for (std::size_t s = 0; s < dist_oracle.size(); ++s)
      dtv_oracle += std::fabs(dist_oracle[s] - mu_oracle[s]);
    CHECK(std::fabs(dtv - 0.5 * dtv_oracle) <= 1e-9);
  }

  // well mixed by three times the crude (1/(2 theta)) log(q^n) scale
  double tstar = 3.0 * std::log(64.0);
  CHECK(nv::tv_distance(nv::exact_distribution(g, p, x0, tstar), mu) < 0.05);
}

TEST_CASE("spectral marginals match exact vertex marginals") {
  struct Inst {
    nv::Graph g;
    ModelParams p;
    ColorConfig x0;
    double t;
  };
  std::vector<Inst> insts;
  insts.push_back({nv::torus(5, 1), {0.4, 3}, nv::uniform_random(5, 3, 21), 0.8});
  insts.push_back({nv::torus(6, 1), {0.7, 2}, nv::alternating(nv::torus(6, 1), 2), 1.3});
  for (const auto& inst : insts) {
    auto spec_marg = nv::marginals(nv::eigendecompose(inst.g), inst.x0, inst.p, inst.t);
    nv::ExactDistribution d = nv::exact_distribution(inst.g, inst.p, inst.x0, inst.t);
    for (int v = 0; v < inst.g.n; ++v) {
      std::vector<double> exact = nv::single_site_marginal(d, v);
      for (int c = 0; c < inst.p.q; ++c) CHECK(std::fabs(spec_marg[v][c] - exact[c]) <= 1e-8);
    }
  }
}

TEST_CASE("statistic_R_auto at one-hot marginals") {
  nv::Graph g = nv::torus(6, 1);
  ColorConfig x0 = nv::uniform_random(6, 3, 3);
  std::vector<std::vector<double>> onehot(6, std::vector<double>(3, 0.0));
  for (int v = 0; v < 6; ++v) onehot[v][static_cast<size_t>(x0[v])] = 1.0;
  CHECK(nv::statistic_R_auto(onehot, x0, g) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

  auto spec_marg = nv::marginals(nv::eigendecompose(g), x0, {0.5, 3}, 0.0);
  CHECK(std::fabs(nv::statistic_R_auto(spec_marg, x0, g) - 2.0 / 3.0) <= 1e-9);

  std::vector<std::vector<double>> bad(5, std::vector<double>(3, 1.0 / 3));
  CHECK(thrown_kind([&] { nv::statistic_R_auto(bad, x0, g); }) == nv::Err::ShapeMismatch);
}

TEST_CASE("statistic_R_auto means: autocorrelation at time t, zero at stationarity") {
  nv::Graph g = nv::torus(6, 1);
  ModelParams p{0.5, 3};
  ColorConfig x0 = nv::lattice_pattern(6, 1, 3, {1});
  double t = 0.7;
  nv::Spectrum spec = nv::eigendecompose(g);
  auto marg = nv::marginals(spec, x0, p, t);
  double a2 = nv::eval_autocorr(nv::autocorr_curve(spec, x0, p), t);

  const int reps = 20000;
  std::vector<double> rt(reps), rmu(reps);
  for (int i = 0; i < reps; ++i) {
    ColorConfig xt = nv::backward_sample(g, p, x0, t, nv::substream(501, i));
    rt[static_cast<size_t>(i)] = nv::statistic_R_auto(marg, xt, g);
    ColorConfig y = nv::cftp_sample(g, p, nv::substream(502, i));
    rmu[static_cast<size_t>(i)] = nv::statistic_R_auto(marg, y, g);
  }
  MeanSe mt = mean_se(rt);
  CHECK(std::fabs(mt.mean - a2) <= 4 * mt.se);
  MeanSe mm = mean_se(rmu);
  CHECK(std::fabs(mm.mean) <= 4 * mm.se);
}

TEST_CASE("statistic_R_edge under uniform marginals") {
  nv::Graph g = nv::torus(5, 1);
  auto marg = nv::marginals(nv::eigendecompose(g), nv::monochromatic(5, 3, 1), {1.0, 3}, 40.0);
  for (uint64_t s = 0; s < 3; ++s) {
    ColorConfig x = nv::uniform_random(5, 3, 100 + s);
    double expect = 0;
    for (int v = 0; v < 5; ++v)
      for (int u : g.adj[v])
        if (u > v) expect += (x[v] == x[u] ? 1.0 : 0.0) - 1.0 / 3;
    CHECK(std::fabs(nv::statistic_R_edge(g, marg, x) - expect) <= 1e-10);
  }
  std::vector<std::vector<double>> bad(5, std::vector<double>(2, 0.5));
  CHECK(thrown_kind([&] { nv::statistic_R_edge(g, bad, nv::uniform_random(5, 3, 1)); }) ==
        nv::Err::ShapeMismatch);
}

TEST_CASE("edge statistic mean gap dominates the coalescence mass") {
  nv::Graph g = nv::torus(6, 1);
  ModelParams p{0.3, 2};
  ColorConfig x0 = nv::uniform_random(6, 2, 42);
  nv::Spectrum spec = nv::eigendecompose(g);
  const int reps = 20000;

  std::vector<ColorConfig> ys;
  ys.reserve(reps);
  for (int i = 0; i < reps; ++i) ys.push_back(nv::cftp_sample(g, p, nv::substream(601, i)));

  for (double t : {0.5, 1.0}) {
    auto marg = nv::marginals(spec, x0, p, t);
    std::vector<double> rmu(reps), rt(reps);
    for (int i = 0; i < reps; ++i) {
      rmu[static_cast<size_t>(i)] = nv::statistic_R_edge(g, marg, ys[static_cast<size_t>(i)]);
      ColorConfig xt = nv::run_forward(g, p, x0, t, nv::substream(602, i));
      rt[static_cast<size_t>(i)] = nv::statistic_R_edge(g, marg, xt);
    }
    MeanSe mu = mean_se(rmu), mt = mean_se(rt);

    double pa_sum = 0, pa_var = 0;
    for (int v = 0; v < g.n; ++v)
      for (int u : g.adj[v])
        if (u > v) {
          nv::PairStats cp =
              nv::coalescence_probs(g, p, v, u, t, reps, nv::substream(603, v * 7 + u));
          pa_sum += cp.p_after.value;
          pa_var += cp.p_after.se * cp.p_after.se;
        }
    double sigma = std::sqrt(mu.se * mu.se + mt.se * mt.se + 0.25 * pa_var);
    CHECK(mu.mean - mt.mean >= 0.5 * pa_sum - 4 * sigma);
  }
}

TEST_CASE("covariance gap is real and dominates the late-coalescence probability") {
  nv::Graph g = nv::torus(6, 1);
  ModelParams p{0.5, 3};
  ColorConfig x0 = nv::lattice_pattern(6, 1, 3, {1});
  double t = 0.5;
  const int reps = 20000;

  std::vector<ColorConfig> ys, xs;
  ys.reserve(reps);
  xs.reserve(reps);
  for (int i = 0; i < reps; ++i) {
    ys.push_back(nv::cftp_sample(g, p, nv::substream(701, i)));
    xs.push_back(nv::run_forward(g, p, x0, t, nv::substream(702, i)));
  }

  struct Pair {
    int u, v;
  };
  for (Pair pr : {Pair{0, 1}, Pair{2, 3}, Pair{0, 3}}) {
    nv::PairStats cp =
        nv::coalescence_probs(g, p, pr.u, pr.v, t, reps, nv::substream(703, pr.u * 11 + pr.v));
    for (int k = 1; k < 3; ++k) {
      std::vector<std::complex<double>> au(reps), av(reps), bu(reps), bv(reps);
      for (int i = 0; i < reps; ++i) {
        au[static_cast<size_t>(i)] = embed(ys[static_cast<size_t>(i)][pr.u], k, 3);
        av[static_cast<size_t>(i)] = embed(ys[static_cast<size_t>(i)][pr.v], k, 3);
        bu[static_cast<size_t>(i)] = embed(xs[static_cast<size_t>(i)][pr.u], k, 3);
        bv[static_cast<size_t>(i)] = embed(xs[static_cast<size_t>(i)][pr.v], k, 3);
      }
      CovEst cmu = complex_cov(au, av);
      CovEst ct = complex_cov(bu, bv);
      std::complex<double> gap = cmu.value - ct.value - cp.p_after.value;
      double sigma = cmu.se + ct.se + cp.p_after.se;
      CHECK(gap.real() >= -4 * sigma);
      CHECK(std::fabs(gap.imag()) <= 4 * sigma);
      // the stationary covariance itself equals the meeting probability
      CHECK(std::fabs(cmu.value.real() - cp.p_meet.value) <=
            4 * (cmu.se + cp.p_meet.se));
    }
  }
}

TEST_CASE("empirical_autocorr") {
  nv::Graph c12 = nv::torus(12, 1);

  nv::Estimate e0 = nv::empirical_autocorr(c12, {0.5, 3}, nv::lattice_pattern(12, 1, 3, {1}), 0.0,
                                           1000, 17);
  CHECK(e0.value == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(e0.se == 0.0);

  // rainbow on the 12-cycle: closed-form (2/3) e^(-2.5) at theta=1/2, t=1
  nv::Estimate er = nv::empirical_autocorr(c12, {0.5, 3}, nv::lattice_pattern(12, 1, 3, {1}), 1.0,
                                           40000, 18);
  CHECK(std::fabs(er.value - 0.05472333241593253) <= 4 * er.se + 1e-12);
  CHECK(er.se > 0);

  // monochromatic closed form ((q-1)/q) e^(-2 theta t)
  nv::Graph c7 = nv::torus(7, 1);
  nv::Estimate em = nv::empirical_autocorr(c7, {0.8, 4}, nv::monochromatic(7, 4, 2), 0.6, 40000, 19);
  CHECK(std::fabs(em.value - 0.75 * std::exp(-0.96)) <= 4 * em.se + 1e-12);

  CHECK(thrown_kind([&] { nv::empirical_autocorr(c7, {0.8, 4}, nv::monochromatic(7, 4, 2), 0.6, 1,
                                                 20); }) == nv::Err::BadParams);
}

}  // TEST_SUITE
