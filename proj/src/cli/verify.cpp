#include "cli/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

#include "noisyvoter/mixing.hpp"
#include "noisyvoter/spectral.hpp"

namespace nvcli {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

struct Checker {
  int failures = 0;
  int total = 0;
  void check(const std::string& name, bool pass, const std::string& detail) {
    ++total;
    if (!pass) ++failures;
    std::printf("[%s] %s: %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  }
  // measured value against an upper bound
  void leq(const std::string& name, double value, double bound) {
    check(name, value <= bound, "measured=" + num(value) + " bound=" + num(bound));
  }
};

void suite_graph(Checker& c) {
  nv::Graph t62 = nv::torus(6, 2);
  double pi_sum = 0;
  for (double pv : t62.pi) pi_sum += pv;
  c.leq("graph.pi_sums_to_one", std::fabs(pi_sum - 1.0), 1e-12);

  nv::Graph t42 = nv::torus(4, 2);
  std::vector<int> S{0, 1, 2, 3, 5, 8};
  std::vector<char> in(static_cast<size_t>(t42.n), 0);
  for (int v : S) in[static_cast<size_t>(v)] = 1;
  long long cut = 0, vol = 0;
  for (int v : S) {
    vol += t42.deg(v);
    for (int u : t42.adj[v]) cut += in[static_cast<size_t>(u)] ? 0 : 1;
  }
  double phi = nv::conductance(t42, S);
  c.leq("graph.conductance_cut_identity", std::fabs(phi * static_cast<double>(vol) - static_cast<double>(cut)),
        1e-9);

  auto parts = nv::bipartition(t42);
  bool bip_ok = parts.has_value() && parts->first.size() == 8 && parts->second.size() == 8;
  if (bip_ok) {
    std::vector<int> side(static_cast<size_t>(t42.n), 0);
    for (int v : parts->second) side[static_cast<size_t>(v)] = 1;
    for (int v = 0; v < t42.n && bip_ok; ++v)
      for (int u : t42.adj[v]) bip_ok = bip_ok && side[static_cast<size_t>(u)] != side[static_cast<size_t>(v)];
  }
  c.check("graph.bipartition_of_even_torus", bip_ok, bip_ok ? "parts=8/8" : "invalid parts");
  c.check("graph.odd_cycle_not_bipartite", !nv::bipartition(nv::torus(5, 1)).has_value(),
          "cycle n=5");

  int r = nv::low_conductance_ball(nv::torus(1000, 1), 0, 10, 0.5);
  c.check("graph.low_conductance_ball_cycle", r == 10, "radius=" + std::to_string(r));
}

void suite_patterns(Checker& c) {
  nv::ColorConfig x = nv::uniform_random(30, 4, 7);
  std::stringstream ss;
  nv::write_colors(ss, x);
  nv::ColorConfig back = nv::read_colors(ss);
  c.check("patterns.serialize_round_trip", back.q == x.q && back.colors == x.colors,
          "n=30 q=4");

  nv::Graph c6 = nv::torus(6, 1);
  nv::ColorConfig alt = nv::alternating(c6, 2);
  bool proper = true;
  for (int v = 0; v < 6; ++v)
    for (int u : c6.adj[v]) proper = proper && alt[u] != alt[v];
  c.check("patterns.alternating_is_proper", proper, "cycle n=6");

  nv::ColorConfig knt = nv::lattice_pattern(10, 2, 5, {1, 2});
  bool knight_ok = true;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) knight_ok = knight_ok && knt[i * 10 + j] == (i + 2 * j) % 5;
  c.check("patterns.knight_phase_rule", knight_ok, "10x10, v=(1,2), q=5");

  nv::ColorConfig big = nv::uniform_random(20000, 4, 11);
  std::vector<int> counts(4, 0);
  for (int v = 0; v < 20000; ++v) counts[static_cast<size_t>(big[v])]++;
  double sigma = std::sqrt(20000 * 0.25 * 0.75);
  double worst = 0;
  for (int cnt : counts) worst = std::max(worst, std::fabs(cnt - 5000.0) / sigma);
  c.leq("patterns.uniform_color_frequencies", worst, 6.0);
}

void suite_dynamics(Checker& c) {
  nv::Graph c9 = nv::torus(9, 1);
  nv::ModelParams p{0.5, 3};
  nv::ColorConfig x0 = nv::uniform_random(9, 3, 4);
  nv::ColorConfig still = nv::run_forward(c9, p, x0, 0.0, 3);
  c.check("dynamics.time_zero_identity", still.colors == x0.colors, "cycle n=9");

  // pure noise: each site refreshed independently, closed-form marginals
  nv::Graph c5 = nv::torus(5, 1);
  nv::ModelParams pn{1.0, 3};
  nv::ColorConfig y0 = nv::monochromatic(5, 3, 2);
  const int reps = 20000;
  double t = 0.7;
  std::vector<std::vector<int>> counts(5, std::vector<int>(3, 0));
  for (int k = 0; k < reps; ++k) {
    nv::ColorConfig xt = nv::run_forward(c5, pn, y0, t, nv::substream(41, static_cast<uint64_t>(k)));
    for (int v = 0; v < 5; ++v) counts[static_cast<size_t>(v)][static_cast<size_t>(xt[v])]++;
  }
  double worst = 0;
  for (int v = 0; v < 5; ++v)
    for (int col = 0; col < 3; ++col) {
      double expect = (1 - std::exp(-t)) / 3 + (col == y0[v] ? std::exp(-t) : 0.0);
      double se = std::sqrt(expect * (1 - expect) / reps);
      worst = std::max(worst, std::fabs(counts[static_cast<size_t>(v)][static_cast<size_t>(col)] / double(reps) - expect) / se);
    }
  c.leq("dynamics.pure_noise_refresh_marginals", worst, 5.0);

  nv::Graph t42 = nv::torus(4, 2);
  nv::Spectrum spec = nv::eigendecompose(t42);
  nv::ModelParams pe{0.35, 3};
  nv::ColorConfig xe = nv::uniform_random(16, 3, 6);
  double res = 0;
  for (int l = 0; l < 16; ++l)
    for (int k = 1; k < 3; ++k)
      res = std::max(res, nv::eigenfunction_residual(t42, pe, spec, l, k, xe));
  c.leq("dynamics.eigenfunction_residual", res, 1e-9);
}

void suite_dual(Checker& c) {
  nv::Graph c7 = nv::torus(7, 1);
  nv::ModelParams p{0.45, 3};
  nv::ColorConfig x0 = nv::uniform_random(7, 3, 5);
  int mismatches = 0;
  for (uint64_t s = 1; s <= 20; ++s) {
    nv::ColorConfig fwd = nv::run_forward(c7, p, x0, 1.5, s);
    nv::ColorConfig bwd = nv::backward_sample(c7, p, x0, 1.5, s);
    if (fwd.colors != bwd.colors) ++mismatches;
  }
  c.check("dual.backward_equals_forward", mismatches == 0,
          "mismatched seeds=" + std::to_string(mismatches) + "/20");

  nv::Graph c5 = nv::torus(5, 1);
  nv::ModelParams p2{0.5, 2};
  const long long reps = 200000;
  std::vector<double> hist(32, 0.0);
  for (long long k = 0; k < reps; ++k) {
    nv::ColorConfig y = nv::cftp_sample(c5, p2, nv::substream(77, static_cast<uint64_t>(k)));
    hist[static_cast<size_t>(nv::encode_config(y))] += 1.0 / static_cast<double>(reps);
  }
  nv::ExactDistribution mu = nv::exact_stationary(c5, p2);
  double tv = 0;
  for (int s = 0; s < 32; ++s) tv += std::fabs(hist[static_cast<size_t>(s)] - mu.probs[static_cast<size_t>(s)]);
  c.leq("dual.cftp_matches_exact_stationary", 0.5 * tv,
        3.0 * std::sqrt(32.0 / (2.0 * static_cast<double>(reps))));

  nv::Graph k2 = nv::build_graph(2, {{0, 1}});
  nv::ModelParams pk{0.3, 2};
  nv::PairStats ps = nv::coalescence_probs(k2, pk, 0, 1, 1.0, 100000, 88);
  c.leq("dual.pair_meet_closed_form", std::fabs(ps.p_meet.value - 0.7), 5 * ps.p_meet.se);
  c.leq("dual.pair_after_closed_form", std::fabs(ps.p_after.value - 0.7 * std::exp(-2.0)),
        5 * ps.p_after.se);

  std::vector<nv::Estimate> h = nv::estimate_h(k2, pk, 20000, 89);
  c.leq("dual.h_closed_form", std::fabs(h[0].value - 0.7), 5 * h[0].se);
}

void suite_spectral(Checker& c, bool inject_fault) {
  nv::Graph t52 = nv::torus(5, 2);
  nv::Spectrum spec = nv::eigendecompose(t52);
  if (inject_fault) spec.lambdas[1] += 1e-3;
  double res = 0;
  for (int l = 0; l < t52.n; ++l)
    for (int v = 0; v < t52.n; ++v) {
      double avg = 0;
      for (int u : t52.adj[v]) avg += spec.psis[static_cast<size_t>(l)][static_cast<size_t>(u)];
      avg /= t52.deg(v);
      res = std::max(res, std::fabs(avg - spec.lambdas[static_cast<size_t>(l)] *
                                              spec.psis[static_cast<size_t>(l)][static_cast<size_t>(v)]));
    }
  c.leq("spectral.eigen_residual", res, 1e-9);

  double ortho = 0;
  for (int i = 0; i < t52.n; ++i)
    for (int j = 0; j <= i; ++j) {
      double dot = 0;
      for (int v = 0; v < t52.n; ++v)
        dot += spec.psis[static_cast<size_t>(i)][static_cast<size_t>(v)] *
               spec.psis[static_cast<size_t>(j)][static_cast<size_t>(v)] * spec.pi[static_cast<size_t>(v)];
      ortho = std::max(ortho, std::fabs(dot - (i == j ? 1.0 : 0.0)));
    }
  c.leq("spectral.orthonormality", ortho, 1e-9);

  nv::Graph c6 = nv::torus(6, 1);
  nv::ModelParams p3{0.5, 3};
  nv::AutocorrCurve cur = nv::autocorr_curve(nv::eigendecompose(c6), nv::lattice_pattern(6, 1, 3, {1}), p3);
  double flav = 0;
  for (double t : {0.0, 0.3, 1.1, 2.7})
    flav = std::max(flav, std::fabs(nv::eval_autocorr(cur, t, nv::Flavor::A2) -
                                    nv::eval_autocorr(cur, 2 * t, nv::Flavor::A1)));
  c.leq("spectral.flavor_identity", flav, 1e-12);

  nv::Graph c8 = nv::torus(8, 1);
  double theta = 0.4;
  nv::AutocorrCurve c8c =
      nv::autocorr_curve(nv::eigendecompose(c8), nv::uniform_random(8, 2, 9), {theta, 2});
  double margin = 0;  // worst violation of the submultiplicative sandwich
  for (double t : {0.0, 0.5, 1.5})
    for (double s : {0.2, 1.0}) {
      double ratio = nv::eval_autocorr(c8c, t + s) / nv::eval_autocorr(c8c, t);
      margin = std::max(margin, std::exp(-(4 - 2 * theta) * s) - ratio);
      margin = std::max(margin, ratio - std::exp(-2 * theta * s));
    }
  c.leq("spectral.submultiplicative_sandwich", margin, 1e-12);

  nv::Graph c100 = nv::torus(100, 1);
  nv::AutocorrCurve mono =
      nv::autocorr_curve(nv::eigendecompose(c100), nv::monochromatic(100, 2, 0), {0.5, 2});
  c.leq("spectral.t_x0_closed_form", std::fabs(nv::t_x0(mono, 100) - std::log(50.0)),
        1e-6 * std::log(50.0));

  nv::LatticeSpectrum knt = nv::lattice_pattern_spectrum(2, 5, {1, 2}, 0.3);
  nv::LatticeSpectrum rbw = nv::lattice_pattern_spectrum(2, 5, {1, 1}, 0.3);
  double thr = std::max(std::fabs(knt.theta_v - 5.0 / 9.0),
                        std::fabs(rbw.theta_v - (10.0 - std::sqrt(5.0)) / 19.0));
  c.leq("spectral.lattice_phase_thresholds", thr, 1e-12);

  nv::Graph k2 = nv::build_graph(2, {{0, 1}});
  nv::Spectrum k2s = nv::eigendecompose(k2);
  std::vector<nv::Estimate> h = nv::estimate_h(k2, {0.5, 2}, 20000, 90);
  nv::VarianceBounds vb = nv::stationary_variance(k2, {0.5, 2}, k2s, 1, 1, h);
  bool sandwich = vb.lower <= vb.formula.value + 5 * vb.formula.se &&
                  vb.formula.value <= vb.upper + 5 * vb.formula.se;
  c.check("spectral.variance_sandwich", sandwich,
          "lower=" + num(vb.lower) + " formula=" + num(vb.formula.value) + " upper=" + num(vb.upper));
}

void suite_mixing(Checker& c) {
  nv::Graph c6 = nv::torus(6, 1);
  nv::ModelParams p{0.5, 2};
  nv::ColorConfig x0 = nv::monochromatic(6, 2, 0);
  nv::ExactDistribution mu = nv::exact_stationary(c6, p);
  double prev = 2.0, min_drop = 1.0;
  for (int i = 0; i <= 6; ++i) {
    double dtv = nv::tv_distance(nv::exact_distribution(c6, p, x0, static_cast<double>(i)), mu);
    min_drop = std::min(min_drop, prev - dtv);
    prev = dtv;
  }
  c.check("mixing.tv_profile_monotone", min_drop >= 0, "min decrement=" + num(min_drop));

  nv::Graph c5 = nv::torus(5, 1);
  nv::ModelParams p5{0.4, 3};
  nv::ColorConfig x5 = nv::uniform_random(5, 3, 21);
  auto marg = nv::marginals(nv::eigendecompose(c5), x5, p5, 0.8);
  nv::ExactDistribution d5 = nv::exact_distribution(c5, p5, x5, 0.8);
  double gap = 0;
  for (int v = 0; v < 5; ++v) {
    std::vector<double> m = nv::single_site_marginal(d5, v);
    for (int col = 0; col < 3; ++col)
      gap = std::max(gap, std::fabs(marg[static_cast<size_t>(v)][static_cast<size_t>(col)] - m[static_cast<size_t>(col)]));
  }
  c.leq("mixing.spectral_vs_exact_marginals", gap, 1e-8);

  nv::Graph c7 = nv::torus(7, 1);
  nv::Estimate em = nv::empirical_autocorr(c7, {0.8, 4}, nv::monochromatic(7, 4, 2), 0.6, 20000, 91);
  c.leq("mixing.empirical_autocorr_closed_form", std::fabs(em.value - 0.75 * std::exp(-0.96)),
        5 * em.se);

  nv::ModelParams p3{0.5, 3};
  nv::ColorConfig rbw = nv::lattice_pattern(6, 1, 3, {1});
  auto marg_t = nv::marginals(nv::eigendecompose(c6), rbw, p3, 0.7);
  const int reps = 20000;
  double sum = 0, sumsq = 0;
  for (int k = 0; k < reps; ++k) {
    nv::ColorConfig y = nv::cftp_sample(c6, p3, nv::substream(92, static_cast<uint64_t>(k)));
    double r = nv::statistic_R_auto(marg_t, y, c6);
    sum += r;
    sumsq += r * r;
  }
  double mean = sum / reps;
  double se = std::sqrt(std::max(sumsq / reps - mean * mean, 0.0) / reps);
  c.leq("mixing.stationary_statistic_mean_zero", std::fabs(mean), 5 * se);

  nv::ExactDistribution s5 = nv::exact_stationary(c5, {0.3, 3});
  double mgap = 0;
  for (int v = 0; v < 5; ++v)
    for (double pv : nv::single_site_marginal(s5, v)) mgap = std::max(mgap, std::fabs(pv - 1.0 / 3));
  c.leq("mixing.stationary_marginals_uniform", mgap, 1e-10);
}

}  // namespace

int cmd_verify(const std::string& suite, bool inject_fault) {
  std::map<std::string, std::function<void(Checker&)>> suites{
      {"graph", suite_graph},
      {"patterns", suite_patterns},
      {"dynamics", suite_dynamics},
      {"dual", suite_dual},
      {"spectral", [&](Checker& c) { suite_spectral(c, inject_fault); }},
      {"mixing", suite_mixing},
  };
  std::vector<std::string> order;
  if (suite == "all") {
    order = {"graph", "patterns", "dynamics", "dual", "spectral", "mixing"};
  } else if (suites.count(suite)) {
    order = {suite};
  } else {
    nv::fail(nv::Err::BadConfig, "unknown verify suite: " + suite);
  }

  auto start = std::chrono::steady_clock::now();
  Checker c;
  for (const auto& name : order) suites[name](c);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("verify: %d checks, %d failed (%.1fs)\n", c.total, c.failures, secs);
  if (secs > 600) std::printf("warning: verify exceeded the 10 minute budget\n");
  return c.failures == 0 ? 0 : 1;
}

}  // namespace nvcli
