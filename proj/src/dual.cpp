#include "noisyvoter/dual.hpp"

#include <algorithm>
#include <cmath>

#include "event_gen.hpp"
#include "noisyvoter/errors.hpp"

namespace nv {

static Estimate binom(long long hits, long long reps) {
  double p = static_cast<double>(hits) / static_cast<double>(reps);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(reps))};
}

static void check_time(double t) {
  if (t < 0 || !std::isfinite(t)) fail(Err::NegativeTime, "time must be finite and nonnegative");
}

static void check_reps(long long reps) {
  if (reps < 1) fail(Err::BadParams, "reps must be at least 1");
}

EventHistory gen_history(const Graph& g, const ModelParams& p, double span, uint64_t seed) {
  check_params(p);
  check_time(span);
  EventHistory h;
  h.horizon = span;
  EventGen gen(g, p, seed);
  Event e;
  while (gen.next(span, e)) {
    h.events.push_back(e);
    if (static_cast<long long>(h.events.size()) > kEventCap)
      fail(Err::EventCap, "event budget exceeded");
  }
  std::reverse(h.events.begin(), h.events.end());
  return h;
}

ColorConfig apply_history(const Graph& g, const ModelParams& p, const ColorConfig& x0,
                          const EventHistory& h) {
  check_params(p);
  check_config(g, x0);
  if (x0.q != p.q) fail(Err::ParamMismatch, "configuration q does not match model q");
  ColorConfig x = x0;
  for (auto it = h.events.rbegin(); it != h.events.rend(); ++it)
    apply_event_forward(g, x.colors, *it);
  return x;
}

void WalkerSystem::init(int n) {
  parent.resize(n);
  position.resize(n);
  occupant.resize(n);
  for (int i = 0; i < n; ++i) parent[i] = position[i] = occupant[i] = i;
  alive.assign(n, 1);
  death_color.assign(n, -1);
  live = n;
}

int WalkerSystem::find(int i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

// Occupant entries are always live cluster roots, so no find() is needed on
// the hot path; merges keep the lowest root id as representative.
void WalkerSystem::apply(const Graph& g, const Event& e) {
  int r = occupant[e.vertex];
  if (r < 0) return;
  if (e.kind == EventKind::Noise) {
    alive[r] = 0;
    death_color[r] = e.value;
    occupant[e.vertex] = -1;
    --live;
    return;
  }
  if (e.value < 0) return;  // copy at an isolated vertex is a no-op
  int u = g.adj[e.vertex][e.value];
  occupant[e.vertex] = -1;
  int s = occupant[u];
  if (s < 0) {
    position[r] = u;
    occupant[u] = r;
    return;
  }
  int root = r < s ? r : s;
  parent[r < s ? s : r] = root;
  position[root] = u;
  occupant[u] = root;
  --live;
}

ColorConfig backward_sample(const Graph& g, const ModelParams& p, const ColorConfig& x0, double t,
                            uint64_t seed) {
  check_params(p);
  check_config(g, x0);
  if (x0.q != p.q) fail(Err::ParamMismatch, "configuration q does not match model q");
  check_time(t);
  EventHistory h = gen_history(g, p, t, seed);
  WalkerSystem ws;
  ws.init(g.n);
  for (const Event& e : h.events) ws.apply(g, e);
  ColorConfig out{p.q, std::vector<int>(g.n)};
  for (int v = 0; v < g.n; ++v) {
    int r = ws.find(v);
    out.colors[v] = ws.alive[r] ? x0[ws.position[r]] : ws.death_color[r];
  }
  return out;
}

// Epoch j of the past covers backward times (2^(j-1), 2^j] (epoch 0: (0,1])
// and is generated from the fixed stream substream(seed, j), so deepening the
// past never rewrites events already consumed. A fully dead system absorbs
// every further event, which is why stopping as soon as possible and stopping
// later give the same configuration.
static constexpr int kMaxEpoch = 40;

static void run_epochs(const Graph& g, const ModelParams& p, uint64_t seed, WalkerSystem& ws,
                       int first_check_epoch) {
  for (int j = 0; j <= kMaxEpoch; ++j) {
    double span = j == 0 ? 1.0 : std::ldexp(1.0, j - 1);
    EventGen gen(g, p, substream(seed, static_cast<uint64_t>(j)));
    Event e;
    while (ws.live > 0 && gen.next(span, e)) ws.apply(g, e);
    if (j >= first_check_epoch && ws.live == 0) return;
  }
  fail(Err::EpochCap, "not all clusters dead within 2^40 time units");
}

CftpSample cftp_sample_detailed(const Graph& g, const ModelParams& p, uint64_t seed,
                                int first_horizon_exp) {
  check_params(p);
  if (first_horizon_exp < 0 || first_horizon_exp > kMaxEpoch)
    fail(Err::BadParams, "first horizon exponent out of range");
  WalkerSystem ws;
  ws.init(g.n);
  run_epochs(g, p, seed, ws, first_horizon_exp);
  CftpSample out;
  out.y.q = p.q;
  out.y.colors.resize(g.n);
  out.cluster.resize(g.n);
  std::vector<char> seen(g.n, 0);
  for (int v = 0; v < g.n; ++v) {
    int r = ws.find(v);
    out.cluster[v] = r;
    out.y.colors[v] = ws.death_color[r];
    if (!seen[r]) {
      seen[r] = 1;
      ++out.n_clusters;
    }
  }
  return out;
}

ColorConfig cftp_sample(const Graph& g, const ModelParams& p, uint64_t seed,
                        int first_horizon_exp) {
  return cftp_sample_detailed(g, p, seed, first_horizon_exp).y;
}

CoupledSample coupled_sample(const Graph& g, const ModelParams& p, const ColorConfig& x0, double t,
                             uint64_t seed) {
  check_params(p);
  check_config(g, x0);
  if (x0.q != p.q) fail(Err::ParamMismatch, "configuration q does not match model q");
  check_time(t);

  WalkerSystem ws;
  ws.init(g.n);
  EventHistory h = gen_history(g, p, t, substream(seed, 0));
  for (const Event& e : h.events) ws.apply(g, e);

  CoupledSample out;
  out.xt.q = out.y.q = p.q;
  out.xt.colors.resize(g.n);
  out.y.colors.resize(g.n);
  out.survived.resize(g.n);
  for (int v = 0; v < g.n; ++v) {
    int r = ws.find(v);
    out.survived[v] = ws.alive[r];
    out.xt.colors[v] = ws.alive[r] ? x0[ws.position[r]] : ws.death_color[r];
  }

  // Keep extending into the past (doubling fresh spans) until every cluster
  // is dead; clusters killed inside [0,t] already carry their color.
  double depth = 0;
  for (int j = 1; ws.live > 0; ++j) {
    if (depth >= std::ldexp(1.0, kMaxEpoch))
      fail(Err::EpochCap, "not all clusters dead within 2^40 extra time units");
    double span = std::ldexp(1.0, j - 1);
    EventGen gen(g, p, substream(seed, static_cast<uint64_t>(j)));
    Event e;
    while (ws.live > 0 && gen.next(span, e)) ws.apply(g, e);
    depth += span;
  }
  for (int v = 0; v < g.n; ++v) out.y.colors[v] = ws.death_color[ws.find(v)];
  return out;
}

// Two dual walkers: combined clock at rate 2, uniform pick; the picked walker
// dies with probability theta (after which coalescence is impossible) or moves
// to a uniform neighbor. Draw order: gap, walker, death coin, neighbor index.
double pair_meet_time(const Graph& g, double theta, int a, int b, Rng& rng) {
  double t = 0;
  long long count = 0;
  while (true) {
    t += rng.exponential(2.0);
    int who = rng.below(2);
    if (rng.coin(theta)) return kNeverMeets;
    int& pos = who == 0 ? a : b;
    pos = g.adj[pos][rng.below(g.deg(pos))];
    if (a == b) return t;
    if (++count > kEventCap) fail(Err::EventCap, "event budget exceeded");
  }
}

PairStats coalescence_probs(const Graph& g, const ModelParams& p, int u, int v, double t,
                            long long reps, uint64_t seed) {
  check_params(p);
  check_reps(reps);
  check_time(t);
  if (u < 0 || u >= g.n || v < 0 || v >= g.n) fail(Err::VertexOutOfRange, "endpoint out of range");
  if (u == v) fail(Err::SameVertex, "coalescence endpoints must differ");
  long long meets = 0, after = 0;
  for (long long k = 0; k < reps; ++k) {
    Rng rng(substream(seed, static_cast<uint64_t>(k)));
    double tau = pair_meet_time(g, p.theta, u, v, rng);
    if (tau < kNeverMeets) {
      ++meets;
      if (tau > t) ++after;
    }
  }
  return {binom(meets, reps), binom(after, reps)};
}

TCorrResult estimate_t_corr(const Graph& g, const ModelParams& p,
                            const std::vector<double>& t_grid, long long reps, uint64_t seed) {
  check_params(p);
  check_reps(reps);
  if (!g.connected) fail(Err::Disconnected, "t_corr threshold needs a connected graph");
  if (t_grid.empty()) fail(Err::BadParams, "empty time grid");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    check_time(t_grid[i]);
    if (i > 0 && !(t_grid[i] > t_grid[i - 1])) fail(Err::BadParams, "grid must increase");
  }

  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(g.m));
  for (int v = 0; v < g.n; ++v)
    for (int u : g.adj[v])
      if (u > v) edges.emplace_back(v, u);

  // Exhaustive over edges up to 10^4; above that, a uniform sample of 10^4
  // edges rescaled by m / sample. Reported errors cover the per-edge
  // Monte-Carlo noise (conditional on the sampled edges).
  const long long kMaxEdges = 10000;
  double scale = 1.0;
  if (g.m > kMaxEdges) {
    Rng pick(substream(seed, 0));
    for (long long i = 0; i < kMaxEdges; ++i) {
      long long j = i + pick.below(static_cast<int>(edges.size() - i));
      std::swap(edges[i], edges[j]);
    }
    edges.resize(kMaxEdges);
    scale = static_cast<double>(g.m) / static_cast<double>(kMaxEdges);
  }

  const std::size_t gsz = t_grid.size();
  std::vector<double> sum(gsz, 0), var(gsz, 0);
  std::vector<long long> hist(gsz + 1);
  for (std::size_t s = 0; s < edges.size(); ++s) {
    std::fill(hist.begin(), hist.end(), 0);
    for (long long k = 0; k < reps; ++k) {
      Rng rng(substream(seed, 1 + s * static_cast<std::size_t>(reps) + static_cast<std::size_t>(k)));
      double tau = pair_meet_time(g, p.theta, edges[s].first, edges[s].second, rng);
      if (tau < kNeverMeets) {
        // tau > t_grid[i] exactly for indices i < idx; one tau serves every
        // grid time (common random numbers)
        std::size_t idx = static_cast<std::size_t>(
            std::lower_bound(t_grid.begin(), t_grid.end(), tau) - t_grid.begin());
        ++hist[idx];
      }
    }
    long long suffix = 0;
    for (std::size_t i = gsz; i-- > 0;) {
      suffix += hist[i + 1];
      double pe = static_cast<double>(suffix) / static_cast<double>(reps);
      sum[i] += pe;
      var[i] += pe * (1.0 - pe) / static_cast<double>(reps);
    }
  }

  TCorrResult out;
  out.sums.resize(gsz);
  for (std::size_t i = 0; i < gsz; ++i)
    out.sums[i] = {scale * sum[i], scale * std::sqrt(var[i])};
  double threshold = std::sqrt(static_cast<double>(g.n));
  for (std::size_t i = 0; i < gsz; ++i) {
    if (out.sums[i].value < threshold) {
      out.t_corr = t_grid[i];
      out.grid_index = i;
      out.sum = out.sums[i];
      return out;
    }
  }
  fail(Err::GridExhausted, "edge coalescence sum never dropped below sqrt(n) on the grid");
}

std::vector<double> pi_restricted(const Graph& g, const std::vector<int>& S) {
  if (S.empty()) fail(Err::EmptySet, "empty vertex set");
  std::vector<double> out(g.n, 0.0);
  double mass = 0;
  for (int v : S) {
    if (v < 0 || v >= g.n) fail(Err::VertexOutOfRange, "set member out of range");
    if (out[v] == 0.0) mass += g.pi[v];
    out[v] = g.pi[v];
  }
  for (int v = 0; v < g.n; ++v) out[v] /= mass;
  return out;
}

Estimate stay_prob(const Graph& g, const ModelParams& p, const std::vector<int>& S, double t,
                   const std::vector<double>& start, long long reps, uint64_t seed) {
  check_params(p);
  check_reps(reps);
  check_time(t);
  if (S.empty()) fail(Err::EmptySet, "empty vertex set");
  if (static_cast<int>(start.size()) != g.n)
    fail(Err::SizeMismatch, "start distribution size does not match graph");
  std::vector<char> in_set(g.n, 0);
  for (int v : S) {
    if (v < 0 || v >= g.n) fail(Err::VertexOutOfRange, "set member out of range");
    in_set[v] = 1;
  }
  double mass = 0;
  for (int v = 0; v < g.n; ++v) {
    if (start[v] < 0) fail(Err::BadParams, "start distribution has a negative entry");
    if (start[v] > 0 && !in_set[v]) fail(Err::BadParams, "start distribution leaves S");
    mass += start[v];
  }
  if (std::fabs(mass - 1.0) > 1e-9) fail(Err::BadParams, "start distribution must sum to 1");

  const double rate = 1.0 - p.theta;  // walk speed; no killing here
  long long stayed = 0;
  for (long long k = 0; k < reps; ++k) {
    Rng rng(substream(seed, static_cast<uint64_t>(k)));
    double u = rng.u01() * mass;
    int pos = g.n - 1;
    double acc = 0;
    for (int v = 0; v < g.n; ++v) {
      acc += start[v];
      if (u < acc) {
        pos = v;
        break;
      }
    }
    bool ok = true;
    if (rate > 0) {
      double clock = 0;
      while (g.deg(pos) > 0) {
        clock += rng.exponential(rate);
        if (clock > t) break;
        pos = g.adj[pos][rng.below(g.deg(pos))];
        if (!in_set[pos]) {
          ok = false;
          break;
        }
      }
    }
    if (ok) ++stayed;
  }
  return binom(stayed, reps);
}

Estimate all_dead_prob(const Graph& g, const ModelParams& p, double t, long long reps,
                       uint64_t seed) {
  check_params(p);
  check_reps(reps);
  check_time(t);
  long long dead = 0;
  WalkerSystem ws;
  for (long long k = 0; k < reps; ++k) {
    ws.init(g.n);
    EventGen gen(g, p, substream(seed, static_cast<uint64_t>(k)));
    Event e;
    while (ws.live > 0 && gen.next(t, e)) ws.apply(g, e);
    if (ws.live == 0) ++dead;
  }
  return binom(dead, reps);
}

std::vector<Estimate> estimate_h(const Graph& g, const ModelParams& p, long long reps,
                                 uint64_t seed) {
  check_params(p);
  check_reps(reps);
  // One meet-probability estimate per unordered edge, shared by both
  // endpoints: h(v) is the degree average of incident edge estimates.
  std::vector<double> num(g.n, 0), varsum(g.n, 0);
  std::size_t edge_index = 0;
  for (int v = 0; v < g.n; ++v) {
    for (int u : g.adj[v]) {
      if (u <= v) continue;
      long long meets = 0;
      for (long long k = 0; k < reps; ++k) {
        Rng rng(substream(seed, edge_index * static_cast<std::size_t>(reps) +
                                    static_cast<std::size_t>(k)));
        if (pair_meet_time(g, p.theta, v, u, rng) < kNeverMeets) ++meets;
      }
      Estimate est = binom(meets, reps);
      num[v] += est.value;
      num[u] += est.value;
      varsum[v] += est.se * est.se;
      varsum[u] += est.se * est.se;
      ++edge_index;
    }
  }
  std::vector<Estimate> out(g.n);
  for (int v = 0; v < g.n; ++v) {
    double d = static_cast<double>(g.deg(v));
    out[v] = {num[v] / d, std::sqrt(varsum[v]) / d};
  }
  return out;
}

}  // namespace nv
