// event_gen.hpp — the single source of update events. run_forward consumes
// these directly and gen_history records them, so forward simulation and the
// backward dual walk the exact same path for a given seed.
//
// Draw order per event is fixed and layout-independent:
//   1. gap ~ Exponential(n)        (global clock; each vertex rings at rate 1)
//   2. vertex ~ Uniform{0..n-1}
//   3. coin(theta)                 (true: noise, false: copy)
//   4. noise:  color ~ Uniform{0..q-1}
//      copy:   neighbor index ~ Uniform{0..deg(vertex)-1}
#pragma once

#include "noisyvoter/dual.hpp"
#include "noisyvoter/rng.hpp"

namespace nv {

struct EventGen {
  const Graph& g;
  ModelParams p;
  Rng rng;
  double clock = 0;

  EventGen(const Graph& g_, const ModelParams& p_, uint64_t seed) : g(g_), p(p_), rng(seed) {}

  // Next event strictly after the current clock; false once it passes `until`.
  bool next(double until, Event& e) {
    clock += rng.exponential(static_cast<double>(g.n));
    if (clock > until) return false;
    e.time = clock;
    e.vertex = rng.below(g.n);
    if (rng.coin(p.theta)) {
      e.kind = EventKind::Noise;
      e.value = rng.below(p.q);
    } else {
      e.kind = EventKind::Copy;
      // An isolated vertex has nobody to copy; value -1 marks a no-op.
      e.value = g.deg(e.vertex) > 0 ? rng.below(g.deg(e.vertex)) : -1;
    }
    return true;
  }
};

// Forward application of one event to a configuration.
inline void apply_event_forward(const Graph& g, std::vector<int>& colors, const Event& e) {
  if (e.kind == EventKind::Noise) {
    colors[e.vertex] = e.value;
  } else if (e.value >= 0) {
    colors[e.vertex] = colors[g.adj[e.vertex][e.value]];
  }
}

}  // namespace nv
