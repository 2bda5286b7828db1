// graph.hpp — immutable simple undirected graphs and the geometric queries
// (balls, growth, conductance, bipartition) the other modules build on.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "noisyvoter/errors.hpp"

namespace nv {

// Immutable after construction; all queries are read-only and reentrant.
struct Graph {
  int n = 0;
  std::vector<std::vector<int>> adj;  // per-vertex sorted neighbor lists
  long long m = 0;                    // |E|
  std::vector<int> degree;
  std::vector<double> pi;  // d(v) / (2|E|), random-walk stationary measure
  bool connected = false;  // checked once at build time
  long long duplicates_removed = 0;  // parallel edges silently deduplicated

  int deg(int v) const { return degree[v]; }
};

struct GrowthParams {
  double c0;     // > 0
  double alpha;  // in (0,1)
};

struct GrowthViolation {
  int v;
  int r;
  long long ball_size;
  double bound;  // c0 * exp(r^(1-alpha))
};

// Deduplicates edges; rejects self-loops and out-of-range endpoints.
Graph build_graph(int n, const std::vector<std::pair<int, int>>& edges);

// d-dimensional torus with the given side, vertices in row-major order
// (coordinate 0 slowest). side >= 3 so wrap edges stay simple.
Graph torus(int side, int dim);

// {u : dist(v,u) <= r} by breadth-first search, sorted ascending.
std::vector<int> ball(const Graph& g, int v, int r);

// Violations of |B_v(r)| <= c0 * exp(r^(1-alpha)) over sampled (or all)
// vertices and the given radii. Empty report iff the condition holds at every
// pair checked.
std::vector<GrowthViolation> growth_check(const Graph& g, const GrowthParams& p,
                                          const std::vector<int>& radii,
                                          bool exhaustive = false,
                                          int sample_vertices = 64,
                                          uint64_t seed = 0);

// |E(S, S^c)| / Vol(S) with Vol(S) = sum of degrees over S; in [0,1].
double conductance(const Graph& g, const std::vector<int>& S);

// Smallest r in [r_n, 2 r_n] with |B_v(r+1) \ B_v(r)| / |B_v(r)| <= 8 / r^alpha.
// Throws NotFound if no radius in the window qualifies.
int low_conductance_ball(const Graph& g, int v, int r_n, double alpha);

// BFS 2-coloring; first part contains vertex 0. Empty optional iff an odd
// cycle exists. Requires a connected graph.
std::optional<std::pair<std::vector<int>, std::vector<int>>> bipartition(const Graph& g);

// Edge-list text format: one edge per line "u v", 0-based decimal indices,
// '#' starts a comment, blank lines ignored. The first non-comment line may be
// "n <count>"; otherwise n = max index + 1.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);

}  // namespace nv
