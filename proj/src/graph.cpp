#include "noisyvoter/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <queue>
#include <sstream>

#include "noisyvoter/rng.hpp"

namespace nv {

namespace {

// single BFS; dist capped at r when r >= 0 (r < 0 means unbounded)
std::vector<int> bfs_dist(const Graph& g, int src, int r) {
  std::vector<int> dist(g.n, -1);
  std::queue<int> q;
  dist[src] = 0;
  q.push(src);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    if (r >= 0 && dist[u] >= r) continue;
    for (int w : g.adj[u]) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        q.push(w);
      }
    }
  }
  return dist;
}

void finalize(Graph& g) {
  g.degree.resize(g.n);
  g.m = 0;
  for (int v = 0; v < g.n; ++v) {
    std::sort(g.adj[v].begin(), g.adj[v].end());
    g.degree[v] = static_cast<int>(g.adj[v].size());
    g.m += g.degree[v];
  }
  g.m /= 2;
  g.pi.resize(g.n);
  for (int v = 0; v < g.n; ++v)
    g.pi[v] = g.m > 0 ? static_cast<double>(g.degree[v]) / (2.0 * static_cast<double>(g.m)) : 0.0;
  if (g.n > 0) {
    auto dist = bfs_dist(g, 0, -1);
    g.connected = std::find(dist.begin(), dist.end(), -1) == dist.end();
  }
}

}  // namespace

Graph build_graph(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n < 0) fail(Err::VertexOutOfRange, "negative vertex count");
  Graph g;
  g.n = n;
  g.adj.assign(n, {});
  std::vector<std::pair<int, int>> seen;
  seen.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      fail(Err::VertexOutOfRange, "edge (" + std::to_string(u) + "," + std::to_string(v) +
                                      ") with n=" + std::to_string(n));
    if (u == v) fail(Err::SelfLoop, "vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
    seen.emplace_back(u, v);
  }
  std::sort(seen.begin(), seen.end());
  long long dups = 0;
  for (size_t i = 0; i < seen.size(); ++i) {
    if (i > 0 && seen[i] == seen[i - 1]) {
      ++dups;
      continue;
    }
    g.adj[seen[i].first].push_back(seen[i].second);
    g.adj[seen[i].second].push_back(seen[i].first);
  }
  g.duplicates_removed = dups;
  finalize(g);
  return g;
}

Graph torus(int side, int dim) {
  if (side < 3) fail(Err::SideTooSmall, "torus side " + std::to_string(side) + " < 3");
  if (dim < 1) fail(Err::SideTooSmall, "torus dimension " + std::to_string(dim) + " < 1");
  long long n = 1;
  for (int i = 0; i < dim; ++i) {
    n *= side;
    if (n > (1 << 26)) fail(Err::TooLarge, "torus vertex count exceeds 2^26");
  }
  // row-major strides: coordinate 0 slowest, coordinate dim-1 contiguous
  std::vector<long long> stride(dim);
  stride[dim - 1] = 1;
  for (int i = dim - 2; i >= 0; --i) stride[i] = stride[i + 1] * side;
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<size_t>(n) * dim);
  std::vector<int> coord(dim, 0);
  for (long long v = 0; v < n; ++v) {
    for (int i = 0; i < dim; ++i) {
      int up = (coord[i] + 1) % side;
      long long w = v + (up - coord[i]) * stride[i];
      edges.emplace_back(static_cast<int>(v), static_cast<int>(w));
    }
    for (int i = dim - 1; i >= 0; --i) {
      if (++coord[i] < side) break;
      coord[i] = 0;
    }
  }
  return build_graph(static_cast<int>(n), edges);
}

std::vector<int> ball(const Graph& g, int v, int r) {
  if (v < 0 || v >= g.n) fail(Err::VertexOutOfRange, "ball center " + std::to_string(v));
  if (r < 0) fail(Err::VertexOutOfRange, "negative radius");
  auto dist = bfs_dist(g, v, r);
  std::vector<int> out;
  for (int u = 0; u < g.n; ++u)
    if (dist[u] >= 0) out.push_back(u);
  return out;
}

std::vector<GrowthViolation> growth_check(const Graph& g, const GrowthParams& p,
                                          const std::vector<int>& radii, bool exhaustive,
                                          int sample_vertices, uint64_t seed) {
  if (p.c0 <= 0) fail(Err::BadParams, "c0 must be positive");
  if (p.alpha <= 0 || p.alpha >= 1) fail(Err::BadParams, "alpha must lie in (0,1)");
  for (int r : radii)
    if (r < 1) fail(Err::BadParams, "radii must be >= 1");
  std::vector<int> verts;
  if (exhaustive || sample_vertices >= g.n) {
    verts.resize(g.n);
    for (int v = 0; v < g.n; ++v) verts[v] = v;
  } else {
    // deterministic sample without replacement
    Rng rng(substream(seed, 0));
    std::vector<int> pool(g.n);
    for (int v = 0; v < g.n; ++v) pool[v] = v;
    for (int i = 0; i < sample_vertices; ++i) {
      int j = i + rng.below(g.n - i);
      std::swap(pool[i], pool[j]);
      verts.push_back(pool[i]);
    }
  }
  int rmax = 0;
  for (int r : radii) rmax = std::max(rmax, r);
  std::vector<GrowthViolation> out;
  for (int v : verts) {
    auto dist = bfs_dist(g, v, rmax);
    std::vector<long long> cum(rmax + 1, 0);
    for (int u = 0; u < g.n; ++u)
      if (dist[u] >= 0) ++cum[dist[u]];
    for (int r = 1; r <= rmax; ++r) cum[r] += cum[r - 1];
    for (int r : radii) {
      double bound = p.c0 * std::exp(std::pow(static_cast<double>(r), 1.0 - p.alpha));
      if (static_cast<double>(cum[r]) > bound)
        out.push_back({v, r, cum[r], bound});
    }
  }
  return out;
}

double conductance(const Graph& g, const std::vector<int>& S) {
  if (S.empty()) fail(Err::EmptySet, "conductance of the empty set");
  std::vector<char> in(g.n, 0);
  long long vol = 0;
  for (int v : S) {
    if (v < 0 || v >= g.n) fail(Err::VertexOutOfRange, "set member " + std::to_string(v));
    if (!in[v]) {
      in[v] = 1;
      vol += g.degree[v];
    }
  }
  long long boundary = 0;
  for (int v = 0; v < g.n; ++v) {
    if (!in[v]) continue;
    for (int w : g.adj[v])
      if (!in[w]) ++boundary;
  }
  return vol > 0 ? static_cast<double>(boundary) / static_cast<double>(vol) : 0.0;
}

int low_conductance_ball(const Graph& g, int v, int r_n, double alpha) {
  if (r_n < 1) fail(Err::BadParams, "r_n must be >= 1");
  if (v < 0 || v >= g.n) fail(Err::VertexOutOfRange, "center " + std::to_string(v));
  auto dist = bfs_dist(g, v, 2 * r_n + 1);
  std::vector<long long> cum(2 * r_n + 2, 0);
  for (int u = 0; u < g.n; ++u)
    if (dist[u] >= 0 && dist[u] <= 2 * r_n + 1) ++cum[dist[u]];
  for (size_t r = 1; r < cum.size(); ++r) cum[r] += cum[r - 1];
  for (int r = r_n; r <= 2 * r_n; ++r) {
    double ball_size = static_cast<double>(cum[r]);
    double shell = static_cast<double>(cum[r + 1] - cum[r]);  // |B(r+1) \ B(r)|
    if (shell / ball_size <= 8.0 / std::pow(static_cast<double>(r), alpha)) return r;
  }
  fail(Err::NotFound, "no radius in [" + std::to_string(r_n) + "," + std::to_string(2 * r_n) +
                          "] meets the boundary bound");
}

std::optional<std::pair<std::vector<int>, std::vector<int>>> bipartition(const Graph& g) {
  if (!g.connected) fail(Err::Disconnected, "bipartition needs a connected graph");
  std::vector<int> side(g.n, -1);
  std::queue<int> q;
  side[0] = 0;
  q.push(0);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int w : g.adj[u]) {
      if (side[w] < 0) {
        side[w] = 1 - side[u];
        q.push(w);
      } else if (side[w] == side[u]) {
        return std::nullopt;  // odd cycle
      }
    }
  }
  std::pair<std::vector<int>, std::vector<int>> parts;
  for (int v = 0; v < g.n; ++v)
    (side[v] == 0 ? parts.first : parts.second).push_back(v);
  return parts;
}

Graph read_edge_list(std::istream& in) {
  std::vector<std::pair<int, int>> edges;
  long long declared_n = -1;
  bool first_data_line = true;
  std::string line;
  int max_index = -1;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;  // blank
    if (first_data_line && tok == "n") {
      if (!(ls >> declared_n) || declared_n < 0)
        fail(Err::BadConfig, "malformed vertex-count header");
      first_data_line = false;
      continue;
    }
    first_data_line = false;
    long long u, v;
    try {
      u = std::stoll(tok);
    } catch (const std::exception&) {
      fail(Err::BadConfig, "malformed edge line: " + line);
    }
    if (!(ls >> v)) fail(Err::BadConfig, "malformed edge line: " + line);
    if (u < 0 || v < 0) fail(Err::VertexOutOfRange, "negative vertex index");
    max_index = std::max(max_index, static_cast<int>(std::max(u, v)));
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  int n = declared_n >= 0 ? static_cast<int>(declared_n) : max_index + 1;
  return build_graph(n, edges);
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(Err::IoError, "cannot open " + path);
  return read_edge_list(f);
}

}  // namespace nv
