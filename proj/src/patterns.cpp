#include "noisyvoter/patterns.hpp"

#include <fstream>
#include <sstream>

#include "noisyvoter/rng.hpp"

namespace nv {

ColorConfig monochromatic(int n, int q, int color) {
  if (q < 2) fail(Err::BadParams, "q must be >= 2");
  if (color < 0 || color >= q) fail(Err::ColorOutOfRange, std::to_string(color));
  return {q, std::vector<int>(n, color)};
}

ColorConfig alternating(const Graph& g, int q) {
  if (q < 2) fail(Err::BadParams, "q must be >= 2");
  auto parts = bipartition(g);
  if (!parts) fail(Err::NotBipartite, "graph has an odd cycle");
  ColorConfig x{q, std::vector<int>(g.n, 0)};
  for (int v : parts->first) x.colors[v] = 1;  // vertex 0's part gets color 1
  return x;
}

ColorConfig lattice_pattern(int side, int d, int q, const std::vector<int>& v) {
  if (q < 2) fail(Err::BadParams, "q must be >= 2");
  if (side % q != 0)
    fail(Err::NotMultiple, "side " + std::to_string(side) + " not a multiple of q=" + std::to_string(q));
  if (static_cast<int>(v.size()) != d) fail(Err::ComponentOutOfRange, "pattern vector has wrong dimension");
  for (int c : v)
    if (c < 0 || c >= q) fail(Err::ComponentOutOfRange, std::to_string(c));
  long long n = 1;
  for (int i = 0; i < d; ++i) n *= side;
  ColorConfig x{q, std::vector<int>(static_cast<size_t>(n), 0)};
  std::vector<int> coord(d, 0);
  for (long long idx = 0; idx < n; ++idx) {
    long long s = 0;
    for (int i = 0; i < d; ++i) s += static_cast<long long>(coord[i]) * v[i];
    x.colors[static_cast<size_t>(idx)] = static_cast<int>(s % q);
    for (int i = d - 1; i >= 0; --i) {
      if (++coord[i] < side) break;
      coord[i] = 0;
    }
  }
  return x;
}

ColorConfig uniform_random(int n, int q, uint64_t seed) {
  if (q < 2) fail(Err::BadParams, "q must be >= 2");
  Rng rng(seed);
  ColorConfig x{q, std::vector<int>(n)};
  for (int v = 0; v < n; ++v) x.colors[v] = rng.below(q);
  return x;
}

ColorConfig read_colors(std::istream& in) {
  std::string tok;
  if (!(in >> tok) || tok != "q") fail(Err::BadConfig, "color file must start with 'q <q>'");
  int q;
  if (!(in >> q) || q < 2) fail(Err::BadConfig, "bad q in color file");
  ColorConfig x{q, {}};
  int c;
  while (in >> c) {
    if (c < 0 || c >= q) fail(Err::ColorOutOfRange, std::to_string(c));
    x.colors.push_back(c);
  }
  return x;
}

ColorConfig read_colors_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(Err::IoError, "cannot open " + path);
  return read_colors(f);
}

void write_colors(std::ostream& out, const ColorConfig& x) {
  out << "q " << x.q << "\n";
  for (int c : x.colors) out << c << "\n";
}

void check_config(const Graph& g, const ColorConfig& x) {
  if (x.n() != g.n)
    fail(Err::SizeMismatch,
         "config has " + std::to_string(x.n()) + " vertices, graph has " + std::to_string(g.n));
  for (int c : x.colors)
    if (c < 0 || c >= x.q) fail(Err::ColorOutOfRange, std::to_string(c));
}

}  // namespace nv
