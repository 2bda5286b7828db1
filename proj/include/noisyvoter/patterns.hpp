// patterns.hpp — initial-condition constructors: monochromatic, alternating,
// lattice patterns on the torus, and i.i.d.-uniform random states.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "noisyvoter/graph.hpp"

namespace nv {

// Colors are plain integers in [0, q); the root-of-unity embedding happens
// only inside spectral operations, keeping simulation hot loops exact.
struct ColorConfig {
  int q = 2;
  std::vector<int> colors;

  int n() const { return static_cast<int>(colors.size()); }
  int operator[](int v) const { return colors[v]; }
  bool operator==(const ColorConfig& o) const { return q == o.q && colors == o.colors; }
};

ColorConfig monochromatic(int n, int q, int color);

// 1 on the part containing vertex 0, 0 elsewhere. Requires bipartite + connected.
ColorConfig alternating(const Graph& g, int q);

// Color of torus(side,d) vertex (j_1..j_d) is (j_1 v_1 + ... + j_d v_d) mod q.
// side must be a multiple of q so the pattern is balanced and periodic.
ColorConfig lattice_pattern(int side, int d, int q, const std::vector<int>& v);

ColorConfig uniform_random(int n, int q, uint64_t seed);

// Serialization: one line "q <q>" then n lines of decimal colors.
ColorConfig read_colors(std::istream& in);
ColorConfig read_colors_file(const std::string& path);
void write_colors(std::ostream& out, const ColorConfig& x);

// Validation shared by consumers: size matches the graph, entries in [0,q).
void check_config(const Graph& g, const ColorConfig& x);

}  // namespace nv
