#include <cmath>
#include <sstream>

#include "doctest.h"
#include "noisyvoter/patterns.hpp"
#include "support.hpp"

using nv::ColorConfig;
using nvtest::thrown_kind;

TEST_SUITE("patterns") {

TEST_CASE("monochromatic") {
  CHECK(nv::monochromatic(4, 2, 1).colors == std::vector<int>{1, 1, 1, 1});
  CHECK(nv::monochromatic(3, 5, 4).colors == std::vector<int>{4, 4, 4});
  CHECK(thrown_kind([] { nv::monochromatic(3, 2, 2); }) == nv::Err::ColorOutOfRange);
  CHECK(thrown_kind([] { nv::monochromatic(3, 2, -1); }) == nv::Err::ColorOutOfRange);
}

TEST_CASE("alternating") {
  CHECK(nv::alternating(nv::torus(4, 1), 2).colors == std::vector<int>{1, 0, 1, 0});

  // checkerboard on the even torus: color 1 iff i+j even (vertex 0's part)
  ColorConfig x = nv::alternating(nv::torus(4, 2), 2);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(x[i * 4 + j] == ((i + j) % 2 == 0 ? 1 : 0));

  CHECK(thrown_kind([] { nv::alternating(nv::torus(5, 1), 2); }) == nv::Err::NotBipartite);
}

TEST_CASE("alternating is constant on each part") {
  nv::Graph g = nv::torus(6, 2);
  ColorConfig x = nv::alternating(g, 3);
  auto parts = nv::bipartition(g);
  REQUIRE(parts.has_value());
  for (int v : parts->first) CHECK(x[v] == 1);
  for (int v : parts->second) CHECK(x[v] == 0);
}

TEST_CASE("lattice_pattern") {
  CHECK(nv::lattice_pattern(6, 1, 3, {1}).colors == std::vector<int>{0, 1, 2, 0, 1, 2});

  // knight pattern: color at (i,j) is i + 2j mod 5, row-major indexing
  ColorConfig knt = nv::lattice_pattern(10, 2, 5, {1, 2});
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) CHECK(knt[i * 10 + j] == (i + 2 * j) % 5);

  CHECK(thrown_kind([] { nv::lattice_pattern(4, 1, 3, {1}); }) == nv::Err::NotMultiple);
  CHECK(thrown_kind([] { nv::lattice_pattern(6, 1, 3, {3}); }) == nv::Err::ComponentOutOfRange);
  CHECK(thrown_kind([] { nv::lattice_pattern(6, 2, 3, {1}); }) == nv::Err::ComponentOutOfRange);
}

TEST_CASE("lattice_pattern with the zero vector is monochromatic") {
  CHECK(nv::lattice_pattern(6, 1, 3, {0}) == nv::monochromatic(6, 3, 0));
  CHECK(nv::lattice_pattern(4, 2, 2, {0, 0}) == nv::monochromatic(16, 2, 0));
}

TEST_CASE("q=2 all-ones lattice pattern is alternating up to color swap") {
  for (int d : {1, 2}) {
    int side = d == 1 ? 8 : 4;
    ColorConfig lat = nv::lattice_pattern(side, d, 2, std::vector<int>(d, 1));
    ColorConfig alt = nv::alternating(nv::torus(side, d), 2);
    bool equal = true, swapped = true;
    for (int v = 0; v < lat.n(); ++v) {
      equal = equal && lat[v] == alt[v];
      swapped = swapped && lat[v] == 1 - alt[v];
    }
    CHECK((equal || swapped));
  }
}

TEST_CASE("uniform_random") {
  ColorConfig a = nv::uniform_random(100, 4, 7);
  ColorConfig b = nv::uniform_random(100, 4, 7);
  CHECK(a == b);
  CHECK_FALSE(a == nv::uniform_random(100, 4, 8));

  // binomial concentration of each color's frequency
  const int n = 100000, q = 4;
  ColorConfig big = nv::uniform_random(n, q, 31337);
  std::vector<int> freq(q, 0);
  for (int v = 0; v < n; ++v) ++freq[big[v]];
  double sigma = std::sqrt(n * (1.0 / q) * (1.0 - 1.0 / q));
  for (int c = 0; c < q; ++c)
    CHECK(std::fabs(freq[c] - static_cast<double>(n) / q) <= 4 * sigma);

  ColorConfig one = nv::uniform_random(1, 2, 5);
  CHECK(one.n() == 1);
  CHECK(one[0] >= 0);
  CHECK(one[0] < 2);
}

TEST_CASE("color serialization round trip") {
  ColorConfig x = nv::uniform_random(12, 3, 99);
  std::ostringstream out;
  nv::write_colors(out, x);
  std::istringstream in(out.str());
  CHECK(nv::read_colors(in) == x);

  std::istringstream bad("p 3\n0\n");
  CHECK(thrown_kind([&] { nv::read_colors(bad); }) == nv::Err::BadConfig);
  std::istringstream oob("q 2\n0\n2\n");
  CHECK(thrown_kind([&] { nv::read_colors(oob); }) == nv::Err::ColorOutOfRange);
  CHECK(thrown_kind([] { nv::read_colors_file("/nonexistent/colors.txt"); }) == nv::Err::IoError);
}

TEST_CASE("check_config") {
  nv::Graph g = nv::torus(4, 1);
  nv::check_config(g, nv::monochromatic(4, 2, 0));
  CHECK(thrown_kind([&] { nv::check_config(g, nv::monochromatic(5, 2, 0)); }) ==
        nv::Err::SizeMismatch);
  ColorConfig bad{2, {0, 1, 0, 2}};
  CHECK(thrown_kind([&] { nv::check_config(g, bad); }) == nv::Err::ColorOutOfRange);
}

}  // TEST_SUITE
