#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "tlab/expander.hpp"

using namespace tlab;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

// ---------------------------------------------------------------- fixtures

TEST_CASE("complete graphs have gap n/(n-1)") {
  for (uint32_t n : {2u, 5u, 20u, 100u}) {
    Graph g = complete_graph(n);
    CHECK(g.degree == int(n) - 1);
    CHECK(is_connected(g));
    SpectralReport sr = spectral_gap(g);
    CHECK(sr.method == "dense-eig");
    CHECK(sr.lambda1 == doctest::Approx(double(n) / (n - 1)).epsilon(1e-12));
    // gamma = 1/(deg * lambda1) = 1/n
    CHECK(poincare_constant(g, sr) == doctest::Approx(1.0 / n).epsilon(1e-12));
    CHECK(poincare_constant_brute(g) == doctest::Approx(1.0 / n).epsilon(1e-10));
  }
  CHECK_THROWS_AS(complete_graph(1), ValidationError);
}

TEST_CASE("cycles have gap 1 - cos(2 pi / n)") {
  for (uint32_t n : {3u, 8u, 33u}) {
    Graph g = cycle_graph(n);
    CHECK(g.degree == 2);
    CHECK(is_connected(g));
    SpectralReport sr = spectral_gap(g);
    CHECK(sr.lambda1 == doctest::Approx(1.0 - std::cos(2 * kPi / n)).epsilon(1e-10));
    CHECK(poincare_constant_brute(g) ==
          doctest::Approx(1.0 / (2.0 * (1.0 - std::cos(2 * kPi / n)))).epsilon(1e-8));
  }
  CHECK_THROWS_AS(cycle_graph(2), ValidationError);
}

TEST_CASE("matrix-free power iteration matches the dense solver") {
  SpectralOptions iter;
  iter.dense_capacity = 0;
  for (uint32_t n : {20u, 60u}) {
    Graph k = complete_graph(n);
    SpectralReport si = spectral_gap(k, iter);
    CHECK(si.method == "power-iteration");
    CHECK(si.lambda1 == doctest::Approx(double(n) / (n - 1)).epsilon(1e-8));
    Graph c = cycle_graph(n);
    SpectralReport sd = spectral_gap(c);
    SpectralReport sp = spectral_gap(c, iter);
    CHECK(sp.lambda1 == doctest::Approx(sd.lambda1).epsilon(1e-8));
  }
}

// ------------------------------------------------------------ cayley graphs

TEST_CASE("elementary cayley graph mod 2") {
  GroupTable t = enumerate_sl3(2);
  Graph g = build_cayley(t, elementary_generators(2));
  CHECK(g.n == 168);
  CHECK(g.degree == 12);  // +1 and -1 coincide mod 2: six doubled edges
  CHECK(is_connected(g));
  SpectralReport sr = spectral_gap(g);
  CHECK(sr.lambda1 > 0.01);
  double gamma = poincare_constant(g, sr);
  double brute = poincare_constant_brute(g);
  CHECK(gamma == doctest::Approx(brute).epsilon(1e-8));
}

TEST_CASE("a central generator does not connect the cube") {
  GroupTable t = enumerate_heisenberg(2);
  Graph g = build_cayley(t, {elementary_mod(1, 3, 1, 2)});
  CHECK(g.n == 8);
  CHECK(g.degree == 1);
  CHECK_FALSE(is_connected(g));
  CHECK_THROWS_AS(build_cayley(t, {}), ValidationError);
}

// ------------------------------------------------------- poincare inequality

TEST_CASE("witness sides computed by hand on K_3") {
  Graph g = complete_graph(3);
  std::vector<double> f = {1.0, 0.0, 0.0};
  // min_c sum |f - c|^2 at c = 1/3: 4/9 + 1/9 + 1/9
  CHECK(poincare_lhs(g, f, 2.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  // ordered edges count both directions: 4 unit gaps
  CHECK(poincare_edge_energy(g, f, 2.0) == doctest::Approx(4.0).epsilon(1e-12));
  // p = 3: golden-section minimum matches a grid scan
  double best = 1e300;
  for (int i = 0; i <= 1000; ++i) {
    double c = i / 1000.0;
    double v = std::pow(std::fabs(1 - c), 3.0) + 2 * std::pow(c, 3.0);
    best = std::min(best, v);
  }
  CHECK(poincare_lhs(g, f, 3.0) == doctest::Approx(best).epsilon(1e-6));
}

TEST_CASE("sampled witnesses never exceed the certified constant") {
  SpectralOptions so;
  for (uint32_t n : {5u, 20u}) {
    Graph g = complete_graph(n);
    double gamma = poincare_constant(g, spectral_gap(g, so));
    WitnessReport w = poincare_witness_sample(g, gamma, 2.0, 2000, 123);
    CHECK(w.count == 2000);
    CHECK(w.max_ratio <= 0.5 + 1e-9);  // ordered-edge energy doubles each edge
    CHECK(w.max_ratio >= 0.2);
    WitnessReport w3 = poincare_witness_sample(g, gamma, 3.0, 500, 9);
    CHECK(w3.max_ratio <= 1.0 + 1e-9);
  }
  Graph c = cycle_graph(16);
  double gamma = poincare_constant(c, spectral_gap(c, so));
  WitnessReport w = poincare_witness_sample(c, gamma, 2.0, 2000, 7);
  CHECK(w.max_ratio <= 0.5 + 1e-9);

  // the slowest cosine mode is the extremal witness: ratio exactly 1/2
  std::vector<double> f(16);
  for (int v = 0; v < 16; ++v) f[size_t(v)] = std::cos(2 * kPi * v / 16);
  double ratio = poincare_lhs(c, f, 2.0) / (gamma * poincare_edge_energy(c, f, 2.0));
  CHECK(ratio == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("witness sampling is deterministic in the seed") {
  Graph g = complete_graph(9);
  double gamma = 1.0 / 9.0;
  WitnessReport a = poincare_witness_sample(g, gamma, 2.0, 300, 42);
  WitnessReport b = poincare_witness_sample(g, gamma, 2.0, 300, 42);
  CHECK(a.max_ratio == b.max_ratio);
  WitnessReport c = poincare_witness_sample(g, gamma, 2.0, 300, 43);
  CHECK(c.max_ratio <= 0.5 + 1e-9);
}

TEST_CASE("lower-bound search: every mean-zero witness on K_n is extremal") {
  // on K_n the combinatorial form is n |f|^2 for mean-zero f, so lhs/energy
  // is exactly 1/(2n) for every witness and the search must report it
  Graph g = complete_graph(12);
  double lower = poincare_lower_bound_search(g, 2.0, 200, 5);
  CHECK(lower == doctest::Approx(1.0 / 24.0).epsilon(1e-12));
  double lower3 = poincare_lower_bound_search(g, 3.0, 200, 5);
  CHECK(lower3 > 0.0);
}

// --------------------------------------------------------- group-level cover

TEST_CASE("triangular step sets cover the mod-2 group") {
  GroupTable t = enumerate_sl3(2);
  CoverReport two = bounded_generation_probe(t, false);
  CHECK(two.covered);
  CHECK(two.nu >= 1);
  REQUIRE(!two.level_sizes.empty());
  CHECK(two.level_sizes.back() == 168);
  for (size_t i = 1; i < two.level_sizes.size(); ++i)
    CHECK(two.level_sizes[i] > two.level_sizes[i - 1]);

  CoverReport six = bounded_generation_probe(t, true);
  CHECK(six.covered);
  // full triangular groups are products of elementary subgroups, so the
  // one-parameter steps need at least as many levels
  CHECK(six.nu >= two.nu);
  CHECK(six.level_sizes.back() == 168);
}

TEST_CASE("cover probe respects the level cap") {
  GroupTable t = enumerate_sl3(3);
  CoverReport r = bounded_generation_probe(t, false, 1);
  CHECK_FALSE(r.covered);
  CHECK(r.nu == -1);
  CHECK(r.level_sizes.size() == 2);  // level 0 and level 1
}

// ------------------------------------------------------------------ exports

TEST_CASE("edge list and dot exports") {
  Graph g = complete_graph(4);
  std::ostringstream os;
  export_edge_list(os, g);
  std::istringstream is(os.str());
  std::string line;
  int lines = 0, header = 0;
  while (std::getline(is, line)) {
    if (!line.empty() && line[0] == '#')
      ++header;
    else if (!line.empty())
      ++lines;
  }
  CHECK(header == 1);
  CHECK(lines == 6);  // 4*3/2 undirected edges

  std::ostringstream dot;
  export_dot(dot, g);
  CHECK(dot.str().find("graph") != std::string::npos);
  CHECK(dot.str().find("--") != std::string::npos);
}
