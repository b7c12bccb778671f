#pragma once

// Regular (multi)graphs from Cayley constructions, their normalized
// Laplacian gap, and the discrete Poincare inequality
//   min_c sum_v |f(v) - c|^p  <=  gamma * sum_{(u,v) ordered edge} |f(u) - f(v)|^p
// with gamma = 1 / (degree * lambda_1) at p = 2 (ordered edges double each
// undirected edge, so witnesses peak at ratio 1/2).

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "tlab/group_table.hpp"

namespace tlab {

struct Graph {
  uint32_t n = 0;
  int degree = 0;
  std::vector<uint32_t> nbr;  // n * degree, multi-edges kept
};

// Cayley graph on the table group; every generator contributes one edge per
// vertex (repeated generators create multi-edges, so regularity is exact).
Graph build_cayley(const GroupTable& t, const std::vector<ModMat3>& gens);
Graph complete_graph(uint32_t n);
Graph cycle_graph(uint32_t n);

bool is_connected(const Graph& g);

struct SpectralOptions {
  size_t dense_capacity = 2000;
  double tol = 1e-11;
  int max_iter = 200000;
  uint64_t seed = 0x51ab1e5ULL;
};

struct SpectralReport {
  double lambda1 = 0.0;  // second-smallest eigenvalue of I - A/deg
  std::string method;    // "dense-eig" or "power-iteration"
  int iterations = 0;
  double residual = 0.0;
};

// Dense solve below the capacity; above it, power iteration on 2I - L over
// the mean-zero subspace with the eigen-residual reported.
SpectralReport spectral_gap(const Graph& g, const SpectralOptions& opt = {});

// gamma = 1 / (degree * lambda1)
double poincare_constant(const Graph& g, const SpectralReport& sr);

// second-smallest eigenvalue of the combinatorial Laplacian via a full dense
// eigensolve (independent route: gamma = 1 / that value)
double poincare_constant_brute(const Graph& g);

// both sides of the inequality for a concrete witness
double poincare_lhs(const Graph& g, const std::vector<double>& f, double p);
double poincare_edge_energy(const Graph& g, const std::vector<double>& f, double p);

struct WitnessReport {
  size_t count = 0;
  double max_ratio = 0.0;  // max of lhs / (gamma * energy)
};

WitnessReport poincare_witness_sample(const Graph& g, double gamma, double p,
                                      size_t count, uint64_t seed);

// best lhs/energy ratio over sampled witnesses: a certified lower bound on
// the optimal p-Poincare constant
double poincare_lower_bound_search(const Graph& g, double p, size_t count,
                                   uint64_t seed);

// Multiply-out levels of (UT * LT)^k: level_sizes[k] = |S_k| where
// S_0 = {e}, S_{k+1} = S_k * (UT union LT); nu = first full-cover level.
// all_six widens the step set to every elementary subgroup.
struct CoverReport {
  int nu = -1;
  bool covered = false;
  std::vector<uint64_t> level_sizes;
};

CoverReport bounded_generation_probe(const GroupTable& t, bool all_six,
                                     int max_level = 16);

void export_edge_list(std::ostream& os, const Graph& g);
void export_dot(std::ostream& os, const Graph& g);

}  // namespace tlab
