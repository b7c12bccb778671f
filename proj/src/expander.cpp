#include "tlab/expander.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <deque>
#include <ostream>
#include <random>

namespace tlab {

Graph build_cayley(const GroupTable& t, const std::vector<ModMat3>& gens) {
  if (gens.empty()) throw ValidationError("build_cayley: no generators");
  Graph g;
  g.n = t.size();
  g.degree = int(gens.size());
  g.nbr.resize(size_t(g.n) * size_t(g.degree));
  std::vector<uint32_t> gidx(gens.size());
  for (size_t j = 0; j < gens.size(); ++j) gidx[j] = t.index_of(gens[j]);
  for (uint32_t v = 0; v < g.n; ++v)
    for (size_t j = 0; j < gidx.size(); ++j)
      g.nbr[size_t(v) * size_t(g.degree) + j] = t.product(v, gidx[j]);
  return g;
}

Graph complete_graph(uint32_t n) {
  if (n < 2) throw ValidationError("complete_graph: need n >= 2");
  Graph g;
  g.n = n;
  g.degree = int(n) - 1;
  g.nbr.reserve(size_t(n) * size_t(g.degree));
  for (uint32_t v = 0; v < n; ++v)
    for (uint32_t u = 0; u < n; ++u)
      if (u != v) g.nbr.push_back(u);
  return g;
}

Graph cycle_graph(uint32_t n) {
  if (n < 3) throw ValidationError("cycle_graph: need n >= 3");
  Graph g;
  g.n = n;
  g.degree = 2;
  g.nbr.reserve(size_t(n) * 2);
  for (uint32_t v = 0; v < n; ++v) {
    g.nbr.push_back((v + 1) % n);
    g.nbr.push_back((v + n - 1) % n);
  }
  return g;
}

bool is_connected(const Graph& g) {
  if (g.n == 0) return false;
  std::vector<char> seen(g.n, 0);
  std::deque<uint32_t> q{0};
  seen[0] = 1;
  size_t cnt = 1;
  while (!q.empty()) {
    const uint32_t v = q.front();
    q.pop_front();
    for (int j = 0; j < g.degree; ++j) {
      const uint32_t u = g.nbr[size_t(v) * size_t(g.degree) + size_t(j)];
      if (!seen[u]) {
        seen[u] = 1;
        ++cnt;
        q.push_back(u);
      }
    }
  }
  return cnt == g.n;
}

namespace {

void adjacency_apply(const Graph& g, const double* x, double* y) {
#pragma omp parallel for schedule(static)
  for (long long vi = 0; vi < (long long)g.n; ++vi) {
    const size_t base = size_t(vi) * size_t(g.degree);
    double acc = 0.0;
    for (int j = 0; j < g.degree; ++j) acc += x[g.nbr[base + size_t(j)]];
    y[size_t(vi)] = acc;
  }
}

void remove_mean(Eigen::VectorXd& v) {
  v.array() -= v.mean();
}

}  // namespace

SpectralReport spectral_gap(const Graph& g, const SpectralOptions& opt) {
  if (g.n < 2) throw ValidationError("spectral_gap: need n >= 2");
  SpectralReport sr;
  if (g.n <= opt.dense_capacity) {
    Eigen::MatrixXd lap = Eigen::MatrixXd::Identity(g.n, g.n);
    const double inv = 1.0 / double(g.degree);
    for (uint32_t v = 0; v < g.n; ++v)
      for (int j = 0; j < g.degree; ++j)
        lap(v, g.nbr[size_t(v) * size_t(g.degree) + size_t(j)]) -= inv;
    // symmetrize away rounding so the solver sees an exactly symmetric matrix
    Eigen::MatrixXd sym = 0.5 * (lap + lap.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
    sr.lambda1 = es.eigenvalues()(1);
    sr.method = "dense-eig";
    sr.iterations = 1;
    sr.residual = 0.0;
    return sr;
  }

  // power iteration for the top of 2I - L on the mean-zero subspace
  std::mt19937_64 gen(opt.seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  Eigen::VectorXd v(g.n);
  for (uint32_t i = 0; i < g.n; ++i) v[i] = nd(gen);
  remove_mean(v);
  v.normalize();
  Eigen::VectorXd av(g.n), w(g.n);
  const double inv = 1.0 / double(g.degree);
  double theta = 0.0, resid = 0.0;
  int it = 0;
  for (; it < opt.max_iter; ++it) {
    adjacency_apply(g, v.data(), av.data());
    w = v + inv * av;  // (2I - L) v
    remove_mean(w);
    theta = v.dot(w);
    resid = (w - theta * v).norm();
    if (resid <= opt.tol * std::max(std::fabs(theta), 1.0)) {
      ++it;
      break;
    }
    const double nw = w.norm();
    if (nw == 0.0) break;  // v was an exact kernel vector of 2I - L
    v = w / nw;
  }
  sr.lambda1 = 2.0 - theta;
  sr.method = "power-iteration";
  sr.iterations = it;
  sr.residual = resid;
  return sr;
}

double poincare_constant(const Graph& g, const SpectralReport& sr) {
  if (!(sr.lambda1 > 0))
    throw ValidationError("poincare_constant: nonpositive spectral gap");
  return 1.0 / (double(g.degree) * sr.lambda1);
}

double poincare_constant_brute(const Graph& g) {
  if (g.n > 2000) throw CapacityError("poincare_constant_brute: graph too large");
  Eigen::MatrixXd lap =
      double(g.degree) * Eigen::MatrixXd::Identity(g.n, g.n);
  for (uint32_t v = 0; v < g.n; ++v)
    for (int j = 0; j < g.degree; ++j)
      lap(v, g.nbr[size_t(v) * size_t(g.degree) + size_t(j)]) -= 1.0;
  Eigen::MatrixXd sym = 0.5 * (lap + lap.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  const double l = es.eigenvalues()(1);
  if (!(l > 0))
    throw ValidationError("poincare_constant_brute: nonpositive gap");
  return 1.0 / l;
}

double poincare_lhs(const Graph& g, const std::vector<double>& f, double p) {
  if (f.size() != g.n) throw ValidationError("poincare_lhs: size mismatch");
  if (!(p >= 1.0)) throw ValidationError("poincare_lhs: p must be >= 1");
  auto cost = [&](double c) {
    double s = 0.0;
    for (double fv : f) s += std::pow(std::fabs(fv - c), p);
    return s;
  };
  if (p == 2.0) {
    double mean = 0.0;
    for (double fv : f) mean += fv;
    mean /= double(f.size());
    return cost(mean);
  }
  double a = *std::min_element(f.begin(), f.end());
  double b = *std::max_element(f.begin(), f.end());
  if (a == b) return 0.0;
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - phi * (b - a), d = a + phi * (b - a);
  double fc = cost(c), fd = cost(d);
  for (int i = 0; i < 200 && (b - a) > 1e-13 * std::max(1.0, std::fabs(b) + std::fabs(a)); ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = cost(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = cost(d);
    }
  }
  return cost((a + b) / 2);
}

double poincare_edge_energy(const Graph& g, const std::vector<double>& f, double p) {
  if (f.size() != g.n) throw ValidationError("poincare_edge_energy: size mismatch");
  double s = 0.0;
  for (uint32_t v = 0; v < g.n; ++v)
    for (int j = 0; j < g.degree; ++j)
      s += std::pow(
          std::fabs(f[v] - f[g.nbr[size_t(v) * size_t(g.degree) + size_t(j)]]), p);
  return s;
}

WitnessReport poincare_witness_sample(const Graph& g, double gamma, double p,
                                      size_t count, uint64_t seed) {
  if (!(gamma > 0)) throw ValidationError("poincare_witness_sample: gamma <= 0");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  WitnessReport wr;
  std::vector<double> f(g.n);
  for (size_t s = 0; s < count; ++s) {
    for (auto& x : f) x = nd(gen);
    const double energy = poincare_edge_energy(g, f, p);
    if (energy <= 0) continue;
    const double ratio = poincare_lhs(g, f, p) / (gamma * energy);
    wr.count++;
    if (ratio > wr.max_ratio) wr.max_ratio = ratio;
  }
  return wr;
}

double poincare_lower_bound_search(const Graph& g, double p, size_t count,
                                   uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  double best = 0.0;
  std::vector<double> f(g.n);
  for (size_t s = 0; s < count; ++s) {
    for (auto& x : f) x = nd(gen);
    const double energy = poincare_edge_energy(g, f, p);
    if (energy <= 0) continue;
    best = std::max(best, poincare_lhs(g, f, p) / energy);
  }
  return best;
}

CoverReport bounded_generation_probe(const GroupTable& t, bool all_six,
                                     int max_level) {
  const uint32_t m = t.modulus();
  std::vector<uint32_t> step;
  auto add_members = [&](const std::vector<ModMat3>& gens) {
    for (uint32_t idx : subgroup_image(t, gens)) step.push_back(idx);
  };
  if (all_six) {
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j)
        if (i != j) add_members({elementary_mod(i, j, 1, m)});
  } else {
    add_members({elementary_mod(1, 2, 1, m), elementary_mod(2, 3, 1, m)});
    add_members({elementary_mod(2, 1, 1, m), elementary_mod(3, 2, 1, m)});
  }
  std::sort(step.begin(), step.end());
  step.erase(std::unique(step.begin(), step.end()), step.end());

  CoverReport cr;
  std::vector<char> seen(t.size(), 0);
  std::vector<uint32_t> frontier{t.identity()};
  seen[t.identity()] = 1;
  uint64_t total = 1;
  cr.level_sizes.push_back(total);
  for (int lev = 1; lev <= max_level && !frontier.empty(); ++lev) {
    std::vector<uint32_t> next;
    for (uint32_t v : frontier)
      for (uint32_t s : step) {
        const uint32_t u = t.product(v, s);
        if (!seen[u]) {
          seen[u] = 1;
          next.push_back(u);
        }
      }
    total += next.size();
    cr.level_sizes.push_back(total);
    frontier = std::move(next);
    if (total == t.size()) {
      cr.covered = true;
      cr.nu = lev;
      break;
    }
  }
  return cr;
}

void export_edge_list(std::ostream& os, const Graph& g) {
  os << "# vertices " << g.n << " degree " << g.degree << "\n";
  for (uint32_t v = 0; v < g.n; ++v)
    for (int j = 0; j < g.degree; ++j) {
      const uint32_t u = g.nbr[size_t(v) * size_t(g.degree) + size_t(j)];
      if (u >= v) os << v << " " << u << "\n";
    }
}

void export_dot(std::ostream& os, const Graph& g) {
  os << "graph cayley {\n";
  for (uint32_t v = 0; v < g.n; ++v)
    for (int j = 0; j < g.degree; ++j) {
      const uint32_t u = g.nbr[size_t(v) * size_t(g.degree) + size_t(j)];
      if (u >= v) os << "  v" << v << " -- v" << u << ";\n";
    }
  os << "}\n";
}

}  // namespace tlab
