#include "tlab/uc.hpp"

#include <Eigen/Dense>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "tlab/rep_space.hpp"
#include "tlab/sl3.hpp"

namespace tlab {

double uc_delta(const ModulusSpec& spec, double eps) {
  if (!(eps >= 0.0 && eps <= 2.0))
    throw ValidationError("uc_delta: eps must lie in [0,2]");
  if (spec.kind == ModulusKind::Hilbert)
    return 1.0 - std::sqrt(std::max(0.0, 1.0 - eps * eps / 4.0));
  if (!(spec.p >= 2.0)) throw ValidationError("uc_delta: LpGeq2 requires p >= 2");
  return 1.0 - std::pow(1.0 - std::pow(eps / 2.0, spec.p), 1.0 / spec.p);
}

UcConstants uc_constants(const ModulusSpec& spec, double eps) {
  UcConstants c;
  c.delta_eps = uc_delta(spec, eps);
  c.delta_delta_eps = uc_delta(spec, c.delta_eps);
  c.r0 = std::max(1.0 - c.delta_delta_eps / 2.0, 1.0 - c.delta_eps / 4.0);
  return c;
}

namespace {

double vlp(const Eigen::VectorXd& v, double p) {
  return lp_norm(v.data(), size_t(v.size()), p, KernelMode::Serial);
}

struct Candidate {
  Eigen::MatrixXd u, v;
  Eigen::VectorXd xi;
};

struct Measured {
  double eps = 0.0;
  double ratio = 0.0;
  double r0 = 1.0;
  double margin = 1.0;
};

Measured measure(const ModulusSpec& spec, const Candidate& c) {
  Measured m;
  const double nx = vlp(c.xi, spec.p);
  if (nx == 0.0) return m;
  Eigen::VectorXd vx = c.v * c.xi;
  Eigen::VectorXd ux = c.u * c.xi;
  Eigen::VectorXd uvx = c.u * vx;
  m.eps = vlp(c.xi - uvx, spec.p) / nx;
  m.eps = std::min(m.eps, 2.0);  // guard rounding at the diameter
  Eigen::VectorXd avg = 0.25 * (c.xi + ux + vx + uvx);
  m.ratio = vlp(avg, spec.p) / nx;
  m.r0 = uc_constants(spec, m.eps).r0;
  m.margin = m.r0 - m.ratio;
  return m;
}

Eigen::MatrixXd block_rotation(const std::vector<double>& angles) {
  const int n = int(angles.size()) * 2;
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(n, n);
  for (size_t i = 0; i < angles.size(); ++i) {
    const double co = std::cos(angles[i]), si = std::sin(angles[i]);
    r(2 * int(i), 2 * int(i)) = co;
    r(2 * int(i), 2 * int(i) + 1) = -si;
    r(2 * int(i) + 1, 2 * int(i)) = si;
    r(2 * int(i) + 1, 2 * int(i) + 1) = co;
  }
  return r;
}

Eigen::MatrixXd signed_perm_dense(const std::vector<uint32_t>& perm,
                                  const std::vector<int>& sign) {
  const int n = int(perm.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) m(i, int(perm[size_t(i)])) = double(sign[size_t(i)]);
  return m;
}

Eigen::MatrixXd mat_pow(const Eigen::MatrixXd& m, int k) {
  Eigen::MatrixXd r = Eigen::MatrixXd::Identity(m.rows(), m.cols());
  for (int i = 0; i < k; ++i) r = r * m;
  return r;
}

}  // namespace

UcSearchReport commuting_contraction_search(const ModulusSpec& spec,
                                            const UcSearchOptions& opt) {
  if (opt.dim < 2 || opt.dim % 2 != 0)
    throw ValidationError("commuting_contraction_search: dim must be even and >= 2");
  if (spec.kind == ModulusKind::LpGeq2 && !(spec.p >= 2.0))
    throw ValidationError("commuting_contraction_search: LpGeq2 requires p >= 2");
  const int n = opt.dim;
  const bool rotations_ok =
      spec.kind == ModulusKind::Hilbert || spec.p == 2.0;

  std::mt19937_64 gen(opt.seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  std::uniform_real_distribution<double> ang(0.05, 3.1);
  std::uniform_int_distribution<int> powdist(1, 3);
  std::uniform_int_distribution<int> coin(0, 1);

  auto gaussian_vec = [&](int len) {
    Eigen::VectorXd v(len);
    for (int i = 0; i < len; ++i) v[i] = nd(gen);
    return v;
  };

  UcSearchReport rep;
  std::vector<Candidate> worst_pool;
  std::vector<double> worst_margins;

  auto consider = [&](Candidate&& c) {
    rep.samples++;
    Measured m = measure(spec, c);
    if (m.eps < opt.eps_floor) return;
    rep.tested++;
    if (m.margin < rep.worst_margin) {
      rep.worst_margin = m.margin;
      rep.worst_eps = m.eps;
      rep.worst_ratio = m.ratio;
      rep.worst_r0 = m.r0;
    }
    if (m.margin < -1e-10) rep.violations++;
    const size_t pool_cap = size_t(std::max(1, opt.ascent_seeds));
    if (worst_pool.size() < pool_cap) {
      worst_pool.push_back(std::move(c));
      worst_margins.push_back(m.margin);
    } else {
      size_t imax = 0;
      for (size_t i = 1; i < worst_margins.size(); ++i)
        if (worst_margins[i] > worst_margins[imax]) imax = i;
      if (m.margin < worst_margins[imax]) {
        worst_pool[imax] = std::move(c);
        worst_margins[imax] = m.margin;
      }
    }
  };

  for (size_t s = 0; s < opt.samples; ++s) {
    Candidate c;
    if (rotations_ok && coin(gen)) {
      Eigen::MatrixXd g(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = nd(gen);
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
      Eigen::MatrixXd q = qr.householderQ();
      std::vector<double> th(size_t(n) / 2), ph(size_t(n) / 2);
      for (auto& a : th) a = ang(gen);
      for (auto& a : ph) a = ang(gen);
      c.u = q * block_rotation(th) * q.transpose();
      c.v = q * block_rotation(ph) * q.transpose();
    } else {
      std::vector<uint32_t> perm(static_cast<size_t>(n));
      std::iota(perm.begin(), perm.end(), 0u);
      std::shuffle(perm.begin(), perm.end(), gen);
      std::vector<int> sign(static_cast<size_t>(n));
      for (auto& si : sign) si = coin(gen) ? 1 : -1;
      Eigen::MatrixXd base = signed_perm_dense(perm, sign);
      c.u = mat_pow(base, powdist(gen));
      c.v = mat_pow(base, powdist(gen));
    }
    c.xi = gaussian_vec(n);
    consider(std::move(c));
  }

  // local ascent on the worst candidates: perturb the test vector, keep any
  // move that shrinks the margin while staying above the eps floor
  for (size_t w = 0; w < worst_pool.size(); ++w) {
    Candidate cur = worst_pool[w];
    Measured best = measure(spec, cur);
    double step = 0.25;
    for (int it = 0; it < opt.ascent_rounds; ++it) {
      Candidate trial = cur;
      trial.xi = cur.xi + step * vlp(cur.xi, spec.p) * gaussian_vec(n) /
                              std::sqrt(double(n));
      Measured m = measure(spec, trial);
      rep.samples++;
      if (m.eps >= opt.eps_floor) {
        rep.tested++;
        if (m.margin < rep.worst_margin) {
          rep.worst_margin = m.margin;
          rep.worst_eps = m.eps;
          rep.worst_ratio = m.ratio;
          rep.worst_r0 = m.r0;
        }
        if (m.margin < -1e-10) rep.violations++;
        if (m.margin < best.margin) {
          cur = std::move(trial);
          best = m;
          continue;
        }
      }
      step = std::max(1e-4, step * 0.97);
    }
  }
  return rep;
}

}  // namespace tlab
