#include "tlab/op_norm.hpp"

#include <cmath>
#include <memory>
#include <random>

#include "tlab/kernels.hpp"

namespace tlab {

LinOp lin_from_handle(const OpHandle& op) {
  auto ws = std::make_shared<ApplyWorkspace>();
  const OpHandle* h = &op;
  LinOp r;
  r.dim = op.dim();
  r.apply = [h, ws](const double* x, double* y) { op_apply(*h, x, y, *ws); };
  r.apply_adjoint = [h, ws](const double* x, double* y) {
    op_apply_adjoint(*h, x, y, *ws);
  };
  return r;
}

LinOp lin_difference(LinOp a, LinOp b) {
  if (a.dim != b.dim) throw ValidationError("lin_difference: dim mismatch");
  auto tmp = std::make_shared<std::vector<double>>();
  LinOp r;
  r.dim = a.dim;
  r.apply = [a, b, tmp](const double* x, double* y) {
    tmp->resize(a.dim);
    a.apply(x, y);
    b.apply(x, tmp->data());
    for (size_t i = 0; i < a.dim; ++i) y[i] -= (*tmp)[i];
  };
  r.apply_adjoint = [a, b, tmp](const double* x, double* y) {
    tmp->resize(a.dim);
    a.apply_adjoint(x, y);
    b.apply_adjoint(x, tmp->data());
    for (size_t i = 0; i < a.dim; ++i) y[i] -= (*tmp)[i];
  };
  return r;
}

LinOp lin_compose(LinOp a, LinOp b) {
  if (a.dim != b.dim) throw ValidationError("lin_compose: dim mismatch");
  auto tmp = std::make_shared<std::vector<double>>();
  LinOp r;
  r.dim = a.dim;
  r.apply = [a, b, tmp](const double* x, double* y) {
    tmp->resize(a.dim);
    b.apply(x, tmp->data());
    a.apply(tmp->data(), y);
  };
  r.apply_adjoint = [a, b, tmp](const double* x, double* y) {
    tmp->resize(a.dim);
    a.apply_adjoint(x, tmp->data());
    b.apply_adjoint(tmp->data(), y);
  };
  return r;
}

LinOp lin_scale(double c, LinOp a) {
  LinOp r;
  r.dim = a.dim;
  r.apply = [a, c](const double* x, double* y) {
    a.apply(x, y);
    for (size_t i = 0; i < a.dim; ++i) y[i] *= c;
  };
  r.apply_adjoint = [a, c](const double* x, double* y) {
    a.apply_adjoint(x, y);
    for (size_t i = 0; i < a.dim; ++i) y[i] *= c;
  };
  return r;
}

LinOp lin_identity_minus(LinOp a) {
  auto tmp = std::make_shared<std::vector<double>>();
  LinOp r;
  r.dim = a.dim;
  r.apply = [a, tmp](const double* x, double* y) {
    tmp->resize(a.dim);
    a.apply(x, tmp->data());
    for (size_t i = 0; i < a.dim; ++i) y[i] = x[i] - (*tmp)[i];
  };
  r.apply_adjoint = [a, tmp](const double* x, double* y) {
    tmp->resize(a.dim);
    a.apply_adjoint(x, tmp->data());
    for (size_t i = 0; i < a.dim; ++i) y[i] = x[i] - (*tmp)[i];
  };
  return r;
}

Eigen::MatrixXd materialize_dense(const LinOp& a) {
  if (a.dim > 8192) throw CapacityError("materialize_dense: dimension too large");
  const size_t n = a.dim;
  Eigen::MatrixXd m(n, n);
  std::vector<double> e(n, 0.0), col(n, 0.0);
  for (size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    a.apply(e.data(), col.data());
    for (size_t i = 0; i < n; ++i) m(Eigen::Index(i), Eigen::Index(j)) = col[i];
    e[j] = 0.0;
  }
  return m;
}

double dense_l1_norm(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().colwise().sum().maxCoeff();
}

double dense_linf_norm(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

namespace {

Eigen::VectorXd seeded_gaussian(size_t n, uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  for (size_t i = 0; i < n; ++i) v[Eigen::Index(i)] = nd(gen);
  return v;
}

struct KrylovOut {
  double theta = 0.0;  // best Ritz value of A^T A
  double resid = 0.0;  // Ritz residual norm on A^T A
  int iters = 0;
};

// Symmetric Krylov (Lanczos-type) power scheme on B = A^T A with full
// reorthogonalization; the top Ritz value is a monotone lower bound on
// lambda_max(B) = |A|_2^2.
KrylovOut krylov_top_eig(const LinOp& a, const NormOptions& opt) {
  const size_t n = a.dim;
  constexpr size_t kMemDoubles = 50000000;  // cap the stored basis
  int kmax = int(std::min<size_t>(size_t(opt.max_iter),
                                  std::max<size_t>(12, kMemDoubles / std::max<size_t>(n, 1))));
  std::vector<Eigen::VectorXd> basis;
  std::vector<double> alpha, beta;
  std::vector<double> tmp(n), img(n);

  Eigen::VectorXd v = seeded_gaussian(n, opt.seed);
  double nv = v.norm();
  if (nv == 0.0) throw ValidationError("krylov_top_eig: degenerate start");
  v /= nv;
  basis.push_back(v);

  KrylovOut out;
  auto eval_top = [&](double& theta, double& resid) {
    const int k = int(alpha.size());
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i) {
      t(i, i) = alpha[size_t(i)];
      if (i + 1 < k) t(i, i + 1) = t(i + 1, i) = beta[size_t(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    int top = k - 1;  // eigenvalues ascend
    theta = es.eigenvalues()(top);
    const double ylast = es.eigenvectors()(k - 1, top);
    resid = beta.size() >= size_t(k) ? std::fabs(beta[size_t(k) - 1] * ylast) : 0.0;
  };

  for (int j = 0; j < kmax; ++j) {
    const Eigen::VectorXd& vj = basis.back();
    a.apply(vj.data(), tmp.data());
    a.apply_adjoint(tmp.data(), img.data());
    Eigen::Map<Eigen::VectorXd> w(img.data(), Eigen::Index(n));
    Eigen::VectorXd wv = w;
    if (j > 0) wv -= beta.back() * basis[size_t(j) - 1];
    const double aj = vj.dot(wv);
    alpha.push_back(aj);
    wv -= aj * vj;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& u : basis) wv -= u.dot(wv) * u;
    const double bj = wv.norm();
    out.iters = j + 1;

    const bool last = (j + 1 == kmax) || (bj < 1e-300);
    if (last || (j + 1) % 8 == 0) {
      beta.push_back(bj);
      double theta = 0.0, resid = 0.0;
      eval_top(theta, resid);
      beta.pop_back();
      out.theta = theta;
      out.resid = resid;
      if (resid <= opt.tol * std::max(std::fabs(theta), 1e-30) || last) return out;
    }
    beta.push_back(bj);
    basis.push_back(wv / bj);
  }
  return out;
}

void dual_map(const Eigen::VectorXd& y, double e, Eigen::VectorXd& out) {
  out.resize(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double a = std::fabs(y[i]);
    out[i] = a == 0.0 ? 0.0 : (y[i] > 0 ? 1.0 : -1.0) * std::pow(a, e);
  }
}

double vec_lp(const Eigen::VectorXd& v, double p) {
  return lp_norm(v.data(), size_t(v.size()), p, KernelMode::Serial);
}

struct PowerOut {
  double best = 0.0;
  int iters = 0;
  double resid = 0.0;
};

// Nonlinear power iteration maximizing |A x|_p / |x|_p; every iterate is a
// valid lower bound, restarts guard against bad basins.
PowerOut nonlinear_power_lower(const LinOp& a, double p, const NormOptions& opt) {
  const size_t n = a.dim;
  PowerOut out;
  std::vector<double> img(n), back(n);
  for (int rs = 0; rs < std::max(1, opt.restarts); ++rs) {
    Eigen::VectorXd x =
        seeded_gaussian(n, opt.seed + 0x9e3779b97f4a7c15ULL * uint64_t(rs + 1));
    double nx = vec_lp(x, p);
    if (nx == 0.0) continue;
    x /= nx;
    double prev = -1.0;
    for (int it = 0; it < opt.max_iter; ++it) {
      a.apply(x.data(), img.data());
      Eigen::Map<Eigen::VectorXd> y(img.data(), Eigen::Index(n));
      const double ratio = vec_lp(y, p);
      out.iters++;
      if (ratio > out.best) out.best = ratio;
      out.resid = std::fabs(ratio - prev);
      if (out.resid <= opt.tol * std::max(ratio, 1e-30)) break;
      prev = ratio;
      if (ratio == 0.0) break;
      Eigen::VectorXd jp;
      dual_map(y, p - 1.0, jp);
      a.apply_adjoint(jp.data(), back.data());
      Eigen::Map<Eigen::VectorXd> z(back.data(), Eigen::Index(n));
      Eigen::VectorXd zz = z;
      Eigen::VectorXd xn;
      dual_map(zz, 1.0 / (p - 1.0), xn);
      const double nn = vec_lp(xn, p);
      if (nn == 0.0) break;
      x = xn / nn;
    }
  }
  return out;
}

}  // namespace

NormEstimate operator_norm(const LinOp& a, double p, const NormOptions& opt,
                           std::optional<double> l1, std::optional<double> linf) {
  if (!(p >= 1.0) || !std::isfinite(p))
    throw ValidationError("operator_norm: p must be finite and >= 1");
  NormEstimate est;
  std::optional<double> interp;
  if (l1 && linf)
    interp = std::pow(*l1, 1.0 / p) * std::pow(*linf, 1.0 - 1.0 / p);

  if (a.dim <= opt.dense_capacity) {
    Eigen::MatrixXd m = materialize_dense(a);
    if (p == 2.0) {
      Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
      const double s = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
      est.lower = est.upper = s;
      est.upper_certified = true;
      est.method = "dense-svd";
      est.iterations = 1;
      est.residual = 0.0;
      if (interp && *interp < est.upper) est.upper = std::max(*interp, est.lower);
      return est;
    }
    const double dl1 = dense_l1_norm(m);
    const double dlinf = dense_linf_norm(m);
    double up = std::pow(dl1, 1.0 / p) * std::pow(dlinf, 1.0 - 1.0 / p);
    if (interp) up = std::min(up, *interp);
    LinOp dense;
    auto mp = std::make_shared<Eigen::MatrixXd>(std::move(m));
    dense.dim = a.dim;
    dense.apply = [mp](const double* x, double* y) {
      Eigen::Map<const Eigen::VectorXd> xv(x, mp->cols());
      Eigen::Map<Eigen::VectorXd> yv(y, mp->rows());
      yv = (*mp) * xv;
    };
    dense.apply_adjoint = [mp](const double* x, double* y) {
      Eigen::Map<const Eigen::VectorXd> xv(x, mp->rows());
      Eigen::Map<Eigen::VectorXd> yv(y, mp->cols());
      yv = mp->transpose() * xv;
    };
    PowerOut po = nonlinear_power_lower(dense, p, opt);
    est.lower = po.best;
    est.upper = std::max(up, est.lower);
    est.upper_certified = true;
    est.method = "nonlinear-power";
    est.iterations = po.iters;
    est.residual = po.resid;
    return est;
  }

  if (p == 2.0) {
    KrylovOut ko = krylov_top_eig(a, opt);
    est.lower = std::sqrt(std::max(ko.theta, 0.0));
    est.method = "power-iteration";
    est.iterations = ko.iters;
    est.residual = ko.resid;
    if (interp) {
      est.upper = std::max(*interp, est.lower);
      est.upper_certified = true;
    } else {
      est.upper = est.lower;
      est.upper_certified = false;
    }
    return est;
  }

  PowerOut po = nonlinear_power_lower(a, p, opt);
  est.lower = po.best;
  est.method = "nonlinear-power";
  est.iterations = po.iters;
  est.residual = po.resid;
  if (interp) {
    est.upper = std::max(*interp, est.lower);
    est.upper_certified = true;
  } else {
    est.upper = est.lower;
    est.upper_certified = false;
  }
  return est;
}

}  // namespace tlab
