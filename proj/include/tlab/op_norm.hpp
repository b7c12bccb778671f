#pragma once

// Operator p-norm estimation for matrix-free linear maps. p = 2 uses a
// dense SVD below a size cap and a Krylov power scheme on A^T A (with full
// reorthogonalization) above it. Other p use a nonlinear power iteration
// for the lower end; upper bounds come from Riesz-Thorin interpolation
// between exact l1 and linf operator norms when those are available.

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "tlab/rep_space.hpp"

namespace tlab {

struct LinOp {
  size_t dim = 0;
  std::function<void(const double*, double*)> apply;
  std::function<void(const double*, double*)> apply_adjoint;
};

// Wraps an OpHandle by reference: the handle must outlive the LinOp.
LinOp lin_from_handle(const OpHandle& op);
LinOp lin_difference(LinOp a, LinOp b);
LinOp lin_compose(LinOp a, LinOp b);  // x -> a(b(x))
LinOp lin_scale(double c, LinOp a);
LinOp lin_identity_minus(LinOp a);

// Column-by-column materialization; guarded against absurd sizes.
Eigen::MatrixXd materialize_dense(const LinOp& a);

// exact max-column / max-row absolute sums of a dense matrix
double dense_l1_norm(const Eigen::MatrixXd& m);
double dense_linf_norm(const Eigen::MatrixXd& m);

struct NormOptions {
  size_t dense_capacity = 1024;
  double tol = 1e-12;
  int max_iter = 400;
  int restarts = 3;
  uint64_t seed = 0x5eedbeefULL;
};

struct NormEstimate {
  double lower = 0.0;
  double upper = 0.0;  // equals lower when not certified
  bool upper_certified = false;
  std::string method;
  int iterations = 0;
  double residual = 0.0;
};

// l1 / linf, when supplied, must be true operator norms (e.g. the exact
// total variation of the defining measure); they certify the upper end as
// l1^{1/p} * linf^{1-1/p} for any p in [1, inf).
NormEstimate operator_norm(const LinOp& a, double p,
                           const NormOptions& opt = {},
                           std::optional<double> l1 = std::nullopt,
                           std::optional<double> linf = std::nullopt);

}  // namespace tlab
