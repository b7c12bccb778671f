#pragma once

// Measurement campaigns on finite quotients. Every campaign returns plain
// rows; CSV formatting and file IO live elsewhere. Where a quantity has an
// exact rational value (total-variation norms of convolved measures), the
// exact number is computed first and doubles only enter at the edge.

#include <cstdint>
#include <string>
#include <vector>

#include "tlab/op_norm.hpp"

namespace tlab {

struct ExperimentRow {
  long long m = 0;  // quotient modulus; 0 means the integer group itself
  double p = 2.0;
  long long d = 0;        // primary sweep index
  std::string quantity;   // measurement name plus "k=v" params, ';'-joined
  double lower = 0.0;
  double upper = 0.0;
  bool certified = false;  // upper is a proved bound, not just an estimate
  std::string method;
  int iterations = 0;
  double residual = 0.0;
  double seconds = 0.0;  // emitted only when timings are requested
};

// convolution of a chain left to right; empty chain is the identity dirac
IdxMeasure convolve_chain(const GroupTable& t, const std::vector<IdxMeasure>& chain);

// |pi(h_{d+1}) - pi(h_d)|_p for d = 1..d_max on l^p(SL3(Z/m)), with the
// exact total variation of the convolved difference as certified upper bound.
std::vector<ExperimentRow> cauchy_decay(uint32_t m, unsigned d_max, double p,
                                        const NormOptions& opt = {});

// |(I - P_UT) pi(u_E12 * u_E13 * u_E23)|_p on l^p(SL3(Z/m)) (exactly zero by
// the unitriangular normal form), plus the exact l1 decay of the finite-scale
// defect (delta_e - u_UT) * f_d for d = 1..d_exact_max.
std::vector<ExperimentRow> projection_defect(uint32_t m, const std::vector<double>& ps,
                                             unsigned d_exact_max,
                                             const NormOptions& opt = {});

// Reordering defect of u_x(2^d1) * u_z(2^d3) * u_y(2^d2) against the reversed
// order, exactly, over all d1 + d2 <= d3 - 2, d3 <= d3_max: the integer-group
// total variation equals (2^d1 - 1)(2^d2 - 1) / 2^{d3+1} and stays within the
// 8 * (1/2)^{d3 - d1 - d2} budget; quotient rows push both words mod m first.
std::vector<ExperimentRow> change_of_order(const std::vector<uint32_t>& quotients,
                                           unsigned d3_max);

// Largest z-translation defect |(I - pi(z)) xi| over unit xi whose symmetric
// x/y averaging defect is at most `threshold`, on l^2(UT3(Z/m)). Solved as a
// two-quadratic trust problem: min over mu >= 0 of lambda_max(A^T A +
// mu (threshold^2 I - B^T B)) (exact by the S-procedure), with the optimizer's
// top eigenvector replayed as a feasible witness for the lower end.
std::vector<ExperimentRow> heis_contraction(const std::vector<uint32_t>& ms,
                                            double threshold = 0.25,
                                            const NormOptions& opt = {});

}  // namespace tlab
