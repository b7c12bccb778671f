#pragma once

// The left regular representation of a finite table group on real
// sequence space: (pi(g) xi)(h) = xi(g^{-1} h). Measures compile to weighted
// gather maps; operators are chains of compiled measures applied in
// convolution order, so pi(mu * nu) = pi(mu) . pi(nu) holds by construction.

#include <cstdint>
#include <vector>

#include "tlab/measure.hpp"

namespace tlab {

enum class KernelMode { Serial, Parallel };

struct RegularRepSpace {
  const GroupTable* table = nullptr;
  int fiber = 1;  // optional vector fiber; norms run over the flat array
  size_t dim() const { return size_t(table->size()) * size_t(fiber); }
};

struct CompiledMeasure {
  std::vector<double> w;                    // one weight per support point
  std::vector<std::vector<uint32_t>> perm;  // forward gather per support point
  std::vector<std::vector<uint32_t>> adj;   // adjoint gather per support point
};

// Weights convert to double here; exactness of dyadic weights is preserved.
CompiledMeasure compile_measure(const GroupTable& t, const IdxMeasure& mu);

struct OpHandle {
  const RegularRepSpace* space = nullptr;
  std::vector<CompiledMeasure> chain;  // applied right-to-left
  bool mean_zero = false;              // conjugate by the mean-zero projection
  KernelMode mode = KernelMode::Parallel;
  size_t dim() const { return space->dim(); }
};

OpHandle make_op(const RegularRepSpace& sp, std::vector<CompiledMeasure> chain,
                 bool mean_zero = false);

struct ApplyWorkspace {
  std::vector<double> a, b;
};

// y = pi(f_1) pi(f_2) ... pi(f_k) x   (chain = [f_1, ..., f_k])
void op_apply(const OpHandle& op, const double* x, double* y,
              ApplyWorkspace& ws);
// y = (the same operator, transposed) x
void op_apply_adjoint(const OpHandle& op, const double* x, double* y,
                      ApplyWorkspace& ws);

// Uniform probability measure on a subgroup given by sorted member indices.
// Validates identity membership and closure under product and inverse, so
// the compiled operator is the symmetric idempotent averaging over H.
IdxMeasure invariant_projector(const GroupTable& t,
                               const std::vector<uint32_t>& members);

// subtract the per-fiber mean: the projection that kills constant vectors
void project_mean_zero(double* x, size_t n_group, int fiber);

double lp_norm(const double* x, size_t n, double p, KernelMode mode);

}  // namespace tlab
