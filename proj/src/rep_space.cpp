#include "tlab/rep_space.hpp"

#include <cmath>
#include <cstring>

#include "tlab/kernels.hpp"

namespace tlab {

CompiledMeasure compile_measure(const GroupTable& t, const IdxMeasure& mu) {
  CompiledMeasure cm;
  cm.w.reserve(mu.w.size());
  cm.perm.reserve(mu.w.size());
  cm.adj.reserve(mu.w.size());
  for (const auto& [g, v] : mu.w) {
    if (g >= t.size()) throw ValidationError("compile_measure: index out of range");
    cm.w.push_back(to_double(v));
    cm.perm.push_back(t.translation_perm(g));
    cm.adj.push_back(t.translation_perm(t.inverse(g)));
  }
  return cm;
}

OpHandle make_op(const RegularRepSpace& sp, std::vector<CompiledMeasure> chain,
                 bool mean_zero) {
  OpHandle op;
  op.space = &sp;
  op.chain = std::move(chain);
  op.mean_zero = mean_zero;
  return op;
}

void project_mean_zero(double* x, size_t n_group, int fiber) {
  for (int f = 0; f < fiber; ++f) {
    double s = 0.0;
    for (size_t g = 0; g < n_group; ++g) s += x[g * size_t(fiber) + f];
    const double mean = s / double(n_group);
    for (size_t g = 0; g < n_group; ++g) x[g * size_t(fiber) + f] -= mean;
  }
}

namespace {

void run_gather(const CompiledMeasure& cm, const double* in, double* out,
                size_t n_group, int fiber, KernelMode mode) {
  std::vector<const uint32_t*> ptrs(cm.perm.size());
  for (size_t t = 0; t < cm.perm.size(); ++t) ptrs[t] = cm.perm[t].data();
  if (mode == KernelMode::Serial)
    gather_apply_serial(in, out, n_group, fiber, cm.w, ptrs);
  else
    gather_apply_omp(in, out, n_group, fiber, cm.w, ptrs);
}

void run_gather_adj(const CompiledMeasure& cm, const double* in, double* out,
                    size_t n_group, int fiber, KernelMode mode) {
  std::vector<const uint32_t*> ptrs(cm.adj.size());
  for (size_t t = 0; t < cm.adj.size(); ++t) ptrs[t] = cm.adj[t].data();
  if (mode == KernelMode::Serial)
    gather_apply_serial(in, out, n_group, fiber, cm.w, ptrs);
  else
    gather_apply_omp(in, out, n_group, fiber, cm.w, ptrs);
}

// Shared driver: walk the chain in the given index order, ping-ponging
// between the two workspace buffers, with optional mean-zero conjugation.
template <class Step>
void chain_apply(const OpHandle& op, const double* x, double* y,
                 ApplyWorkspace& ws, const std::vector<size_t>& order,
                 Step step) {
  const size_t n = op.space->table->size();
  const int fiber = op.space->fiber;
  const size_t dim = op.dim();
  ws.a.resize(dim);
  ws.b.resize(dim);

  const double* cur = x;
  if (op.mean_zero) {
    std::memcpy(ws.a.data(), x, dim * sizeof(double));
    project_mean_zero(ws.a.data(), n, fiber);
    cur = ws.a.data();
  }
  if (order.empty()) {
    if (cur != y) std::memcpy(y, cur, dim * sizeof(double));
  } else {
    for (size_t s = 0; s < order.size(); ++s) {
      double* dst =
          (s + 1 == order.size())
              ? y
              : (cur == ws.a.data() ? ws.b.data() : ws.a.data());
      step(op.chain[order[s]], cur, dst, n, fiber);
      cur = dst;
    }
  }
  if (op.mean_zero) project_mean_zero(y, n, fiber);
}

}  // namespace

void op_apply(const OpHandle& op, const double* x, double* y,
              ApplyWorkspace& ws) {
  std::vector<size_t> order(op.chain.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = order.size() - 1 - i;
  chain_apply(op, x, y, ws, order,
              [&](const CompiledMeasure& cm, const double* in, double* out,
                  size_t n, int fiber) {
                run_gather(cm, in, out, n, fiber, op.mode);
              });
}

void op_apply_adjoint(const OpHandle& op, const double* x, double* y,
                      ApplyWorkspace& ws) {
  std::vector<size_t> order(op.chain.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  chain_apply(op, x, y, ws, order,
              [&](const CompiledMeasure& cm, const double* in, double* out,
                  size_t n, int fiber) {
                run_gather_adj(cm, in, out, n, fiber, op.mode);
              });
}

IdxMeasure invariant_projector(const GroupTable& t,
                               const std::vector<uint32_t>& members) {
  if (members.empty()) throw ValidationError("invariant_projector: empty set");
  for (size_t i = 0; i + 1 < members.size(); ++i)
    if (!(members[i] < members[i + 1]))
      throw ValidationError("invariant_projector: members not sorted unique");
  std::vector<char> in_set(t.size(), 0);
  for (uint32_t g : members) {
    if (g >= t.size())
      throw ValidationError("invariant_projector: index out of range");
    in_set[g] = 1;
  }
  if (!in_set[t.identity()])
    throw ValidationError("invariant_projector: identity missing");
  for (uint32_t g : members) {
    if (!in_set[t.inverse(g)])
      throw ValidationError("invariant_projector: not closed under inverse");
    for (uint32_t h : members)
      if (!in_set[t.product(g, h)])
        throw ValidationError("invariant_projector: not closed under product");
  }
  return uniform_on(members);
}

double lp_norm(const double* x, size_t n, double p, KernelMode mode) {
  const double s = mode == KernelMode::Serial
                       ? block_abs_pow_sum_serial(x, n, p)
                       : block_abs_pow_sum_omp(x, n, p);
  if (p == 2.0) return std::sqrt(s);
  if (p == 1.0) return s;
  return std::pow(s, 1.0 / p);
}

}  // namespace tlab
