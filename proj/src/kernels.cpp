#include "tlab/kernels.hpp"

#include <cmath>
#include <cstring>

namespace tlab {

namespace {

// One output group: a fused multiply-gather over all terms. Kept in a helper
// so the serial and OMP drivers share the exact same arithmetic.
inline void gather_group(const double* in, double* out, size_t g, int fiber,
                         const std::vector<double>& w,
                         const std::vector<const uint32_t*>& perms) {
  const size_t nt = w.size();
  if (fiber == 1) {
    double acc = 0.0;
    for (size_t t = 0; t < nt; ++t) acc += w[t] * in[perms[t][g]];
    out[g] = acc;
    return;
  }
  const size_t base = g * size_t(fiber);
  for (int f = 0; f < fiber; ++f) out[base + f] = 0.0;
  for (size_t t = 0; t < nt; ++t) {
    const double wt = w[t];
    const size_t src = size_t(perms[t][g]) * size_t(fiber);
    for (int f = 0; f < fiber; ++f) out[base + f] += wt * in[src + f];
  }
}

inline double block_sum_combine(const std::vector<double>& partial) {
  double acc = 0.0;
  for (double v : partial) acc += v;
  return acc;
}

}  // namespace

void gather_apply_serial(const double* in, double* out, size_t n, int fiber,
                         const std::vector<double>& w,
                         const std::vector<const uint32_t*>& perms) {
  for (size_t g = 0; g < n; ++g) gather_group(in, out, g, fiber, w, perms);
}

void gather_apply_omp(const double* in, double* out, size_t n, int fiber,
                      const std::vector<double>& w,
                      const std::vector<const uint32_t*>& perms) {
#pragma omp parallel for schedule(static)
  for (long long gi = 0; gi < (long long)n; ++gi)
    gather_group(in, out, size_t(gi), fiber, w, perms);
}

double block_dot_serial(const double* a, const double* b, size_t n) {
  const size_t nblk = (n + kReduceBlock - 1) / kReduceBlock;
  std::vector<double> partial(nblk, 0.0);
  for (size_t bi = 0; bi < nblk; ++bi) {
    const size_t lo = bi * kReduceBlock;
    const size_t hi = lo + kReduceBlock < n ? lo + kReduceBlock : n;
    double acc = 0.0;
    for (size_t i = lo; i < hi; ++i) acc += a[i] * b[i];
    partial[bi] = acc;
  }
  return block_sum_combine(partial);
}

double block_dot_omp(const double* a, const double* b, size_t n) {
  const size_t nblk = (n + kReduceBlock - 1) / kReduceBlock;
  std::vector<double> partial(nblk, 0.0);
#pragma omp parallel for schedule(static)
  for (long long bi = 0; bi < (long long)nblk; ++bi) {
    const size_t lo = size_t(bi) * kReduceBlock;
    const size_t hi = lo + kReduceBlock < n ? lo + kReduceBlock : n;
    double acc = 0.0;
    for (size_t i = lo; i < hi; ++i) acc += a[i] * b[i];
    partial[size_t(bi)] = acc;
  }
  return block_sum_combine(partial);
}

namespace {

template <class F>
double block_map_sum_serial(const double* x, size_t n, F f) {
  const size_t nblk = (n + kReduceBlock - 1) / kReduceBlock;
  std::vector<double> partial(nblk, 0.0);
  for (size_t bi = 0; bi < nblk; ++bi) {
    const size_t lo = bi * kReduceBlock;
    const size_t hi = lo + kReduceBlock < n ? lo + kReduceBlock : n;
    double acc = 0.0;
    for (size_t i = lo; i < hi; ++i) acc += f(x[i]);
    partial[bi] = acc;
  }
  return block_sum_combine(partial);
}

template <class F>
double block_map_sum_omp(const double* x, size_t n, F f) {
  const size_t nblk = (n + kReduceBlock - 1) / kReduceBlock;
  std::vector<double> partial(nblk, 0.0);
#pragma omp parallel for schedule(static)
  for (long long bi = 0; bi < (long long)nblk; ++bi) {
    const size_t lo = size_t(bi) * kReduceBlock;
    const size_t hi = lo + kReduceBlock < n ? lo + kReduceBlock : n;
    double acc = 0.0;
    for (size_t i = lo; i < hi; ++i) acc += f(x[i]);
    partial[size_t(bi)] = acc;
  }
  return block_sum_combine(partial);
}

}  // namespace

double block_abs_pow_sum_serial(const double* x, size_t n, double p) {
  if (p == 2.0)
    return block_map_sum_serial(x, n, [](double v) { return v * v; });
  if (p == 1.0)
    return block_map_sum_serial(x, n, [](double v) { return std::fabs(v); });
  return block_map_sum_serial(
      x, n, [p](double v) { return std::pow(std::fabs(v), p); });
}

double block_abs_pow_sum_omp(const double* x, size_t n, double p) {
  if (p == 2.0) return block_map_sum_omp(x, n, [](double v) { return v * v; });
  if (p == 1.0)
    return block_map_sum_omp(x, n, [](double v) { return std::fabs(v); });
  return block_map_sum_omp(x, n,
                           [p](double v) { return std::pow(std::fabs(v), p); });
}

}  // namespace tlab
