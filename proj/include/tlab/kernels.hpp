#pragma once

// Hot loops in two variants: a serial reference and an OpenMP twin. The
// parallel versions are bit-identical to the serial ones for any thread
// count: gathers write disjoint outputs, and reductions sum fixed 4096-long
// blocks serially before combining the block sums in index order.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace tlab {

// out[i] = sum_t w[t] * in[perm_t[fiber-base of i]] with k-long fibers:
// out[g*k + f] = sum_t w[t] * in[perm_t[g]*k + f]
void gather_apply_serial(const double* in, double* out, size_t n, int fiber,
                         const std::vector<double>& w,
                         const std::vector<const uint32_t*>& perms);
void gather_apply_omp(const double* in, double* out, size_t n, int fiber,
                      const std::vector<double>& w,
                      const std::vector<const uint32_t*>& perms);

constexpr size_t kReduceBlock = 4096;

double block_dot_serial(const double* a, const double* b, size_t n);
double block_dot_omp(const double* a, const double* b, size_t n);

// sum of |x_i|^p (p = 2 and p = 1 take exact fast paths)
double block_abs_pow_sum_serial(const double* x, size_t n, double p);
double block_abs_pow_sum_omp(const double* x, size_t n, double p);

}  // namespace tlab
