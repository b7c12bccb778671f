#include <cstdint>
#include <sstream>
#include <vector>

#include <omp.h>

#include "tlab/measure.hpp"

namespace tlab {

namespace {

// One (m, d) cell: dense convolution of (delta_0 - delta_m) against the
// all-ones numerator array of Z^d, checked against the two-block closed form.
// Numerators are over the common denominator 2^d, so everything is int64.
bool check_cell(uint32_t m, uint32_t n, std::vector<int64_t>& buf) {
  buf.assign(size_t(n) + m, 0);
  for (uint32_t j = 0; j < n; ++j) buf[j] += 1;      // +1 * Z^d shifted by 0
  for (uint32_t j = 0; j < n; ++j) buf[j + m] -= 1;  // -1 * Z^d shifted by m
  int64_t abs_sum = 0;
  for (uint32_t k = 0; k < n + m; ++k) {
    int64_t expect = 0;
    if (k < m)
      expect = 1;
    else if (k >= n)
      expect = -1;
    if (buf[k] != expect) return false;
    abs_sum += buf[k] < 0 ? -buf[k] : buf[k];
  }
  return abs_sum == 2 * int64_t(m);
}

std::string cell_name(uint32_t m, unsigned d) {
  std::ostringstream os;
  os << "m=" << m << " d=" << d;
  return os.str();
}

}  // namespace

ZSweepReport z_difference_sweep_serial(unsigned maxlog) {
  if (maxlog > 20) throw CapacityError("z_difference_sweep: maxlog too large");
  ZSweepReport rep;
  std::vector<int64_t> buf;
  for (unsigned d = 0; d <= maxlog; ++d) {
    uint32_t n = uint32_t(1) << d;
    for (uint32_t m = 1; m <= n; ++m) {
      ++rep.pairs;
      if (!check_cell(m, n, buf) && rep.all_ok) {
        rep.all_ok = false;
        rep.first_failure = cell_name(m, d);
      }
    }
  }
  return rep;
}

ZSweepReport z_difference_sweep_omp(unsigned maxlog) {
  if (maxlog > 20) throw CapacityError("z_difference_sweep: maxlog too large");
  ZSweepReport rep;
  for (unsigned d = 0; d <= maxlog; ++d) {
    uint32_t n = uint32_t(1) << d;
    std::vector<uint8_t> ok(n + 1, 1);
#pragma omp parallel
    {
      std::vector<int64_t> buf;
#pragma omp for schedule(dynamic, 64)
      for (int64_t m = 1; m <= int64_t(n); ++m) ok[size_t(m)] = check_cell(uint32_t(m), n, buf);
    }
    rep.pairs += n;
    for (uint32_t m = 1; m <= n; ++m) {
      if (!ok[m] && rep.all_ok) {
        rep.all_ok = false;
        rep.first_failure = cell_name(m, d);
      }
    }
  }
  return rep;
}

}  // namespace tlab
