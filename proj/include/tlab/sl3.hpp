#pragma once

// 3x3 matrices over Z (arbitrary precision) and over Z/m, plus the
// elementary-matrix relations used everywhere else in the library.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "tlab/rational.hpp"

namespace tlab {

struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Mat3 {
  std::array<Int, 9> a;  // row-major

  static Mat3 identity();
  Int& at(int r, int c) { return a[size_t(3 * r + c)]; }
  const Int& at(int r, int c) const { return a[size_t(3 * r + c)]; }
  bool operator==(const Mat3& o) const { return a == o.a; }
};

bool mat3_less(const Mat3& x, const Mat3& y);  // row-major lexicographic

Mat3 mul(const Mat3& x, const Mat3& y);
Int det(const Mat3& x);
// adjugate inverse; requires det == 1
Mat3 inverse_unimodular(const Mat3& x);
bool is_sl3(const Mat3& x);

// e_{i,j}(v): identity plus v at row i, column j (1-based, i != j)
Mat3 elementary(int i, int j, const Int& v);

std::string to_string(const Mat3& x);

// residue matrices -------------------------------------------------------

struct ModMat3 {
  std::array<uint32_t, 9> a;
  bool operator==(const ModMat3& o) const { return a == o.a; }
};

bool modmat_less(const ModMat3& x, const ModMat3& y);

ModMat3 identity_mod();
ModMat3 reduce_mod(const Mat3& x, uint32_t m);
ModMat3 mul_mod(const ModMat3& x, const ModMat3& y, uint32_t m);
uint32_t det_mod(const ModMat3& x, uint32_t m);
// adjugate route; requires det_mod == 1
ModMat3 inverse_mod(const ModMat3& x, uint32_t m);
ModMat3 elementary_mod(int i, int j, int64_t v, uint32_t m);

std::string to_string(const ModMat3& x);

// exhaustive Steinberg relation check over exponents in [-range, range]
struct SteinbergReport {
  long long checked = 0;
  long long failures = 0;
  std::string first_failure;
};

SteinbergReport check_steinberg(int range);

}  // namespace tlab
