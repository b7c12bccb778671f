#include "tlab/sl3.hpp"

#include <sstream>

namespace tlab {

Mat3 Mat3::identity() {
  Mat3 r;
  for (int i = 0; i < 9; ++i) r.a[size_t(i)] = (i % 4 == 0) ? 1 : 0;
  return r;
}

bool mat3_less(const Mat3& x, const Mat3& y) {
  for (int i = 0; i < 9; ++i) {
    if (x.a[size_t(i)] != y.a[size_t(i)]) return x.a[size_t(i)] < y.a[size_t(i)];
  }
  return false;
}

Mat3 mul(const Mat3& x, const Mat3& y) {
  Mat3 r;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Int s = 0;
      for (int k = 0; k < 3; ++k) s += x.at(i, k) * y.at(k, j);
      r.at(i, j) = s;
    }
  }
  return r;
}

Int det(const Mat3& x) {
  return x.at(0, 0) * (x.at(1, 1) * x.at(2, 2) - x.at(1, 2) * x.at(2, 1)) -
         x.at(0, 1) * (x.at(1, 0) * x.at(2, 2) - x.at(1, 2) * x.at(2, 0)) +
         x.at(0, 2) * (x.at(1, 0) * x.at(2, 1) - x.at(1, 1) * x.at(2, 0));
}

bool is_sl3(const Mat3& x) { return det(x) == 1; }

Mat3 inverse_unimodular(const Mat3& x) {
  if (det(x) != 1) throw ValidationError("inverse_unimodular: determinant is not 1");
  Mat3 r;  // adjugate = transpose of cofactors; det 1 so adjugate is the inverse
  r.at(0, 0) = x.at(1, 1) * x.at(2, 2) - x.at(1, 2) * x.at(2, 1);
  r.at(0, 1) = x.at(0, 2) * x.at(2, 1) - x.at(0, 1) * x.at(2, 2);
  r.at(0, 2) = x.at(0, 1) * x.at(1, 2) - x.at(0, 2) * x.at(1, 1);
  r.at(1, 0) = x.at(1, 2) * x.at(2, 0) - x.at(1, 0) * x.at(2, 2);
  r.at(1, 1) = x.at(0, 0) * x.at(2, 2) - x.at(0, 2) * x.at(2, 0);
  r.at(1, 2) = x.at(0, 2) * x.at(1, 0) - x.at(0, 0) * x.at(1, 2);
  r.at(2, 0) = x.at(1, 0) * x.at(2, 1) - x.at(1, 1) * x.at(2, 0);
  r.at(2, 1) = x.at(0, 1) * x.at(2, 0) - x.at(0, 0) * x.at(2, 1);
  r.at(2, 2) = x.at(0, 0) * x.at(1, 1) - x.at(0, 1) * x.at(1, 0);
  return r;
}

Mat3 elementary(int i, int j, const Int& v) {
  if (i < 1 || i > 3 || j < 1 || j > 3 || i == j)
    throw ValidationError("elementary: need 1-based indices i != j");
  Mat3 r = Mat3::identity();
  r.at(i - 1, j - 1) = v;
  return r;
}

std::string to_string(const Mat3& x) {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < 9; ++i) os << (i ? " " : "") << x.a[size_t(i)];
  os << "]";
  return os.str();
}

// residue matrices -------------------------------------------------------

bool modmat_less(const ModMat3& x, const ModMat3& y) { return x.a < y.a; }

ModMat3 identity_mod() { return ModMat3{{1, 0, 0, 0, 1, 0, 0, 0, 1}}; }

ModMat3 reduce_mod(const Mat3& x, uint32_t m) {
  if (m < 2) throw ValidationError("reduce_mod: modulus must be >= 2");
  ModMat3 r;
  for (int i = 0; i < 9; ++i) {
    Int v = x.a[size_t(i)] % m;
    if (v < 0) v += m;
    r.a[size_t(i)] = v.convert_to<uint32_t>();
  }
  return r;
}

ModMat3 mul_mod(const ModMat3& x, const ModMat3& y, uint32_t m) {
  ModMat3 r;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      uint64_t s = 0;
      for (int k = 0; k < 3; ++k)
        s += uint64_t(x.a[size_t(3 * i + k)]) * y.a[size_t(3 * k + j)];
      r.a[size_t(3 * i + j)] = uint32_t(s % m);
    }
  }
  return r;
}

uint32_t det_mod(const ModMat3& x, uint32_t m) {
  auto e = [&](int i, int j) { return int64_t(x.a[size_t(3 * i + j)]); };
  int64_t d = e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) -
              e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
              e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
  int64_t r = d % int64_t(m);
  if (r < 0) r += int64_t(m);
  return uint32_t(r);
}

ModMat3 inverse_mod(const ModMat3& x, uint32_t m) {
  if (det_mod(x, m) != 1) throw ValidationError("inverse_mod: determinant is not 1 mod m");
  auto e = [&](int i, int j) { return int64_t(x.a[size_t(3 * i + j)]); };
  auto fix = [&](int64_t v) {
    int64_t r = v % int64_t(m);
    if (r < 0) r += int64_t(m);
    return uint32_t(r);
  };
  ModMat3 r;
  r.a[0] = fix(e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1));
  r.a[1] = fix(e(0, 2) * e(2, 1) - e(0, 1) * e(2, 2));
  r.a[2] = fix(e(0, 1) * e(1, 2) - e(0, 2) * e(1, 1));
  r.a[3] = fix(e(1, 2) * e(2, 0) - e(1, 0) * e(2, 2));
  r.a[4] = fix(e(0, 0) * e(2, 2) - e(0, 2) * e(2, 0));
  r.a[5] = fix(e(0, 2) * e(1, 0) - e(0, 0) * e(1, 2));
  r.a[6] = fix(e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
  r.a[7] = fix(e(0, 1) * e(2, 0) - e(0, 0) * e(2, 1));
  r.a[8] = fix(e(0, 0) * e(1, 1) - e(0, 1) * e(1, 0));
  return r;
}

ModMat3 elementary_mod(int i, int j, int64_t v, uint32_t m) {
  if (i < 1 || i > 3 || j < 1 || j > 3 || i == j)
    throw ValidationError("elementary_mod: need 1-based indices i != j");
  int64_t r = v % int64_t(m);
  if (r < 0) r += int64_t(m);
  ModMat3 e = identity_mod();
  e.a[size_t(3 * (i - 1) + (j - 1))] = uint32_t(r);
  return e;
}

std::string to_string(const ModMat3& x) {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < 9; ++i) os << (i ? " " : "") << x.a[size_t(i)];
  os << "]";
  return os.str();
}

// Steinberg relations ----------------------------------------------------

namespace {

Mat3 commutator(const Mat3& x, const Mat3& y) {
  // [x, y] = x^{-1} y^{-1} x y
  return mul(mul(inverse_unimodular(x), inverse_unimodular(y)), mul(x, y));
}

}  // namespace

SteinbergReport check_steinberg(int range) {
  SteinbergReport rep;
  auto fail = [&](const std::string& what) {
    ++rep.failures;
    if (rep.first_failure.empty()) rep.first_failure = what;
  };
  const int pairs[6][2] = {{1, 2}, {1, 3}, {2, 1}, {2, 3}, {3, 1}, {3, 2}};
  const Mat3 id = Mat3::identity();

  // additivity in each entry
  for (auto [i, j] : pairs) {
    for (int m1 = -range; m1 <= range; ++m1) {
      for (int m2 = -range; m2 <= range; ++m2) {
        ++rep.checked;
        if (!(mul(elementary(i, j, m1), elementary(i, j, m2)) == elementary(i, j, Int(m1) + m2)))
          fail("e_ij(m1) e_ij(m2) != e_ij(m1+m2)");
      }
    }
  }

  // triples (i,j,k) with {i,j,k} = {1,2,3}
  const int triples[6][3] = {{1, 2, 3}, {1, 3, 2}, {2, 1, 3}, {2, 3, 1}, {3, 1, 2}, {3, 2, 1}};
  for (auto [i, j, k] : triples) {
    for (int m1 = -range; m1 <= range; ++m1) {
      for (int m2 = -range; m2 <= range; ++m2) {
        ++rep.checked;
        if (!(commutator(elementary(i, j, m1), elementary(j, k, m2)) ==
              elementary(i, k, Int(m1) * m2)))
          fail("[e_ij(m1), e_jk(m2)] != e_ik(m1 m2)");
        ++rep.checked;
        if (!(commutator(elementary(i, j, m1), elementary(i, k, m2)) == id))
          fail("[e_ij(m1), e_ik(m2)] != I");
        ++rep.checked;
        if (!(commutator(elementary(j, i, m1), elementary(k, i, m2)) == id))
          fail("[e_ji(m1), e_ki(m2)] != I");
      }
    }
  }
  return rep;
}

}  // namespace tlab
