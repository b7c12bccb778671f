#include "tlab/heis.hpp"

#include <sstream>

namespace tlab {

bool heis_less(const HeisWord& u, const HeisWord& v) {
  if (u.a != v.a) return u.a < v.a;
  if (u.b != v.b) return u.b < v.b;
  return u.c < v.c;
}

HeisWord heis_mul(const HeisWord& u, const HeisWord& v) {
  return HeisWord{u.a + v.a, u.b + v.b, u.c + v.c - v.a * u.b};
}

HeisWord heis_inv(const HeisWord& u) { return HeisWord{-u.a, -u.b, -u.c - u.a * u.b}; }

HeisWord heis_pow(const HeisWord& u, const Int& n) {
  if (n < 0) return heis_pow(heis_inv(u), -n);
  HeisWord acc = heis_id();
  HeisWord base = u;
  Int e = n;
  while (e > 0) {
    if ((e & 1) != 0) acc = heis_mul(acc, base);
    base = heis_mul(base, base);
    e >>= 1;
  }
  return acc;
}

Mat3 heis_embed(const HeisWord& u, int i, int j, int k) {
  if (i == j || j == k || i == k) throw ValidationError("heis_embed: indices must be distinct");
  return mul(mul(elementary(i, j, u.a), elementary(j, k, u.b)), elementary(i, k, u.c));
}

std::string to_string(const HeisWord& u) {
  std::ostringstream os;
  os << "x^" << u.a << " y^" << u.b << " z^" << u.c;
  return os.str();
}

}  // namespace tlab
