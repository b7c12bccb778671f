#pragma once

// Discrete Heisenberg group in the normal form x^a y^b z^c, z central,
// with the composition law validated against a 3x3 matrix embedding.

#include "tlab/sl3.hpp"

namespace tlab {

struct HeisWord {
  Int a, b, c;  // x-, y-, z-exponents of the normal form
  bool operator==(const HeisWord& o) const { return a == o.a && b == o.b && c == o.c; }
};

bool heis_less(const HeisWord& u, const HeisWord& v);

inline HeisWord heis_id() { return HeisWord{0, 0, 0}; }

// Normal-form product: (a1,b1,c1)(a2,b2,c2) = (a1+a2, b1+b2, c1+c2 - a2*b1).
// The cross term is what the matrix embedding dictates; see heis_embed.
HeisWord heis_mul(const HeisWord& u, const HeisWord& v);
HeisWord heis_inv(const HeisWord& u);
HeisWord heis_pow(const HeisWord& u, const Int& n);

// x -> e_{i,j}(1), y -> e_{j,k}(1), z -> e_{i,k}(1); the word x^a y^b z^c
// lands on e_{i,j}(a) e_{j,k}(b) e_{i,k}(c).
Mat3 heis_embed(const HeisWord& u, int i, int j, int k);

std::string to_string(const HeisWord& u);

}  // namespace tlab
