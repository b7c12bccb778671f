#include "tlab/measure.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace tlab {

HeisMeasure dirac(const HeisWord& g) {
  HeisMeasure r;
  r.w.emplace(g, 1);
  return r;
}

SL3Measure dirac(const Mat3& g) {
  SL3Measure r;
  r.w.emplace(g, 1);
  return r;
}

IdxMeasure dirac_idx(uint32_t g) {
  IdxMeasure r;
  r.w.emplace(g, 1);
  return r;
}

HeisMeasure convolve(const HeisMeasure& mu, const HeisMeasure& nu) {
  HeisMeasure r;
  for (const auto& [g, vg] : mu.w)
    for (const auto& [h, vh] : nu.w) r.add(heis_mul(g, h), vg * vh);
  return r;
}

SL3Measure convolve(const SL3Measure& mu, const SL3Measure& nu) {
  SL3Measure r;
  for (const auto& [g, vg] : mu.w)
    for (const auto& [h, vh] : nu.w) r.add(mul(g, h), vg * vh);
  return r;
}

IdxMeasure convolve(const GroupTable& t, const IdxMeasure& mu, const IdxMeasure& nu) {
  IdxMeasure r;
  for (const auto& [g, vg] : mu.w)
    for (const auto& [h, vh] : nu.w) r.add(t.product(g, h), vg * vh);
  return r;
}

HeisMeasure star(const HeisMeasure& mu) {
  HeisMeasure r;
  for (const auto& [g, v] : mu.w) r.add(heis_inv(g), v);
  return r;
}

IdxMeasure star(const GroupTable& t, const IdxMeasure& mu) {
  IdxMeasure r;
  for (const auto& [g, v] : mu.w) r.add(t.inverse(g), v);
  return r;
}

// averaging families -------------------------------------------------------

HeisWord letter_word(Letter l, const Int& e) {
  switch (l) {
    case Letter::X: return HeisWord{e, 0, 0};
    case Letter::Y: return HeisWord{0, e, 0};
    default: return HeisWord{0, 0, e};
  }
}

HeisMeasure heis_basic(Letter l, unsigned k) {
  HeisMeasure r;
  r.add(heis_id(), Rat(1, 2));
  r.add(letter_word(l, pow2(k)), Rat(1, 2));
  return r;
}

HeisMeasure heis_uniform(Letter l, unsigned d) {
  if (d == 0) return dirac(heis_id());
  if (d > 24) throw CapacityError("heis_uniform: 2^d support too large to materialize");
  HeisMeasure r;
  Int count = pow2(d);
  Rat weight(1, count);
  for (Int a = 0; a < count; ++a) r.w.emplace(letter_word(l, a), weight);
  return r;
}

HeisMeasure z_difference_identity(const Int& m, unsigned d) {
  if (m < 1 || m > pow2(d)) throw ValidationError("z_difference_identity: need 1 <= m <= 2^d");
  HeisMeasure nu;
  nu.add(heis_id(), 1);
  nu.add(letter_word(Letter::Z, m), -1);
  HeisMeasure conv = convolve(nu, heis_uniform(Letter::Z, d));

  // two-block closed form: 2^{-d} (sum_{0<=k<m} z^k - sum_{2^d<=k<2^d+m} z^k)
  HeisMeasure closed;
  Int base = pow2(d);
  Rat weight(1, base);
  for (Int k = 0; k < m; ++k) {
    closed.w.emplace(letter_word(Letter::Z, k), weight);
    closed.add(letter_word(Letter::Z, base + k), -weight);
  }
  if (!(conv == closed))
    throw ValidationError("z_difference_identity: convolution disagrees with the closed form");
  if (conv.l1_norm() != Rat(2 * m, base))
    throw ValidationError("z_difference_identity: l1 norm is not 2m/2^d");
  return conv;
}

// SL3 side -----------------------------------------------------------------

SL3Measure sl3_elementary_uniform(int i, int k, unsigned d, uint64_t cap) {
  if (d >= 63 || (uint64_t(1) << d) > cap)
    throw CapacityError("sl3_elementary_uniform: 2^d exceeds the materialization cap");
  SL3Measure r;
  Int count = pow2(d);
  Rat weight(1, count);
  for (Int a = 0; a < count; ++a) r.w.emplace(elementary(i, k, a), weight);
  return r;
}

FactoredSL3 build_td(unsigned d) {
  if (d == 0) throw ValidationError("build_td: d must be >= 1");
  return FactoredSL3{{ElemFactor{1, 2, 4 * d}, ElemFactor{1, 3, 10 * d}, ElemFactor{2, 3, 9 * d},
                      ElemFactor{2, 1, 9 * d}, ElemFactor{3, 1, 10 * d},
                      ElemFactor{3, 2, 4 * d}}};
}

FactoredSL3 build_sd(unsigned d) {
  if (d == 0) throw ValidationError("build_sd: d must be >= 1");
  return FactoredSL3{{ElemFactor{2, 3, 4 * d}, ElemFactor{1, 3, 10 * d}, ElemFactor{1, 2, 9 * d},
                      ElemFactor{3, 2, 9 * d}, ElemFactor{3, 1, 10 * d},
                      ElemFactor{2, 1, 4 * d}}};
}

FactoredSL3 build_hd(unsigned d) { return (d % 2 == 1) ? build_td(d) : build_sd(d); }

SL3Measure materialize(const ElemFactor& f, uint64_t cap) {
  return sl3_elementary_uniform(f.i, f.k, f.log2count, cap);
}

// pushforwards -------------------------------------------------------------

IdxMeasure pushforward(const GroupTable& t, const ElemFactor& f) {
  // residue counts of [0, 2^log2count) mod m, exactly
  uint32_t m = t.modulus();
  Int total = pow2(f.log2count);
  Int q = total / m;
  Int rem = total % m;  // residues 0..rem-1 get one extra
  IdxMeasure r;
  for (uint32_t rr = 0; rr < m; ++rr) {
    Int count = q + (Int(rr) < rem ? 1 : 0);
    if (count == 0) continue;
    uint32_t idx = t.index_of(elementary_mod(f.i, f.k, int64_t(rr), m));
    r.add(idx, Rat(count, total));
  }
  return r;
}

std::vector<IdxMeasure> pushforward(const GroupTable& t, const FactoredSL3& f) {
  std::vector<IdxMeasure> out;
  out.reserve(f.factors.size());
  for (const auto& fac : f.factors) out.push_back(pushforward(t, fac));
  return out;
}

IdxMeasure pushforward(const GroupTable& t, const SL3Measure& mu) {
  IdxMeasure r;
  for (const auto& [g, v] : mu.w) r.add(t.index_of(reduce_mod(g, t.modulus())), v);
  return r;
}

IdxMeasure pushforward(const GroupTable& heis_table, const HeisMeasure& mu) {
  IdxMeasure r;
  uint32_t m = heis_table.modulus();
  for (const auto& [g, v] : mu.w)
    r.add(heis_table.index_of(reduce_mod(heis_embed(g, 1, 2, 3), m)), v);
  return r;
}

IdxMeasure uniform_on(const std::vector<uint32_t>& members) {
  if (members.empty()) throw ValidationError("uniform_on: empty set");
  IdxMeasure r;
  Rat weight(1, Int(members.size()));
  for (uint32_t g : members) r.add(g, weight);
  return r;
}

// serialization ------------------------------------------------------------

namespace {

void write_rat(std::ostream& os, const Rat& v) {
  os << numerator(v) << "/" << denominator(v);
}

Rat read_rat(const std::string& tok) {
  auto slash = tok.find('/');
  if (slash == std::string::npos) throw ValidationError("measure load: weight not num/den");
  Int num(tok.substr(0, slash));
  Int den(tok.substr(slash + 1));
  if (den == 0) throw ValidationError("measure load: zero denominator");
  return Rat(num, den);
}

}  // namespace

void save_measure(std::ostream& os, const HeisMeasure& mu) {
  os << "tlab-heis-measure 1 " << mu.w.size() << "\n";
  for (const auto& [g, v] : mu.w) {
    os << g.a << " " << g.b << " " << g.c << " : ";
    write_rat(os, v);
    os << "\n";
  }
}

void save_measure(std::ostream& os, const IdxMeasure& mu) {
  os << "tlab-idx-measure 1 " << mu.w.size() << "\n";
  for (const auto& [g, v] : mu.w) {
    os << g << " : ";
    write_rat(os, v);
    os << "\n";
  }
}

HeisMeasure load_heis_measure(std::istream& is) {
  std::string tag;
  int version = 0;
  size_t n = 0;
  is >> tag >> version >> n;
  if (!is || tag != "tlab-heis-measure" || version != 1)
    throw ValidationError("load_heis_measure: bad header");
  HeisMeasure r;
  for (size_t i = 0; i < n; ++i) {
    std::string a, b, c, colon, weight;
    is >> a >> b >> c >> colon >> weight;
    if (!is || colon != ":") throw ValidationError("load_heis_measure: bad row");
    r.add(HeisWord{Int(a), Int(b), Int(c)}, read_rat(weight));
  }
  return r;
}

IdxMeasure load_idx_measure(std::istream& is) {
  std::string tag;
  int version = 0;
  size_t n = 0;
  is >> tag >> version >> n;
  if (!is || tag != "tlab-idx-measure" || version != 1)
    throw ValidationError("load_idx_measure: bad header");
  IdxMeasure r;
  for (size_t i = 0; i < n; ++i) {
    uint32_t g = 0;
    std::string colon, weight;
    is >> g >> colon >> weight;
    if (!is || colon != ":") throw ValidationError("load_idx_measure: bad row");
    r.add(g, read_rat(weight));
  }
  return r;
}

}  // namespace tlab
