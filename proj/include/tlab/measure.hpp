#pragma once

// Finitely supported rational measures with exact convolution, on the
// integer Heisenberg group, on SL3(Z), and on finite table groups.

#include <iosfwd>
#include <map>
#include <vector>

#include "tlab/group_table.hpp"
#include "tlab/heis.hpp"

namespace tlab {

constexpr uint64_t kDefaultMaterializeCap = 1000000;

template <class Elem, class Less>
struct BasicMeasure {
  std::map<Elem, Rat, Less> w;  // ordered: iteration and serialization are deterministic

  void add(const Elem& g, const Rat& v) {
    auto [it, fresh] = w.emplace(g, v);
    if (!fresh) {
      it->second += v;
      if (it->second == 0) w.erase(it);
    } else if (it->second == 0) {
      w.erase(it);
    }
  }
  Rat l1_norm() const {
    Rat s = 0;
    for (const auto& [g, v] : w) s += v < 0 ? -v : v;
    return s;
  }
  Rat total_mass() const {
    Rat s = 0;
    for (const auto& [g, v] : w) s += v;
    return s;
  }
  size_t support_size() const { return w.size(); }
  bool operator==(const BasicMeasure& o) const { return w == o.w; }
};

struct HeisLess {
  bool operator()(const HeisWord& u, const HeisWord& v) const { return heis_less(u, v); }
};
struct Mat3Less {
  bool operator()(const Mat3& u, const Mat3& v) const { return mat3_less(u, v); }
};

using HeisMeasure = BasicMeasure<HeisWord, HeisLess>;
using SL3Measure = BasicMeasure<Mat3, Mat3Less>;
using IdxMeasure = BasicMeasure<uint32_t, std::less<uint32_t>>;

HeisMeasure dirac(const HeisWord& g);
SL3Measure dirac(const Mat3& g);
IdxMeasure dirac_idx(uint32_t g);

HeisMeasure convolve(const HeisMeasure& mu, const HeisMeasure& nu);
SL3Measure convolve(const SL3Measure& mu, const SL3Measure& nu);
IdxMeasure convolve(const GroupTable& t, const IdxMeasure& mu, const IdxMeasure& nu);

// mu*(g) = mu(g^{-1})
HeisMeasure star(const HeisMeasure& mu);
IdxMeasure star(const GroupTable& t, const IdxMeasure& mu);

template <class M>
M scaled(const M& mu, const Rat& c) {
  M r;
  if (c == 0) return r;
  for (const auto& [g, v] : mu.w) r.w.emplace(g, v * c);
  return r;
}

template <class M>
M sum(const M& mu, const M& nu) {
  M r = mu;
  for (const auto& [g, v] : nu.w) r.add(g, v);
  return r;
}

template <class M>
M difference(const M& mu, const M& nu) {
  M r = mu;
  for (const auto& [g, v] : nu.w) r.add(g, -v);
  return r;
}

// averaging families on the Heisenberg letters -----------------------------

enum class Letter { X, Y, Z };

HeisWord letter_word(Letter l, const Int& e);  // x^e / y^e / z^e

// (delta_e + delta_{letter^{2^k}}) / 2
HeisMeasure heis_basic(Letter l, unsigned k);

// 2^{-d} sum_{a < 2^d} delta_{letter^a}; d = 0 gives delta_e
HeisMeasure heis_uniform(Letter l, unsigned d);

// (delta_e - delta_{z^m}) * Z^d by plain convolution, with the telescoped
// two-block closed form and the l1 norm 2m/2^d asserted before returning.
// Requires 1 <= m <= 2^d.
HeisMeasure z_difference_identity(const Int& m, unsigned d);

// SL3 side -----------------------------------------------------------------

// 2^{-d} sum_{a < 2^d} delta_{e_{i,k}(a)}; guarded materialization.
SL3Measure sl3_elementary_uniform(int i, int k, unsigned d,
                                  uint64_t cap = kDefaultMaterializeCap);

// A factored product of elementary uniforms, kept symbolic: one factor is
// uniform on {e_{i,k}(a) : 0 <= a < 2^{log2count}} and is never materialized
// implicitly (T_d factors reach 2^{4d} points).
struct ElemFactor {
  int i = 0, k = 0;
  unsigned log2count = 0;
};

struct FactoredSL3 {
  std::vector<ElemFactor> factors;
};

FactoredSL3 build_td(unsigned d);
FactoredSL3 build_sd(unsigned d);
FactoredSL3 build_hd(unsigned d);  // T_d for odd d, S_d for even d

// guarded explicit materialization of one factor
SL3Measure materialize(const ElemFactor& f, uint64_t cap = kDefaultMaterializeCap);

// pushforwards -------------------------------------------------------------

// exact residue counts of {0, ..., 2^log2count - 1} mod m on e_{i,k}(r)
IdxMeasure pushforward(const GroupTable& t, const ElemFactor& f);
std::vector<IdxMeasure> pushforward(const GroupTable& t, const FactoredSL3& f);
IdxMeasure pushforward(const GroupTable& t, const SL3Measure& mu);
// Heisenberg words into the unitriangular table (entries mod m)
IdxMeasure pushforward(const GroupTable& heis_table, const HeisMeasure& mu);

// exactly-uniform measure on a sorted index set (subgroup image, limits)
IdxMeasure uniform_on(const std::vector<uint32_t>& members);

// serialization: "<elem tokens> : <num>/<den>" per line, deterministic order
void save_measure(std::ostream& os, const HeisMeasure& mu);
void save_measure(std::ostream& os, const IdxMeasure& mu);
HeisMeasure load_heis_measure(std::istream& is);
IdxMeasure load_idx_measure(std::istream& is);

// dense exact-integer convolution sweep for the z-difference identity:
// for every d <= maxlog and every 1 <= m <= 2^d, convolve (delta_0 - delta_m)
// with the uniform numerator array of Z^d and compare against the two-block
// closed form and the l1 value 2m (numerators over the common denominator
// 2^d). Returns the number of (m, d) pairs checked; all_ok reports equality.
struct ZSweepReport {
  uint64_t pairs = 0;
  bool all_ok = true;
  std::string first_failure;
};

ZSweepReport z_difference_sweep_serial(unsigned maxlog);
ZSweepReport z_difference_sweep_omp(unsigned maxlog);

}  // namespace tlab
