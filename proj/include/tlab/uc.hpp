#pragma once

// Uniform convexity bookkeeping and a falsification search for the
// two-commuting-averages contraction bound. For a space with modulus
// delta, the composed average A_U A_V of two commuting isometries should
// contract any vector that U V moves by a relative eps down to
//   r0(eps) = max{ 1 - delta(delta(eps))/2 , 1 - delta(eps)/4 }.
// The search samples commuting isometry pairs and test vectors, measures
// the actual contraction, and hunts for counterexamples by local ascent.

#include <cstddef>
#include <cstdint>

namespace tlab {

enum class ModulusKind { Hilbert, LpGeq2 };

struct ModulusSpec {
  ModulusKind kind = ModulusKind::Hilbert;
  double p = 2.0;  // used only for LpGeq2, requires p >= 2
};

// delta(eps) on [0,2]: 1 - sqrt(1 - eps^2/4) for Hilbert,
// 1 - (1 - (eps/2)^p)^{1/p} for l^p with p >= 2.
double uc_delta(const ModulusSpec& spec, double eps);

struct UcConstants {
  double delta_eps = 0.0;
  double delta_delta_eps = 0.0;
  double r0 = 1.0;
};

UcConstants uc_constants(const ModulusSpec& spec, double eps);

struct UcSearchOptions {
  size_t samples = 100000;
  int dim = 16;  // even: rotation planes pair coordinates
  uint64_t seed = 0x0c0ffee5ULL;
  double eps_floor = 1e-3;  // ignore near-fixed vectors
  int ascent_seeds = 10;
  int ascent_rounds = 200;
};

struct UcSearchReport {
  size_t samples = 0;     // candidates drawn
  size_t tested = 0;      // candidates with eps >= eps_floor
  size_t violations = 0;  // margin below -1e-10
  double worst_margin = 1.0;  // min over tested of r0(eps) - ratio
  double worst_eps = 0.0;
  double worst_ratio = 0.0;
  double worst_r0 = 1.0;
};

UcSearchReport commuting_contraction_search(const ModulusSpec& spec,
                                            const UcSearchOptions& opt = {});

}  // namespace tlab
