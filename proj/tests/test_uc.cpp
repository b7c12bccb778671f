#include <doctest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <vector>

#include "tlab/sl3.hpp"
#include "tlab/uc.hpp"

using namespace tlab;

namespace {

using big = boost::multiprecision::cpp_bin_float_50;

double ref_delta(ModulusKind kind, double p, double eps) {
  big e = eps;
  if (kind == ModulusKind::Hilbert) {
    big v = 1 - sqrt(1 - e * e / 4);
    return v.convert_to<double>();
  }
  big bp = p;
  big v = 1 - pow(1 - pow(e / 2, bp), 1 / bp);
  return v.convert_to<double>();
}

double ref_r0(ModulusKind kind, double p, double eps) {
  double de = ref_delta(kind, p, eps);
  double dde = ref_delta(kind, p, de);
  return std::max(1.0 - dde / 2.0, 1.0 - de / 4.0);
}

const std::vector<double> kGrid = {0.01, 0.05, 0.1, 0.25, 0.5, 0.75,
                                   1.0,  1.25, 1.5, 1.75, 1.9, 2.0};

}  // namespace

TEST_CASE("convexity modulus against a 50-digit reference") {
  for (double eps : kGrid) {
    CHECK(uc_delta({ModulusKind::Hilbert, 2.0}, eps) ==
          doctest::Approx(ref_delta(ModulusKind::Hilbert, 2.0, eps)).epsilon(1e-14));
    for (double p : {2.0, 2.5, 4.0})
      CHECK(uc_delta({ModulusKind::LpGeq2, p}, eps) ==
            doctest::Approx(ref_delta(ModulusKind::LpGeq2, p, eps)).epsilon(1e-13));
  }
}

TEST_CASE("modulus shape") {
  ModulusSpec h{ModulusKind::Hilbert, 2.0};
  CHECK(uc_delta(h, 0.0) == 0.0);
  CHECK(uc_delta(h, 2.0) == doctest::Approx(1.0));
  // p = 2 power form collapses to the Hilbert formula
  for (double eps : kGrid)
    CHECK(uc_delta({ModulusKind::LpGeq2, 2.0}, eps) ==
          doctest::Approx(uc_delta(h, eps)).epsilon(1e-15));
  // monotone, and flatter for larger p
  for (size_t i = 1; i < kGrid.size(); ++i) {
    CHECK(uc_delta(h, kGrid[i]) > uc_delta(h, kGrid[i - 1]));
    for (double p : {2.5, 4.0})
      CHECK(uc_delta({ModulusKind::LpGeq2, p}, kGrid[i]) <= uc_delta(h, kGrid[i]) + 1e-15);
  }
  CHECK_THROWS_AS(uc_delta(h, -0.1), ValidationError);
  CHECK_THROWS_AS(uc_delta(h, 2.1), ValidationError);
  CHECK_THROWS_AS(uc_delta({ModulusKind::LpGeq2, 1.5}, 1.0), ValidationError);
}

TEST_CASE("contraction target r0") {
  for (double eps : {0.01, 0.3, 1.0, 1.9}) {
    for (ModulusSpec spec : {ModulusSpec{ModulusKind::Hilbert, 2.0},
                             ModulusSpec{ModulusKind::LpGeq2, 3.0}}) {
      UcConstants c = uc_constants(spec, eps);
      CHECK(c.delta_eps == doctest::Approx(uc_delta(spec, eps)).epsilon(1e-15));
      CHECK(c.delta_delta_eps == doctest::Approx(uc_delta(spec, c.delta_eps)).epsilon(1e-13));
      CHECK(c.r0 == doctest::Approx(ref_r0(spec.kind, spec.p, eps)).epsilon(1e-13));
      CHECK(c.r0 >= 0.75);  // the quarter branch caps how far r0 can drop
      CHECK(c.r0 <= 1.0);
      // strictly below 1 once delta(delta(eps))/2 clears double resolution
      if (eps >= 0.3) CHECK(c.r0 < 1.0);
    }
  }
}

TEST_CASE("sampled search finds no contraction violations (hilbert)") {
  UcSearchOptions opt;
  opt.samples = 3000;
  opt.dim = 8;
  opt.ascent_seeds = 4;
  opt.ascent_rounds = 60;
  UcSearchReport rep = commuting_contraction_search({ModulusKind::Hilbert, 2.0}, opt);
  CHECK(rep.samples >= opt.samples);
  CHECK(rep.tested >= opt.samples / 2);
  CHECK(rep.violations == 0);
  CHECK(rep.worst_margin >= -1e-10);
  CHECK(rep.worst_eps >= opt.eps_floor);
  CHECK(rep.worst_ratio >= 0.0);
  CHECK(rep.worst_ratio <= rep.worst_r0 + 1e-10);
}

TEST_CASE("sampled search finds no contraction violations (l^p)") {
  UcSearchOptions opt;
  opt.samples = 1500;
  opt.dim = 8;
  opt.ascent_seeds = 3;
  opt.ascent_rounds = 40;
  for (double p : {2.5, 4.0}) {
    UcSearchReport rep = commuting_contraction_search({ModulusKind::LpGeq2, p}, opt);
    CHECK(rep.violations == 0);
    CHECK(rep.tested > 0);
    CHECK(rep.worst_margin >= -1e-10);
  }
}

TEST_CASE("search is deterministic for a fixed seed") {
  UcSearchOptions opt;
  opt.samples = 500;
  opt.dim = 6;
  opt.ascent_seeds = 2;
  opt.ascent_rounds = 20;
  UcSearchReport a = commuting_contraction_search({ModulusKind::Hilbert, 2.0}, opt);
  UcSearchReport b = commuting_contraction_search({ModulusKind::Hilbert, 2.0}, opt);
  CHECK(a.tested == b.tested);
  CHECK(a.worst_margin == b.worst_margin);
  CHECK(a.worst_eps == b.worst_eps);
  opt.seed += 1;
  UcSearchReport c = commuting_contraction_search({ModulusKind::Hilbert, 2.0}, opt);
  CHECK(c.violations == 0);  // different draw, same verdict
}
