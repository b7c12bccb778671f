#include "tlab/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace tlab {

namespace {

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double now_s() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::vector<CompiledMeasure> compile_chain(const GroupTable& t,
                                           const std::vector<IdxMeasure>& chain) {
  std::vector<CompiledMeasure> out;
  out.reserve(chain.size());
  for (const auto& f : chain) out.push_back(compile_measure(t, f));
  return out;
}

}  // namespace

IdxMeasure convolve_chain(const GroupTable& t, const std::vector<IdxMeasure>& chain) {
  IdxMeasure acc = dirac_idx(t.identity());
  for (const auto& f : chain) acc = convolve(t, acc, f);
  return acc;
}

std::vector<ExperimentRow> cauchy_decay(uint32_t m, unsigned d_max, double p,
                                        const NormOptions& opt) {
  GroupTable t = enumerate_sl3(m);
  RegularRepSpace sp{&t, 1};
  std::vector<std::vector<IdxMeasure>> pushed(d_max + 2);
  std::vector<IdxMeasure> total(d_max + 2);
  for (unsigned d = 1; d <= d_max + 1; ++d) {
    pushed[d] = pushforward(t, build_hd(d));
    total[d] = convolve_chain(t, pushed[d]);
  }
  std::vector<ExperimentRow> rows;
  for (unsigned d = 1; d <= d_max; ++d) {
    const double t0 = now_s();
    IdxMeasure diff = difference(total[d + 1], total[d]);
    const double l1 = to_double(diff.l1_norm());
    OpHandle hi = make_op(sp, compile_chain(t, pushed[d + 1]));
    OpHandle lo = make_op(sp, compile_chain(t, pushed[d]));
    LinOp a = lin_difference(lin_from_handle(hi), lin_from_handle(lo));
    NormEstimate est = operator_norm(a, p, opt, l1, l1);
    ExperimentRow r;
    r.m = m;
    r.p = p;
    r.d = d;
    r.quantity = "cauchy-decay;l1=" + fmt_g(l1);
    r.lower = est.lower;
    r.upper = est.upper;
    r.certified = est.upper_certified;
    r.method = est.method;
    r.iterations = est.iterations;
    r.residual = est.residual;
    r.seconds = now_s() - t0;
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<ExperimentRow> projection_defect(uint32_t m, const std::vector<double>& ps,
                                             unsigned d_exact_max,
                                             const NormOptions& opt) {
  GroupTable t = enumerate_sl3(m);
  RegularRepSpace sp{&t, 1};
  const ModMat3 g12 = elementary_mod(1, 2, 1, m);
  const ModMat3 g13 = elementary_mod(1, 3, 1, m);
  const ModMat3 g23 = elementary_mod(2, 3, 1, m);
  const IdxMeasure u12 = uniform_on(subgroup_image(t, {g12}));
  const IdxMeasure u13 = uniform_on(subgroup_image(t, {g13}));
  const IdxMeasure u23 = uniform_on(subgroup_image(t, {g23}));
  const IdxMeasure uut = invariant_projector(t, subgroup_image(t, {g12, g23}));
  const IdxMeasure defect = difference(dirac_idx(t.identity()), uut);

  std::vector<IdxMeasure> chain = {defect, u12, u13, u23};
  const Rat exact_l1 = convolve_chain(t, chain).l1_norm();
  const double l1 = to_double(exact_l1);

  std::vector<ExperimentRow> rows;
  OpHandle op = make_op(sp, compile_chain(t, chain));
  LinOp a = lin_from_handle(op);
  for (double p : ps) {
    const double t0 = now_s();
    NormEstimate est = operator_norm(a, p, opt, l1, l1);
    ExperimentRow r;
    r.m = m;
    r.p = p;
    r.d = 0;
    r.quantity = "projection-defect;l1=" + fmt_g(l1);
    r.lower = est.lower;
    r.upper = est.upper;
    r.certified = est.upper_certified;
    r.method = est.method;
    r.iterations = est.iterations;
    r.residual = est.residual;
    r.seconds = now_s() - t0;
    rows.push_back(std::move(r));
  }

  for (unsigned d = 1; d <= d_exact_max; ++d) {
    const double t0 = now_s();
    std::vector<IdxMeasure> fd = {defect, pushforward(t, ElemFactor{1, 2, d}),
                                  pushforward(t, ElemFactor{1, 3, d}),
                                  pushforward(t, ElemFactor{2, 3, d})};
    const double v = to_double(convolve_chain(t, fd).l1_norm());
    ExperimentRow r;
    r.m = m;
    r.p = 1.0;
    r.d = d;
    r.quantity = "projection-l1-decay";
    r.lower = v;
    r.upper = v;
    r.certified = true;
    r.method = "exact-l1";
    r.iterations = 1;
    r.seconds = now_s() - t0;
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<ExperimentRow> change_of_order(const std::vector<uint32_t>& quotients,
                                           unsigned d3_max) {
  std::vector<ExperimentRow> rows;
  std::vector<GroupTable> tables;
  tables.reserve(quotients.size());
  for (uint32_t m : quotients) tables.push_back(enumerate_heisenberg(m));

  for (unsigned d3 = 2; d3 <= d3_max; ++d3) {
    for (unsigned d1 = 0; d1 + 2 <= d3; ++d1) {
      for (unsigned d2 = 0; d1 + d2 + 2 <= d3; ++d2) {
        const double t0 = now_s();
        HeisMeasure x = convolve(
            convolve(heis_uniform(Letter::X, d1), heis_uniform(Letter::Z, d3)),
            heis_uniform(Letter::Y, d2));
        HeisMeasure y = convolve(
            convolve(heis_uniform(Letter::Y, d2), heis_uniform(Letter::Z, d3)),
            heis_uniform(Letter::X, d1));
        HeisMeasure diff = difference(x, y);
        const Rat l1 = diff.l1_norm();
        const Rat closed =
            Rat((pow2(d1) - 1) * (pow2(d2) - 1), pow2(d3 + 1));
        const Rat bound = Rat(Int(8), pow2(d3 - d1 - d2));
        std::ostringstream ex;
        ex << "change-of-order;d1=" << d1 << ";d2=" << d2
           << ";bound=" << fmt_g(to_double(bound))
           << ";closed_match=" << (l1 == closed ? 1 : 0)
           << ";within=" << (l1 <= bound ? 1 : 0);
        ExperimentRow r;
        r.m = 0;
        r.p = 1.0;
        r.d = d3;
        r.quantity = ex.str();
        r.lower = r.upper = to_double(l1);
        r.certified = true;
        r.method = "exact-l1";
        r.iterations = 1;
        r.seconds = now_s() - t0;
        rows.push_back(std::move(r));

        for (size_t qi = 0; qi < quotients.size(); ++qi) {
          const double q0 = now_s();
          const GroupTable& ht = tables[qi];
          IdxMeasure px = pushforward(ht, x);
          IdxMeasure py = pushforward(ht, y);
          const Rat ql1 = difference(px, py).l1_norm();
          std::ostringstream qx;
          qx << "change-of-order;d1=" << d1 << ";d2=" << d2
             << ";bound=" << fmt_g(to_double(bound))
             << ";within=" << (ql1 <= bound ? 1 : 0);
          ExperimentRow qr;
          qr.m = quotients[qi];
          qr.p = 1.0;
          qr.d = d3;
          qr.quantity = qx.str();
          qr.lower = qr.upper = to_double(ql1);
          qr.certified = true;
          qr.method = "exact-l1";
          qr.iterations = 1;
          qr.seconds = now_s() - q0;
          rows.push_back(std::move(qr));
        }
      }
    }
  }
  return rows;
}

std::vector<ExperimentRow> heis_contraction(const std::vector<uint32_t>& ms,
                                            double threshold,
                                            const NormOptions& opt) {
  if (!(threshold > 0 && threshold < 1))
    throw ValidationError("heis_contraction: threshold must be in (0,1)");
  std::vector<ExperimentRow> rows;
  for (uint32_t m : ms) {
    if (uint64_t(m) * m * m > 512)
      throw CapacityError("heis_contraction: quotient too large for dense solve");
    const double t0 = now_s();
    GroupTable t = enumerate_heisenberg(m);
    RegularRepSpace sp{&t, 1};
    const uint32_t e = t.identity();
    const uint32_t gx = t.index_of(elementary_mod(1, 2, 1, m));
    const uint32_t gy = t.index_of(elementary_mod(2, 3, 1, m));
    const uint32_t gz = t.index_of(elementary_mod(1, 3, 1, m));

    IdxMeasure za = difference(dirac_idx(e), dirac_idx(gz));
    IdxMeasure xyavg;
    xyavg.add(gx, Rat(1, 4));
    xyavg.add(t.inverse(gx), Rat(1, 4));
    xyavg.add(gy, Rat(1, 4));
    xyavg.add(t.inverse(gy), Rat(1, 4));
    IdxMeasure xydef = difference(dirac_idx(e), xyavg);

    OpHandle aop = make_op(sp, {compile_measure(t, za)});
    OpHandle bop = make_op(sp, {compile_measure(t, xydef)});
    Eigen::MatrixXd am = materialize_dense(lin_from_handle(aop));
    Eigen::MatrixXd bm = materialize_dense(lin_from_handle(bop));
    const Eigen::Index n = am.rows();
    Eigen::MatrixXd ata = am.transpose() * am;
    Eigen::MatrixXd btb = bm.transpose() * bm;
    Eigen::MatrixXd slack =
        threshold * threshold * Eigen::MatrixXd::Identity(n, n) - btb;

    auto top = [&](double mu, Eigen::VectorXd* vec) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ata + mu * slack);
      if (vec) *vec = es.eigenvectors().col(n - 1);
      return es.eigenvalues()(n - 1);
    };

    // bracket the convex minimum, then golden-section
    double hi = 1.0;
    while (hi < 1e7 && top(2 * hi, nullptr) <= top(hi, nullptr)) hi *= 2;
    hi *= 2;
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = 0.0, b = hi;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double fc = top(c, nullptr), fd = top(d, nullptr);
    int iters = 2;
    while (b - a > 1e-10 * std::max(1.0, b) && iters < 400) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - phi * (b - a);
        fc = top(c, nullptr);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + phi * (b - a);
        fd = top(d, nullptr);
      }
      ++iters;
    }
    const double mu_star = (a + b) / 2;
    Eigen::VectorXd v;
    const double gmin = top(mu_star, &v);
    const double upper = std::sqrt(std::max(gmin, 0.0));
    const double aval = (am * v).norm();
    const double bval = (bm * v).norm();
    const double lower = bval <= threshold + 1e-9 ? aval : 0.0;

    ExperimentRow r;
    r.m = m;
    r.p = 2.0;
    r.d = 0;
    std::ostringstream ex;
    ex << "heis-contraction;threshold=" << fmt_g(threshold)
       << ";mu=" << fmt_g(mu_star) << ";witness_b=" << fmt_g(bval);
    r.quantity = ex.str();
    r.lower = lower;
    r.upper = upper;
    r.certified = true;
    r.method = "s-lemma";
    r.iterations = iters;
    r.residual = std::fabs(upper - lower);
    r.seconds = now_s() - t0;
    rows.push_back(std::move(r));
    (void)opt;
  }
  return rows;
}

}  // namespace tlab
