#include "mbpoly/asymptotics.hpp"

#include <algorithm>
#include <cmath>

namespace mbpoly {

CMatrix left_ratio(const CoefficientFamily& family, const ScalingSequence& scaling, int n,
                   Complex z) {
  if (n < 1) throw Error(Errc::out_of_range, "left_ratio: n must be >= 1");
  const CMatrix Dh = scaling.at(n).D_half;
  CMatrix K = ratio_final(family, scaling, Side::left, n, n, z);
  const CMatrix Ainv = mat_inv(family.coeffs(n - 1).A);
  return Dh * K * Ainv * Dh;
}

CMatrix right_ratio(const CoefficientFamily& family, const ScalingSequence& scaling, int n,
                    Complex z) {
  if (n < 1) throw Error(Errc::out_of_range, "right_ratio: n must be >= 1");
  const CMatrix Dh = scaling.at(n).D_half;
  CMatrix K = ratio_final(family, scaling, Side::right, n, n, z);
  const CMatrix Cinv = mat_inv(family.coeffs(n).C);
  return Dh * Cinv * K * Dh;
}

namespace {

// Product of two scaled values; mantissa product with summed exponents.
ScaledValue sprod(const ScaledValue& a, const ScaledValue& b) {
  return renormalize(ScaledValue{a.m * b.m, a.e + b.e});
}

}  // namespace

LoResiduals lo_verify(const CoefficientFamily& family, int n, Complex z) {
  if (n < 0) throw Error(Errc::out_of_range, "lo_verify: n must be >= 0");
  const int N = family.dim();
  auto ev = [&](Side side, bool assoc, int deg) {
    if (deg < 0) return ScaledValue{CMatrix::Zero(N, N), 0.0};
    EvalRequest req(family);
    req.side = side;
    req.associate = assoc;
    req.n = deg;
    req.z = z;
    return eval(req)[0];
  };

  const ScaledValue Vn = ev(Side::left, false, n);
  const ScaledValue Vn1a = ev(Side::left, true, n - 1);
  const ScaledValue Vp1a = ev(Side::left, true, n + 1);
  const ScaledValue Gn = ev(Side::right, false, n);
  const ScaledValue Gp1 = ev(Side::right, false, n + 1);
  const ScaledValue Gna = ev(Side::right, true, n);
  const ScaledValue Gn1a = ev(Side::right, true, n - 1);

  const CMatrix Cinv = mat_inv(family.coeffs(n + 1).C);
  const CMatrix Ainv = mat_inv(family.coeffs(n).A);

  // All products are formed as scaled values and the difference is evaluated
  // on the common exponent of the largest operand.
  auto rel_diff = [&](const ScaledValue& p, const ScaledValue& q, const CMatrix* target) {
    double e0 = std::max(p.log_norm(), q.log_norm());
    if (!std::isfinite(e0)) e0 = 0.0;
    CMatrix pm = p.m * std::exp(p.e - e0);
    CMatrix qm = q.m * std::exp(q.e - e0);
    CMatrix tm = target ? CMatrix(*target * std::exp(-e0)) : CMatrix::Zero(N, N);
    const double denom = std::max({pm.norm(), qm.norm(), tm.norm(), 1e-300});
    return (pm - qm - tm).norm() / denom;
  };

  LoResiduals r;
  r.r0 = rel_diff(sprod(Vn, Gn1a), sprod(Vn1a, Gn), nullptr);
  r.r2 = rel_diff(sprod(Vn, Gna), sprod(Vn1a, Gp1), &Cinv);
  r.r1 = rel_diff(sprod(Vn, Gna), sprod(Vp1a, Gp1), &Ainv);
  return r;
}

double singular_residual(const LimitTriple& limits, const CMatrix& F, Complex z) {
  return markov_equation_residual(limits.A, limits.B, limits.C, F, z);
}

ConvergenceReport report(const CoefficientFamily& family, const ScalingSequence& scaling,
                         Complex z, const std::vector<int>& n_list) {
  if (n_list.empty()) throw Error(Errc::invalid_config, "report: empty n list");
  ConvergenceReport rep;
  rep.z = z;
  rep.limit_used = limits(family, scaling);
  std::vector<int> ns = n_list;
  std::sort(ns.begin(), ns.end());

  std::vector<CMatrix> Ls, Rs;
  for (int n : ns) {
    Ls.push_back(left_ratio(family, scaling, n, z));
    Rs.push_back(right_ratio(family, scaling, n, z));
  }

  rep.F_from_fixed_point = !(rep.limit_used.singular_A || rep.limit_used.singular_C);
  if (rep.F_from_fixed_point) {
    MarkovValue mv =
        markov_fixed_point(rep.limit_used.A, rep.limit_used.B, rep.limit_used.C, z);
    rep.F_reference = mv.F;
  } else {
    rep.F_reference = Ls.back();
  }

  for (size_t i = 0; i < ns.size(); ++i) {
    ConvergenceRow row;
    row.n = ns[i];
    row.L_error = (Ls[i] - rep.F_reference).norm();
    row.R_error = (Rs[i] - rep.F_reference).norm();
    row.LR_gap = (Ls[i] - Rs[i]).norm();
    row.eq_residual = singular_residual(rep.limit_used, Ls[i], z);
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace mbpoly
