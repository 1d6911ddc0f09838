#include "mbpoly/recurrence.hpp"

#include <cmath>
#include <limits>

namespace mbpoly {

namespace {

constexpr double kRenormHi = 10.0;  // ln units: keep ||m|| in [1, e^10)

double overflow_guard(int N) { return 700.0 * N; }

void renorm_jet(std::vector<CMatrix>& m, double& e) {
  double mx = 0.0;
  for (const auto& d : m) mx = std::max(mx, d.norm());
  if (mx == 0.0) {
    e = 0.0;
    return;
  }
  const double f = std::log(mx);
  if (f >= kRenormHi || f < 0.0) {
    const double s = std::exp(-f);
    for (auto& d : m) d *= s;
    e += f;
  }
}

// Renormalizes the pair (prev, cur) with one shared exponent, keyed to cur's scale.
void renorm_pair(std::vector<CMatrix>& prev, std::vector<CMatrix>& cur, double& e) {
  double mx = 0.0;
  for (const auto& d : cur) mx = std::max(mx, d.norm());
  if (mx == 0.0) return;
  const double f = std::log(mx);
  if (f >= kRenormHi || f < 0.0) {
    const double s = std::exp(-f);
    for (auto& d : cur) d *= s;
    for (auto& d : prev) d *= s;
    e += f;
  }
}

CMatrix inv_or_throw(const CMatrix& a, Errc code, const char* msg) {
  try {
    return mat_inv(a);
  } catch (const Error&) {
    throw Error(code, msg);
  }
}

}  // namespace

double ScaledValue::log_norm() const {
  const double n = m.norm();
  if (n == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(n) + e;
}

ScaledValue renormalize(ScaledValue v) {
  std::vector<CMatrix> j{v.m};
  renorm_jet(j, v.e);
  v.m = j[0];
  return v;
}

ScaledJet eval_jet(const CoefficientFamily& family,
                   const std::optional<ScalingSequence>& scaling, int k, Side side,
                   bool associate, int order, int n, Complex z) {
  if (order < 0 || order > 3)
    throw Error(Errc::out_of_range, "eval: derivative order must be 0..3");
  if (n < 0) throw Error(Errc::out_of_range, "eval: negative degree");
  const int N = family.dim();
  const CMatrix I = CMatrix::Identity(N, N);
  const bool scaled = scaling.has_value();
  const CMatrix D = scaled ? scaling->at(k).D : I;
  const int shift = associate ? 1 : 0;

  // cur = jet of P_m, prev = jet of P_{m-1}; shared exponent e.
  std::vector<CMatrix> prev(order + 1, CMatrix::Zero(N, N));
  std::vector<CMatrix> cur(order + 1, CMatrix::Zero(N, N));
  if (associate) {
    if (side == Side::left) {
      cur[0] = inv_or_throw(family.coeffs(0).A, Errc::singular_coefficient,
                            "eval: A_0 singular (associate start)");
    } else {
      cur[0] = inv_or_throw(family.coeffs(1).C, Errc::singular_coefficient,
                            "eval: C_1 singular (associate start)");
    }
  } else {
    cur[0] = I;
  }
  double e = 0.0;

  for (int m = 0; m < n; ++m) {
    std::vector<CMatrix> nxt(order + 1);
    if (side == Side::left) {
      const Triple t = family.coeffs(m + shift);
      // A V_{m+1}^{(j)} = D (z V_m^{(j)} + j V_m^{(j-1)}) - B V_m^{(j)} - C V_{m-1}^{(j)}
      for (int j = 0; j <= order; ++j) {
        CMatrix rhs = z * (D * cur[j]) - t.B * cur[j] - t.C * prev[j];
        if (j > 0) rhs += static_cast<double>(j) * (D * cur[j - 1]);
        try {
          nxt[j] = solve(t.A, rhs);
        } catch (const Error&) {
          throw Error(Errc::singular_coefficient, "eval: singular A_n in left recursion");
        }
      }
    } else {
      const Triple tb = family.coeffs(m + shift);
      const Triple tc = family.coeffs(m + 1 + shift);
      const CMatrix Cinv = inv_or_throw(tc.C, Errc::singular_coefficient,
                                        "eval: singular C_{n+1} in right recursion");
      const CMatrix Aprev =
          (m + shift >= 1) ? family.coeffs(m - 1 + shift).A : CMatrix::Zero(N, N);
      // G_{m+1}^{(j)} = [z G_m^{(j)} D + j G_m^{(j-1)} D - G_{m-1}^{(j)} A_{m-1} - G_m^{(j)} B_m] C_{m+1}^{-1}
      for (int j = 0; j <= order; ++j) {
        CMatrix rhs = z * (cur[j] * D) - cur[j] * tb.B - prev[j] * Aprev;
        if (j > 0) rhs += static_cast<double>(j) * (cur[j - 1] * D);
        nxt[j] = rhs * Cinv;
      }
    }
    prev = std::move(cur);
    cur = std::move(nxt);
    renorm_pair(prev, cur, e);
    if (std::abs(e) > overflow_guard(N))
      throw Error(Errc::overflow, "eval: scale exponent beyond guard");
  }
  ScaledJet out;
  out.m = std::move(cur);
  out.e = e;
  return out;
}

std::vector<ScaledValue> eval(const EvalRequest& req) {
  if (req.derivative_order < 0 || req.derivative_order > 2)
    throw Error(Errc::out_of_range, "eval: derivative_order must be 0..2");
  ScaledJet j = eval_jet(req.family, req.scaling, req.k, req.side, req.associate,
                         req.derivative_order, req.n, req.z);
  std::vector<ScaledValue> out;
  out.reserve(j.m.size());
  for (auto& d : j.m) out.push_back(ScaledValue{std::move(d), j.e});
  return out;
}

std::vector<CMatrix> ratio_iterate(const CoefficientFamily& family,
                                   const std::optional<ScalingSequence>& scaling, Side side,
                                   int k, int n_max, Complex z) {
  if (n_max < 1) throw Error(Errc::out_of_range, "ratio_iterate: n_max must be >= 1");
  const int N = family.dim();
  const CMatrix I = CMatrix::Identity(N, N);
  const CMatrix D = scaling ? scaling->at(k).D : I;
  std::vector<CMatrix> out;
  out.reserve(static_cast<size_t>(n_max));
  CMatrix K;
  if (side == Side::left) {
    // K_1 = (A_0^{-1}(z D - B_0))^{-1}
    const Triple t0 = family.coeffs(0);
    CMatrix M;
    try {
      M = solve(t0.A, z * D - t0.B);
      K = mat_inv(M);
    } catch (const Error&) {
      throw Error(Errc::singular_iterate, "ratio_iterate: singular start (z too close to a zero?)");
    }
    out.push_back(K);
    for (int m = 1; m < n_max; ++m) {
      const Triple t = family.coeffs(m);
      try {
        K = mat_inv(solve(t.A, z * D - t.B - t.C * K));
      } catch (const Error&) {
        throw Error(Errc::singular_iterate,
                    "ratio_iterate: singular iterate at m=" + std::to_string(m));
      }
      out.push_back(K);
    }
  } else {
    // K~_1 = C_1 (z D - B_0)^{-1}
    const Triple t0 = family.coeffs(0);
    const CMatrix C1 = family.coeffs(1).C;
    try {
      K = C1 * mat_inv(z * D - t0.B);
    } catch (const Error&) {
      throw Error(Errc::singular_iterate, "ratio_iterate: singular start (right)");
    }
    out.push_back(K);
    for (int m = 1; m < n_max; ++m) {
      const CMatrix& Aprev = family.coeffs(m - 1).A;
      const CMatrix& B = family.coeffs(m).B;
      const CMatrix& Cn1 = family.coeffs(m + 1).C;
      try {
        K = Cn1 * mat_inv(z * D - B - K * Aprev);
      } catch (const Error&) {
        throw Error(Errc::singular_iterate,
                    "ratio_iterate: singular iterate at m=" + std::to_string(m));
      }
      out.push_back(K);
    }
  }
  return out;
}

CMatrix ratio_final(const CoefficientFamily& family,
                    const std::optional<ScalingSequence>& scaling, Side side, int k,
                    int n_max, Complex z) {
  if (n_max < 1) throw Error(Errc::out_of_range, "ratio_final: n_max must be >= 1");
  const int N = family.dim();
  const CMatrix I = CMatrix::Identity(N, N);
  const CMatrix D = scaling ? scaling->at(k).D : I;
  CMatrix K;
  if (side == Side::left) {
    const Triple t0 = family.coeffs(0);
    K = mat_inv(solve(t0.A, z * D - t0.B));
    for (int m = 1; m < n_max; ++m) {
      const Triple t = family.coeffs(m);
      try {
        K = mat_inv(solve(t.A, z * D - t.B - t.C * K));
      } catch (const Error&) {
        throw Error(Errc::singular_iterate,
                    "ratio_final: singular iterate at m=" + std::to_string(m));
      }
    }
  } else {
    const Triple t0 = family.coeffs(0);
    K = family.coeffs(1).C * mat_inv(z * D - t0.B);
    for (int m = 1; m < n_max; ++m) {
      try {
        K = family.coeffs(m + 1).C *
            mat_inv(z * D - family.coeffs(m).B - K * family.coeffs(m - 1).A);
      } catch (const Error&) {
        throw Error(Errc::singular_iterate,
                    "ratio_final: singular iterate at m=" + std::to_string(m));
      }
    }
  }
  return K;
}

std::vector<CMatrix> right_ratio_series(const CoefficientFamily& family, int n, int terms) {
  if (n < 1) throw Error(Errc::out_of_range, "right_ratio_series: n must be >= 1");
  if (terms < 1) throw Error(Errc::out_of_range, "right_ratio_series: terms must be >= 1");
  const int N = family.dim();
  const int L = terms;  // K[j] is the coefficient of x^{-(j+1)}, j = 0..L-1

  // K~_1 = C_1 (x I - B_0)^{-1} = C_1 sum_j B_0^j x^{-j-1}
  std::vector<CMatrix> K(L);
  {
    const CMatrix C1 = family.coeffs(1).C;
    const CMatrix B0 = family.coeffs(0).B;
    CMatrix P = CMatrix::Identity(N, N);
    for (int j = 0; j < L; ++j) {
      K[j] = C1 * P;
      P = P * B0;
    }
  }
  for (int m = 1; m < n; ++m) {
    const CMatrix& Aprev = family.coeffs(m - 1).A;
    const CMatrix& B = family.coeffs(m).B;
    const CMatrix& Cn1 = family.coeffs(m + 1).C;
    // E(x) = x I - B - K~(x) A = x (I - U(x)), U = B x^{-1} + sum_j (K_j A) x^{-j-2}
    std::vector<CMatrix> U(L + 1, CMatrix::Zero(N, N));
    U[1] = B;
    for (int j = 0; j + 2 <= L; ++j) U[j + 2] = K[j] * Aprev;
    // G = (I - U)^{-1} as a series: G = I + U G.
    std::vector<CMatrix> G(L + 1, CMatrix::Zero(N, N));
    G[0] = CMatrix::Identity(N, N);
    for (int j = 1; j <= L; ++j) {
      CMatrix s = CMatrix::Zero(N, N);
      for (int i = 1; i <= j; ++i) s += U[i] * G[j - i];
      G[j] = s;
    }
    // K~ = C_{m+1} x^{-1} G: coefficient of x^{-(j+1)} is C_{m+1} G[j].
    for (int j = 0; j < L; ++j) K[j] = Cn1 * G[j];
  }
  return K;
}

}  // namespace mbpoly
