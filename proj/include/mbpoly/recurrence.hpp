#pragma once

#include <optional>
#include <vector>

#include "mbpoly/coefficients.hpp"
#include "mbpoly/linalg.hpp"

namespace mbpoly {

/// A matrix with a natural-log scale exponent; represented value is m * exp(e).
/// Keeps forward recurrences with diverging coefficients inside double range.
struct ScaledValue {
  CMatrix m;
  double e = 0.0;

  CMatrix value() const { return m * std::exp(e); }
  /// log of the Frobenius norm of the represented value (-inf for zero).
  double log_norm() const;
};

/// Renormalizes so that either m = 0 or ||m||_F is in [1, e^10).
ScaledValue renormalize(ScaledValue v);

enum class Side { left, right };

struct EvalRequest {
  explicit EvalRequest(CoefficientFamily fam) : family(std::move(fam)) {}
  CoefficientFamily family;
  std::optional<ScalingSequence> scaling;  // with scale index k
  int k = 0;
  Side side = Side::left;
  bool associate = false;
  int derivative_order = 0;  // 0..2
  int n = 0;
  Complex z;
};

/// Forward three-term recursion for V_n / G_n / first-kind associates and the
/// scaled variants, with derivative propagation. Returns orders 0..derivative_order,
/// all sharing one scale exponent.
std::vector<ScaledValue> eval(const EvalRequest& req);

/// Jet evaluation (shared exponent across derivative orders); the workhorse
/// behind eval() and the quadrature weight engine. Orders up to 3.
struct ScaledJet {
  std::vector<CMatrix> m;  // derivatives 0..order of the mantissa
  double e = 0.0;
};
ScaledJet eval_jet(const CoefficientFamily& family, const std::optional<ScalingSequence>& scaling,
                   int k, Side side, bool associate, int order, int n, Complex z);

/// K_m = V_{m-1}^{D_k}(z) (V_m^{D_k}(z))^{-1} (left) or
/// (G_m^{D_k}(z))^{-1} G_{m-1}^{D_k}(z) (right), m = 1..n_max, by the
/// overflow-free iteration K_{m+1} = [A_m^{-1}(z D_k - B_m - C_m K_m)]^{-1}
/// and its right-sided mirror.
std::vector<CMatrix> ratio_iterate(const CoefficientFamily& family,
                                   const std::optional<ScalingSequence>& scaling, Side side,
                                   int k, int n_max, Complex z);

/// Last iterate only (O(1) memory).
CMatrix ratio_final(const CoefficientFamily& family,
                    const std::optional<ScalingSequence>& scaling, Side side, int k, int n_max,
                    Complex z);

/// Truncated Laurent series S(x) = sum_{j>=1} coeff[j-1] x^{-j} of the right
/// ratio K~_n(x); coefficient j of x^{-(j+1)} is the j-th moment of the
/// discrete measure after C_n^{-1} (see quadrature::discrete_moment).
std::vector<CMatrix> right_ratio_series(const CoefficientFamily& family, int n, int terms);

}  // namespace mbpoly
