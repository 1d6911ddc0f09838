#pragma once

#include <optional>
#include <vector>

#include "mbpoly/coefficients.hpp"
#include "mbpoly/markov.hpp"
#include "mbpoly/recurrence.hpp"

namespace mbpoly {

struct ConvergenceRow {
  int n = 0;
  double L_error = 0.0;
  double R_error = 0.0;
  double LR_gap = 0.0;
  double eq_residual = 0.0;
};

struct ConvergenceReport {
  Complex z;
  std::vector<ConvergenceRow> rows;  // sorted by n
  LimitTriple limit_used;
  CMatrix F_reference;
  bool F_from_fixed_point = false;  // false: limits singular, F_reference = last L_n
};

/// L_n(z) = D_n^{1/2} V_{n-1}^{D_n}(z) (V_n^{D_n}(z))^{-1} A_{n-1}^{-1} D_n^{1/2}.
CMatrix left_ratio(const CoefficientFamily& family, const ScalingSequence& scaling, int n,
                   Complex z);

/// R_n(z) = D_n^{1/2} C_n^{-1} (G_n^{D_n}(z))^{-1} G_{n-1}^{D_n}(z) D_n^{1/2}.
CMatrix right_ratio(const CoefficientFamily& family, const ScalingSequence& scaling, int n,
                    Complex z);

struct LoResiduals {
  double r0 = 0.0;  // ||V_n G^{(1)}_{n-1} - V^{(1)}_{n-1} G_n||, relative
  double r1 = 0.0;  // ||V_n G^{(1)}_n - V^{(1)}_{n+1} G_{n+1} - A_n^{-1}||, reported only
  double r2 = 0.0;  // ||V_n G^{(1)}_n - V^{(1)}_{n-1} G_{n+1} - C_{n+1}^{-1}||, relative
};

/// Wronskian-type identity residuals at z for the unscaled family; residuals
/// are relative to the largest operand scale.
LoResiduals lo_verify(const CoefficientFamily& family, int n, Complex z);

/// ||C F A F + (B - zI) F + I||_F for the limit triple.
double singular_residual(const LimitTriple& limits, const CMatrix& F, Complex z);

ConvergenceReport report(const CoefficientFamily& family, const ScalingSequence& scaling,
                         Complex z, const std::vector<int>& n_list);

}  // namespace mbpoly
