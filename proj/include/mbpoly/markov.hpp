#pragma once

#include "mbpoly/coefficients.hpp"
#include "mbpoly/recurrence.hpp"

namespace mbpoly {

/// F(z) with the residual of C F A F + (B - zI) F + I = 0.
struct MarkovValue {
  Complex z;
  CMatrix F;
  double residual = 0.0;
  int iterations = 0;
};

/// U_n^{C,B,A}(z): x U_n = C U_{n+1} + B U_n + A U_{n-1}, U_0 = I.
ScaledValue chebyshev_left(const CMatrix& C, const CMatrix& B, const CMatrix& A, int n,
                           Complex z);

/// T_n^{A,B,C}(z): x T_n = T_{n+1} A + T_n B + T_{n-1} C, T_0 = I.
ScaledValue chebyshev_right(const CMatrix& A, const CMatrix& B, const CMatrix& C, int n,
                            Complex z);

/// Fixed-point (continued-fraction) iteration F <- (zI - B - C F A)^{-1} from
/// F_0 = z^{-1} I. Throws NoConvergence with the best residual when the
/// tolerance is not reached.
MarkovValue markov_fixed_point(const CMatrix& A, const CMatrix& B, const CMatrix& C, Complex z,
                               double tol = 1e-12, int max_iter = 10000);

/// Cross-validation: V_{n-1} V_n^{-1} A^{-1} for the constant family (A, B, C).
CMatrix markov_ratio(const CMatrix& A, const CMatrix& B, const CMatrix& C, Complex z, int n);

/// Frobenius norm of C F A F + (B - zI) F + I.
double markov_equation_residual(const CMatrix& A, const CMatrix& B, const CMatrix& C,
                                const CMatrix& F, Complex z);

}  // namespace mbpoly
