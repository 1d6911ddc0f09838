#pragma once

#include <optional>
#include <vector>

#include "mbpoly/coefficients.hpp"
#include "mbpoly/recurrence.hpp"
#include "mbpoly/spectral.hpp"

namespace mbpoly {

/// Matrix Gauss-type rule. gamma_left/right are the node weights; the _d1
/// companions are derivative weights, nonzero only at double nodes whose
/// kernel is one-dimensional (Adj(x_k) != 0), where sampling P alone cannot
/// be exact. At semisimple nodes they vanish and the plain rule remains.
struct QuadratureRule {
  ZeroSet zero_set;
  std::vector<CMatrix> gamma_left;
  std::vector<CMatrix> gamma_left_d1;
  std::vector<CMatrix> gamma_right;
  std::vector<CMatrix> gamma_right_d1;
  int order = 0;  // n
  int dim = 0;    // N
};

/// Matrix polynomial P(x) = sum_i coeff[i] x^i.
using MatrixPoly = std::vector<CMatrix>;

struct IntegrationResult {
  CMatrix value;
  bool exact_degree = true;  // deg P <= 2n-1
};

/// Weights from recurrence evaluations with analytic derivative propagation;
/// computed in the scaled frame (scale index k, default n) when a scaling is
/// given. Nodes are Newton-polished before weights are formed.
QuadratureRule rule(const CoefficientFamily& family,
                    const std::optional<ScalingSequence>& scaling, std::optional<int> k, int n,
                    double cluster_tol = kDefaultClusterTol);

IntegrationResult integrate_left(const QuadratureRule& rule, const MatrixPoly& P);
IntegrationResult integrate_right(const QuadratureRule& rule, const MatrixPoly& P);

/// Moments of the discrete measure mu_n against the right Chebyshev family of
/// the limit triple. Evaluated through the Laurent expansion of
/// C_{n,k}^{-1} G_n^{-1}(x) G_{n-1}(x) (stable for large n); equals the node
/// sum sum_j R_{n-1} Gamma~_j S_{n-1} T_l (x_j) of the scaled family.
CMatrix discrete_moment(const CoefficientFamily& family, const ScalingSequence& scaling, int n,
                        int l);

struct PartialFractionCheck {
  CMatrix reconstruction;  // sum of pole terms at z_test
  CMatrix reference;       // R(z) V_n(z)^{-1} (left) or G_n(z)^{-1} R(z) (right)
};

/// Pole-coefficient reconstruction of R(x) P_n(x)^{-1} (left) or
/// P_n(x)^{-1} R(x) (right), deg R <= n-1.
PartialFractionCheck partial_fractions(const CoefficientFamily& family, int n,
                                       const MatrixPoly& R, Side side, Complex z_test,
                                       double cluster_tol = kDefaultClusterTol);

/// Right-Chebyshev coefficient lists: T_l(x) = sum_i x^i tau[i], coefficients
/// multiplying from the right, built from the limit triple recurrence.
MatrixPoly right_chebyshev_coeffs(const LimitTriple& limits, int l);

}  // namespace mbpoly
