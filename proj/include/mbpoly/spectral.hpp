#pragma once

#include <optional>
#include <vector>

#include "mbpoly/coefficients.hpp"
#include "mbpoly/linalg.hpp"

namespace mbpoly {

/// Truncated N-block Jacobi operator of a recurrence family.
struct BlockJacobi {
  int n_blocks = 0;
  int block_dim = 0;
  CMatrix dense;  // (n_blocks*N) x (n_blocks*N)
};

/// Zeros of det V_n, clustered into distinct nodes with multiplicities.
struct ZeroSet {
  std::vector<Complex> nodes;       // sorted by (re, im)
  std::vector<int> multiplicities;  // same length; each in {1, 2}
  double cluster_tol = 0.0;
  int total_multiplicity() const;
};

inline constexpr double kDefaultClusterTol = 1e-6;

/// Assembly [B_0 A_0; C_1 B_1 A_1; ...]; scaled variant when scaling and k given.
BlockJacobi build(const CoefficientFamily& family, const std::optional<ScalingSequence>& scaling,
                  int k, int n);

/// Eigenvalues of the truncation, clustered. Scale index is k = n when a
/// scaling is passed (the theorems' diagonal). Relative tolerance:
/// two eigenvalues merge when within cluster_tol * max(1, |node|).
ZeroSet zeros(const CoefficientFamily& family, const std::optional<ScalingSequence>& scaling,
              int n, double cluster_tol = kDefaultClusterTol);

/// Clusters a raw eigenvalue list (exposed for the common-zeros checks).
ZeroSet cluster_zeros(std::vector<Complex> eigenvalues, double cluster_tol);

/// Row-sum bound: all zeros of V_m^{D_m}, m <= n, lie in |z| <= M.
double gershgorin_bound(const CoefficientFamily& family, const ScalingSequence& scaling, int n);

/// Moment oracle M_l = upper-left block of (J_m)^l, truncation depth ceil(l/2)+2,
/// with internal depth-independence verification.
std::vector<CMatrix> moments(const CoefficientFamily& family, int l_max);

}  // namespace mbpoly
