#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

#include "mbpoly/errors.hpp"

namespace mbpoly {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

/// Eigenvalues of a general complex matrix, with the backward-error scale
/// the solver was asked to honor.
struct Spectrum {
  std::vector<Complex> eigenvalues;  // unordered; callers sort by (re, im)
  double tolerance = 0.0;
};

struct Norms {
  double fro = 0.0;
  double inf = 0.0;
};

/// Taylor jet of a matrix function at a point: d[j] is the j-th derivative.
struct MatJet {
  std::vector<CMatrix> d;
  int order() const { return static_cast<int>(d.size()) - 1; }
};

/// Adjugate and determinant jets of a matrix jet (Faddeev-LeVerrier over
/// truncated Taylor arithmetic). adj[j], det[j] are j-th derivatives.
struct AdjDetJet {
  std::vector<CMatrix> adj;
  std::vector<Complex> det;
};

// Default numeric policy constants (see module contracts).
inline constexpr double kPivotRelTol = 1e-14;     // LU pivot floor, relative to largest pivot
inline constexpr double kConditionCeiling = 1e12; // mat_inv / solve refusal threshold
inline constexpr int kMaxEigDim = 2048;

CMatrix mat_mul(const CMatrix& a, const CMatrix& b);
CMatrix mat_inv(const CMatrix& a);
CMatrix solve(const CMatrix& a, const CMatrix& rhs);

/// Adjugate and determinant computed together without inversion; valid at
/// singular arguments. Faddeev-LeVerrier.
std::pair<CMatrix, Complex> adjugate_det(const CMatrix& a);

/// Jet version: propagates derivatives through Faddeev-LeVerrier by truncated
/// Taylor (Leibniz) products. Input holds derivatives 0..K of the matrix.
AdjDetJet adjugate_det_jet(const MatJet& a);

Spectrum eig_general(const CMatrix& a);

/// Principal square root of a Hermitian positive definite matrix.
CMatrix sqrtm_spd(const CMatrix& a);

Norms norms(const CMatrix& a);

bool is_finite(const CMatrix& a);

}  // namespace mbpoly
