#include "mbpoly/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace mbpoly {

bool is_finite(const CMatrix& a) { return a.allFinite(); }

namespace {

void require_square(const CMatrix& a, const char* who) {
  if (a.rows() != a.cols())
    throw Error(Errc::out_of_range, std::string(who) + ": matrix must be square");
}

void require_finite(const CMatrix& a, const char* who) {
  if (!a.allFinite())
    throw Error(Errc::overflow, std::string(who) + ": non-finite entries");
}

Eigen::PartialPivLU<CMatrix> checked_lu(const CMatrix& a, const char* who) {
  require_square(a, who);
  require_finite(a, who);
  Eigen::PartialPivLU<CMatrix> lu(a);
  const auto diag = lu.matrixLU().diagonal();
  double pmax = 0.0;
  for (Eigen::Index i = 0; i < diag.size(); ++i) pmax = std::max(pmax, std::abs(diag[i]));
  if (pmax == 0.0) throw Error(Errc::singular, std::string(who) + ": zero matrix");
  for (Eigen::Index i = 0; i < diag.size(); ++i)
    if (std::abs(diag[i]) < kPivotRelTol * pmax)
      throw Error(Errc::singular, std::string(who) + ": pivot below threshold");
  if (lu.rcond() < 1.0 / kConditionCeiling)
    throw Error(Errc::ill_conditioned, std::string(who) + ": condition estimate above ceiling");
  return lu;
}

}  // namespace

CMatrix mat_mul(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows())
    throw Error(Errc::out_of_range, "mat_mul: dimension mismatch");
  CMatrix r = a * b;
  require_finite(r, "mat_mul");
  return r;
}

CMatrix mat_inv(const CMatrix& a) {
  auto lu = checked_lu(a, "mat_inv");
  CMatrix r = lu.inverse();
  require_finite(r, "mat_inv");
  return r;
}

CMatrix solve(const CMatrix& a, const CMatrix& rhs) {
  if (a.rows() != rhs.rows())
    throw Error(Errc::out_of_range, "solve: dimension mismatch");
  auto lu = checked_lu(a, "solve");
  CMatrix r = lu.solve(rhs);
  require_finite(r, "solve");
  return r;
}

std::pair<CMatrix, Complex> adjugate_det(const CMatrix& a) {
  MatJet j;
  j.d.push_back(a);
  AdjDetJet r = adjugate_det_jet(j);
  return {r.adj[0], r.det[0]};
}

AdjDetJet adjugate_det_jet(const MatJet& a) {
  const int K = a.order();
  if (K < 0) throw Error(Errc::out_of_range, "adjugate_det_jet: empty jet");
  require_square(a.d[0], "adjugate_det_jet");
  const Eigen::Index N = a.d[0].rows();

  // Work in Taylor coefficients: T[j] = d[j]/j!.
  std::vector<double> fact(K + 1, 1.0);
  for (int j = 1; j <= K; ++j) fact[j] = fact[j - 1] * j;
  std::vector<CMatrix> T(K + 1);
  for (int j = 0; j <= K; ++j) T[j] = a.d[j] / fact[j];

  auto jet_mul = [&](const std::vector<CMatrix>& x, const std::vector<CMatrix>& y) {
    std::vector<CMatrix> r(K + 1, CMatrix::Zero(N, N));
    for (int j = 0; j <= K; ++j)
      for (int i = 0; i <= j; ++i) r[j] += x[i] * y[j - i];
    return r;
  };

  // M_0 = I; for k = 1..N: c_k = -tr(A M_{k-1} + c... ) standard form:
  //   M_k = A M_{k-1} + c_{k-1} I with c_0 = 1 absorbed; here:
  //   P_k = A M_{k-1}; c_k = -tr(P_k)/k; M_k = P_k + c_k I.
  // det = (-1)^N c_N, Adj = (-1)^{N-1} M_{N-1}.
  std::vector<CMatrix> M(K + 1, CMatrix::Zero(N, N));
  M[0] = CMatrix::Identity(N, N);
  std::vector<CMatrix> Mprev = M;  // M_{N-1} tracker
  std::vector<Complex> c(K + 1, Complex(0.0));
  c[0] = Complex(1.0);
  for (Eigen::Index k = 1; k <= N; ++k) {
    Mprev = M;
    std::vector<CMatrix> P = jet_mul(T, M);
    std::vector<Complex> ck(K + 1, Complex(0.0));
    for (int j = 0; j <= K; ++j) ck[j] = -P[j].trace() / static_cast<double>(k);
    for (int j = 0; j <= K; ++j) {
      M[j] = P[j];
      M[j].diagonal().array() += ck[j];
    }
    c = ck;
  }

  const double sgn_det = (N % 2 == 0) ? 1.0 : -1.0;
  const double sgn_adj = (N % 2 == 0) ? -1.0 : 1.0;
  AdjDetJet out;
  out.adj.resize(K + 1);
  out.det.resize(K + 1);
  for (int j = 0; j <= K; ++j) {
    out.det[j] = sgn_det * c[j] * fact[j];
    out.adj[j] = sgn_adj * Mprev[j] * fact[j];
  }
  return out;
}

namespace {

// Parlett-Reinsch balancing with powers of two: an exact diagonal similarity
// that equalizes row and column norms. The QR iteration behind the eigensolver
// is not scaling-invariant, and the strongly graded block Jacobi truncations
// here (superdiagonal ~ n^-2 against subdiagonal ~ 1) scatter defective
// eigenvalues badly without it.
CMatrix balanced(CMatrix a) {
  const Eigen::Index n = a.rows();
  bool converged = false;
  while (!converged) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double f = 1.0;
      const double s = c + r;
      while (c < r / 2.0) {
        c *= 2.0;
        r /= 2.0;
        f *= 2.0;
      }
      while (c >= r * 2.0) {
        c /= 2.0;
        r *= 2.0;
        f /= 2.0;
      }
      if (c + r < 0.95 * s) {
        converged = false;
        a.col(i) *= f;
        a.row(i) /= f;
      }
    }
  }
  return a;
}

}  // namespace

Spectrum eig_general(const CMatrix& a) {
  require_square(a, "eig_general");
  require_finite(a, "eig_general");
  if (a.rows() > kMaxEigDim)
    throw Error(Errc::out_of_range, "eig_general: dimension above configured max");
  Spectrum s;
  if (a.rows() == 0) return s;
  Eigen::ComplexEigenSolver<CMatrix> es(balanced(a), /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw Error(Errc::no_convergence, "eig_general: QR iteration did not converge");
  s.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + a.rows());
  s.tolerance = 1e-9 * a.norm();
  return s;
}

CMatrix sqrtm_spd(const CMatrix& a) {
  require_square(a, "sqrtm_spd");
  require_finite(a, "sqrtm_spd");
  const double scale = std::max(a.norm(), 1e-300);
  if ((a - a.adjoint()).norm() > 1e-12 * scale)
    throw Error(Errc::not_spd, "sqrtm_spd: matrix not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a);
  if (es.info() != Eigen::Success)
    throw Error(Errc::no_convergence, "sqrtm_spd: eigendecomposition failed");
  const auto& w = es.eigenvalues();
  for (Eigen::Index i = 0; i < w.size(); ++i)
    if (w[i] <= 0.0) throw Error(Errc::not_spd, "sqrtm_spd: nonpositive eigenvalue");
  CMatrix r = es.eigenvectors() * w.array().sqrt().matrix().asDiagonal() *
              es.eigenvectors().adjoint();
  return r;
}

Norms norms(const CMatrix& a) {
  Norms n;
  n.fro = a.norm();
  n.inf = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) s += std::abs(a(i, j));
    n.inf = std::max(n.inf, s);
  }
  return n;
}

}  // namespace mbpoly
