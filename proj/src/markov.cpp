#include "mbpoly/markov.hpp"

#include <cmath>
#include <limits>

namespace mbpoly {

namespace {

void require_same_dim(const CMatrix& A, const CMatrix& B, const CMatrix& C, const char* who) {
  if (A.rows() != A.cols() || B.rows() != B.cols() || C.rows() != C.cols() ||
      A.rows() != B.rows() || A.rows() != C.rows())
    throw Error(Errc::invalid_config, std::string(who) + ": dimension mismatch");
}

}  // namespace

ScaledValue chebyshev_left(const CMatrix& C, const CMatrix& B, const CMatrix& A, int n,
                           Complex z) {
  require_same_dim(A, B, C, "chebyshev_left");
  // U-recurrence places C in the A-slot of the standard left recursion.
  auto fam = CoefficientFamily::constant(C, B, A);
  EvalRequest req(fam);
  req.side = Side::left;
  req.n = n;
  req.z = z;
  return eval(req)[0];
}

ScaledValue chebyshev_right(const CMatrix& A, const CMatrix& B, const CMatrix& C, int n,
                            Complex z) {
  require_same_dim(A, B, C, "chebyshev_right");
  // x T_n = T_{n+1} A + T_n B + T_{n-1} C: the right recursion of the family
  // whose G-coefficients are (A_{m-1}, B_m, C_{m+1}) = (C, B, A)... the G
  // recurrence reads x G_n = G_{n-1} A_{n-1} + G_n B_n + G_{n+1} C_{n+1}, so a
  // constant family (C, B, A) gives x T_n = T_{n-1} C + T_n B + T_{n+1} A.
  auto fam = CoefficientFamily::constant(C, B, A);
  EvalRequest req(fam);
  req.side = Side::right;
  req.n = n;
  req.z = z;
  return eval(req)[0];
}

MarkovValue markov_fixed_point(const CMatrix& A, const CMatrix& B, const CMatrix& C, Complex z,
                               double tol, int max_iter) {
  require_same_dim(A, B, C, "markov_fixed_point");
  const int N = static_cast<int>(A.rows());
  const CMatrix I = CMatrix::Identity(N, N);
  if (std::abs(z) == 0.0) throw Error(Errc::invalid_config, "markov_fixed_point: z = 0");
  MarkovValue out;
  out.z = z;
  CMatrix F = I / z;
  double best = std::numeric_limits<double>::infinity();
  CMatrix bestF = F;
  for (int it = 1; it <= max_iter; ++it) {
    CMatrix Fn;
    try {
      Fn = mat_inv(z * I - B - C * F * A);
    } catch (const Error&) {
      throw Error(Errc::singular_step, "markov_fixed_point: singular iteration step");
    }
    F = Fn;
    const double res = markov_equation_residual(A, B, C, F, z);
    if (res < best) {
      best = res;
      bestF = F;
    }
    if (res <= tol) {
      out.F = F;
      out.residual = res;
      out.iterations = it;
      return out;
    }
  }
  throw Error(Errc::no_convergence, "markov_fixed_point: best residual " +
                                        std::to_string(best) + " after " +
                                        std::to_string(max_iter) + " iterations");
}

CMatrix markov_ratio(const CMatrix& A, const CMatrix& B, const CMatrix& C, Complex z, int n) {
  require_same_dim(A, B, C, "markov_ratio");
  auto fam = CoefficientFamily::constant(A, B, C);
  CMatrix K = ratio_final(fam, std::nullopt, Side::left, 0, n, z);
  return K * mat_inv(A);
}

double markov_equation_residual(const CMatrix& A, const CMatrix& B, const CMatrix& C,
                                const CMatrix& F, Complex z) {
  const CMatrix I = CMatrix::Identity(A.rows(), A.cols());
  return (C * F * A * F + (B - z * I) * F + I).norm();
}

}  // namespace mbpoly
