#include "doctest.h"

#include <algorithm>
#include <complex>

#include "mbpoly/config.hpp"
#include "mbpoly/linalg.hpp"

using namespace mbpoly;

namespace {

CMatrix random_matrix(PropertyRng& rng, int N, double span = 1.0) {
  CMatrix m(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      m(i, j) = Complex(rng.uniform(-span, span), rng.uniform(-span, span));
  return m;
}

}  // namespace

TEST_CASE("mat_mul basics") {
  PropertyRng rng;
  CMatrix M = random_matrix(rng, 3);
  CMatrix I = CMatrix::Identity(3, 3);
  CHECK((mat_mul(I, M) - M).norm() == doctest::Approx(0.0));

  CMatrix X(2, 2);
  X << Complex(0), Complex(1), Complex(1), Complex(0);
  CHECK((mat_mul(X, X) - CMatrix::Identity(2, 2)).norm() == doctest::Approx(0.0));

  CHECK_THROWS_AS(mat_mul(CMatrix::Zero(2, 2), CMatrix::Zero(3, 3)), Error);
}

TEST_CASE("mat_inv round trips") {
  CMatrix T(2, 2);
  T << Complex(3), Complex(2), Complex(0), Complex(3);
  CMatrix Ti = mat_inv(T);
  CMatrix expect(2, 2);
  expect << Complex(1.0 / 3), Complex(-2.0 / 9), Complex(0), Complex(1.0 / 3);
  CHECK((Ti - expect).norm() < 1e-15);

  PropertyRng rng(7);
  for (int t = 0; t < 20; ++t) {
    const int N = 1 + static_cast<int>(rng.next_u64() % 4);
    CMatrix M = random_matrix(rng, N) + 3.0 * CMatrix::Identity(N, N);
    CHECK((mat_mul(M, mat_inv(M)) - CMatrix::Identity(N, N)).norm() <= 1e-10);
  }

  CHECK_THROWS_AS(mat_inv(CMatrix::Zero(2, 2)), Error);
  CMatrix S(2, 2);
  S << Complex(1), Complex(1), Complex(1), Complex(1);
  CHECK_THROWS(mat_inv(S));
}

TEST_CASE("solve") {
  PropertyRng rng(11);
  CMatrix D(2, 2);
  D << Complex(2), Complex(0), Complex(0), Complex(4);
  CMatrix X = solve(D, CMatrix::Identity(2, 2));
  CHECK(std::abs(X(0, 0) - Complex(0.5)) < 1e-15);
  CHECK(std::abs(X(1, 1) - Complex(0.25)) < 1e-15);

  for (int t = 0; t < 10; ++t) {
    CMatrix A = random_matrix(rng, 3) + 2.5 * CMatrix::Identity(3, 3);
    CMatrix B = random_matrix(rng, 3);
    CMatrix Y = solve(A, B);
    CHECK((A * Y - B).norm() <= 1e-10 * std::max(1.0, B.norm()));
  }
}

TEST_CASE("adjugate_det agrees with cofactor structure and survives singular input") {
  CMatrix T(2, 2);
  T << Complex(5), Complex(7), Complex(0), Complex(5);
  auto [adj, det] = adjugate_det(T);
  CHECK(std::abs(det - Complex(25)) < 1e-12);
  CHECK(std::abs(adj(0, 0) - Complex(5)) < 1e-12);
  CHECK(std::abs(adj(0, 1) - Complex(-7)) < 1e-12);
  CHECK(std::abs(adj(1, 0)) < 1e-12);

  auto [adj3, det3] = adjugate_det(CMatrix::Identity(3, 3));
  CHECK(std::abs(det3 - Complex(1)) < 1e-14);
  CHECK((adj3 - CMatrix::Identity(3, 3)).norm() < 1e-14);

  // Singular argument: Adj stays well-defined with Adj*M = det*I = 0.
  CMatrix S(2, 2);
  S << Complex(1), Complex(2), Complex(2), Complex(4);
  auto [adjS, detS] = adjugate_det(S);
  CHECK(std::abs(detS) < 1e-14);
  CHECK((adjS * S).norm() < 1e-12);

  PropertyRng rng(13);
  for (int N = 1; N <= 4; ++N) {
    for (int t = 0; t < 10; ++t) {
      CMatrix M = random_matrix(rng, N);
      auto [a, d] = adjugate_det(M);
      const double bound = 1e-9 * std::pow(std::max(M.norm(), 1.0), N);
      CHECK((a * M - d * CMatrix::Identity(N, N)).norm() <= bound);
      CHECK((M * a - d * CMatrix::Identity(N, N)).norm() <= bound);
    }
  }
}

TEST_CASE("adjugate_det_jet matches finite differences") {
  PropertyRng rng(17);
  const int N = 3;
  CMatrix M0 = random_matrix(rng, N);
  CMatrix M1 = random_matrix(rng, N);
  CMatrix M2 = random_matrix(rng, N);
  auto at = [&](Complex x) { return CMatrix(M0 + x * M1 + x * x * M2); };
  const Complex x0(0.4, -0.2);

  MatJet jet;
  jet.d = {at(x0), CMatrix(M1 + 2.0 * x0 * M2), CMatrix(2.0 * M2)};
  AdjDetJet r = adjugate_det_jet(jet);

  const double h = 1e-6;
  auto [ap, dp] = adjugate_det(at(x0 + h));
  auto [am, dm] = adjugate_det(at(x0 - h));
  CHECK(std::abs((dp - dm) / (2 * h) - r.det[1]) < 1e-6 * std::max(1.0, std::abs(r.det[1])));
  CHECK(((ap - am) / (2 * h) - r.adj[1]).norm() < 1e-6 * std::max(1.0, r.adj[1].norm()));
  auto [a0, d0] = adjugate_det(at(x0));
  (void)a0;
  CHECK(std::abs((dp - (2.0 * d0) + dm) / (h * h) - r.det[2]) <
        1e-3 * std::max(1.0, std::abs(r.det[2])));
}

TEST_CASE("eig_general hits known spectra") {
  CMatrix X(2, 2);
  X << Complex(0), Complex(1), Complex(1), Complex(0);
  auto s = eig_general(X);
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end(),
            [](Complex a, Complex b) { return a.real() < b.real(); });
  CHECK(std::abs(s.eigenvalues[0] - Complex(-1)) < 1e-12);
  CHECK(std::abs(s.eigenvalues[1] - Complex(1)) < 1e-12);

  CMatrix T(2, 2);
  T << Complex(2), Complex(0), Complex(7), Complex(5);
  auto st = eig_general(T);
  std::sort(st.eigenvalues.begin(), st.eigenvalues.end(),
            [](Complex a, Complex b) { return a.real() < b.real(); });
  CHECK(std::abs(st.eigenvalues[0] - Complex(2)) < 1e-12);
  CHECK(std::abs(st.eigenvalues[1] - Complex(5)) < 1e-12);
}

TEST_CASE("eigenvalues of a matrix and its transpose form the same multiset") {
  PropertyRng rng(23);
  for (int t = 0; t < 8; ++t) {
    const int N = 2 + static_cast<int>(rng.next_u64() % 5);
    CMatrix M = random_matrix(rng, N, 2.0);
    auto a = eig_general(M).eigenvalues;
    auto b = eig_general(M.transpose().eval()).eigenvalues;
    for (Complex lam : a) {
      size_t best = 0;
      double bd = 1e300;
      for (size_t i = 0; i < b.size(); ++i) {
        const double d = std::abs(lam - b[i]);
        if (d < bd) {
          bd = d;
          best = i;
        }
      }
      CHECK(bd <= 1e-8 * std::max(1.0, M.norm()));
      b.erase(b.begin() + static_cast<std::ptrdiff_t>(best));
    }
  }
}

TEST_CASE("sqrtm_spd principal root") {
  CHECK((sqrtm_spd(CMatrix::Identity(3, 3)) - CMatrix::Identity(3, 3)).norm() < 1e-14);
  CHECK((sqrtm_spd(9.0 * CMatrix::Identity(2, 2)) - 3.0 * CMatrix::Identity(2, 2)).norm() <
        1e-13);

  PropertyRng rng(29);
  for (int t = 0; t < 10; ++t) {
    CMatrix M = random_matrix(rng, 3);
    CMatrix D = M * M.adjoint() + 0.5 * CMatrix::Identity(3, 3);
    CMatrix R = sqrtm_spd(D);
    CHECK((R * R - D).norm() <= 1e-10 * D.norm());
  }

  CMatrix notherm(2, 2);
  notherm << Complex(1), Complex(2), Complex(0), Complex(1);
  CHECK_THROWS_AS(sqrtm_spd(notherm), Error);
  CMatrix negdef = -CMatrix::Identity(2, 2);
  CHECK_THROWS_AS(sqrtm_spd(negdef), Error);
}

TEST_CASE("norms") {
  auto z = norms(CMatrix::Zero(2, 2));
  CHECK(z.fro == 0.0);
  CHECK(z.inf == 0.0);
  auto i2 = norms(CMatrix::Identity(2, 2));
  CHECK(i2.fro == doctest::Approx(std::sqrt(2.0)));
  CHECK(i2.inf == doctest::Approx(1.0));
  CMatrix T(2, 2);
  T << Complex(2), Complex(0), Complex(7), Complex(5);
  CHECK(norms(T).inf == doctest::Approx(12.0));
}
