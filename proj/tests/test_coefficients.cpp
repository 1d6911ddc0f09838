#include "doctest.h"

#include "mbpoly/coefficients.hpp"
#include "mbpoly/linalg.hpp"

using namespace mbpoly;

namespace {

CMatrix m2(double a, double b, double c, double d) {
  CMatrix m(2, 2);
  m << Complex(a), Complex(b), Complex(c), Complex(d);
  return m;
}

}  // namespace

TEST_CASE("laguerre_christoffel coefficients") {
  auto fam = CoefficientFamily::laguerre_christoffel(0.0);
  auto t0 = fam.coeffs(0);
  CHECK((t0.A - CMatrix::Identity(2, 2)).norm() == 0.0);
  CHECK((t0.B - m2(2, -2, 0, 2)).norm() == 0.0);
  CHECK(t0.C.norm() == 0.0);  // C_0 unused
  auto t3 = fam.coeffs(3);
  CHECK((t3.C - 12.0 * CMatrix::Identity(2, 2)).norm() == 0.0);
  CHECK_THROWS_AS(CoefficientFamily::laguerre_christoffel(-1.5), Error);
}

TEST_CASE("paper_example_2 coefficients") {
  auto fam = CoefficientFamily::paper_example_2();
  auto t5 = fam.coeffs(5);
  CHECK((t5.A - m2(50, 0, 176, 125)).norm() == 0.0);
  CHECK((t5.B - m2(3.0 / 5, 4.0 / 5, 5, 200)).norm() == 0.0);
  // C_5(2,2) = 25, not the printed 5: the scaled display and the limit force n^2.
  CHECK((t5.C - m2(50, 10, 0, 25)).norm() == 0.0);
  // n = 0 backfilled with n = 1 values so A_0, C_1 stay invertible.
  CHECK((fam.coeffs(0).A - fam.coeffs(1).A).norm() == 0.0);
}

TEST_CASE("constant family returns its triple for any n") {
  auto fam = CoefficientFamily::constant(m2(1, 0, 0, 1), m2(0, 0, 0, 0), m2(2, 0, 0, 1));
  for (int n : {0, 1, 17, 1000}) {
    auto t = fam.coeffs(n);
    CHECK((t.C - m2(2, 0, 0, 1)).norm() == 0.0);
  }
}

TEST_CASE("custom_table range checking") {
  std::vector<Triple> tab(3, Triple{m2(1, 0, 0, 1), m2(0, 0, 0, 0), m2(1, 0, 0, 1)});
  auto fam = CoefficientFamily::custom_table(tab);
  CHECK(fam.max_index() == 2);
  CHECK_NOTHROW(fam.coeffs(2));
  CHECK_THROWS_AS(fam.coeffs(3), Error);
}

TEST_CASE("scaling triples") {
  auto lag = ScalingSequence::paper_laguerre();
  auto t3 = lag.at(3);
  CHECK((t3.D - 9.0 * CMatrix::Identity(2, 2)).norm() == 0.0);
  CHECK((t3.D_half - 3.0 * CMatrix::Identity(2, 2)).norm() == 0.0);
  CHECK(lag.start_index() == 1);
  CHECK(lag.increasing());

  auto id = ScalingSequence::identity(2);
  auto ti = id.at(42);
  CHECK((ti.D - CMatrix::Identity(2, 2)).norm() == 0.0);

  auto ex2 = ScalingSequence::paper_example_2();
  auto e3 = ex2.at(3);
  const double f = 81.0 / 8.0;
  CMatrix expect = f * m2(1.0 / 3, -1.0 / 9, -1.0 / 9, 1.0 / 3);
  CHECK((e3.D_half - expect).norm() < 1e-12);
  CHECK((e3.D_half * e3.D_half - e3.D).norm() < 1e-10 * e3.D.norm());
  CHECK((e3.D_half * e3.D_half_inv - CMatrix::Identity(2, 2)).norm() < 1e-12);
  CHECK(ex2.start_index() == 2);
}

TEST_CASE("scaled_coeffs") {
  auto lag = CoefficientFamily::laguerre_christoffel(0.7);
  auto sc = ScalingSequence::paper_laguerre();
  for (int n : {2, 5, 9}) {
    auto t = scaled_coeffs(lag, sc, n, n);
    const double expect = (0.7 + n + 1.0) / n;
    CHECK((t.C - expect * CMatrix::Identity(2, 2)).norm() < 1e-12);
  }

  auto fam = CoefficientFamily::paper_example_2();
  auto id = ScalingSequence::identity(2);
  auto t = scaled_coeffs(fam, id, 4, 7);
  CHECK((t.A - fam.coeffs(4).A).norm() == 0.0);

  auto ex2 = ScalingSequence::paper_example_2();
  auto a10 = scaled_coeffs(fam, ex2, 10, 10);
  CMatrix lim = m2(2, 0, 7, 5);
  CHECK((a10.A - lim).cwiseAbs().maxCoeff() <= 0.8);
}

TEST_CASE("limits: declared builtins") {
  auto fam = CoefficientFamily::paper_example_2();
  auto lt = limits(fam, ScalingSequence::paper_example_2());
  CHECK((lt.A - m2(2, 0, 7, 5)).norm() == 0.0);
  CHECK((lt.B - m2(0, 0, 0, 8)).norm() == 0.0);
  CHECK((lt.C - m2(2, 0, 0, 1)).norm() == 0.0);
  CHECK_FALSE(lt.singular_A);
  CHECK_FALSE(lt.singular_C);

  auto lag = CoefficientFamily::laguerre_christoffel(0.0);
  auto ll = limits(lag, ScalingSequence::paper_laguerre());
  CHECK(ll.A.norm() == 0.0);
  CHECK(ll.B.norm() == 0.0);
  CHECK((ll.C - CMatrix::Identity(2, 2)).norm() == 0.0);
  CHECK(ll.singular_A);
  CHECK_FALSE(ll.singular_C);

  auto cst = CoefficientFamily::constant(m2(1, 0, 0, 1), m2(0, 0, 0, 8), m2(2, 0, 0, 1));
  auto lc = limits(cst, ScalingSequence::identity(2));
  CHECK((lc.B - m2(0, 0, 0, 8)).norm() == 0.0);
}

TEST_CASE("limits: probe path for non-declared pairings") {
  // constant family under a growing scaling: scaled triples decay like n^-2,
  // so the probe converges (to zero matrices, flagged singular).
  auto cst = CoefficientFamily::constant(m2(1, 0, 0, 1), m2(0, 1, 1, 0), m2(3, 0, 0, 3));
  auto lt = limits(cst, ScalingSequence::scalar_power(2, 2.0), 300);
  CHECK(lt.A.norm() < 1e-4);
  CHECK(lt.C.norm() < 1e-4);

  // laguerre against the example-2 scaling converges only like 1/n; a small
  // probe cannot certify the limit.
  auto lag = CoefficientFamily::laguerre_christoffel(0.0);
  CHECK_THROWS_AS(limits(lag, ScalingSequence::paper_example_2(), 300), Error);

  // A custom table too short for the probe raises OutOfRange.
  std::vector<Triple> tab(5, Triple{CMatrix::Identity(1, 1), CMatrix::Zero(1, 1),
                                    CMatrix::Identity(1, 1)});
  auto fam = CoefficientFamily::custom_table(tab);
  CHECK_THROWS_AS(limits(fam, ScalingSequence::identity(1)), Error);
}

TEST_CASE("scaled coefficient distance to limits is nonincreasing") {
  auto fam = CoefficientFamily::paper_example_2();
  auto sc = ScalingSequence::paper_example_2();
  auto lt = limits(fam, sc);
  double prev = 1e300;
  for (int n : {10, 20, 40, 80, 160}) {
    auto t = scaled_coeffs(fam, sc, n, n);
    const double d =
        std::max({(t.A - lt.A).norm(), (t.B - lt.B).norm(), (t.C - lt.C).norm()});
    CHECK(d <= prev * 1.05);
    prev = d;
  }
}

TEST_CASE("D_n^{-1/2} D_{n-1}^{1/2} approaches identity") {
  for (auto sc : {ScalingSequence::paper_laguerre(), ScalingSequence::paper_example_2()}) {
    const int n = 200;
    CMatrix P = sc.at(n).D_half_inv * sc.at(n - 1).D_half;
    CHECK((P - CMatrix::Identity(2, 2)).norm() < 1e-2);
  }
}

TEST_CASE("increasing scalings have PSD increments") {
  for (auto sc : {ScalingSequence::paper_laguerre(), ScalingSequence::paper_example_2()}) {
    for (int n = sc.start_index(); n < 40; ++n) {
      CMatrix d = sc.at(n + 1).D - sc.at(n).D;
      Eigen::SelfAdjointEigenSolver<CMatrix> es(d);
      CHECK(es.eigenvalues().minCoeff() >= -1e-10);
    }
  }
}
