#include "doctest.h"

#include <algorithm>

#include "mbpoly/spectral.hpp"

using namespace mbpoly;

namespace {

CMatrix m2(double a, double b, double c, double d) {
  CMatrix m(2, 2);
  m << Complex(a), Complex(b), Complex(c), Complex(d);
  return m;
}

CoefficientFamily scalar_chebyshev() {
  CMatrix one = CMatrix::Identity(1, 1);
  return CoefficientFamily::constant(one, CMatrix::Zero(1, 1), one);
}

double zero_set_distance(const ZeroSet& a, const ZeroSet& b) {
  if (a.nodes.size() != b.nodes.size()) return 1e300;
  double worst = 0.0;
  for (size_t i = 0; i < a.nodes.size(); ++i) {
    if (a.multiplicities[i] != b.multiplicities[i]) return 1e300;
    worst = std::max(worst, std::abs(a.nodes[i] - b.nodes[i]));
  }
  return worst;
}

}  // namespace

TEST_CASE("build assembles the block tridiagonal truncation") {
  auto sc = scalar_chebyshev();
  auto J2 = build(sc, std::nullopt, 0, 2);
  CMatrix expect(2, 2);
  expect << Complex(0), Complex(1), Complex(1), Complex(0);
  CHECK((J2.dense - expect).norm() == 0.0);

  auto fam = CoefficientFamily::constant(m2(1, 2, 0, 1), m2(5, 0, 0, 5), m2(3, 0, 1, 3));
  auto J = build(fam, std::nullopt, 0, 2);
  CHECK((J.dense.block(0, 0, 2, 2) - m2(5, 0, 0, 5)).norm() == 0.0);
  CHECK((J.dense.block(0, 2, 2, 2) - m2(1, 2, 0, 1)).norm() == 0.0);
  CHECK((J.dense.block(2, 0, 2, 2) - m2(3, 0, 1, 3)).norm() == 0.0);

  auto lag = CoefficientFamily::laguerre_christoffel(0.0);
  auto JL = build(lag, std::nullopt, 0, 2);
  CHECK((JL.dense.block(0, 0, 2, 2) - m2(2, -2, 0, 2)).norm() == 0.0);
  CHECK((JL.dense.block(0, 2, 2, 2) - CMatrix::Identity(2, 2)).norm() == 0.0);
  CHECK((JL.dense.block(2, 0, 2, 2) - 2.0 * CMatrix::Identity(2, 2)).norm() == 0.0);
  CHECK((JL.dense.block(2, 2, 2, 2) - m2(4, -2, 0, 4)).norm() == 0.0);
}

TEST_CASE("zeros of low-degree polynomials") {
  auto sc = scalar_chebyshev();
  auto z1 = zeros(sc, std::nullopt, 1);
  REQUIRE(z1.nodes.size() == 1);
  CHECK(std::abs(z1.nodes[0]) < 1e-14);

  auto z2 = zeros(sc, std::nullopt, 2);
  REQUIRE(z2.nodes.size() == 2);
  CHECK(std::abs(z2.nodes[0] - Complex(-1.0)) < 1e-12);
  CHECK(std::abs(z2.nodes[1] - Complex(1.0)) < 1e-12);
  CHECK(z2.total_multiplicity() == 2);

  // det V_1 = (x - 2)^2 for the alpha = 0 family: one double node.
  auto lag = CoefficientFamily::laguerre_christoffel(0.0);
  auto zl = zeros(lag, std::nullopt, 1);
  REQUIRE(zl.nodes.size() == 1);
  CHECK(zl.multiplicities[0] == 2);
  CHECK(std::abs(zl.nodes[0] - Complex(2.0)) < 1e-10);
}

TEST_CASE("common zeros: J_n and its transpose give the same clustered nodes") {
  // Defective double eigenvalues split ~ sqrt(eps)*||J||, so the comparison is
  // between clustered zero sets, with a tolerance wide enough to absorb the
  // splits of the unscaled laguerre truncations.
  const double tol = 1e-4;
  struct Case {
    CoefficientFamily fam;
    std::optional<ScalingSequence> sc;
  };
  std::vector<Case> cases;
  cases.push_back({scalar_chebyshev(), std::nullopt});
  cases.push_back({CoefficientFamily::laguerre_christoffel(0.0), std::nullopt});
  cases.push_back(
      {CoefficientFamily::paper_example_2(), ScalingSequence::paper_example_2()});
  for (const auto& c : cases) {
    for (int n = 1; n <= 12; ++n) {
      auto J = build(c.fam, c.sc, n, n);
      auto za = cluster_zeros(eig_general(J.dense).eigenvalues, tol);
      auto zb = cluster_zeros(eig_general(J.dense.transpose().eval()).eigenvalues, tol);
      CHECK(za.total_multiplicity() == n * c.fam.dim());
      CHECK(zero_set_distance(za, zb) <= 1e-8);
    }
  }
}

TEST_CASE("gershgorin bound") {
  auto sc = scalar_chebyshev();
  CHECK(gershgorin_bound(sc, ScalingSequence::identity(1), 5) == doctest::Approx(2.0));

  auto fam = CoefficientFamily::constant(m2(1, 2, 0, 1), m2(5, 0, 0, 5), m2(3, 0, 1, 3));
  const double expect = norms(fam.coeffs(0).A).inf + norms(fam.coeffs(0).B).inf +
                        norms(fam.coeffs(0).C).inf;
  CHECK(gershgorin_bound(fam, ScalingSequence::identity(2), 6) == doctest::Approx(expect));

  auto ex2 = CoefficientFamily::paper_example_2();
  auto sc2 = ScalingSequence::paper_example_2();
  const double M = gershgorin_bound(ex2, sc2, 50);
  CHECK(M < 50.0);
  for (int n : {10, 30, 50}) {
    auto zs = zeros(ex2, sc2, n);
    for (Complex x : zs.nodes) CHECK(std::abs(x) <= M);
  }
}

TEST_CASE("gershgorin requires an increasing scaling") {
  auto fam = scalar_chebyshev();
  CHECK_THROWS_AS(gershgorin_bound(fam, ScalingSequence::scalar_power(1, -1.0), 5), Error);
}

TEST_CASE("moment oracle") {
  auto sc = scalar_chebyshev();
  auto mo = moments(sc, 8);
  const double catalan[] = {1, 0, 1, 0, 2, 0, 5, 0, 14};
  for (int l = 0; l <= 8; ++l)
    CHECK(std::abs(mo[static_cast<size_t>(l)](0, 0) - Complex(catalan[l])) <= 1e-10);

  auto fam = CoefficientFamily::constant(m2(1, 2, 0, 1), m2(5, 1, 0, 5), m2(3, 0, 1, 3));
  auto mc = moments(fam, 1);
  CHECK((mc[0] - CMatrix::Identity(2, 2)).norm() == 0.0);
  CHECK((mc[1] - m2(5, 1, 0, 5)).norm() == 0.0);

  auto lag = CoefficientFamily::laguerre_christoffel(0.0);
  CHECK((moments(lag, 0)[0] - CMatrix::Identity(2, 2)).norm() == 0.0);
}

TEST_CASE("zero boundedness under increasing scalings up to n = 50") {
  struct Case {
    CoefficientFamily fam;
    ScalingSequence sc;
  };
  std::vector<Case> cases{
      {CoefficientFamily::laguerre_christoffel(0.0), ScalingSequence::paper_laguerre()},
      {CoefficientFamily::paper_example_2(), ScalingSequence::paper_example_2()}};
  for (const auto& c : cases) {
    const double M = gershgorin_bound(c.fam, c.sc, 50);
    for (int n = 1; n <= 50; ++n) {
      auto zs = zeros(c.fam, c.sc, n);
      CHECK(zs.total_multiplicity() == 2 * n);
      for (Complex x : zs.nodes) CHECK(std::abs(x) <= M);
    }
  }
}

TEST_CASE("degenerate clusters raise") {
  std::vector<Complex> ev{Complex(1.0), Complex(1.0 + 1e-9), Complex(1.0 - 1e-9)};
  CHECK_THROWS_AS(cluster_zeros(ev, 1e-6), Error);
}
