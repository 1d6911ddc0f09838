#include "mbpoly/quadrature.hpp"

#include <cmath>

namespace mbpoly {

namespace {

struct NodeData {
  Complex x;
  int mult = 1;
  // mantissa jets and shared exponents
  AdjDetJet v_adjdet, g_adjdet;
  double e_v = 0.0, e_g = 0.0;
  ScaledJet w;   // left associate V^{(1)}_{n-1}, orders 0..1
  ScaledJet wt;  // right associate G^{(1)}_{n-1}, orders 0..1
};

double det_scale(const std::vector<Complex>& det) {
  double s = 0.0;
  for (const auto& d : det) s = std::max(s, std::abs(d));
  return std::max(s, 1e-300);
}

Complex newton_step(const std::vector<Complex>& det, int mult) {
  // Root of det^{(mult-1)}: step = det^{(mult-1)} / det^{(mult)}.
  const Complex num = det[static_cast<size_t>(mult) - 1];
  const Complex den = det[static_cast<size_t>(mult)];
  if (std::abs(den) < 1e-14 * det_scale(det)) return Complex(0.0);
  return num / den;
}

/// Weight pair for one node from the pole expansion of the inverse polynomial.
/// For assoc_on_right (left quadrature): g1 = c Adj0 W0, g0 = c (Adj0 W1 + Adj1 W0) - d Adj0 W0.
/// For assoc_on_left (right quadrature): mirrored products.
void node_weights(const AdjDetJet& ad, double e_poly, const ScaledJet& W, int mult,
                  bool assoc_on_right, int N, CMatrix& g0, CMatrix& g1) {
  const double escale = std::exp(W.e - e_poly);
  if (mult == 1) {
    const Complex d1 = ad.det[1];
    if (std::abs(d1) < 1e-12 * det_scale(ad.det))
      throw Error(Errc::singular_weight, "rule: det derivative below threshold");
    if (assoc_on_right)
      g0 = (ad.adj[0] * W.m[0]) / d1 * escale;
    else
      g0 = (W.m[0] * ad.adj[0]) / d1 * escale;
    g1 = CMatrix::Zero(N, N);
    return;
  }
  const Complex d2 = ad.det[2];
  const Complex d3 = ad.det[3];
  if (std::abs(d2) < 1e-12 * det_scale(ad.det))
    throw Error(Errc::singular_weight, "rule: second det derivative below threshold");
  const Complex c = Complex(2.0) / d2;
  const Complex d = Complex(2.0) * d3 / (Complex(3.0) * d2 * d2);
  if (assoc_on_right) {
    g1 = c * (ad.adj[0] * W.m[0]) * escale;
    g0 = (c * (ad.adj[0] * W.m[1] + ad.adj[1] * W.m[0]) - d * (ad.adj[0] * W.m[0])) * escale;
  } else {
    g1 = c * (W.m[0] * ad.adj[0]) * escale;
    g0 = (c * (W.m[1] * ad.adj[0] + W.m[0] * ad.adj[1]) - d * (W.m[0] * ad.adj[0])) * escale;
  }
}

AdjDetJet adjdet_of(const ScaledJet& j, int upto) {
  MatJet mj;
  mj.d.assign(j.m.begin(), j.m.begin() + upto + 1);
  return adjugate_det_jet(mj);
}

}  // namespace

QuadratureRule rule(const CoefficientFamily& family,
                    const std::optional<ScalingSequence>& scaling, std::optional<int> k_opt,
                    int n, double cluster_tol) {
  if (n < 1) throw Error(Errc::out_of_range, "rule: n must be >= 1");
  const int N = family.dim();
  const int k = k_opt.value_or(n);
  auto fam = scaling ? scaled_normalized(family, *scaling, k) : family;

  BlockJacobi J = build(fam, std::nullopt, 0, n);
  Spectrum sp = eig_general(J.dense);
  ZeroSet zs = cluster_zeros(std::move(sp.eigenvalues), cluster_tol);
  if (zs.total_multiplicity() != n * N)
    throw Error(Errc::degenerate_zeros, "rule: multiplicity bookkeeping failed");

  QuadratureRule out;
  out.order = n;
  out.dim = N;

  for (size_t i = 0; i < zs.nodes.size(); ++i) {
    NodeData nd;
    nd.x = zs.nodes[i];
    nd.mult = zs.multiplicities[i];
    if (nd.mult > 2) throw Error(Errc::degenerate_zeros, "rule: multiplicity above 2");
    const int order_v = (nd.mult == 2) ? 3 : 1;

    // Newton polish of the node on det^{(mult-1)} using the jet engine.
    for (int it = 0; it < 2; ++it) {
      ScaledJet vj = eval_jet(fam, std::nullopt, 0, Side::left, false, nd.mult, n, nd.x);
      AdjDetJet ad = adjdet_of(vj, nd.mult);
      const Complex step = newton_step(ad.det, nd.mult);
      if (std::abs(step) > 1e-3 * std::max(1.0, std::abs(nd.x))) break;  // don't wander
      nd.x -= step;
    }

    ScaledJet vj = eval_jet(fam, std::nullopt, 0, Side::left, false, order_v, n, nd.x);
    nd.v_adjdet = adjdet_of(vj, order_v);
    nd.e_v = vj.e;
    ScaledJet gj = eval_jet(fam, std::nullopt, 0, Side::right, false, order_v, n, nd.x);
    nd.g_adjdet = adjdet_of(gj, order_v);
    nd.e_g = gj.e;
    nd.w = eval_jet(fam, std::nullopt, 0, Side::left, true, 1, n - 1, nd.x);
    nd.wt = eval_jet(fam, std::nullopt, 0, Side::right, true, 1, n - 1, nd.x);

    // True derivative scales: det^{(j)} of the represented polynomial carries
    // exp(N e); adj^{(j)} carries exp((N-1) e). The quotient leaves exp(-e),
    // combined with the associate's own exponent inside node_weights.
    CMatrix g0, g1, t0, t1;
    node_weights(nd.v_adjdet, nd.e_v, nd.w, nd.mult, /*assoc_on_right=*/true, N, g0, g1);
    node_weights(nd.g_adjdet, nd.e_g, nd.wt, nd.mult, /*assoc_on_right=*/false, N, t0, t1);
    out.zero_set.nodes.push_back(nd.x);
    out.zero_set.multiplicities.push_back(nd.mult);
    out.gamma_left.push_back(std::move(g0));
    out.gamma_left_d1.push_back(std::move(g1));
    out.gamma_right.push_back(std::move(t0));
    out.gamma_right_d1.push_back(std::move(t1));
  }
  out.zero_set.cluster_tol = cluster_tol;
  return out;
}

namespace {

void eval_poly(const MatrixPoly& P, Complex x, int N, CMatrix& val, CMatrix& der) {
  val = CMatrix::Zero(N, N);
  der = CMatrix::Zero(N, N);
  for (size_t i = P.size(); i-- > 0;) {
    der = der * x + val;
    val = val * x + P[i];
  }
}

}  // namespace

IntegrationResult integrate_left(const QuadratureRule& rule, const MatrixPoly& P) {
  const int N = rule.dim;
  IntegrationResult r;
  r.value = CMatrix::Zero(N, N);
  r.exact_degree = static_cast<int>(P.size()) - 1 <= 2 * rule.order - 1;
  for (size_t j = 0; j < rule.zero_set.nodes.size(); ++j) {
    CMatrix val, der;
    eval_poly(P, rule.zero_set.nodes[j], N, val, der);
    r.value += val * rule.gamma_left[j] + der * rule.gamma_left_d1[j];
  }
  return r;
}

IntegrationResult integrate_right(const QuadratureRule& rule, const MatrixPoly& P) {
  const int N = rule.dim;
  IntegrationResult r;
  r.value = CMatrix::Zero(N, N);
  r.exact_degree = static_cast<int>(P.size()) - 1 <= 2 * rule.order - 1;
  for (size_t j = 0; j < rule.zero_set.nodes.size(); ++j) {
    CMatrix val, der;
    eval_poly(P, rule.zero_set.nodes[j], N, val, der);
    r.value += rule.gamma_right[j] * val + rule.gamma_right_d1[j] * der;
  }
  return r;
}

MatrixPoly right_chebyshev_coeffs(const LimitTriple& limits, int l) {
  const int N = static_cast<int>(limits.A.rows());
  if (l < 0) throw Error(Errc::out_of_range, "right_chebyshev_coeffs: l must be >= 0");
  MatrixPoly T{CMatrix::Identity(N, N)};
  if (l == 0) return T;
  if (limits.singular_A)
    throw Error(Errc::singular_coefficient,
                "right_chebyshev_coeffs: singular limit A, T_l undefined for l >= 1");
  const CMatrix Ainv = mat_inv(limits.A);
  MatrixPoly Tm1;  // empty = zero polynomial
  for (int m = 0; m < l; ++m) {
    MatrixPoly next(static_cast<size_t>(m) + 2, CMatrix::Zero(N, N));
    for (size_t i = 0; i < T.size(); ++i) {
      next[i + 1] += T[i];
      next[i] -= T[i] * limits.B;
    }
    for (size_t i = 0; i < Tm1.size(); ++i) next[i] -= Tm1[i] * limits.C;
    for (auto& c : next) c = c * Ainv;
    Tm1 = std::move(T);
    T = std::move(next);
  }
  return T;
}

CMatrix discrete_moment(const CoefficientFamily& family, const ScalingSequence& scaling, int n,
                        int l) {
  if (l < 0) throw Error(Errc::out_of_range, "discrete_moment: l must be >= 0");
  if (n < 1) throw Error(Errc::out_of_range, "discrete_moment: n must be >= 1");
  const int N = family.dim();
  auto fam = scaled_normalized(family, scaling, n);

  // mu-moments m_i = C_{n,k}^{-1} [x^{-(i+1)}] K~_n(x), i = 0..l.
  std::vector<CMatrix> K = right_ratio_series(fam, n, l + 1);
  const CMatrix Cinv = mat_inv(fam.coeffs(n).C);
  MatrixPoly tau = right_chebyshev_coeffs(limits(family, scaling), l);
  CMatrix out = CMatrix::Zero(N, N);
  for (size_t i = 0; i < tau.size(); ++i) out += (Cinv * K[i]) * tau[i];
  return out;
}

PartialFractionCheck partial_fractions(const CoefficientFamily& family, int n,
                                       const MatrixPoly& R, Side side, Complex z_test,
                                       double cluster_tol) {
  const int N = family.dim();
  if (static_cast<int>(R.size()) - 1 > n - 1)
    throw Error(Errc::out_of_range, "partial_fractions: deg R must be <= n-1");
  ZeroSet zs = zeros(family, std::nullopt, n, cluster_tol);
  const Side poly_side = side;
  PartialFractionCheck out;
  out.reconstruction = CMatrix::Zero(N, N);

  for (size_t j = 0; j < zs.nodes.size(); ++j) {
    const Complex x = zs.nodes[j];
    const int mult = zs.multiplicities[j];
    if (mult > 2) throw Error(Errc::degenerate_zeros, "partial_fractions: multiplicity above 2");
    const int order_p = (mult == 2) ? 3 : 1;
    ScaledJet pj = eval_jet(family, std::nullopt, 0, poly_side, false, order_p, n, x);
    AdjDetJet ad = adjdet_of(pj, order_p);
    CMatrix Rv, Rd;
    eval_poly(R, x, N, Rv, Rd);
    // Pole coefficients of R P^{-1} (left) / P^{-1} R (right).
    const double escale = std::exp(-pj.e);
    const Complex dz = z_test - x;
    if (std::abs(dz) < 1e-9 * std::max(1.0, std::abs(x)))
      throw Error(Errc::out_of_range, "partial_fractions: z_test too close to a zero");
    if (mult == 1) {
      const Complex d1 = ad.det[1];
      if (std::abs(d1) < 1e-12 * det_scale(ad.det))
        throw Error(Errc::singular_weight, "partial_fractions: det derivative below threshold");
      CMatrix c1 = (side == Side::left) ? CMatrix(Rv * ad.adj[0] / d1)
                                        : CMatrix(ad.adj[0] * Rv / d1);
      out.reconstruction += (c1 * escale) / dz;
    } else {
      const Complex d2 = ad.det[2];
      const Complex d3 = ad.det[3];
      if (std::abs(d2) < 1e-12 * det_scale(ad.det))
        throw Error(Errc::singular_weight, "partial_fractions: det derivative below threshold");
      const Complex c = Complex(2.0) / d2;
      const Complex d = Complex(2.0) * d3 / (Complex(3.0) * d2 * d2);
      CMatrix c2, c1;
      if (side == Side::left) {
        c2 = c * (Rv * ad.adj[0]);
        c1 = c * (Rd * ad.adj[0] + Rv * ad.adj[1]) - d * (Rv * ad.adj[0]);
      } else {
        c2 = c * (ad.adj[0] * Rv);
        c1 = c * (ad.adj[0] * Rd + ad.adj[1] * Rv) - d * (ad.adj[0] * Rv);
      }
      out.reconstruction += (c1 * escale) / dz + (c2 * escale) / (dz * dz);
    }
  }

  ScaledJet pz = eval_jet(family, std::nullopt, 0, poly_side, false, 0, n, z_test);
  CMatrix Rv, Rd;
  eval_poly(R, z_test, N, Rv, Rd);
  const CMatrix Pinv = mat_inv(pz.m[0]) * std::exp(-pz.e);
  out.reference = (side == Side::left) ? CMatrix(Rv * Pinv) : CMatrix(Pinv * Rv);
  return out;
}

}  // namespace mbpoly
