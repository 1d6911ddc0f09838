#include "mbpoly/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace mbpoly {

int ZeroSet::total_multiplicity() const {
  int s = 0;
  for (int m : multiplicities) s += m;
  return s;
}

BlockJacobi build(const CoefficientFamily& family,
                  const std::optional<ScalingSequence>& scaling, int k, int n) {
  if (n < 1) throw Error(Errc::out_of_range, "build: n must be >= 1");
  const int N = family.dim();
  auto fam = scaling ? scaled_normalized(family, *scaling, k) : family;
  BlockJacobi J;
  J.n_blocks = n;
  J.block_dim = N;
  J.dense = CMatrix::Zero(static_cast<Eigen::Index>(n) * N, static_cast<Eigen::Index>(n) * N);
  for (int i = 0; i < n; ++i) {
    const Triple t = fam.coeffs(i);
    J.dense.block(i * N, i * N, N, N) = t.B;
    if (i + 1 < n) {
      J.dense.block(i * N, (i + 1) * N, N, N) = t.A;
      J.dense.block((i + 1) * N, i * N, N, N) = fam.coeffs(i + 1).C;
    }
  }
  return J;
}

ZeroSet cluster_zeros(std::vector<Complex> ev, double cluster_tol) {
  std::sort(ev.begin(), ev.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  ZeroSet zs;
  zs.cluster_tol = cluster_tol;
  for (Complex w : ev) {
    if (!zs.nodes.empty()) {
      Complex& last = zs.nodes.back();
      const double tol = cluster_tol * std::max(1.0, std::abs(last));
      if (std::abs(w - last) <= tol) {
        const int m = zs.multiplicities.back();
        if (m >= 2)
          throw Error(Errc::degenerate_zeros, "zeros: cluster of multiplicity >= 3");
        last = (last * static_cast<double>(m) + w) / static_cast<double>(m + 1);
        zs.multiplicities.back() = m + 1;
        continue;
      }
    }
    zs.nodes.push_back(w);
    zs.multiplicities.push_back(1);
  }
  // Clustering may shift centroids; re-sort nodes (multiplicities travel along).
  std::vector<size_t> idx(zs.nodes.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
    if (zs.nodes[a].real() != zs.nodes[b].real())
      return zs.nodes[a].real() < zs.nodes[b].real();
    return zs.nodes[a].imag() < zs.nodes[b].imag();
  });
  ZeroSet out;
  out.cluster_tol = cluster_tol;
  for (size_t i : idx) {
    out.nodes.push_back(zs.nodes[i]);
    out.multiplicities.push_back(zs.multiplicities[i]);
  }
  return out;
}

ZeroSet zeros(const CoefficientFamily& family, const std::optional<ScalingSequence>& scaling,
              int n, double cluster_tol) {
  BlockJacobi J = build(family, scaling, /*k=*/n, n);
  Spectrum s = eig_general(J.dense);
  ZeroSet zs = cluster_zeros(std::move(s.eigenvalues), cluster_tol);
  if (zs.total_multiplicity() != n * family.dim())
    throw Error(Errc::degenerate_zeros, "zeros: multiplicity bookkeeping failed");
  return zs;
}

double gershgorin_bound(const CoefficientFamily& family, const ScalingSequence& scaling,
                        int n) {
  if (!scaling.increasing())
    throw Error(Errc::invalid_config, "gershgorin_bound: scaling not flagged increasing");
  double M = 0.0;
  for (int k = std::max(1, scaling.start_index()); k <= n; ++k) {
    auto fam = scaled_normalized(family, scaling, k);
    for (int i = 0; i < k; ++i) {
      const Triple t = fam.coeffs(i);
      double row = norms(t.B).inf;
      if (i + 1 < k) row += norms(t.A).inf;
      if (i > 0) row += norms(t.C).inf;
      M = std::max(M, row);
    }
  }
  return M;
}

namespace {

std::vector<CMatrix> moments_at_depth(const CoefficientFamily& family, int l_max, int depth) {
  const int N = family.dim();
  BlockJacobi J = build(family, std::nullopt, 0, depth);
  std::vector<CMatrix> out;
  out.reserve(static_cast<size_t>(l_max) + 1);
  out.push_back(CMatrix::Identity(N, N));
  CMatrix P = CMatrix::Identity(J.dense.rows(), J.dense.cols());
  for (int l = 1; l <= l_max; ++l) {
    P = P * J.dense;
    out.push_back(P.topLeftCorner(N, N));
  }
  return out;
}

}  // namespace

std::vector<CMatrix> moments(const CoefficientFamily& family, int l_max) {
  if (l_max < 0) throw Error(Errc::out_of_range, "moments: l_max must be >= 0");
  const int depth = std::max(1, l_max / 2 + 2);
  auto a = moments_at_depth(family, l_max, depth);
  auto b = moments_at_depth(family, l_max, depth + 1);
  for (int l = 0; l <= l_max; ++l) {
    const double scale = std::max(1.0, a[static_cast<size_t>(l)].norm());
    if ((a[static_cast<size_t>(l)] - b[static_cast<size_t>(l)]).norm() > 1e-12 * scale)
      throw Error(Errc::no_convergence, "moments: truncation depth dependence detected");
  }
  return b;
}

}  // namespace mbpoly
