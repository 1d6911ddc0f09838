#include "mbpoly/coefficients.hpp"

#include <climits>
#include <cmath>
#include <functional>

namespace mbpoly {

namespace {

CMatrix ident(int N) { return CMatrix::Identity(N, N); }

bool near_singular(const CMatrix& m, double tol) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return true;
  return s(s.size() - 1) <= tol * std::max(s(0), 1.0);
}

}  // namespace

struct CoefficientFamily::Impl {
  int N = 1;
  FamilyKind kind = FamilyKind::constant;
  std::string name;
  int max_index = INT_MAX;
  // constant
  Triple konst;
  // laguerre
  double alpha = 0.0;
  // custom
  std::vector<Triple> table;
  // derived
  std::function<Triple(int)> provider;

  Triple triple_at(int n) const {
    switch (kind) {
      case FamilyKind::constant:
        return konst;
      case FamilyKind::laguerre_christoffel: {
        Triple t;
        t.A = ident(2);
        t.B = CMatrix(2, 2);
        t.B << Complex(2.0 * n + alpha + 2.0), Complex(-2.0 / (alpha + 1.0)),
            Complex(0.0), Complex(2.0 * n + alpha + 2.0);
        t.C = Complex(n * (alpha + n + 1.0)) * ident(2);
        return t;
      }
      case FamilyKind::paper_example_2: {
        // Formulas hold for n >= 1 (A_0 would be singular, B_0 undefined);
        // index 0 is backfilled with the n = 1 triple.
        const double m = (n >= 1) ? n : 1;
        Triple t;
        t.A = CMatrix(2, 2);
        t.A << Complex(2.0 * m * m), Complex(0.0), Complex(7.0 * m * m + 1.0),
            Complex(5.0 * m * m);
        t.B = CMatrix(2, 2);
        t.B << Complex(3.0 / m), Complex(4.0 / m), Complex(m), Complex(8.0 * m * m);
        // C_n(2,2) = n^2; the printed n is inconsistent with the paper's own
        // scaled display and the limit C = [[2,0],[0,1]].
        t.C = CMatrix(2, 2);
        t.C << Complex(2.0 * m * m), Complex(2.0 * m), Complex(0.0), Complex(m * m);
        return t;
      }
      case FamilyKind::custom_table:
        return table[static_cast<size_t>(n)];
      case FamilyKind::derived:
        return provider(n);
    }
    throw Error(Errc::invalid_config, "coeffs: unknown family kind");
  }
};

CoefficientFamily CoefficientFamily::constant(const CMatrix& A, const CMatrix& B,
                                              const CMatrix& C) {
  if (A.rows() != A.cols() || B.rows() != B.cols() || C.rows() != C.cols() ||
      A.rows() != B.rows() || A.rows() != C.rows())
    throw Error(Errc::invalid_config, "constant family: matrices must be square, same size");
  auto impl = std::make_shared<Impl>();
  impl->N = static_cast<int>(A.rows());
  impl->kind = FamilyKind::constant;
  impl->name = "constant";
  impl->konst = {A, B, C};
  return CoefficientFamily(impl);
}

CoefficientFamily CoefficientFamily::laguerre_christoffel(double alpha) {
  if (!(alpha > -1.0))
    throw Error(Errc::invalid_config, "laguerre_christoffel: requires alpha > -1");
  auto impl = std::make_shared<Impl>();
  impl->N = 2;
  impl->kind = FamilyKind::laguerre_christoffel;
  impl->name = "laguerre_christoffel";
  impl->alpha = alpha;
  return CoefficientFamily(impl);
}

CoefficientFamily CoefficientFamily::paper_example_2() {
  auto impl = std::make_shared<Impl>();
  impl->N = 2;
  impl->kind = FamilyKind::paper_example_2;
  impl->name = "paper_example_2";
  return CoefficientFamily(impl);
}

CoefficientFamily CoefficientFamily::custom_table(std::vector<Triple> table) {
  if (table.empty()) throw Error(Errc::invalid_config, "custom_table: empty table");
  const auto N = table[0].A.rows();
  for (const auto& t : table)
    if (t.A.rows() != N || t.A.cols() != N || t.B.rows() != N || t.B.cols() != N ||
        t.C.rows() != N || t.C.cols() != N)
      throw Error(Errc::invalid_config, "custom_table: inconsistent matrix sizes");
  auto impl = std::make_shared<Impl>();
  impl->N = static_cast<int>(N);
  impl->kind = FamilyKind::custom_table;
  impl->name = "custom_table";
  impl->max_index = static_cast<int>(table.size()) - 1;
  impl->table = std::move(table);
  return CoefficientFamily(impl);
}

CoefficientFamily CoefficientFamily::derived(int N, std::string name,
                                             std::function<Triple(int)> provider,
                                             int max_index) {
  auto impl = std::make_shared<Impl>();
  impl->N = N;
  impl->kind = FamilyKind::derived;
  impl->name = std::move(name);
  impl->provider = std::move(provider);
  impl->max_index = max_index;
  return CoefficientFamily(impl);
}

Triple CoefficientFamily::coeffs(int n) const {
  if (n < 0 || n > impl_->max_index)
    throw Error(Errc::out_of_range, "coeffs: index outside family range");
  return impl_->triple_at(n);
}

int CoefficientFamily::dim() const { return impl_->N; }
FamilyKind CoefficientFamily::kind() const { return impl_->kind; }
std::string CoefficientFamily::kind_name() const { return impl_->name; }
int CoefficientFamily::max_index() const { return impl_->max_index; }

// ---------------------------------------------------------------------------

struct ScalingSequence::Impl {
  int N = 1;
  ScalingKind kind = ScalingKind::identity;
  std::string name;
  int start = 0;
  bool increasing = true;
  double p = 0.0;
  std::vector<CMatrix> table;

  ScalingTriple at(int n) const {
    switch (kind) {
      case ScalingKind::identity:
        return {ident(N), ident(N), ident(N)};
      case ScalingKind::scalar_power: {
        if (n < 1) return {ident(N), ident(N), ident(N)};
        const double d = std::pow(static_cast<double>(n), p);
        const double h = std::pow(static_cast<double>(n), p / 2.0);
        return {Complex(d) * ident(N), Complex(h) * ident(N), Complex(1.0 / h) * ident(N)};
      }
      case ScalingKind::paper_laguerre: {
        if (n < 1) return {ident(2), ident(2), ident(2)};
        const double dn = static_cast<double>(n);
        return {Complex(dn * dn) * ident(2), Complex(dn) * ident(2),
                Complex(1.0 / dn) * ident(2)};
      }
      case ScalingKind::paper_example_2: {
        if (n < 2) return {ident(2), ident(2), ident(2)};
        const double dn = static_cast<double>(n);
        const double f = std::pow(dn, 8) / ((dn * dn - 1.0) * (dn * dn - 1.0));
        CMatrix D(2, 2);
        D << Complex(f * (1.0 / (dn * dn) + 1.0 / std::pow(dn, 4))),
            Complex(-2.0 * f / std::pow(dn, 3)),
            Complex(-2.0 * f / std::pow(dn, 3)),
            Complex(f * (1.0 / (dn * dn) + 1.0 / std::pow(dn, 4)));
        const double g = std::pow(dn, 4) / (dn * dn - 1.0);
        CMatrix Dh(2, 2);
        Dh << Complex(g / dn), Complex(-g / (dn * dn)), Complex(-g / (dn * dn)),
            Complex(g / dn);
        CMatrix Dhi(2, 2);
        Dhi << Complex(1.0 / dn), Complex(1.0 / (dn * dn)), Complex(1.0 / (dn * dn)),
            Complex(1.0 / dn);
        return {D, Dh, Dhi};
      }
      case ScalingKind::custom_table: {
        const CMatrix& D = table[static_cast<size_t>(n)];
        CMatrix Dh = sqrtm_spd(D);
        CMatrix Dhi = mat_inv(Dh);
        return {D, Dh, Dhi};
      }
    }
    throw Error(Errc::invalid_config, "scaling: unknown kind");
  }
};

ScalingSequence ScalingSequence::identity(int N) {
  auto impl = std::make_shared<Impl>();
  impl->N = N;
  impl->kind = ScalingKind::identity;
  impl->name = "identity";
  return ScalingSequence(impl);
}

ScalingSequence ScalingSequence::scalar_power(int N, double p) {
  auto impl = std::make_shared<Impl>();
  impl->N = N;
  impl->kind = ScalingKind::scalar_power;
  impl->name = "scalar_power";
  impl->p = p;
  impl->start = 1;
  impl->increasing = (p >= 0.0);
  return ScalingSequence(impl);
}

ScalingSequence ScalingSequence::paper_laguerre() {
  auto impl = std::make_shared<Impl>();
  impl->N = 2;
  impl->kind = ScalingKind::paper_laguerre;
  impl->name = "paper_laguerre";
  impl->start = 1;
  return ScalingSequence(impl);
}

ScalingSequence ScalingSequence::paper_example_2() {
  auto impl = std::make_shared<Impl>();
  impl->N = 2;
  impl->kind = ScalingKind::paper_example_2;
  impl->name = "paper_example_2";
  impl->start = 2;
  return ScalingSequence(impl);
}

ScalingSequence ScalingSequence::custom_table(std::vector<CMatrix> table) {
  if (table.empty()) throw Error(Errc::invalid_config, "scaling custom_table: empty table");
  auto impl = std::make_shared<Impl>();
  impl->N = static_cast<int>(table[0].rows());
  impl->kind = ScalingKind::custom_table;
  impl->name = "custom_table";
  impl->increasing = false;  // unknown; callers may verify
  impl->table = std::move(table);
  return ScalingSequence(impl);
}

ScalingTriple ScalingSequence::at(int n) const {
  if (n < 0) throw Error(Errc::out_of_range, "scaling: negative index");
  if (impl_->kind == ScalingKind::custom_table &&
      n >= static_cast<int>(impl_->table.size()))
    throw Error(Errc::out_of_range, "scaling: index outside table");
  ScalingTriple t = impl_->at(n);
  // Consistency: (D^{1/2})^2 = D and D^{1/2} D^{-1/2} = I to 1e-10.
  const double s = std::max(1.0, t.D.norm());
  if ((t.D_half * t.D_half - t.D).norm() > 1e-10 * s ||
      (t.D_half * t.D_half_inv - ident(dim())).norm() > 1e-10)
    throw Error(Errc::not_spd, "scaling: inconsistent square-root triple");
  return t;
}

int ScalingSequence::dim() const { return impl_->N; }
int ScalingSequence::start_index() const { return impl_->start; }
bool ScalingSequence::increasing() const { return impl_->increasing; }
ScalingKind ScalingSequence::kind() const { return impl_->kind; }
std::string ScalingSequence::kind_name() const { return impl_->name; }

// ---------------------------------------------------------------------------

Triple scaled_coeffs(const CoefficientFamily& family, const ScalingSequence& seq, int n,
                     int k) {
  if (family.dim() != seq.dim())
    throw Error(Errc::invalid_config, "scaled_coeffs: family/scaling dimension mismatch");
  const CMatrix S = seq.at(k).D_half_inv;
  Triple t = family.coeffs(n);
  return {S * t.A * S, S * t.B * S, S * t.C * S};
}

CoefficientFamily scaled_normalized(const CoefficientFamily& family,
                                    const ScalingSequence& seq, int k) {
  if (family.dim() != seq.dim())
    throw Error(Errc::invalid_config, "scaled_normalized: dimension mismatch");
  const CMatrix S = seq.at(k).D_half_inv;
  auto base = family;  // shared-ptr copy; cheap and immutable
  return CoefficientFamily::derived(
      family.dim(), family.kind_name() + "_scaled",
      [base, S](int n) {
        Triple t = base.coeffs(n);
        return Triple{S * t.A * S, S * t.B * S, S * t.C * S};
      },
      family.max_index());
}

LimitTriple limits(const CoefficientFamily& family, const ScalingSequence& seq, int n_probe) {
  const int N = family.dim();
  LimitTriple out;
  bool declared = false;
  if (family.kind() == FamilyKind::constant && seq.kind() == ScalingKind::identity) {
    Triple t = family.coeffs(0);
    out.A = t.A;
    out.B = t.B;
    out.C = t.C;
    declared = true;
  } else if (family.kind() == FamilyKind::laguerre_christoffel &&
             seq.kind() == ScalingKind::paper_laguerre) {
    out.A = CMatrix::Zero(2, 2);
    out.B = CMatrix::Zero(2, 2);
    out.C = ident(2);
    declared = true;
  } else if (family.kind() == FamilyKind::paper_example_2 &&
             seq.kind() == ScalingKind::paper_example_2) {
    out.A = CMatrix(2, 2);
    out.A << Complex(2), Complex(0), Complex(7), Complex(5);
    out.B = CMatrix(2, 2);
    out.B << Complex(0), Complex(0), Complex(0), Complex(8);
    out.C = CMatrix(2, 2);
    out.C << Complex(2), Complex(0), Complex(0), Complex(1);
    declared = true;
  }
  if (!declared) {
    if (2 * n_probe > family.max_index())
      throw Error(Errc::out_of_range, "limits: probe index outside family range");
    Triple a = scaled_coeffs(family, seq, n_probe, n_probe);
    Triple b = scaled_coeffs(family, seq, 2 * n_probe, 2 * n_probe);
    const double d = std::max({(a.A - b.A).norm(), (a.B - b.B).norm(), (a.C - b.C).norm()});
    if (d >= 1e-3)
      throw Error(Errc::not_converged, "limits: probe did not converge (diff " +
                                           std::to_string(d) + ")");
    out.A = b.A;
    out.B = b.B;
    out.C = b.C;
  }
  out.singular_A = near_singular(out.A, 1e-10);
  out.singular_C = near_singular(out.C, 1e-10);
  (void)N;
  return out;
}

}  // namespace mbpoly
