#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "mbpoly/linalg.hpp"

namespace mbpoly {

/// One step of recurrence data: x V_n = A_n V_{n+1} + B_n V_n + C_n V_{n-1}.
struct Triple {
  CMatrix A, B, C;
};

/// D_n together with its principal square root and inverse square root.
struct ScalingTriple {
  CMatrix D, D_half, D_half_inv;
};

struct LimitTriple {
  CMatrix A, B, C;
  bool singular_A = false;
  bool singular_C = false;
};

enum class FamilyKind { constant, laguerre_christoffel, paper_example_2, custom_table, derived };

/// Provider of recurrence triples (A_n, B_n, C_n). Immutable after construction.
class CoefficientFamily {
public:
  static CoefficientFamily constant(const CMatrix& A, const CMatrix& B, const CMatrix& C);
  static CoefficientFamily laguerre_christoffel(double alpha);  // N = 2, alpha > -1
  static CoefficientFamily paper_example_2();                   // N = 2
  static CoefficientFamily custom_table(std::vector<Triple> table);

  Triple coeffs(int n) const;
  int dim() const;
  FamilyKind kind() const;
  std::string kind_name() const;
  /// Largest usable index (INT_MAX for closed-form families).
  int max_index() const;

  /// Wraps another family's triples through a fixed transform; used for the
  /// scaled-coefficient view D_k^{-1/2} X_n D_k^{-1/2}.
  static CoefficientFamily derived(int N, std::string name,
                                   std::function<Triple(int)> provider,
                                   int max_index);

private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  explicit CoefficientFamily(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
};

enum class ScalingKind { identity, scalar_power, paper_laguerre, paper_example_2, custom_table };

class ScalingSequence {
public:
  static ScalingSequence identity(int N);
  static ScalingSequence scalar_power(int N, double p);  // D_n = n^p I, D_0 := I
  static ScalingSequence paper_laguerre();               // D_n = n^2 I, D_0 := I
  static ScalingSequence paper_example_2();              // D_0 = D_1 := I
  static ScalingSequence custom_table(std::vector<CMatrix> table);

  ScalingTriple at(int n) const;
  int dim() const;
  int start_index() const;
  bool increasing() const;
  ScalingKind kind() const;
  std::string kind_name() const;

private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  explicit ScalingSequence(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
};

/// D_k^{-1/2} (A_n, B_n, C_n) D_k^{-1/2}.
Triple scaled_coeffs(const CoefficientFamily& family, const ScalingSequence& seq, int n, int k);

/// The family n -> scaled_coeffs(family, seq, n, k); the frame in which the
/// scaled polynomials become an ordinary (normalized) recurrence family.
CoefficientFamily scaled_normalized(const CoefficientFamily& family, const ScalingSequence& seq,
                                    int k);

/// Declared analytic limits for builtin (family, scaling) pairs; otherwise a
/// probe at n_probe with a convergence check against 2*n_probe (< 1e-3).
LimitTriple limits(const CoefficientFamily& family, const ScalingSequence& seq,
                   int n_probe = 256);

}  // namespace mbpoly
