#pragma once

#include "wsdp/matrix.hpp"

#include <optional>
#include <vector>

namespace wsdp {

/// Trace inner product trace(A B) of two symmetric matrices.
Rational inner(const SymMatrix& a, const SymMatrix& b);

/// trace(M^T Y) for general matrices of equal shape.
Rational inner(const Matrix& m, const Matrix& y);

/// T^T A T. T must be square of the same order as A; invertibility is not checked.
SymMatrix congruence(const SymMatrix& a, const Matrix& t);

/// Pivoted LDL^T factors: A = sum_k d[k] * l[k] * l[k]^T, with pivot order
/// `pivots` and l[k](pivots[k]) == 1.
struct LdlFactors {
  std::vector<std::size_t> pivots;
  std::vector<Rational> d;
  std::vector<Vector> l;

  SymMatrix reconstruct(std::size_t n) const;
};

/// Outcome of the exact PSD decision. Exactly one of `factors` (PSD) and
/// `witness` (not PSD, w^T A w < 0) is set.
struct PsdVerdict {
  std::optional<LdlFactors> factors;
  std::optional<Vector> witness;

  bool psd() const { return factors.has_value(); }
  /// All n pivots strictly positive.
  bool positive_definite() const;
};

/// Decides A >= 0 exactly. A zero pivot is accepted only when its residual
/// row vanishes; otherwise a violating vector is produced.
PsdVerdict psd_certify(const SymMatrix& a);

/// w^T A w
Rational quadratic_form(const SymMatrix& a, const Vector& w);

struct LinearSolution {
  Vector particular;
  std::vector<Vector> nullspace;
};

/// Exact solution set of A x = b, or std::nullopt when inconsistent.
std::optional<LinearSolution> solve_linear(const Matrix& a, const Vector& b);

Rational determinant(Matrix a);

/// Exact inverse, or std::nullopt when singular.
std::optional<Matrix> inverse(const Matrix& a);

/// Principal submatrix on `rows` (in the given order).
SymMatrix principal(const SymMatrix& a, const std::vector<std::size_t>& rows);

Rational frobenius_squared(const SymMatrix& a);

}  // namespace wsdp
