#include "wsdp/linalg.hpp"

#include "wsdp/kernels.hpp"

#include <algorithm>
#include <numeric>

namespace wsdp {

Rational inner(const SymMatrix& a, const SymMatrix& b) {
  if (a.order() != b.order()) throw DimensionError("inner: orders differ");
  Rational diag = 0, off = 0;
  const std::size_t n = a.order();
  for (std::size_t i = 0; i < n; ++i) {
    if (a(i, i) != 0 && b(i, i) != 0) diag += a(i, i) * b(i, i);
    for (std::size_t j = i + 1; j < n; ++j)
      if (a(i, j) != 0 && b(i, j) != 0) off += a(i, j) * b(i, j);
  }
  return diag + 2 * off;
}

Rational inner(const Matrix& m, const Matrix& y) {
  if (m.rows() != y.rows() || m.cols() != y.cols()) throw DimensionError("inner: shapes differ");
  Rational s = 0;
  for (std::size_t k = 0; k < m.data().size(); ++k)
    if (m.data()[k] != 0) s += m.data()[k] * y.data()[k];
  return s;
}

SymMatrix congruence(const SymMatrix& a, const Matrix& t) { return kernels::parallel::congruence(a, t); }

SymMatrix LdlFactors::reconstruct(std::size_t n) const {
  SymMatrix out(n);
  for (std::size_t k = 0; k < pivots.size(); ++k) {
    if (d[k] == 0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      if (l[k][i] == 0) continue;
      Rational di = d[k] * l[k][i];
      for (std::size_t j = i; j < n; ++j)
        if (l[k][j] != 0) out.at(i, j) += di * l[k][j];
    }
  }
  return out;
}

bool PsdVerdict::positive_definite() const {
  if (!factors) return false;
  return std::all_of(factors->d.begin(), factors->d.end(), [](const Rational& v) { return v > 0; });
}

Rational quadratic_form(const SymMatrix& a, const Vector& w) {
  if (w.size() != a.order()) throw DimensionError("quadratic form: size mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 0) continue;
    s += a(i, i) * w[i] * w[i];
    for (std::size_t j = i + 1; j < w.size(); ++j)
      if (w[j] != 0 && a(i, j) != 0) s += 2 * a(i, j) * w[i] * w[j];
  }
  return s;
}

namespace {

// Back-substitutes a residual witness through the eliminated positive pivots.
Vector lift_witness(Vector w, const LdlFactors& f) {
  for (std::size_t k = f.pivots.size(); k-- > 0;) {
    if (f.d[k] == 0) continue;
    const std::size_t p = f.pivots[k];
    Rational s = 0;
    for (std::size_t j = 0; j < w.size(); ++j)
      if (j != p && f.l[k][j] != 0 && w[j] != 0) s += f.l[k][j] * w[j];
    w[p] = -s;
  }
  return w;
}

}  // namespace

PsdVerdict psd_certify(const SymMatrix& a) {
  const std::size_t n = a.order();
  Matrix s = a.to_dense();
  std::vector<std::size_t> remaining(n);
  std::iota(remaining.begin(), remaining.end(), std::size_t{0});
  LdlFactors f;

  auto fail = [&](Vector residual_witness) {
    PsdVerdict v;
    v.witness = lift_witness(std::move(residual_witness), f);
    return v;
  };

  while (!remaining.empty()) {
    for (std::size_t i : remaining)
      if (s(i, i) < 0) {
        Vector w(n);
        w[i] = 1;
        return fail(std::move(w));
      }

    bool eliminated_zero = false;
    for (auto it = remaining.begin(); it != remaining.end(); ++it) {
      const std::size_t i = *it;
      if (s(i, i) != 0) continue;
      auto nz = std::find_if(remaining.begin(), remaining.end(),
                             [&](std::size_t j) { return j != i && s(i, j) != 0; });
      if (nz != remaining.end()) {
        // (t e_i + e_j)^T S (t e_i + e_j) = s_jj + 2 t s_ij = -1
        const std::size_t j = *nz;
        Vector w(n);
        w[i] = -(s(j, j) + 1) / (2 * s(i, j));
        w[j] = 1;
        return fail(std::move(w));
      }
      f.pivots.push_back(i);
      f.d.push_back(0);
      Vector l(n);
      l[i] = 1;
      f.l.push_back(std::move(l));
      remaining.erase(it);
      eliminated_zero = true;
      break;
    }
    if (eliminated_zero) continue;

    const std::size_t p = remaining.front();
    const Rational d = s(p, p);
    Vector l(n);
    for (std::size_t j : remaining) l[j] = s(p, j) / d;
    remaining.erase(remaining.begin());
    for (std::size_t i : remaining) {
      if (l[i] == 0) continue;
      for (std::size_t j : remaining)
        if (s(p, j) != 0) s(i, j) -= l[i] * s(p, j);
    }
    f.pivots.push_back(p);
    f.d.push_back(d);
    f.l.push_back(std::move(l));
  }

  PsdVerdict v;
  v.factors = std::move(f);
  return v;
}

std::optional<LinearSolution> solve_linear(const Matrix& a, const Vector& b) {
  if (a.rows() != b.size()) throw DimensionError("solve_linear: rhs size differs from row count");
  const std::size_t rows = a.rows(), cols = a.cols();
  Matrix aug(rows, cols + 1);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) aug(i, j) = a(i, j);
    aug(i, cols) = b[i];
  }

  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && aug(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j <= cols; ++j) std::swap(aug(piv, j), aug(r, j));
    const Rational inv = 1 / aug(r, c);
    for (std::size_t j = c; j <= cols; ++j) aug(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || aug(i, c) == 0) continue;
      const Rational factor = aug(i, c);
      for (std::size_t j = c; j <= cols; ++j)
        if (aug(r, j) != 0) aug(i, j) -= factor * aug(r, j);
    }
    pivot_cols.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (aug(i, cols) != 0) return std::nullopt;

  LinearSolution sol;
  sol.particular.assign(cols, Rational(0));
  for (std::size_t k = 0; k < pivot_cols.size(); ++k) sol.particular[pivot_cols[k]] = aug(k, cols);

  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivot_cols) is_pivot[c] = true;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vector v(cols);
    v[free] = 1;
    for (std::size_t k = 0; k < pivot_cols.size(); ++k) v[pivot_cols[k]] = -aug(k, free);
    sol.nullspace.push_back(std::move(v));
  }
  return sol;
}

Rational determinant(Matrix a) {
  if (!a.square()) throw DimensionError("determinant of non-square matrix");
  const std::size_t n = a.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a(piv, c) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a(i, c) == 0) continue;
      const Rational factor = a(i, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j)
        if (a(c, j) != 0) a(i, j) -= factor * a(c, j);
    }
  }
  return det;
}

std::optional<Matrix> inverse(const Matrix& a) {
  if (!a.square()) throw DimensionError("inverse of non-square matrix");
  const std::size_t n = a.rows();
  Matrix w = a, inv = Matrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && w(piv, c) == 0) ++piv;
    if (piv == n) return std::nullopt;
    if (piv != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(w(piv, j), w(c, j));
        std::swap(inv(piv, j), inv(c, j));
      }
    const Rational scale = 1 / w(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      w(c, j) *= scale;
      inv(c, j) *= scale;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || w(i, c) == 0) continue;
      const Rational factor = w(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        if (w(c, j) != 0) w(i, j) -= factor * w(c, j);
        if (inv(c, j) != 0) inv(i, j) -= factor * inv(c, j);
      }
    }
  }
  return inv;
}

SymMatrix principal(const SymMatrix& a, const std::vector<std::size_t>& rows) {
  SymMatrix out(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i; j < rows.size(); ++j) out.set(i, j, a(rows[i], rows[j]));
  return out;
}

Rational frobenius_squared(const SymMatrix& a) { return inner(a, a); }

}  // namespace wsdp
