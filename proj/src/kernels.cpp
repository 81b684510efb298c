#include "wsdp/kernels.hpp"

#include "wsdp/linalg.hpp"

#include <omp.h>

namespace wsdp::kernels {

namespace {

void check_congruence(const SymMatrix& a, const Matrix& t) {
  if (!t.square() || t.rows() != a.order()) throw DimensionError("congruence: T must be square of the same order as A");
}

void check_reformulate(std::span<const SymMatrix> a, const Matrix& g, const Matrix& t) {
  if (g.rows() != a.size() || g.cols() != a.size()) throw DimensionError("reformulate: G must be m x m");
  for (const auto& ai : a)
    if (ai.order() != t.rows() || !t.square()) throw DimensionError("reformulate: T must be n x n");
}

SymMatrix combine_row(std::span<const SymMatrix> a, const Matrix& g, std::size_t i, std::size_t n) {
  SymMatrix s(n);
  for (std::size_t j = 0; j < a.size(); ++j) {
    const Rational& gij = g(i, j);
    if (gij == 0) continue;
    s.add_scaled(a[j], gij);
  }
  return s;
}

bool is_identity(const Matrix& t) { return t == Matrix::identity(t.rows()); }

}  // namespace

namespace serial {

SymMatrix congruence(const SymMatrix& a, const Matrix& t) {
  check_congruence(a, t);
  const std::size_t n = a.order();
  Matrix at(n, n);  // A T
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) {
      const Rational& akl = a(k, l);
      if (akl == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (t(l, j) != 0) at(k, j) += akl * t(l, j);
    }
  SymMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Rational& tki = t(k, i);
      if (tki == 0) continue;
      for (std::size_t j = i; j < n; ++j)
        if (at(k, j) != 0) c.at(i, j) += tki * at(k, j);
    }
  return c;
}

std::vector<SymMatrix> reformulate(std::span<const SymMatrix> a, const Matrix& g, const Matrix& t) {
  check_reformulate(a, g, t);
  const std::size_t n = t.rows();
  const bool plain = is_identity(t);
  std::vector<SymMatrix> out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    SymMatrix s = combine_row(a, g, i, n);
    out.push_back(plain ? std::move(s) : serial::congruence(s, t));
  }
  return out;
}

Matrix inner_products(std::span<const SymMatrix> a, std::span<const SymMatrix> x) {
  Matrix out(a.size(), x.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) out(i, j) = inner(a[i], x[j]);
  return out;
}

}  // namespace serial

namespace parallel {

SymMatrix congruence(const SymMatrix& a, const Matrix& t) {
  check_congruence(a, t);
  const std::size_t n = a.order();
  Matrix at(n, n);
  const auto sn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t sk = 0; sk < sn; ++sk) {
    const auto k = static_cast<std::size_t>(sk);
    for (std::size_t l = 0; l < n; ++l) {
      const Rational& akl = a(k, l);
      if (akl == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (t(l, j) != 0) at(k, j) += akl * t(l, j);
    }
  }
  // Row i of the result only touches packed slots of row i.
  SymMatrix c(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t si = 0; si < sn; ++si) {
    const auto i = static_cast<std::size_t>(si);
    for (std::size_t k = 0; k < n; ++k) {
      const Rational& tki = t(k, i);
      if (tki == 0) continue;
      for (std::size_t j = i; j < n; ++j)
        if (at(k, j) != 0) c.at(i, j) += tki * at(k, j);
    }
  }
  return c;
}

std::vector<SymMatrix> reformulate(std::span<const SymMatrix> a, const Matrix& g, const Matrix& t) {
  check_reformulate(a, g, t);
  const std::size_t n = t.rows();
  const bool plain = is_identity(t);
  std::vector<SymMatrix> out(a.size());
  const auto sm = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t si = 0; si < sm; ++si) {
    const auto i = static_cast<std::size_t>(si);
    SymMatrix s = combine_row(a, g, i, n);
    out[i] = plain ? std::move(s) : serial::congruence(s, t);
  }
  return out;
}

Matrix inner_products(std::span<const SymMatrix> a, std::span<const SymMatrix> x) {
  Matrix out(a.size(), x.size());
  const auto total = static_cast<std::ptrdiff_t>(a.size() * x.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t s = 0; s < total; ++s) {
    const auto i = static_cast<std::size_t>(s) / x.size();
    const auto j = static_cast<std::size_t>(s) % x.size();
    out(i, j) = inner(a[i], x[j]);
  }
  return out;
}

}  // namespace parallel

}  // namespace wsdp::kernels
