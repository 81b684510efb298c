#include "wsdp/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace wsdp {

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DimensionError("ragged matrix literal");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& v) { return v == 0; });
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product: inner dimensions differ");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Rational& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (b(k, j) != 0) c(i, j) += aik * b(k, j);
    }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("matrix sum: shapes differ");
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

Matrix operator*(const Rational& s, const Matrix& a) {
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
  return c;
}

Vector operator*(const Matrix& a, const Vector& x) {
  if (a.cols() != x.size()) throw DimensionError("matrix-vector product: sizes differ");
  Vector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0) y[i] += a(i, j) * x[j];
  return y;
}

SymMatrix::SymMatrix(std::size_t n) : n_(n), upper_(n * (n + 1) / 2) {}

SymMatrix::SymMatrix(std::initializer_list<std::initializer_list<Rational>> rows)
    : SymMatrix(Matrix(rows).rows()) {
  *this = from_dense(Matrix(rows));
}

SymMatrix SymMatrix::identity(std::size_t n) {
  SymMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

SymMatrix SymMatrix::unit(std::size_t n, std::size_t i, std::size_t j) {
  if (i >= n || j >= n) throw DimensionError("unit matrix index out of range");
  SymMatrix m(n);
  m.set(i, j, 1);
  return m;
}

SymMatrix SymMatrix::from_dense(const Matrix& dense) {
  if (!dense.square()) throw DimensionError("symmetric matrix must be square");
  SymMatrix m(dense.rows());
  for (std::size_t i = 0; i < dense.rows(); ++i)
    for (std::size_t j = i; j < dense.cols(); ++j) {
      if (dense(i, j) != dense(j, i)) throw std::invalid_argument("matrix is not symmetric");
      m.set(i, j, dense(i, j));
    }
  return m;
}

Matrix SymMatrix::to_dense() const {
  Matrix d(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) d(i, j) = (*this)(i, j);
  return d;
}

bool SymMatrix::is_zero() const {
  return std::all_of(upper_.begin(), upper_.end(), [](const Rational& v) { return v == 0; });
}

bool SymMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if ((*this)(i, j) != 0) return false;
  return true;
}

std::size_t SymMatrix::nonzeros_upper() const {
  return static_cast<std::size_t>(
      std::count_if(upper_.begin(), upper_.end(), [](const Rational& v) { return v != 0; }));
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& o) {
  if (o.n_ != n_) throw DimensionError("symmetric sum: orders differ");
  for (std::size_t s = 0; s < upper_.size(); ++s) upper_[s] += o.upper_[s];
  return *this;
}

SymMatrix& SymMatrix::operator-=(const SymMatrix& o) {
  if (o.n_ != n_) throw DimensionError("symmetric difference: orders differ");
  for (std::size_t s = 0; s < upper_.size(); ++s) upper_[s] -= o.upper_[s];
  return *this;
}

SymMatrix& SymMatrix::operator*=(const Rational& s) {
  for (auto& v : upper_) v *= s;
  return *this;
}

SymMatrix& SymMatrix::add_scaled(const SymMatrix& o, const Rational& s) {
  if (o.n_ != n_) throw DimensionError("symmetric axpy: orders differ");
  if (s == 0) return *this;
  for (std::size_t k = 0; k < upper_.size(); ++k)
    if (o.upper_[k] != 0) upper_[k] += s * o.upper_[k];
  return *this;
}

SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
SymMatrix operator*(const Rational& s, SymMatrix a) { return a *= s; }

IndexSet::IndexSet(std::initializer_list<std::size_t> items) : IndexSet(std::vector<std::size_t>(items)) {}

IndexSet::IndexSet(std::vector<std::size_t> items) : items_(std::move(items)) {
  std::sort(items_.begin(), items_.end());
  if (std::adjacent_find(items_.begin(), items_.end()) != items_.end())
    throw std::invalid_argument("index set contains duplicates");
}

bool IndexSet::contains(std::size_t i) const { return std::binary_search(items_.begin(), items_.end(), i); }

bool IndexSet::intersects(const IndexSet& other) const {
  auto a = items_.begin(), b = other.items_.begin();
  while (a != items_.end() && b != other.items_.end()) {
    if (*a == *b) return true;
    if (*a < *b) ++a; else ++b;
  }
  return false;
}

IndexSet IndexSet::united(const IndexSet& other) const {
  std::vector<std::size_t> out;
  std::set_union(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(), std::back_inserter(out));
  return IndexSet(std::move(out));
}

std::string IndexSet::str() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t k = 0; k < items_.size(); ++k) os << (k ? "," : "") << items_[k] + 1;
  os << '}';
  return os.str();
}

}  // namespace wsdp
