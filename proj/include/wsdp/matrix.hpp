#pragma once

#include "wsdp/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace wsdp {

/// Raised when operands have incompatible shapes.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense row-major matrix of exact rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<Rational>& data() const { return data_; }

  Matrix transpose() const;
  bool is_zero() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator*(const Rational& s, const Matrix& a);
Vector operator*(const Matrix& a, const Vector& x);

/// Symmetric matrix stored as its packed upper triangle.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t n);
  SymMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static SymMatrix identity(std::size_t n);
  /// Unit matrix with ones in positions (i,j) and (j,i); 0-based.
  static SymMatrix unit(std::size_t n, std::size_t i, std::size_t j);
  static SymMatrix from_dense(const Matrix& dense);

  std::size_t order() const { return n_; }

  const Rational& operator()(std::size_t i, std::size_t j) const { return upper_[slot(i, j)]; }
  Rational& at(std::size_t i, std::size_t j) { return upper_[slot(i, j)]; }
  void set(std::size_t i, std::size_t j, const Rational& v) { upper_[slot(i, j)] = v; }

  const std::vector<Rational>& packed() const { return upper_; }

  Matrix to_dense() const;
  bool is_zero() const;
  bool is_diagonal() const;
  std::size_t nonzeros_upper() const;

  SymMatrix& operator+=(const SymMatrix& o);
  SymMatrix& operator-=(const SymMatrix& o);
  SymMatrix& operator*=(const Rational& s);
  /// *this += s * o
  SymMatrix& add_scaled(const SymMatrix& o, const Rational& s);

  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  std::size_t slot(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    return i * n_ - (i * (i + 1)) / 2 + j;
  }

  std::size_t n_ = 0;
  std::vector<Rational> upper_;
};

SymMatrix operator+(SymMatrix a, const SymMatrix& b);
SymMatrix operator-(SymMatrix a, const SymMatrix& b);
SymMatrix operator*(const Rational& s, SymMatrix a);

/// Sorted set of distinct 0-based indices into {0, ..., n-1}.
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(std::initializer_list<std::size_t> items);
  explicit IndexSet(std::vector<std::size_t> items);

  bool contains(std::size_t i) const;
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  std::size_t operator[](std::size_t k) const { return items_[k]; }
  const std::vector<std::size_t>& items() const { return items_; }

  bool intersects(const IndexSet& other) const;
  IndexSet united(const IndexSet& other) const;
  /// 1-based rendering, e.g. "{1,3}".
  std::string str() const;

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  std::vector<std::size_t> items_;
};

}  // namespace wsdp
