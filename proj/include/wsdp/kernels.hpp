#pragma once

#include "wsdp/matrix.hpp"

#include <span>
#include <vector>

// Data-parallel kernels behind the congruence / reformulation / inner-product
// paths. `serial` is the reference implementation kept for testing and
// benchmarking; `parallel` is the OpenMP version used by the library. Both
// produce bit-identical results.
namespace wsdp::kernels {

namespace serial {

SymMatrix congruence(const SymMatrix& a, const Matrix& t);

/// out[i] = T^T (sum_j g(i,j) a[j]) T
std::vector<SymMatrix> reformulate(std::span<const SymMatrix> a, const Matrix& g, const Matrix& t);

/// (a[i] . x[j]) as an |a| x |x| matrix.
Matrix inner_products(std::span<const SymMatrix> a, std::span<const SymMatrix> x);

}  // namespace serial

namespace parallel {

SymMatrix congruence(const SymMatrix& a, const Matrix& t);
std::vector<SymMatrix> reformulate(std::span<const SymMatrix> a, const Matrix& g, const Matrix& t);
Matrix inner_products(std::span<const SymMatrix> a, std::span<const SymMatrix> x);

}  // namespace parallel

}  // namespace wsdp::kernels
