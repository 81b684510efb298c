#include "wsdp/kernels.hpp"
#include "wsdp/linalg.hpp"
#include "wsdp/random.hpp"

#include <doctest.h>

#include <omp.h>

using namespace wsdp;

namespace {

std::vector<SymMatrix> random_syms(std::size_t count, std::size_t n, Rng& rng) {
  std::vector<SymMatrix> out;
  for (std::size_t k = 0; k < count; ++k) {
    SymMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        if (rng.uniform(0, 2) == 0) a.set(i, j, Rational(rng.uniform(-9, 9), rng.uniform(1, 4)));
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace

TEST_CASE("parallel kernels reproduce the serial reference exactly") {
  omp_set_num_threads(4);
  Rng rng(77);
  for (int t = 0; t < 15; ++t) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform(0, 12));
    const std::size_t m = 1 + static_cast<std::size_t>(rng.uniform(0, 8));
    const auto a = random_syms(m, n, rng);
    const auto x = random_syms(3, n, rng);
    const Matrix g = random_unimodular(m, rng, 3 * m, 2);
    const Matrix tm = random_unimodular(n, rng, 3 * n, 2);

    CHECK(kernels::parallel::congruence(a[0], tm) == kernels::serial::congruence(a[0], tm));
    CHECK(kernels::parallel::reformulate(a, g, tm) == kernels::serial::reformulate(a, g, tm));
    CHECK(kernels::parallel::inner_products(a, x) == kernels::serial::inner_products(a, x));
  }
}

TEST_CASE("reformulation follows the defining formula") {
  Rng rng(78);
  const std::size_t n = 4, m = 3;
  const auto a = random_syms(m, n, rng);
  const Matrix g{{1, 2, 0}, {0, 1, Rational(1, 2)}, {-1, 0, 3}};
  const Matrix tm = random_unimodular(n, rng, 10, 2);
  const auto out = kernels::serial::reformulate(a, g, tm);
  for (std::size_t i = 0; i < m; ++i) {
    Matrix comb(n, n);
    for (std::size_t j = 0; j < m; ++j) comb = comb + g(i, j) * a[j].to_dense();
    CHECK(out[i].to_dense() == tm.transpose() * comb * tm);
  }
}

TEST_CASE("kernel dimension checks") {
  const std::vector<SymMatrix> a = {SymMatrix(3), SymMatrix(3)};
  CHECK_THROWS_AS(kernels::parallel::reformulate(a, Matrix::identity(3), Matrix::identity(3)), DimensionError);
  CHECK_THROWS_AS(kernels::parallel::reformulate(a, Matrix::identity(2), Matrix::identity(2)), DimensionError);
  CHECK_THROWS_AS(kernels::serial::congruence(SymMatrix(3), Matrix(3, 2)), DimensionError);
}
