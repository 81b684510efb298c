#pragma once

// Brute-force infeasibility oracle for tiny semidefinite systems (n <= 3).
//
// Shares no code with the library: numbers are boost cpp_rational and the
// elimination is written out here. The procedure only uses two facts about a
// psd X: diagonal entries are nonnegative, and a zero diagonal entry zeroes
// its row. Repeatedly it looks for a combination of the equations that only
// involves surviving diagonal entries, with nonnegative coefficients:
//   - right-hand side negative            -> infeasible
//   - right-hand side zero, support S     -> entries in S are zero, iterate
// The combinations are found exactly by enumerating the extreme rays of a
// cone in at most four dimensions.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using Q = boost::multiprecision::cpp_rational;
using Row = std::vector<Q>;

struct Constraint {
  std::vector<std::vector<Q>> a;  // dense symmetric n x n
  Q b;
};

enum class Verdict { Infeasible, Undetermined };

struct Result {
  Verdict verdict = Verdict::Undetermined;
  std::vector<bool> zeroed;
};

// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(std::vector<Row>& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    const Q inv = 1 / m[r][c];
    for (auto& v : m[r]) v *= inv;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (i != r && m[i][c] != 0) {
        const Q f = m[i][c];
        for (std::size_t j = 0; j < m[i].size(); ++j) m[i][j] -= f * m[r][j];
      }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  return pivots;
}

// Basis of {x : M x = 0} for an r x cols matrix.
inline std::vector<Row> nullspace(std::vector<Row> m, std::size_t cols) {
  auto piv = rref(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<Row> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Row v(cols, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

inline Result decide(std::size_t n, const std::vector<Constraint>& cons) {
  Result res;
  res.zeroed.assign(n, false);
  for (;;) {
    std::vector<std::size_t> diag;
    std::vector<std::pair<std::size_t, std::size_t>> off;
    for (std::size_t r = 0; r < n; ++r) {
      if (res.zeroed[r]) continue;
      diag.push_back(r);
      for (std::size_t c = r + 1; c < n; ++c)
        if (!res.zeroed[c]) off.push_back({r, c});
    }
    const std::size_t nd = diag.size(), no = off.size(), m = cons.size();

    // Consistency of the linear equations on the surviving entries.
    std::vector<Row> aug;
    for (const auto& k : cons) {
      Row row;
      for (auto r : diag) row.push_back(k.a[r][r]);
      for (auto [r, c] : off) row.push_back(2 * k.a[r][c]);
      row.push_back(k.b);
      aug.push_back(std::move(row));
    }
    {
      auto copy = aug;
      auto piv = rref(copy, nd + no + 1);
      if (!piv.empty() && piv.back() == nd + no) {
        res.verdict = Verdict::Infeasible;
        return res;
      }
    }
    if (nd == 0) return res;

    // Multipliers y that cancel every off-diagonal entry.
    std::vector<Row> ot(no, Row(m, 0));
    for (std::size_t j = 0; j < no; ++j)
      for (std::size_t i = 0; i < m; ++i) ot[j][i] = aug[i][nd + j];
    const auto ys = no ? nullspace(ot, m) : nullspace(std::vector<Row>{}, m);

    // Image (diagonal coefficients, rhs) of those multipliers.
    std::vector<Row> v;
    for (const auto& y : ys) {
      Row img(nd + 1, 0);
      for (std::size_t i = 0; i < m; ++i) {
        if (y[i] == 0) continue;
        for (std::size_t j = 0; j < nd; ++j) img[j] += y[i] * aug[i][j];
        img[nd] += y[i] * aug[i][nd + no];
      }
      v.push_back(std::move(img));
    }
    rref(v, nd + 1);
    const std::size_t dim = v.size();
    if (dim == 0) return res;
    // 0 = negative number: (0, ..., 0, 1) lies in the span.
    for (const auto& row : v) {
      bool only_rhs = row[nd] != 0;
      for (std::size_t j = 0; j < nd && only_rhs; ++j) only_rhs = row[j] == 0;
      if (only_rhs) {
        res.verdict = Verdict::Infeasible;
        return res;
      }
    }

    // Extreme rays of {w in span(v) : diagonal part >= 0}: fix dim-1 diagonal coordinates at 0.
    bool progressed = false;
    const std::size_t choose = dim - 1;
    if (choose > nd) return res;
    std::vector<bool> mask(nd, false);
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(choose), true);
    do {
      std::vector<Row> sys;
      for (std::size_t j = 0; j < nd; ++j)
        if (mask[j]) {
          Row eq(dim);
          for (std::size_t t = 0; t < dim; ++t) eq[t] = v[t][j];
          sys.push_back(std::move(eq));
        }
      const auto ns = nullspace(sys, dim);
      if (ns.size() != 1) continue;
      Row w(nd + 1, 0);
      for (std::size_t t = 0; t < dim; ++t)
        for (std::size_t j = 0; j <= nd; ++j) w[j] += ns[0][t] * v[t][j];
      for (int sgn : {1, -1}) {
        bool nonneg = true, nonzero = false;
        for (std::size_t j = 0; j < nd; ++j) {
          const Q d = sgn * w[j];
          if (d < 0) nonneg = false;
          if (d != 0) nonzero = true;
        }
        if (!nonneg || !nonzero) continue;
        const Q beta = sgn * w[nd];
        if (beta < 0) {
          res.verdict = Verdict::Infeasible;
          return res;
        }
        if (beta == 0)
          for (std::size_t j = 0; j < nd; ++j)
            if (sgn * w[j] > 0 && !res.zeroed[diag[j]]) {
              res.zeroed[diag[j]] = true;
              progressed = true;
            }
      }
    } while (std::prev_permutation(mask.begin(), mask.end()));
    if (!progressed) return res;
  }
}

}  // namespace oracle
