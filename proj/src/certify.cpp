#include "wsdp/certify.hpp"

#include "wsdp/kernels.hpp"

#include <json.hpp>

#include <sstream>
#include <stdexcept>

namespace wsdp {

namespace {

void check_shapes(const SdpInstance& raw, const Matrix& g, const Matrix& t, const SdpInstance& clean) {
  raw.check();
  clean.check();
  if (raw.m() != clean.m() || raw.n != clean.n) throw DimensionError("reformulation: raw and clean sizes differ");
  if (g.rows() != raw.m() || g.cols() != raw.m()) throw DimensionError("reformulation: G must be m x m");
  if (t.rows() != raw.n || t.cols() != raw.n) throw DimensionError("reformulation: T must be n x n");
}

CheckItem reformulation_item(const WeakCertificate& c) {
  CheckItem item{"reformulation", false, ""};
  try {
    check_shapes(c.raw, c.G, c.T, c.clean);
  } catch (const std::exception& e) {
    item.detail = e.what();
    return item;
  }
  if (determinant(c.G) == 0) {
    item.detail = "G is singular";
    return item;
  }
  if (determinant(c.T) == 0) {
    item.detail = "T is singular";
    return item;
  }
  const SdpInstance image = reformulate(c.raw, c.G, c.T);
  for (std::size_t i = 0; i < image.m(); ++i) {
    for (std::size_t r = 0; r < image.n; ++r)
      for (std::size_t s = r; s < image.n; ++s)
        if (image.A[i](r, s) != c.clean.A[i](r, s)) {
          std::ostringstream os;
          os << "constraint " << i + 1 << " entry (" << r + 1 << "," << s + 1 << "): image has "
             << to_string(image.A[i](r, s)) << ", clean system has " << to_string(c.clean.A[i](r, s));
          item.detail = os.str();
          return item;
        }
    if (image.b[i] != c.clean.b[i]) {
      item.detail = "right-hand side " + std::to_string(i + 1) + ": (G b) = " + to_string(image.b[i]) +
                    ", clean system has " + to_string(c.clean.b[i]);
      return item;
    }
  }
  item.passed = true;
  return item;
}

CheckItem infeasibility_item(const WeakCertificate& c) {
  CheckItem item{"infeasibility certificate", false, ""};
  try {
    if (check_infeasibility_cert(c.clean, c.k, c.P)) {
      item.passed = true;
      item.detail = "k = " + std::to_string(c.k) + ", P = " + c.P.str();
      return item;
    }
  } catch (const std::exception& e) {
    item.detail = e.what();
    return item;
  }
  for (std::size_t i = 0; i < c.k; ++i)
    if (c.clean.b[i] != 0) {
      item.detail = "b'_" + std::to_string(i + 1) + " = " + to_string(c.clean.b[i]) + " is not zero";
      return item;
    }
  if (c.clean.b[c.k] >= 0) {
    item.detail = "b'_" + std::to_string(c.k + 1) + " = " + to_string(c.clean.b[c.k]) + " is not negative";
    return item;
  }
  item.detail = validate_echelon(std::span(c.clean.A).first(c.k + 1), c.P).describe();
  return item;
}

CheckItem not_strong_item(const WeakCertificate& c) {
  CheckItem item{"not-strong certificate", false, ""};
  if (c.X.size() < 2) {
    item.detail = "need at least two X matrices, got " + std::to_string(c.X.size());
    return item;
  }
  try {
    if (check_not_strong_cert(c.clean, c.X, c.Q)) {
      item.passed = true;
      item.detail = "l = " + std::to_string(c.l()) + ", Q = " + c.Q.str();
      return item;
    }
    if (c.Q.order != c.clean.n) {
      item.detail = "Q has order " + std::to_string(c.Q.order) + ", expected " + std::to_string(c.clean.n);
      return item;
    }
    const ValidationReport v = validate_echelon(c.X, c.Q);
    if (!v.ok()) {
      item.detail = "X sequence: " + v.describe();
      return item;
    }
    const Matrix products = kernels::parallel::inner_products(c.clean.A, c.X);
    const std::size_t l = c.X.size() - 1;
    for (std::size_t i = 0; i < c.clean.m(); ++i)
      for (std::size_t j = 0; j <= l; ++j) {
        const Rational want = j == l ? c.clean.b[i] : Rational(0);
        if (products(i, j) != want) {
          item.detail = "A'_" + std::to_string(i + 1) + " . X_" + std::to_string(j + 1) + " = " +
                        to_string(products(i, j)) + ", expected " + to_string(want);
          return item;
        }
      }
  } catch (const std::exception& e) {
    item.detail = e.what();
  }
  return item;
}

bool restricted_diagonal_nonnegative(const SymMatrix& a, const std::vector<bool>& alive) {
  const std::size_t n = a.order();
  for (std::size_t r = 0; r < n; ++r) {
    if (!alive[r]) continue;
    if (a(r, r) < 0) return false;
    for (std::size_t c = r + 1; c < n; ++c)
      if (alive[c] && a(r, c) != 0) return false;
  }
  return true;
}

IndexSet restricted_support(const SymMatrix& a, const std::vector<bool>& alive) {
  std::vector<std::size_t> s;
  for (std::size_t r = 0; r < a.order(); ++r)
    if (alive[r] && a(r, r) > 0) s.push_back(r);
  return IndexSet(std::move(s));
}

}  // namespace

SdpInstance reformulate(const SdpInstance& raw, const Matrix& g, const Matrix& t) {
  raw.check();
  if (g.rows() != raw.m() || g.cols() != raw.m()) throw DimensionError("reformulate: G must be m x m");
  if (t.rows() != raw.n || t.cols() != raw.n) throw DimensionError("reformulate: T must be n x n");
  return SdpInstance{raw.n, kernels::parallel::reformulate(raw.A, g, t), g * raw.b};
}

bool check_reformulation(const SdpInstance& raw, const Matrix& g, const Matrix& t, const SdpInstance& clean) {
  check_shapes(raw, g, t, clean);
  if (determinant(g) == 0 || determinant(t) == 0) return false;
  return reformulate(raw, g, t) == clean;
}

bool VerificationReport::passed() const {
  if (items.empty()) return false;
  for (const auto& i : items)
    if (!i.passed) return false;
  return true;
}

std::string VerificationReport::text() const {
  std::ostringstream os;
  for (const auto& i : items) {
    os << (i.passed ? "[PASS] " : "[FAIL] ") << i.name;
    if (!i.detail.empty()) os << ": " << i.detail;
    os << '\n';
  }
  os << (passed() ? "weakly infeasible: certificate verified" : "certificate rejected") << '\n';
  return os.str();
}

std::string VerificationReport::json() const {
  nlohmann::json j;
  j["passed"] = passed();
  j["checks"] = nlohmann::json::array();
  for (const auto& i : items) j["checks"].push_back({{"name", i.name}, {"passed", i.passed}, {"detail", i.detail}});
  return j.dump(2);
}

VerificationReport verify_weak_infeasibility(const WeakCertificate& cert) {
  VerificationReport r;
  r.items.push_back({"k >= 1", cert.k >= 1, "k = " + std::to_string(cert.k)});
  r.items.push_back({"l >= 1", cert.X.size() >= 2, "|X| = " + std::to_string(cert.X.size())});
  r.items.push_back(reformulation_item(cert));
  r.items.push_back(infeasibility_item(cert));
  r.items.push_back(not_strong_item(cert));
  return r;
}

WeakCertificate normalize_contradiction(WeakCertificate cert) {
  const std::size_t k = cert.k;
  if (k >= cert.clean.m() || cert.clean.b[k] >= 0)
    throw std::invalid_argument("normalize_contradiction: b'_{k+1} must be negative");
  const Rational s = -1 / cert.clean.b[k];
  cert.clean.A[k] *= s;
  cert.clean.b[k] *= s;
  if (cert.G.rows() > k)
    for (std::size_t j = 0; j < cert.G.cols(); ++j) cert.G(k, j) *= s;
  return cert;
}

std::optional<SieveResult> sieve_detect(const SdpInstance& inst) {
  inst.check();
  const std::size_t n = inst.n, m = inst.m();
  std::vector<bool> alive(n, true), used(m, false);
  SieveResult res;
  res.P.order = n;
  for (;;) {
    for (std::size_t i = 0; i < m; ++i) {
      if (used[i] || inst.b[i] >= 0 || !restricted_diagonal_nonnegative(inst.A[i], alive)) continue;
      res.order.push_back(i);
      res.P.blocks.push_back(restricted_support(inst.A[i], alive));
      res.k = res.order.size() - 1;
      return res;
    }
    bool progressed = false;
    for (std::size_t i = 0; i < m && !progressed; ++i) {
      if (used[i] || inst.b[i] != 0 || !restricted_diagonal_nonnegative(inst.A[i], alive)) continue;
      IndexSet support = restricted_support(inst.A[i], alive);
      if (support.empty()) continue;
      for (std::size_t j : support) alive[j] = false;
      used[i] = true;
      res.order.push_back(i);
      res.P.blocks.push_back(std::move(support));
      progressed = true;
    }
    if (!progressed) return std::nullopt;
  }
}

SdpInstance permute_constraints(const SdpInstance& inst, const std::vector<std::size_t>& order) {
  inst.check();
  std::vector<bool> taken(inst.m(), false);
  SdpInstance out{inst.n, {}, {}};
  auto take = [&](std::size_t i) {
    out.A.push_back(inst.A[i]);
    out.b.push_back(inst.b[i]);
  };
  for (std::size_t i : order) {
    if (i >= inst.m() || taken[i]) throw std::invalid_argument("permute_constraints: invalid order");
    taken[i] = true;
    take(i);
  }
  for (std::size_t i = 0; i < inst.m(); ++i)
    if (!taken[i]) take(i);
  return out;
}

}  // namespace wsdp
