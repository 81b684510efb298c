#include "wsdp/generator.hpp"

#include "wsdp/kernels.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace wsdp {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

std::size_t draw_size(Rng& rng, std::size_t lo, std::size_t hi) {
  return static_cast<std::size_t>(rng.uniform(static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)));
}

// Sizes of `required` nonempty blocks followed by one possibly empty block,
// all fitting in `capacity`.
std::vector<std::size_t> draw_sizes(Rng& rng, std::size_t required, bool trailing, std::size_t bmin, std::size_t bmax,
                                    std::size_t capacity) {
  std::vector<std::size_t> sizes;
  for (std::size_t i = 0; i < required; ++i) {
    const std::size_t reserve = (required - i - 1) * bmin;
    const std::size_t s = draw_size(rng, bmin, std::min(bmax, capacity - reserve));
    sizes.push_back(s);
    capacity -= s;
  }
  if (trailing) sizes.push_back(draw_size(rng, 0, std::min(bmax, capacity)));
  return sizes;
}

// Cuts consecutive blocks of the given sizes from `pool` starting at `pos`.
std::vector<IndexSet> cut(const std::vector<std::size_t>& pool, std::size_t& pos, const std::vector<std::size_t>& sizes) {
  std::vector<IndexSet> out;
  for (std::size_t s : sizes) {
    out.emplace_back(std::vector<std::size_t>(pool.begin() + static_cast<std::ptrdiff_t>(pos),
                                              pool.begin() + static_cast<std::ptrdiff_t>(pos + s)));
    pos += s;
  }
  return out;
}

std::vector<std::size_t> membership(const Structure& s) {
  std::vector<std::size_t> of(s.order, kNone);
  for (std::size_t b = 0; b < s.blocks.size(); ++b)
    for (std::size_t j : s.blocks[b]) of[j] = b;
  return of;
}

// Random member of the echelon pattern of matrix `index` under `s`.
SymMatrix random_echelon(const Structure& s, std::size_t index, std::int64_t range, Rng& rng) {
  const auto of = membership(s);
  const std::size_t n = s.order;
  SymMatrix a(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r; c < n; ++c) {
      const bool in_block = of[r] == index && of[c] == index;
      const bool earlier = (of[r] != kNone && of[r] < index) || (of[c] != kNone && of[c] < index);
      if (in_block) {
        if (r == c) a.set(r, c, rng.uniform(1, range));
      } else if (earlier) {
        a.set(r, c, rng.uniform(-range, range));
      }
    }
  return a;
}

Matrix random_block(std::size_t p, std::size_t q, std::int64_t range, Rng& rng) {
  Matrix m(p, q);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < q; ++j) m(i, j) = rng.uniform(-range, range);
  return m;
}

SymMatrix random_symmetric(std::size_t n, std::int64_t range, Rng& rng) {
  SymMatrix a(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r; c < n; ++c) a.set(r, c, rng.uniform(-range, range));
  return a;
}

// Multiplies by the lcm of the denominators, then divides by the gcd of the numerators.
void make_primitive_integer(SymMatrix& a) {
  const Integer l = denominator_lcm(a.packed());
  a *= Rational(l);
  const Integer g = numerator_gcd(a.packed());
  if (g != 0 && g != 1) a *= Rational(1, 1) / Rational(g);
}

}  // namespace

std::string to_string(OverlapPolicy p) {
  return p == OverlapPolicy::DisjointOnly ? "disjoint-only" : "overlapping-allowed";
}

OverlapPolicy parse_overlap_policy(const std::string& s) {
  if (s == "disjoint-only" || s == "disjoint") return OverlapPolicy::DisjointOnly;
  if (s == "overlapping-allowed" || s == "overlapping" || s == "overlap") return OverlapPolicy::OverlappingAllowed;
  throw std::invalid_argument("unknown overlap policy: " + s);
}

std::size_t GenConfig::min_order() const {
  if (overlap == OverlapPolicy::DisjointOnly) return block_min * (k + l);
  return block_min * (1 + std::max(k, l));
}

void GenConfig::validate() const {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (l < 1) throw std::invalid_argument("l must be at least 1");
  if (k + 1 > m) throw std::invalid_argument("m must be at least k+1");
  if (block_min < 1 || block_max < block_min) throw std::invalid_argument("block sizes need 1 <= min <= max");
  if (entry_range < 1) throw std::invalid_argument("entry range must be positive");
  if (mess_magnitude < 1) throw std::invalid_argument("mess magnitude must be positive");
  if (n < min_order())
    throw std::invalid_argument("n = " + std::to_string(n) + " is too small for the requested blocks (need " +
                                std::to_string(min_order()) + ")");
}

WeakCertificate WeakInstance::certificate() const {
  WeakCertificate c;
  if (provenance) {
    c.raw = provenance->messy;
    auto g = inverse(provenance->G);
    auto t = inverse(provenance->T);
    if (!g || !t) throw std::logic_error("messy transformation is singular");
    c.G = std::move(*g);
    c.T = std::move(*t);
  } else {
    c.raw = clean;
    c.G = Matrix::identity(clean.m());
    c.T = Matrix::identity(clean.n);
  }
  c.clean = clean;
  c.k = k;
  c.X = X;
  c.P = P;
  c.Q = Q;
  return c;
}

StructurePair choose_structures(const GenConfig& cfg, Rng& rng) {
  cfg.validate();
  const std::size_t n = cfg.n, bmin = cfg.block_min, bmax = cfg.block_max;
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  rng.shuffle(pool.begin(), pool.end());

  StructurePair s;
  s.P.order = s.Q.order = n;
  std::size_t pos = 0;
  if (cfg.overlap == OverlapPolicy::DisjointOnly) {
    auto sizes = draw_sizes(rng, cfg.k + cfg.l, false, bmin, bmax, n);
    std::vector<std::size_t> p_sizes(sizes.begin(), sizes.begin() + static_cast<std::ptrdiff_t>(cfg.k));
    std::vector<std::size_t> q_sizes(sizes.begin() + static_cast<std::ptrdiff_t>(cfg.k), sizes.end());
    const std::size_t used = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
    const std::size_t p_last = draw_size(rng, 0, std::min(bmax, n - used));
    const std::size_t q_last = draw_size(rng, 0, std::min(bmax, n - used - p_last));
    p_sizes.push_back(p_last);
    q_sizes.push_back(q_last);
    s.P.blocks = cut(pool, pos, p_sizes);
    s.Q.blocks = cut(pool, pos, q_sizes);
    return s;
  }

  // P_1 and Q_1 come first and stay clear of everything; the later blocks of
  // P and of Q are cut independently from what is left, so they may overlap.
  const std::size_t rest_min = (std::max(cfg.k, cfg.l) - 1) * bmin;
  const std::size_t p1 = draw_size(rng, bmin, std::min(bmax, n - bmin - rest_min));
  const std::size_t q1 = draw_size(rng, bmin, std::min(bmax, n - p1 - rest_min));
  s.P.blocks = cut(pool, pos, {p1});
  s.Q.blocks = cut(pool, pos, {q1});
  const std::vector<std::size_t> rest(pool.begin() + static_cast<std::ptrdiff_t>(pos), pool.end());

  auto later = [&](std::size_t required, std::vector<IndexSet>& blocks) {
    std::vector<std::size_t> order = rest;
    rng.shuffle(order.begin(), order.end());
    std::size_t at = 0;
    for (auto& b : cut(order, at, draw_sizes(rng, required, true, bmin, bmax, order.size()))) blocks.push_back(std::move(b));
  };
  later(cfg.k - 1, s.P.blocks);
  later(cfg.l - 1, s.Q.blocks);
  return s;
}

StructurePair choose_structures(const GenConfig& cfg) {
  Rng rng(cfg.seed);
  return choose_structures(cfg, rng);
}

bool structures_compatible(const Structure& p, const Structure& q) {
  if (p.blocks.empty() || q.blocks.empty()) return false;
  return !p.blocks.front().intersects(q.all()) && !q.blocks.front().intersects(p.all());
}

BilinearSolution bilinear_solve(std::size_t p, std::size_t q, const Vector& targets, Rng& rng, std::int64_t entry_range) {
  if (p == 0 || q == 0) throw DimensionError("bilinear_solve: empty block");
  const bool any = std::any_of(targets.begin(), targets.end(), [](const Rational& t) { return t != 0; });
  BilinearSolution out;
  do out.M = random_block(p, q, entry_range, rng);
  while (any && out.M.is_zero());
  const Rational mm = inner(out.M, out.M);
  for (const Rational& t : targets) {
    Matrix y = random_block(p, q, entry_range, rng);
    if (mm != 0) y = y + ((t - inner(out.M, y)) / mm) * out.M;
    out.Y.push_back(std::move(y));
  }
  return out;
}

BilinearSolution bilinear_solve(std::size_t p, std::size_t q, const Vector& targets, std::uint64_t seed,
                                std::int64_t entry_range) {
  Rng rng(seed);
  return bilinear_solve(p, q, targets, rng, entry_range);
}

BaseSystem base_equations(const GenConfig& cfg, const StructurePair& s, Rng& rng) {
  const std::size_t k = cfg.k, l = cfg.l, n = cfg.n;
  if (s.P.order != n || s.Q.order != n || s.P.blocks.size() != k + 1 || s.Q.blocks.size() != l + 1)
    throw std::invalid_argument("base_equations: structures do not match the configuration");
  s.P.check();
  s.Q.check();
  for (std::size_t i = 0; i < k; ++i)
    if (s.P.blocks[i].empty()) throw std::invalid_argument("base_equations: P blocks 1..k must be nonempty");
  for (std::size_t j = 0; j < l; ++j)
    if (s.Q.blocks[j].empty()) throw std::invalid_argument("base_equations: Q blocks 1..l must be nonempty");
  if (!structures_compatible(s.P, s.Q))
    throw std::invalid_argument("base_equations: first blocks must avoid the other structure");

  BaseSystem sys;
  for (std::size_t i = 0; i <= k; ++i) sys.A.push_back(random_echelon(s.P, i, cfg.entry_range, rng));
  for (std::size_t j = 0; j <= l; ++j) sys.X.push_back(random_echelon(s.Q, j, cfg.entry_range, rng));

  const auto& cols = s.Q.blocks[0].items();
  for (std::size_t i = 1; i <= k; ++i) {
    const auto& rows = s.P.blocks[i - 1].items();
    SymMatrix& a = sys.A[i];
    for (std::size_t r : rows)
      for (std::size_t c : cols) {
        a.set(r, c, 0);
        for (std::size_t j = 1; j <= l; ++j) sys.X[j].set(r, c, 0);
      }
    // The (rows, cols) block sits off the diagonal, so it counts twice in the
    // trace product; hence the factor -1/2.
    Vector targets;
    for (std::size_t j = 1; j <= l; ++j) {
      Rational t = inner(a, sys.X[j]);
      if (i == k && j == l) t += 1;
      targets.push_back(-t / 2);
    }
    const BilinearSolution sol = bilinear_solve(rows.size(), cols.size(), targets, rng, cfg.entry_range);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < cols.size(); ++c) {
        a.set(rows[r], cols[c], sol.M(r, c));
        for (std::size_t j = 1; j <= l; ++j) sys.X[j].set(rows[r], cols[c], sol.Y[j - 1](r, c));
      }
  }

  const Matrix products = kernels::parallel::inner_products(sys.A, sys.X);
  for (std::size_t i = 0; i <= k; ++i)
    for (std::size_t j = 0; j <= l; ++j)
      if (products(i, j) != ((i == k && j == l) ? -1 : 0)) throw std::logic_error("base_equations: pattern not met");
  return sys;
}

Extension extend_constraints(const std::vector<SymMatrix>& base_a, const std::vector<SymMatrix>& x,
                             const GenConfig& cfg, Rng& rng) {
  if (x.size() < 2) throw std::invalid_argument("extend_constraints: need at least two X matrices");
  const std::size_t l = x.size() - 1;
  const std::size_t k = base_a.size() - 1;
  if (cfg.m < base_a.size()) throw std::invalid_argument("extend_constraints: m smaller than the base system");
  Extension ext;
  ext.b.assign(k + 1, Rational(0));
  ext.b[k] = -1;
  if (cfg.m == k + 1) return ext;

  const std::size_t n = x.front().order();
  Matrix gram(l, l);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j) gram(i, j) = inner(x[i], x[j]);

  for (std::size_t extra = k + 1; extra < cfg.m; ++extra) {
    SymMatrix a;
    do {
      a = random_symmetric(n, cfg.entry_range, rng);
      Vector rhs;
      for (std::size_t j = 0; j < l; ++j) rhs.push_back(inner(x[j], a));
      const auto sol = solve_linear(gram, rhs);
      if (!sol) throw std::logic_error("extend_constraints: Gram system inconsistent");
      for (std::size_t j = 0; j < l; ++j) a.add_scaled(x[j], -sol->particular[j]);
    } while (a.is_zero());
    make_primitive_integer(a);
    Rational bi = inner(a, x[l]);
    if (bi.get_den() != 1) {
      const Rational scale(bi.get_den());
      a *= scale;
      bi *= scale;
    }
    ext.A.push_back(std::move(a));
    ext.b.push_back(std::move(bi));
  }
  return ext;
}

WeakInstance messify(WeakInstance inst, std::uint64_t seed, std::size_t budget, std::int64_t magnitude) {
  inst.clean.check();
  Rng rng(seed);
  const std::size_t m = inst.clean.m(), n = inst.clean.n;
  Provenance pv;
  pv.G = random_unimodular(m, rng, budget ? budget : 3 * m, magnitude);
  pv.T = random_unimodular(n, rng, budget ? budget : 3 * n, magnitude);
  pv.messy = reformulate(inst.clean, pv.G, pv.T);
  inst.provenance = std::move(pv);
  return inst;
}

WeakInstance generate(const GenConfig& cfg) {
  cfg.validate();
  Rng root(cfg.seed);
  Rng structure_rng = root.derive(1);
  Rng base_rng = root.derive(2);
  Rng extension_rng = root.derive(3);
  const std::uint64_t mess_seed = root.derive(4).next();

  WeakInstance w;
  StructurePair s = choose_structures(cfg, structure_rng);
  BaseSystem base = base_equations(cfg, s, base_rng);
  Extension ext = extend_constraints(base.A, base.X, cfg, extension_rng);

  w.clean.n = cfg.n;
  w.clean.A = std::move(base.A);
  for (auto& a : ext.A) w.clean.A.push_back(std::move(a));
  w.clean.b = std::move(ext.b);
  w.X = std::move(base.X);
  w.P = std::move(s.P);
  w.Q = std::move(s.Q);
  w.k = cfg.k;
  w.l = cfg.l;
  if (cfg.messy) w = messify(std::move(w), mess_seed, cfg.mess_budget, cfg.mess_magnitude);
  return w;
}

bool BadProjectionWitness::check() const {
  try {
    return check_infeasibility_cert(system, k, P) && check_not_strong_cert(system, X, Q);
  } catch (const std::invalid_argument&) {
    return false;
  }
}

BadProjectionWitness bad_projection(const WeakInstance& inst) {
  BadProjectionWitness w{inst.clean, inst.X, inst.P, inst.Q, inst.k};
  if (!w.check()) throw std::invalid_argument("bad_projection: instance does not carry a valid certificate");
  return w;
}

BadProjectionWitness bad_projection(const BadProjectionWitness& w) {
  if (!w.check()) throw std::invalid_argument("bad_projection: witness does not hold");
  return w;
}

}  // namespace wsdp
