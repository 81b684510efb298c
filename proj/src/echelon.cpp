#include "wsdp/echelon.hpp"

#include "wsdp/kernels.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>

namespace wsdp {

namespace {

constexpr std::size_t kNoBlock = std::numeric_limits<std::size_t>::max();

// block_of[j] = index of the block holding j, or kNoBlock. Empty optional if
// the blocks overlap or leave the ambient range.
std::optional<std::vector<std::size_t>> block_membership(const Structure& s) {
  std::vector<std::size_t> block_of(s.order, kNoBlock);
  for (std::size_t b = 0; b < s.blocks.size(); ++b)
    for (std::size_t j : s.blocks[b]) {
      if (j >= s.order || block_of[j] != kNoBlock) return std::nullopt;
      block_of[j] = b;
    }
  return block_of;
}

CellRegion region(const std::vector<std::size_t>& block_of, std::size_t index, std::size_t r, std::size_t c) {
  const std::size_t br = block_of[r], bc = block_of[c];
  if (br == index && bc == index) return CellRegion::PositiveBlock;
  if ((br != kNoBlock && br < index) || (bc != kNoBlock && bc < index)) return CellRegion::Arbitrary;
  return CellRegion::Zero;
}

void require_same_order(std::span<const SymMatrix> seq, std::size_t n) {
  for (const auto& m : seq)
    if (m.order() != n) throw DimensionError("echelon sequence: matrices of different orders");
}

}  // namespace

void Structure::check() const {
  if (!block_membership(*this)) throw std::invalid_argument("structure blocks overlap or exceed order " + std::to_string(order));
}

IndexSet Structure::prefix_union(std::size_t count) const {
  IndexSet u;
  for (std::size_t b = 0; b < count && b < blocks.size(); ++b) u = u.united(blocks[b]);
  return u;
}

std::string Structure::str() const {
  std::string s = "(";
  for (std::size_t b = 0; b < blocks.size(); ++b) s += (b ? ", " : "") + blocks[b].str();
  return s + ")";
}

void SdpInstance::check() const {
  if (A.size() != b.size()) throw DimensionError("instance: |A| != |b|");
  for (const auto& a : A)
    if (a.order() != n) throw DimensionError("instance: constraint matrix of wrong order");
}

Vector SdpInstance::apply(const SymMatrix& x) const {
  Vector out;
  out.reserve(A.size());
  for (const auto& a : A) out.push_back(inner(a, x));
  return out;
}

std::string to_string(EchelonRule rule) {
  switch (rule) {
    case EchelonRule::BlockCount: return "block count differs from sequence length";
    case EchelonRule::BlockOverlap: return "blocks overlap or leave the index range";
    case EchelonRule::NonPositiveDiagonal: return "diagonal entry of the positive block is not positive";
    case EchelonRule::OffDiagonalInBlock: return "positive block is not diagonal";
    case EchelonRule::OutsidePattern: return "nonzero entry outside the echelon pattern";
  }
  return "unknown";
}

std::string ValidationReport::describe() const {
  if (!violation) return "ok";
  std::ostringstream os;
  os << "matrix " << violation->matrix + 1 << ", entry (" << violation->row + 1 << "," << violation->col + 1
     << "): " << to_string(violation->rule);
  return os.str();
}

CellRegion classify_cell(const Structure& structure, std::size_t index, std::size_t row, std::size_t col) {
  auto block_of = block_membership(structure);
  if (!block_of) throw std::invalid_argument("classify_cell: malformed structure");
  if (row >= structure.order || col >= structure.order) throw DimensionError("classify_cell: cell out of range");
  return region(*block_of, index, row, col);
}

ValidationReport validate_echelon(std::span<const SymMatrix> seq, const Structure& structure) {
  ValidationReport report;
  const std::size_t n = seq.empty() ? structure.order : seq.front().order();
  require_same_order(seq, n);
  if (structure.blocks.size() != seq.size()) {
    report.violation = EchelonViolation{0, 0, 0, EchelonRule::BlockCount};
    return report;
  }
  if (seq.empty()) return report;
  if (structure.order != n) throw DimensionError("validate_echelon: structure order differs from matrix order");
  auto block_of = block_membership(structure);
  if (!block_of) {
    report.violation = EchelonViolation{0, 0, 0, EchelonRule::BlockOverlap};
    return report;
  }
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const SymMatrix& m = seq[i];
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = r; c < n; ++c) {
        const Rational& v = m(r, c);
        switch (region(*block_of, i, r, c)) {
          case CellRegion::PositiveBlock:
            if (r == c && v <= 0) report.violation = EchelonViolation{i, r, c, EchelonRule::NonPositiveDiagonal};
            if (r != c && v != 0) report.violation = EchelonViolation{i, r, c, EchelonRule::OffDiagonalInBlock};
            break;
          case CellRegion::Arbitrary:
            break;
          case CellRegion::Zero:
            if (v != 0) report.violation = EchelonViolation{i, r, c, EchelonRule::OutsidePattern};
            break;
        }
        if (report.violation) return report;
      }
  }
  return report;
}

std::optional<Structure> infer_structure(std::span<const SymMatrix> seq) {
  Structure s;
  if (seq.empty()) return s;
  const std::size_t n = seq.front().order();
  require_same_order(seq, n);
  s.order = n;
  std::vector<std::size_t> block_of(n, kNoBlock);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const SymMatrix& m = seq[i];
    std::vector<std::size_t> picked;
    for (std::size_t j = 0; j < n; ++j) {
      if (block_of[j] != kNoBlock || m(j, j) <= 0) continue;
      bool clean_row = true;
      for (std::size_t c = 0; c < n && clean_row; ++c)
        if (c != j && m(j, c) != 0 && block_of[c] == kNoBlock) clean_row = false;
      if (clean_row) picked.push_back(j);
    }
    for (std::size_t j : picked) block_of[j] = i;
    s.blocks.emplace_back(std::move(picked));
  }
  if (!validate_echelon(seq, s).ok()) return std::nullopt;
  return s;
}

bool check_infeasibility_cert(const SdpInstance& inst, std::size_t k, const Structure& structure) {
  inst.check();
  if (k + 1 > inst.m()) throw std::invalid_argument("infeasibility certificate: k+1 exceeds the constraint count");
  if (structure.blocks.size() != k + 1)
    throw std::invalid_argument("infeasibility certificate: structure must have k+1 blocks");
  if (structure.order != inst.n) throw std::invalid_argument("infeasibility certificate: structure order differs from n");
  structure.check();
  for (std::size_t i = 0; i < k; ++i)
    if (inst.b[i] != 0) return false;
  if (inst.b[k] >= 0) return false;
  return validate_echelon(std::span(inst.A).first(k + 1), structure).ok();
}

ZeroRowTrace propagate_zero_rows(const SdpInstance& inst, std::size_t k, const Structure& structure) {
  if (!check_infeasibility_cert(inst, k, structure))
    throw std::invalid_argument("propagate_zero_rows: infeasibility certificate does not hold");
  ZeroRowTrace trace;
  const std::size_t n = inst.n;
  for (std::size_t i = 0; i < k; ++i) {
    const SymMatrix& a = inst.A[i];
    // On the indices not yet forced to zero, A_i is diagonal and nonnegative,
    // so A_i . X = 0 with X psd zeroes every X(j,j) with A_i(j,j) > 0.
    std::vector<std::size_t> fresh;
    for (std::size_t r = 0; r < n; ++r) {
      if (trace.forced.contains(r)) continue;
      for (std::size_t c = r + 1; c < n; ++c)
        if (!trace.forced.contains(c) && a(r, c) != 0)
          throw std::logic_error("propagate_zero_rows: residual constraint is not diagonal");
      if (a(r, r) < 0) throw std::logic_error("propagate_zero_rows: negative residual diagonal");
      if (a(r, r) > 0) fresh.push_back(r);
    }
    IndexSet newly(std::move(fresh));
    trace.forced = trace.forced.united(newly);
    trace.steps.push_back(ForcingStep{i, std::move(newly)});
  }
  return trace;
}

bool check_not_strong_cert(const SdpInstance& inst, std::span<const SymMatrix> xs, const Structure& structure) {
  inst.check();
  if (xs.size() < 2) return false;
  for (const auto& x : xs)
    if (x.order() != inst.n) throw DimensionError("not-strong certificate: X of wrong order");
  if (structure.order != inst.n) return false;
  if (!validate_echelon(xs, structure).ok()) return false;
  const Matrix products = kernels::parallel::inner_products(inst.A, xs);
  const std::size_t l = xs.size() - 1;
  for (std::size_t i = 0; i < inst.m(); ++i) {
    for (std::size_t j = 0; j < l; ++j)
      if (products(i, j) != 0) return false;
    if (products(i, l) != inst.b[i]) return false;
  }
  return true;
}

AsymptoteWitness asymptote_witness(const SdpInstance& inst, std::span<const SymMatrix> xs, const Structure& structure,
                                   const Rational& eps) {
  if (eps <= 0) throw std::invalid_argument("asymptote_witness: eps must be positive");
  if (!check_not_strong_cert(inst, xs, structure))
    throw std::invalid_argument("asymptote_witness: not-strong certificate does not hold");
  const std::size_t n = inst.n;
  const std::size_t l = xs.size() - 1;

  std::vector<std::size_t> uncovered;
  const IndexSet covered = structure.all();
  for (std::size_t j = 0; j < n; ++j)
    if (!covered.contains(j)) uncovered.push_back(j);

  AsymptoteWitness w;
  w.padding = SymMatrix(n);
  w.delta = 0;
  if (!uncovered.empty()) {
    const Rational budget = eps * eps;
    const Rational count = static_cast<unsigned long>(uncovered.size());
    w.delta = 1;
    while (count * w.delta * w.delta > budget) w.delta /= 2;
    for (std::size_t j : uncovered) w.padding.set(j, j, w.delta);
  }

  w.point = xs[l] + w.padding;
  w.multipliers.assign(l, Rational(0));
  std::vector<std::size_t> rows = uncovered;
  rows.insert(rows.end(), structure.blocks[l].begin(), structure.blocks[l].end());
  for (std::size_t i = l; i-- > 0;) {
    rows.insert(rows.end(), structure.blocks[i].begin(), structure.blocks[i].end());
    Rational gamma = 1;
    for (int doubling = 0;; ++doubling) {
      if (doubling > 4096) throw std::logic_error("asymptote_witness: multiplier search did not terminate");
      SymMatrix candidate = w.point;
      candidate.add_scaled(xs[i], gamma);
      if (psd_certify(principal(candidate, rows)).positive_definite()) {
        w.point = std::move(candidate);
        break;
      }
      gamma *= 2;
    }
    w.multipliers[i] = gamma;
  }
  w.certificate = psd_certify(w.point);
  return w;
}

bool check_strong_infeasibility_cert(const SdpInstance& inst, const Vector& y) {
  inst.check();
  if (y.size() != inst.m()) return false;
  Rational by = 0;
  for (std::size_t i = 0; i < y.size(); ++i) by += inst.b[i] * y[i];
  if (by != -1) return false;
  SymMatrix s(inst.n);
  for (std::size_t i = 0; i < y.size(); ++i) s.add_scaled(inst.A[i], y[i]);
  return psd_certify(s).psd();
}

}  // namespace wsdp
