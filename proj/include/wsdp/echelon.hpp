#pragma once

#include "wsdp/linalg.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wsdp {

/// Ordered disjoint index blocks (P_1, ..., P_t) over an ambient order n.
struct Structure {
  std::size_t order = 0;
  std::vector<IndexSet> blocks;

  /// Throws std::invalid_argument if blocks overlap or leave 0..order-1.
  void check() const;
  /// P_0 u ... u P_{count-1}
  IndexSet prefix_union(std::size_t count) const;
  IndexSet all() const { return prefix_union(blocks.size()); }
  std::string str() const;

  friend bool operator==(const Structure&, const Structure&) = default;
};

/// The feasibility system  A_i . X = b_i (i = 1..m),  X psd.
struct SdpInstance {
  std::size_t n = 0;
  std::vector<SymMatrix> A;
  Vector b;

  std::size_t m() const { return A.size(); }
  /// Throws DimensionError unless |A| = |b| and every A_i has order n.
  void check() const;
  /// (A_1 . X, ..., A_m . X)
  Vector apply(const SymMatrix& x) const;

  friend bool operator==(const SdpInstance&, const SdpInstance&) = default;
};

enum class EchelonRule {
  BlockCount,           // |structure| != |sequence|
  BlockOverlap,         // blocks not pairwise disjoint or out of range
  NonPositiveDiagonal,  // M_i(p,p) <= 0 for p in P_i
  OffDiagonalInBlock,   // M_i(P_i) not diagonal
  OutsidePattern,       // nonzero outside M_i(P_i) and M_i(P_1..P_{i-1}, N)
};

std::string to_string(EchelonRule rule);

struct EchelonViolation {
  std::size_t matrix = 0;  // 0-based
  std::size_t row = 0;
  std::size_t col = 0;
  EchelonRule rule{};
};

struct ValidationReport {
  std::optional<EchelonViolation> violation;

  bool ok() const { return !violation; }
  std::string describe() const;
};

/// Region a cell (row, col) of matrix `index` belongs to under `structure`.
enum class CellRegion { Zero, PositiveBlock, Arbitrary };

CellRegion classify_cell(const Structure& structure, std::size_t index, std::size_t row, std::size_t col);

/// Checks that `seq` is in semidefinite echelon form with `structure`.
/// Throws DimensionError if the matrices have different orders.
ValidationReport validate_echelon(std::span<const SymMatrix> seq, const Structure& structure);

/// Greedy left-to-right recovery of the structure of an echelon sequence.
std::optional<Structure> infer_structure(std::span<const SymMatrix> seq);

/// (A_1..A_{k+1}) echelon with `structure` (k+1 blocks), b_1..b_k = 0, b_{k+1} < 0.
/// Throws std::invalid_argument on a malformed structure or k+1 > m.
bool check_infeasibility_cert(const SdpInstance& inst, std::size_t k, const Structure& structure);

struct ForcingStep {
  std::size_t constraint = 0;  // 0-based
  IndexSet newly_zero;
};

struct ZeroRowTrace {
  IndexSet forced;
  std::vector<ForcingStep> steps;
};

/// Rows and columns that every psd X satisfying the first k equations must
/// have zero, derived one constraint at a time. Throws std::invalid_argument
/// if the infeasibility certificate does not hold.
ZeroRowTrace propagate_zero_rows(const SdpInstance& inst, std::size_t k, const Structure& structure);

/// (X_1..X_{l+1}) echelon with `structure`, A X_i = 0 for i <= l and
/// A X_{l+1} = b. False when fewer than two matrices are given.
bool check_not_strong_cert(const SdpInstance& inst, std::span<const SymMatrix> xs, const Structure& structure);

struct AsymptoteWitness {
  SymMatrix point;                  // X_{l+1} + padding + sum gamma_i X_i
  SymMatrix padding;                // delta * I on the uncovered indices
  Rational delta;                   // 0 when no index is uncovered
  std::vector<Rational> multipliers;  // gamma_1..gamma_l
  PsdVerdict certificate;           // psd_certify(point)
};

/// Positive semidefinite point whose distance to {A X = b} is at most eps.
///
/// delta is the largest power of 1/2 with |uncovered| * delta^2 <= eps^2, and
/// each gamma_i (i = l..1) is found by doubling from 1 until the trailing
/// principal block on Q_i u ... u Q_{l+2} is positive definite.
/// Throws std::invalid_argument if eps <= 0 or the not-strong certificate fails.
AsymptoteWitness asymptote_witness(const SdpInstance& inst, std::span<const SymMatrix> xs,
                                   const Structure& structure, const Rational& eps);

/// sum y_i A_i psd and b^T y = -1.
bool check_strong_infeasibility_cert(const SdpInstance& inst, const Vector& y);

}  // namespace wsdp
