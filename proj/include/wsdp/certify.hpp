#pragma once

#include "wsdp/echelon.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wsdp {

/// Everything a third party needs to confirm weak infeasibility of `raw`:
/// clean.A_i = T^T (sum_j G(i,j) raw.A_j) T, clean.b = G raw.b, an echelon
/// prefix of length k+1 in `clean`, and the sequence X_1..X_{l+1}.
struct WeakCertificate {
  SdpInstance raw;
  Matrix G;
  Matrix T;
  SdpInstance clean;
  std::size_t k = 0;
  std::vector<SymMatrix> X;
  Structure P;
  Structure Q;

  std::size_t l() const { return X.empty() ? 0 : X.size() - 1; }

  friend bool operator==(const WeakCertificate&, const WeakCertificate&) = default;
};

/// Applies (G, T) to `raw`: constraint i becomes T^T (sum_j G(i,j) A_j) T with rhs (G b)_i.
SdpInstance reformulate(const SdpInstance& raw, const Matrix& g, const Matrix& t);

/// det G != 0, det T != 0, and clean is exactly the image of raw under (G, T).
bool check_reformulation(const SdpInstance& raw, const Matrix& g, const Matrix& t, const SdpInstance& clean);

struct CheckItem {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerificationReport {
  std::vector<CheckItem> items;

  bool passed() const;
  std::string text() const;
  std::string json() const;
};

VerificationReport verify_weak_infeasibility(const WeakCertificate& cert);

/// Scales constraint k+1 of the clean system (and row k+1 of G) so that
/// b'_{k+1} = -1. Requires b'_{k+1} < 0.
WeakCertificate normalize_contradiction(WeakCertificate cert);

struct SieveResult {
  std::size_t k = 0;
  Structure P;                    // k+1 blocks
  std::vector<std::size_t> order;  // constraints used, in elimination order (0-based)
};

/// Greedy sieve over diagonal nonnegative constraints; detects systems that are
/// in echelon form up to a permutation of the constraints.
std::optional<SieveResult> sieve_detect(const SdpInstance& inst);

/// Constraints in `order` first, then the rest in their original order.
SdpInstance permute_constraints(const SdpInstance& inst, const std::vector<std::size_t>& order);

}  // namespace wsdp
