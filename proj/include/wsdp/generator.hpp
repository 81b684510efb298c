#pragma once

#include "wsdp/certify.hpp"
#include "wsdp/random.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace wsdp {

enum class OverlapPolicy { DisjointOnly, OverlappingAllowed };

std::string to_string(OverlapPolicy p);
OverlapPolicy parse_overlap_policy(const std::string& s);

struct GenConfig {
  std::size_t n = 2;
  std::size_t m = 2;
  std::size_t k = 1;
  std::size_t l = 1;
  std::uint64_t seed = 0;
  std::int64_t entry_range = 3;
  std::size_t block_min = 1;
  std::size_t block_max = 2;
  std::size_t mess_budget = 0;  // 0: about three elementary operations per row
  std::int64_t mess_magnitude = 1;
  OverlapPolicy overlap = OverlapPolicy::OverlappingAllowed;
  bool messy = false;

  /// Smallest order that fits the required blocks.
  std::size_t min_order() const;
  /// Throws std::invalid_argument with a description of the first problem.
  void validate() const;

  friend bool operator==(const GenConfig&, const GenConfig&) = default;
};

struct Provenance {
  Matrix G;  // messy row operations
  Matrix T;  // messy congruence
  SdpInstance messy;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct WeakInstance {
  SdpInstance clean;
  std::vector<SymMatrix> X;
  Structure P;
  Structure Q;
  std::size_t k = 0;
  std::size_t l = 0;
  std::optional<Provenance> provenance;

  /// The messy system if present, else the clean one.
  const SdpInstance& published() const { return provenance ? provenance->messy : clean; }
  /// Certificate for published(): (G, T) map the published system back to clean.
  WeakCertificate certificate() const;

  friend bool operator==(const WeakInstance&, const WeakInstance&) = default;
};

struct StructurePair {
  Structure P;  // k+1 blocks
  Structure Q;  // l+1 blocks
};

StructurePair choose_structures(const GenConfig& cfg, Rng& rng);
StructurePair choose_structures(const GenConfig& cfg);

/// Both block conditions the base equations rely on: P_1 misses every Q block
/// and Q_1 misses every P block.
bool structures_compatible(const Structure& p, const Structure& q);

struct BilinearSolution {
  Matrix M;
  std::vector<Matrix> Y;
};

/// Integer p x q matrix M and matrices Y_j with M . Y_j = targets[j].
/// M is nonzero whenever some target is.
BilinearSolution bilinear_solve(std::size_t p, std::size_t q, const Vector& targets, Rng& rng,
                                std::int64_t entry_range = 3);
BilinearSolution bilinear_solve(std::size_t p, std::size_t q, const Vector& targets, std::uint64_t seed,
                                std::int64_t entry_range = 3);

struct BaseSystem {
  std::vector<SymMatrix> A;  // k+1 matrices, echelon with P
  std::vector<SymMatrix> X;  // l+1 matrices, echelon with Q
};

/// A_i . X_j = 0 except A_{k+1} . X_{l+1} = -1, both sequences echelon.
BaseSystem base_equations(const GenConfig& cfg, const StructurePair& s, Rng& rng);

struct Extension {
  std::vector<SymMatrix> A;  // A_{k+2}..A_m
  Vector b;                  // full right-hand side, length m
};

/// Extra integer constraints orthogonal to X_1..X_l, with b_i = A_i . X_{l+1}.
Extension extend_constraints(const std::vector<SymMatrix>& base_a, const std::vector<SymMatrix>& x,
                             const GenConfig& cfg, Rng& rng);

/// Hides the structure with random unimodular row operations and congruence.
/// A budget of 0 uses about three elementary operations per row.
WeakInstance messify(WeakInstance inst, std::uint64_t seed, std::size_t budget, std::int64_t magnitude);

WeakInstance generate(const GenConfig& cfg);

/// Operator and right-hand side for which b is in the closure of the image of
/// the psd cone but not in the image itself.
struct BadProjectionWitness {
  SdpInstance system;
  std::vector<SymMatrix> X;
  Structure P;
  Structure Q;
  std::size_t k = 0;

  bool check() const;

  friend bool operator==(const BadProjectionWitness&, const BadProjectionWitness&) = default;
};

/// Throws std::invalid_argument when the clean certificate does not hold.
BadProjectionWitness bad_projection(const WeakInstance& inst);
BadProjectionWitness bad_projection(const BadProjectionWitness& w);

}  // namespace wsdp
