#pragma once

#include "wsdp/formats.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace wsdp {

/// The 2x2 system A_1 = E_11, A_2 = E_12 + E_21, b = (0, 2) with its echelon certificate.
struct WorkedExample {
  SdpInstance raw;
  WeakCertificate certificate;
};

WorkedExample me_instance();

/// The 4x4 system with hidden structure, plus the transformation that exposes it.
struct HiddenExample {
  SdpInstance raw;
  Matrix G;
  Matrix T;
};

HiddenExample large_instance();
/// Full certificate for large_instance(), with the generating X sequence.
WeakCertificate large_certificate();

/// 3x3 family with overlapping P and Q blocks; alpha must be nonzero.
WeakInstance three_by_three(const Rational& alpha);

struct MotzkinSystem {
  WeakInstance weak;                   // k = 4 (6 with cubes), l = 2
  std::vector<std::string> monomials;  // label of each constraint row
  std::vector<std::pair<int, int>> basis;  // exponents (x, y) of the monomial vector z
};

/// Coefficient matching of f - lambda = X . z z^T for the Motzkin polynomial
/// f = 1 - 3x^2y^2 + x^2y^4 + x^4y^2; one constraint per non-constant monomial
/// (the constant term carries the free lambda). With `include_cubes`, x^3 and
/// y^3 are appended to z.
MotzkinSystem motzkin_sos(bool include_cubes = false);

/// Same system with lambda fixed: the constant row E_zz . X = 1 - lambda is appended.
SdpInstance motzkin_fixed_lambda(const Rational& lambda, bool include_cubes = false);

/// y with sum y_i A_i psd and b^T y = -1 for motzkin_fixed_lambda, built from
/// the moments of the point (x, y). Requires f(x, y) < lambda.
Vector motzkin_point_certificate(const Rational& lambda, const Rational& x, const Rational& y, bool include_cubes = false);

Rational motzkin_value(const Rational& x, const Rational& y);

std::vector<std::string> builtin_instance_names();
/// "me", "large", "3x3" or "motzkin"; throws std::invalid_argument otherwise.
NativeBundle builtin_bundle(const std::string& name);

struct LibraryCategory {
  std::string name;
  std::size_t n = 0;
  std::size_t m = 0;
};

struct LibraryProfile {
  std::string name;
  std::vector<LibraryCategory> categories;
  std::size_t per_category = 10;  // clean/messy pairs per category
  std::uint64_t base_seed = 1;
  bool render = true;
};

/// "default": four categories, 10 pairs each (80 instances). "quick": 2 pairs per category.
LibraryProfile library_profile(const std::string& name);

struct LibraryEntry {
  std::string name;
  std::string category;
  std::string kind;  // "clean" or "messy"
  GenConfig config;
  bool verified = false;
  bool sieve_detected = false;
  std::size_t mess_attempts = 0;  // messy transformations drawn until the sieve failed
  std::vector<std::string> files;  // relative to the library root
};

struct Manifest {
  std::string profile;
  std::vector<LibraryEntry> entries;

  std::string json() const;
};

/// Generates, verifies and writes every instance of `profile` under `root`,
/// including manifest.json. Throws if some instance fails verification.
Manifest library_build(const std::filesystem::path& root, const LibraryProfile& profile);

}  // namespace wsdp
