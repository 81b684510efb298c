#include "wsdp/instances.hpp"

#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <map>

using namespace wsdp;
namespace fs = std::filesystem;

namespace {

SymMatrix sym(std::initializer_list<std::initializer_list<Rational>> rows) {
  Matrix d(rows.size(), rows.size());
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (const auto& v : r) d(i, j++) = v;
    ++i;
  }
  return SymMatrix::from_dense(d);
}

const Rational h(1, 2);

}  // namespace

TEST_CASE("small example") {
  const auto me = me_instance();
  CHECK(me.raw.b == Vector{0, 2});
  CHECK(me.certificate.clean.b == Vector{0, -1});
  CHECK(verify_weak_infeasibility(me.certificate).passed());
}

TEST_CASE("hidden example exposes the stated echelon form") {
  const auto hidden = large_instance();
  const auto clean = reformulate(hidden.raw, hidden.G, hidden.T);
  CHECK(clean.b == Vector{0, 0, -1, -12});
  CHECK(clean.A[0] == sym({{1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}}));
  CHECK(clean.A[1] == sym({{2, 0, -2, h}, {0, 1, 0, 0}, {-2, 0, 0, 0}, {h, 0, 0, 0}}));
  CHECK(clean.A[2] == sym({{0, 3, 1, Rational(3, 2)}, {3, 1, 4, 1}, {1, 4, 1, 0}, {Rational(3, 2), 1, 0, 0}}));
  CHECK(clean.A[3] == h * sym({{-1, -2, -1, 3}, {-2, 2, -1, 2}, {-1, -1, 0, -1}, {3, 2, -1, 0}}));
  CHECK(reformulate(clean, *inverse(hidden.G), *inverse(hidden.T)) == hidden.raw);
  CHECK(large_certificate().clean == clean);
}

TEST_CASE("three by three family") {
  for (const Rational& alpha : {Rational(1), Rational(-2), Rational(3, 5)}) {
    const auto w = three_by_three(alpha);
    CHECK(w.clean.b.size() == 3);
    CHECK(w.clean.b[2] == 0);
    CHECK(w.k == 1);
    CHECK(w.l == 1);
    CHECK(verify_weak_infeasibility(w.certificate()).passed());
  }
  CHECK_THROWS_AS(three_by_three(0), std::invalid_argument);
}

TEST_CASE("motzkin coefficient matching") {
  const auto mz = motzkin_sos();
  const auto& w = mz.weak;
  CHECK(w.k == 4);
  CHECK(w.l == 2);
  CHECK(w.clean.n == 8);
  for (std::size_t j = 0; j < 2; ++j)
    for (const auto& a : w.clean.A) CHECK(inner(a, w.X[j]) == 0);
  CHECK(w.clean.apply(w.X[2]) == w.clean.b);

  // Independent count: distinct products z_i z_j minus the constant.
  std::map<std::pair<int, int>, std::size_t> count;
  for (const auto& p : mz.basis)
    for (const auto& q : mz.basis) ++count[{p.first + q.first, p.second + q.second}];
  CHECK(w.clean.m() == count.size() - 1);
  CHECK(mz.monomials.size() == w.clean.m());

  const auto row = std::find(mz.monomials.begin(), mz.monomials.end(), "x^2*y^2");
  REQUIRE(row != mz.monomials.end());
  CHECK(w.clean.b[static_cast<std::size_t>(row - mz.monomials.begin())] == -3);
  CHECK(verify_weak_infeasibility(w.certificate()).passed());
  const auto s = sieve_detect(w.clean);
  REQUIRE(s);
  CHECK(s->order.size() == 5);

  const auto cubes = motzkin_sos(true);
  CHECK(cubes.weak.k == 6);
  CHECK(cubes.weak.clean.n == 10);
  CHECK(verify_weak_infeasibility(cubes.weak.certificate()).passed());
}

TEST_CASE("motzkin with a fixed level is strongly infeasible above the minimum") {
  // The polynomial's minimum is 0, so any positive level is out of reach.
  CHECK(motzkin_value(1, 1) == 0);
  for (bool cubes : {false, true}) {
    const Rational lambda(1, 2);
    const auto inst = motzkin_fixed_lambda(lambda, cubes);
    const auto y = motzkin_point_certificate(lambda, 1, 1, cubes);
    CHECK(check_strong_infeasibility_cert(inst, y));
  }
  CHECK_THROWS_AS(motzkin_point_certificate(0, 1, 1), std::invalid_argument);
}

TEST_CASE("named built-in bundles") {
  for (const auto& name : builtin_instance_names()) {
    const auto b = builtin_bundle(name);
    REQUIRE(b.certificate);
    CHECK(verify_weak_infeasibility(*b.certificate).passed());
  }
  CHECK(builtin_instance_names().size() == 4);
  CHECK_THROWS_AS(builtin_bundle("nope"), std::invalid_argument);
}

TEST_CASE("quick library") {
  const auto profile = library_profile("quick");
  CHECK(profile.categories.size() == 4);
  CHECK_THROWS_AS(library_profile("huge"), std::invalid_argument);

  const fs::path root = fs::temp_directory_path() / "wsdp_library_test";
  const fs::path again = fs::temp_directory_path() / "wsdp_library_test2";
  fs::remove_all(root);
  fs::remove_all(again);
  auto prof = profile;
  prof.render = false;
  const auto m = library_build(root, prof);
  CHECK(m.entries.size() == 16);
  for (const auto& e : m.entries) {
    CHECK(e.verified);
    CHECK(e.sieve_detected == (e.kind == "clean"));
    for (const auto& f : e.files) CHECK(fs::exists(root / f));
  }
  const auto j = nlohmann::json::parse(read_text(root / "manifest.json"));
  CHECK(j["entries"].size() == 16);

  library_build(again, prof);
  for (const auto& e : m.entries)
    for (const auto& f : e.files) CHECK(read_text(root / f) == read_text(again / f));
  fs::remove_all(root);
  fs::remove_all(again);
}
