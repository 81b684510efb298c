#include "wsdp/instances.hpp"

#include <json.hpp>

#include <algorithm>
#include <exception>
#include <map>
#include <stdexcept>

namespace wsdp {

namespace {

SymMatrix unit(std::size_t n, std::size_t i, std::size_t j) { return SymMatrix::unit(n, i, j); }

std::string monomial_label(int ex, int ey) {
  auto part = [](const char* v, int e) -> std::string {
    if (e == 0) return "";
    return e == 1 ? std::string(v) : std::string(v) + "^" + std::to_string(e);
  };
  const std::string a = part("x", ex), b = part("y", ey);
  if (a.empty() && b.empty()) return "1";
  if (a.empty()) return b;
  if (b.empty()) return a;
  return a + "*" + b;
}

std::vector<std::pair<int, int>> motzkin_basis(bool include_cubes) {
  std::vector<std::pair<int, int>> z = {{2, 0}, {0, 2}, {1, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 1}, {0, 0}};
  if (include_cubes) {
    z.push_back({3, 0});
    z.push_back({0, 3});
  }
  return z;
}

// Pairs i <= j of z grouped by the monomial z_i z_j, constant excluded,
// ordered with the echelon prefix first and the rest by (degree, x exponent).
std::vector<std::pair<std::pair<int, int>, std::vector<std::pair<std::size_t, std::size_t>>>> motzkin_rows(
    const std::vector<std::pair<int, int>>& z, bool include_cubes) {
  std::map<std::pair<int, int>, std::vector<std::pair<std::size_t, std::size_t>>> groups;
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = i; j < z.size(); ++j)
      groups[{z[i].first + z[j].first, z[i].second + z[j].second}].push_back({i, j});
  groups.erase({0, 0});

  std::vector<std::pair<int, int>> lead;
  if (include_cubes) lead = {{6, 0}, {0, 6}};
  for (auto e : std::vector<std::pair<int, int>>{{4, 0}, {0, 4}, {2, 0}, {0, 2}, {2, 2}}) lead.push_back(e);

  std::vector<std::pair<int, int>> rest;
  for (const auto& [mono, pairs] : groups)
    if (std::find(lead.begin(), lead.end(), mono) == lead.end()) rest.push_back(mono);
  std::sort(rest.begin(), rest.end(), [](auto a, auto b) {
    const int da = a.first + a.second, db = b.first + b.second;
    return da != db ? da < db : a.first > b.first;
  });

  std::vector<std::pair<std::pair<int, int>, std::vector<std::pair<std::size_t, std::size_t>>>> rows;
  for (const auto& mono : lead) rows.push_back({mono, groups.at(mono)});
  for (const auto& mono : rest) rows.push_back({mono, groups.at(mono)});
  return rows;
}

Rational motzkin_coefficient(std::pair<int, int> mono) {
  if (mono == std::pair{2, 2}) return -3;
  if (mono == std::pair{2, 4} || mono == std::pair{4, 2}) return 1;
  return 0;
}

Rational power(const Rational& v, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= v;
  return r;
}

GenConfig library_config(const LibraryCategory& cat, std::uint64_t seed) {
  Rng rng(seed);
  GenConfig c;
  c.n = cat.n;
  c.m = cat.m;
  c.seed = seed;
  c.k = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(std::min<std::size_t>(3, cat.m - 1))));
  c.l = static_cast<std::size_t>(rng.uniform(1, 3));
  c.block_max = std::max<std::size_t>(1, std::min<std::size_t>(3, cat.n / (c.k + c.l + 1)));
  c.overlap = OverlapPolicy::OverlappingAllowed;
  return c;
}

struct Built {
  LibraryEntry clean, messy;
  WeakInstance clean_w, messy_w;
};

}  // namespace

WorkedExample me_instance() {
  WorkedExample e;
  e.raw = SdpInstance{2, {unit(2, 0, 0), unit(2, 0, 1)}, {0, 2}};
  WeakCertificate& c = e.certificate;
  c.raw = e.raw;
  c.G = Matrix{{1, 0}, {0, Rational(-1, 2)}};
  c.T = Matrix::identity(2);
  c.clean = SdpInstance{2, {unit(2, 0, 0), Rational(-1, 2) * unit(2, 0, 1)}, {0, -1}};
  c.k = 1;
  c.X = {unit(2, 1, 1), unit(2, 0, 1)};
  c.P = Structure{2, {IndexSet{0}, IndexSet{}}};
  c.Q = Structure{2, {IndexSet{1}, IndexSet{}}};
  return e;
}

HiddenExample large_instance() {
  HiddenExample e;
  e.raw.n = 4;
  e.raw.A = {
      SymMatrix{{8, -1, -9, -2}, {-1, -26, 3, 39}, {-9, 3, 10, 3}, {-2, 39, 3, -16}},
      SymMatrix{{5, -3, -6, -2}, {-3, -6, 5, 21}, {-6, 5, 7, 2}, {-2, 21, 2, -11}},
      SymMatrix{{-6, -3, 7, 4}, {-3, 34, 1, -43}, {7, 1, -8, -5}, {4, -43, -5, 18}},
      SymMatrix{{5, 4, -9, -6}, {4, -28, 6, 48}, {-9, 6, 13, 5}, {-6, 48, 5, -21}},
  };
  e.raw.b = {-44, -22, 44, -68};
  e.G = Rational(1, 2) * Matrix{{1, 0, 1, 0}, {0, 2, 1, 0}, {1, 1, 3, 1}, {0, 0, 1, 1}};
  e.T = Matrix{{-1, 1, 1, 1}, {0, 1, 0, 0}, {0, -1, 0, 1}, {0, 0, -1, 0}};
  return e;
}

WeakCertificate large_certificate() {
  const HiddenExample e = large_instance();
  WeakCertificate c;
  c.raw = e.raw;
  c.G = e.G;
  c.T = e.T;
  c.clean = reformulate(e.raw, e.G, e.T);
  c.k = 2;
  SymMatrix x2(4), x3(4);
  x2.set(1, 1, 1);
  x2.set(0, 3, -1);
  x2.set(1, 3, 1);
  x3.set(2, 2, 1);
  x3.set(1, 2, 1);
  x3.set(1, 3, -5);
  x3.set(2, 3, 1);
  c.X = {unit(4, 3, 3), x2, x3};
  c.P = Structure{4, {IndexSet{0}, IndexSet{1}, IndexSet{2}}};
  c.Q = Structure{4, {IndexSet{3}, IndexSet{1}, IndexSet{2}}};
  return c;
}

WeakInstance three_by_three(const Rational& alpha) {
  if (alpha == 0) throw std::invalid_argument("three_by_three: alpha must be nonzero");
  const Rational beta = -1 / alpha;
  WeakInstance w;
  w.clean.n = 3;
  w.clean.A = {unit(3, 0, 0), alpha * unit(3, 0, 2) + unit(3, 1, 1), unit(3, 0, 1) + unit(3, 1, 2)};
  w.clean.b = {0, -1, 0};
  w.X = {unit(3, 2, 2), beta * unit(3, 0, 2) + unit(3, 1, 1)};
  w.P = Structure{3, {IndexSet{0}, IndexSet{1}}};
  w.Q = Structure{3, {IndexSet{2}, IndexSet{1}}};
  w.k = 1;
  w.l = 1;
  return w;
}

MotzkinSystem motzkin_sos(bool include_cubes) {
  MotzkinSystem s;
  s.basis = motzkin_basis(include_cubes);
  const std::size_t n = s.basis.size();
  WeakInstance& w = s.weak;
  w.clean.n = n;
  for (const auto& [mono, pairs] : motzkin_rows(s.basis, include_cubes)) {
    SymMatrix a(n);
    for (auto [i, j] : pairs) a += unit(n, i, j);
    w.clean.A.push_back(std::move(a));
    w.clean.b.push_back(motzkin_coefficient(mono));
    s.monomials.push_back(monomial_label(mono.first, mono.second));
  }
  // Positions of z: x^2 y^2 x y xy xy^2 x^2y 1 [x^3 y^3] -> 0..7 [8 9].
  SymMatrix x2(n), x3(n);
  x2.set(2, 2, 2);
  x2.set(3, 3, 2);
  x2.set(0, 7, -1);
  x2.set(1, 7, -1);
  x3.set(4, 4, 1);
  x3.set(5, 5, 1);
  x3.set(6, 6, 1);
  x3.set(3, 6, -1);
  x3.set(2, 5, -1);
  w.X = {unit(n, 7, 7), x2, x3};
  w.Q = Structure{n, {IndexSet{7}, IndexSet{2, 3}, IndexSet{4, 5, 6}}};
  std::vector<IndexSet> p;
  if (include_cubes) {
    p.push_back(IndexSet{8});
    p.push_back(IndexSet{9});
  }
  for (std::size_t i = 0; i < 5; ++i) p.push_back(IndexSet{i});
  w.k = p.size() - 1;
  w.P = Structure{n, std::move(p)};
  w.l = 2;
  return s;
}

SdpInstance motzkin_fixed_lambda(const Rational& lambda, bool include_cubes) {
  SdpInstance inst = motzkin_sos(include_cubes).weak.clean;
  inst.A.push_back(unit(inst.n, 7, 7));
  inst.b.push_back(1 - lambda);
  return inst;
}

Rational motzkin_value(const Rational& x, const Rational& y) {
  return 1 - 3 * power(x, 2) * power(y, 2) + power(x, 2) * power(y, 4) + power(x, 4) * power(y, 2);
}

Vector motzkin_point_certificate(const Rational& lambda, const Rational& x, const Rational& y, bool include_cubes) {
  const Rational gap = lambda - motzkin_value(x, y);
  if (gap <= 0) throw std::invalid_argument("motzkin_point_certificate: need f(x, y) < lambda");
  const auto basis = motzkin_basis(include_cubes);
  Vector out;
  for (const auto& [mono, pairs] : motzkin_rows(basis, include_cubes))
    out.push_back(power(x, mono.first) * power(y, mono.second) / gap);
  out.push_back(1 / gap);  // constant row
  return out;
}

std::vector<std::string> builtin_instance_names() { return {"me", "large", "3x3", "motzkin"}; }

NativeBundle builtin_bundle(const std::string& name) {
  NativeBundle b;
  b.label = name;
  if (name == "me") {
    auto e = me_instance();
    b.instance = e.raw;
    b.certificate = e.certificate;
  } else if (name == "large") {
    auto c = large_certificate();
    b.instance = c.raw;
    b.certificate = std::move(c);
  } else if (name == "3x3") {
    const WeakInstance w = three_by_three(1);
    b.instance = w.clean;
    b.certificate = w.certificate();
  } else if (name == "motzkin") {
    const WeakInstance w = motzkin_sos().weak;
    b.instance = w.clean;
    b.certificate = w.certificate();
  } else {
    throw std::invalid_argument("unknown built-in instance '" + name + "' (expected me, large, 3x3 or motzkin)");
  }
  return b;
}

LibraryProfile library_profile(const std::string& name) {
  LibraryProfile p;
  p.name = name;
  p.categories = {{"miniature", 5, 4}, {"small", 10, 8}, {"medium", 20, 15}, {"large", 40, 25}};
  if (name == "default") {
    p.per_category = 10;
  } else if (name == "quick") {
    p.per_category = 2;
  } else {
    throw std::invalid_argument("unknown library profile '" + name + "' (expected default or quick)");
  }
  return p;
}

std::string Manifest::json() const {
  nlohmann::json j;
  j["profile"] = profile;
  j["count"] = entries.size();
  j["entries"] = nlohmann::json::array();
  for (const auto& e : entries) {
    const GenConfig& c = e.config;
    j["entries"].push_back({{"name", e.name},
                            {"category", e.category},
                            {"kind", e.kind},
                            {"seed", c.seed},
                            {"config",
                             {{"n", c.n},
                              {"m", c.m},
                              {"k", c.k},
                              {"l", c.l},
                              {"entry_range", c.entry_range},
                              {"block_min", c.block_min},
                              {"block_max", c.block_max},
                              {"overlap", to_string(c.overlap)},
                              {"mess_magnitude", c.mess_magnitude}}},
                            {"verification", e.verified ? "pass" : "fail"},
                            {"sieve", e.sieve_detected ? "detected" : "not detected"},
                            {"mess_attempts", e.mess_attempts},
                            {"files", e.files}});
  }
  return j.dump(2) + "\n";
}

Manifest library_build(const std::filesystem::path& root, const LibraryProfile& profile) {
  std::vector<std::pair<const LibraryCategory*, std::size_t>> jobs;
  for (const auto& cat : profile.categories)
    for (std::size_t i = 0; i < profile.per_category; ++i) jobs.push_back({&cat, i});

  std::vector<Built> built(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  const auto total = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t s = 0; s < total; ++s) {
    const auto idx = static_cast<std::size_t>(s);
    try {
      const auto& [cat, i] = jobs[idx];
      const std::uint64_t seed = splitmix64(profile.base_seed * 1000003ULL + idx);
      GenConfig cfg = library_config(*cat, seed);
      Built& b = built[idx];
      b.clean_w = generate(cfg);
      const std::string stem = cat->name + "_" + std::to_string(i + 1);

      b.clean.name = stem + "_clean";
      b.clean.category = cat->name;
      b.clean.kind = "clean";
      b.clean.config = cfg;
      b.clean.verified = verify_weak_infeasibility(b.clean_w.certificate()).passed();
      b.clean.sieve_detected = sieve_detect(b.clean_w.clean).has_value();

      // A messy draw that leaves a constraint visibly echelon is rejected, so
      // the published messy system does not give its structure away.
      Rng mess_rng(splitmix64(seed ^ 0x6d657373ULL));
      do {
        b.messy_w = messify(b.clean_w, mess_rng.next(), cfg.mess_budget, cfg.mess_magnitude);
        ++b.messy.mess_attempts;
      } while (sieve_detect(b.messy_w.published()) && b.messy.mess_attempts < 64);
      b.messy.name = stem + "_messy";
      b.messy.category = cat->name;
      b.messy.kind = "messy";
      b.messy.config = cfg;
      b.messy.config.messy = true;
      b.messy.verified = verify_weak_infeasibility(b.messy_w.certificate()).passed();
      b.messy.sieve_detected = sieve_detect(b.messy_w.published()).has_value();
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  Manifest manifest;
  manifest.profile = profile.name;
  std::error_code ec;
  std::filesystem::create_directories(root, ec);
  if (ec) throw IoError("cannot create " + root.string() + ": " + ec.message());

  auto emit = [&](LibraryEntry entry, const WeakInstance& w) {
    if (!entry.verified) throw std::runtime_error("library: " + entry.name + " failed verification");
    const std::filesystem::path dir = root / entry.category;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
    const std::string rel = entry.category + "/" + entry.name;
    write_native(make_bundle(w, entry.config, entry.name), root / (rel + ".wsdp"));
    write_sdpa(w.published(), root / (rel + ".dat-s"), SdpaOptions{entry.name});
    write_cbf(w.published(), root / (rel + ".cbf"), entry.name);
    entry.files = {rel + ".wsdp", rel + ".dat-s", rel + ".cbf"};
    if (profile.render) {
      const auto& a = w.published().A;
      std::vector<SymMatrix> prefix(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(w.k + 1));
      for (const auto& p : render_blocks(prefix, w.P, root / (rel + "_svg"), "A"))
        entry.files.push_back(std::filesystem::relative(p, root).generic_string());
      if (!w.provenance)
        for (const auto& p : render_blocks(w.X, w.Q, root / (rel + "_svg"), "X"))
          entry.files.push_back(std::filesystem::relative(p, root).generic_string());
    }
    manifest.entries.push_back(std::move(entry));
  };
  for (std::size_t i = 0; i < built.size(); ++i) {
    emit(built[i].clean, built[i].clean_w);
    emit(built[i].messy, built[i].messy_w);
  }
  write_text(root / "manifest.json", manifest.json());
  return manifest;
}

}  // namespace wsdp
