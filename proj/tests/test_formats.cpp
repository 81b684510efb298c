#include "oracle/cbf_reader.hpp"
#include "wsdp/instances.hpp"

#include <doctest.h>

#include <filesystem>
#include <sstream>

using namespace wsdp;
namespace fs = std::filesystem;

namespace {

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);)
    if (l == line) return true;
  return false;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::size_t line_of(const std::string& text) {
  try {
    parse_sdpa(text);
  } catch (const FormatError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("sdpa output of the small example") {
  const auto me = me_instance();
  const std::string s = sdpa_string(me.raw, {"tiny"});
  CHECK(has_line(s, "1 1 1 1 1"));
  CHECK(has_line(s, "2 1 1 2 1"));
  CHECK(parse_sdpa(s) == me.raw);
}

TEST_CASE("sdpa round trips") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    GenConfig c;
    c.seed = seed;
    c.n = 3 + seed % 5;
    c.m = 2 + seed % 3;
    c.messy = seed % 2;
    const auto w = generate(c);
    bool lossy = true;
    const auto text = sdpa_string(w.published(), {}, &lossy);
    CHECK_FALSE(lossy);
    CHECK(parse_sdpa(text) == w.published());
  }
  const SdpInstance empty{3, {}, {}};
  CHECK(parse_sdpa(sdpa_string(empty)) == empty);

  const SdpInstance third{2, {SymMatrix{{Rational(1, 3), 0}, {0, 1}}}, {Rational(1, 2)}};
  bool lossy = false;
  const auto t = sdpa_string(third, {}, &lossy);
  CHECK(lossy);
  CHECK(t.find("lossy: yes") != std::string::npos);
  // Halves are exact in decimal.
  const SdpInstance half{2, {SymMatrix{{Rational(1, 2), 0}, {0, 1}}}, {Rational(-5, 4)}};
  CHECK(parse_sdpa(sdpa_string(half, {}, &lossy)) == half);
  CHECK_FALSE(lossy);
}

TEST_CASE("sdpa errors carry line numbers") {
  CHECK(line_of("1\n1\n2\n0\n1 1 1 1 x\n") == 5);
  CHECK(line_of("1\n2\n2 2\n0\n1 1 1 1 1\n") > 0);  // two blocks
  CHECK(line_of("1\n1\n2\n0\n1 1 3 1 1\n") == 5);   // index out of range
  CHECK(line_of("1\n1\n2\n0\n1 1 1 1 1\n1 1 1 1 2\n") == 6);
  CHECK(line_of("1\n1\n2\n0\n0 1 1 1 1\n") == 5);   // objective must be zero
  CHECK_THROWS_AS(parse_sdpa(""), FormatError);
  CHECK_THROWS_AS(read_sdpa("/nonexistent/file.dat-s"), IoError);
}

TEST_CASE("cbf output re-reads to the same coefficients") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GenConfig c;
    c.seed = seed;
    c.n = 3 + seed % 4;
    c.m = 2 + seed % 3;
    c.messy = true;
    const auto inst = generate(c).published();
    const auto p = oracle::read_cbf(cbf_string(inst, "generated"));
    CHECK(p.version == 3);
    CHECK(p.objsense == "MIN");
    REQUIRE(p.psd_orders.size() == 1);
    CHECK(p.psd_orders[0] == static_cast<long>(inst.n));
    CHECK(p.rows == static_cast<long>(inst.m()));

    std::multiset<std::tuple<long, long, long, long, oracle::Q>> want;
    std::map<long, oracle::Q> want_b;
    for (std::size_t i = 0; i < inst.m(); ++i) {
      for (std::size_t r = 0; r < inst.n; ++r)
        for (std::size_t col = 0; col <= r; ++col)
          if (inst.A[i](r, col) != 0)
            want.insert({static_cast<long>(i), 0L, static_cast<long>(r), static_cast<long>(col),
                         oracle::Q(to_string(inst.A[i](r, col)))});
      if (inst.b[i] != 0) want_b[static_cast<long>(i)] = -oracle::Q(to_string(inst.b[i]));
    }
    CHECK(p.f == want);
    CHECK(p.b == want_b);
  }
}

TEST_CASE("native bundles round trip") {
  for (const auto& name : builtin_instance_names()) {
    const auto b = builtin_bundle(name);
    CHECK(parse_native(native_string(b)) == b);
  }
  GenConfig c;
  c.n = 6;
  c.m = 5;
  c.k = 2;
  c.l = 2;
  c.messy = true;
  const auto b = make_bundle(generate(c), c, "gen");
  const auto back = parse_native(native_string(b));
  CHECK(back == b);
  REQUIRE(back.certificate);
  CHECK(verify_weak_infeasibility(*back.certificate).passed());

  TempDir dir("wsdp_native_test");
  write_native(b, dir.path / "x.wsdp");
  CHECK(read_native(dir.path / "x.wsdp") == b);
}

TEST_CASE("native format errors") {
  CHECK_THROWS_AS(parse_native("{"), FormatError);
  CHECK_THROWS_AS(parse_native("{\"format\": \"other\"}"), FormatError);
  auto text = native_string(builtin_bundle("me"));
  const auto pos = text.find("\"version\": 1");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 12, "\"version\": 99");
  CHECK_THROWS_AS(parse_native(text), FormatError);
  try {
    parse_native("{\n  \"format\": \"wsdp\",\n  oops\n}");
    FAIL("expected an error");
  } catch (const FormatError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(read_native("/nonexistent/x.wsdp"), IoError);
}

TEST_CASE("svg cell kinds follow the echelon regions") {
  const auto cert = large_certificate();
  for (std::size_t i = 0; i <= cert.k; ++i) {
    const auto colors = cell_colors(cert.clean.A[i], cert.P, i);
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) {
        const auto region = classify_cell(cert.P, i, r, c);
        const bool nz = cert.clean.A[i](r, c) != 0;
        CHECK(colors[r][c] != CellColor::Stray);
        if (!nz) CHECK(colors[r][c] == CellColor::White);
        if (nz && region == CellRegion::Arbitrary) CHECK(colors[r][c] == CellColor::Arbitrary);
        if (nz && region == CellRegion::PositiveBlock && r == c) CHECK(colors[r][c] == CellColor::Positive);
      }
  }
  const auto zero = cell_colors(SymMatrix(3), Structure{3, {IndexSet{0}}}, 0);
  for (const auto& row : zero)
    for (auto c : row) CHECK(c == CellColor::White);

  // A nonzero outside the pattern is flagged.
  const SymMatrix stray{{1, 0, 0}, {0, 0, 2}, {0, 2, 0}};
  CHECK(cell_colors(stray, Structure{3, {IndexSet{0}}}, 0)[1][2] == CellColor::Stray);

  const auto svg = svg_string(cert.clean.A[1], cert.P, 1, "A2");
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("data-cell=\"1,1\"") != std::string::npos);
  CHECK(svg.find(fill_of(CellColor::Positive)) != std::string::npos);

  TempDir dir("wsdp_svg_test");
  const auto files = render_blocks(std::vector(cert.clean.A.begin(), cert.clean.A.begin() + 3), cert.P, dir.path, "A");
  CHECK(files.size() == 3);
  for (const auto& f : files) CHECK(fs::exists(f));
  CHECK(files[0].filename() == "A_1.svg");
}
