#include "wsdp/formats.hpp"

#include <json.hpp>

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace wsdp {

using nlohmann::json;

namespace {

// ---------- native ----------

std::string value_text(const Rational& v) { return to_string(v); }

Rational value_from(const json& j) {
  if (!j.is_string()) throw FormatError("expected a rational string, got " + j.dump());
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

json sparse_to_json(const SymMatrix& a) {
  json entries = json::array();
  for (std::size_t r = 0; r < a.order(); ++r)
    for (std::size_t c = r; c < a.order(); ++c)
      if (a(r, c) != 0) entries.push_back(json::array({r + 1, c + 1, value_text(a(r, c))}));
  return entries;
}

SymMatrix sparse_from_json(const json& j, std::size_t n) {
  SymMatrix a(n);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 3) throw FormatError("matrix entry must be [row, col, value]");
    auto r = e[0].get<std::size_t>(), c = e[1].get<std::size_t>();
    if (r < 1 || c < 1 || r > n || c > n) throw FormatError("matrix entry index out of range: " + e.dump());
    if (r > c) std::swap(r, c);
    if (!seen.insert({r, c}).second) throw FormatError("duplicate matrix entry: " + e.dump());
    a.set(r - 1, c - 1, value_from(e[2]));
  }
  return a;
}

json dense_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(value_text(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix dense_from_json(const json& j, std::size_t expected) {
  if (!j.is_array() || j.size() != expected) throw FormatError("expected a " + std::to_string(expected) + "-row matrix");
  Matrix m(expected, expected);
  for (std::size_t i = 0; i < expected; ++i) {
    if (!j[i].is_array() || j[i].size() != expected) throw FormatError("matrix row " + std::to_string(i + 1) + " has wrong length");
    for (std::size_t c = 0; c < expected; ++c) m(i, c) = value_from(j[i][c]);
  }
  return m;
}

json instance_to_json(const SdpInstance& inst) {
  json j;
  j["n"] = inst.n;
  j["m"] = inst.m();
  json b = json::array();
  for (const auto& v : inst.b) b.push_back(value_text(v));
  j["b"] = std::move(b);
  json a = json::array();
  for (const auto& m : inst.A) a.push_back(sparse_to_json(m));
  j["A"] = std::move(a);
  return j;
}

SdpInstance instance_from_json(const json& j) {
  SdpInstance inst;
  inst.n = j.at("n").get<std::size_t>();
  const auto m = j.at("m").get<std::size_t>();
  const auto& b = j.at("b");
  const auto& a = j.at("A");
  if (b.size() != m || a.size() != m) throw FormatError("instance: b and A must have m entries");
  for (const auto& v : b) inst.b.push_back(value_from(v));
  for (const auto& e : a) inst.A.push_back(sparse_from_json(e, inst.n));
  return inst;
}

json structure_to_json(const Structure& s) {
  json blocks = json::array();
  for (const auto& blk : s.blocks) {
    json items = json::array();
    for (std::size_t i : blk) items.push_back(i + 1);
    blocks.push_back(std::move(items));
  }
  return json{{"order", s.order}, {"blocks", std::move(blocks)}};
}

Structure structure_from_json(const json& j) {
  Structure s;
  s.order = j.at("order").get<std::size_t>();
  for (const auto& blk : j.at("blocks")) {
    std::vector<std::size_t> items;
    for (const auto& i : blk) {
      const auto v = i.get<std::size_t>();
      if (v < 1 || v > s.order) throw FormatError("structure index out of range: " + std::to_string(v));
      items.push_back(v - 1);
    }
    try {
      s.blocks.emplace_back(std::move(items));
    } catch (const std::invalid_argument& e) {
      throw FormatError(e.what());
    }
  }
  return s;
}

json config_to_json(const GenConfig& c) {
  return json{{"n", c.n},
              {"m", c.m},
              {"k", c.k},
              {"l", c.l},
              {"seed", c.seed},
              {"entry_range", c.entry_range},
              {"block_min", c.block_min},
              {"block_max", c.block_max},
              {"mess_budget", c.mess_budget},
              {"mess_magnitude", c.mess_magnitude},
              {"overlap", to_string(c.overlap)},
              {"messy", c.messy}};
}

GenConfig config_from_json(const json& j) {
  GenConfig c;
  c.n = j.at("n").get<std::size_t>();
  c.m = j.at("m").get<std::size_t>();
  c.k = j.at("k").get<std::size_t>();
  c.l = j.at("l").get<std::size_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.entry_range = j.at("entry_range").get<std::int64_t>();
  c.block_min = j.at("block_min").get<std::size_t>();
  c.block_max = j.at("block_max").get<std::size_t>();
  c.mess_budget = j.at("mess_budget").get<std::size_t>();
  c.mess_magnitude = j.at("mess_magnitude").get<std::int64_t>();
  try {
    c.overlap = parse_overlap_policy(j.at("overlap").get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  c.messy = j.at("messy").get<bool>();
  return c;
}

bool scalar_array(const json& j) {
  if (!j.is_array()) return false;
  for (const auto& e : j)
    if (e.is_structured()) return false;
  return true;
}

// Pretty printer that keeps arrays of scalars on one line, so each matrix
// entry or row stays readable.
void emit(std::ostream& os, const json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(depth + 1) * 2, ' ');
  if (j.is_object()) {
    if (j.empty()) {
      os << "{}";
      return;
    }
    os << "{\n";
    std::size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
      os << inner << json(it.key()).dump() << ": ";
      emit(os, it.value(), depth + 1);
      os << (i + 1 < j.size() ? ",\n" : "\n");
    }
    os << pad << "}";
  } else if (j.is_array() && !scalar_array(j)) {
    os << "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      os << inner;
      emit(os, j[i], depth + 1);
      os << (i + 1 < j.size() ? ",\n" : "\n");
    }
    os << pad << "]";
  } else if (j.is_array()) {
    os << '[';
    for (std::size_t i = 0; i < j.size(); ++i) os << (i ? ", " : "") << j[i].dump();
    os << ']';
  } else {
    os << j.dump();
  }
}

std::size_t line_of_byte(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

// ---------- numbers in solver formats ----------

std::string solver_number(const Rational& v, bool& lossy) {
  if (auto d = exact_decimal(v)) return *d;
  lossy = true;
  return rounded_decimal(v, 17);
}

struct Token {
  std::string text;
  std::size_t line;
};

std::vector<Token> sdpa_tokens(const std::string& text) {
  std::vector<Token> out;
  std::istringstream in(text);
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '*' || line[first] == '"') continue;
    for (char& ch : line)
      if (ch == '{' || ch == '}' || ch == '(' || ch == ')' || ch == ',' || ch == '\r') ch = ' ';
    std::istringstream words(line);
    std::string w;
    while (words >> w) out.push_back({w, no});
  }
  return out;
}

long long integer_token(const Token& t, const std::string& what) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(t.text, &used);
    if (used != t.text.size()) throw std::invalid_argument(t.text);
    return v;
  } catch (const std::exception&) {
    throw FormatError("expected integer " + what + ", got '" + t.text + "'", t.line);
  }
}

Rational rational_token(const Token& t) {
  try {
    return parse_rational(t.text);
  } catch (const std::invalid_argument&) {
    throw FormatError("malformed number '" + t.text + "'", t.line);
  }
}

const char* color_name(CellColor c) {
  switch (c) {
    case CellColor::White: return "zero";
    case CellColor::Positive: return "positive";
    case CellColor::Arbitrary: return "arbitrary";
    case CellColor::Stray: return "stray";
  }
  return "zero";
}

}  // namespace

NativeBundle make_bundle(const WeakInstance& w, std::optional<GenConfig> cfg, std::string label) {
  NativeBundle b;
  b.instance = w.published();
  b.certificate = w.certificate();
  b.config = std::move(cfg);
  b.label = std::move(label);
  return b;
}

std::string native_string(const NativeBundle& bundle) {
  json j;
  j["format"] = "wsdp";
  j["version"] = kNativeVersion;
  j["label"] = bundle.label;
  j["instance"] = instance_to_json(bundle.instance);
  if (bundle.certificate) {
    const WeakCertificate& c = *bundle.certificate;
    if (!(c.raw == bundle.instance)) throw std::invalid_argument("native bundle: certificate refers to another instance");
    json x = json::array();
    for (const auto& m : c.X) x.push_back(sparse_to_json(m));
    j["certificate"] = json{{"G", dense_to_json(c.G)},
                            {"T", dense_to_json(c.T)},
                            {"clean", instance_to_json(c.clean)},
                            {"k", c.k},
                            {"X", std::move(x)},
                            {"P", structure_to_json(c.P)},
                            {"Q", structure_to_json(c.Q)}};
  }
  if (bundle.config) j["config"] = config_to_json(*bundle.config);
  std::ostringstream os;
  emit(os, j, 0);
  os << '\n';
  return os.str();
}

NativeBundle parse_native(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("JSON syntax error: ") + e.what(), line_of_byte(text, e.byte));
  }
  try {
    if (!j.is_object() || j.value("format", "") != "wsdp") throw FormatError("not a wsdp bundle");
    const int version = j.at("version").get<int>();
    if (version != kNativeVersion)
      throw FormatError("unsupported bundle version " + std::to_string(version) + " (expected " +
                        std::to_string(kNativeVersion) + ")");
    NativeBundle b;
    b.label = j.value("label", "");
    b.instance = instance_from_json(j.at("instance"));
    if (j.contains("certificate")) {
      const json& c = j.at("certificate");
      WeakCertificate cert;
      cert.raw = b.instance;
      cert.G = dense_from_json(c.at("G"), b.instance.m());
      cert.T = dense_from_json(c.at("T"), b.instance.n);
      cert.clean = instance_from_json(c.at("clean"));
      cert.k = c.at("k").get<std::size_t>();
      for (const auto& x : c.at("X")) cert.X.push_back(sparse_from_json(x, cert.clean.n));
      cert.P = structure_from_json(c.at("P"));
      cert.Q = structure_from_json(c.at("Q"));
      b.certificate = std::move(cert);
    }
    if (j.contains("config")) b.config = config_from_json(j.at("config"));
    return b;
  } catch (const json::exception& e) {
    throw FormatError(std::string("bundle schema: ") + e.what());
  }
}

void write_native(const NativeBundle& bundle, const std::filesystem::path& path) {
  write_text(path, native_string(bundle));
}

NativeBundle read_native(const std::filesystem::path& path) { return parse_native(read_text(path)); }

std::string sdpa_string(const SdpInstance& inst, const SdpaOptions& opt, bool* lossy_out) {
  inst.check();
  if (inst.n == 0) throw DimensionError("SDPA output needs a block of positive order");
  bool lossy = false;
  std::ostringstream body;
  body << inst.m() << '\n' << 1 << '\n' << inst.n << '\n';
  for (std::size_t i = 0; i < inst.m(); ++i) body << (i ? " " : "") << solver_number(inst.b[i], lossy);
  body << '\n';
  for (std::size_t i = 0; i < inst.m(); ++i)
    for (std::size_t r = 0; r < inst.n; ++r)
      for (std::size_t c = r; c < inst.n; ++c)
        if (inst.A[i](r, c) != 0)
          body << i + 1 << " 1 " << r + 1 << ' ' << c + 1 << ' ' << solver_number(inst.A[i](r, c), lossy) << '\n';

  std::ostringstream os;
  os << "* feasibility system: find Y psd with F_i . Y = c_i (i = 1..m)\n";
  os << "* SDPA dual side: F_i = A_i, c = b, F_0 = 0 (no objective)\n";
  if (!opt.label.empty()) os << "* label: " << opt.label << '\n';
  os << "* lossy: " << (lossy ? "yes (some values rounded to 17 significant digits)" : "no") << '\n';
  os << body.str();
  if (lossy_out) *lossy_out = lossy;
  return os.str();
}

SdpInstance parse_sdpa(const std::string& text) {
  const auto tokens = sdpa_tokens(text);
  std::size_t pos = 0;
  auto next = [&](const std::string& what) -> const Token& {
    if (pos >= tokens.size()) {
      const std::size_t last = tokens.empty() ? 0 : tokens.back().line;
      throw FormatError("unexpected end of file, expected " + what, last);
    }
    return tokens[pos++];
  };
  const Token& mt = next("constraint count");
  const long long m = integer_token(mt, "constraint count");
  if (m < 0) throw FormatError("negative constraint count", mt.line);
  const Token& bt = next("block count");
  if (integer_token(bt, "block count") != 1) throw FormatError("only a single block is supported", bt.line);
  const Token& nt = next("block size");
  const long long n = integer_token(nt, "block size");
  if (n <= 0) throw FormatError("block must be a positive-order semidefinite block", nt.line);

  SdpInstance inst;
  inst.n = static_cast<std::size_t>(n);
  for (long long i = 0; i < m; ++i) inst.b.push_back(rational_token(next("right-hand side")));
  inst.A.assign(static_cast<std::size_t>(m), SymMatrix(inst.n));
  std::set<std::tuple<long long, long long, long long>> seen;
  while (pos < tokens.size()) {
    const Token& first = tokens[pos];
    const long long mat = integer_token(next("matrix number"), "matrix number");
    const long long blk = integer_token(next("block number"), "block number");
    long long r = integer_token(next("row index"), "row index");
    long long c = integer_token(next("column index"), "column index");
    const Rational v = rational_token(next("entry value"));
    if (mat < 0 || mat > m) throw FormatError("matrix number out of range", first.line);
    if (blk != 1) throw FormatError("block number must be 1", first.line);
    if (r < 1 || c < 1 || r > n || c > n) throw FormatError("entry index out of range", first.line);
    if (r > c) std::swap(r, c);
    if (!seen.insert({mat, r, c}).second) throw FormatError("duplicate entry", first.line);
    if (mat == 0) {
      if (v != 0) throw FormatError("objective matrix must be zero for a feasibility system", first.line);
      continue;
    }
    inst.A[static_cast<std::size_t>(mat - 1)].set(static_cast<std::size_t>(r - 1), static_cast<std::size_t>(c - 1), v);
  }
  return inst;
}

void write_sdpa(const SdpInstance& inst, const std::filesystem::path& path, const SdpaOptions& opt) {
  write_text(path, sdpa_string(inst, opt));
}

SdpInstance read_sdpa(const std::filesystem::path& path) { return parse_sdpa(read_text(path)); }

std::string cbf_string(const SdpInstance& inst, const std::string& comment, bool* lossy_out) {
  inst.check();
  bool lossy = false;
  std::ostringstream f, bc;
  std::size_t fcount = 0, bcount = 0;
  for (std::size_t i = 0; i < inst.m(); ++i) {
    for (std::size_t r = 0; r < inst.n; ++r)
      for (std::size_t c = 0; c <= r; ++c)
        if (inst.A[i](r, c) != 0) {
          f << i << " 0 " << r << ' ' << c << ' ' << solver_number(inst.A[i](r, c), lossy) << '\n';
          ++fcount;
        }
    // Rows read A_i . X + beta_i = 0.
    if (inst.b[i] != 0) {
      bc << i << ' ' << solver_number(-inst.b[i], lossy) << '\n';
      ++bcount;
    }
  }
  std::ostringstream os;
  os << "# feasibility system: A_i . X = b_i, X psd\n";
  if (!comment.empty()) {
    std::istringstream lines(comment);
    std::string l;
    while (std::getline(lines, l)) os << "# " << l << '\n';
  }
  os << "# lossy: " << (lossy ? "yes" : "no") << "\n\n";
  os << "VER\n3\n\nOBJSENSE\nMIN\n\n";
  if (inst.n > 0) os << "PSDVAR\n1\n" << inst.n << "\n\n";
  if (inst.m() > 0) os << "CON\n" << inst.m() << " 1\nL= " << inst.m() << "\n\n";
  if (fcount) os << "FCOORD\n" << fcount << '\n' << f.str() << '\n';
  if (bcount) os << "BCOORD\n" << bcount << '\n' << bc.str() << '\n';
  if (lossy_out) *lossy_out = lossy;
  return os.str();
}

void write_cbf(const SdpInstance& inst, const std::filesystem::path& path, const std::string& comment) {
  write_text(path, cbf_string(inst, comment));
}

std::string to_string(CellColor c) { return color_name(c); }

std::string fill_of(CellColor c) {
  switch (c) {
    case CellColor::White: return "#ffffff";
    case CellColor::Positive: return "#d62728";
    case CellColor::Arbitrary: return "#1f77b4";
    case CellColor::Stray: return "#7f7f7f";
  }
  return "#ffffff";
}

std::vector<std::vector<CellColor>> cell_colors(const SymMatrix& a, const Structure& structure, std::size_t index) {
  const std::size_t n = a.order();
  if (structure.order != n) throw DimensionError("cell_colors: structure order differs from matrix order");
  std::vector<std::vector<CellColor>> out(n, std::vector<CellColor>(n, CellColor::White));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      if (a(r, c) == 0) continue;
      const CellRegion reg = index < structure.blocks.size() ? classify_cell(structure, index, r, c) : CellRegion::Zero;
      if (reg == CellRegion::PositiveBlock && r == c)
        out[r][c] = CellColor::Positive;
      else if (reg == CellRegion::Arbitrary)
        out[r][c] = CellColor::Arbitrary;
      else
        out[r][c] = CellColor::Stray;
    }
  return out;
}

std::string svg_string(const SymMatrix& a, const Structure& structure, std::size_t index, const std::string& title) {
  constexpr int cell = 24, margin = 8, head = 20;
  const auto colors = cell_colors(a, structure, index);
  const int n = static_cast<int>(a.order());
  const int width = 2 * margin + n * cell;
  const int height = 2 * margin + head + n * cell;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\" viewBox=\"0 0 "
     << width << ' ' << height << "\">\n";
  os << "<text x=\"" << margin << "\" y=\"" << margin + 12 << "\" font-family=\"monospace\" font-size=\"12\">"
     << (title.empty() ? "matrix " + std::to_string(index + 1) : title) << "</text>\n";
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const CellColor col = colors[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      os << "<rect data-cell=\"" << r + 1 << ',' << c + 1 << "\" data-kind=\"" << color_name(col) << "\" x=\""
         << margin + c * cell << "\" y=\"" << margin + head + r * cell << "\" width=\"" << cell << "\" height=\"" << cell
         << "\" fill=\"" << fill_of(col) << "\" stroke=\"#cccccc\"><title>"
         << to_string(a(static_cast<std::size_t>(r), static_cast<std::size_t>(c))) << "</title></rect>\n";
    }
  os << "</svg>\n";
  return os.str();
}

std::vector<std::filesystem::path> render_blocks(const std::vector<SymMatrix>& matrices, const Structure& structure,
                                                 const std::filesystem::path& dir, const std::string& stem) {
  for (const auto& m : matrices)
    if (m.order() != structure.order) throw DimensionError("render_blocks: matrix order differs from structure order");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> out;
  for (std::size_t i = 0; i < matrices.size(); ++i) {
    auto path = dir / (stem + "_" + std::to_string(i + 1) + ".svg");
    write_text(path, svg_string(matrices[i], structure, i, stem + " " + std::to_string(i + 1)));
    out.push_back(std::move(path));
  }
  return out;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path.string());
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) throw IoError("error writing " + path.string());
}

}  // namespace wsdp
