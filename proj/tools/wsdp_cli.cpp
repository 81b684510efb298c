// Command-line front end: generate, verify, inspect and export weakly
// infeasible semidefinite systems.
//
// Exit codes: 0 success, 1 check failed, 2 usage error, 3 I/O or parse error.

#include "wsdp/instances.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

namespace {

using namespace wsdp;
namespace fs = std::filesystem;

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kIo = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool is_sdpa(const std::string& path) {
  return path.ends_with(".dat-s") || path.ends_with(".dat");
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-")
    std::cout << text;
  else
    write_text(out, text);
}

Rational rational_flag(const std::string& text, const char* flag) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

NativeBundle load_bundle(const std::string& path) {
  if (is_sdpa(path)) return NativeBundle{read_sdpa(path), std::nullopt, std::nullopt, fs::path(path).stem().string()};
  return read_native(path);
}

const WeakCertificate& need_certificate(const NativeBundle& b, const std::string& path) {
  if (!b.certificate) throw UsageError(path + " carries no certificate");
  return *b.certificate;
}

std::string matrix_text(const SymMatrix& a) {
  std::string s;
  for (std::size_t r = 0; r < a.order(); ++r) {
    s += "  [";
    for (std::size_t c = 0; c < a.order(); ++c) s += (c ? " " : "") + to_string(a(r, c));
    s += "]\n";
  }
  return s;
}

nlohmann::json matrix_json(const SymMatrix& a) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < a.order(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < a.order(); ++c) row.push_back(to_string(a(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

struct GenerateOpts {
  GenConfig cfg;
  std::string overlap = "overlapping-allowed";
  std::string out = "-";
  bool json = false;
};

int run_generate(GenerateOpts& o) {
  o.cfg.overlap = parse_overlap_policy(o.overlap);
  try {
    o.cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const WeakInstance w = generate(o.cfg);
  const NativeBundle bundle = make_bundle(w, o.cfg);
  const VerificationReport report = verify_weak_infeasibility(*bundle.certificate);
  emit(o.out, native_string(bundle));
  std::ostream& log = (o.out == "-") ? std::cerr : std::cout;
  log << (o.json ? report.json() + "\n" : report.text());
  return report.passed() ? kPass : kFail;
}

int run_verify(const std::string& path, bool json) {
  const NativeBundle b = load_bundle(path);
  const VerificationReport report = verify_weak_infeasibility(need_certificate(b, path));
  std::cout << (json ? report.json() + "\n" : report.text());
  return report.passed() ? kPass : kFail;
}

int run_sieve(const std::string& path, bool json) {
  const NativeBundle b = load_bundle(path);
  const auto res = sieve_detect(b.instance);
  if (json) {
    nlohmann::json j{{"detected", res.has_value()}};
    if (res) {
      std::vector<std::size_t> order;
      for (auto i : res->order) order.push_back(i + 1);
      j["k"] = res->k;
      j["P"] = res->P.str();
      j["constraints"] = order;
    }
    std::cout << j.dump(2) << '\n';
  } else if (res) {
    std::cout << "Detected: k = " << res->k << ", P = " << res->P.str() << ", constraints";
    for (auto i : res->order) std::cout << ' ' << i + 1;
    std::cout << '\n';
  } else {
    std::cout << "NotDetected\n";
  }
  return res ? kPass : kFail;
}

int run_witness(const std::string& path, const std::string& eps_text, bool json) {
  const Rational eps = rational_flag(eps_text, "--eps");
  if (eps <= 0) throw UsageError("--eps must be positive");
  const NativeBundle b = load_bundle(path);
  const WeakCertificate& c = need_certificate(b, path);
  const AsymptoteWitness w = asymptote_witness(c.clean, c.X, c.Q, eps);
  const Rational dist2 = frobenius_squared(w.padding);
  const bool ok = w.certificate.psd() && dist2 <= eps * eps;
  if (json) {
    nlohmann::json mult = nlohmann::json::array();
    for (const auto& g : w.multipliers) mult.push_back(to_string(g));
    std::cout << nlohmann::json{{"point", matrix_json(w.point)},
                                {"delta", to_string(w.delta)},
                                {"multipliers", mult},
                                {"distance_squared", to_string(dist2)},
                                {"eps_squared", to_string(eps * eps)},
                                {"psd", w.certificate.psd()},
                                {"within_eps", dist2 <= eps * eps}}
                     .dump(2)
              << '\n';
  } else {
    std::cout << "point (coordinates of the echelon system):\n" << matrix_text(w.point);
    std::cout << "delta = " << to_string(w.delta) << '\n' << "multipliers =";
    for (const auto& g : w.multipliers) std::cout << ' ' << to_string(g);
    std::cout << "\ndistance^2 to the affine set <= " << to_string(dist2) << " (eps^2 = " << to_string(eps * eps)
              << ")\npsd: " << (w.certificate.psd() ? "yes (exact LDL^T)" : "no") << '\n';
  }
  return ok ? kPass : kFail;
}

int run_export(const std::string& path, const std::string& format, const std::string& out) {
  const NativeBundle b = load_bundle(path);
  if (format == "sdpa")
    emit(out, sdpa_string(b.instance, SdpaOptions{b.label}));
  else if (format == "cbf")
    emit(out, cbf_string(b.instance, b.label));
  else if (format == "native")
    emit(out, native_string(b));
  else
    throw UsageError("--format must be sdpa, cbf or native");
  return kPass;
}

int run_render(const std::string& path, const std::string& outdir) {
  const NativeBundle b = load_bundle(path);
  std::vector<fs::path> written;
  if (b.certificate) {
    const WeakCertificate& c = *b.certificate;
    std::vector<SymMatrix> prefix(c.clean.A.begin(), c.clean.A.begin() + static_cast<std::ptrdiff_t>(std::min(c.k + 1, c.clean.m())));
    written = render_blocks(prefix, c.P, outdir, "A");
    for (auto& p : render_blocks(c.X, c.Q, outdir, "X")) written.push_back(std::move(p));
  } else {
    const auto s = infer_structure(b.instance.A);
    if (!s) throw UsageError(path + " has no certificate and is not in echelon form; nothing to render");
    written = render_blocks(b.instance.A, *s, outdir, "A");
  }
  for (const auto& p : written) std::cout << p.string() << '\n';
  return kPass;
}

int run_library(const std::string& root, const std::string& profile) {
  LibraryProfile p;
  try {
    p = library_profile(profile);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const Manifest m = library_build(root, p);
  std::size_t pass = 0, clean_detected = 0, messy_detected = 0;
  for (const auto& e : m.entries) {
    pass += e.verified;
    (e.kind == "clean" ? clean_detected : messy_detected) += e.sieve_detected;
  }
  std::cout << m.entries.size() << " instances written to " << root << " (" << pass << " verified)\n"
            << "sieve detected " << clean_detected << " clean and " << messy_detected << " messy instances\n";
  return pass == m.entries.size() ? kPass : kFail;
}

int run_builtin_instance(const std::string& name, const std::string& out) {
  NativeBundle b;
  try {
    b = builtin_bundle(name);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  emit(out, native_string(b));
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Construct and certify weakly infeasible semidefinite systems"};
  app.require_subcommand(1);
  bool json = false;

  GenerateOpts gen;
  auto* g = app.add_subcommand("generate", "Generate a random weakly infeasible system with its certificate");
  g->add_option("--n", gen.cfg.n, "Matrix order")->required();
  g->add_option("--m", gen.cfg.m, "Number of constraints")->required();
  g->add_option("--k", gen.cfg.k, "Length of the infeasibility prefix minus one")->required();
  g->add_option("--l", gen.cfg.l, "Length of the X sequence minus one")->required();
  g->add_option("--seed", gen.cfg.seed, "Random seed");
  g->add_option("--entry-range", gen.cfg.entry_range, "Bound on random integer entries");
  g->add_option("--block-min", gen.cfg.block_min, "Smallest block size");
  g->add_option("--block-max", gen.cfg.block_max, "Largest block size");
  g->add_option("--overlap", gen.overlap, "disjoint-only or overlapping-allowed");
  g->add_flag("--messy", gen.cfg.messy, "Hide the structure by unimodular row operations and congruence");
  g->add_option("--mess-budget", gen.cfg.mess_budget, "Elementary operations per transformation (0 = auto)");
  g->add_option("--mess-magnitude", gen.cfg.mess_magnitude, "Largest multiplier in a row operation");
  g->add_option("--out", gen.out, "Output bundle (.wsdp), - for stdout");
  g->add_flag("--json", gen.json, "Machine-readable report");

  std::string path, eps = "1/10", format = "sdpa", out = "-", outdir = "render", root = "library", profile = "default",
              name;
  auto* v = app.add_subcommand("verify", "Check the certificate carried by a bundle");
  v->add_option("path", path)->required();
  v->add_flag("--json", json);
  auto* s = app.add_subcommand("sieve", "Look for an echelon prefix without reformulating");
  s->add_option("path", path)->required();
  s->add_flag("--json", json);
  auto* w = app.add_subcommand("witness", "Exact psd point within eps of the affine constraint set");
  w->add_option("path", path)->required();
  w->add_option("--eps", eps, "Distance bound, e.g. 1/1000");
  w->add_flag("--json", json);
  auto* e = app.add_subcommand("export", "Write the system for an external solver");
  e->add_option("path", path)->required();
  e->add_option("--format", format, "sdpa, cbf or native");
  e->add_option("--out", out, "Output file, - for stdout");
  auto* r = app.add_subcommand("render", "SVG images of the echelon block structure");
  r->add_option("path", path)->required();
  r->add_option("--outdir", outdir);
  auto* l = app.add_subcommand("library", "Build the clean/messy instance library");
  l->add_option("--root", root);
  l->add_option("--profile", profile, "default or quick");
  auto* p = app.add_subcommand("paper-instance", "Write a built-in worked example as a bundle");
  p->add_option("--name", name, "me, large, 3x3 or motzkin")->required();
  p->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::CallForAllHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex);
    return kUsage;
  }

  try {
    if (g->parsed()) return run_generate(gen);
    if (v->parsed()) return run_verify(path, json);
    if (s->parsed()) return run_sieve(path, json);
    if (w->parsed()) return run_witness(path, eps, json);
    if (e->parsed()) return run_export(path, format, out);
    if (r->parsed()) return run_render(path, outdir);
    if (l->parsed()) return run_library(root, profile);
    if (p->parsed()) return run_builtin_instance(name, out);
  } catch (const UsageError& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kUsage;
  } catch (const IoError& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kIo;
  } catch (const FormatError& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kIo;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kUsage;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kFail;
  }
  return kUsage;
}
