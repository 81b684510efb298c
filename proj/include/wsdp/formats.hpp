#pragma once

#include "wsdp/generator.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wsdp {

/// Malformed file content. `line` is 1-based, 0 when unknown.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kNativeVersion = 1;

struct NativeBundle {
  SdpInstance instance;
  std::optional<WeakCertificate> certificate;  // certificate->raw == instance
  std::optional<GenConfig> config;
  std::string label;

  friend bool operator==(const NativeBundle&, const NativeBundle&) = default;
};

NativeBundle make_bundle(const WeakInstance& w, std::optional<GenConfig> cfg = std::nullopt, std::string label = {});

std::string native_string(const NativeBundle& bundle);
NativeBundle parse_native(const std::string& text);
void write_native(const NativeBundle& bundle, const std::filesystem::path& path);
NativeBundle read_native(const std::filesystem::path& path);

struct SdpaOptions {
  std::string label;  // optional header comment
};

/// SDPA sparse text; `lossy` is set when some value had to be rounded.
std::string sdpa_string(const SdpInstance& inst, const SdpaOptions& opt = {}, bool* lossy = nullptr);
SdpInstance parse_sdpa(const std::string& text);
void write_sdpa(const SdpInstance& inst, const std::filesystem::path& path, const SdpaOptions& opt = {});
SdpInstance read_sdpa(const std::filesystem::path& path);

std::string cbf_string(const SdpInstance& inst, const std::string& comment = {}, bool* lossy = nullptr);
void write_cbf(const SdpInstance& inst, const std::filesystem::path& path, const std::string& comment = {});

enum class CellColor { White, Positive, Arbitrary, Stray };

std::string to_string(CellColor c);
/// Fill colour used in the SVG output.
std::string fill_of(CellColor c);

/// Colour of each nonzero cell of matrix `index` under `structure`: positive-block
/// diagonal, arbitrary region, or stray (outside the pattern). Zeros are white.
std::vector<std::vector<CellColor>> cell_colors(const SymMatrix& a, const Structure& structure, std::size_t index);

std::string svg_string(const SymMatrix& a, const Structure& structure, std::size_t index, const std::string& title = {});

/// One SVG per matrix, named <stem>_<i>.svg (1-based) in `dir`. Returns the paths written.
std::vector<std::filesystem::path> render_blocks(const std::vector<SymMatrix>& matrices, const Structure& structure,
                                                 const std::filesystem::path& dir, const std::string& stem);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace wsdp
