#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kickspec/harper.hpp"
#include "kickspec/multifractal.hpp"
#include "kickspec/operators.hpp"

namespace kickspec::cli {

enum class Command { Butterfly, Spectrum, Eigenstates, FloquetCompare, HarperDiff };

enum class SystemKind { Dkt, Su2Family, HarperStatic, HarperKicked, SyntheticUniform };

/// Ordered key/value pairs; later entries override earlier ones.
using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Inclusive arithmetic grid start, start + step, ..., <= stop.
struct Sweep {
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;
  std::vector<double> points() const;
};

struct RunConfig {
  Command command = Command::Spectrum;
  SystemKind system = SystemKind::Dkt;
  char su2_case = 'f';
  std::optional<SpinLabel> j;
  int length = 0;                       // Harper L
  double alpha = 1.0;                   // resolved coupling
  double period = 1.0;                  // T
  std::optional<double> epsilon;        // SU(2) case e
  std::optional<double> parameter;      // fixed eta (SU(2) systems) or sigma (Harper)
  std::optional<Sweep> sweep;           // xi = eta / (pi j) for SU(2) systems, sigma for Harper
  std::vector<double> q_grid;
  std::vector<int> scale_grid;          // empty selects the default
  std::vector<int> partition_grid;      // empty selects the default
  std::filesystem::path out_dir = ".";
  unsigned threads = 1;
  bool full_scale = false;
  std::vector<double> alpha_ladder;
  harper::KickedMode harper_mode = harper::KickedMode::ClosedForm;
  harper::Boundary boundary = harper::Boundary::Open;
  int bins = 50;
  int synthetic_points = 4096;
  std::optional<multifractal::Window> zoom;
  KeyValues echo;                       // resolved settings, sorted by key

  Index dimension() const;
};

/// Largest dimension accepted without --full-scale.
inline constexpr Index kDefaultMaxDimension = 2001;

/// Every accepted key; config files and flags share these names.
const std::vector<std::string>& known_keys();

/// Reads a flat `key = value` file; '#' starts a comment. Unknown keys and
/// malformed lines raise ConfigError naming the line.
KeyValues read_config_file(const std::filesystem::path& path);
KeyValues parse_config_text(const std::string& text, const std::string& origin = "<config>");

/// Validates and resolves a configuration; flags override file entries.
/// Accepts "golden" for eta-over-j, xi and sigma.
RunConfig parse_config(Command command, const KeyValues& file, const KeyValues& flags);

Command parse_command(const std::string& name);
std::string command_name(Command c);
std::string system_name(SystemKind s);

/// "golden" or a floating-point literal.
double parse_real(const std::string& key, const std::string& text);

}  // namespace kickspec::cli
