#include "kickspec/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "kickspec/errors.hpp"
#include "kickspec/parallel.hpp"

namespace kickspec::cli {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(trim(cur));
  return parts;
}

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

long parse_integer(const std::string& key, const std::string& text) {
  char* end = nullptr;
  const long v = std::strtol(text.c_str(), &end, 10);
  if (text.empty() || end != text.c_str() + text.size()) fail("key '" + key + "': expected an integer, got '" + text + "'");
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes" || text.empty()) return true;
  if (text == "false" || text == "0" || text == "no") return false;
  fail("key '" + key + "': expected true/false, got '" + text + "'");
}

Sweep parse_sweep(const std::string& key, const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) fail("key '" + key + "': expected start:stop:step, got '" + text + "'");
  Sweep s{parse_real(key, parts[0]), parse_real(key, parts[1]), parse_real(key, parts[2])};
  if (!(s.step > 0.0)) fail("key '" + key + "': sweep step must be > 0");
  if (s.stop < s.start) fail("key '" + key + "': sweep stop must not precede start");
  return s;
}

std::vector<double> parse_real_list(const std::string& key, const std::string& text) {
  if (text.find(':') != std::string::npos) return parse_sweep(key, text).points();
  std::vector<double> out;
  for (const auto& p : split(text, ',')) out.push_back(parse_real(key, p));
  if (out.empty()) fail("key '" + key + "': empty list");
  return out;
}

std::vector<int> parse_int_list(const std::string& key, const std::string& text) {
  std::vector<int> out;
  for (const auto& p : split(text, ',')) out.push_back(static_cast<int>(parse_integer(key, p)));
  if (out.empty()) fail("key '" + key + "': empty list");
  return out;
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::vector<double> Sweep::points() const {
  const long count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
  return out;
}

Index RunConfig::dimension() const {
  switch (system) {
    case SystemKind::Dkt:
    case SystemKind::Su2Family: return j ? j->dim() : 0;
    case SystemKind::HarperStatic:
    case SystemKind::HarperKicked: return length;
    case SystemKind::SyntheticUniform: return synthetic_points;
  }
  return 0;
}

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "system",     "case",        "j",          "L",          "alpha",      "alpha-over",
      "eta",        "eta-over-j",  "xi",         "sigma",      "xi-sweep",   "sigma-sweep",
      "period",     "epsilon",     "q-grid",     "scale-grid", "partition-grid",
      "out-dir",    "threads",     "full-scale", "alpha-ladder", "harper-mode", "boundary",
      "bins",       "n",           "zoom"};
  return keys;
}

double parse_real(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "golden") return kGoldenRatio;
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(v))
    fail("key '" + key + "': expected a real number, got '" + text + "'");
  return v;
}

KeyValues parse_config_text(const std::string& text, const std::string& origin) {
  const auto& keys = known_keys();
  KeyValues kv;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(origin + ":" + std::to_string(number) + ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      fail(origin + ":" + std::to_string(number) + ": unknown key '" + key + "'");
    kv.emplace_back(std::move(key), std::move(value));
  }
  return kv;
}

KeyValues read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path.string());
}

Command parse_command(const std::string& name) {
  if (name == "butterfly") return Command::Butterfly;
  if (name == "spectrum") return Command::Spectrum;
  if (name == "eigenstates") return Command::Eigenstates;
  if (name == "floquet-compare") return Command::FloquetCompare;
  if (name == "harper-diff") return Command::HarperDiff;
  fail("unknown command '" + name + "'");
}

std::string command_name(Command c) {
  switch (c) {
    case Command::Butterfly: return "butterfly";
    case Command::Spectrum: return "spectrum";
    case Command::Eigenstates: return "eigenstates";
    case Command::FloquetCompare: return "floquet-compare";
    case Command::HarperDiff: return "harper-diff";
  }
  return "?";
}

std::string system_name(SystemKind s) {
  switch (s) {
    case SystemKind::Dkt: return "dkt";
    case SystemKind::Su2Family: return "su2";
    case SystemKind::HarperStatic: return "harper-static";
    case SystemKind::HarperKicked: return "harper-kicked";
    case SystemKind::SyntheticUniform: return "uniform";
  }
  return "?";
}

RunConfig parse_config(Command command, const KeyValues& file, const KeyValues& flags) {
  const auto& keys = known_keys();
  std::map<std::string, std::string> kv;
  for (const auto* source : {&file, &flags}) {
    for (const auto& [k, v] : *source) {
      if (std::find(keys.begin(), keys.end(), k) == keys.end()) fail("unknown key '" + k + "'");
      kv[k] = v;
    }
  }
  auto has = [&](const char* k) { return kv.count(k) != 0; };
  auto get = [&](const char* k) -> const std::string& { return kv.at(k); };

  RunConfig cfg;
  cfg.command = command;

  if (!has("system")) fail("missing required key 'system'");
  const std::string sys = get("system");
  if (sys == "dkt") cfg.system = SystemKind::Dkt;
  else if (sys == "su2") cfg.system = SystemKind::Su2Family;
  else if (sys == "harper-static") cfg.system = SystemKind::HarperStatic;
  else if (sys == "harper-kicked") cfg.system = SystemKind::HarperKicked;
  else if (sys == "uniform") cfg.system = SystemKind::SyntheticUniform;
  else fail("unknown system '" + sys + "' (dkt, su2, harper-static, harper-kicked, uniform)");

  const bool spin_system = cfg.system == SystemKind::Dkt || cfg.system == SystemKind::Su2Family;
  const bool harper_system =
      cfg.system == SystemKind::HarperStatic || cfg.system == SystemKind::HarperKicked;

  if (has("period")) {
    cfg.period = parse_real("period", get("period"));
    if (!(cfg.period > 0.0)) fail("key 'period': T must be > 0");
  }

  if (spin_system) {
    if (!has("j")) fail("system '" + sys + "' needs key 'j'");
    try {
      cfg.j = SpinLabel(parse_real("j", get("j")));
    } catch (const DomainError& e) {
      fail(std::string("key 'j': ") + e.what());
    }
    if (cfg.j->twice_j() == 0) fail("key 'j': j must be > 0");
    if (has("alpha") && has("alpha-over")) fail("give either 'alpha' or 'alpha-over', not both");
    if (has("alpha")) cfg.alpha = parse_real("alpha", get("alpha"));
    else cfg.alpha = (has("alpha-over") ? parse_real("alpha-over", get("alpha-over")) : 1.0) / cfg.j->j();
  } else if (harper_system) {
    if (!has("L")) fail("system '" + sys + "' needs key 'L'");
    cfg.length = static_cast<int>(parse_integer("L", get("L")));
    if (cfg.length < 2) fail("key 'L': chain length must be >= 2");
    if (has("alpha-over")) fail("key 'alpha-over' applies to spin systems only");
    if (has("alpha")) cfg.alpha = parse_real("alpha", get("alpha"));
  } else {
    cfg.synthetic_points = has("n") ? static_cast<int>(parse_integer("n", get("n"))) : 4096;
    if (cfg.synthetic_points < 2) fail("key 'n': need at least 2 points");
  }

  if (cfg.system == SystemKind::Su2Family) {
    if (!has("case")) fail("system 'su2' needs key 'case' (a-f)");
    const std::string c = get("case");
    if (c.size() != 1 || c[0] < 'a' || c[0] > 'f') fail("key 'case': expected one of a-f");
    cfg.su2_case = c[0];
    if (has("epsilon")) cfg.epsilon = parse_real("epsilon", get("epsilon"));
    if (cfg.su2_case == 'e' && !cfg.epsilon)
      fail("SU(2) family case 'e' requires key 'epsilon' (b = epsilon * alpha); it has no default");
  }

  // Fixed parameter versus sweep.
  int fixed_given = 0;
  if (spin_system) {
    for (const char* k : {"eta", "eta-over-j", "xi"}) fixed_given += has(k) ? 1 : 0;
    if (fixed_given > 1) fail("give only one of 'eta', 'eta-over-j', 'xi'");
    const double j = cfg.j->j();
    if (has("eta")) cfg.parameter = parse_real("eta", get("eta"));
    if (has("eta-over-j")) cfg.parameter = parse_real("eta-over-j", get("eta-over-j")) * j;
    if (has("xi")) cfg.parameter = parse_real("xi", get("xi")) * kPi * j;
    if (has("xi-sweep")) cfg.sweep = parse_sweep("xi-sweep", get("xi-sweep"));
    if (has("sigma") || has("sigma-sweep")) fail("keys 'sigma'/'sigma-sweep' apply to Harper systems");
  } else if (harper_system) {
    fixed_given = has("sigma") ? 1 : 0;
    if (has("sigma")) cfg.parameter = parse_real("sigma", get("sigma"));
    if (has("sigma-sweep")) cfg.sweep = parse_sweep("sigma-sweep", get("sigma-sweep"));
    for (const char* k : {"eta", "eta-over-j", "xi", "xi-sweep"})
      if (has(k)) fail(std::string("key '") + k + "' applies to spin systems");
  }
  if (cfg.parameter && cfg.sweep) fail("contradictory configuration: both a fixed parameter and a sweep range");

  if (command == Command::Butterfly) {
    if (cfg.system == SystemKind::SyntheticUniform) fail("butterfly needs a physical system");
    if (!cfg.sweep) fail("butterfly needs a sweep range (xi-sweep or sigma-sweep)");
  } else if (cfg.system != SystemKind::SyntheticUniform && !cfg.parameter) {
    fail(command_name(command) + " needs a fixed parameter (eta, eta-over-j, xi or sigma)");
  } else if (cfg.sweep) {
    fail(command_name(command) + " takes a fixed parameter, not a sweep");
  }
  if (cfg.system == SystemKind::SyntheticUniform && command != Command::Spectrum)
    fail("system 'uniform' is only available for the spectrum command");
  if (command == Command::FloquetCompare && cfg.system != SystemKind::Dkt)
    fail("floquet-compare runs on system 'dkt'");
  if (command == Command::HarperDiff && !harper_system)
    fail("harper-diff runs on a Harper system");

  cfg.q_grid = has("q-grid") ? parse_real_list("q-grid", get("q-grid")) : multifractal::default_q_grid();
  for (double q : cfg.q_grid)
    if (q < 0.0) fail("key 'q-grid': negative q is not supported");
  if (has("scale-grid")) cfg.scale_grid = parse_int_list("scale-grid", get("scale-grid"));
  if (has("partition-grid")) cfg.partition_grid = parse_int_list("partition-grid", get("partition-grid"));
  if (command == Command::Eigenstates) {
    for (double need : {2.0, 5.0})
      if (std::none_of(cfg.q_grid.begin(), cfg.q_grid.end(), [&](double q) { return std::abs(q - need) < 1e-12; }))
        fail("eigenstates needs q = 2 and q = 5 on the q grid");
  }

  cfg.out_dir = has("out-dir") ? std::filesystem::path(get("out-dir")) : std::filesystem::path(".");
  cfg.threads = default_workers();
  if (has("threads")) {
    const long t = parse_integer("threads", get("threads"));
    if (t < 1) fail("key 'threads' must be >= 1");
    cfg.threads = static_cast<unsigned>(t);
  }
  cfg.full_scale = has("full-scale") && parse_bool("full-scale", get("full-scale"));

  if (command == Command::FloquetCompare) {
    cfg.alpha_ladder = has("alpha-ladder") ? parse_real_list("alpha-ladder", get("alpha-ladder"))
                                           : std::vector<double>{0.04, 0.02, 0.01};
    if (cfg.alpha_ladder.size() < 3) fail("key 'alpha-ladder' needs at least 3 values");
  }

  if (has("harper-mode")) {
    const std::string m = get("harper-mode");
    if (m == "closed") cfg.harper_mode = harper::KickedMode::ClosedForm;
    else if (m == "general") cfg.harper_mode = harper::KickedMode::General;
    else fail("key 'harper-mode': expected closed or general");
  }
  if (has("boundary")) {
    const std::string b = get("boundary");
    if (b == "open") cfg.boundary = harper::Boundary::Open;
    else if (b == "periodic") cfg.boundary = harper::Boundary::Periodic;
    else fail("key 'boundary': expected open or periodic");
  }
  if (has("bins")) {
    cfg.bins = static_cast<int>(parse_integer("bins", get("bins")));
    if (cfg.bins < 1) fail("key 'bins' must be >= 1");
  }
  if (has("zoom")) {
    const auto parts = split(get("zoom"), ':');
    if (parts.size() != 2) fail("key 'zoom': expected lo:hi");
    cfg.zoom = multifractal::Window{parse_real("zoom", parts[0]), parse_real("zoom", parts[1])};
    if (!(cfg.zoom->hi > cfg.zoom->lo)) fail("key 'zoom': need lo < hi");
  }

  if ((command == Command::Spectrum || command == Command::Eigenstates) &&
      cfg.system != SystemKind::SyntheticUniform && cfg.dimension() > kDefaultMaxDimension &&
      !cfg.full_scale) {
    fail("dimension " + std::to_string(cfg.dimension()) + " exceeds " +
         std::to_string(kDefaultMaxDimension) + "; pass --full-scale to run it");
  }

  // Resolved echo in key order. Parsed numbers are re-emitted at full precision.
  for (const auto& [k, v] : kv) cfg.echo.emplace_back(k, v);
  cfg.echo.emplace_back("resolved.alpha", format_real(cfg.alpha));
  if (cfg.parameter) cfg.echo.emplace_back("resolved.parameter", format_real(*cfg.parameter));
  std::sort(cfg.echo.begin(), cfg.echo.end());
  // Output location and worker count do not affect results.
  std::erase_if(cfg.echo, [](const auto& e) { return e.first == "out-dir" || e.first == "threads"; });
  return cfg;
}

}  // namespace kickspec::cli
