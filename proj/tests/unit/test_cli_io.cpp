#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "kickspec/commands.hpp"
#include "kickspec/config.hpp"
#include "kickspec/errors.hpp"

using namespace kickspec;
using namespace kickspec::cli;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "kickspec");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("kickspec_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::ifstream in(p);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

KeyValues kv(std::initializer_list<std::pair<const char*, const char*>> items) {
  KeyValues out;
  for (const auto& [k, v] : items) out.emplace_back(k, v);
  return out;
}

}  // namespace

TEST_CASE("parse a butterfly configuration from flags") {
  const auto cfg = parse_config(Command::Butterfly, {},
                                kv({{"system", "dkt"}, {"j", "20"}, {"alpha-over", "1"}, {"xi-sweep", "0:2:0.0025"}}));
  CHECK(cfg.system == SystemKind::Dkt);
  CHECK(cfg.j->dim() == 41);
  CHECK(cfg.alpha == doctest::Approx(1.0 / 20));
  REQUIRE(cfg.sweep);
  CHECK(cfg.sweep->points().size() == 801);
  CHECK_FALSE(cfg.parameter);
}

TEST_CASE("golden ratio token") {
  const auto cfg = parse_config(Command::Spectrum, {}, kv({{"system", "harper-static"}, {"L", "100"}, {"sigma", "golden"}}));
  CHECK(*cfg.parameter == 0.6180339887498949);
  CHECK(*cfg.parameter == (std::sqrt(5.0) - 1.0) / 2.0);
  const auto spin = parse_config(Command::Spectrum, {}, kv({{"system", "dkt"}, {"j", "10"}, {"eta-over-j", "golden"}}));
  CHECK(*spin.parameter == doctest::Approx(10 * kGoldenRatio).epsilon(1e-15));
  const auto xi = parse_config(Command::Spectrum, {}, kv({{"system", "dkt"}, {"j", "10"}, {"xi", "0.5"}}));
  CHECK(*xi.parameter == doctest::Approx(0.5 * kPi * 10));
}

TEST_CASE("case e needs epsilon") {
  try {
    parse_config(Command::Spectrum, {}, kv({{"system", "su2"}, {"case", "e"}, {"j", "10"}, {"eta-over-j", "golden"}}));
    FAIL("expected a configuration error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("epsilon") != std::string::npos);
  }
  const auto ok = parse_config(Command::Spectrum, {},
                               kv({{"system", "su2"}, {"case", "e"}, {"j", "10"}, {"eta-over-j", "golden"}, {"epsilon", "0.5"}}));
  CHECK(*ok.epsilon == 0.5);
}

TEST_CASE("strict keys and contradictory settings") {
  CHECK_THROWS_AS(parse_config_text("system = dkt\nspin = 3\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("system dkt\n"), ConfigError);
  CHECK_THROWS_AS(parse_config(Command::Spectrum, {}, kv({{"bogus", "1"}})), ConfigError);
  CHECK_THROWS_AS(parse_config(Command::Spectrum, {},
                               kv({{"system", "dkt"}, {"j", "10"}, {"eta-over-j", "0.3"}, {"xi-sweep", "0:1:0.1"}})),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(Command::Butterfly, {}, kv({{"system", "dkt"}, {"j", "10"}, {"xi-sweep", "0:1:0"}})),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(Command::Butterfly, {}, kv({{"system", "dkt"}, {"j", "10"}, {"eta", "1"}})), ConfigError);
  CHECK_THROWS_AS(parse_config(Command::Spectrum, {}, kv({{"system", "dkt"}, {"j", "10"}})), ConfigError);
  CHECK_THROWS_AS(parse_config(Command::Spectrum, {}, kv({{"system", "dkt"}, {"j", "0"}, {"eta", "1"}})), ConfigError);
  CHECK_THROWS_AS(parse_config(Command::Spectrum, {}, kv({{"system", "harper-static"}, {"L", "1"}, {"sigma", "0.2"}})),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(Command::Spectrum, {}, kv({{"system", "dkt"}, {"j", "x"}, {"eta", "1"}})), ConfigError);
  CHECK_THROWS_AS(parse_config(Command::FloquetCompare, {}, kv({{"system", "su2"}, {"case", "a"}, {"j", "3"}, {"eta", "1"}})),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(Command::FloquetCompare, {},
                               kv({{"system", "dkt"}, {"j", "3"}, {"eta", "1"}, {"alpha-ladder", "0.1,0.05"}})),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(Command::HarperDiff, {}, kv({{"system", "dkt"}, {"j", "3"}, {"eta", "1"}})), ConfigError);
  CHECK_THROWS_AS(parse_config(Command::Spectrum, {}, kv({{"system", "dkt"}, {"j", "1001"}, {"eta", "1"}})), ConfigError);
  const auto big = parse_config(Command::Spectrum, {}, kv({{"system", "dkt"}, {"j", "1001"}, {"eta", "1"}, {"full-scale", "true"}}));
  CHECK(big.full_scale);
}

TEST_CASE("flags override the file") {
  const auto file = parse_config_text("# comment\nsystem = harper-static\nL = 50   # trailing\nsigma = 0.1\nbins = 7\n");
  const auto cfg = parse_config(Command::Spectrum, file, kv({{"sigma", "golden"}}));
  CHECK(cfg.length == 50);
  CHECK(cfg.bins == 7);
  CHECK(*cfg.parameter == kGoldenRatio);
}

TEST_CASE("defaults") {
  const auto spin = parse_config(Command::FloquetCompare, {}, kv({{"system", "dkt"}, {"j", "10"}, {"eta-over-j", "golden"}}));
  CHECK(spin.alpha == doctest::Approx(0.1));
  CHECK(spin.alpha_ladder == std::vector<double>{0.04, 0.02, 0.01});
  CHECK(spin.q_grid == multifractal::default_q_grid());
  const auto chain = parse_config(Command::HarperDiff, {}, kv({{"system", "harper-kicked"}, {"L", "10"}, {"sigma", "0.3"}}));
  CHECK(chain.alpha == 1.0);
  CHECK(chain.harper_mode == harper::KickedMode::ClosedForm);
  CHECK(chain.boundary == harper::Boundary::Open);
}

TEST_CASE("butterfly output") {
  const auto dir = scratch("butterfly");
  REQUIRE(run({"butterfly", "--system", "dkt", "--j", "20", "--alpha-over", "1", "--xi-sweep", "0:2:0.0025", "--out-dir",
               dir.string()})
              .code == 0);
  const auto rows = read_csv(dir / "butterfly.csv");
  CHECK(rows[0] == std::vector<std::string>{"sweep_value", "index", "energy"});
  CHECK(rows.size() == 1 + 801 * 41);
  for (std::size_t r = 2; r < rows.size(); ++r) {
    if (rows[r][0] != rows[r - 1][0]) continue;
    CHECK(std::stod(rows[r][2]) >= std::stod(rows[r - 1][2]));
    const double e = std::stod(rows[r][2]);
    CHECK(e > -kPi);
    CHECK(e <= kPi);
  }

  const auto single = scratch("butterfly_single");
  REQUIRE(run({"butterfly", "--system", "dkt", "--j", "3", "--xi-sweep", "0.5:0.5:0.1", "--out-dir", single.string()}).code == 0);
  CHECK(read_csv(single / "butterfly.csv").size() == 1 + 7);
}

TEST_CASE("Harper butterfly is symmetric under sigma -> 1 - sigma") {
  const auto dir = scratch("harper_butterfly");
  REQUIRE(run({"butterfly", "--system", "harper-static", "--L", "200", "--sigma-sweep", "0:1:0.05", "--threads", "3",
               "--out-dir", dir.string()})
              .code == 0);
  std::map<std::string, std::vector<double>> columns;
  std::vector<std::string> order;
  for (const auto& row : read_csv(dir / "butterfly.csv")) {
    if (row[0] == "sweep_value") continue;
    if (!columns.count(row[0])) order.push_back(row[0]);
    columns[row[0]].push_back(std::stod(row[2]));
  }
  REQUIRE(order.size() == 21);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& a = columns[order[i]];
    const auto& b = columns[order[order.size() - 1 - i]];
    REQUIRE(a.size() == 200);
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("spectrum report for the uniform test input") {
  const auto dir = scratch("uniform");
  REQUIRE(run({"spectrum", "--system", "uniform", "--n", "8192", "--out-dir", dir.string()}).code == 0);
  const auto rows = read_csv(dir / "tau.csv");
  CHECK(rows[0] == std::vector<std::string>{"q", "tau", "d_q", "r2"});
  for (std::size_t r = 1; r < rows.size(); ++r) CHECK(std::stod(rows[r][2]) == doctest::Approx(1.0).epsilon(0.01));
  const auto report = nlohmann::json::parse(slurp(dir / "spectrum.json"));
  CHECK(report["D2"].get<double>() == doctest::Approx(1.0).epsilon(0.01));
  CHECK(report["mu"].get<double>() == doctest::Approx(-1.0).epsilon(0.01));
  CHECK(report["fits"].size() == 20);
  CHECK(report["fits"][0].contains("window"));
  CHECK(report["settings"]["system"] == "uniform");
  CHECK(fs::exists(dir / "eigenvalues.csv"));
  CHECK(fs::exists(dir / "density.csv"));
}

TEST_CASE("outputs are byte-identical across runs and worker counts") {
  const auto a = scratch("det_a");
  const auto b = scratch("det_b");
  for (const auto& [dir, threads] : {std::pair{a, "1"}, std::pair{b, "4"}}) {
    REQUIRE(run({"spectrum", "--system", "dkt", "--j", "300", "--eta-over-j", "golden", "--zoom", "-0.2:0.2", "--threads",
                 threads, "--out-dir", dir.string()})
                .code == 0);
    REQUIRE(run({"eigenstates", "--system", "harper-kicked", "--L", "256", "--sigma", "golden", "--threads", threads,
                 "--out-dir", dir.string()})
                .code == 0);
    REQUIRE(run({"butterfly", "--system", "su2", "--case", "d", "--j", "10", "--xi-sweep", "0:1:0.1", "--threads", threads,
                 "--out-dir", dir.string()})
                .code == 0);
  }
  for (const char* name : {"tau.csv", "spectrum.json", "eigenvalues.csv", "density.csv", "eigenstates.csv",
                           "eigenstates.json", "butterfly.csv"}) {
    CAPTURE(name);
    CHECK(slurp(a / name) == slurp(b / name));
  }
  const auto report = nlohmann::json::parse(slurp(a / "spectrum.json"));
  CHECK(report.contains("D2"));
  CHECK(report.contains("mu"));
  // Threads do not appear in the echo.
  CHECK_FALSE(report["settings"].contains("threads"));
}

TEST_CASE("eigenstates on a two-level system") {
  const auto dir = scratch("toy");
  REQUIRE(run({"eigenstates", "--system", "dkt", "--j", "0.5", "--eta-over-j", "golden", "--out-dir", dir.string()}).code == 0);
  const auto rows = read_csv(dir / "eigenstates.csv");
  CHECK(rows[0] == std::vector<std::string>{"index", "pr", "d2", "d5", "mu"});
  REQUIRE(rows.size() == 3);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const double pr = std::stod(rows[r][1]);
    CHECK(pr >= 1.0);
    CHECK(pr <= 2.0 + 1e-12);
  }
}

TEST_CASE("static and kicked Harper eigenstates differ on average") {
  const auto s = scratch("harper_static");
  const auto k = scratch("harper_kicked");
  REQUIRE(run({"eigenstates", "--system", "harper-static", "--L", "377", "--sigma", "golden", "--out-dir", s.string()}).code == 0);
  REQUIRE(run({"eigenstates", "--system", "harper-kicked", "--L", "377", "--sigma", "golden", "--out-dir", k.string()}).code == 0);
  const auto a = nlohmann::json::parse(slurp(s / "eigenstates.json"));
  const auto b = nlohmann::json::parse(slurp(k / "eigenstates.json"));
  CHECK(a["count"] == 377);
  CHECK(a["summary"]["d2"]["mean"].get<double>() != b["summary"]["d2"]["mean"].get<double>());
}

TEST_CASE("floquet comparison report") {
  const auto dir = scratch("floquet");
  REQUIRE(run({"floquet-compare", "--system", "dkt", "--j", "10", "--eta-over-j", "golden", "--out-dir", dir.string()}).code == 0);
  const auto report = nlohmann::json::parse(slurp(dir / "floquet_compare.json"));
  CHECK(report["strictly_decreasing"] == true);
  REQUIRE(report["errors"].size() == 3);
  CHECK(report["errors"][2]["alpha"] == 0.01);
  CHECK(report["decay_ratios"][1].get<double>() >= 4.0);
}

TEST_CASE("harper diff report") {
  const auto dir = scratch("harper_diff");
  REQUIRE(run({"harper-diff", "--system", "harper-kicked", "--L", "30", "--sigma", "golden", "--out-dir", dir.string()}).code == 0);
  const auto report = nlohmann::json::parse(slurp(dir / "harper_diff.json"));
  CHECK(report["bonds"] == 29);
  CHECK(report["max_abs"].get<double>() > 0.0);
  const auto rows = read_csv(dir / "harper_diff.csv");
  CHECK(rows[0] == std::vector<std::string>{"site", "closed_form", "general", "difference"});
  CHECK(rows.size() == 30);
}

TEST_CASE("config file and exit codes") {
  const auto dir = scratch("config_file");
  {
    std::ofstream f(dir / "run.cfg");
    f << "system = dkt\nj = 8\neta-over-j = golden\n";
  }
  CHECK(run({"spectrum", "--config", (dir / "run.cfg").string(), "--scale-grid", "2,4,8,16", "--out-dir", dir.string()}).code == 0);
  CHECK(run({"spectrum", "--system", "dkt", "--j", "8"}).code == 2);
  CHECK(run({"spectrum", "--bogus", "1"}).code == 2);
  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
  // Too few box-counting scales is a domain error.
  CHECK(run({"spectrum", "--system", "dkt", "--j", "8", "--eta", "1", "--out-dir", dir.string()}).code == 2);
  // Output directory that cannot be created.
  {
    std::ofstream blocker(dir / "file");
    blocker << "x";
  }
  CHECK(run({"harper-diff", "--system", "harper-kicked", "--L", "5", "--sigma", "0.2", "--out-dir", (dir / "file" / "sub").string()})
            .code == 1);
}

TEST_CASE("installed executable") {
  const char* exe = std::getenv("KICKSPEC_CLI");
  if (exe == nullptr) return;
  const auto dir = scratch("exe");
  const std::string ok = std::string(exe) + " floquet-compare --system dkt --j 4 --eta 1 --out-dir " + dir.string() + " > /dev/null";
  CHECK(std::system(ok.c_str()) == 0);
  const std::string bad = std::string(exe) + " spectrum --system su2 --case e --j 4 --eta 1 2> /dev/null";
  const int status = std::system(bad.c_str());
  CHECK(WEXITSTATUS(status) == 2);
}
