#include "kickspec/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <system_error>

#include <CLI11.hpp>
#include <json.hpp>

#include "kickspec/effective_hamiltonian.hpp"
#include "kickspec/errors.hpp"
#include "kickspec/floquet.hpp"
#include "kickspec/harper.hpp"
#include "kickspec/linalg.hpp"
#include "kickspec/parallel.hpp"
#include "kickspec/su2.hpp"

namespace kickspec::cli {
namespace {

namespace fs = std::filesystem;
namespace mf = multifractal;
using Json = nlohmann::ordered_json;

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json json_num(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

fs::path prepare_output(const RunConfig& cfg, const char* name) {
  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + cfg.out_dir.string() + ": " + ec.message());
  return cfg.out_dir / name;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

void write_json(const fs::path& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

Json config_echo(const RunConfig& cfg) {
  Json j = Json::object();
  j["command"] = command_name(cfg.command);
  Json settings = Json::object();
  for (const auto& [k, v] : cfg.echo) settings[k] = v;
  j["settings"] = settings;
  return j;
}

Json histogram_json(const mf::Histogram& h) {
  Json counts = Json::array();
  Json density = Json::array();
  for (auto c : h.counts) counts.push_back(c);
  for (double d : h.density) density.push_back(json_num(d));
  return Json{{"lo", h.lo}, {"hi", h.hi}, {"counts", counts}, {"density", density}};
}

Json summary_json(const mf::Summary& s) {
  return Json{{"mean", s.mean}, {"variance", s.variance}, {"min", s.min}, {"max", s.max}};
}

harper::HarperParams harper_params(const RunConfig& cfg, double sigma) {
  harper::HarperParams p;
  p.length = cfg.length;
  p.sigma = sigma;
  p.alpha = cfg.alpha;
  p.period = cfg.period;
  p.boundary = cfg.boundary;
  return p;
}

std::vector<double> to_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

bool on_grid(std::span<const double> grid, double q) {
  return std::any_of(grid.begin(), grid.end(), [&](double g) { return std::abs(g - q) < 1e-12; });
}

}  // namespace

HermitianOperator build_hamiltonian(const RunConfig& cfg, double parameter) {
  switch (cfg.system) {
    case SystemKind::Dkt:
      return heff_delta_kicked(floquet::dkt_system(cfg.alpha, parameter, *cfg.j, cfg.period));
    case SystemKind::Su2Family:
      return su2::general_su2_hamiltonian(
          su2::table_case(cfg.su2_case, *cfg.j, cfg.alpha, parameter, cfg.epsilon));
    case SystemKind::HarperStatic:
      return harper::harper_hamiltonian(harper_params(cfg, parameter));
    case SystemKind::HarperKicked:
      return harper::kicked_harper_effective(harper_params(cfg, parameter), cfg.harper_mode);
    case SystemKind::SyntheticUniform:
      break;
  }
  throw ConfigError("system '" + system_name(cfg.system) + "' has no Hamiltonian");
}

std::vector<double> sweep_spectrum(const RunConfig& cfg, double parameter) {
  auto e = to_vector(linalg::eigenvalues(build_hamiltonian(cfg, parameter)));
  if (cfg.system == SystemKind::Dkt) {
    for (double& x : e) x = floquet::fold_phase(x * cfg.period);
  }
  std::sort(e.begin(), e.end());
  return e;
}

std::vector<double> spectrum_values(const RunConfig& cfg) {
  if (cfg.system == SystemKind::SyntheticUniform) {
    const int n = cfg.synthetic_points;
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = static_cast<double>(i) / (n - 1);
    return v;
  }
  return to_vector(linalg::eigenvalues(build_hamiltonian(cfg, *cfg.parameter)));
}

mf::ScalingSpectrum analyze_values(const RunConfig& cfg, std::span<const double> values) {
  const std::vector<int> scales =
      cfg.scale_grid.empty() ? mf::default_eigenvalue_scales(values.size()) : cfg.scale_grid;
  return mf::generalized_dimensions(mf::tau_spectrum(values, cfg.q_grid, scales));
}

std::vector<mf::EigenvectorProfile> eigenstate_profiles(const RunConfig& cfg) {
  const auto sys = linalg::eigensystem(build_hamiltonian(cfg, *cfg.parameter));
  const Index d = sys.vectors.rows();
  const std::vector<int> partitions =
      cfg.partition_grid.empty() ? mf::default_partition_grid(static_cast<std::size_t>(d)) : cfg.partition_grid;
  std::vector<mf::EigenvectorProfile> profiles(static_cast<std::size_t>(sys.vectors.cols()));
  parallel_for(profiles.size(), cfg.threads, [&](std::size_t k) {
    const auto column = sys.vectors.col(static_cast<Index>(k));
    std::vector<double> w(static_cast<std::size_t>(d));
    double total = 0.0;
    for (Index m = 0; m < d; ++m) total += w[static_cast<std::size_t>(m)] = std::norm(column(m));
    for (double& x : w) x /= total;
    profiles[k] = mf::make_profile(std::move(w), cfg.q_grid, partitions);
  });
  return profiles;
}

std::vector<fs::path> cmd_butterfly(const RunConfig& cfg) {
  const auto points = cfg.sweep->points();
  if (points.size() < 1) throw ConfigError("empty sweep range");
  std::vector<std::vector<double>> columns(points.size());
  const bool spin = cfg.system == SystemKind::Dkt || cfg.system == SystemKind::Su2Family;
  parallel_for(points.size(), cfg.threads, [&](std::size_t i) {
    const double parameter = spin ? points[i] * kPi * cfg.j->j() : points[i];
    columns[i] = sweep_spectrum(cfg, parameter);
  });
  const auto path = prepare_output(cfg, "butterfly.csv");
  std::string text = "sweep_value,index,energy\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::string x = num(points[i]);
    for (std::size_t k = 0; k < columns[i].size(); ++k) {
      text += x;
      text += ',';
      text += std::to_string(k);
      text += ',';
      text += num(columns[i][k]);
      text += '\n';
    }
  }
  write_text(path, text);
  return {path};
}

std::vector<fs::path> cmd_analyze_spectrum(const RunConfig& cfg) {
  auto values = spectrum_values(cfg);
  std::sort(values.begin(), values.end());
  const auto s = analyze_values(cfg, values);

  std::string tau_csv = "q,tau,d_q,r2\n";
  for (std::size_t i = 0; i < s.q_grid.size(); ++i)
    tau_csv += num(s.q_grid[i]) + ',' + num(s.tau[i]) + ',' + num(s.dq[i]) + ',' + num(s.fit_r2[i]) + '\n';

  std::string values_csv = "index,energy\n";
  for (std::size_t i = 0; i < values.size(); ++i) values_csv += std::to_string(i) + ',' + num(values[i]) + '\n';

  std::string density_csv = "window,center,density\n";
  auto add_density = [&](const char* label, const mf::DensityTable& t) {
    for (std::size_t i = 0; i < t.centers.size(); ++i)
      density_csv += std::string(label) + ',' + num(t.centers[i]) + ',' + num(t.density[i]) + '\n';
  };
  add_density("full", mf::spectral_histogram(values, cfg.bins));
  if (cfg.zoom) add_density("zoom", mf::spectral_histogram(values, cfg.bins, cfg.zoom));

  Json report = config_echo(cfg);
  report["system"] = system_name(cfg.system);
  report["n_values"] = values.size();
  report["range"] = Json::array({values.front(), values.back()});
  report["scale_grid"] = s.scale_grid;
  report["D0"] = on_grid(s.q_grid, 0.0) ? json_num(s.dq_at(0.0)) : Json(nullptr);
  report["D1"] = json_num(mf::information_dimension(values, s.scale_grid));
  report["D2"] = on_grid(s.q_grid, 2.0) ? json_num(s.dq_at(2.0)) : Json(nullptr);
  report["mu"] = json_num(s.mu);
  report["mu_q_range"] = Json::array({s.mu_q_lo, s.mu_q_hi});
  report["skipped_q1"] = s.skipped_q1;
  Json fits = Json::array();
  for (std::size_t i = 0; i < s.q_grid.size(); ++i) {
    const auto& f = s.fits[i];
    fits.push_back(Json{{"q", s.q_grid[i]},
                        {"tau", json_num(s.tau[i])},
                        {"d_q", json_num(s.dq[i])},
                        {"r2", json_num(s.fit_r2[i])},
                        {"intercept", json_num(f.intercept)},
                        {"window", Json{{"first", f.first},
                                        {"last", f.last},
                                        {"boxes_lo", s.scale_grid[f.first]},
                                        {"boxes_hi", s.scale_grid[f.last - 1]}}}});
  }
  report["fits"] = fits;

  const auto tau_path = prepare_output(cfg, "tau.csv");
  const auto json_path = prepare_output(cfg, "spectrum.json");
  const auto values_path = prepare_output(cfg, "eigenvalues.csv");
  const auto density_path = prepare_output(cfg, "density.csv");
  write_text(tau_path, tau_csv);
  write_json(json_path, report);
  write_text(values_path, values_csv);
  write_text(density_path, density_csv);
  return {tau_path, json_path, values_path, density_path};
}

std::vector<fs::path> cmd_analyze_eigenstates(const RunConfig& cfg) {
  const auto profiles = eigenstate_profiles(cfg);
  const auto stats = mf::ensemble_statistics(profiles, cfg.bins);

  std::string csv = "index,pr,d2,d5,mu\n";
  for (std::size_t k = 0; k < profiles.size(); ++k) {
    const auto& p = profiles[k];
    csv += std::to_string(k) + ',' + num(p.pr) + ',' + num(p.d_bar(2.0)) + ',' + num(p.d_bar(5.0)) + ',' +
           num(p.mu_bar()) + '\n';
  }

  const mf::EnsembleThresholds thresholds;
  Json report = config_echo(cfg);
  report["system"] = system_name(cfg.system);
  report["count"] = stats.count;
  report["partition_grid"] = profiles.front().scaling.scale_grid;
  report["mu_q_range"] = Json::array({profiles.front().scaling.mu_q_lo, profiles.front().scaling.mu_q_hi});
  report["thresholds"] = Json{{"pr_localized", thresholds.pr_localized},
                              {"d_small", thresholds.d_small},
                              {"fractal_window", Json::array({thresholds.fractal_lo, thresholds.fractal_hi})}};
  report["fractions"] = Json{{"pr_below", stats.fraction_pr_below},
                             {"d2_small", stats.fraction_d2_small},
                             {"d5_small", stats.fraction_d5_small},
                             {"d2_fractal", stats.fraction_d2_fractal},
                             {"d5_fractal", stats.fraction_d5_fractal}};
  report["summary"] = Json{{"pr", summary_json(stats.pr_summary)},
                           {"d2", summary_json(stats.d2_summary)},
                           {"d5", summary_json(stats.d5_summary)},
                           {"mu", summary_json(stats.mu_summary)}};
  report["histograms"] = Json{{"pr", histogram_json(stats.pr)},
                              {"d2", histogram_json(stats.d2)},
                              {"d5", histogram_json(stats.d5)},
                              {"mu", histogram_json(stats.mu)}};

  const auto csv_path = prepare_output(cfg, "eigenstates.csv");
  const auto json_path = prepare_output(cfg, "eigenstates.json");
  write_text(csv_path, csv);
  write_json(json_path, report);
  return {csv_path, json_path};
}

std::vector<fs::path> cmd_floquet_compare(const RunConfig& cfg) {
  std::vector<double> errors(cfg.alpha_ladder.size());
  parallel_for(errors.size(), cfg.threads, [&](std::size_t i) {
    errors[i] = floquet::effective_vs_floquet_error(cfg.alpha_ladder[i], *cfg.parameter, *cfg.j);
  });
  Json rows = Json::array();
  for (std::size_t i = 0; i < errors.size(); ++i)
    rows.push_back(Json{{"alpha", cfg.alpha_ladder[i]}, {"error", errors[i]}});
  Json ratios = Json::array();
  bool decreasing = true;
  for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
    ratios.push_back(errors[i + 1] > 0.0 ? Json(errors[i] / errors[i + 1]) : Json(nullptr));
    decreasing = decreasing && errors[i + 1] < errors[i];
  }
  Json report = config_echo(cfg);
  report["j"] = cfg.j->j();
  report["eta"] = *cfg.parameter;
  report["period"] = 1.0;
  report["errors"] = rows;
  report["decay_ratios"] = ratios;
  report["strictly_decreasing"] = decreasing;
  const auto path = prepare_output(cfg, "floquet_compare.json");
  write_json(path, report);
  return {path};
}

std::vector<fs::path> cmd_harper_diff(const RunConfig& cfg) {
  const auto rep = harper::heff_discrepancy_report(harper_params(cfg, *cfg.parameter));
  std::string csv = "site,closed_form,general,difference\n";
  double max_bond = 0.0;
  for (const auto& b : rep.bonds) {
    csv += std::to_string(b.site) + ',' + num(b.closed_form) + ',' + num(b.general) + ',' + num(b.difference) + '\n';
    max_bond = std::max(max_bond, std::abs(b.difference));
  }
  Json report = config_echo(cfg);
  report["length"] = cfg.length;
  report["sigma"] = *cfg.parameter;
  report["energy_scale"] = rep.energy_scale;
  report["max_abs"] = rep.max_abs;
  report["max_bond_difference"] = max_bond;
  report["bonds"] = rep.bonds.size();
  const auto json_path = prepare_output(cfg, "harper_diff.json");
  const auto csv_path = prepare_output(cfg, "harper_diff.csv");
  write_json(json_path, report);
  write_text(csv_path, csv);
  return {json_path, csv_path};
}

std::vector<fs::path> run_command(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::Butterfly: return cmd_butterfly(cfg);
    case Command::Spectrum: return cmd_analyze_spectrum(cfg);
    case Command::Eigenstates: return cmd_analyze_eigenstates(cfg);
    case Command::FloquetCompare: return cmd_floquet_compare(cfg);
    case Command::HarperDiff: return cmd_harper_diff(cfg);
  }
  return {};
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Effective Hamiltonians and multifractal spectra of delta-kicked systems", "kickspec"};
  app.require_subcommand(1);

  struct Slot {
    std::string value;
    CLI::Option* option = nullptr;
  };
  struct Sub {
    CLI::App* app = nullptr;
    std::string config;
    bool full_scale = false;
    std::map<std::string, Slot> slots;
  };
  const std::vector<std::pair<Command, const char*>> commands = {
      {Command::Butterfly, "Eigenvalues across a xi or sigma sweep"},
      {Command::Spectrum, "Box-counting multifractal analysis of the spectrum"},
      {Command::Eigenstates, "Participation ratios and dimensions of every eigenvector"},
      {Command::FloquetCompare, "Effective Hamiltonian against the exact Floquet operator"},
      {Command::HarperDiff, "Closed-form versus general kicked Harper construction"}};
  const std::map<std::string, std::string> help = {
      {"system", "dkt, su2, harper-static, harper-kicked or uniform"},
      {"case", "SU(2) family case a-f"},
      {"j", "spin quantum number (integer or half-integer)"},
      {"L", "Harper chain length"},
      {"alpha", "kick strength"},
      {"alpha-over", "kick strength as alpha-over / j"},
      {"eta", "phase parameter eta"},
      {"eta-over-j", "phase parameter as eta / j ('golden' allowed)"},
      {"xi", "phase parameter as eta / (pi j)"},
      {"sigma", "Harper flux ('golden' allowed)"},
      {"xi-sweep", "start:stop:step sweep of xi"},
      {"sigma-sweep", "start:stop:step sweep of sigma"},
      {"period", "kick period T (default 1)"},
      {"epsilon", "case e coupling, b = epsilon * alpha"},
      {"q-grid", "comma list or start:stop:step of q values"},
      {"scale-grid", "comma list of box counts for the spectrum"},
      {"partition-grid", "comma list of partition counts for eigenvectors"},
      {"out-dir", "output directory (default .)"},
      {"threads", "worker threads (default: hardware)"},
      {"alpha-ladder", "kick strengths for floquet-compare (default 0.04,0.02,0.01)"},
      {"harper-mode", "closed or general"},
      {"boundary", "open or periodic"},
      {"bins", "histogram bins (default 50)"},
      {"n", "points in the uniform test spectrum (default 4096)"},
      {"zoom", "lo:hi energy window for an extra density table"}};
  std::vector<Sub> subs(commands.size());
  for (std::size_t i = 0; i < commands.size(); ++i) {
    auto& s = subs[i];
    s.app = app.add_subcommand(command_name(commands[i].first), commands[i].second);
    s.app->add_option("--config", s.config, "key = value configuration file")->check(CLI::ExistingFile);
    for (const auto& key : known_keys()) {
      if (key == "full-scale") {
        s.slots[key].option = s.app->add_flag("--full-scale", s.full_scale, "Allow dimensions above 2001");
      } else {
        s.slots[key].option = s.app->add_option("--" + key, s.slots[key].value, help.at(key));
      }
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    for (std::size_t i = 0; i < subs.size(); ++i) {
      const auto& s = subs[i];
      if (!s.app->parsed()) continue;
      KeyValues file;
      if (!s.config.empty()) file = read_config_file(s.config);
      KeyValues flags;
      for (const auto& [key, slot] : s.slots) {
        if (slot.option->count() == 0) continue;
        flags.emplace_back(key, key == "full-scale" ? (s.full_scale ? "true" : "false") : slot.value);
      }
      const RunConfig cfg = parse_config(commands[i].first, file, flags);
      for (const auto& path : run_command(cfg)) out << path.string() << '\n';
    }
    return 0;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace kickspec::cli
