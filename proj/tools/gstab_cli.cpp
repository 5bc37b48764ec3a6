// Command-line front end: configure a system + level-function pair, run the
// sampling checks and simulations, and export reports as JSON/CSV.

#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gstab/gstab.hpp"

namespace fs = std::filesystem;
using namespace gstab;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitViolated = 1;
constexpr int kExitConfig = 2;

std::string utc_now() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_json_file(const fs::path& path, Json j) {
  j["generated_at_utc"] = utc_now();
  atomic_write_file(path, j.dump(2) + "\n");
}

struct Session {
  RunConfig cfg;
  fs::path out_dir;

  DiscreteSystem system() const { return build_system(cfg.system); }

  GFunction gfunction(int dim) const {
    if (!cfg.gfunction) {
      throw ConfigError("this command needs a gfunction section");
    }
    return build_gfunction(*cfg.gfunction, dim);
  }

  ValidatorOptions validator_options() const {
    ValidatorOptions opts;
    if (cfg.validator_floor) opts.neg_inf_floor = *cfg.validator_floor;
    if (cfg.validator_ceiling) opts.blowup_ceiling = *cfg.validator_ceiling;
    return opts;
  }
};

Session open_session(const std::string& config_path,
                     const std::string& out_override) {
  Session s;
  s.cfg = load_config(read_file(config_path));
  s.out_dir = out_override.empty() ? fs::path(s.cfg.output.dir)
                                   : fs::path(out_override);
  fs::create_directories(s.out_dir);
  return s;
}

bool wants_format(const RunConfig& cfg, const std::string& fmt) {
  for (const auto& f : cfg.output.formats) {
    if (f == fmt) return true;
  }
  return false;
}

double default_bracket_floor(const GFunction& g) {
  return g.min_level.is_finite() ? g.min_level.value() + 1e-6 : -10.0;
}

double resolve_level(const Session& s, const GFunction& g,
                     const DiscreteSystem& sys) {
  if (s.cfg.check.lambda_auto) {
    auto [lo, hi] = s.cfg.check.bracket.value_or(
        std::make_pair(default_bracket_floor(g), 5.0));
    LevelSearchOptions opts;
    opts.iterations = s.cfg.check.iterations;
    opts.connect_grid_step = s.cfg.check.connect_grid_step;
    return find_largest_level(g, sys, ExtendedReal::finite(lo), hi,
                              s.cfg.sampling, opts)
        .value();
  }
  if (!s.cfg.check.lambda) {
    throw ConfigError("check.lambda: required (a number or \"auto\")");
  }
  return *s.cfg.check.lambda;
}

int cmd_check(const Session& s) {
  DiscreteSystem sys = s.system();
  GFunction g = s.gfunction(sys.dim);
  const std::string& mode = s.cfg.check.mode;

  Json out;
  CheckReport merged_for_exit;
  if (mode == "inside") {
    double level = resolve_level(s, g, sys);
    CheckReport rep = check_decrease_inside(
        g, sys, ExtendedReal::finite(level), s.cfg.sampling);
    out = report_to_json(rep);
    if (g.dim <= 3 && s.cfg.sampling.window) {
      double step = s.cfg.check.connect_grid_step;
      if (step <= 0.0) {
        const BoxRegion& w = *s.cfg.sampling.window;
        double extent = 0.0;
        for (std::size_t i = 0; i < w.lower.size(); ++i) {
          extent = std::max(extent, w.upper[i] - w.lower[i]);
        }
        step = extent / 400.0;
      }
      out["connected"] = check_connected(g, ExtendedReal::finite(level),
                                         *s.cfg.sampling.window, step);
    } else {
      out["connected"] = nullptr;  // unchecked
    }
    if (s.cfg.check.fit_envelope) {
      out["envelope"] = classk_to_json(fit_class_k_envelope(
          g, sys, ExtendedReal::finite(level), s.cfg.sampling));
    }
    merged_for_exit = rep;
  } else if (mode == "outside") {
    if (!s.cfg.check.window) {
      throw ConfigError("check.window: required for mode \"outside\"");
    }
    double level = resolve_level(s, g, sys);
    CheckReport rep =
        check_nondecrease_outside(g, sys, ExtendedReal::finite(level),
                                  *s.cfg.check.window, s.cfg.sampling);
    out = report_to_json(rep);
    merged_for_exit = rep;
  } else if (mode == "global") {
    if (s.cfg.check.windows.empty()) {
      throw ConfigError("check.windows: required for mode \"global\"");
    }
    GlobalCheckReport rep =
        check_global(g, sys, s.cfg.check.windows, s.cfg.sampling);
    out = global_report_to_json(rep);
    merged_for_exit = rep.merged;
  } else {
    throw ConfigError("check.mode: expected inside|outside|global, got '" +
                      mode + "'");
  }

  if (wants_format(s.cfg, "json")) {
    write_json_file(s.out_dir / "report.json", out);
  }
  if (!merged_for_exit.violations.empty() && wants_format(s.cfg, "csv")) {
    atomic_write_file(s.out_dir / "witnesses.csv",
                      witnesses_to_csv(merged_for_exit, sys.dim));
  }
  std::cout << merged_for_exit.kind << ": "
            << (merged_for_exit.passed() ? "pass-on-samples" : "VIOLATED")
            << " (" << merged_for_exit.samples_tested << " samples, "
            << merged_for_exit.violation_count << " violations)\n";
  return merged_for_exit.passed() ? kExitPass : kExitViolated;
}

int cmd_simulate(const Session& s, const std::string& x0_flag) {
  DiscreteSystem sys = s.system();
  std::vector<double> coords;
  if (!x0_flag.empty()) {
    std::stringstream ss(x0_flag);
    std::string cell;
    while (std::getline(ss, cell, ',')) coords.push_back(std::stod(cell));
  } else if (s.cfg.simulation.x0) {
    coords = *s.cfg.simulation.x0;
  } else {
    throw ConfigError("simulate needs --x0 or simulation.x0");
  }
  if (static_cast<int>(coords.size()) != sys.dim) {
    throw ConfigError("x0 has dimension " + std::to_string(coords.size()) +
                      " but the system has dimension " +
                      std::to_string(sys.dim));
  }

  std::optional<GFunction> g;
  if (s.cfg.gfunction) g = build_gfunction(*s.cfg.gfunction, sys.dim);

  TrajectoryRecord rec = simulate(sys, StateVector(coords),
                                  s.cfg.simulation.params,
                                  g ? &*g : nullptr);
  atomic_write_file(s.out_dir / "trajectory.csv", trajectory_to_csv(rec));
  std::cout << "classification: "
            << classification_to_string(rec.classification) << " ("
            << rec.states.size() << " states recorded)\n";
  return kExitPass;
}

int cmd_find_lambda(const Session& s) {
  DiscreteSystem sys = s.system();
  GFunction g = s.gfunction(sys.dim);
  auto [lo, hi] = s.cfg.check.bracket.value_or(
      std::make_pair(default_bracket_floor(g), 5.0));
  LevelSearchOptions opts;
  opts.iterations = s.cfg.check.iterations;
  opts.connect_grid_step = s.cfg.check.connect_grid_step;
  LevelSearchReport rep = search_largest_level(
      g, sys, ExtendedReal::finite(lo), hi, s.cfg.sampling, opts);
  write_json_file(s.out_dir / "level_search.json", level_search_to_json(rep));
  if (rep.best) {
    std::cout << "lambda = " << *rep.best << " (bracket [" << lo << ", " << hi
              << "], " << rep.probes.size() << " probes, "
              << rep.iterations << " iterations)\n";
    return kExitPass;
  }
  std::cout << "no feasible lambda in [" << lo << ", " << hi << "]\n";
  return kExitViolated;
}

int cmd_validate(const Session& s) {
  RunConfig cfg = s.cfg;
  std::optional<BoxRegion> wbox = cfg.check.window;
  if (!wbox) wbox = cfg.sampling.window;
  if (!wbox) {
    throw ConfigError("validate needs check.window or sampling.window");
  }
  GFunction g = s.gfunction(wbox->dim());
  ValidationReport rep = validate_gfunction(g, Region(*wbox), cfg.sampling,
                                            s.validator_options());
  write_json_file(s.out_dir / "validation.json", validation_to_json(rep));
  std::cout << "validation: " << (rep.overall ? "pass-on-samples" : "VIOLATED")
            << "\n";
  return rep.overall ? kExitPass : kExitViolated;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sampling-based asymptotic stability checks for discrete-time "
               "nonlinear systems"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_override;
  std::string x0_flag;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", config_path, "JSON run configuration")
        ->required();
    sub->add_option("-o,--out", out_override,
                    "output directory (overrides output.dir)");
  };

  CLI::App* check = app.add_subcommand(
      "check", "run the configured decrease/exactness/global check");
  add_common(check);
  CLI::App* sim =
      app.add_subcommand("simulate", "simulate one trajectory and export CSV");
  add_common(sim);
  sim->add_option("--x0", x0_flag, "start state, comma separated");
  CLI::App* findl = app.add_subcommand(
      "find-lambda", "search the largest certifiable level by bisection");
  add_common(findl);
  CLI::App* val =
      app.add_subcommand("validate", "screen the configured level function");
  add_common(val);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    Session s = open_session(config_path, out_override);
    if (check->parsed()) return cmd_check(s);
    if (sim->parsed()) return cmd_simulate(s, x0_flag);
    if (findl->parsed()) return cmd_find_lambda(s);
    if (val->parsed()) return cmd_validate(s);
    return kExitConfig;
  } catch (const NoFeasibleLambda& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitViolated;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}
