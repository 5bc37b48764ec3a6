#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gstab/errors.hpp"
#include "gstab/expression.hpp"
#include "gstab/gfunction.hpp"
#include "gstab/region.hpp"
#include "gstab/report_io.hpp"
#include "gstab/sampling.hpp"
#include "gstab/system.hpp"

namespace gstab {

// ---------------------------------------------------------------------------
// Run configuration: one JSON file drives every CLI subcommand. See the
// README for the documented schema.

struct DomainConfig {
  std::string kind = "all";  // all | ball | box
  double radius = 1.0;
  std::vector<double> lower, upper;
};

struct SystemConfig {
  // Either a builtin id with parameters, or a custom expression map.
  std::string builtin;  // sine_tanh | sine_sec_cubed | gauss_product | norm_shell
  double alpha = 0.0;
  std::string f_choice = "quadratic";  // norm_shell: quadratic | exp_shift
  int dim = 0;                         // 0: builtin default
  std::vector<std::string> map_exprs;  // custom map, one expression per axis
  DomainConfig domain;
};

struct GFunctionConfig {
  std::string builtin;  // log_norm | log_over_norm | neg_sinc | neg_cos_exp
                        // | piecewise_log_norm | log_norm_l1
  std::string custom_expr;  // alternative: expression in x1..xn
  ExtendedReal custom_min_level = ExtendedReal::neg_inf();
  bool custom_norm_monotone = false;
};

struct CheckConfig {
  std::string mode = "inside";  // inside | outside | global
  std::optional<double> lambda;
  bool lambda_auto = false;
  std::optional<BoxRegion> window;    // outside mode
  std::vector<BoxRegion> windows;     // global mode
  std::optional<std::pair<double, double>> bracket;  // level search
  int iterations = 30;
  bool fit_envelope = false;
  double connect_grid_step = 0.0;  // 0: derived
};

struct SimulationConfig {
  SimParams params;
  std::optional<std::vector<double>> x0;
};

struct OutputConfig {
  std::string dir = "out";
  std::vector<std::string> formats = {"json", "csv"};
};

struct RunConfig {
  SystemConfig system;
  std::optional<GFunctionConfig> gfunction;
  CheckConfig check;
  SamplingPlan sampling;
  SimulationConfig simulation;
  OutputConfig output;
  std::optional<double> validator_floor;    // validate: -inf limit floor
  std::optional<double> validator_ceiling;  // validate: blow-up ceiling
};

// ---------------------------------------------------------------------------
// Builders.

inline Region build_domain(const DomainConfig& d, int dim) {
  if (d.kind == "all") return Region::all(dim);
  if (d.kind == "ball") return Region::ball(dim, d.radius);
  if (d.kind == "box") {
    if (static_cast<int>(d.lower.size()) != dim) {
      throw ConfigError("system.custom.domain: box dimension mismatch");
    }
    return Region::box(d.lower, d.upper);
  }
  throw ConfigError("system.custom.domain.kind: unknown kind '" + d.kind +
                    "'");
}

inline DiscreteSystem build_system(const SystemConfig& sc) {
  if (!sc.builtin.empty()) {
    if (sc.builtin == "sine_tanh") return make_sine_tanh();
    if (sc.builtin == "sine_sec_cubed") return make_sine_sec_cubed();
    if (sc.builtin == "gauss_product") return make_gauss_product(sc.alpha);
    if (sc.builtin == "norm_shell") {
      NormShellMap choice;
      if (sc.f_choice == "quadratic") {
        choice = NormShellMap::Quadratic;
      } else if (sc.f_choice == "exp_shift") {
        choice = NormShellMap::ExpShift;
      } else {
        throw ConfigError("system.f: expected 'quadratic' or 'exp_shift', got '" +
                          sc.f_choice + "'");
      }
      return make_norm_shell(sc.alpha, choice, sc.dim > 0 ? sc.dim : 1);
    }
    throw ConfigError("system.builtin: unknown id '" + sc.builtin + "'");
  }
  if (sc.map_exprs.empty()) {
    throw ConfigError("system: provide either builtin or custom.map");
  }
  const int dim = static_cast<int>(sc.map_exprs.size());
  std::vector<Expression> comps;
  for (const auto& src : sc.map_exprs) {
    comps.push_back(Expression::parse(src, dim));
  }
  DiscreteSystem sys;
  sys.dim = dim;
  sys.domain = build_domain(sc.domain, dim);
  sys.label = "custom";
  sys.map = [comps](const StateVector& x) {
    std::vector<double> out(comps.size());
    for (std::size_t i = 0; i < comps.size(); ++i) out[i] = comps[i].eval(x);
    return StateVector(std::move(out));
  };
  return sys;
}

inline GFunction build_gfunction(const std::string& id, int dim) {
  if (id == "log_norm") return make_gfunction(BuiltinG::LogNorm, dim);
  if (id == "log_over_norm") return make_gfunction(BuiltinG::LogOverNorm, dim);
  if (id == "neg_sinc") return make_gfunction(BuiltinG::NegSinc, dim);
  if (id == "neg_cos_exp") return make_gfunction(BuiltinG::NegCosExp, dim);
  if (id == "piecewise_log_norm") {
    return make_gfunction(BuiltinG::PiecewiseLogNorm, dim);
  }
  if (id == "log_norm_l1") return make_gfunction(BuiltinG::LogNormL1, dim);
  throw ConfigError("gfunction.builtin: unknown id '" + id + "'");
}

inline GFunction build_gfunction(const GFunctionConfig& gc, int dim) {
  if (!gc.builtin.empty()) return build_gfunction(gc.builtin, dim);
  if (gc.custom_expr.empty()) {
    throw ConfigError("gfunction: provide either builtin or custom.expr");
  }
  Expression expr = Expression::parse(gc.custom_expr, dim);
  GFunction g;
  g.dim = dim;
  g.label = gc.custom_expr;
  g.min_level = gc.custom_min_level;
  g.norm_monotone = gc.custom_norm_monotone;
  g.eval = [expr](const StateVector& x) {
    return ExtendedReal::from_eval(expr.eval(x));
  };
  return g;
}

// ---------------------------------------------------------------------------
// JSON round trip.

inline Json config_to_json(const RunConfig& c) {
  Json j;
  Json sys;
  if (!c.system.builtin.empty()) {
    sys["builtin"] = c.system.builtin;
    if (c.system.builtin == "gauss_product" ||
        c.system.builtin == "norm_shell") {
      sys["alpha"] = c.system.alpha;
    }
    if (c.system.builtin == "norm_shell") {
      sys["f"] = c.system.f_choice;
      if (c.system.dim > 0) sys["dim"] = c.system.dim;
    }
  } else {
    Json dom{{"kind", c.system.domain.kind}};
    if (c.system.domain.kind == "ball") dom["radius"] = c.system.domain.radius;
    if (c.system.domain.kind == "box") {
      dom["lower"] = c.system.domain.lower;
      dom["upper"] = c.system.domain.upper;
    }
    sys["custom"] = Json{{"map", c.system.map_exprs}, {"domain", dom}};
  }
  j["system"] = std::move(sys);
  if (c.gfunction) {
    if (!c.gfunction->builtin.empty()) {
      j["gfunction"] = Json{{"builtin", c.gfunction->builtin}};
    } else {
      j["gfunction"] = Json{
          {"custom",
           Json{{"expr", c.gfunction->custom_expr},
                {"min_level", xr_to_json(c.gfunction->custom_min_level)},
                {"norm_monotone", c.gfunction->custom_norm_monotone}}}};
    }
  }

  Json chk;
  chk["mode"] = c.check.mode;
  if (c.check.lambda_auto) {
    chk["lambda"] = "auto";
  } else if (c.check.lambda) {
    chk["lambda"] = *c.check.lambda;
  }
  if (c.check.window) chk["window"] = box_to_json(*c.check.window);
  if (!c.check.windows.empty()) {
    Json ws = Json::array();
    for (const auto& w : c.check.windows) ws.push_back(box_to_json(w));
    chk["windows"] = std::move(ws);
  }
  if (c.check.bracket) {
    chk["bracket"] = Json::array({c.check.bracket->first,
                                  c.check.bracket->second});
  }
  chk["iterations"] = c.check.iterations;
  chk["fit_envelope"] = c.check.fit_envelope;
  if (c.check.connect_grid_step > 0.0) {
    chk["connect_grid_step"] = c.check.connect_grid_step;
  }
  j["check"] = std::move(chk);
  j["sampling"] = plan_to_json(c.sampling);

  Json sim;
  sim["max_steps"] = c.simulation.params.max_steps;
  sim["conv_tol"] = c.simulation.params.conv_tol;
  sim["div_bound"] = c.simulation.params.div_bound;
  sim["conv_persist"] = c.simulation.params.conv_persist;
  if (c.simulation.x0) sim["x0"] = *c.simulation.x0;
  j["simulation"] = std::move(sim);

  j["output"] = Json{{"dir", c.output.dir}, {"formats", c.output.formats}};
  if (c.validator_floor || c.validator_ceiling) {
    Json v;
    if (c.validator_floor) v["neg_inf_floor"] = *c.validator_floor;
    if (c.validator_ceiling) v["blowup_ceiling"] = *c.validator_ceiling;
    j["validate"] = std::move(v);
  }
  return j;
}

inline RunConfig config_from_json(const Json& j) {
  RunConfig c;
  if (!j.contains("system")) throw ConfigError("missing required key: system");
  const Json& sys = j["system"];
  if (sys.contains("builtin")) {
    c.system.builtin = sys["builtin"].get<std::string>();
    if (sys.contains("alpha")) c.system.alpha = sys["alpha"].get<double>();
    if (sys.contains("f")) c.system.f_choice = sys["f"].get<std::string>();
    if (sys.contains("dim")) c.system.dim = sys["dim"].get<int>();
  } else if (sys.contains("custom")) {
    const Json& cu = sys["custom"];
    c.system.map_exprs = cu.at("map").get<std::vector<std::string>>();
    if (cu.contains("domain")) {
      const Json& dom = cu["domain"];
      c.system.domain.kind = dom.at("kind").get<std::string>();
      if (dom.contains("radius")) {
        c.system.domain.radius = dom["radius"].get<double>();
      }
      if (dom.contains("lower")) {
        c.system.domain.lower = dom["lower"].get<std::vector<double>>();
        c.system.domain.upper = dom.at("upper").get<std::vector<double>>();
      }
    }
  } else {
    throw ConfigError("system: provide either 'builtin' or 'custom'");
  }

  if (j.contains("gfunction")) {
    const Json& gf = j["gfunction"];
    GFunctionConfig gc;
    if (gf.contains("builtin")) {
      gc.builtin = gf["builtin"].get<std::string>();
    } else if (gf.contains("custom")) {
      const Json& cu = gf["custom"];
      gc.custom_expr = cu.at("expr").get<std::string>();
      if (cu.contains("min_level")) {
        gc.custom_min_level = xr_from_json(cu["min_level"]);
      }
      if (cu.contains("norm_monotone")) {
        gc.custom_norm_monotone = cu["norm_monotone"].get<bool>();
      }
    } else {
      throw ConfigError("gfunction: provide either 'builtin' or 'custom'");
    }
    c.gfunction = std::move(gc);
  }

  if (j.contains("check")) {
    const Json& chk = j["check"];
    if (chk.contains("mode")) c.check.mode = chk["mode"].get<std::string>();
    if (chk.contains("lambda")) {
      if (chk["lambda"].is_string()) {
        if (chk["lambda"].get<std::string>() != "auto") {
          throw ConfigError("check.lambda: expected a number or \"auto\"");
        }
        c.check.lambda_auto = true;
      } else {
        c.check.lambda = chk["lambda"].get<double>();
      }
    }
    if (chk.contains("window") && !chk["window"].is_null()) {
      c.check.window = box_from_json(chk["window"]);
    }
    if (chk.contains("windows")) {
      for (const auto& w : chk["windows"]) {
        c.check.windows.push_back(box_from_json(w));
      }
    }
    if (chk.contains("bracket")) {
      const auto& b = chk["bracket"];
      if (!b.is_array() || b.size() != 2) {
        throw ConfigError("check.bracket: expected [lo, hi]");
      }
      c.check.bracket = {b[0].get<double>(), b[1].get<double>()};
    }
    if (chk.contains("iterations")) {
      c.check.iterations = chk["iterations"].get<int>();
    }
    if (chk.contains("fit_envelope")) {
      c.check.fit_envelope = chk["fit_envelope"].get<bool>();
    }
    if (chk.contains("connect_grid_step")) {
      c.check.connect_grid_step = chk["connect_grid_step"].get<double>();
    }
  }

  if (j.contains("sampling")) c.sampling = plan_from_json(j["sampling"]);

  if (j.contains("simulation")) {
    const Json& sim = j["simulation"];
    if (sim.contains("max_steps")) {
      c.simulation.params.max_steps = sim["max_steps"].get<long>();
    }
    if (sim.contains("conv_tol")) {
      c.simulation.params.conv_tol = sim["conv_tol"].get<double>();
    }
    if (sim.contains("div_bound")) {
      c.simulation.params.div_bound = sim["div_bound"].get<double>();
    }
    if (sim.contains("conv_persist")) {
      c.simulation.params.conv_persist = sim["conv_persist"].get<int>();
    }
    if (sim.contains("x0")) {
      c.simulation.x0 = sim["x0"].get<std::vector<double>>();
    }
  }

  if (j.contains("output")) {
    const Json& out = j["output"];
    if (out.contains("dir")) c.output.dir = out["dir"].get<std::string>();
    if (out.contains("formats")) {
      c.output.formats = out["formats"].get<std::vector<std::string>>();
    }
  }

  if (j.contains("validate")) {
    const Json& v = j["validate"];
    if (v.contains("neg_inf_floor")) {
      c.validator_floor = v["neg_inf_floor"].get<double>();
    }
    if (v.contains("blowup_ceiling")) {
      c.validator_ceiling = v["blowup_ceiling"].get<double>();
    }
  }
  return c;
}

// Parses a config file, reporting the line and column of syntax errors.
inline RunConfig load_config(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError("config parse error at line " + std::to_string(line) +
                      ", column " + std::to_string(col) + ": " + e.what());
  }
  RunConfig c;
  try {
    c = config_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config field error: ") + e.what());
  }
  // Surface unknown ids and bad expressions at load time.
  DiscreteSystem sys = build_system(c.system);
  if (c.gfunction) build_gfunction(*c.gfunction, sys.dim);
  return c;
}

}  // namespace gstab
