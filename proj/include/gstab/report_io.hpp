#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "gstab/checker.hpp"
#include "gstab/errors.hpp"
#include "gstab/extended_real.hpp"
#include "gstab/sampling.hpp"
#include "gstab/system.hpp"
#include "gstab/validate.hpp"

namespace gstab {

using Json = nlohmann::ordered_json;

// Extended reals travel as JSON numbers, with "-inf" for the bottom element
// (JSON has no infinities).
inline Json xr_to_json(const ExtendedReal& x) {
  if (x.is_neg_inf()) return Json("-inf");
  return Json(x.value());
}

inline ExtendedReal xr_from_json(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "-inf") return ExtendedReal::neg_inf();
    throw ConfigError("expected a number or \"-inf\"");
  }
  return ExtendedReal::finite(j.get<double>());
}

inline Json box_to_json(const BoxRegion& b) {
  return Json{{"lower", b.lower}, {"upper", b.upper}};
}

inline BoxRegion box_from_json(const Json& j) {
  BoxRegion b;
  b.lower = j.at("lower").get<std::vector<double>>();
  b.upper = j.at("upper").get<std::vector<double>>();
  if (b.lower.empty() || b.lower.size() != b.upper.size()) {
    throw ConfigError("box bounds must be nonempty and of equal length");
  }
  return b;
}

inline Json plan_to_json(const SamplingPlan& p) {
  Json j{{"grid_points_per_dim", p.grid_points_per_dim},
         {"random_count", p.random_count},
         {"seed", p.seed},
         {"exclusion_radius", p.exclusion_radius},
         {"shell_min_radius", p.shell_min_radius},
         {"shells_per_decade", p.shells_per_decade},
         {"extra_directions", p.extra_directions},
         {"boundary_layers", p.boundary_layers}};
  if (p.window) j["window"] = box_to_json(*p.window);
  return j;
}

inline SamplingPlan plan_from_json(const Json& j) {
  SamplingPlan p;
  if (j.contains("grid_points_per_dim")) {
    p.grid_points_per_dim = j["grid_points_per_dim"].get<int>();
  }
  if (j.contains("random_count")) {
    p.random_count = j["random_count"].get<int>();
  }
  if (j.contains("seed")) p.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("exclusion_radius")) {
    p.exclusion_radius = j["exclusion_radius"].get<double>();
  }
  if (j.contains("shell_min_radius")) {
    p.shell_min_radius = j["shell_min_radius"].get<double>();
  }
  if (j.contains("shells_per_decade")) {
    p.shells_per_decade = j["shells_per_decade"].get<int>();
  }
  if (j.contains("extra_directions")) {
    p.extra_directions = j["extra_directions"].get<int>();
  }
  if (j.contains("boundary_layers")) {
    p.boundary_layers = j["boundary_layers"].get<std::vector<double>>();
  }
  if (j.contains("window") && !j["window"].is_null()) {
    p.window = box_from_json(j["window"]);
  }
  return p;
}

inline Json report_to_json(const CheckReport& r) {
  Json j;
  j["kind"] = r.kind;
  j["verdict"] = r.passed() ? "pass_on_samples" : "violated";
  j["samples_tested"] = r.samples_tested;
  j["violation_count"] = r.violation_count;
  Json vs = Json::array();
  for (const auto& v : r.violations) {
    Json e;
    e["x"] = v.x.coords();
    e["delta_g"] = v.delta ? xr_to_json(*v.delta) : Json(nullptr);
    e["note"] = v.note;
    vs.push_back(std::move(e));
  }
  j["violations"] = std::move(vs);
  j["margin_min"] = r.margin_min ? xr_to_json(*r.margin_min) : Json(nullptr);
  j["margin_max"] = r.margin_max ? xr_to_json(*r.margin_max) : Json(nullptr);
  j["level"] = r.level ? xr_to_json(*r.level) : Json(nullptr);
  j["escaped_count"] = r.escaped_count;
  j["escaped_unclassified"] = r.escaped_unclassified;
  j["plan"] = plan_to_json(r.plan);
  return j;
}

inline CheckReport report_from_json(const Json& j) {
  CheckReport r;
  r.kind = j.at("kind").get<std::string>();
  r.verdict = j.at("verdict").get<std::string>() == "pass_on_samples"
                  ? CheckReport::Verdict::PassOnSamples
                  : CheckReport::Verdict::Violated;
  r.samples_tested = j.at("samples_tested").get<std::size_t>();
  r.violation_count = j.at("violation_count").get<std::size_t>();
  for (const auto& e : j.at("violations")) {
    Violation v{StateVector(e.at("x").get<std::vector<double>>()),
                std::nullopt, e.at("note").get<std::string>()};
    if (!e.at("delta_g").is_null()) v.delta = xr_from_json(e.at("delta_g"));
    r.violations.push_back(std::move(v));
  }
  if (!j.at("margin_min").is_null()) {
    r.margin_min = xr_from_json(j["margin_min"]);
  }
  if (!j.at("margin_max").is_null()) {
    r.margin_max = xr_from_json(j["margin_max"]);
  }
  if (!j.at("level").is_null()) r.level = xr_from_json(j["level"]);
  r.escaped_count = j.at("escaped_count").get<std::size_t>();
  r.escaped_unclassified = j.at("escaped_unclassified").get<std::size_t>();
  r.plan = plan_from_json(j.at("plan"));
  return r;
}

inline Json global_report_to_json(const GlobalCheckReport& g) {
  Json j = report_to_json(g.merged);
  Json ws = Json::array();
  for (const auto& w : g.windows) ws.push_back(box_to_json(w));
  j["windows"] = std::move(ws);
  Json per = Json::array();
  for (const auto& r : g.per_window) per.push_back(report_to_json(r));
  j["per_window"] = std::move(per);
  return j;
}

inline Json classk_to_json(const ClassKFit& f) {
  Json knots = Json::array();
  for (const auto& [r, phi] : f.knots) knots.push_back(Json::array({r, phi}));
  Json bins = Json::array();
  for (double v : f.bin_inf) {
    bins.push_back(std::isfinite(v) ? Json(v) : Json("inf"));
  }
  return Json{{"valid", f.valid},
              {"knots", std::move(knots)},
              {"bin_edges", f.bin_edges},
              {"bin_inf", std::move(bins)}};
}

inline Json validation_to_json(const ValidationReport& r) {
  auto cond = [](const ConditionResult& c) {
    Json j{{"status", c.passed ? "pass_on_samples" : "violated"},
           {"samples", c.samples}};
    if (c.witness) j["witness"] = c.witness->coords();
    if (!c.detail.empty()) j["detail"] = c.detail;
    return j;
  };
  return Json{{"overall", r.overall},
              {"min_at_origin", cond(r.min_at_origin)},
              {"no_blowup", cond(r.no_blowup)},
              {"closure_levels", cond(r.closure_levels)},
              {"boundary_levels", cond(r.boundary_levels)}};
}

inline Json level_search_to_json(const LevelSearchReport& r) {
  Json probes = Json::array();
  for (const auto& p : r.probes) {
    const char* o = p.outcome == LevelProbe::Outcome::Feasible ? "feasible"
                    : p.outcome == LevelProbe::Outcome::Violated
                        ? "violated"
                        : "too_small";
    probes.push_back(Json{{"zeta", p.zeta}, {"outcome", o}, {"note", p.note}});
  }
  Json j;
  j["lambda"] = r.best ? Json(*r.best) : Json(nullptr);
  j["bracket"] = Json::array({r.bracket_lo, r.bracket_hi});
  j["iterations"] = r.iterations;
  j["non_monotonic"] = r.non_monotonic;
  j["connectedness_checked"] = r.connectedness_checked;
  j["probes"] = std::move(probes);
  j["plan"] = plan_to_json(r.plan);
  return j;
}

// ---------------------------------------------------------------------------
// CSV.

namespace detail {

inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

inline std::string classification_to_string(const Classification& c) {
  if (const auto* cv = std::get_if<Converged>(&c)) {
    return "converged steps=" + std::to_string(cv->steps);
  }
  if (const auto* dv = std::get_if<Diverged>(&c)) {
    return "diverged exit_step=" + std::to_string(dv->exit_step);
  }
  return "inconclusive";
}

// Columns k, x_1..x_n, g; g is empty when not recorded and "-inf" at the
// bottom element. The classification rides along as a trailing comment.
inline std::string trajectory_to_csv(const TrajectoryRecord& rec) {
  std::ostringstream out;
  const int dim = rec.x0.dim();
  out << "k";
  for (int i = 1; i <= dim; ++i) out << ",x_" << i;
  out << ",g\n";
  const bool has_g = rec.g_values.size() == rec.states.size();
  for (std::size_t k = 0; k < rec.states.size(); ++k) {
    out << k;
    for (int i = 0; i < dim; ++i) {
      out << ',' << detail::fmt_double(rec.states[k][static_cast<std::size_t>(i)]);
    }
    out << ',';
    if (has_g) out << xr_to_string(rec.g_values[k]);
    out << '\n';
  }
  out << "# classification=" << classification_to_string(rec.classification)
      << '\n';
  return out.str();
}

inline TrajectoryRecord trajectory_from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty trajectory CSV");
  TrajectoryRecord rec;
  std::string cls;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto pos = line.find("classification=");
      if (pos != std::string::npos) cls = line.substr(pos + 15);
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    // getline drops a trailing empty field; restore it
    if (!line.empty() && line.back() == ',') cells.push_back("");
    if (cells.size() < 2) throw ConfigError("malformed trajectory row");
    std::vector<double> coords;
    for (std::size_t i = 1; i + 1 < cells.size(); ++i) {
      coords.push_back(std::stod(cells[i]));
    }
    StateVector x(coords);
    if (first) {
      rec.x0 = x;
      first = false;
    }
    rec.states.push_back(x);
    const std::string& gcell = cells.back();
    if (!gcell.empty()) {
      rec.g_values.push_back(gcell == "-inf"
                                 ? ExtendedReal::neg_inf()
                                 : ExtendedReal::finite(std::stod(gcell)));
    }
  }
  if (rec.states.empty()) throw ConfigError("trajectory CSV has no rows");
  if (cls.rfind("converged", 0) == 0) {
    rec.classification = Converged{std::stol(cls.substr(cls.find('=') + 1))};
  } else if (cls.rfind("diverged", 0) == 0) {
    rec.classification = Diverged{std::stol(cls.substr(cls.find('=') + 1))};
  } else {
    rec.classification = Inconclusive{};
  }
  return rec;
}

inline std::string witnesses_to_csv(const CheckReport& rep, int dim) {
  std::ostringstream out;
  for (int i = 1; i <= dim; ++i) out << "x_" << i << ',';
  out << "delta_g\n";
  for (const auto& v : rep.violations) {
    for (int i = 0; i < dim; ++i) {
      out << detail::fmt_double(v.x[static_cast<std::size_t>(i)]) << ',';
    }
    out << (v.delta ? xr_to_string(*v.delta) : "") << '\n';
  }
  return out.str();
}

inline std::vector<Violation> witnesses_from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty witness CSV");
  std::vector<Violation> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    if (cells.size() < 2) throw ConfigError("malformed witness row");
    std::vector<double> coords;
    for (std::size_t i = 0; i + 1 < cells.size(); ++i) {
      coords.push_back(std::stod(cells[i]));
    }
    Violation v{StateVector(coords), std::nullopt, ""};
    if (!cells.back().empty()) {
      v.delta = cells.back() == "-inf"
                    ? ExtendedReal::neg_inf()
                    : ExtendedReal::finite(std::stod(cells.back()));
    }
    out.push_back(std::move(v));
  }
  return out;
}

// Write-temp-then-rename so readers never observe a partial file.
inline void atomic_write_file(const std::filesystem::path& path,
                              const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot open " + tmp.string() + " for write");
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace gstab
