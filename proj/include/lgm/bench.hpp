#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lgm/errors.hpp"
#include "lgm/objectives.hpp"
#include "lgm/optimizer.hpp"
#include "lgm/reconstruction.hpp"

namespace lgm {

/// Retraction tag plus axis vector, written "cay:1,1,1".
struct InitSpec {
  RetractionKind tag = RetractionKind::Cayley;
  Vec3 v = Vec3::Zero();

  Rotation rotation() const { return Retraction(tag).tau(v); }
  bool operator==(const InitSpec& o) const { return tag == o.tag && v == o.v; }
};

struct ExperimentConfig {
  std::string name = "custom";
  std::string objective = "frobenius";
  std::vector<RetractionKind> solvers{RetractionKind::Exp};
  std::vector<MethodKind> methods{MethodKind::PHB};
  int epochs = 100;
  double mu = 0.0;
  double eta = 0.1;
  InitSpec init;
  std::string out_dir = ".";

  bool operator==(const ExperimentConfig&) const = default;
};

// ---- parsing ----

inline RetractionKind parse_retraction(const std::string& s, const std::string& field) {
  if (s == "exp") return RetractionKind::Exp;
  if (s == "cay") return RetractionKind::Cayley;
  if (s == "skw") return RetractionKind::Skew;
  throw ConfigError(field, "unknown retraction '" + s + "' (expected exp, cay or skw)");
}

inline MethodKind parse_method(const std::string& s) {
  if (s == "gd") return MethodKind::GD;
  if (s == "phb") return MethodKind::PHB;
  if (s == "nag") return MethodKind::NAG;
  throw ConfigError("method", "unknown method '" + s + "' (expected gd, phb or nag)");
}

inline InitSpec parse_init(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw ConfigError("init", "expected <tag>:x,y,z");
  InitSpec out;
  out.tag = parse_retraction(s.substr(0, colon), "init");
  std::stringstream ss(s.substr(colon + 1));
  std::string item;
  int i = 0;
  while (std::getline(ss, item, ',')) {
    if (i >= 3) throw ConfigError("init", "expected exactly three components");
    try {
      std::size_t used = 0;
      out.v(i) = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("init", "component '" + item + "' is not a number");
    }
    ++i;
  }
  if (i != 3) throw ConfigError("init", "expected exactly three components");
  return out;
}

inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string format_init(const InitSpec& init) {
  return std::string(to_string(init.tag)) + ":" + format_number(init.v.x()) + "," +
         format_number(init.v.y()) + "," + format_number(init.v.z());
}

// ---- JSON ----

inline nlohmann::json to_json(const ExperimentConfig& c) {
  nlohmann::json solvers = nlohmann::json::array(), methods = nlohmann::json::array();
  for (auto s : c.solvers) solvers.push_back(std::string(to_string(s)));
  for (auto m : c.methods) methods.push_back(std::string(to_string(m)));
  return {{"name", c.name},
          {"objective", c.objective},
          {"solvers", solvers},
          {"methods", methods},
          {"epochs", c.epochs},
          {"mu", c.mu},
          {"eta", c.eta},
          {"init", {{"tag", std::string(to_string(c.init.tag))},
                    {"v", {c.init.v.x(), c.init.v.y(), c.init.v.z()}}}},
          {"out_dir", c.out_dir}};
}

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  auto field = [&](const char* key) -> const nlohmann::json& {
    if (!j.contains(key)) throw ConfigError(key, "missing");
    return j.at(key);
  };
  try {
    if (j.contains("name")) c.name = j.at("name").get<std::string>();
    c.objective = field("objective").get<std::string>();
    c.solvers.clear();
    for (const auto& s : field("solvers")) c.solvers.push_back(parse_retraction(s.get<std::string>(), "solvers"));
    c.methods.clear();
    for (const auto& m : field("methods")) c.methods.push_back(parse_method(m.get<std::string>()));
    c.epochs = field("epochs").get<int>();
    c.mu = field("mu").get<double>();
    c.eta = field("eta").get<double>();
    const auto& init = field("init");
    c.init.tag = parse_retraction(init.at("tag").get<std::string>(), "init");
    auto v = init.at("v").get<std::vector<double>>();
    if (v.size() != 3) throw ConfigError("init", "expected three components");
    c.init.v = Vec3(v[0], v[1], v[2]);
    if (j.contains("out_dir")) c.out_dir = j.at("out_dir").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config", e.what());
  }
  return c;
}

// ---- presets ----

inline const std::vector<std::string>& objective_names() {
  static const std::vector<std::string> names{"frobenius", "rosenbrock9", "rosenbrock3exp",
                                              "rosenbrock3cay"};
  return names;
}

inline std::vector<ExperimentConfig> presets() {
  const std::vector<RetractionKind> all{RetractionKind::Exp, RetractionKind::Cayley,
                                        RetractionKind::Skew};
  const std::vector<MethodKind> methods{MethodKind::GD, MethodKind::PHB, MethodKind::NAG};
  auto make = [&](std::string name, std::string obj, int epochs, InitSpec init, double mu,
                  double eta) {
    ExperimentConfig c;
    c.name = std::move(name);
    c.objective = std::move(obj);
    c.solvers = all;
    c.methods = methods;
    c.epochs = epochs;
    c.init = init;
    c.mu = mu;
    c.eta = eta;
    return c;
  };
  const InitSpec cay111{RetractionKind::Cayley, Vec3(1, 1, 1)};
  const InitSpec cay01{RetractionKind::Cayley, Vec3(0.1, 0.1, 0.1)};
  return {
      make("frobenius1", "frobenius", 100, cay111, 0.7, 0.1),
      make("frobenius2", "frobenius", 250, cay111, 0.7, 0.01),
      make("rosenbrock91", "rosenbrock9", 100, cay01, 0.25, 0.0001),
      make("rosenbrock92", "rosenbrock9", 100, cay01, 0.7, 0.0001),
      make("rosenbrock3exp", "rosenbrock3exp", 1000, {RetractionKind::Exp, Vec3(0, 0, 1)}, 0.99, 0.0001),
      make("rosenbrock3cay", "rosenbrock3cay", 1000, {RetractionKind::Cayley, Vec3(0, 0, 1)}, 0.99, 0.0001),
  };
}

inline ExperimentConfig preset(const std::string& name) {
  for (auto& c : presets())
    if (c.name == name) return c;
  throw ConfigError("preset", "unknown preset '" + name + "'");
}

inline std::unique_ptr<Objective<SO3Group>> make_objective(const std::string& name) {
  if (name == "frobenius") return std::make_unique<FrobeniusObjective>();
  if (name == "rosenbrock9") return std::make_unique<RestrictedRosenbrock>();
  if (name == "rosenbrock3exp") return std::make_unique<RetractedRosenbrock>(RetractionKind::Exp);
  if (name == "rosenbrock3cay") return std::make_unique<RetractedRosenbrock>(RetractionKind::Cayley);
  throw ConfigError("objective", "unknown objective '" + name + "'");
}

inline void validate(const ExperimentConfig& c) {
  if (c.epochs < 1) throw ConfigError("epochs", "must be at least 1");
  if (!(c.eta > 0.0) || !std::isfinite(c.eta)) throw ConfigError("eta", "must be positive and finite");
  if (!(c.mu >= 0.0) || !std::isfinite(c.mu)) throw ConfigError("mu", "must be non-negative and finite");
  if (c.solvers.empty()) throw ConfigError("solver", "at least one solver is required");
  if (c.methods.empty()) throw ConfigError("method", "at least one method is required");
  if (!c.init.v.allFinite()) throw ConfigError("init", "components must be finite");
  if (c.init.tag == RetractionKind::Skew && !(c.init.v.squaredNorm() < 1.0))
    throw ConfigError("init", "skw initial vector must have norm below 1");
  auto obj = make_objective(c.objective);
  try {
    obj->value(c.init.rotation());
  } catch (const Error& e) {
    throw ConfigError("init", std::string("outside the objective's domain: ") + e.what());
  }
}

// ---- reference curve ----

/// residue0 / k² for k = 1 … epochs.
inline std::vector<double> reference_curve(double residue0, int epochs) {
  if (!(residue0 > 0.0)) throw DomainError("reference curve needs a positive initial residue");
  std::vector<double> out(std::max(epochs, 0));
  for (int k = 1; k <= epochs; ++k) out[k - 1] = residue0 / (static_cast<double>(k) * k);
  return out;
}

// ---- artifacts ----

struct SolverResult {
  RetractionKind solver;
  /// Residues indexed by epoch for gd, phb, nag; empty when the method was not run.
  std::array<std::vector<double>, 3> residues;
  std::vector<double> reference;  ///< epochs 1 … N; empty when disabled
  std::string csv;
  std::string svg;

  const std::vector<double>& of(MethodKind m) const { return residues[static_cast<int>(m)]; }
};

struct RunArtifact {
  ExperimentConfig config;
  std::vector<SolverResult> results;
  double wall_ms = 0.0;
  nlohmann::json metadata;
};

inline std::string render_csv(const SolverResult& r, int epochs) {
  std::string out = "epoch,gd,phb,nag,ref\n";
  for (int k = 0; k <= epochs; ++k) {
    out += std::to_string(k);
    for (const auto& col : r.residues) {
      out += ',';
      if (!col.empty()) out += format_number(col[k]);
    }
    out += ',';
    if (k >= 1 && !r.reference.empty()) out += format_number(r.reference[k - 1]);
    out += '\n';
  }
  return out;
}

inline std::string render_svg(const SolverResult& r, int epochs, const std::string& title) {
  constexpr double kFloor = 1e-16;
  constexpr double width = 800, height = 500, left = 70, right = 20, top = 40, bottom = 50;
  auto lg = [&](double v) { return std::log10(std::max(v, kFloor)); };

  double lo = 0.0, hi = 0.0;
  bool any = false;
  auto widen = [&](double v) {
    double l = lg(v);
    if (!any) lo = hi = l, any = true;
    lo = std::min(lo, l);
    hi = std::max(hi, l);
  };
  for (const auto& col : r.residues)
    for (double v : col) widen(v);
  for (double v : r.reference) widen(v);
  lo = std::floor(lo);
  hi = std::ceil(hi);
  if (hi <= lo) hi = lo + 1.0;

  const double xmax = std::max(epochs, 1);
  auto px = [&](double k) { return left + (width - left - right) * k / xmax; };
  auto py = [&](double v) { return top + (height - top - bottom) * (hi - lg(v)) / (hi - lo); };
  auto coord = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };
  auto polyline = [&](const std::vector<double>& ys, int first_k, const char* colour,
                      const char* label) {
    std::string pts;
    for (std::size_t i = 0; i < ys.size(); ++i) {
      if (!pts.empty()) pts += ' ';
      pts += coord(px(first_k + static_cast<double>(i))) + "," + coord(py(ys[i]));
    }
    return std::string("  <polyline class=\"") + label + "\" fill=\"none\" stroke=\"" + colour +
           "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
  };

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + coord(width) +
       "\" height=\"" + coord(height) + "\">\n";
  s += "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "  <text x=\"" + coord(width / 2) + "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
       title + "</text>\n";
  s += "  <line x1=\"" + coord(left) + "\" y1=\"" + coord(height - bottom) + "\" x2=\"" +
       coord(width - right) + "\" y2=\"" + coord(height - bottom) + "\" stroke=\"black\"/>\n";
  s += "  <line x1=\"" + coord(left) + "\" y1=\"" + coord(top) + "\" x2=\"" + coord(left) +
       "\" y2=\"" + coord(height - bottom) + "\" stroke=\"black\"/>\n";
  int step = std::max(1, static_cast<int>(std::ceil((hi - lo) / 10.0)));
  for (int e = static_cast<int>(lo); e <= static_cast<int>(hi); e += step) {
    double y = py(std::pow(10.0, e));
    s += "  <text x=\"" + coord(left - 6) + "\" y=\"" + coord(y + 4) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">1e" +
         std::to_string(e) + "</text>\n";
  }
  s += "  <text x=\"" + coord(left) + "\" y=\"" + coord(height - bottom + 18) +
       "\" font-family=\"sans-serif\" font-size=\"11\">0</text>\n";
  s += "  <text x=\"" + coord(width - right) + "\" y=\"" + coord(height - bottom + 18) +
       "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
       std::to_string(epochs) + "</text>\n";
  s += "  <text x=\"" + coord(width / 2) + "\" y=\"" + coord(height - 12) +
       "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">epoch</text>\n";

  const char* colours[3] = {"#1f77b4", "#2ca02c", "#9467bd"};
  const char* labels[3] = {"gd", "phb", "nag"};
  double ly = top + 10;
  for (int m = 0; m < 3; ++m) {
    if (r.residues[m].empty()) continue;
    s += polyline(r.residues[m], 0, colours[m], labels[m]);
    s += "  <text x=\"" + coord(width - right - 60) + "\" y=\"" + coord(ly) + "\" fill=\"" +
         colours[m] + "\" font-family=\"sans-serif\" font-size=\"12\">" + labels[m] + "</text>\n";
    ly += 16;
  }
  if (!r.reference.empty()) {
    s += polyline(r.reference, 1, "red", "ref");
    s += "  <text x=\"" + coord(width - right - 60) + "\" y=\"" + coord(ly) +
         "\" fill=\"red\" font-family=\"sans-serif\" font-size=\"12\">1/k^2</text>\n";
  }
  s += "</svg>\n";
  return s;
}

inline std::vector<double> residues_of(const Trajectory<SO3Group>& t) {
  std::vector<double> out;
  out.reserve(t.size());
  for (const auto& p : t) out.push_back(p.residue);
  return out;
}

/// Runs every (solver, method) pair of a validated config.
inline RunArtifact run_config(const ExperimentConfig& config) {
  validate(config);
  auto start = std::chrono::steady_clock::now();
  auto obj = make_objective(config.objective);
  const Rotation g0 = config.init.rotation();
  const Strategy strategy = Strategy::constant(config.mu, config.eta);

  RunArtifact art;
  art.config = config;
  nlohmann::json finals = nlohmann::json::object();
  for (RetractionKind kind : config.solvers) {
    ExplicitSolver solver(kind);
    SO3Group group = solver.group();
    SolverResult res{kind, {}, {}, {}, {}};
    nlohmann::json solver_finals = nlohmann::json::object();
    for (MethodKind m : config.methods) {
      auto traj = run_method(m, group, *obj, solver, g0, strategy, config.epochs);
      res.residues[static_cast<int>(m)] = residues_of(traj);
      solver_finals[std::string(to_string(m))] = traj.back().residue;
    }
    double residue0 = obj->value(g0) - obj->minimum().value_or(0.0);
    if (residue0 > 0.0) res.reference = reference_curve(residue0, config.epochs);
    res.csv = render_csv(res, config.epochs);
    res.svg = render_svg(res, config.epochs, config.name + " (" + std::string(to_string(kind)) + ")");
    finals[std::string(to_string(kind))] = solver_finals;
    art.results.push_back(std::move(res));
  }
  art.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  art.metadata = {{"config", to_json(config)}, {"final_residues", finals}, {"wall_ms", art.wall_ms}};
  return art;
}

inline RunArtifact run_preset(const std::string& name) { return run_config(preset(name)); }
inline RunArtifact run_custom(const ExperimentConfig& config) { return run_config(config); }

/// Writes <name>_<solver>.csv/.svg per solver and <name>.json into dir.
inline std::vector<std::filesystem::path> write_artifact(const RunArtifact& art,
                                                         const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  auto put = [&](const std::filesystem::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw Error("cannot write " + p.string());
    f << text;
    written.push_back(p);
  };
  for (const auto& r : art.results) {
    std::string base = art.config.name + "_" + std::string(to_string(r.solver));
    put(dir / (base + ".csv"), r.csv);
    put(dir / (base + ".svg"), r.svg);
  }
  put(dir / (art.config.name + ".json"), art.metadata.dump(2) + "\n");
  return written;
}

}  // namespace lgm
