#pragma once

// Command-line front end: modulus, energy, verify, dilatation, invert, eval.
// Exit status 0 on success, 1 on a failed verification or numerical error,
// 2 on a usage error.

#include "bicon/continuity.hpp"
#include "bicon/deformations.hpp"
#include "bicon/energy.hpp"
#include "bicon/geometry.hpp"
#include "bicon/modulus.hpp"
#include "bicon/parse.hpp"
#include "bicon/report.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace bicon::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

enum class OutputFormat { json, csv };

struct RunConfig {
  std::string command;
  std::string suite; ///< verify only
  std::string map_spec;
  std::string phi_spec;
  std::string center = "0";
  std::string radii = "log:1e-6..1";
  std::string norm; ///< empty: the map's natural norm
  std::string method = "quad";
  std::string values;
  std::string points_path;
  std::vector<std::string> at;
  double tol = 1e-4;          ///< energy quadrature
  double inverse_tol = 1e-12; ///< invert bisection
  double threshold = 1e3;
  double samples = 1e6;
  int count = 4096;
  int grid = 2048;
  int pairs = 100000;
  std::uint64_t seed = 1;
  OutputFormat output = OutputFormat::json;
  std::string output_path;
};

/// Output of one run: a JSON document and the equivalent CSV table.
struct Artifact {
  nlohmann::json body;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  int status = kExitOk;
};

namespace detail {

inline std::string csv_cell(const nlohmann::json &v) {
  if (v.is_string())
    return v.get<std::string>();
  if (v.is_number_float())
    return format_double(v.get<double>());
  return v.dump();
}

inline std::string cell(double v) {
  return std::isfinite(v) ? format_double(v) : csv_cell(json_number(v));
}

inline Deformation deformation_of(const MapSpec &m, double tol = 1e-12);
inline NormKind norm_of(const RunConfig &c, const Deformation &d);
inline const char *norm_name(NormKind k);

// The resolved configuration, defaults included. Also validates every spec.
inline nlohmann::json config_json(const RunConfig &c) {
  nlohmann::json j;
  const auto &cmd = c.command;
  std::optional<MapSpec> map;
  if (!c.map_spec.empty()) {
    map = parse_map(c.map_spec);
    j["map"] = describe(*map);
  }
  if (!c.phi_spec.empty())
    j["phi"] = parse_family(c.phi_spec).describe();
  auto sampling = [&] {
    j["center"] = c.center;
    j["radii"] = c.radii;
    j["radii_points"] = parse_radii(c.radii).size();
    j["count"] = c.count;
    j["seed"] = c.seed;
    if (map)
      j["norm"] = norm_name(norm_of(c, deformation_of(*map)));
  };
  if (cmd == "modulus" || cmd == "dilatation") {
    sampling();
    if (cmd == "dilatation")
      j["threshold"] = c.threshold;
  } else if (cmd == "energy") {
    j["method"] = c.method;
    if (c.method == "quad") {
      j["tol"] = c.tol;
    } else {
      j["samples"] = static_cast<long long>(c.samples);
      j["seed"] = c.seed;
    }
  } else if (cmd == "verify") {
    j["suite"] = c.suite;
    if (c.suite == "conditions") {
      j["grid"] = c.grid;
    } else if (c.suite == "quasi-inverse") {
      sampling();
      j["threshold"] = c.threshold;
    } else {
      j["pairs"] = c.pairs;
      j["seed"] = c.seed;
      if (c.suite == "main-theorem") {
        j["radii"] = c.radii;
        j["radii_points"] = parse_radii(c.radii).size();
        j["count"] = c.count;
      }
    }
  } else if (cmd == "eval" || cmd == "invert") {
    if (!c.values.empty())
      j["values"] = c.values;
    if (!c.points_path.empty())
      j["points"] = c.points_path;
    if (!c.at.empty())
      j["at"] = c.at;
    if (cmd == "invert")
      j["tol"] = c.inverse_tol;
  }
  j["output"] = c.output == OutputFormat::json ? "json" : "csv";
  return j;
}

inline void report_rows(const VerificationReport &r, Artifact &a) {
  a.header = {"condition", "pass", "measured_constant", "grid_size", "tolerance", "detail"};
  for (const auto &c : r.checks)
    a.rows.push_back({c.condition, c.pass ? "true" : "false", cell(c.measured_constant),
                      std::to_string(c.grid_size), cell(c.tolerance), c.detail});
}

inline nlohmann::json to_json(const EnergyResult &e) {
  nlohmann::json j{{"value", json_number(e.value)},
                   {"method", to_string(e.method)},
                   {"samples_or_nodes", e.samples_or_nodes},
                   {"error_estimate", json_number(e.error_estimate)},
                   {"converged", e.converged},
                   {"detail", e.detail}};
  if (e.seed)
    j["seed"] = *e.seed;
  return j;
}

inline Deformation deformation_of(const MapSpec &m, double tol) {
  return std::visit(
      [&](const auto &v) -> Deformation {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, IdentityMap>)
          return identity_deformation(v.n);
        else
          return make_deformation(v, tol);
      },
      m);
}

inline NormKind norm_of(const RunConfig &c, const Deformation &d) {
  if (c.norm.empty())
    return d.natural_norm;
  if (c.norm == "cone")
    return NormKind::cone;
  if (c.norm == "euclid")
    return NormKind::euclid;
  throw UsageError("--norm must be cone or euclid, got '" + c.norm + "'");
}

inline const char *norm_name(NormKind k) { return k == NormKind::cone ? "cone" : "euclid"; }

inline MapSpec require_map(const RunConfig &c) {
  if (c.map_spec.empty())
    throw UsageError("--map is required for " + c.command);
  return parse_map(c.map_spec);
}

inline ModulusFunction require_phi(const RunConfig &c) {
  if (c.phi_spec.empty())
    throw UsageError("--phi is required for " + c.command + " " + c.suite);
  return parse_family(c.phi_spec);
}

inline std::vector<ConePoint> read_points(const RunConfig &c, int n) {
  std::vector<std::string> lines = c.at;
  if (!c.points_path.empty()) {
    std::ifstream file;
    std::istream *in = &std::cin;
    if (c.points_path != "-") {
      file.open(c.points_path);
      if (!file)
        throw UsageError("cannot read --points file '" + c.points_path + "'");
      in = &file;
    }
    std::string line;
    while (std::getline(*in, line)) {
      if (!line.empty() && line.back() == '\r')
        line.pop_back();
      if (line.empty() || line[0] == '#')
        continue;
      lines.push_back(line);
    }
  }
  if (lines.empty())
    throw UsageError("no points given (use --points or --at)");
  std::vector<ConePoint> pts;
  for (const auto &l : lines)
    pts.push_back(parse_center(l, n));
  return pts;
}

inline std::vector<double> read_values(const RunConfig &c) {
  std::vector<double> out;
  for (const auto &item : bicon::detail::split(c.values, ','))
    out.push_back(bicon::detail::parse_real(item, "--values"));
  return out;
}

inline std::vector<std::string> coordinate_names(const std::string &prefix, int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n - 1; ++i)
    names.push_back(prefix + "x" + std::to_string(i + 1));
  names.push_back(prefix + "t");
  return names;
}

inline void append_point(std::vector<std::string> &row, const ConePoint &X) {
  for (Eigen::Index i = 0; i < X.x.size(); ++i)
    row.push_back(cell(X.x(i)));
  row.push_back(cell(X.t));
}

inline nlohmann::json point_json(const ConePoint &X) {
  nlohmann::json j = nlohmann::json::array();
  for (Eigen::Index i = 0; i < X.x.size(); ++i)
    j.push_back(json_number(X.x(i)));
  j.push_back(json_number(X.t));
  return j;
}

// ---------------------------------------------------------------------------

inline Artifact run_modulus(const RunConfig &c) {
  const auto map = require_map(c);
  const auto f = deformation_of(map);
  const auto center = parse_center(c.center, f.n);
  const NormKind nk = norm_of(c, f);
  const auto est = estimate_modulus(f, center, parse_radii(c.radii), nk, c.count, c.seed);
  Artifact a;
  a.header = {"radius", "value"};
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < est.radii.size(); ++i) {
    a.rows.push_back({cell(est.radii[i]), cell(est.values[i])});
    rows.push_back({{"radius", est.radii[i]}, {"value", json_number(est.values[i])}});
  }
  a.body = {{"center", point_json(center)},
            {"norm_used", norm_name(nk)},
            {"samples_per_radius", est.samples_per_radius},
            {"seed", est.seed},
            {"values", rows}};
  return a;
}

inline Artifact run_dilatation(const RunConfig &c) {
  const auto map = require_map(c);
  const auto f = deformation_of(map);
  const auto center = parse_center(c.center, f.n);
  const NormKind nk = norm_of(c, f);
  const auto d =
      linear_dilatation(f, center, parse_radii(c.radii), c.count, c.seed, c.threshold, nk);
  Artifact a;
  a.header = {"radius", "ratio"};
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < d.radii.size(); ++i) {
    a.rows.push_back({cell(d.radii[i]), cell(d.ratios[i])});
    rows.push_back({{"radius", d.radii[i]}, {"ratio", json_number(d.ratios[i])}});
  }
  a.body = {{"center", point_json(center)},
            {"norm_used", norm_name(nk)},
            {"verdict", to_string(d.verdict)},
            {"ratios", rows}};
  return a;
}

inline Artifact run_energy(const RunConfig &c) {
  if (c.method != "quad" && c.method != "mc")
    throw UsageError("--method must be quad or mc, got '" + c.method + "'");
  if (!(c.tol > 0.0))
    throw UsageError("--tol must be > 0");
  Artifact a;
  a.header = {"quantity", "value", "method", "samples_or_nodes", "error_estimate", "converged"};
  auto add = [&](const std::string &name, const EnergyResult &e) {
    a.body[name] = to_json(e);
    a.rows.push_back({name, cell(e.value), to_string(e.method), std::to_string(e.samples_or_nodes),
                      cell(e.error_estimate), e.converged ? "true" : "false"});
    if (!e.converged)
      a.status = kExitFailure;
  };
  a.body = nlohmann::json::object();

  if (!c.phi_spec.empty() && c.map_spec.empty()) {
    const auto phi = require_phi(c);
    const auto q = energy_functional(phi, phi.dimension(), c.tol);
    EnergyResult e;
    e.value = q.value;
    e.error_estimate = q.error_estimate;
    e.samples_or_nodes = q.nodes;
    e.converged = q.converged;
    e.detail = q.detail;
    add("phi_energy", e);
    return a;
  }
  const auto map = require_map(c);
  if (const auto *m = std::get_if<ConeMap>(&map)) {
    if (c.method == "quad") {
      add("energy_H", conformal_energy_H(*m, c.tol));
      add("inner_distortion", inner_distortion_integral(*m, c.tol));
    } else {
      if (!(c.samples >= 1000.0) || c.samples > 2e9)
        throw UsageError("--samples must lie in [1e3, 2e9]");
      add("energy_F", energy_F_monte_carlo(*m, static_cast<long long>(c.samples), c.seed));
    }
    return a;
  }
  if (const auto *g = std::get_if<GluedMap>(&map)) {
    if (c.method != "quad")
      throw UsageError("glued maps support --method quad only");
    const auto b = biconformal_energy(*g, c.tol);
    add("biconformal", b.total);
    add("upper_energy_H", b.upper_H);
    add("upper_inner_distortion", b.upper_K);
    a.body["energy_H"] = json_number(b.energy_H);
    a.body["energy_F"] = json_number(b.energy_F);
    return a;
  }
  throw UsageError("energy needs a cone: or glued: map, or --phi");
}

inline VerificationReport averaging_suite(const ModulusFunction &phi, int pairs,
                                          std::uint64_t seed) {
  VerificationReport rep;
  rep.suite = "averaging-lemma";
  const double r = phi.concavity_radius();
  const int n = phi.dimension();
  const auto L = derivative_lemma_function(phi);
  std::mt19937_64 rng(seed);
  auto random_vector = [&] {
    Eigen::VectorXd v(n);
    std::vector<double> c(static_cast<std::size_t>(n));
    for (auto &x : c)
      x = uniform01(rng);
    v = bicon::detail::unit_direction(n, c.data());
    return (r * (0.05 + 0.95 * uniform01(rng))) * v;
  };
  double worst = 0.0;
  int failures = 0;
  for (int i = 0; i < pairs; ++i) {
    const Eigen::VectorXd a = random_vector();
    const Eigen::VectorXd b = random_vector();
    const auto sub = averaging_lemma_check(L, a, b);
    const auto *ineq = sub.find("inequality");
    worst = std::max(worst, ineq->measured_constant);
    failures += sub.all_pass() ? 0 : 1;
  }
  rep.add({"inequality", failures == 0, worst, pairs, 1e-8, seed,
           "max lhs/rhs over random pairs with |a|, |b| <= r"});
  double eq = 0.0;
  bool eq_pass = true;
  for (int i = 0; i < std::max(1, pairs / 10); ++i) {
    const Eigen::VectorXd a = random_vector();
    const auto sub = averaging_lemma_check(L, a, -a);
    eq = std::max(eq, sub.find("equality")->measured_constant);
    eq_pass = eq_pass && sub.all_pass();
  }
  rep.add({"equality", eq_pass, eq, std::max(1, pairs / 10), 1e-8, seed,
           "max |lhs - rhs| for a = -b"});
  return rep;
}

inline Artifact run_verify(const RunConfig &c) {
  VerificationReport rep;
  if (c.suite == "quasi-inverse") {
    const auto map = require_map(c);
    const auto h = deformation_of(map);
    const auto center = parse_center(c.center, h.n);
    const NormKind nk = norm_of(c, h);
    const auto q = quasi_inverse_check(h, inverse_of(h), center, parse_radii(c.radii), c.count,
                                       c.seed, nk);
    rep.suite = "quasi-inverse";
    for (std::size_t i = 0; i < q.radii.size(); ++i) {
      const double k = std::max({q.hf[i], 1.0 / q.hf[i], q.fh[i], 1.0 / q.fh[i]});
      rep.add({"ratio_at_" + format_double(q.radii[i]), k <= c.threshold, k, c.count, c.threshold,
               c.seed, "hf=" + format_double(q.hf[i]) + " fh=" + format_double(q.fh[i])});
    }
    rep.add({"quasi_inverse_K", q.K <= c.threshold, q.K, static_cast<long long>(q.radii.size()),
             c.threshold, c.seed, "smallest K with both ratios in [1/K, K]"});
  } else {
    const auto phi = require_phi(c);
    if (c.pairs < 1)
      throw UsageError("--pairs must be >= 1");
    if (c.suite == "conditions") {
      if (c.grid < 16)
        throw UsageError("--grid must be >= 16");
      rep = check_conditions(phi, c.grid);
    } else if (c.suite == "main-theorem") {
      rep = verify_main_theorem(GluedMap(ConeMap(phi)), parse_radii(c.radii), c.count, c.seed,
                                c.pairs);
    } else if (c.suite == "global-modulus-h") {
      rep = verify_global_modulus_H(ConeMap(phi), c.pairs, c.seed);
    } else if (c.suite == "global-modulus-f") {
      rep = verify_global_modulus_F(ConeMap(phi), c.pairs, c.seed);
    } else if (c.suite == "averaging-lemma") {
      rep = averaging_suite(phi, c.pairs, c.seed);
    } else {
      throw UsageError("unknown verify suite '" + c.suite + "'");
    }
  }
  Artifact a;
  a.body = bicon::to_json(rep);
  a.body.erase("schema_version");
  report_rows(rep, a);
  a.status = rep.all_pass() ? kExitOk : kExitFailure;
  return a;
}

inline Artifact run_eval_or_invert(const RunConfig &c, bool inverse) {
  Artifact a;
  if (!c.phi_spec.empty() && c.map_spec.empty()) {
    const auto phi = require_phi(c);
    if (c.values.empty())
      throw UsageError("--values is required with --phi");
    nlohmann::json rows = nlohmann::json::array();
    if (inverse) {
      a.header = {"v", "psi"};
      for (double v : read_values(c)) {
        if (!(v >= 0.0))
          throw UsageError("--values must be >= 0");
        const double p = invert(phi, v, c.inverse_tol);
        a.rows.push_back({cell(v), cell(p)});
        rows.push_back({{"v", v}, {"psi", p}});
      }
    } else {
      a.header = {"s", "phi", "derivative", "lambda", "elasticity"};
      for (double s : read_values(c)) {
        if (!(s > 0.0))
          throw UsageError("--values must be > 0");
        const double f = phi(s);
        const double d = derivative(phi, s);
        const double l = lambda(phi, s);
        const double e = elasticity(phi, s);
        a.rows.push_back({cell(s), cell(f), cell(d), cell(l), cell(e)});
        rows.push_back({{"s", s},
                        {"phi", json_number(f)},
                        {"derivative", json_number(d)},
                        {"lambda", json_number(l)},
                        {"elasticity", json_number(e)}});
      }
    }
    a.body = {{"values", rows}};
    return a;
  }
  const auto map = require_map(c);
  auto f = deformation_of(map, inverse ? c.inverse_tol : 1e-12);
  if (inverse)
    f = inverse_of(f);
  a.header = coordinate_names("in_", f.n);
  for (const auto &h : coordinate_names("out_", f.n))
    a.header.push_back(h);
  nlohmann::json rows = nlohmann::json::array();
  for (const auto &X : read_points(c, f.n)) {
    const auto Y = f(X);
    std::vector<std::string> row;
    append_point(row, X);
    append_point(row, Y);
    a.rows.push_back(std::move(row));
    rows.push_back({{"in", point_json(X)}, {"out", point_json(Y)}});
  }
  a.body = {{"points", rows}};
  return a;
}

inline void write_artifact(std::ostream &os, const RunConfig &c, const Artifact &a) {
  const auto cfg = config_json(c);
  if (c.output == OutputFormat::json) {
    nlohmann::json doc = a.body;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = c.command;
    doc["config"] = cfg;
    doc["exit_status"] = a.status;
    os << doc.dump(2) << '\n';
    return;
  }
  os << "# schema_version=" << kSchemaVersion << '\n';
  os << "# command=" << c.command << '\n';
  for (const auto &[k, v] : cfg.items())
    os << "# " << k << '=' << csv_cell(v) << '\n';
  for (std::size_t i = 0; i < a.header.size(); ++i)
    os << (i ? "," : "") << a.header[i];
  os << '\n';
  for (const auto &row : a.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      const bool quote = row[i].find_first_of(",\"\n") != std::string::npos;
      os << (i ? "," : "");
      if (quote) {
        os << '"';
        for (char ch : row[i])
          os << (ch == '"' ? "\"\"" : std::string(1, ch));
        os << '"';
      } else {
        os << row[i];
      }
    }
    os << '\n';
  }
}

} // namespace detail

/// Executes a parsed configuration, writing the artifact to config.output_path
/// (or out when empty). Usage errors are reported on err.
inline int run(const RunConfig &config, std::ostream &out, std::ostream &err) {
  Artifact a;
  try {
    // Validate every spec up front so that usage errors win over numerics.
    detail::config_json(config);
    if (config.command == "modulus")
      a = detail::run_modulus(config);
    else if (config.command == "dilatation")
      a = detail::run_dilatation(config);
    else if (config.command == "energy")
      a = detail::run_energy(config);
    else if (config.command == "verify")
      a = detail::run_verify(config);
    else if (config.command == "eval")
      a = detail::run_eval_or_invert(config, false);
    else if (config.command == "invert")
      a = detail::run_eval_or_invert(config, true);
    else
      throw UsageError("unknown command '" + config.command + "'");
  } catch (const UsageError &e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception &e) {
    a = Artifact{};
    a.body = {{"error", e.what()}};
    a.header = {"error"};
    a.rows = {{e.what()}};
    a.status = kExitFailure;
    err << "error: " << e.what() << '\n';
  }
  if (config.output_path.empty()) {
    detail::write_artifact(out, config, a);
  } else {
    std::ofstream file(config.output_path, std::ios::binary);
    if (!file) {
      err << "usage error: cannot write --output '" << config.output_path << "'\n";
      return kExitUsage;
    }
    detail::write_artifact(file, config, a);
  }
  return a.status;
}

/// Builds the CLI11 parser bound to config.
inline void configure(CLI::App &app, RunConfig &config) {
  app.require_subcommand(1, 1);
  app.fallthrough(false);
  const std::map<std::string, OutputFormat> formats{{"json", OutputFormat::json},
                                                    {"csv", OutputFormat::csv}};
  auto common = [&](CLI::App *sub) {
    sub->add_option("--out", config.output, "output format: json or csv")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sub->add_option("-o,--output", config.output_path, "write to this file instead of stdout");
  };
  auto sampling = [&](CLI::App *sub) {
    sub->add_option("--center", config.center, "0 or n comma-separated coordinates")
        ->capture_default_str();
    sub->add_option("--radii", config.radii, "log:a..b[:N] or a comma list")
        ->capture_default_str();
    sub->add_option("--norm", config.norm, "cone or euclid (default: the map's own)");
    sub->add_option("--count", config.count, "sphere samples per radius")
        ->capture_default_str()
        ->check(CLI::Range(1, 1 << 24));
    sub->add_option("--seed", config.seed, "sampling seed")->capture_default_str();
  };

  auto *modulus = app.add_subcommand("modulus", "sampled optimal modulus of continuity");
  modulus->add_option("--map", config.map_spec, "map spec")->required();
  sampling(modulus);
  common(modulus);

  auto *dil = app.add_subcommand("dilatation", "linear dilatation per radius");
  dil->add_option("--map", config.map_spec, "map spec")->required();
  sampling(dil);
  dil->add_option("--threshold", config.threshold, "qc_violated threshold")->capture_default_str();
  common(dil);

  auto *energy = app.add_subcommand("energy", "conformal energies");
  energy->add_option("--map", config.map_spec, "cone: or glued: map spec");
  energy->add_option("--phi", config.phi_spec, "family spec (energy of phi itself)");
  energy->add_option("--method", config.method, "quad or mc")->capture_default_str();
  energy->add_option("--tol", config.tol, "quadrature tolerance")->capture_default_str();
  energy->add_option("--samples", config.samples, "Monte Carlo samples")->capture_default_str();
  energy->add_option("--seed", config.seed, "Monte Carlo seed")->capture_default_str();
  common(energy);

  auto *verify = app.add_subcommand(
      "verify", "verification suites: main-theorem, conditions, global-modulus-h, "
                "global-modulus-f, averaging-lemma, quasi-inverse");
  verify->add_option("suite", config.suite, "suite name")->required();
  verify->add_option("--phi", config.phi_spec, "family spec");
  verify->add_option("--map", config.map_spec, "map spec (quasi-inverse)");
  sampling(verify);
  verify->add_option("--pairs", config.pairs, "random pairs")->capture_default_str();
  verify->add_option("--grid", config.grid, "condition grid size")->capture_default_str();
  verify->add_option("--threshold", config.threshold, "quasi-inverse bound")->capture_default_str();
  common(verify);

  for (const char *name : {"eval", "invert"}) {
    const bool inv = std::string(name) == "invert";
    auto *sub = app.add_subcommand(name, inv ? "psi = phi^{-1}, or the inverse map on points"
                                             : "phi and its derivatives, or a map on points");
    sub->add_option("--phi", config.phi_spec, "family spec");
    sub->add_option("--values", config.values, "comma-separated arguments for --phi");
    sub->add_option("--map", config.map_spec, "map spec");
    sub->add_option("--points", config.points_path, "CSV file of points, - for stdin");
    sub->add_option("--at", config.at, "one point as comma-separated coordinates");
    if (inv)
      sub->add_option("--tol", config.inverse_tol, "bisection tolerance")->capture_default_str();
    common(sub);
  }
}

/// Entry point: parses argv and runs.
inline int main(int argc, const char *const *argv, std::ostream &out = std::cout,
                std::ostream &err = std::cerr) {
  CLI::App app{"bicon: moduli of continuity and energies of cone deformations"};
  RunConfig config;
  configure(app, config);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    if (e.get_exit_code() == 0)
      return app.exit(e, out, err);
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  config.command = app.get_subcommands().front()->get_name();
  return run(config, out, err);
}

} // namespace bicon::cli
