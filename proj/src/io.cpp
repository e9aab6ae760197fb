#include "dicke/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>

#include "dicke/synthesis.hpp"

namespace dicke::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorKind::ConfigParse, what); }

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) fail("unknown key '" + key + "' in " + where);
  }
}

double number(const json& j, const std::string& what) {
  if (!j.is_number()) fail(what + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(what + " must be finite");
  return v;
}

std::uint64_t count(const json& j, const std::string& what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    fail(what + " must be a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

Vec3 vec3(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 3) fail(what + " must be a 3-element array");
  return {number(j[0], what), number(j[1], what), number(j[2], what)};
}

json vec3_to_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

struct Recipe {
  std::string name;
  double phi = 0.0;
  int sign = 1;
};

Recipe parse_recipe(const json& obj, double angle_scale, const std::string& where, json& echo) {
  reject_unknown_keys(obj, {"recipe", "phi", "sign"}, where);
  if (!obj.contains("recipe") || !obj["recipe"].is_string()) fail(where + ".recipe must be a string");
  Recipe r;
  r.name = obj["recipe"].get<std::string>();
  if (r.name != "ghz" && r.name != "w" && r.name != "w_literal" && r.name != "s") {
    fail(where + ".recipe must be one of ghz, w, w_literal, s");
  }
  if (obj.contains("phi")) r.phi = number(obj["phi"], where + ".phi") * angle_scale;
  if (obj.contains("sign")) {
    const double s = number(obj["sign"], where + ".sign");
    if (s != 1.0 && s != -1.0) fail(where + ".sign must be +1 or -1");
    r.sign = static_cast<int>(s);
  }
  echo = {{"recipe", r.name}, {"phi", r.phi}};
  if (obj.contains("sign")) echo["sign"] = r.sign;
  return r;
}

PolarizerConfig recipe_config(const Recipe& r, int n) {
  if (r.name == "ghz") return ghz_config(n, r.phi);
  if (r.name == "s") return s_config(n, r.phi);
  if (r.name == "w") return w_config(n, r.phi, r.sign);
  return w_config_literal(n, r.phi, r.sign);
}

SymmetricState recipe_state(const Recipe& r, int n) {
  if (r.name == "ghz") return ghz_state(n, r.phi);
  if (r.name == "s") return s_state(n, r.phi);
  if (r.name == "w") return w_state(n, r.phi);
  fail("w_literal is a polarizer recipe, not a target state");
}

PolarizerConfig parse_polarizers(const json& j, int n, double angle_scale, json& echo) {
  if (j.is_object()) {
    const auto r = parse_recipe(j, angle_scale, "polarizers", echo);
    return recipe_config(r, n);
  }
  if (!j.is_array()) fail("polarizers must be an array or a recipe object");
  if (static_cast<int>(j.size()) != n) fail("polarizers must have exactly n entries");
  std::vector<Polarizer> ps;
  echo = json::array();
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& entry = j[i];
    const std::string where = "polarizers[" + std::to_string(i) + "]";
    if (!entry.is_object()) fail(where + " must be an object");
    reject_unknown_keys(entry, {"theta", "alpha", "beta"}, where);
    if (entry.contains("theta")) {
      if (entry.contains("alpha") || entry.contains("beta")) fail(where + " mixes theta with alpha/beta");
      const double theta = number(entry["theta"], where + ".theta") * angle_scale;
      ps.push_back(LinearAngle(theta).polarizer());
      echo.push_back({{"theta", theta}});
    } else {
      if (!entry.contains("alpha") || !entry.contains("beta")) fail(where + " needs theta or both alpha and beta");
      const Complex a = complex_from_json(entry["alpha"]);
      const Complex b = complex_from_json(entry["beta"]);
      try {
        ps.push_back(Polarizer::make(a, b));
      } catch (const Error& e) {
        fail(where + ": " + e.what());
      }
      echo.push_back({{"alpha", entry["alpha"]}, {"beta", entry["beta"]}});
    }
  }
  return PolarizerConfig(std::move(ps));
}

SymmetricState parse_target(const json& j, int n, double angle_scale, json& echo) {
  if (j.is_object()) {
    const auto r = parse_recipe(j, angle_scale, "target", echo);
    return recipe_state(r, n);
  }
  if (!j.is_array() || static_cast<int>(j.size()) != n + 1) fail("target must list n+1 [re, im] pairs (k = 0..n)");
  ComplexVector d;
  for (const auto& c : j) d.push_back(complex_from_json(c));
  echo = j;
  return SymmetricState(std::move(d));
}

DetectionGeometry parse_geometry(const json& j, int n, double angle_scale, json& echo) {
  if (!j.is_object()) fail("geometry must be an object");
  if (j.contains("linear_trap")) {
    reject_unknown_keys(j, {"linear_trap"}, "geometry");
    const auto& t = j["linear_trap"];
    if (!t.is_object()) fail("geometry.linear_trap must be an object");
    reject_unknown_keys(t, {"spacing", "transverse_sigma", "window_fullwidth", "wavelength"}, "geometry.linear_trap");
    for (const char* key : {"spacing", "transverse_sigma", "window_fullwidth"}) {
      if (!t.contains(key)) fail(std::string("geometry.linear_trap.") + key + " is required");
    }
    const double spacing = number(t["spacing"], "spacing");
    const double sigma = number(t["transverse_sigma"], "transverse_sigma");
    const double window = number(t["window_fullwidth"], "window_fullwidth") * angle_scale;
    const double wavelength = t.contains("wavelength") ? number(t["wavelength"], "wavelength") : kDefaultWavelength;
    echo = {{"linear_trap",
             {{"spacing", spacing}, {"transverse_sigma", sigma}, {"window_fullwidth", window}, {"wavelength", wavelength}}}};
    try {
      auto g = linear_trap_geometry(n, spacing, sigma, window, wavelength);
      g.validate(n);
      return g;
    } catch (const Error& e) {
      fail(std::string("geometry: ") + e.what());
    }
  }

  reject_unknown_keys(j,
                      {"emitter_positions", "transverse_sigma", "wavelength", "detector_directions", "window_halfangle",
                       "emitter_axis", "azimuth_axis"},
                      "geometry");
  for (const char* key : {"emitter_positions", "detector_directions"}) {
    if (!j.contains(key) || !j[key].is_array()) fail(std::string("geometry.") + key + " must be an array");
  }
  DetectionGeometry g;
  for (const auto& r : j["emitter_positions"]) g.emitter_positions.push_back(vec3(r, "emitter position"));
  for (const auto& d : j["detector_directions"]) g.detector_directions.push_back(vec3(d, "detector direction"));
  if (j.contains("transverse_sigma")) g.transverse_sigma = number(j["transverse_sigma"], "transverse_sigma");
  if (j.contains("wavelength")) g.wavelength = number(j["wavelength"], "wavelength");
  if (j.contains("window_halfangle")) g.window_halfangle = number(j["window_halfangle"], "window_halfangle") * angle_scale;
  if (j.contains("emitter_axis")) g.emitter_axis = vec3(j["emitter_axis"], "emitter_axis");
  if (j.contains("azimuth_axis")) g.azimuth_axis = vec3(j["azimuth_axis"], "azimuth_axis");
  try {
    g.validate(n);
  } catch (const Error& e) {
    fail(std::string("geometry: ") + e.what());
  }

  echo = json::object();
  echo["emitter_positions"] = json::array();
  for (const auto& r : g.emitter_positions) echo["emitter_positions"].push_back(vec3_to_json(r));
  echo["detector_directions"] = json::array();
  for (const auto& d : g.detector_directions) echo["detector_directions"].push_back(vec3_to_json(d));
  echo["transverse_sigma"] = g.transverse_sigma;
  echo["wavelength"] = g.wavelength;
  echo["window_halfangle"] = g.window_halfangle;
  echo["emitter_axis"] = vec3_to_json(g.emitter_axis);
  echo["azimuth_axis"] = vec3_to_json(g.azimuth_axis);
  return g;
}

}  // namespace

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {number(j, "complex value"), 0.0};
  if (!j.is_array() || j.size() != 2) fail("complex values are written as [re, im]");
  return {number(j[0], "real part"), number(j[1], "imaginary part")};
}

ExperimentConfig parse_config(const json& doc, const ParseOptions& options) {
  if (!doc.is_object()) fail("config must be a JSON object");
  reject_unknown_keys(doc, {"n", "polarizers", "target", "geometry", "seed", "samples"}, "config");
  if (!doc.contains("n")) fail("n is required");
  const auto n64 = count(doc["n"], "n");
  if (n64 < 1 || n64 > static_cast<std::uint64_t>(kMaxRegisterEmitters)) {
    fail("n must be in 1.." + std::to_string(kMaxRegisterEmitters));
  }
  const double angle_scale = options.degrees ? std::numbers::pi / 180.0 : 1.0;

  ExperimentConfig cfg;
  cfg.n = static_cast<int>(n64);
  cfg.echo = json::object();
  cfg.echo["n"] = cfg.n;
  try {
    if (doc.contains("polarizers")) {
      json echo;
      cfg.polarizers = parse_polarizers(doc["polarizers"], cfg.n, angle_scale, echo);
      cfg.echo["polarizers"] = echo;
    }
    if (doc.contains("target")) {
      json echo;
      cfg.target = parse_target(doc["target"], cfg.n, angle_scale, echo);
      cfg.echo["target"] = echo;
    }
    if (doc.contains("geometry")) {
      json echo;
      cfg.geometry = parse_geometry(doc["geometry"], cfg.n, angle_scale, echo);
      cfg.echo["geometry"] = echo;
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ConfigParse) throw;
    fail(e.what());
  }
  if (doc.contains("seed")) cfg.seed = count(doc["seed"], "seed");
  if (doc.contains("samples")) cfg.samples = count(doc["samples"], "samples");
  if (options.seed_override) cfg.seed = options.seed_override;
  if (options.samples_override) cfg.samples = options.samples_override;
  if (cfg.seed) cfg.echo["seed"] = *cfg.seed;
  if (cfg.samples) cfg.echo["samples"] = *cfg.samples;
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path, const ParseOptions& options) {
  std::ifstream in(path);
  if (!in) fail("cannot open config file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  return parse_config(doc, options);
}

double round15(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return std::strtod(buf, nullptr);
}

json complex_to_json(Complex z) { return json::array({round15(z.real()), round15(z.imag())}); }

json coefficients_to_json(const SymmetricState& state) {
  json out = json::array();
  for (const auto& c : state.coeffs()) out.push_back(complex_to_json(c));
  return out;
}

json polarizer_to_json(const Polarizer& p) {
  return {{"alpha", complex_to_json(p.alpha())}, {"beta", complex_to_json(p.beta())}};
}

json report_to_json(const EntanglementReport& report) {
  json entropies = json::array();
  for (double s : report.entropies) entropies.push_back(round15(s));
  json concurrences = json::array();
  for (double c : report.pair_concurrences) concurrences.push_back(round15(c));
  return {{"tangle", round15(report.tangle)},
          {"entropies", entropies},
          {"pair_concurrences", concurrences},
          {"pairs", json::array({json::array({0, 1}), json::array({0, 2}), json::array({1, 2})})},
          {"class", std::string(to_string(report.inferred_class))}};
}

json estimate_to_json(const FidelityEstimate& estimate) {
  return {{"mean_fidelity", round15(estimate.mean_fidelity)},
          {"standard_error", round15(estimate.standard_error)},
          {"sample_count", estimate.sample_count},
          {"excluded_count", estimate.excluded_count}};
}

json record_header(const std::string& command, const ExperimentConfig& cfg) {
  return {{"tool", kToolName}, {"version", kToolVersion}, {"command", command}, {"input", cfg.echo}};
}

}  // namespace dicke::io
