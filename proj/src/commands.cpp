#include "dicke/commands.hpp"

#include <cstdio>
#include <numbers>
#include <sstream>

#include "dicke/cascade.hpp"
#include "dicke/entanglement.hpp"
#include "dicke/synthesis.hpp"
#include "dicke/window_fidelity.hpp"

namespace dicke::cli {

using io::json;

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ConfigParse:
    case ErrorKind::InvalidArgument:
      return 2;
    case ErrorKind::ClassDisagreement:
      return 4;
    default:
      return 3;
  }
}

namespace {

const PolarizerConfig& require_polarizers(const io::ExperimentConfig& cfg) {
  if (!cfg.polarizers) throw Error(ErrorKind::ConfigParse, "this command needs 'polarizers'");
  return *cfg.polarizers;
}

const SymmetricState& require_target(const io::ExperimentConfig& cfg) {
  if (!cfg.target) throw Error(ErrorKind::ConfigParse, "this command needs 'target'");
  return *cfg.target;
}

json polarizers_to_json(const PolarizerConfig& pc) {
  json out = json::array();
  for (const auto& p : pc.polarizers()) out.push_back(io::polarizer_to_json(p));
  return out;
}

json classification_block(const PolarizerConfig& pc, const EntanglementReport& report) {
  const auto prediction = classify_from_config(pc);
  return {{"distinct_orientations", prediction.distinct_orientations},
          {"config_class", std::string(to_string(prediction.predicted_class))},
          {"state_class", std::string(to_string(report.inferred_class))},
          {"agree", prediction.predicted_class == report.inferred_class}};
}

}  // namespace

json simulate(const io::ExperimentConfig& cfg) {
  const auto& pc = require_polarizers(cfg);
  const auto state = dicke_coefficients(pc);
  json record = io::record_header("simulate", cfg);
  record["dicke_coefficients"] = io::coefficients_to_json(state);
  record["dicke_coefficients_canonical"] = io::coefficients_to_json(state.canonicalized());
  if (pc.size() == 3) {
    const auto report = entanglement_report(three_qubit_state(state));
    record["entanglement"] = io::report_to_json(report);
    record["entanglement"]["tangle_closed_form"] = io::round15(tangle_closed_form(pc));
    record["classification"] = classification_block(pc, report);
  }
  return record;
}

json synthesize(const io::ExperimentConfig& cfg) {
  const auto& raw_target = require_target(cfg);
  if (raw_target.norm() == 0.0) throw Error(ErrorKind::ZeroTarget, "target state is zero");
  const auto target = raw_target.normalized();
  const auto poly = synthesis_polynomial(target);
  const auto pc = synthesize(target);
  const auto produced = dicke_coefficients(pc);

  json record = io::record_header("synthesize", cfg);
  json coeffs = json::array();
  for (const auto& c : poly.coefficients) coeffs.push_back(io::complex_to_json(c));
  record["synthesis_polynomial"] = {{"degree", poly.degree}, {"coefficients", coeffs}};
  record["polarizers"] = polarizers_to_json(pc);
  record["verification"] = {{"dicke_coefficients", io::coefficients_to_json(produced)},
                            {"fidelity", io::round15(fidelity(produced, target))}};
  return record;
}

json classify(const io::ExperimentConfig& cfg) {
  const auto& pc = require_polarizers(cfg);
  if (pc.size() != 3) throw Error(ErrorKind::WrongArity, "classify needs exactly 3 polarizers");
  const auto state = dicke_coefficients(pc);
  const auto report = entanglement_report(three_qubit_state(state));

  json record = io::record_header("classify", cfg);
  record["dicke_coefficients"] = io::coefficients_to_json(state);
  record["entanglement"] = io::report_to_json(report);
  record["entanglement"]["tangle_closed_form"] = io::round15(tangle_closed_form(pc));
  record["classification"] = classification_block(pc, report);
  if (!record["classification"]["agree"].get<bool>()) {
    throw Error(ErrorKind::ClassDisagreement,
                "configuration predicts " + record["classification"]["config_class"].get<std::string>() +
                    " but the state measures " + record["classification"]["state_class"].get<std::string>());
  }
  return record;
}

PyramidOutput pyramid(const io::ExperimentConfig& cfg) {
  const auto& pc = require_polarizers(cfg);
  if (pc.size() > kMaxPyramidSize) {
    throw Error(ErrorKind::TooLarge, "pyramid output is limited to n <= " + std::to_string(kMaxPyramidSize));
  }
  const auto levels = build_pyramid(pc);
  return {pyramid_text(levels), pyramid_edges_csv(pc, levels)};
}

SweepSpec parse_sweep(const std::string& spec, const io::ExperimentConfig& cfg, bool degrees) {
  const double scale = degrees ? std::numbers::pi / 180.0 : 1.0;
  if (spec == "window") {
    if (!cfg.geometry || cfg.geometry->window_halfangle == 0.0) {
      throw Error(ErrorKind::ConfigParse, "--sweep window needs a nonzero configured window or explicit bounds");
    }
    return {0.0, 4.0 * cfg.geometry->window_halfangle, 5};
  }
  SweepSpec s;
  char tail = 0;
  if (std::sscanf(spec.c_str(), "window:%lf:%lf:%d%c", &s.start, &s.stop, &s.steps, &tail) != 3 || s.steps < 1 ||
      s.start < 0.0 || s.stop < s.start) {
    throw Error(ErrorKind::ConfigParse, "sweep spec must be 'window' or 'window:START:STOP:STEPS'");
  }
  s.start *= scale;
  s.stop *= scale;
  return s;
}

FidelityOutput fidelity(const io::ExperimentConfig& cfg, const std::optional<SweepSpec>& sweep) {
  const auto& raw_target = require_target(cfg);
  if (!cfg.geometry) throw Error(ErrorKind::ConfigParse, "fidelity needs 'geometry'");
  if (!cfg.samples) throw Error(ErrorKind::ConfigParse, "fidelity needs 'samples'");
  if (raw_target.norm() == 0.0) throw Error(ErrorKind::ZeroTarget, "target state is zero");
  const auto target = raw_target.normalized();
  const PolarizerConfig pc = cfg.polarizers ? *cfg.polarizers : synthesize(target);
  const std::uint64_t seed = cfg.seed.value_or(1);

  FidelityOutput out;
  out.record = io::record_header("fidelity", cfg);
  out.record["seed_used"] = seed;
  out.record["polarizers"] = polarizers_to_json(pc);
  out.record["ideal_fidelity"] = io::round15(dicke::fidelity(dicke_coefficients(pc), target));
  out.record["fidelity"] = io::estimate_to_json(estimate_fidelity(pc, *cfg.geometry, target, *cfg.samples, seed));

  if (sweep) {
    std::ostringstream csv;
    csv << "window_fullwidth,mean_fidelity,standard_error,sample_count,excluded_count\n";
    json rows = json::array();
    for (int i = 0; i < sweep->steps; ++i) {
      const double width =
          sweep->steps == 1 ? sweep->start : sweep->start + (sweep->stop - sweep->start) * i / (sweep->steps - 1);
      auto geometry = *cfg.geometry;
      geometry.window_halfangle = width / 2.0;
      const auto est = estimate_fidelity(pc, geometry, target, *cfg.samples, seed);
      char line[160];
      std::snprintf(line, sizeof line, "%.15g,%.15g,%.15g,%llu,%llu\n", width, est.mean_fidelity, est.standard_error,
                    static_cast<unsigned long long>(est.sample_count),
                    static_cast<unsigned long long>(est.excluded_count));
      csv << line;
      json row = io::estimate_to_json(est);
      row["window_fullwidth"] = io::round15(width);
      rows.push_back(row);
    }
    out.record["sweep"] = rows;
    out.sweep_csv = csv.str();
  }
  return out;
}

}  // namespace dicke::cli
