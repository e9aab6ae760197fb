#pragma once

// Experiment configuration and result records (JSON), shared by the CLI and tests.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dicke/cascade.hpp"
#include "dicke/entanglement.hpp"
#include "dicke/qstate.hpp"
#include "dicke/window_fidelity.hpp"

namespace dicke::io {

using nlohmann::json;

inline constexpr const char* kToolName = "dicke-herald";
inline constexpr const char* kToolVersion = "1.0.0";

/// Parsed experiment configuration.
///
/// `echo` is the canonical form of the input: angles already in radians and
/// command-line overrides folded in, so that feeding it back (without
/// --degrees) reproduces the same numbers.
struct ExperimentConfig {
  int n = 0;
  std::optional<PolarizerConfig> polarizers;
  std::optional<SymmetricState> target;  // as given, not normalized
  std::optional<DetectionGeometry> geometry;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> samples;
  json echo;
};

struct ParseOptions {
  bool degrees = false;
  std::optional<std::uint64_t> samples_override;
  std::optional<std::uint64_t> seed_override;
};

/// Throws Error(ConfigParse) on any malformed or inconsistent field.
ExperimentConfig parse_config(const json& doc, const ParseOptions& options = {});
ExperimentConfig load_config(const std::filesystem::path& path, const ParseOptions& options = {});

/// Rounds to 15 significant digits so JSON output carries no more than that.
double round15(double x);

json complex_to_json(Complex z);
Complex complex_from_json(const json& j);
json coefficients_to_json(const SymmetricState& state);
json polarizer_to_json(const Polarizer& p);
json report_to_json(const EntanglementReport& report);
json estimate_to_json(const FidelityEstimate& estimate);

/// Skeleton shared by every record: tool, version, command and the input echo.
json record_header(const std::string& command, const ExperimentConfig& cfg);

}  // namespace dicke::io
