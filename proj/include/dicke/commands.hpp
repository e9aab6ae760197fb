#pragma once

// The five CLI verbs as library functions. Each takes a parsed configuration
// and returns what the tool prints; errors propagate as dicke::Error.

#include <optional>
#include <string>

#include "dicke/io.hpp"

namespace dicke::cli {

/// Exit status for a failure of the given kind: 2 config, 3 computation, 4 concordance.
int exit_code_for(ErrorKind kind) noexcept;

/// Largest system accepted by the pyramid command.
inline constexpr int kMaxPyramidSize = 6;

io::json simulate(const io::ExperimentConfig& cfg);
io::json synthesize(const io::ExperimentConfig& cfg);
/// Throws ClassDisagreement if the configuration and state disagree.
io::json classify(const io::ExperimentConfig& cfg);

struct PyramidOutput {
  std::string text;
  std::string edges_csv;
};
PyramidOutput pyramid(const io::ExperimentConfig& cfg);

/// Window sweep: full widths from start to stop (radians) in `steps` points.
struct SweepSpec {
  double start = 0.0;
  double stop = 0.0;
  int steps = 0;
};

/// Accepts "window" (0 to twice the configured width, 5 points) or
/// "window:START:STOP:STEPS". Angles are scaled by degrees_to_radians when set.
SweepSpec parse_sweep(const std::string& spec, const io::ExperimentConfig& cfg, bool degrees);

struct FidelityOutput {
  io::json record;
  std::string sweep_csv;  // empty without a sweep
};
FidelityOutput fidelity(const io::ExperimentConfig& cfg, const std::optional<SweepSpec>& sweep = std::nullopt);

}  // namespace dicke::cli
