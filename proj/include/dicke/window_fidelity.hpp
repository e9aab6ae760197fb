#pragma once

// Monte-Carlo fidelity of the heralded state when detectors collect light
// over a finite angular window and emitters jitter in their traps.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "dicke/cascade.hpp"
#include "dicke/qstate.hpp"

namespace dicke {

using Vec3 = std::array<double, 3>;

inline constexpr double kDefaultWavelength = 493e-9;  // metres

/// Emitter and detector layout, SI units (metres, radians).
struct DetectionGeometry {
  std::vector<Vec3> emitter_positions;  // mean positions
  double transverse_sigma = 0.0;        // Gaussian spread perpendicular to emitter_axis
  double wavelength = kDefaultWavelength;
  std::vector<Vec3> detector_directions;  // unit vectors, one per detector
  double window_halfangle = 0.0;          // detector azimuth drawn uniformly in +-halfangle
  Vec3 emitter_axis{1.0, 0.0, 0.0};       // trap axis; confinement is in the plane normal to it
  Vec3 azimuth_axis{0.0, 0.0, 1.0};       // window rotations are about this axis

  /// Throws InvalidArgument if the geometry cannot describe n emitters and n detectors.
  void validate(int n) const;
};

/// n emitters on the x axis with the given spacing; detectors in the xy plane
/// at azimuths with cos(phi_i) = m_i * wavelength / spacing, m = 0, 1, -1, 2, -2, ...
/// so every emitter-to-detector path difference is a whole number of
/// wavelengths. The window is a full width in radians.
DetectionGeometry linear_trap_geometry(int n, double spacing, double transverse_sigma, double window_fullwidth,
                                       double wavelength = kDefaultWavelength);

/// Detection operator sum_j w_j (alpha |+>_j<e| + beta |->_j<e|) with far-field
/// weights w_j = exp(i k r_j . direction).
struct PositionalDetection {
  Polarizer polarizer;
  ComplexVector emitter_weights;

  EmitterRegister apply(const EmitterRegister& reg) const {
    return apply_weighted_detection(reg, polarizer, emitter_weights);
  }
};

PositionalDetection positional_detection_operator(const Polarizer& p, const Vec3& direction,
                                                  std::span<const Vec3> positions, double wavelength);

/// |<target|psi>|^2 / |psi|^2 for a register with no excited population; psi
/// need not be permutation symmetric.
double fidelity_to_symmetric(const EmitterRegister& reg, const SymmetricState& target);

struct FidelityEstimate {
  double mean_fidelity = 0.0;
  double standard_error = 0.0;
  std::uint64_t sample_count = 0;     // samples that produced a state
  std::uint64_t excluded_count = 0;   // samples where the detections annihilated the state
};

/// Samples are split into fixed blocks, each seeded from (seed, block index),
/// and merged in block order, so the result is identical for any worker count.
/// workers = 0 picks the hardware concurrency.
FidelityEstimate estimate_fidelity(const PolarizerConfig& cfg, const DetectionGeometry& geometry,
                                   const SymmetricState& target, std::uint64_t samples, std::uint64_t seed,
                                   unsigned workers = 0);

}  // namespace dicke
