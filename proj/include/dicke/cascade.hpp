#pragma once

// Final state after N polarized photodetections on |e,...,e>, in closed form
// and as the pyramid of intermediate states.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "dicke/qstate.hpp"

namespace dicke {

/// Ordered polarizers, detector 1..N.
class PolarizerConfig {
 public:
  explicit PolarizerConfig(std::vector<Polarizer> polarizers);
  static PolarizerConfig from_angles(std::span<const double> thetas);

  int size() const noexcept { return static_cast<int>(polarizers_.size()); }
  const Polarizer& operator[](int i) const { return polarizers_.at(static_cast<std::size_t>(i)); }
  std::span<const Polarizer> polarizers() const noexcept { return polarizers_; }

 private:
  std::vector<Polarizer> polarizers_;
};

/// Coefficients e_0..e_N of prod_i (alpha_i + beta_i z), i.e. the elementary
/// symmetric sums over k-subsets of beta-factors with alpha on the complement.
ComplexVector product_coefficients(const PolarizerConfig& cfg);

/// Unnormalized Dicke coefficients c_k = e_k / sqrt(C(N,k)).
///
/// This is the permutation sum over detector-to-emitter assignments divided by
/// N!, so its norm is the inverse of the normalization used by the closed-form
/// 3-tangle. Any other constant would break that formula.
SymmetricState unnormalized_dicke_coefficients(const PolarizerConfig& cfg);

/// Normalized Dicke expansion of the heralded final state. Throws ZeroState.
SymmetricState dicke_coefficients(const PolarizerConfig& cfg);

struct PyramidLevel {
  int step = 0;
  /// Ket string over {e,+,-}, emitter 0 first, to summed path amplitude.
  std::map<std::string, Complex> terms;
};

/// Level m holds the unnormalized state after the first m detections.
/// Throws ZeroState if the final level vanishes.
std::vector<PyramidLevel> build_pyramid(const PolarizerConfig& cfg);

/// The final pyramid level as a full register, for projection and comparison.
EmitterRegister pyramid_register(int n, const PyramidLevel& level);

struct PathCount {
  std::uint64_t orderings = 0;          // detector-to-emitter bijections reaching the ket
  std::uint64_t distinct_products = 0;  // distinct alpha/beta monomials among them
};

/// Enumerates all bijections for a final ket (no 'e'). Throws InvalidKet.
PathCount path_count(int n, std::string_view ket);

/// Indented text rendering, one block per level.
std::string pyramid_text(const std::vector<PyramidLevel>& levels);

/// Edge list "level,parent_ket,child_ket,amp_re,amp_im" where amp is the
/// transition coefficient (alpha_m or beta_m) of detector m.
std::string pyramid_edges_csv(const PolarizerConfig& cfg, const std::vector<PyramidLevel>& levels);

}  // namespace dicke
