#pragma once

// Three-qubit entanglement measures and the S / W / GHZ classification,
// both from measured quantities of the state and from the polarizer settings.

#include <array>
#include <span>
#include <string_view>

#include "dicke/cascade.hpp"
#include "dicke/qstate.hpp"

namespace dicke {

/// Threshold separating "numerically zero" tangle/entropy from nonzero.
inline constexpr double kClassTol = 1e-7;

enum class EntanglementClass { S, W, GHZ };

std::string_view to_string(EntanglementClass c) noexcept;

/// Amplitudes a[x], bit j of x set when qubit j is |->.
using ThreeQubitState = std::array<Complex, 8>;

/// Normalizes and expands an n = 3 symmetric state. Throws WrongArity.
ThreeQubitState three_qubit_state(const SymmetricState& state);

/// 4/27 * N^4 * prod_{i<j} |alpha_i beta_j - alpha_j beta_i|^2, with N the
/// normalization of unnormalized_dicke_coefficients. Throws WrongArity, ZeroState.
double tangle_closed_form(const PolarizerConfig& cfg);

/// 4 |Det(a)| with Det Cayley's 2x2x2 hyperdeterminant.
double tangle_hyperdeterminant(const ThreeQubitState& psi);
double tangle_hyperdeterminant(const SymmetricState& state);

/// Von Neumann entropy (bits) of one qubit's reduced state. Throws IndexOutOfRange.
double single_qubit_entropy(const ThreeQubitState& psi, int qubit);

/// Wootters concurrence of the reduced state of qubits i and j. Throws IndexOutOfRange.
double pair_concurrence(const ThreeQubitState& psi, int i, int j);

struct EntanglementReport {
  double tangle = 0.0;
  std::array<double, 3> entropies{};
  /// Pairs (0,1), (0,2), (1,2).
  std::array<double, 3> pair_concurrences{};
  EntanglementClass inferred_class = EntanglementClass::S;
};

EntanglementReport entanglement_report(const ThreeQubitState& psi);

EntanglementClass classify_from_state(const ThreeQubitState& psi);

struct ClassPrediction {
  int distinct_orientations = 0;
  EntanglementClass predicted_class = EntanglementClass::S;
};

/// Number of projective-equivalence classes among the polarizers.
int count_distinct_orientations(std::span<const Polarizer> polarizers, double tol = kOrientTol);

/// 3 distinct orientations -> GHZ, 2 -> W, 1 -> S. Throws WrongArity.
ClassPrediction classify_from_config(const PolarizerConfig& cfg);

}  // namespace dicke
