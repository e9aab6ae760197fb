#pragma once

// Inverse design: polarizer settings that generate a given symmetric state,
// plus the linear-polarizer recipes for the GHZ, W and product states.

#include <span>
#include <vector>

#include "dicke/cascade.hpp"
#include "dicke/qstate.hpp"

namespace dicke {

/// Coefficients below this (relative to the target norm) do not count towards the degree.
inline constexpr double kDegreeTol = 1e-12;

/// P(z) = sum_k (-1)^(K-k) sqrt(C(N,k)/C(N,K)) d_k z^k, with K its degree.
/// The roots of P are the ratios alpha_i/beta_i of the K non-sigma_plus polarizers.
struct SynthesisPolynomial {
  int n = 0;
  int degree = 0;
  ComplexVector coefficients;  // p_0..p_K, p_K != 0
};

SynthesisPolynomial synthesis_polynomial(const SymmetricState& target);

/// Roots of sum_k coeffs[k] z^k via eigenvalues of the balanced companion
/// matrix, followed by Newton polishing. Leading coefficient must be nonzero.
/// Throws RootFindingFailure.
ComplexVector polynomial_roots(std::span<const Complex> coeffs);

/// Polarizer with alpha/beta = ratio, i.e. (ratio, 1)/sqrt(1 + |ratio|^2).
Polarizer polarizer_from_ratio(Complex ratio);

/// N polarizers generating target up to global phase: one per root of the
/// synthesis polynomial, the rest sigma_plus. Throws ZeroTarget, RootFindingFailure.
PolarizerConfig synthesize(const SymmetricState& target);

/// Linear polarizers at pi/(2N) [even N only] + phi/(2N) + (k-1) pi/N.
PolarizerConfig ghz_config(int n, double phi);
/// N identical linear polarizers at phi/2.
PolarizerConfig s_config(int n, double phi);
/// N-1 identical linear polarizers at phi/2 + sign*pi/2, and one at phi/2.
/// Generates the single-|1_phi> W state; sign only changes the global phase.
PolarizerConfig w_config(int n, double phi, int sign = +1);
/// The printed angle recipe: N-1 polarizers at phi/2 and the last at
/// phi/2 + sign*pi/2. Its output is the W state with |0_phi> and |1_phi> exchanged.
PolarizerConfig w_config_literal(int n, double phi, int sign = +1);

/// (|+...+> + e^{i phi}|-...->)/sqrt2.
SymmetricState ghz_state(int n, double phi);
/// |1_phi>^{(x)N}, |1_phi> = (|+> + e^{i phi}|->)/sqrt2.
SymmetricState s_state(int n, double phi);
/// (|1_phi 0_phi ... 0_phi> + ... + |0_phi ... 0_phi 1_phi>)/sqrt N,
/// |0_phi> = (|+> - e^{i phi}|->)/sqrt2.
SymmetricState w_state(int n, double phi);

}  // namespace dicke
