#pragma once

// Core state types for N Lambda-type emitters: polarizers, the Dicke basis,
// the full {e,+,-}^N register and the brute-force detection operator.

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dicke {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Projective-equality tolerance for polarizer orientations.
inline constexpr double kOrientTol = 1e-9;
/// Tolerance used when checking unit norm after construction.
inline constexpr double kNormTol = 1e-12;
/// Largest register that apply_detection will allocate (3^12 amplitudes).
inline constexpr int kMaxRegisterEmitters = 12;

enum class ErrorKind {
  ZeroVector,
  NoExcitedPopulation,
  ResidualExcitation,
  AsymmetricResidue,
  DimensionMismatch,
  ZeroState,
  InvalidKet,
  ZeroTarget,
  RootFindingFailure,
  WrongArity,
  IndexOutOfRange,
  InvalidArgument,
  TooLarge,
  ConfigParse,
  ClassDisagreement,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Jones vector alpha*sigma_plus + beta*sigma_minus, always unit norm.
class Polarizer {
 public:
  /// Normalizes (alpha, beta); throws ZeroVector if both vanish.
  static Polarizer make(Complex alpha, Complex beta);
  static Polarizer sigma_plus() { return Polarizer({1.0, 0.0}, {0.0, 0.0}); }
  static Polarizer sigma_minus() { return Polarizer({0.0, 0.0}, {1.0, 0.0}); }

  Complex alpha() const noexcept { return alpha_; }
  Complex beta() const noexcept { return beta_; }

 private:
  Polarizer(Complex a, Complex b) : alpha_(a), beta_(b) {}
  Complex alpha_;
  Complex beta_;
};

inline Polarizer make_polarizer(Complex alpha, Complex beta) {
  return Polarizer::make(alpha, beta);
}

/// Linear polarizer at angle theta, (e^{-i theta} sigma_+ + e^{i theta} sigma_-)/sqrt2.
class LinearAngle {
 public:
  explicit LinearAngle(double theta);
  double theta() const noexcept { return theta_; }  // in [0, pi)
  Polarizer polarizer() const;

 private:
  double theta_;
};

/// |alpha_p beta_q - alpha_q beta_p|; zero iff the orientations coincide.
double orientation_separation(const Polarizer& p, const Polarizer& q) noexcept;

bool same_orientation(const Polarizer& p, const Polarizer& q, double tol = kOrientTol) noexcept;

/// Exact binomial coefficient for the small sizes used here (n <= 62).
std::uint64_t binomial(int n, int k);

/// Dicke state |D_n(k)>: k emitters in |->, the rest in |+>.
struct DickeIndex {
  int n;
  int k;
};

/// Amplitudes over the Dicke basis, k = 0..n. Not necessarily normalized;
/// use normalized() where unit norm is required.
class SymmetricState {
 public:
  SymmetricState() = default;
  /// Takes d_0..d_n as given; n = coeffs.size() - 1.
  explicit SymmetricState(ComplexVector coeffs);

  int n() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  Complex operator[](int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }

  double norm() const noexcept;
  bool is_normalized(double tol = kNormTol) const noexcept;
  /// Throws ZeroState for the zero vector.
  SymmetricState normalized() const;
  /// First nonzero coefficient made real-positive. Applied only on request.
  SymmetricState canonicalized(double zero_tol = 1e-14) const;

  /// Expands into 2^n qubit amplitudes, bit j of the index set when qubit j is |->.
  ComplexVector qubit_amplitudes() const;

 private:
  ComplexVector coeffs_;
};

/// Projects 2^n qubit amplitudes (bit j = qubit j is |->) onto the Dicke basis.
/// No symmetry check; the antisymmetric part is simply discarded.
SymmetricState symmetric_from_qubits(int n, std::span<const Complex> amps);

/// |<a|b>|^2 / (|a|^2 |b|^2). Throws DimensionMismatch or ZeroState.
double fidelity(const SymmetricState& a, const SymmetricState& b);

enum class Level : std::uint8_t { Excited = 0, Plus = 1, Minus = 2 };

char level_symbol(Level level) noexcept;

/// Full 3^n register, base-3 little endian: emitter 0 is the least significant digit.
class EmitterRegister {
 public:
  /// |e,...,e>.
  static EmitterRegister all_excited(int n);
  static EmitterRegister from_amplitudes(int n, ComplexVector amps);

  int n() const noexcept { return n_; }
  std::span<const Complex> amps() const noexcept { return amps_; }
  std::size_t size() const noexcept { return amps_.size(); }
  Complex operator[](std::size_t index) const { return amps_.at(index); }

  static Level level(std::size_t index, int emitter) noexcept;
  /// Index of a ket string such as "+e-" (emitter 0 first).
  static std::size_t index_of(std::string_view ket);
  std::string ket(std::size_t index) const;

  double norm() const noexcept;
  EmitterRegister normalized() const;

 private:
  EmitterRegister(int n, ComplexVector amps) : n_(n), amps_(std::move(amps)) {}
  int n_ = 0;
  ComplexVector amps_;
};

/// D(eps)|reg> with per-emitter weights w_j:
/// sum_j w_j (alpha |+>_j<e| + beta |->_j<e|). Unnormalized.
/// Throws NoExcitedPopulation if the result vanishes.
EmitterRegister apply_weighted_detection(const EmitterRegister& reg, const Polarizer& p,
                                         std::span<const Complex> emitter_weights);

/// The ideal far-field detection operator (all weights 1).
EmitterRegister apply_detection(const EmitterRegister& reg, const Polarizer& p);

/// Dicke coefficients of a register with no excited population.
/// Throws ResidualExcitation or AsymmetricResidue (thresholds relative to the register norm).
SymmetricState project_symmetric(const EmitterRegister& reg);

}  // namespace dicke
