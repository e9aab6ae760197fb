#include "dicke/qstate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

namespace dicke {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::NoExcitedPopulation: return "NoExcitedPopulation";
    case ErrorKind::ResidualExcitation: return "ResidualExcitation";
    case ErrorKind::AsymmetricResidue: return "AsymmetricResidue";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ZeroState: return "ZeroState";
    case ErrorKind::InvalidKet: return "InvalidKet";
    case ErrorKind::ZeroTarget: return "ZeroTarget";
    case ErrorKind::RootFindingFailure: return "RootFindingFailure";
    case ErrorKind::WrongArity: return "WrongArity";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::ConfigParse: return "ConfigParse";
    case ErrorKind::ClassDisagreement: return "ClassDisagreement";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// Polarizers

Polarizer Polarizer::make(Complex alpha, Complex beta) {
  const double n = std::sqrt(std::norm(alpha) + std::norm(beta));
  if (n == 0.0 || !std::isfinite(n)) {
    throw Error(ErrorKind::ZeroVector, "polarizer needs a nonzero finite (alpha, beta)");
  }
  return Polarizer(alpha / n, beta / n);
}

LinearAngle::LinearAngle(double theta) {
  if (!std::isfinite(theta)) throw Error(ErrorKind::InvalidArgument, "non-finite angle");
  double t = std::fmod(theta, std::numbers::pi);
  if (t < 0.0) t += std::numbers::pi;
  if (t >= std::numbers::pi) t = 0.0;
  theta_ = t;
}

Polarizer LinearAngle::polarizer() const {
  const double s = 1.0 / std::numbers::sqrt2;
  return Polarizer::make(std::polar(s, -theta_), std::polar(s, theta_));
}

double orientation_separation(const Polarizer& p, const Polarizer& q) noexcept {
  return std::abs(p.alpha() * q.beta() - q.alpha() * p.beta());
}

bool same_orientation(const Polarizer& p, const Polarizer& q, double tol) noexcept {
  return orientation_separation(p, q) <= tol;
}

std::uint64_t binomial(int n, int k) {
  if (n < 0 || n > 62) throw Error(ErrorKind::InvalidArgument, "binomial: n out of range");
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Symmetric states

SymmetricState::SymmetricState(ComplexVector coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw Error(ErrorKind::InvalidArgument, "symmetric state needs n >= 0");
}

double SymmetricState::norm() const noexcept {
  double s = 0.0;
  for (const auto& c : coeffs_) s += std::norm(c);
  return std::sqrt(s);
}

bool SymmetricState::is_normalized(double tol) const noexcept {
  return std::abs(norm() - 1.0) <= tol;
}

SymmetricState SymmetricState::normalized() const {
  const double n = norm();
  if (n == 0.0) throw Error(ErrorKind::ZeroState, "cannot normalize the zero state");
  ComplexVector out(coeffs_);
  for (auto& c : out) c /= n;
  return SymmetricState(std::move(out));
}

SymmetricState SymmetricState::canonicalized(double zero_tol) const {
  const double n = norm();
  auto it = std::find_if(coeffs_.begin(), coeffs_.end(),
                         [&](const Complex& c) { return std::abs(c) > zero_tol * std::max(n, 1e-300); });
  if (it == coeffs_.end()) return *this;
  const Complex phase = std::conj(*it) / std::abs(*it);
  ComplexVector out(coeffs_);
  for (auto& c : out) c *= phase;
  out[static_cast<std::size_t>(it - coeffs_.begin())] = std::abs(*it);
  return SymmetricState(std::move(out));
}

ComplexVector SymmetricState::qubit_amplitudes() const {
  const int nq = n();
  if (nq > 30) throw Error(ErrorKind::TooLarge, "qubit expansion limited to 30 qubits");
  std::vector<double> inv_sqrt_binom(static_cast<std::size_t>(nq) + 1);
  for (int k = 0; k <= nq; ++k) {
    inv_sqrt_binom[static_cast<std::size_t>(k)] = 1.0 / std::sqrt(static_cast<double>(binomial(nq, k)));
  }
  ComplexVector amps(std::size_t{1} << nq);
  for (std::size_t x = 0; x < amps.size(); ++x) {
    const auto k = static_cast<std::size_t>(std::popcount(x));
    amps[x] = coeffs_[k] * inv_sqrt_binom[k];
  }
  return amps;
}

SymmetricState symmetric_from_qubits(int n, std::span<const Complex> amps) {
  if (n < 0 || n > 30 || amps.size() != (std::size_t{1} << n)) {
    throw Error(ErrorKind::DimensionMismatch, "qubit amplitude vector must have length 2^n");
  }
  ComplexVector d(static_cast<std::size_t>(n) + 1);
  for (std::size_t x = 0; x < amps.size(); ++x) d[static_cast<std::size_t>(std::popcount(x))] += amps[x];
  for (int k = 0; k <= n; ++k) d[static_cast<std::size_t>(k)] /= std::sqrt(static_cast<double>(binomial(n, k)));
  return SymmetricState(std::move(d));
}

double fidelity(const SymmetricState& a, const SymmetricState& b) {
  if (a.n() != b.n()) throw Error(ErrorKind::DimensionMismatch, "fidelity of states with different n");
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) throw Error(ErrorKind::ZeroState, "fidelity with the zero state");
  Complex overlap{0.0, 0.0};
  for (int k = 0; k <= a.n(); ++k) overlap += std::conj(a[k]) * b[k];
  const double f = std::norm(overlap) / (na * na * nb * nb);
  return std::clamp(f, 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// Emitter register

char level_symbol(Level level) noexcept {
  switch (level) {
    case Level::Excited: return 'e';
    case Level::Plus: return '+';
    case Level::Minus: return '-';
  }
  return '?';
}

namespace {

std::size_t pow3(int n) {
  std::size_t r = 1;
  for (int i = 0; i < n; ++i) r *= 3;
  return r;
}

}  // namespace

EmitterRegister EmitterRegister::all_excited(int n) {
  if (n < 1 || n > kMaxRegisterEmitters) {
    throw Error(ErrorKind::TooLarge, "register supports 1.." + std::to_string(kMaxRegisterEmitters) + " emitters");
  }
  ComplexVector amps(pow3(n));
  amps[0] = 1.0;
  return EmitterRegister(n, std::move(amps));
}

EmitterRegister EmitterRegister::from_amplitudes(int n, ComplexVector amps) {
  if (n < 1 || n > kMaxRegisterEmitters) throw Error(ErrorKind::TooLarge, "register size out of range");
  if (amps.size() != pow3(n)) throw Error(ErrorKind::DimensionMismatch, "register needs 3^n amplitudes");
  return EmitterRegister(n, std::move(amps));
}

Level EmitterRegister::level(std::size_t index, int emitter) noexcept {
  for (int j = 0; j < emitter; ++j) index /= 3;
  return static_cast<Level>(index % 3);
}

std::size_t EmitterRegister::index_of(std::string_view ket) {
  std::size_t index = 0;
  for (auto it = ket.rbegin(); it != ket.rend(); ++it) {
    std::size_t digit = 0;
    switch (*it) {
      case 'e': digit = 0; break;
      case '+': digit = 1; break;
      case '-': digit = 2; break;
      default: throw Error(ErrorKind::InvalidKet, "ket symbols must be e, + or -");
    }
    index = index * 3 + digit;
  }
  return index;
}

std::string EmitterRegister::ket(std::size_t index) const {
  std::string s(static_cast<std::size_t>(n_), 'e');
  for (int j = 0; j < n_; ++j) {
    s[static_cast<std::size_t>(j)] = level_symbol(static_cast<Level>(index % 3));
    index /= 3;
  }
  return s;
}

double EmitterRegister::norm() const noexcept {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

EmitterRegister EmitterRegister::normalized() const {
  const double nrm = norm();
  if (nrm == 0.0) throw Error(ErrorKind::ZeroState, "cannot normalize the zero register");
  ComplexVector out(amps_);
  for (auto& a : out) a /= nrm;
  return EmitterRegister(n_, std::move(out));
}

EmitterRegister apply_weighted_detection(const EmitterRegister& reg, const Polarizer& p,
                                         std::span<const Complex> emitter_weights) {
  const int n = reg.n();
  if (emitter_weights.size() != static_cast<std::size_t>(n)) {
    throw Error(ErrorKind::DimensionMismatch, "one weight per emitter required");
  }
  ComplexVector out(reg.size());
  const auto in = reg.amps();
  std::size_t stride = 1;
  for (int j = 0; j < n; ++j, stride *= 3) {
    const Complex to_plus = p.alpha() * emitter_weights[static_cast<std::size_t>(j)];
    const Complex to_minus = p.beta() * emitter_weights[static_cast<std::size_t>(j)];
    for (std::size_t idx = 0; idx < in.size(); ++idx) {
      if ((idx / stride) % 3 != 0 || in[idx] == Complex{}) continue;
      out[idx + stride] += to_plus * in[idx];
      out[idx + 2 * stride] += to_minus * in[idx];
    }
  }
  auto result = EmitterRegister::from_amplitudes(n, std::move(out));
  if (result.norm() == 0.0) {
    throw Error(ErrorKind::NoExcitedPopulation, "detection annihilated the register");
  }
  return result;
}

EmitterRegister apply_detection(const EmitterRegister& reg, const Polarizer& p) {
  const ComplexVector ones(static_cast<std::size_t>(reg.n()), Complex{1.0, 0.0});
  return apply_weighted_detection(reg, p, ones);
}

SymmetricState project_symmetric(const EmitterRegister& reg) {
  const int n = reg.n();
  const double total = reg.norm();
  if (total == 0.0) throw Error(ErrorKind::ZeroState, "register is zero");
  const auto amps = reg.amps();

  ComplexVector sums(static_cast<std::size_t>(n) + 1);
  for (std::size_t idx = 0; idx < amps.size(); ++idx) {
    std::size_t rest = idx;
    int minus = 0;
    bool excited = false;
    for (int j = 0; j < n; ++j, rest /= 3) {
      const auto digit = rest % 3;
      excited |= digit == 0;
      minus += digit == 2 ? 1 : 0;
    }
    if (excited) {
      if (std::abs(amps[idx]) > 1e-10 * total) {
        throw Error(ErrorKind::ResidualExcitation, "amplitude on ket " + reg.ket(idx));
      }
      continue;
    }
    sums[static_cast<std::size_t>(minus)] += amps[idx];
  }

  double kept = 0.0;
  for (int k = 0; k <= n; ++k) {
    auto& d = sums[static_cast<std::size_t>(k)];
    d /= std::sqrt(static_cast<double>(binomial(n, k)));
    kept += std::norm(d);
  }
  if (total * total - kept > 1e-10 * total * total) {
    throw Error(ErrorKind::AsymmetricResidue, "register is not permutation symmetric");
  }
  return SymmetricState(std::move(sums));
}

}  // namespace dicke
