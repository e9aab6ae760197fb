#include "dicke/synthesis.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dicke {

SynthesisPolynomial synthesis_polynomial(const SymmetricState& target) {
  const double nrm = target.norm();
  if (nrm == 0.0) throw Error(ErrorKind::ZeroTarget, "target state is zero");
  const int n = target.n();
  int degree = n;
  while (degree > 0 && std::abs(target[degree]) <= kDegreeTol * nrm) --degree;

  SynthesisPolynomial poly{n, degree, ComplexVector(static_cast<std::size_t>(degree) + 1)};
  const double top = static_cast<double>(binomial(n, degree));
  for (int k = 0; k <= degree; ++k) {
    const double sign = (degree - k) % 2 == 0 ? 1.0 : -1.0;
    poly.coefficients[static_cast<std::size_t>(k)] =
        sign * std::sqrt(static_cast<double>(binomial(n, k)) / top) * target[k];
  }
  return poly;
}

namespace {

Complex horner(std::span<const Complex> coeffs, Complex z) {
  Complex acc{0.0, 0.0};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Complex horner_derivative(std::span<const Complex> coeffs, Complex z) {
  Complex acc{0.0, 0.0};
  for (std::size_t k = coeffs.size() - 1; k >= 1; --k) {
    acc = acc * z + static_cast<double>(k) * coeffs[k];
  }
  return acc;
}

double l1(const Complex& z) { return std::abs(z.real()) + std::abs(z.imag()); }

// Parlett-Reinsch diagonal similarity scaling with powers of two, so the
// eigenvalues are unchanged but row/column norms are comparable.
void balance(Eigen::MatrixXcd& a) {
  constexpr double radix = 2.0;
  const Eigen::Index n = a.rows();
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double row = 0.0;
      double col = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        col += l1(a(j, i));
        row += l1(a(i, j));
      }
      if (col == 0.0 || row == 0.0) continue;
      double g = row / radix;
      double f = 1.0;
      const double s = col + row;
      while (col < g) {
        f *= radix;
        col *= radix * radix;
      }
      g = row * radix;
      while (col > g) {
        f /= radix;
        col /= radix * radix;
      }
      if ((col + row) / f < 0.95 * s) {
        done = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

}  // namespace

ComplexVector polynomial_roots(std::span<const Complex> coeffs) {
  if (coeffs.empty() || coeffs.back() == Complex{}) {
    throw Error(ErrorKind::RootFindingFailure, "leading coefficient is zero");
  }
  const auto degree = static_cast<Eigen::Index>(coeffs.size()) - 1;
  if (degree == 0) return {};

  // Companion matrix of the monic polynomial: ones on the subdiagonal,
  // -p_k/p_K in the last column.
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(degree, degree);
  for (Eigen::Index i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < degree; ++i) companion(i, degree - 1) = -coeffs[static_cast<std::size_t>(i)] / coeffs.back();
  balance(companion);

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::RootFindingFailure, "companion eigenvalue iteration did not converge");
  }

  ComplexVector roots(solver.eigenvalues().begin(), solver.eigenvalues().end());
  for (auto& r : roots) {
    for (int iter = 0; iter < 3; ++iter) {
      const Complex value = horner(coeffs, r);
      const Complex slope = horner_derivative(coeffs, r);
      if (value == Complex{} || slope == Complex{}) break;
      const Complex candidate = r - value / slope;
      if (!(std::abs(horner(coeffs, candidate)) < std::abs(value))) break;
      r = candidate;
    }
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag())) {
      throw Error(ErrorKind::RootFindingFailure, "non-finite root");
    }
  }
  return roots;
}

Polarizer polarizer_from_ratio(Complex ratio) { return Polarizer::make(ratio, 1.0); }

PolarizerConfig synthesize(const SymmetricState& target) {
  const auto poly = synthesis_polynomial(target);
  std::vector<Polarizer> polarizers;
  polarizers.reserve(static_cast<std::size_t>(poly.n));
  for (const auto& root : polynomial_roots(poly.coefficients)) polarizers.push_back(polarizer_from_ratio(root));
  while (static_cast<int>(polarizers.size()) < poly.n) polarizers.push_back(Polarizer::sigma_plus());
  return PolarizerConfig(std::move(polarizers));
}

// ---------------------------------------------------------------------------
// Named recipes

namespace {

void require_size(int n, int min) {
  if (n < min) throw Error(ErrorKind::InvalidArgument, "system size must be at least " + std::to_string(min));
}

}  // namespace

PolarizerConfig ghz_config(int n, double phi) {
  require_size(n, 2);
  const double pi = std::numbers::pi;
  const double offset = (n % 2 == 0 ? pi / (2.0 * n) : 0.0) + phi / (2.0 * n);
  std::vector<double> thetas;
  for (int k = 1; k <= n; ++k) thetas.push_back(offset + (k - 1) * pi / n);
  return PolarizerConfig::from_angles(thetas);
}

PolarizerConfig s_config(int n, double phi) {
  require_size(n, 1);
  const std::vector<double> thetas(static_cast<std::size_t>(n), phi / 2.0);
  return PolarizerConfig::from_angles(thetas);
}

PolarizerConfig w_config(int n, double phi, int sign) {
  require_size(n, 2);
  if (sign != 1 && sign != -1) throw Error(ErrorKind::InvalidArgument, "sign must be +1 or -1");
  std::vector<double> thetas(static_cast<std::size_t>(n - 1), phi / 2.0 + sign * std::numbers::pi / 2.0);
  thetas.push_back(phi / 2.0);
  return PolarizerConfig::from_angles(thetas);
}

PolarizerConfig w_config_literal(int n, double phi, int sign) {
  require_size(n, 2);
  if (sign != 1 && sign != -1) throw Error(ErrorKind::InvalidArgument, "sign must be +1 or -1");
  std::vector<double> thetas(static_cast<std::size_t>(n - 1), phi / 2.0);
  thetas.push_back(phi / 2.0 + sign * std::numbers::pi / 2.0);
  return PolarizerConfig::from_angles(thetas);
}

SymmetricState ghz_state(int n, double phi) {
  require_size(n, 1);
  ComplexVector d(static_cast<std::size_t>(n) + 1);
  d.front() = 1.0 / std::numbers::sqrt2;
  d.back() = std::polar(1.0 / std::numbers::sqrt2, phi);
  return SymmetricState(std::move(d));
}

SymmetricState s_state(int n, double phi) {
  require_size(n, 1);
  ComplexVector d(static_cast<std::size_t>(n) + 1);
  const double scale = std::pow(2.0, -0.5 * n);
  for (int k = 0; k <= n; ++k) {
    d[static_cast<std::size_t>(k)] = std::polar(scale * std::sqrt(static_cast<double>(binomial(n, k))), k * phi);
  }
  return SymmetricState(std::move(d));
}

SymmetricState w_state(int n, double phi) {
  require_size(n, 1);
  // A ket with k minuses collects (-1)^k e^{ik phi} (N - 2k) / 2^{N/2} from the
  // N positions of the single |1_phi>.
  ComplexVector d(static_cast<std::size_t>(n) + 1);
  const double scale = std::pow(2.0, -0.5 * n) / std::sqrt(static_cast<double>(n));
  for (int k = 0; k <= n; ++k) {
    const double sign = k % 2 == 0 ? 1.0 : -1.0;
    const double magnitude = sign * scale * (n - 2 * k) * std::sqrt(static_cast<double>(binomial(n, k)));
    d[static_cast<std::size_t>(k)] = std::polar(1.0, k * phi) * magnitude;
  }
  return SymmetricState(std::move(d));
}

}  // namespace dicke
