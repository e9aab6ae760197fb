#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "dicke/synthesis.hpp"
#include "oracles.hpp"

using namespace dicke;

namespace {

constexpr double pi = std::numbers::pi;

SymmetricState from_qubits(int n, const ComplexVector& amps) {
  return SymmetricState(oracle::dicke_of_qubits(n, amps));
}

}  // namespace

TEST_CASE("degree-zero target needs only sigma_plus") {
  const SymmetricState plus({Complex{0.0, 1.0}, 0.0, 0.0, 0.0});
  const auto poly = synthesis_polynomial(plus);
  CHECK(poly.degree == 0);
  const auto cfg = synthesize(plus);
  REQUIRE(cfg.size() == 3);
  for (const auto& p : cfg.polarizers()) CHECK(same_orientation(p, Polarizer::sigma_plus()));
}

TEST_CASE("all-minus target gives all sigma_minus") {
  const SymmetricState minus({0.0, 0.0, 0.0, 0.0, 1.0});
  const auto cfg = synthesize(minus);
  REQUIRE(cfg.size() == 4);
  for (const auto& p : cfg.polarizers()) CHECK(same_orientation(p, Polarizer::sigma_minus()));
}

TEST_CASE("GHZ_3 synthesizes to three linear polarizers a third of pi apart") {
  const auto cfg = synthesize(ghz_state(3, 0.0));
  std::vector<double> thetas;
  for (const auto& p : cfg.polarizers()) {
    // Linear polarizer theta has alpha/beta = e^{-2 i theta}.
    CHECK(std::abs(p.alpha()) == doctest::Approx(std::abs(p.beta())).epsilon(1e-12));
    double theta = -std::arg(p.alpha() / p.beta()) / 2.0;
    if (theta < -1e-9) theta += pi;
    thetas.push_back(theta);
  }
  std::sort(thetas.begin(), thetas.end());
  CHECK(thetas[0] == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(thetas[1] == doctest::Approx(pi / 3).epsilon(1e-10));
  CHECK(thetas[2] == doctest::Approx(2 * pi / 3).epsilon(1e-10));
}

TEST_CASE("partial degree: trailing zeros become sigma_plus") {
  std::mt19937_64 rng(7);
  for (int n = 2; n <= 7; ++n) {
    for (int degree = 0; degree < n; ++degree) {
      const auto t = oracle::random_target(rng, n);
      ComplexVector d(t.coeffs().begin(), t.coeffs().end());
      for (int k = degree + 1; k <= n; ++k) d[static_cast<std::size_t>(k)] = 0.0;
      const SymmetricState target(d);
      const auto cfg = synthesize(target);
      int plus = 0;
      for (const auto& p : cfg.polarizers()) plus += same_orientation(p, Polarizer::sigma_plus(), 1e-12) ? 1 : 0;
      CHECK(plus >= n - degree);
      CHECK(fidelity(dicke_coefficients(cfg), target) >= 1.0 - 1e-10);
    }
  }
}

TEST_CASE("polynomial roots") {
  // (z - 1)(z - 2i)(z + 3) = z^3 + (2 - 2i) z^2 + (-3 - 4i) z + 6i
  const ComplexVector coeffs{Complex{0, 6}, Complex{-3, -4}, Complex{2, -2}, 1.0};
  auto roots = polynomial_roots(coeffs);
  REQUIRE(roots.size() == 3);
  for (const Complex expected : {Complex{1, 0}, Complex{0, 2}, Complex{-3, 0}}) {
    const auto it = std::min_element(roots.begin(), roots.end(), [&](Complex a, Complex b) {
      return std::abs(a - expected) < std::abs(b - expected);
    });
    CHECK(std::abs(*it - expected) < 1e-12);
  }
  const ComplexVector no_lead{1.0, 0.0};
  CHECK_THROWS_AS(polynomial_roots(no_lead), Error);
}

TEST_CASE("zero target is rejected") {
  CHECK_THROWS_AS(synthesize(SymmetricState(ComplexVector(4))), Error);
}

TEST_CASE("named recipes reproduce the target states") {
  for (int n = 2; n <= 6; ++n) {
    for (const double phi : {0.0, pi / 4, pi}) {
      CAPTURE(n);
      CAPTURE(phi);
      const auto ghz = from_qubits(n, oracle::ghz_qubits(n, phi));
      const auto s = from_qubits(n, oracle::s_qubits(n, phi));
      const auto w = from_qubits(n, oracle::w_qubits(n, phi));
      CHECK(fidelity(dicke_coefficients(ghz_config(n, phi)), ghz) >= 1.0 - 1e-10);
      CHECK(fidelity(dicke_coefficients(s_config(n, phi)), s) >= 1.0 - 1e-10);
      CHECK(fidelity(dicke_coefficients(w_config(n, phi)), w) >= 1.0 - 1e-10);
      CHECK(fidelity(dicke_coefficients(w_config(n, phi, -1)), w) >= 1.0 - 1e-10);
      CHECK(fidelity(ghz_state(n, phi), ghz) >= 1.0 - 1e-12);
      CHECK(fidelity(s_state(n, phi), s) >= 1.0 - 1e-12);
      CHECK(fidelity(w_state(n, phi), w) >= 1.0 - 1e-12);
    }
  }
}

TEST_CASE("named-state spot values") {
  // Relative phase survives: (|++> - |-->)/sqrt2.
  const auto g = dicke_coefficients(ghz_config(2, pi)).canonicalized();
  CHECK(std::abs(g[0] - 1.0 / std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(g[1]) < 1e-12);
  CHECK(std::abs(g[2] + 1.0 / std::sqrt(2.0)) < 1e-12);

  // Even N carries the extra pi/(2N) offset.
  const auto four = ghz_config(4, 0.0);
  for (int k = 0; k < 4; ++k) {
    const LinearAngle expected(pi / 8 + k * pi / 4);
    CHECK(same_orientation(four[k], expected.polarizer()));
  }

  const auto s = s_state(4, pi / 2);
  for (int k = 0; k <= 4; ++k) {
    const Complex expected = std::sqrt(static_cast<double>(binomial(4, k))) * std::polar(1.0, k * pi / 2) / 4.0;
    CHECK(std::abs(s[k] - expected) < 1e-12);
  }
}

TEST_CASE("printed W angles give the exchanged W state") {
  for (int n = 3; n <= 6; ++n) {
    const double phi = 0.3;
    // One |0_phi> among |1_phi>s.
    ComplexVector swapped(std::size_t{1} << n);
    for (int j = 0; j < n; ++j) {
      std::vector<std::array<Complex, 2>> f(static_cast<std::size_t>(n), oracle::one_phi(phi));
      f[static_cast<std::size_t>(j)] = oracle::zero_phi(phi);
      const auto term = oracle::tensor(f);
      for (std::size_t x = 0; x < swapped.size(); ++x) swapped[x] += term[x];
    }
    const auto literal = dicke_coefficients(w_config_literal(n, phi));
    CHECK(fidelity(literal, from_qubits(n, swapped)) >= 1.0 - 1e-10);
    CHECK(fidelity(literal, w_state(n, phi)) < 0.5);
  }
}

TEST_CASE("property: synthesis round trip on random targets") {
  std::mt19937_64 rng(211);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + trial % 7;
    const auto target = oracle::random_target(rng, n);
    const auto cfg = synthesize(target);
    REQUIRE(cfg.size() == n);
    CHECK(fidelity(dicke_coefficients(cfg), target) >= 1.0 - 1e-8);
  }
}

TEST_CASE("property: synthesis ignores the target's global phase") {
  std::mt19937_64 rng(223);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 5;
    const auto target = oracle::random_target(rng, n);
    ComplexVector rotated(target.coeffs().begin(), target.coeffs().end());
    for (auto& c : rotated) c *= std::polar(1.0, 1.234);
    const auto a = synthesize(target);
    const auto b = synthesize(SymmetricState(rotated));
    CHECK(fidelity(dicke_coefficients(a), dicke_coefficients(b)) >= 1.0 - 1e-10);
  }
}

TEST_CASE("property: synthesize after forward recovers the orientations") {
  std::mt19937_64 rng(227);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 5;
    const auto cfg = oracle::random_config(rng, n);
    const auto again = synthesize(dicke_coefficients(cfg));
    // Every original orientation appears among the synthesized ones (as a multiset).
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    int matched = 0;
    for (const auto& p : cfg.polarizers()) {
      for (int j = 0; j < n; ++j) {
        if (!used[static_cast<std::size_t>(j)] && orientation_separation(p, again[j]) < 1e-6) {
          used[static_cast<std::size_t>(j)] = true;
          ++matched;
          break;
        }
      }
    }
    CHECK(matched == n);
  }
}
