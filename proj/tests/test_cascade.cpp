#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "dicke/cascade.hpp"
#include "oracles.hpp"

using namespace dicke;

namespace {

constexpr double pi = std::numbers::pi;

SymmetricState oracle_forward(const PolarizerConfig& cfg) {
  auto reg = EmitterRegister::all_excited(cfg.size());
  for (const auto& p : cfg.polarizers()) reg = apply_detection(reg, p);
  return project_symmetric(reg).normalized();
}

}  // namespace

TEST_CASE("all sigma_plus gives |+,+,+>") {
  const PolarizerConfig cfg({Polarizer::sigma_plus(), Polarizer::sigma_plus(), Polarizer::sigma_plus()});
  const auto d = dicke_coefficients(cfg);
  CHECK(std::abs(d[0] - 1.0) < 1e-15);
  for (int k = 1; k <= 3; ++k) CHECK(std::abs(d[k]) == 0.0);
}

TEST_CASE("three linear polarizers a third of pi apart give GHZ_3") {
  const std::vector<double> thetas{0.0, pi / 3, 2 * pi / 3};
  const auto d = dicke_coefficients(PolarizerConfig::from_angles(thetas)).canonicalized();
  CHECK(d[0].real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(std::abs(d[1]) < 1e-15);
  CHECK(std::abs(d[2]) < 1e-15);
  CHECK(std::abs(d[3] - 1.0 / std::sqrt(2.0)) < 1e-14);
}

TEST_CASE("two generic polarizers match the register oracle") {
  const auto p1 = make_polarizer(Complex{0.4, -0.3}, Complex{0.1, 0.8});
  const auto p2 = make_polarizer(Complex{-0.7, 0.2}, Complex{0.5, 0.5});
  const PolarizerConfig cfg({p1, p2});
  // Unnormalized register gives 2*a1a2 on |++>, a1b2+a2b1 on |+-> and |-+>,
  // 2*b1b2 on |-->; Dicke: (2 a1a2, sqrt2 (a1b2+a2b1), 2 b1b2).
  const auto d = dicke_coefficients(cfg);
  const auto raw = unnormalized_dicke_coefficients(cfg);
  const Complex scale = 2.0;  // N! between the path sum and the subset convention
  auto reg = apply_detection(apply_detection(EmitterRegister::all_excited(2), p1), p2);
  const auto proj = project_symmetric(reg);
  CHECK(std::abs(proj[0] - 2.0 * p1.alpha() * p2.alpha()) < 1e-15);
  CHECK(std::abs(proj[1] - std::sqrt(2.0) * (p1.alpha() * p2.beta() + p2.alpha() * p1.beta())) < 1e-15);
  CHECK(std::abs(proj[2] - 2.0 * p1.beta() * p2.beta()) < 1e-15);
  for (int k = 0; k <= 2; ++k) CHECK(std::abs(proj[k] - scale * raw[k]) < 1e-15);
  CHECK(fidelity(d, proj) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("no unit-norm configuration annihilates the state") {
  // prod_i (alpha_i + beta_i z) is a product of nonzero polynomials.
  const PolarizerConfig opposite({Polarizer::sigma_plus(), Polarizer::sigma_minus()});
  const auto d = dicke_coefficients(opposite);
  CHECK(std::abs(std::abs(d[1]) - 1.0) < 1e-15);
}

TEST_CASE("pyramid structure for N = 3") {
  std::mt19937_64 rng(17);
  const auto cfg = oracle::random_config(rng, 3);
  const auto levels = build_pyramid(cfg);
  REQUIRE(levels.size() == 4);
  CHECK(levels[0].terms.size() == 1);
  CHECK(levels[0].terms.at("eee") == Complex(1.0, 0.0));

  // Level 1: three kets with one '+' (amplitude alpha_1), three with one '-'.
  CHECK(levels[1].terms.size() == 6);
  for (const auto& [ket, amp] : levels[1].terms) {
    CHECK(std::count(ket.begin(), ket.end(), 'e') == 2);
    const bool plus = ket.find('+') != std::string::npos;
    CHECK(amp == (plus ? cfg[0].alpha() : cfg[0].beta()));
  }
  CHECK(levels[2].terms.size() == 12);
  CHECK(levels[3].terms.size() == 8);
  for (std::size_t m = 0; m < levels.size(); ++m) {
    for (const auto& [ket, amp] : levels[m].terms) {
      CHECK(std::count(ket.begin(), ket.end(), 'e') == static_cast<long>(3 - m));
    }
  }

  // Final amplitudes equal the sum over detector-to-emitter assignments.
  const auto paths = oracle::path_sum_qubits(cfg);
  for (std::size_t x = 0; x < paths.size(); ++x) {
    std::string ket;
    for (int j = 0; j < 3; ++j) ket += ((x >> j) & 1U) ? '-' : '+';
    CHECK(std::abs(levels[3].terms.at(ket) - paths[x]) < 1e-14);
  }
  const Complex corner = cfg[0].alpha() * cfg[1].alpha() * cfg[2].alpha();
  CHECK(std::abs(levels[3].terms.at("+++") - 6.0 * corner) < 1e-14);

  const auto final_state = project_symmetric(pyramid_register(3, levels[3])).normalized();
  CHECK(fidelity(final_state, dicke_coefficients(cfg)) >= 1.0 - 1e-10);
}

TEST_CASE("pyramid for one emitter") {
  const auto p = make_polarizer(Complex{0.6, 0.0}, Complex{0.0, 0.8});
  const auto levels = build_pyramid(PolarizerConfig({p}));
  REQUIRE(levels.size() == 2);
  CHECK(levels[1].terms.at("+") == p.alpha());
  CHECK(levels[1].terms.at("-") == p.beta());
}

TEST_CASE("pyramid matches the register oracle level by level") {
  std::mt19937_64 rng(23);
  for (int n = 1; n <= 5; ++n) {
    const auto cfg = oracle::random_config(rng, n);
    const auto levels = build_pyramid(cfg);
    auto reg = EmitterRegister::all_excited(n);
    for (int m = 1; m <= n; ++m) {
      reg = apply_detection(reg, cfg[m - 1]);
      const auto from_pyramid = pyramid_register(n, levels[static_cast<std::size_t>(m)]);
      double diff = 0.0;
      for (std::size_t i = 0; i < reg.size(); ++i) diff = std::max(diff, std::abs(reg[i] - from_pyramid[i]));
      CHECK(diff < 1e-13);
    }
  }
}

TEST_CASE("pyramid exports") {
  const std::vector<double> thetas{0.0, pi / 2};
  const auto cfg = PolarizerConfig::from_angles(thetas);
  const auto levels = build_pyramid(cfg);
  const auto text = pyramid_text(levels);
  CHECK(text.find("level 0 (1 kets)") != std::string::npos);
  CHECK(text.find("|ee>") != std::string::npos);
  CHECK(text.find("level 2 (4 kets)") != std::string::npos);

  const auto csv = pyramid_edges_csv(cfg, levels);
  CHECK(csv.rfind("level,parent_ket,child_ket,amp_re,amp_im\n", 0) == 0);
  // Level 1: one parent, 2 emitters x 2 transitions; level 2: 4 parents x 1 x 2.
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 4 + 8);
  CHECK(csv.find("1,ee,+e,") != std::string::npos);
  CHECK(csv.find("2,+e,+-,") != std::string::npos);
}

TEST_CASE("path_count reports orderings and distinct monomials") {
  CHECK(path_count(3, "+++").distinct_products == 1);
  CHECK(path_count(3, "+++").orderings == 6);
  CHECK(path_count(3, "---").distinct_products == 1);
  CHECK(path_count(3, "++-").distinct_products == 3);
  CHECK(path_count(3, "+--").distinct_products == 3);
  CHECK(path_count(2, "+-").distinct_products == 2);
  CHECK(path_count(2, "+-").orderings == 2);
  CHECK(path_count(5, "+-+--").distinct_products == 10);
  CHECK_THROWS_AS(path_count(3, "+e-"), Error);
  CHECK_THROWS_AS(path_count(3, "++"), Error);
}

TEST_CASE("property: closed form equals the brute-force cascade") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 5;
    const auto cfg = oracle::random_config(rng, n);
    CHECK(fidelity(dicke_coefficients(cfg), oracle_forward(cfg)) >= 1.0 - 1e-10);
  }
}

TEST_CASE("property: polarizer order does not matter") {
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 6;
    const auto cfg = oracle::random_config(rng, n);
    std::vector<Polarizer> shuffled(cfg.polarizers().begin(), cfg.polarizers().end());
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(fidelity(dicke_coefficients(cfg), dicke_coefficients(PolarizerConfig(shuffled))) >= 1.0 - 1e-12);
  }
}

TEST_CASE("property: coefficients vanish beyond the number of beta / alpha factors") {
  std::mt19937_64 rng(107);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 6;
    const int with_beta = static_cast<int>(rng() % static_cast<unsigned>(n + 1));
    const int with_alpha = n - with_beta;
    // with_beta random polarizers and the rest sigma_plus: c_k = 0 for k > with_beta.
    std::vector<Polarizer> ps;
    for (int i = 0; i < with_beta; ++i) ps.push_back(oracle::random_polarizer(rng));
    for (int i = 0; i < with_alpha; ++i) ps.push_back(Polarizer::sigma_plus());
    std::shuffle(ps.begin(), ps.end(), rng);
    const auto d = dicke_coefficients(PolarizerConfig(ps));
    for (int k = with_beta + 1; k <= n; ++k) CHECK(std::abs(d[k]) == 0.0);

    // Mirror: sigma_minus factors force c_k = 0 for k < (number of sigma_minus).
    std::vector<Polarizer> qs;
    for (int i = 0; i < with_alpha; ++i) qs.push_back(oracle::random_polarizer(rng));
    for (int i = 0; i < with_beta; ++i) qs.push_back(Polarizer::sigma_minus());
    const auto e = dicke_coefficients(PolarizerConfig(qs));
    for (int k = 0; k < with_beta; ++k) CHECK(std::abs(e[k]) == 0.0);
  }
}
