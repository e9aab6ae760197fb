#include "dicke/entanglement.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace dicke {

std::string_view to_string(EntanglementClass c) noexcept {
  switch (c) {
    case EntanglementClass::S: return "S";
    case EntanglementClass::W: return "W";
    case EntanglementClass::GHZ: return "GHZ";
  }
  return "?";
}

ThreeQubitState three_qubit_state(const SymmetricState& state) {
  if (state.n() != 3) throw Error(ErrorKind::WrongArity, "three-qubit state required");
  const auto amps = state.normalized().qubit_amplitudes();
  ThreeQubitState psi;
  std::copy(amps.begin(), amps.end(), psi.begin());
  return psi;
}

double tangle_closed_form(const PolarizerConfig& cfg) {
  if (cfg.size() != 3) throw Error(ErrorKind::WrongArity, "closed-form tangle needs exactly 3 polarizers");
  const double raw_norm = unnormalized_dicke_coefficients(cfg).norm();
  if (raw_norm == 0.0) throw Error(ErrorKind::ZeroState, "configuration annihilates the state");
  const double inv = 1.0 / raw_norm;
  double brackets = 1.0;
  for (auto [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
    const double s = orientation_separation(cfg[i], cfg[j]);
    brackets *= s * s;
  }
  const double tau = 4.0 / 27.0 * inv * inv * inv * inv * brackets;
  return std::clamp(tau, 0.0, 1.0);
}

double tangle_hyperdeterminant(const ThreeQubitState& psi) {
  auto a = [&](int i, int j, int k) { return psi[static_cast<std::size_t>(i + 2 * j + 4 * k)]; };
  const Complex d1 = a(0, 0, 0) * a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 1) + a(0, 0, 1) * a(0, 0, 1) * a(1, 1, 0) * a(1, 1, 0) +
                     a(0, 1, 0) * a(0, 1, 0) * a(1, 0, 1) * a(1, 0, 1) + a(1, 0, 0) * a(1, 0, 0) * a(0, 1, 1) * a(0, 1, 1);
  const Complex d2 = a(0, 0, 0) * a(1, 1, 1) * a(0, 1, 1) * a(1, 0, 0) + a(0, 0, 0) * a(1, 1, 1) * a(1, 0, 1) * a(0, 1, 0) +
                     a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 0) * a(0, 0, 1) + a(0, 1, 1) * a(1, 0, 0) * a(1, 0, 1) * a(0, 1, 0) +
                     a(0, 1, 1) * a(1, 0, 0) * a(1, 1, 0) * a(0, 0, 1) + a(1, 0, 1) * a(0, 1, 0) * a(1, 1, 0) * a(0, 0, 1);
  const Complex d3 = a(0, 0, 0) * a(1, 1, 0) * a(1, 0, 1) * a(0, 1, 1) + a(1, 1, 1) * a(0, 0, 1) * a(0, 1, 0) * a(1, 0, 0);
  const double tau = 4.0 * std::abs(d1 - 2.0 * d2 + 4.0 * d3);
  return std::clamp(tau, 0.0, 1.0);
}

double tangle_hyperdeterminant(const SymmetricState& state) {
  return tangle_hyperdeterminant(three_qubit_state(state));
}

double single_qubit_entropy(const ThreeQubitState& psi, int qubit) {
  if (qubit < 0 || qubit > 2) throw Error(ErrorKind::IndexOutOfRange, "qubit index must be 0..2");
  const std::size_t bit = std::size_t{1} << qubit;
  double p0 = 0.0;
  double p1 = 0.0;
  Complex coherence{0.0, 0.0};
  for (std::size_t x = 0; x < psi.size(); ++x) {
    if (x & bit) {
      p1 += std::norm(psi[x]);
    } else {
      p0 += std::norm(psi[x]);
      coherence += psi[x] * std::conj(psi[x | bit]);
    }
  }
  const double trace = p0 + p1;
  const double spread = std::sqrt((p0 - p1) * (p0 - p1) + 4.0 * std::norm(coherence)) / trace;
  double entropy = 0.0;
  for (double lambda : {0.5 * (1.0 + spread), 0.5 * (1.0 - spread)}) {
    if (lambda > 0.0) entropy -= lambda * std::log2(lambda);
  }
  return std::clamp(entropy, 0.0, 1.0);
}

double pair_concurrence(const ThreeQubitState& psi, int i, int j) {
  if (i < 0 || i > 2 || j < 0 || j > 2 || i == j) {
    throw Error(ErrorKind::IndexOutOfRange, "pair indices must be two distinct values in 0..2");
  }
  const int c = 3 - i - j;
  // rho_ij = sum_v |psi_v><psi_v| with psi_v the (unnormalized) pair state for
  // the third qubit in v. The Wootters values are the singular values of
  // M_vw = psi_v^T (sigma_y x sigma_y) psi_w.
  std::array<std::array<Complex, 4>, 2> branch{};
  for (std::size_t x = 0; x < psi.size(); ++x) {
    const auto bi = (x >> i) & 1U;
    const auto bj = (x >> j) & 1U;
    const auto bc = (x >> c) & 1U;
    branch[bc][2 * bi + bj] = psi[x];
  }
  auto flip_overlap = [](const std::array<Complex, 4>& u, const std::array<Complex, 4>& v) {
    return -u[0] * v[3] + u[1] * v[2] + u[2] * v[1] - u[3] * v[0];
  };
  Eigen::Matrix2cd m;
  for (int v = 0; v < 2; ++v) {
    for (int w = 0; w < 2; ++w) m(v, w) = flip_overlap(branch[static_cast<std::size_t>(v)], branch[static_cast<std::size_t>(w)]);
  }
  double norm2 = 0.0;
  for (const auto& a : psi) norm2 += std::norm(a);
  const Eigen::Vector2d s = Eigen::JacobiSVD<Eigen::Matrix2cd>(m).singularValues();
  return std::clamp((s(0) - s(1)) / norm2, 0.0, 1.0);
}

EntanglementReport entanglement_report(const ThreeQubitState& psi) {
  EntanglementReport report;
  report.tangle = tangle_hyperdeterminant(psi);
  for (int q = 0; q < 3; ++q) report.entropies[static_cast<std::size_t>(q)] = single_qubit_entropy(psi, q);
  report.pair_concurrences = {pair_concurrence(psi, 0, 1), pair_concurrence(psi, 0, 2), pair_concurrence(psi, 1, 2)};
  if (report.tangle > kClassTol) {
    report.inferred_class = EntanglementClass::GHZ;
  } else if (std::any_of(report.entropies.begin(), report.entropies.end(), [](double s) { return s > kClassTol; })) {
    report.inferred_class = EntanglementClass::W;
  } else {
    report.inferred_class = EntanglementClass::S;
  }
  return report;
}

EntanglementClass classify_from_state(const ThreeQubitState& psi) { return entanglement_report(psi).inferred_class; }

int count_distinct_orientations(std::span<const Polarizer> polarizers, double tol) {
  std::vector<Polarizer> representatives;
  for (const auto& p : polarizers) {
    const bool seen = std::any_of(representatives.begin(), representatives.end(),
                                  [&](const Polarizer& r) { return same_orientation(r, p, tol); });
    if (!seen) representatives.push_back(p);
  }
  return static_cast<int>(representatives.size());
}

ClassPrediction classify_from_config(const PolarizerConfig& cfg) {
  if (cfg.size() != 3) throw Error(ErrorKind::WrongArity, "classification needs exactly 3 polarizers");
  const int distinct = count_distinct_orientations(cfg.polarizers());
  constexpr std::array classes{EntanglementClass::S, EntanglementClass::W, EntanglementClass::GHZ};
  return {distinct, classes[static_cast<std::size_t>(distinct - 1)]};
}

}  // namespace dicke
