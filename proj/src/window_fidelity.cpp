#include "dicke/window_fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <random>
#include <thread>

namespace dicke {

namespace {

constexpr std::uint64_t kBlockSize = 2048;

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Vec3 scaled(const Vec3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }

Vec3 add(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }

bool finite(const Vec3& a) { return std::isfinite(a[0]) && std::isfinite(a[1]) && std::isfinite(a[2]); }

Vec3 unit(const Vec3& a) {
  const double n = std::sqrt(dot(a, a));
  if (!(n > 0.0) || !std::isfinite(n)) throw Error(ErrorKind::InvalidArgument, "axis must be a nonzero finite vector");
  return scaled(a, 1.0 / n);
}

// Rodrigues rotation of v about the unit axis k.
Vec3 rotate(const Vec3& v, const Vec3& k, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return add(add(scaled(v, c), scaled(cross(k, v), s)), scaled(k, dot(k, v) * (1.0 - c)));
}

// Two unit vectors spanning the plane normal to axis.
std::pair<Vec3, Vec3> transverse_basis(const Vec3& axis) {
  const Vec3 a = unit(axis);
  const Vec3 helper = std::abs(a[0]) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
  const Vec3 u = unit(cross(a, helper));
  return {u, cross(a, u)};
}

struct BlockStats {
  std::uint64_t count = 0;
  std::uint64_t excluded = 0;
  double mean = 0.0;
  double m2 = 0.0;  // sum of squared deviations

  void push(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void merge(const BlockStats& other) {
    excluded += other.excluded;
    if (other.count == 0) return;
    const auto total = count + other.count;
    const double delta = other.mean - mean;
    mean += delta * static_cast<double>(other.count) / static_cast<double>(total);
    m2 += other.m2 + delta * delta * static_cast<double>(count) * static_cast<double>(other.count) /
                         static_cast<double>(total);
    count = total;
  }
};

}  // namespace

void DetectionGeometry::validate(int n) const {
  if (static_cast<int>(emitter_positions.size()) != n) {
    throw Error(ErrorKind::InvalidArgument, "geometry needs one emitter position per emitter");
  }
  if (static_cast<int>(detector_directions.size()) != n) {
    throw Error(ErrorKind::InvalidArgument, "geometry needs one detector direction per polarizer");
  }
  if (!(wavelength > 0.0) || !std::isfinite(wavelength)) throw Error(ErrorKind::InvalidArgument, "wavelength must be > 0");
  if (!(window_halfangle >= 0.0) || !std::isfinite(window_halfangle)) {
    throw Error(ErrorKind::InvalidArgument, "window half-angle must be >= 0");
  }
  if (!(transverse_sigma >= 0.0) || !std::isfinite(transverse_sigma)) {
    throw Error(ErrorKind::InvalidArgument, "transverse sigma must be >= 0");
  }
  for (const auto& r : emitter_positions) {
    if (!finite(r)) throw Error(ErrorKind::InvalidArgument, "emitter positions must be finite");
  }
  for (const auto& d : detector_directions) {
    if (!finite(d) || std::abs(std::sqrt(dot(d, d)) - 1.0) > 1e-9) {
      throw Error(ErrorKind::InvalidArgument, "detector directions must be unit vectors");
    }
  }
  unit(emitter_axis);
  unit(azimuth_axis);
}

DetectionGeometry linear_trap_geometry(int n, double spacing, double transverse_sigma, double window_fullwidth,
                                       double wavelength) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "need at least one emitter");
  if (!(spacing > 0.0)) throw Error(ErrorKind::InvalidArgument, "spacing must be > 0");
  DetectionGeometry g;
  g.transverse_sigma = transverse_sigma;
  g.wavelength = wavelength;
  g.window_halfangle = window_fullwidth / 2.0;
  for (int j = 0; j < n; ++j) g.emitter_positions.push_back({j * spacing, 0.0, 0.0});
  for (int i = 0; i < n; ++i) {
    // m = 0, 1, -1, 2, -2, ...
    const int m = (i + 1) / 2 * (i % 2 == 1 ? 1 : -1);
    const double c = m * wavelength / spacing;
    if (std::abs(c) > 1.0) throw Error(ErrorKind::InvalidArgument, "too many detectors for this spacing/wavelength");
    const double phi = std::acos(c);
    g.detector_directions.push_back({std::cos(phi), std::sin(phi), 0.0});
  }
  return g;
}

PositionalDetection positional_detection_operator(const Polarizer& p, const Vec3& direction,
                                                  std::span<const Vec3> positions, double wavelength) {
  const double k = 2.0 * std::numbers::pi / wavelength;
  PositionalDetection op{p, {}};
  op.emitter_weights.reserve(positions.size());
  for (const auto& r : positions) op.emitter_weights.push_back(std::polar(1.0, k * dot(r, direction)));
  return op;
}

double fidelity_to_symmetric(const EmitterRegister& reg, const SymmetricState& target) {
  const int n = reg.n();
  if (target.n() != n) throw Error(ErrorKind::DimensionMismatch, "target size differs from register");
  const auto qubits = target.qubit_amplitudes();
  const auto amps = reg.amps();
  Complex overlap{0.0, 0.0};
  double reg_norm2 = 0.0;
  for (std::size_t idx = 0; idx < amps.size(); ++idx) {
    if (amps[idx] == Complex{}) continue;
    std::size_t rest = idx;
    std::size_t qubit_index = 0;
    bool excited = false;
    for (int j = 0; j < n; ++j, rest /= 3) {
      const auto digit = rest % 3;
      excited |= digit == 0;
      if (digit == 2) qubit_index |= std::size_t{1} << j;
    }
    if (excited) throw Error(ErrorKind::ResidualExcitation, "register still holds excited population");
    reg_norm2 += std::norm(amps[idx]);
    overlap += std::conj(qubits[qubit_index]) * amps[idx];
  }
  const double target_norm2 = target.norm() * target.norm();
  if (reg_norm2 == 0.0 || target_norm2 == 0.0) throw Error(ErrorKind::ZeroState, "fidelity with the zero state");
  return std::clamp(std::norm(overlap) / (reg_norm2 * target_norm2), 0.0, 1.0);
}

FidelityEstimate estimate_fidelity(const PolarizerConfig& cfg, const DetectionGeometry& geometry,
                                   const SymmetricState& target, std::uint64_t samples, std::uint64_t seed,
                                   unsigned workers) {
  const int n = cfg.size();
  if (samples < 1) throw Error(ErrorKind::InvalidArgument, "need at least one sample");
  if (target.n() != n) throw Error(ErrorKind::DimensionMismatch, "target size differs from configuration");
  geometry.validate(n);

  const auto [t1, t2] = transverse_basis(geometry.emitter_axis);
  const Vec3 azimuth_axis = unit(geometry.azimuth_axis);

  auto run_block = [&, t1 = t1, t2 = t2](std::uint64_t block) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> jitter(0.0, 1.0);
    std::uniform_real_distribution<double> window(-1.0, 1.0);

    const std::uint64_t begin = block * kBlockSize;
    const std::uint64_t end = std::min(samples, begin + kBlockSize);
    BlockStats stats;
    std::vector<Vec3> positions(static_cast<std::size_t>(n));
    std::vector<double> deltas(static_cast<std::size_t>(n));
    for (std::uint64_t s = begin; s < end; ++s) {
      for (int j = 0; j < n; ++j) {
        const double a = geometry.transverse_sigma * jitter(rng);
        const double b = geometry.transverse_sigma * jitter(rng);
        positions[static_cast<std::size_t>(j)] =
            add(geometry.emitter_positions[static_cast<std::size_t>(j)], add(scaled(t1, a), scaled(t2, b)));
      }
      for (auto& d : deltas) d = geometry.window_halfangle * window(rng);

      auto reg = EmitterRegister::all_excited(n);
      bool annihilated = false;
      for (int i = 0; i < n && !annihilated; ++i) {
        const Vec3 direction = rotate(geometry.detector_directions[static_cast<std::size_t>(i)], azimuth_axis,
                                      deltas[static_cast<std::size_t>(i)]);
        try {
          reg = positional_detection_operator(cfg[i], direction, positions, geometry.wavelength).apply(reg);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::NoExcitedPopulation) throw;
          annihilated = true;
        }
      }
      if (annihilated) {
        ++stats.excluded;
        continue;
      }
      stats.push(fidelity_to_symmetric(reg, target));
    }
    return stats;
  };

  const std::uint64_t blocks = (samples + kBlockSize - 1) / kBlockSize;
  if (workers == 0) workers = std::max(1U, std::thread::hardware_concurrency());
  std::vector<BlockStats> results(static_cast<std::size_t>(blocks));
  for (std::uint64_t first = 0; first < blocks; first += workers) {
    std::vector<std::future<BlockStats>> pending;
    const std::uint64_t last = std::min(blocks, first + workers);
    for (std::uint64_t b = first; b < last; ++b) pending.push_back(std::async(std::launch::async, run_block, b));
    for (std::uint64_t b = first; b < last; ++b) results[static_cast<std::size_t>(b)] = pending[static_cast<std::size_t>(b - first)].get();
  }

  BlockStats total;
  for (const auto& r : results) total.merge(r);
  FidelityEstimate estimate;
  estimate.sample_count = total.count;
  estimate.excluded_count = total.excluded;
  estimate.mean_fidelity = total.mean;
  if (total.count > 1) {
    const double variance = total.m2 / static_cast<double>(total.count - 1);
    estimate.standard_error = std::sqrt(variance / static_cast<double>(total.count));
  }
  return estimate;
}

}  // namespace dicke
