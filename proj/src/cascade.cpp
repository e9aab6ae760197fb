#include "dicke/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>
#include <sstream>

namespace dicke {

PolarizerConfig::PolarizerConfig(std::vector<Polarizer> polarizers) : polarizers_(std::move(polarizers)) {
  if (polarizers_.empty()) throw Error(ErrorKind::InvalidArgument, "polarizer configuration is empty");
}

PolarizerConfig PolarizerConfig::from_angles(std::span<const double> thetas) {
  std::vector<Polarizer> ps;
  ps.reserve(thetas.size());
  for (double t : thetas) ps.push_back(LinearAngle(t).polarizer());
  return PolarizerConfig(std::move(ps));
}

ComplexVector product_coefficients(const PolarizerConfig& cfg) {
  // e[k] accumulates the coefficient of z^k in the running product.
  ComplexVector e(static_cast<std::size_t>(cfg.size()) + 1);
  e[0] = 1.0;
  int degree = 0;
  for (const auto& p : cfg.polarizers()) {
    ++degree;
    for (int k = degree; k >= 1; --k) {
      e[static_cast<std::size_t>(k)] = e[static_cast<std::size_t>(k)] * p.alpha() + e[static_cast<std::size_t>(k - 1)] * p.beta();
    }
    e[0] *= p.alpha();
  }
  return e;
}

SymmetricState unnormalized_dicke_coefficients(const PolarizerConfig& cfg) {
  auto c = product_coefficients(cfg);
  const int n = cfg.size();
  for (int k = 0; k <= n; ++k) c[static_cast<std::size_t>(k)] /= std::sqrt(static_cast<double>(binomial(n, k)));
  return SymmetricState(std::move(c));
}

SymmetricState dicke_coefficients(const PolarizerConfig& cfg) {
  const auto raw = unnormalized_dicke_coefficients(cfg);
  if (raw.norm() == 0.0) throw Error(ErrorKind::ZeroState, "polarizer configuration annihilates the state");
  return raw.normalized();
}

// ---------------------------------------------------------------------------
// Pyramid

std::vector<PyramidLevel> build_pyramid(const PolarizerConfig& cfg) {
  const int n = cfg.size();
  if (n > kMaxRegisterEmitters) throw Error(ErrorKind::TooLarge, "pyramid limited to register sizes");
  std::vector<PyramidLevel> levels;
  levels.push_back({0, {{std::string(static_cast<std::size_t>(n), 'e'), Complex{1.0, 0.0}}}});

  for (int m = 1; m <= n; ++m) {
    const auto& p = cfg[m - 1];
    PyramidLevel next{m, {}};
    for (const auto& [ket, amp] : levels.back().terms) {
      for (std::size_t j = 0; j < ket.size(); ++j) {
        if (ket[j] != 'e') continue;
        std::string child = ket;
        if (p.alpha() != Complex{}) {
          child[j] = '+';
          next.terms[child] += amp * p.alpha();
        }
        if (p.beta() != Complex{}) {
          child[j] = '-';
          next.terms[child] += amp * p.beta();
        }
      }
    }
    levels.push_back(std::move(next));
  }

  double final_norm = 0.0;
  for (const auto& [ket, amp] : levels.back().terms) final_norm += std::norm(amp);
  if (final_norm == 0.0) throw Error(ErrorKind::ZeroState, "all quantum paths cancel");
  return levels;
}

EmitterRegister pyramid_register(int n, const PyramidLevel& level) {
  auto reg = EmitterRegister::all_excited(n);
  ComplexVector amps(reg.size());
  for (const auto& [ket, amp] : level.terms) {
    if (static_cast<int>(ket.size()) != n) throw Error(ErrorKind::InvalidKet, "ket length differs from n");
    amps[EmitterRegister::index_of(ket)] = amp;
  }
  return EmitterRegister::from_amplitudes(n, std::move(amps));
}

PathCount path_count(int n, std::string_view ket) {
  if (n < 1 || static_cast<int>(ket.size()) != n) throw Error(ErrorKind::InvalidKet, "ket length must equal n");
  if (n > 10) throw Error(ErrorKind::TooLarge, "path enumeration limited to n <= 10");
  for (char c : ket) {
    if (c != '+' && c != '-') throw Error(ErrorKind::InvalidKet, "final kets contain only + and -");
  }
  // assignment[i] is the emitter whose photon reaches detector i. Detector i
  // contributes beta_i when that emitter ends in |->, so a bijection's
  // monomial is identified by its set of beta-detectors.
  std::vector<int> assignment(static_cast<std::size_t>(n));
  std::iota(assignment.begin(), assignment.end(), 0);
  PathCount count;
  std::set<std::uint32_t> monomials;
  do {
    std::uint32_t beta_detectors = 0;
    for (int i = 0; i < n; ++i) {
      if (ket[static_cast<std::size_t>(assignment[static_cast<std::size_t>(i)])] == '-') beta_detectors |= 1u << i;
    }
    monomials.insert(beta_detectors);
    ++count.orderings;
  } while (std::next_permutation(assignment.begin(), assignment.end()));
  count.distinct_products = monomials.size();
  return count;
}

namespace {

std::string format_complex(Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.15g%+.15gi", z.real(), z.imag());
  return buf;
}

}  // namespace

std::string pyramid_text(const std::vector<PyramidLevel>& levels) {
  std::ostringstream out;
  for (const auto& level : levels) {
    out << "level " << level.step << " (" << level.terms.size() << " kets)\n";
    for (const auto& [ket, amp] : level.terms) {
      out << std::string(static_cast<std::size_t>(2 * level.step + 2), ' ') << '|' << ket << ">  " << format_complex(amp)
          << '\n';
    }
  }
  return out.str();
}

std::string pyramid_edges_csv(const PolarizerConfig& cfg, const std::vector<PyramidLevel>& levels) {
  std::ostringstream out;
  out << "level,parent_ket,child_ket,amp_re,amp_im\n";
  char buf[64];
  for (std::size_t m = 1; m < levels.size(); ++m) {
    const auto& p = cfg[static_cast<int>(m) - 1];
    for (const auto& [ket, amp] : levels[m - 1].terms) {
      for (std::size_t j = 0; j < ket.size(); ++j) {
        if (ket[j] != 'e') continue;
        for (const auto& [symbol, coeff] : {std::pair{'+', p.alpha()}, std::pair{'-', p.beta()}}) {
          if (coeff == Complex{}) continue;
          std::string child = ket;
          child[j] = symbol;
          out << m << ',' << ket << ',' << child << ',';
          std::snprintf(buf, sizeof buf, "%.15g,%.15g", coeff.real(), coeff.imag());
          out << buf << '\n';
        }
      }
    }
  }
  return out.str();
}

}  // namespace dicke
