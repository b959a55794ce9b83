#include "qst/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

namespace qst {

namespace {

constexpr double kCollisionTol = 1e-12;

// Per-mode parity weights w_k^pm = (g^2/N)(1 +- cos(k L)), aggregated over
// modes sharing the same energy.  A factor 1 +- cos(k L) below 1e-12 is an
// exact zero of the coupling (k L a multiple of pi up to rounding) and the
// mode is dropped from that parity sector.
struct ParitySector {
  std::vector<double> energies;  // distinct coupled energies, ascending
  std::vector<double> weights;   // aggregated weights, same order

  double value(double omega, double omega_offset) const {
    double acc = omega - omega_offset;
    for (std::size_t i = 0; i < energies.size(); ++i) {
      acc -= weights[i] / (omega - energies[i]);
    }
    return acc;
  }

  double derivative(double omega) const {
    double acc = 1.0;
    for (std::size_t i = 0; i < energies.size(); ++i) {
      const double diff = omega - energies[i];
      acc += weights[i] / (diff * diff);
    }
    return acc;
  }
};

ParitySector build_sector(const ModelParams& params, Parity parity) {
  const ModeGrid grid = mode_grid(params);
  const double s = parity == Parity::plus ? 1.0 : -1.0;
  const double norm = params.coupling * params.coupling / params.n_modes;
  std::vector<std::pair<double, double>> pairs;
  for (int i = 0; i < params.n_modes; ++i) {
    const double factor = 1.0 + s * std::cos(grid.wavenumbers[i] * params.distance);
    if (factor < 1e-12) continue;
    pairs.emplace_back(grid.energies[i], norm * factor);
  }
  std::sort(pairs.begin(), pairs.end());
  // Collapse the degenerate +-k energies, which agree to a few ulps; keep the
  // exact first value rather than a rounded one so the pole positions stay
  // accurate to machine precision.
  ParitySector sector;
  for (const auto& [e, w] : pairs) {
    if (!sector.energies.empty() && e - sector.energies.back() < 1e-12) {
      sector.weights.back() += w;
    } else {
      sector.energies.push_back(e);
      sector.weights.push_back(w);
    }
  }
  return sector;
}

void check_collision(double omega, const ModeGrid& grid) {
  for (double e : grid.energies) {
    if (std::abs(omega - e) < kCollisionTol) {
      std::ostringstream msg;
      msg << "omega = " << omega << " collides with channel energy " << e;
      throw pole_collision(msg.str(), e);
    }
  }
}

}  // namespace

std::complex<double> lambda_sum(int d, std::complex<double> omega,
                                const ModelParams& params) {
  params.validate();
  const ModeGrid grid = mode_grid(params);
  if (omega.imag() == 0.0) {
    check_collision(omega.real(), grid);
  }
  std::complex<double> acc = 0.0;
  for (int i = 0; i < params.n_modes; ++i) {
    const double kd = grid.wavenumbers[i] * d;
    const std::complex<double> phase(std::cos(kd), std::sin(kd));
    acc += phase / (omega - grid.energies[i]);
  }
  return acc * (params.coupling * params.coupling / static_cast<double>(params.n_modes));
}

double lambda_sum(int d, double omega, const ModelParams& params) {
  params.validate();
  const ModeGrid grid = mode_grid(params);
  check_collision(omega, grid);
  // Imaginary parts cancel pairwise (k <-> 2pi - k); sum the cosine part only.
  double acc = 0.0;
  for (int i = 0; i < params.n_modes; ++i) {
    acc += std::cos(grid.wavenumbers[i] * d) / (omega - grid.energies[i]);
  }
  return acc * (params.coupling * params.coupling / static_cast<double>(params.n_modes));
}

double k_root(double omega) {
  if (std::abs(omega) <= 1.0) {
    throw validation_error("k_root requires |omega| > 1");
  }
  // Small root via the large root to avoid cancellation; product of roots is 1.
  const double r = std::sqrt(omega * omega - 1.0);
  const double big = omega > 0 ? -omega - r : -omega + r;
  return 1.0 / big;
}

double lambda_closed(int d, double omega, const ModelParams& params) {
  params.validate();
  if (std::abs(omega) <= 1.0) {
    throw validation_error("lambda_closed requires |omega| > 1 (outside the band)");
  }
  const int ad = std::abs(d);
  if (ad > params.n_modes) {
    throw validation_error("lambda_closed requires |d| <= N");
  }
  const int n = params.n_modes;
  const double r = std::sqrt(omega * omega - 1.0);
  const double k = k_root(omega);
  const double sign = omega > 0 ? 1.0 : -1.0;
  const double g2 = params.coupling * params.coupling;
  const double kn = std::pow(k, n);
  return g2 * sign / r * (std::pow(k, ad) + std::pow(k, n - ad)) / (1.0 - kn);
}

std::pair<double, double> d_pm(double omega, const ModelParams& params) {
  params.validate();
  const ParitySector plus = build_sector(params, Parity::plus);
  const ParitySector minus = build_sector(params, Parity::minus);
  for (const ParitySector* sec : {&plus, &minus}) {
    for (double e : sec->energies) {
      if (std::abs(omega - e) < kCollisionTol) {
        throw pole_collision("d_pm evaluated at a coupled channel energy", e);
      }
    }
  }
  return {plus.value(omega, params.impurity_energy),
          minus.value(omega, params.impurity_energy)};
}

std::pair<double, double> d_pm_derivative(double omega, const ModelParams& params) {
  params.validate();
  const ParitySector plus = build_sector(params, Parity::plus);
  const ParitySector minus = build_sector(params, Parity::minus);
  return {plus.derivative(omega), minus.derivative(omega)};
}

std::pair<std::complex<double>, std::complex<double>> d_pm_gamma(
    std::complex<double> gamma, const ModelParams& params) {
  params.validate();
  const double re = gamma.real();
  if (re < -1e-12 || re > std::numbers::pi + 1e-12) {
    throw validation_error("d_pm_gamma requires 0 <= Re(gamma) <= pi");
  }
  const std::complex<double> sg = std::sin(gamma);
  const std::complex<double> shalf = std::sin(gamma * (params.n_modes / 2.0));
  if (std::abs(sg) < 1e-12) {
    throw pole_collision("d_pm_gamma: sin(gamma) vanishes (band edge)", -std::cos(re));
  }
  if (std::abs(shalf) < 1e-12) {
    throw pole_collision("d_pm_gamma: sin(gamma N/2) vanishes (unperturbed mode)",
                         -std::cos(re));
  }
  const double g2 = params.coupling * params.coupling;
  const std::complex<double> base =
      std::cos(gamma) + params.impurity_energy;  // cos(gamma) - cos(Gamma)
  const std::complex<double> a = std::cos(gamma * (params.n_modes / 2.0));
  // The L - N/2 offset is the one that matches the k-sum; with L + N/2 the two
  // agree only at the unperturbed poles gamma = 2 pi m / N.
  const std::complex<double> b =
      std::cos(gamma * (params.distance - params.n_modes / 2.0));
  const std::complex<double> common = g2 / (sg * shalf);
  return {base + common * (a + b), base + common * (a - b)};
}

double PoleSet::completeness() const {
  double acc = 0.0;
  for (const Pole& p : poles) acc += p.residue_weight;
  return acc / 2.0;
}

namespace {

double bisect(const ParitySector& sector, double offset, double lo, double hi,
              double flo) {
  // D is strictly increasing between consecutive poles, so plain bisection
  // converges to the unique root in the bracket.
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double fmid = sector.value(mid, offset);
    if ((fmid < 0) == (flo < 0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

PoleSet find_poles(const ModelParams& params) {
  params.validate();
  if (!(params.coupling > 0)) {
    throw validation_error("find_poles requires g > 0");
  }
  PoleSet set;
  set.params = params;
  const double omega0 = params.impurity_energy;

  for (Parity parity : {Parity::plus, Parity::minus}) {
    const ParitySector sector = build_sector(params, parity);
    const std::size_t m = sector.energies.size();
    std::vector<double> roots;

    if (m == 0) {
      // Fully decoupled sector (e.g. would need 1 +- cos(kL) = 0 for every k);
      // the only root is omega = Omega.
      roots.push_back(omega0);
    } else {
      // Interior intervals between consecutive coupled energies.
      for (std::size_t i = 0; i + 1 < m; ++i) {
        const double a = sector.energies[i];
        const double b = sector.energies[i + 1];
        const double h = std::max((b - a) * 1e-13, 1e-300);
        double lo = a + h, hi = b - h;
        double flo = sector.value(lo, omega0);
        double fhi = sector.value(hi, omega0);
        // D -> -inf at a+ and +inf at b-; push closer to the poles if the
        // offset evaluation has not crossed yet.
        int expand = 0;
        while ((flo > 0 || fhi < 0) && expand < 40) {
          if (flo > 0) {
            lo = a + (lo - a) / 16.0;
            flo = sector.value(lo, omega0);
          }
          if (fhi < 0) {
            hi = b - (b - hi) / 16.0;
            fhi = sector.value(hi, omega0);
          }
          ++expand;
        }
        if (flo > 0 || fhi < 0) {
          std::ostringstream msg;
          msg << "no sign change for D" << (parity == Parity::plus ? "+" : "-")
              << " on interval (" << a << ", " << b << ")";
          throw numerical_error(msg.str());
        }
        roots.push_back(bisect(sector, omega0, lo, hi, flo));
      }
      // Exterior intervals: band edge out to a bound, expanded until the sign
      // changes.
      const double g = params.coupling;
      double bound = 1.0 + std::abs(omega0) + 2.0 * g + 2.0 * g * g;
      for (int side : {-1, +1}) {
        const double edge = side < 0 ? sector.energies.front() : sector.energies.back();
        const double h = std::max(std::abs(edge) * 1e-13, 1e-13);
        const double inner = edge + side * h;
        const double finner = sector.value(inner, omega0);
        double outer = side * bound;
        double fouter = sector.value(outer, omega0);
        int expand = 0;
        while ((finner < 0) == (fouter < 0) && expand < 60) {
          outer *= 2.0;
          fouter = sector.value(outer, omega0);
          ++expand;
        }
        if ((finner < 0) == (fouter < 0)) {
          std::ostringstream msg;
          msg << "no sign change for D" << (parity == Parity::plus ? "+" : "-")
              << " on exterior interval beyond " << edge;
          throw numerical_error(msg.str());
        }
        if (side < 0) {
          roots.push_back(bisect(sector, omega0, outer, inner, fouter));
        } else {
          roots.push_back(bisect(sector, omega0, inner, outer, finner));
        }
      }
    }

    std::sort(roots.begin(), roots.end());
    // Deduplicate near-coincident roots of the same parity (can appear when a
    // root sits within polishing tolerance of a decoupled channel energy).
    std::vector<double> unique;
    for (double r : roots) {
      if (unique.empty() || std::abs(r - unique.back()) > 1e-9) {
        unique.push_back(r);
      }
    }
    for (double r : unique) {
      set.poles.push_back(Pole{r, parity, 1.0 / sector.derivative(r)});
    }
  }

  std::sort(set.poles.begin(), set.poles.end(), [](const Pole& a, const Pole& b) {
    if (a.omega != b.omega) return a.omega < b.omega;
    return a.parity < b.parity;
  });
  return set;
}

std::pair<std::vector<std::complex<double>>, std::vector<std::complex<double>>>
reconstruct_amplitudes(const PoleSet& poles, const std::vector<double>& times) {
  const double defect = std::abs(poles.completeness() - 1.0);
  if (defect > 1e-6) {
    std::ostringstream msg;
    msg << "pole set incomplete: residue sum deviates from 1 by " << defect;
    throw numerical_error(msg.str());
  }
  std::vector<std::complex<double>> a_a, a_b;
  a_a.reserve(times.size());
  a_b.reserve(times.size());
  for (double t : times) {
    std::complex<double> sum_plus = 0.0, sum_minus = 0.0;
    for (const Pole& p : poles.poles) {
      const double phi = -p.omega * t;
      const std::complex<double> term =
          p.residue_weight * std::complex<double>(std::cos(phi), std::sin(phi));
      (p.parity == Parity::plus ? sum_plus : sum_minus) += term;
    }
    a_a.push_back(0.5 * (sum_plus + sum_minus));
    a_b.push_back(0.5 * (sum_plus - sum_minus));
  }
  return {std::move(a_a), std::move(a_b)};
}

}  // namespace qst
