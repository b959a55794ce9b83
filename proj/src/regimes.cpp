#include "qst/regimes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qst/spectral.hpp"

namespace qst {

const char* to_string(Regime r) {
  switch (r) {
    case Regime::WeakOffResonance: return "WeakOffResonance";
    case Regime::WeakResonantDiscrete: return "WeakResonantDiscrete";
    case Regime::WeakResonantDiffusive: return "WeakResonantDiffusive";
    case Regime::StrongCoupling: return "StrongCoupling";
    case Regime::Crossover: return "Crossover";
  }
  return "?";
}

double RabiPrediction::p_a(double t) const {
  const double c = std::cos(0.5 * omega_minus * t);
  return c * c;
}

double RabiPrediction::p_b(double t) const {
  const double s = std::sin(0.5 * omega_minus * t);
  return s * s;
}

double RabiPrediction::rabi_period() const {
  return 2.0 * std::numbers::pi / std::abs(omega_minus);
}

RabiPrediction predict_weak_offres(const ModelParams& params) {
  params.validate();
  if (std::abs(params.impurity_energy) <= 1.0) {
    throw regime_error("predict_weak_offres requires |Omega| > 1 (outside the band)");
  }
  const double omega = params.impurity_energy;
  const double l0 = lambda_sum(0, omega, params);
  const double ll = lambda_sum(params.distance, omega, params);

  RabiPrediction pred;
  pred.omega_plus = 2.0 * (omega + l0);
  pred.omega_minus = 2.0 * ll;

  const double r = std::sqrt(omega * omega - 1.0);
  const double sign = omega > 0 ? 1.0 : -1.0;
  const double g2 = params.coupling * params.coupling;
  pred.omega_plus_continuum = 2.0 * omega + 2.0 * g2 * sign / r;
  // K^L form; for Omega > 1 this is (-1)^L (Omega - sqrt(Omega^2-1))^L, i.e.
  // it carries the parity factor the k-sum produces at odd L.
  pred.omega_minus_continuum =
      2.0 * g2 * sign * std::pow(k_root(omega), params.distance) / r;
  return pred;
}

double ResonantPrediction::p_a(double t) const {
  if (!omega_zero) {
    throw regime_error("closed occupation profiles require Omega = 0");
  }
  const double g = params.coupling;
  const double n = params.n_modes;
  if (l_even) {
    const double c = std::cos(g * t / std::sqrt(n));
    return c * c * c * c;
  }
  const double c = std::cos(g * t * std::sqrt(2.0 / n));
  return c * c;
}

double ResonantPrediction::p_b(double t) const {
  if (!omega_zero) {
    throw regime_error("closed occupation profiles require Omega = 0");
  }
  if (!l_even) return 0.0;
  const double s = std::sin(params.coupling * t / std::sqrt(double(params.n_modes)));
  return s * s * s * s;
}

namespace {

// Solve delta = (g^2/sin^2 Gamma) [cot(delta N/2) (1 + s cos(Gamma L)) + s sin(Gamma L)]
// for the root with the sign of `guess`, by bisection on the first cotangent
// branch.  The pairing of the s signs with the D_pm parities is the one that
// reproduces the D_pm roots (checked in the tests).
double polish_delta(double guess, double coeff_cot, double coeff_const, int n) {
  if (guess == 0.0) return coeff_const;  // 1 -+ cos(Gamma L) = 0 branch
  auto f = [&](double d) {
    return d - coeff_cot / std::tan(0.5 * d * n) - coeff_const;
  };
  // Bracket within the branch (0, 2pi/N) (mirrored for negative roots).
  const double branch = 2.0 * std::numbers::pi / n;
  double lo, hi;
  if (guess > 0) {
    lo = 1e-12 * branch;
    hi = branch * (1.0 - 1e-12);
  } else {
    lo = -branch * (1.0 - 1e-12);
    hi = -1e-12 * branch;
  }
  double flo = f(lo), fhi = f(hi);
  if ((flo < 0) == (fhi < 0)) {
    return std::numeric_limits<double>::quiet_NaN();  // no root on the branch
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if ((f(mid) < 0) == (flo < 0)) {
      lo = mid;
      flo = f(mid);
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

ResonantPrediction predict_weak_resonant(const ModelParams& params,
                                         double resonance_tolerance) {
  params.validate();
  const double omega = params.impurity_energy;
  if (std::abs(omega) >= 1.0) {
    throw regime_error("predict_weak_resonant requires |Omega| < 1 (inside the band)");
  }
  const ModeGrid grid = mode_grid(params);
  double offset = std::numeric_limits<double>::infinity();
  for (double e : grid.energies) offset = std::min(offset, std::abs(omega - e));
  if (offset > resonance_tolerance) {
    std::ostringstream msg;
    msg << "no channel mode within " << resonance_tolerance << " of Omega = " << omega
        << " (nearest offset " << offset << "); the resonant expansion does not apply";
    throw regime_error(msg.str());
  }

  ResonantPrediction pred;
  pred.params = params;
  pred.gamma_big = std::acos(-omega);
  pred.omega_zero = omega == 0.0;
  pred.l_even = params.distance % 2 == 0;

  const double g = params.coupling;
  const int n = params.n_modes;
  const double sin_g = std::sin(pred.gamma_big);
  const double cos_gl = std::cos(pred.gamma_big * params.distance);
  const double sin_gl = std::sin(pred.gamma_big * params.distance);
  const double g2s2 = g * g / (sin_g * sin_g);

  // delta_1 pairs with D- (factor 1 - cos), delta_2 with D+ (factor 1 + cos).
  const double d1 = g * std::sqrt(std::max(0.0, 2.0 * (1.0 - cos_gl)) / n) / sin_g;
  const double d2 = g * std::sqrt(std::max(0.0, 2.0 * (1.0 + cos_gl)) / n) / sin_g;
  pred.delta_closed = {-d1, d1, -d2, d2};

  const double c1 = g2s2 * (1.0 - cos_gl);
  const double c2 = g2s2 * (1.0 + cos_gl);
  pred.delta_roots = {
      polish_delta(-d1, c1, -g2s2 * sin_gl, n),
      polish_delta(d1, c1, -g2s2 * sin_gl, n),
      polish_delta(-d2, c2, g2s2 * sin_gl, n),
      polish_delta(d2, c2, g2s2 * sin_gl, n),
  };
  bool polished_ok = true;
  for (std::size_t i = 0; i < 4; ++i) {
    if (std::isnan(pred.delta_roots[i])) {
      pred.delta_roots[i] = pred.delta_closed[i];
      polished_ok = false;
    }
  }
  const double max_d = std::max(d1, d2);
  pred.flag = (polished_ok && max_d * n <= 1.0) ? ResonantFlag::discrete
                                                : ResonantFlag::diffusive;
  if (pred.omega_zero && pred.l_even) {
    pred.t_star = 0.5 * std::numbers::pi * std::sqrt(double(n)) / g;
  }
  return pred;
}

double StrongPrediction::p_a(double t) const {
  const double fast = std::cos(fast_freq * t);
  const double slow = std::cos(slow_freq * t);
  return fast * fast * slow * slow;
}

double StrongPrediction::p_b(double t) const {
  const double fast = std::cos(fast_freq * t);
  const double slow = std::sin(slow_freq * t);
  return fast * fast * slow * slow;
}

double StrongPrediction::channel_weight(double t) const {
  const double s = std::sin(fast_freq * t);
  return s * s;
}

StrongPrediction predict_strong(const ModelParams& params) {
  params.validate();
  StrongPrediction pred;
  pred.fast_freq = params.coupling;
  pred.slow_freq =
      params.coupling / (2.0 * std::pow(2.0 * params.coupling, params.distance));
  return pred;
}

ClassifierThresholds ClassifierThresholds::from_env_string(const std::string& value) {
  ClassifierThresholds t;
  if (value.empty()) return t;
  std::istringstream in(value);
  char c1 = 0, c2 = 0;
  if (!(in >> t.discrete >> c1 >> t.diffusive >> c2 >> t.strong) || c1 != ',' ||
      c2 != ',') {
    throw validation_error(
        "threshold override must be a 'discrete,diffusive,strong' comma triple, got '" +
        value + "'");
  }
  return t;
}

RegimeReport classify_regime(const ModelParams& params,
                             const ClassifierThresholds& thresholds) {
  params.validate();
  RegimeReport report;
  report.g_sqrt_n = params.coupling * std::sqrt(double(params.n_modes));
  report.abs_omega = std::abs(params.impurity_energy);
  const ModeGrid grid = mode_grid(params);
  report.resonance_offset = std::numeric_limits<double>::infinity();
  for (double e : grid.energies) {
    report.resonance_offset =
        std::min(report.resonance_offset, std::abs(params.impurity_energy - e));
  }

  if (params.coupling >= thresholds.strong) {
    report.regime = Regime::StrongCoupling;
  } else if (report.abs_omega > 1.0) {
    report.regime = Regime::WeakOffResonance;
  } else if (report.resonance_offset <= thresholds.resonance_tol) {
    if (report.g_sqrt_n <= thresholds.discrete) {
      report.regime = Regime::WeakResonantDiscrete;
    } else if (report.g_sqrt_n >= thresholds.diffusive) {
      report.regime = Regime::WeakResonantDiffusive;
    } else {
      report.regime = Regime::Crossover;
    }
  } else {
    report.regime = Regime::Crossover;
  }
  return report;
}

double TransferMetrics::p_b_at(double t) const {
  if (times.empty()) throw validation_error("empty trajectory");
  if (t <= times.front()) return p_b.front();
  if (t >= times.back()) return p_b.back();
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - times.begin());
  const double t0 = times[i - 1], t1 = times[i];
  const double w = t1 == t0 ? 0.0 : (t - t0) / (t1 - t0);
  return p_b[i - 1] * (1.0 - w) + p_b[i] * w;
}

TransferMetrics transfer_metrics(const Trajectory& traj) {
  if (traj.times.empty()) {
    throw validation_error("transfer_metrics requires a non-empty trajectory");
  }
  TransferMetrics m;
  m.times = traj.times;
  m.p_b = traj.p_b;

  std::size_t imax = 0;
  for (std::size_t i = 1; i < traj.p_b.size(); ++i) {
    if (traj.p_b[i] > traj.p_b[imax] + 1e-9) imax = i;
  }
  m.max_p_b = traj.p_b[imax];
  m.t_at_max = traj.times[imax];

  // Quadratic refinement through the three points around the grid maximum.
  if (imax > 0 && imax + 1 < traj.p_b.size()) {
    const double t0 = traj.times[imax - 1], t1 = traj.times[imax],
                 t2 = traj.times[imax + 1];
    const double y0 = traj.p_b[imax - 1], y1 = traj.p_b[imax], y2 = traj.p_b[imax + 1];
    const double d1 = (y1 - y0) / (t1 - t0);
    const double d2 = (y2 - y1) / (t2 - t1);
    const double curv = (d2 - d1) / (t2 - t0);
    if (curv < 0) {
      const double tv = 0.5 * (t0 + t1) - 0.5 * d1 / curv;
      if (tv > t0 && tv < t2) {
        const double yv = y1 + curv * (tv - t1) * (tv - t1) +
                          (d1 + curv * (t1 - t0)) * (tv - t1);
        if (yv >= m.max_p_b) {
          m.max_p_b = std::min(yv, 1.0);
          m.t_at_max = tv;
        }
      }
    }
  }
  return m;
}

}  // namespace qst
