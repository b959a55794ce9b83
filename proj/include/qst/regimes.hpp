#pragma once

#include <array>
#include <string>

#include "qst/dynamics.hpp"
#include "qst/model.hpp"

namespace qst {

enum class Regime {
  WeakOffResonance,
  WeakResonantDiscrete,
  WeakResonantDiffusive,
  StrongCoupling,
  Crossover,
};

const char* to_string(Regime r);

// Weak coupling, |Omega| > 1: Rabi oscillation between A and B with
//   P_A(t) = cos^2(omega_minus t / 2),  P_B(t) = sin^2(omega_minus t / 2).
struct RabiPrediction {
  double omega_plus = 0;   // global phase frequency, 2 [Omega + Lambda_0(Omega)]
  double omega_minus = 0;  // transfer frequency, 2 Lambda_L(Omega)
  // N -> infinity closed forms, reported alongside the finite-N values.
  double omega_plus_continuum = 0;
  double omega_minus_continuum = 0;

  double p_a(double t) const;
  double p_b(double t) const;
  double rabi_period() const;
};

enum class ResonantFlag { discrete, diffusive };

// Weak coupling, Omega resonant with a channel mode.  gamma = Gamma + delta
// with four delta roots; for Omega = 0 the occupation profiles close.
struct ResonantPrediction {
  double gamma_big = 0;                    // Gamma, Omega = -cos(Gamma)
  std::array<double, 4> delta_roots{};     // delta_1^-, delta_1^+, delta_2^-, delta_2^+
  std::array<double, 4> delta_closed{};    // unpolished closed forms, same order
  ResonantFlag flag = ResonantFlag::discrete;
  bool omega_zero = false;                 // closed occupation profiles available
  bool l_even = false;
  double t_star = 0;                       // (pi/2) sqrt(N) / g, L even only

  ModelParams params;

  // Omega = 0 profiles: L even -> cos^4 / sin^4 (perfect transfer at t_star);
  // L odd -> P_A = cos^2(g t sqrt(2/N)), P_B identically 0.
  double p_a(double t) const;
  double p_b(double t) const;
};

// Strong coupling: fast oscillation at g modulated by a slow envelope at
// g / (2 (2g)^L); channel weight sin^2(g t).
struct StrongPrediction {
  double fast_freq = 0;
  double slow_freq = 0;

  double p_a(double t) const;
  double p_b(double t) const;
  double channel_weight(double t) const;
};

struct ClassifierThresholds {
  double discrete = 0.3;   // g sqrt(N) below -> discrete resonant regime
  double diffusive = 3.0;  // g sqrt(N) above -> diffusive resonant regime
  double strong = 3.0;     // g above -> strong coupling
  double resonance_tol = 1e-9;

  // Overrides from a "discrete,diffusive,strong" comma triple; empty or unset
  // input returns the defaults.
  static ClassifierThresholds from_env_string(const std::string& value);
};

struct RegimeReport {
  Regime regime = Regime::Crossover;
  double g_sqrt_n = 0;
  double abs_omega = 0;          // |Omega| against the band edge at 1
  double resonance_offset = 0;   // min_n |Omega - eps_n|
};

RabiPrediction predict_weak_offres(const ModelParams& params);

ResonantPrediction predict_weak_resonant(const ModelParams& params,
                                         double resonance_tolerance = 1e-9);

StrongPrediction predict_strong(const ModelParams& params);

RegimeReport classify_regime(const ModelParams& params,
                             const ClassifierThresholds& thresholds = {});

struct TransferMetrics {
  double max_p_b = 0;
  double t_at_max = 0;
  std::vector<double> times;  // copy of the grid, for interpolation
  std::vector<double> p_b;

  // Linear interpolation on the trajectory grid.
  double p_b_at(double t) const;
};

// Maximum of p_b over the grid, refined by a local quadratic fit around the
// grid maximum; earliest time attaining it.
TransferMetrics transfer_metrics(const Trajectory& traj);

}  // namespace qst
