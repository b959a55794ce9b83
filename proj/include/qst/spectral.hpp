#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "qst/model.hpp"

namespace qst {

enum class Parity { plus, minus };

inline const char* to_string(Parity p) { return p == Parity::plus ? "plus" : "minus"; }

struct Pole {
  double omega = 0;
  Parity parity = Parity::plus;
  double residue_weight = 0;  // 1 / D_parity'(omega), always positive
};

// Real roots of D+ and D-, sorted by (omega, parity).  Completeness:
// sum of residue_weight over both parities equals 2.
struct PoleSet {
  std::vector<Pole> poles;
  ModelParams params;

  double completeness() const;  // sum residue_weight / 2, equals 1 for a full set
};

// Self-energy Lambda_d(omega) = (g^2/N) sum_k e^{i k d} / (omega - eps_k),
// by direct summation.  This is the ground truth every closed form is
// checked against.  Real omega within 1e-12 of a channel energy throws
// pole_collision.
std::complex<double> lambda_sum(int d, std::complex<double> omega,
                                const ModelParams& params);

// Same at real omega; the imaginary parts cancel pairwise under k -> 2pi - k.
double lambda_sum(int d, double omega, const ModelParams& params);

// Closed form for |omega| > 1, via K = the root of z^2 + 2 omega z + 1 = 0
// with |K| < 1:
//   Lambda_d = g^2 sign(omega)/sqrt(omega^2-1) * (K^|d| + K^{N-|d|}) / (1 - K^N).
// The exponent pattern and the sign(omega) factor are fixed by agreement with
// lambda_sum, which is normative.
double lambda_closed(int d, double omega, const ModelParams& params);

// Small-magnitude root K of z^2 + 2 omega z + 1 = 0, |omega| > 1.
double k_root(double omega);

// Parity factors of the spectral function,
//   D_pm(omega) = omega - Omega - Lambda_0(omega) -/+ Lambda_L(omega),
// evaluated as omega - Omega - sum_k w_k^pm / (omega - eps_k) with per-mode
// weights w_k^pm = (g^2/N)(1 +- cos(k L)).  Modes whose weight vanishes do
// not contribute a pole and are skipped exactly.
std::pair<double, double> d_pm(double omega, const ModelParams& params);

// Derivatives D_pm'(omega) = 1 + sum_k w_k^pm / (omega - eps_k)^2.
std::pair<double, double> d_pm_derivative(double omega, const ModelParams& params);

// gamma-substitution form of the parity factors, omega = -cos(gamma),
// Omega = -cos(Gamma), 0 <= Re gamma <= pi:
//   cos(gamma) - cos(Gamma)
//     + g^2 [cos(gamma N/2) +- cos(gamma (L - N/2))] / (sin(gamma) sin(gamma N/2)).
// For real in-band gamma this equals -D_pm(-cos gamma) exactly.
std::pair<std::complex<double>, std::complex<double>> d_pm_gamma(
    std::complex<double> gamma, const ModelParams& params);

// All real roots of D+ and D-, by bisection between consecutive coupled
// channel energies and on the two exterior intervals.
PoleSet find_poles(const ModelParams& params);

// Impurity amplitudes from the residue expansion of the resolvent, for the
// initial state on A:
//   a_A(t) = 1/2 sum_j e^{-i w_j t} r_j               (both parities)
//   a_B(t) = 1/2 [ sum_{+} e^{-i w_j t} r_j - sum_{-} e^{-i w_j t} r_j ].
std::pair<std::vector<std::complex<double>>, std::vector<std::complex<double>>>
reconstruct_amplitudes(const PoleSet& poles, const std::vector<double>& times);

}  // namespace qst
