#pragma once

// Test-only oracles, independent of the implementation paths they check.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace qst_test {

// Characteristic polynomial coefficients by the Faddeev-LeVerrier recursion:
// p(x) = x^n + c[0] x^{n-1} + ... + c[n-1].
inline std::vector<double> char_poly(const Eigen::MatrixXcd& a) {
  const Eigen::Index n = a.rows();
  std::vector<double> coeffs;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  std::complex<double> c = 1.0;
  for (Eigen::Index k = 1; k <= n; ++k) {
    m = a * (m + c * Eigen::MatrixXcd::Identity(n, n));
    c = -m.trace() / static_cast<double>(k);
    coeffs.push_back(c.real());  // Hermitian input: coefficients are real
  }
  return coeffs;
}

inline double eval_poly(const std::vector<double>& coeffs, double x) {
  double acc = 1.0;
  for (double c : coeffs) acc = acc * x + c;
  return acc;
}

// All real roots of the characteristic polynomial of a Hermitian matrix, by
// dense sign-change scanning inside the Gershgorin bound plus bisection.
// Only reliable for simple roots.
inline std::vector<double> poly_eigenvalues(const Eigen::MatrixXcd& a,
                                            int scan_points = 200000) {
  const auto coeffs = char_poly(a);
  double bound = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    double row = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) row += std::abs(a(i, j));
    bound = std::max(bound, row);
  }
  bound += 1.0;
  std::vector<double> roots;
  double prev_x = -bound;
  double prev_f = eval_poly(coeffs, prev_x);
  for (int i = 1; i <= scan_points; ++i) {
    const double x = -bound + 2.0 * bound * i / scan_points;
    const double f = eval_poly(coeffs, x);
    if ((prev_f < 0) != (f < 0)) {
      double lo = prev_x, hi = x, flo = prev_f;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double fmid = eval_poly(coeffs, mid);
        if ((fmid < 0) == (flo < 0)) {
          lo = mid;
          flo = fmid;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prev_x = x;
    prev_f = f;
  }
  return roots;
}

}  // namespace qst_test
