#pragma once

#include <array>
#include <complex>

namespace madmm {

// a·γ⁴ + b·γ³ + d·γ + e (no quadratic term). Built from block norms the signs
// are a ≥ 0, b ≥ 0, d ≤ 0, e ≤ 0.
struct QuarticCoeffs {
  double a = 0.0;
  double b = 0.0;
  double d = 0.0;
  double e = 0.0;

  double operator()(double g) const { return (((a * g + b) * g) * g + d) * g + e; }
  std::complex<double> operator()(std::complex<double> g) const {
    return (((a * g + b) * g) * g + d) * g + e;
  }
  double derivative(double g) const { return ((4.0 * a * g + 3.0 * b) * g) * g + d; }
  std::complex<double> derivative(std::complex<double> g) const {
    return ((4.0 * a * g + 3.0 * b) * g) * g + d;
  }
  double max_abs() const;
  QuarticCoeffs scaled(double s) const { return {a * s, b * s, d * s, e * s}; }
};

// Residual bound used for every returned root:
//   |p(γ)| ≤ 1e-8 · max(|a|,|b|,|d|,|e|) · max(1, |γ|)⁴.
bool root_residual_ok(const QuarticCoeffs& c, std::complex<double> root);

// Ferrari-type radical formula for the four roots, followed by a residual-
// guarded Newton polish. Throws DegenerateDataError if a ≤ 0 and
// FormulaBreakdown if the intermediate u4 vanishes.
std::array<std::complex<double>, 4> roots_closed_form(const QuarticCoeffs& c);

// The single positive real root, for coefficients with a > 0, e < 0 and
// exactly one sign change (a, b, d, e). Uses the closed form and falls back to
// a safeguarded Newton–bisection when the formula breaks down.
// Throws DegenerateDataError for a or e that is zero or of the wrong sign.
double unique_positive_root(const QuarticCoeffs& c);

// Safeguarded Newton–bisection on [0, 1 + max(|b|,|d|,|e|)/a].
double positive_root_bracketed(const QuarticCoeffs& c);

}  // namespace madmm
