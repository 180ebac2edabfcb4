#include "madmm/quartic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "madmm/errors.hpp"

namespace madmm {

namespace {

using cplx = std::complex<double>;

cplx cube_root(cplx z) {
  if (z.imag() == 0.0) return {std::cbrt(z.real()), 0.0};
  return std::pow(z, 1.0 / 3.0);
}

// Newton steps accepted only while they shrink |p|.
cplx polish(const QuarticCoeffs& c, cplx z) {
  double res = std::abs(c(z));
  for (int it = 0; it < 3 && res > 0.0; ++it) {
    const cplx dp = c.derivative(z);
    if (std::abs(dp) == 0.0) break;
    const cplx next = z - c(z) / dp;
    const double next_res = std::abs(c(next));
    if (!(next_res < res)) break;
    z = next;
    res = next_res;
  }
  return z;
}

double scaled_residual(const QuarticCoeffs& c, cplx z) {
  const double r = std::max(1.0, std::abs(z));
  return std::abs(c(z)) / (c.max_abs() * r * r * r * r);
}

double worst_scaled_residual(const QuarticCoeffs& c, const std::array<cplx, 4>& r) {
  double w = 0.0;
  for (const cplx& z : r) w = std::max(w, scaled_residual(c, z));
  return w;
}

// Weierstrass (Durand–Kerner) refinement of all four roots at once. Seeded by
// the radical formula it repairs the small roots that lose digits when the
// root magnitudes span many decades, without letting two estimates merge.
// Kept only if it lowers the worst scaled residual.
std::array<cplx, 4> refine_all(const QuarticCoeffs& c, std::array<cplx, 4> roots) {
  std::array<cplx, 4> z = roots;
  // Coincident seeds are pulled apart along distinct directions.
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < i; ++j) {
      const double scale = std::max({std::abs(z[i]), std::abs(z[j]), 1e-300});
      if (std::abs(z[i] - z[j]) <= 1e-6 * scale) {
        z[i] += 1e-4 * scale * std::polar(1.0, 0.7 + 1.9 * i);
      }
    }
  }
  for (int it = 0; it < 200; ++it) {
    double step = 0.0;
    for (int i = 0; i < 4; ++i) {
      cplx den = c.a;
      for (int j = 0; j < 4; ++j) {
        if (j != i) den *= z[i] - z[j];
      }
      if (den == 0.0 || !std::isfinite(std::abs(den))) return roots;
      const cplx w = c(z[i]) / den;
      z[i] -= w;
      step = std::max(step, std::abs(w) / std::max(std::abs(z[i]), 1e-300));
    }
    if (step <= 1e-15) break;
  }
  for (const cplx& v : z) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return roots;
  }
  return worst_scaled_residual(c, z) < worst_scaled_residual(c, roots) ? z : roots;
}

int sign_changes(const QuarticCoeffs& c) {
  int changes = 0;
  int last = 0;
  for (double v : {c.a, c.b, c.d, c.e}) {
    const int s = (v > 0.0) - (v < 0.0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

double QuarticCoeffs::max_abs() const {
  return std::max({std::abs(a), std::abs(b), std::abs(d), std::abs(e)});
}

bool root_residual_ok(const QuarticCoeffs& c, std::complex<double> root) {
  const double scale = std::pow(std::max(1.0, std::abs(root)), 4);
  return std::abs(c(root)) <= 1e-8 * c.max_abs() * scale;
}

std::array<std::complex<double>, 4> roots_closed_form(const QuarticCoeffs& c) {
  const double a = c.a, b = c.b, d = c.d, e = c.e;
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw DegenerateDataError("quartic: leading coefficient must be positive");
  }
  const double delta0 = b * d - 4.0 * a * e;
  const double u1 = std::sqrt(27.0) / 2.0 * (a * d * d + b * b * e);
  const cplx disc = std::sqrt(cplx(delta0 * delta0 * delta0 + u1 * u1, 0.0));
  // Either sign of the radical gives a valid resolvent root; the larger
  // modulus avoids cancellation and the 0/0 at u1 = delta0 = 0.
  const cplx plus = u1 + disc;
  const cplx minus = u1 - disc;
  const cplx u2 = std::abs(plus) >= std::abs(minus) ? plus : minus;
  double u3 = 0.0;
  if (std::abs(u2) != 0.0) {
    const cplx r = cube_root(u2);
    u3 = ((r - delta0 / r) / (std::sqrt(3.0) * a)).real();
  }
  const double half_b = b / (2.0 * a);
  const cplx u4 = std::sqrt(cplx(half_b * half_b + u3, 0.0));
  if (std::abs(u4) == 0.0) {
    throw FormulaBreakdown("quartic: u4 vanished in the radical formula");
  }
  const cplx u5 = 2.0 * half_b * half_b - u3;
  const cplx u6 = -((b / a) * (b / a) * (b / a) + 8.0 * d / a) / (4.0 * u4);
  const cplx lo = std::sqrt(u5 - u6);
  const cplx hi = std::sqrt(u5 + u6);
  std::array<cplx, 4> roots{0.5 * (-half_b - u4 - lo), 0.5 * (-half_b - u4 + lo),
                            0.5 * (-half_b + u4 - hi), 0.5 * (-half_b + u4 + hi)};
  roots = refine_all(c, roots);
  for (auto& z : roots) z = polish(c, z);
  return roots;
}

double positive_root_bracketed(const QuarticCoeffs& c) {
  double lo = 0.0;
  double hi = 1.0 + std::max({std::abs(c.b), std::abs(c.d), std::abs(c.e)}) / c.a;
  double g = hi;
  for (int it = 0; it < 400; ++it) {
    const double p = c(g);
    if (p == 0.0) return g;
    if (p > 0.0) hi = g; else lo = g;
    const double dp = c.derivative(g);
    double next = dp != 0.0 ? g - p / dp : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - g) <= 4.0 * std::numeric_limits<double>::epsilon() * g) {
      return next;
    }
    g = next;
  }
  return g;
}

double unique_positive_root(const QuarticCoeffs& c) {
  const double tiny = std::numeric_limits<double>::min();
  if (!(c.a > tiny) || !(c.e < -tiny)) {
    throw DegenerateDataError(
        "quartic: need a > 0 and e < 0 for a unique positive root");
  }
  if (sign_changes(c) != 1) {
    throw DegenerateDataError(
        "quartic: coefficients do not have exactly one sign change");
  }
  double root = std::numeric_limits<double>::quiet_NaN();
  try {
    const auto roots = roots_closed_form(c);
    double best_imag = std::numeric_limits<double>::infinity();
    for (const auto& z : roots) {
      if (z.real() <= 0.0) continue;
      const double rel_imag = std::abs(z.imag()) / std::abs(z);
      if (rel_imag < best_imag) {
        best_imag = rel_imag;
        root = z.real();
      }
    }
    if (std::isfinite(root)) {
      // p is convex on [0, ∞), so Newton from either side lands on the root.
      root = polish(c, cplx(root, 0.0)).real();
      if (!(root > 0.0) || !root_residual_ok(c, root)) {
        root = std::numeric_limits<double>::quiet_NaN();
      }
    }
  } catch (const FormulaBreakdown&) {
    root = std::numeric_limits<double>::quiet_NaN();
  }
  if (!std::isfinite(root)) root = positive_root_bracketed(c);
  return root;
}

}  // namespace madmm
