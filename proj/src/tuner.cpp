#include "madmm/tuner.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>

#include "madmm/errors.hpp"
#include "madmm/kernels.hpp"

namespace madmm {

namespace {

BlockNorms floored(const BlockNorms& v, double tau, const char* which) {
  BlockNorms out{std::max(v.v1, tau), std::max(v.v0, tau), std::max(v.v2, tau)};
  if (!(out.v1 > 0.0) || !(out.v0 > 0.0) || !(out.v2 > 0.0)) {
    const char* block = !(out.v1 > 0.0) ? "1" : (!(out.v0 > 0.0) ? "0" : "2");
    throw DegenerateDataError(std::string("tuner: block ") + which + block +
                              " is zero after regularization");
  }
  return out;
}

PartitionFit fit(const BlockNorms& x_raw, const BlockNorms& l_raw, double tau,
                 Eigen::Index k) {
  const BlockNorms x = floored(x_raw, tau, "X");
  const BlockNorms l = floored(l_raw, tau, "Lambda");
  const double g2 = unique_positive_root(quartic_coeffs(x, l));
  const double alpha = std::sqrt(x.v1 / g2 + g2 * x.v2 + 2.0 * x.v0);
  const double beta = std::sqrt(l.v2 / g2 + g2 * l.v1 + 2.0 * l.v0);
  // γ1 minimizes γ1·α² + β²/γ1.
  return {k, beta / alpha, g2, 2.0 * alpha * beta};
}

double regularization(const ReferencePair& ref) {
  return 1e-12 * (ref.x_star.squared_norm() + ref.lambda_star.squared_norm());
}

BlockNorms to_norms(const kernels::BlockSquares& s) { return {s[0], s[1], s[2]}; }

}  // namespace

ReferencePair::ReferencePair(SymMat x, SymMat lambda)
    : x_star(std::move(x)), lambda_star(std::move(lambda)) {
  if (x_star.n() != lambda_star.n()) {
    throw DimensionError("ReferencePair: X* and Lambda* differ in size");
  }
  if (x_star.squared_norm() == 0.0 && lambda_star.squared_norm() == 0.0) {
    throw DegenerateDataError("ReferencePair: both matrices are zero");
  }
}

QuarticCoeffs quartic_coeffs(const BlockNorms& x, const BlockNorms& l) {
  return {x.v2 * l.v1, x.v2 * l.v0 + x.v0 * l.v1, -(l.v2 * x.v0 + l.v0 * x.v1),
          -l.v2 * x.v1};
}

double rate_objective(const BlockNorms& x, const BlockNorms& l, double g1,
                      double g2) {
  return g1 / g2 * x.v1 + g2 / g1 * l.v1 + g1 * g2 * x.v2 + l.v2 / (g1 * g2) +
         2.0 * g1 * x.v0 + 2.0 * l.v0 / g1;
}

std::pair<double, double> stationarity_residuals(const BlockNorms& x,
                                                 const BlockNorms& l,
                                                 double g1, double g2) {
  const double t1[] = {x.v1 / g2, -g2 / (g1 * g1) * l.v1, g2 * x.v2,
                       -l.v2 / (g1 * g1 * g2), 2.0 * x.v0, -2.0 * l.v0 / (g1 * g1)};
  const double t2[] = {-g1 / (g2 * g2) * x.v1, l.v1 / g1, g1 * x.v2,
                       -l.v2 / (g1 * g2 * g2)};
  double s1 = 0.0, a1 = 0.0, s2 = 0.0, a2 = 0.0;
  for (double t : t1) s1 += t, a1 += std::abs(t);
  for (double t : t2) s2 += t, a2 += std::abs(t);
  return {std::abs(s1) / a1, std::abs(s2) / a2};
}

PartitionFit tune_for_partition(const ReferencePair& ref, Eigen::Index k) {
  const BlockPartition p(ref.n(), k);
  return fit(block_norms(ref.x_star, p), block_norms(ref.lambda_star, p),
             regularization(ref), k);
}

TuneResult tune(const ReferencePair& ref) {
  const Eigen::Index n = ref.n();
  if (n < 2) throw DimensionError("tune: need n >= 2");
  const auto xs = kernels::block_squares_all(ref.x_star.matrix());
  const auto ls = kernels::block_squares_all(ref.lambda_star.matrix());
  const double tau = regularization(ref);

  TuneResult out;
  out.per_k.resize(n - 1);
  // Each split is independent; results land at their own index.
  std::exception_ptr failure;
#pragma omp parallel for schedule(static) if (n >= 64)
  for (Eigen::Index k = 1; k < n; ++k) {
    try {
      out.per_k[k - 1] = fit(to_norms(xs[k - 1]), to_norms(ls[k - 1]), tau, k);
    } catch (...) {
#pragma omp critical(madmm_tune_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  double best = out.per_k.front().f;
  for (const auto& p : out.per_k) best = std::min(best, p.f);
  for (const auto& p : out.per_k) {
    if (p.f <= best * (1.0 + 1e-9)) {
      out.k_star = p.k;
      out.gamma1 = p.gamma1;
      out.gamma2 = p.gamma2;
      out.objective = p.f;
      break;
    }
  }
  return out;
}

double worst_case_gap(const ReferencePair& ref, Eigen::Index k) {
  const BlockPartition p(ref.n(), k);
  const BlockNorms x = block_norms(ref.x_star, p);
  const BlockNorms l = block_norms(ref.lambda_star, p);
  const double den_left = x.v1 + x.v0;
  const double den_right = x.v2 + x.v0;
  if (!(den_left > 0.0) || !(den_right > 0.0)) {
    throw DegenerateDataError("worst_case_gap: X* has an all-zero column group");
  }
  const double left = (l.v1 + l.v0) / den_left;
  const double right = (l.v2 + l.v0) / den_right;
  const double top = std::max(left, right);
  if (top == 0.0) return 0.0;
  return std::abs(left - right) / top;
}

double optimal_scalar(const ReferencePair& ref) {
  const double x = ref.x_star.norm();
  if (!(x > 0.0)) throw DegenerateDataError("optimal_scalar: X* is zero");
  return ref.lambda_star.norm() / x;
}

}  // namespace madmm
