#pragma once

#include <vector>

#include <Eigen/Dense>

#include "madmm/metric.hpp"
#include "madmm/quartic.hpp"
#include "madmm/symmat.hpp"

namespace madmm {

// Optimal primal/dual pair on the cone side: `x_star` is the LMI matrix
// A(X⋆) (never the raw decision vector) and `lambda_star` the unscaled dual.
struct ReferencePair {
  SymMat x_star;
  SymMat lambda_star;

  // Throws DimensionError on mismatched sizes and DegenerateDataError when
  // both matrices are zero.
  ReferencePair(SymMat x, SymMat lambda);
  Eigen::Index n() const { return x_star.n(); }
};

struct PartitionFit {
  Eigen::Index k = 0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double f = 0.0;  // 2αβ, the minimized rate-bound objective for this split
};

struct TuneResult {
  Eigen::Index k_star = 0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double objective = 0.0;
  std::vector<PartitionFit> per_k;

  Metric metric(Eigen::Index n) const { return Metric(n, k_star, gamma1, gamma2); }
};

// Quartic in γ2 whose positive root zeroes the gradient of the rate bound:
//   a = ‖X2‖²‖Λ1‖²,  b = ‖X2‖²‖Λ0‖² + ‖X0‖²‖Λ1‖²,
//   d = −(‖Λ2‖²‖X0‖² + ‖Λ0‖²‖X1‖²),  e = −‖Λ2‖²‖X1‖².
QuarticCoeffs quartic_coeffs(const BlockNorms& x, const BlockNorms& l);

// ‖S X‖² + ‖S⁻¹ Λ‖² for the metric (·, γ1, γ2), written in block norms:
//   (γ1/γ2)x1 + (γ2/γ1)l1 + γ1γ2·x2 + l2/(γ1γ2) + 2γ1·x0 + 2·l0/γ1.
double rate_objective(const BlockNorms& x, const BlockNorms& l, double gamma1,
                      double gamma2);

// Relative magnitudes of ∂/∂γ1 and ∂/∂γ2 of rate_objective (each gradient
// divided by the sum of the absolute values of its terms).
std::pair<double, double> stationarity_residuals(const BlockNorms& x,
                                                 const BlockNorms& l,
                                                 double gamma1, double gamma2);

// Closed-form (γ1⋆, γ2⋆, f_K) for one split. Block norms are floored at
// 1e-12·(‖X⋆‖² + ‖Λ⋆‖²) before the quartic is formed.
PartitionFit tune_for_partition(const ReferencePair& ref, Eigen::Index k);

// Every split k = 1..n−1; the smallest f_K wins, ties (within 1e-9 relative)
// go to the smallest k.
TuneResult tune(const ReferencePair& ref);

// |r_left − r_right| / max(r_left, r_right) with
//   r_left  = (‖Λ1‖² + ‖Λ0‖²) / (‖X1‖² + ‖X0‖²),
//   r_right = (‖Λ2‖² + ‖Λ0‖²) / (‖X2‖² + ‖X0‖²).
// Zero means the tuned metric collapses to a scalar at this split.
double worst_case_gap(const ReferencePair& ref, Eigen::Index k);

// ‖Λ⋆‖ / ‖X⋆‖.
double optimal_scalar(const ReferencePair& ref);

}  // namespace madmm
