#include "madmm/metric.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "madmm/errors.hpp"
#include "madmm/kernels.hpp"

namespace madmm {

namespace {

void check_dim(const Metric& m, const SymMat& v, const char* op) {
  if (m.n() != v.n()) {
    throw DimensionError(std::string(op) + ": metric is for n=" +
                         std::to_string(m.n()) + " but matrix has n=" +
                         std::to_string(v.n()));
  }
}

SymMat scale(const Metric& m, const SymMat& v, double top, double off,
             double bottom) {
  return adopt_symmetric(
      kernels::scale_blocks(v.matrix(), m.k(), top, off, bottom));
}

}  // namespace

Metric::Metric(Eigen::Index n, Eigen::Index k, double gamma1, double gamma2)
    : n_(n), k_(k), gamma1_(gamma1), gamma2_(gamma2) {
  if (!(gamma1 > 0.0) || !(gamma2 > 0.0) || !std::isfinite(gamma1) ||
      !std::isfinite(gamma2)) {
    throw MetricError("Metric: gamma1 and gamma2 must be finite and positive");
  }
  if (n < 2 || k < 1 || k > n - 1) {
    throw MetricError("Metric: split " + std::to_string(k) + " outside [1, " +
                      std::to_string(n - 1) + "]");
  }
}

Metric Metric::scalar(Eigen::Index n, double gamma) {
  return Metric(n, 1, gamma, 1.0);
}

double Metric::h_min() const {
  return std::min({h_top(), h_off(), h_bottom()});
}

Eigen::MatrixXd Metric::weights() const {
  return kernels::scale_blocks(Eigen::MatrixXd::Ones(n_, n_), k_, h_top(),
                               h_off(), h_bottom());
}

Eigen::MatrixXd Metric::sqrt_weights() const {
  return kernels::scale_blocks(Eigen::MatrixXd::Ones(n_, n_), k_,
                               std::sqrt(h_top()), std::sqrt(h_off()),
                               std::sqrt(h_bottom()));
}

SymMat apply_m(const Metric& m, const SymMat& v) {
  check_dim(m, v, "apply_m");
  return scale(m, v, m.h_top(), m.h_off(), m.h_bottom());
}

SymMat apply_s(const Metric& m, const SymMat& v) {
  check_dim(m, v, "apply_s");
  return scale(m, v, std::sqrt(m.h_top()), std::sqrt(m.h_off()),
               std::sqrt(m.h_bottom()));
}

SymMat apply_s_inv(const Metric& m, const SymMat& v) {
  check_dim(m, v, "apply_s_inv");
  return scale(m, v, 1.0 / std::sqrt(m.h_top()), 1.0 / std::sqrt(m.h_off()),
               1.0 / std::sqrt(m.h_bottom()));
}

std::pair<bool, bool> invariance_holds(const Metric& m, const SymMat& v) {
  check_dim(m, v, "invariance_holds");
  return {is_psd(v, 1e-8), is_psd(apply_s(m, v), 1e-8)};
}

SymMat scaled_projection(const Metric& m, const SymMat& v) {
  check_dim(m, v, "scaled_projection");
  return apply_s_inv(m, project_psd(apply_s(m, v)));
}

double m_distance_sq(const Metric& m, const SymMat& z, const SymMat& v) {
  return 0.5 * apply_s(m, z - v).squared_norm();
}

}  // namespace madmm
