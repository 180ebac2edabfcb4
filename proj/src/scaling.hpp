#pragma once

// Entrywise factor S of the current step mode, shared by the solvers.

#include <cmath>
#include <string>
#include <variant>

#include "madmm/errors.hpp"
#include "madmm/kernels.hpp"
#include "madmm/solver.hpp"

namespace madmm::detail {

class Scaling {
 public:
  Scaling(const StepMode& mode, Eigen::Index n) : n_(n) {
    if (const auto* s = std::get_if<ScalarStep>(&mode)) {
      if (!(s->gamma > 0.0) || !std::isfinite(s->gamma)) {
        throw MetricError("scalar step size must be finite and positive");
      }
      uniform_ = std::sqrt(s->gamma);
      sqrt_h_ = Eigen::MatrixXd::Constant(n, n, uniform_);
    } else {
      const Metric& m = std::get<Metric>(mode);
      if (m.n() != n) {
        throw DimensionError("metric is for n=" + std::to_string(m.n()) +
                             " but the cone has n=" + std::to_string(n));
      }
      metric_ = true;
      k_ = m.k();
      top_ = std::sqrt(m.h_top());
      off_ = std::sqrt(m.h_off());
      bottom_ = std::sqrt(m.h_bottom());
      sqrt_h_ = m.sqrt_weights();
    }
  }

  Eigen::MatrixXd apply(const Eigen::MatrixXd& v) const {
    if (!metric_) return uniform_ * v;
    return kernels::scale_blocks(v, k_, top_, off_, bottom_);
  }

  Eigen::MatrixXd apply_inv(const Eigen::MatrixXd& v) const {
    if (!metric_) return v / uniform_;
    return kernels::scale_blocks(v, k_, 1.0 / top_, 1.0 / off_, 1.0 / bottom_);
  }

  // Dense √H.
  const Eigen::MatrixXd& sqrt_weights() const { return sqrt_h_; }
  Eigen::Index n() const { return n_; }

 private:
  Eigen::Index n_;
  bool metric_ = false;
  double uniform_ = 1.0;
  Eigen::Index k_ = 0;
  double top_ = 1.0, off_ = 1.0, bottom_ = 1.0;
  Eigen::MatrixXd sqrt_h_;
};

}  // namespace madmm::detail
