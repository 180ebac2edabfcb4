#pragma once

// Scaled-form ADMM iteration shared by the standard-SDP and QCQP solvers:
//
//   x      ← argmin f(x) + ½‖S·A(x) − Z̃ + Λ̃‖²      (problem-specific step)
//   ζ      ← S·A(x) + Λ̃
//   Z̃      ← Π(ζ),   Λ̃ ← ζ − Z̃
//
// ζᵏ = Z̃ᵏ + Λ̃ᵏ is the fixed-point variable whose displacement is monotone.

#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "madmm/errors.hpp"
#include "madmm/kernels.hpp"
#include "madmm/solver.hpp"
#include "scaling.hpp"

namespace madmm::detail {

struct PrimalStep {
  Eigen::VectorXd x;
  double x22 = 0.0;
  Eigen::MatrixXd cone;  // A(x), unscaled, exactly symmetric
};

// `step(z_tilde, lambda_tilde)` performs the x-update and returns the cone
// point. The loop owns everything else.
template <typename Step>
SolveReport run_admm(Eigen::Index n, const Scaling& s, const SolverConfig& cfg,
                     Step&& step) {
  if (!(cfg.eps > 0.0)) throw Error("SolverConfig: eps must be positive");
  const auto t0 = std::chrono::steady_clock::now();

  Eigen::MatrixXd z_t = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd l_t = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd zeta = Eigen::MatrixXd::Zero(n, n);

  SolveReport rep;
  if (cfg.record_history) rep.history.reserve(std::min<long>(cfg.max_iter, 4096));
  PrimalStep cur;
  for (long it = 0; it < cfg.max_iter; ++it) {
    cur = step(z_t, l_t);
    const Eigen::MatrixXd x_t = s.apply(cur.cone);
    Eigen::MatrixXd zeta_next = x_t + l_t;
    if (!zeta_next.allFinite()) {
      throw SolverError("ADMM iterate became non-finite at iteration " +
                        std::to_string(it + 1));
    }
    z_t = kernels::psd_project(zeta_next);
    l_t = zeta_next - z_t;

    IterationRecord rec;
    rec.displacement = (zeta_next - zeta).norm();
    rec.zeta_norm = zeta_next.norm();
    rec.primal_residual = s.apply_inv(x_t - z_t).norm();
    rec.error_to_reference = std::numeric_limits<double>::quiet_NaN();
    zeta = std::move(zeta_next);
    rep.iterations = it + 1;

    bool stop = false;
    if (cfg.reference) {
      const Eigen::VectorXd& ref = *cfg.reference;
      if (ref.size() != cur.x.size()) {
        throw DimensionError("SolverConfig: reference has the wrong length");
      }
      rec.error_to_reference =
          (cur.x - ref).squaredNorm() / static_cast<double>(ref.size());
      if (rec.error_to_reference <= cfg.eps) {
        stop = true;
        rep.stop_reason = StopReason::kReferenceError;
      }
    } else if (rec.displacement <= cfg.eps * std::max(1.0, rec.zeta_norm)) {
      stop = true;
      rep.stop_reason = StopReason::kDisplacement;
    }
    if (cfg.record_history) rep.history.push_back(rec);
    if (stop) {
      rep.converged = true;
      break;
    }
  }

  rep.x = cur.x;
  rep.x22 = cur.x22;
  rep.cone_point = adopt_symmetric(std::move(cur.cone));
  rep.dual = adopt_symmetric(s.apply(l_t));
  rep.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return rep;
}

}  // namespace madmm::detail
