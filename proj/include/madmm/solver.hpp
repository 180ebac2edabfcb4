#pragma once

#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "madmm/metric.hpp"
#include "madmm/symmat.hpp"

namespace madmm {

// Classic ADMM with a single positive step size γ.
struct ScalarStep {
  double gamma = 1.0;
};

using StepMode = std::variant<ScalarStep, Metric>;

struct SolverConfig {
  StepMode mode = ScalarStep{1.0};
  double eps = 1e-8;
  long max_iter = 200000;
  // Known solution. When present the run stops on (1/len)·‖xᵏ − x⋆‖² ≤ eps,
  // otherwise on ‖ζᵏ⁺¹ − ζᵏ‖ ≤ eps·max(1, ‖ζᵏ⁺¹‖).
  std::optional<Eigen::VectorXd> reference;
  bool record_history = true;
};

enum class StopReason { kReferenceError, kDisplacement, kMaxIterations };

struct IterationRecord {
  double primal_residual = 0.0;       // ‖A(xᵏ) − Zᵏ‖, unscaled
  double displacement = 0.0;          // ‖ζᵏ⁺¹ − ζᵏ‖ in the scaled space
  double zeta_norm = 0.0;             // ‖ζᵏ⁺¹‖
  double error_to_reference = 0.0;    // NaN without a reference
};

struct SolveReport {
  long iterations = 0;
  Eigen::VectorXd x;
  double x22 = 0.0;  // lifted corner variable; zero for the standard SDP
  SymMat cone_point{1};  // A(x) at the last iterate
  SymMat dual{1};        // unscaled Λ = S·Λ̃
  std::vector<IterationRecord> history;
  bool converged = false;
  StopReason stop_reason = StopReason::kMaxIterations;
  double wall_ms = 0.0;
};

// True when no displacement exceeds its predecessor by more than
// 1e-12·(dₖ₋₁ + ‖ζᵏ‖); the absolute part absorbs eigensolver round-off once
// the displacement is at noise level.
bool residual_monotone(const std::vector<IterationRecord>& history);
inline bool residual_monotone(const SolveReport& r) {
  return residual_monotone(r.history);
}

}  // namespace madmm
