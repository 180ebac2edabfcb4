#pragma once

#include <vector>

#include <Eigen/Dense>

#include "madmm/solver.hpp"
#include "madmm/symmat.hpp"

namespace madmm {

// minimize ⟨c, x⟩ subject to A0 + Σ xᵢAᵢ ⪰ 0.
class SdpProblem {
 public:
  // Throws DimensionError on inconsistent sizes and IllPosedError when
  // [vec(A1) … vec(Am)] is not of full column rank (σ_min ≤ 1e-10·σ_max).
  SdpProblem(SymMat a0, std::vector<SymMat> a_list, Eigen::VectorXd c);

  Eigen::Index n() const { return a0_.n(); }
  Eigen::Index m() const { return static_cast<Eigen::Index>(a_.size()); }
  const SymMat& a0() const { return a0_; }
  const SymMat& a(Eigen::Index i) const { return a_[i]; }  // 0-based: A_{i+1}
  const std::vector<SymMat>& a_list() const { return a_; }
  const Eigen::VectorXd& c() const { return c_; }
  // n²×m, column i = vec(A_{i+1}).
  const Eigen::MatrixXd& a_tilde() const { return a_tilde_; }

  // A0 + Σ xᵢAᵢ.
  SymMat lmi(const Eigen::VectorXd& x) const;

 private:
  SymMat a0_;
  std::vector<SymMat> a_;
  Eigen::VectorXd c_;
  Eigen::MatrixXd a_tilde_;
};

// argmin_x ⟨c, x⟩ + ½‖S(A0 + Σ xᵢAᵢ) − target‖², S from `mode`
// (ScalarStep{1} is the unit metric). Throws IllPosedError when the scaled
// normal matrix is singular.
Eigen::VectorXd x_update_primal(const SdpProblem& p, const SymMat& target,
                                const StepMode& mode);

// Metric (or scalar) ADMM from zero initialization.
SolveReport solve_standard_sdp(const SdpProblem& p, const SolverConfig& cfg);

namespace detail {

// Cached normal equations for the SDP x-update with a fixed scaling.
class SdpXUpdate {
 public:
  SdpXUpdate(const SdpProblem& p, const Eigen::MatrixXd& sqrt_h);
  Eigen::VectorXd operator()(const Eigen::MatrixXd& target) const;
  const Eigen::MatrixXd& gram() const { return gram_; }

 private:
  const SdpProblem& p_;
  Eigen::MatrixXd w_;           // diag(vec √H)·Ã
  Eigen::VectorXd scaled_a0_;   // vec(√H ⊙ A0)
  Eigen::MatrixXd gram_;        // WᵀW
  Eigen::LLT<Eigen::MatrixXd> chol_;
};

// Eigenvalue check on a small symmetric positive semidefinite matrix; throws
// IllPosedError when λ_min ≤ 1e-20·λ_max (σ ratio 1e-10 on the factor).
void require_positive_definite(const Eigen::MatrixXd& d, const char* what);

}  // namespace detail

}  // namespace madmm
