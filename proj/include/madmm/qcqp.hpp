#pragma once

#include <vector>

#include <Eigen/Dense>

#include "madmm/solver.hpp"
#include "madmm/symmat.hpp"

namespace madmm {

// Convexified QCQP in its lifted primal form:
//
//   minimize    −⟨x, c⟩ − x22
//   subject to  ⎡ A0 + Σ xᵢAᵢ   b0 + Bx ⎤ ⪰ 0,   x ≥ 0,
//               ⎣ (b0 + Bx)ᵀ    −x22    ⎦
//
// with B = [b1 … bm]. The cone lives in 𝕊ⁿ⁺¹.
class QcqpProblem {
 public:
  // a_list = {A0, …, Am}, b_list = {b0, …, bm}, c = (c1, …, cm).
  QcqpProblem(std::vector<SymMat> a_list, std::vector<Eigen::VectorXd> b_list,
              Eigen::VectorXd c);

  Eigen::Index n() const { return a_.front().n(); }
  Eigen::Index m() const { return static_cast<Eigen::Index>(a_.size()) - 1; }
  Eigen::Index lifted_dim() const { return n() + 1; }
  const SymMat& a(Eigen::Index i) const { return a_[i]; }  // i = 0..m
  const Eigen::VectorXd& b(Eigen::Index i) const { return b_[i]; }
  const std::vector<SymMat>& a_list() const { return a_; }
  const std::vector<Eigen::VectorXd>& b_list() const { return b_; }
  const Eigen::VectorXd& c() const { return c_; }
  const Eigen::MatrixXd& b_mat() const { return b_mat_; }      // n×m
  const Eigen::MatrixXd& a_tilde() const { return a_tilde_; }  // n²×m

 private:
  std::vector<SymMat> a_;
  std::vector<Eigen::VectorXd> b_;
  Eigen::VectorXd c_;
  Eigen::MatrixXd b_mat_;
  Eigen::MatrixXd a_tilde_;
};

struct LiftedPoint {
  Eigen::VectorXd x;
  double x22 = 0.0;
  SymMat cone_matrix{1};
};

// [[A0 + Σ xᵢAᵢ, b0 + Bx], [(b0 + Bx)ᵀ, −x22]].
LiftedPoint assemble_lifted(const QcqpProblem& p, const Eigen::VectorXd& x,
                            double x22);

// A lifted (n+1)×(n+1) matrix split at its last row/column.
struct LiftedBlocks {
  Eigen::MatrixXd top;   // n×n
  Eigen::VectorXd edge;  // n, last column without the corner
  double corner = 0.0;

  static LiftedBlocks split(const Eigen::MatrixXd& v);
};

// √H of the metric in the same split: S1, s0, s22.
using MetricBlocks = LiftedBlocks;

// x ← max{D⁻¹(t1 + t2 + c), 0} with
//   D  = Ãᵀ diag(vec S1)² Ã + 2 Bᵀ diag(s0)² B,
//   t1 = −Ãᵀ vec(S1) ⊙ vec(S1 ⊙ A0 − Z̃1 + Λ̃1),
//   t2 = −2 Bᵀ s0 ⊙ (s0 ⊙ b0 − z̃0 + λ̃0).
// The Bx contribution of the smooth part sits in D, not in t2. When
// `unclipped` is non-null it receives D⁻¹(t1 + t2 + c) before the clip.
// Throws IllPosedError if D is singular.
Eigen::VectorXd x_update_qcqp(const QcqpProblem& p, const MetricBlocks& s,
                              const LiftedBlocks& z_t, const LiftedBlocks& l_t,
                              Eigen::VectorXd* unclipped = nullptr);

// Exact minimizer of the same subproblem over x ≥ 0, i.e. of
// ½xᵀDx − (t1 + t2 + c)ᵀx. Agrees with x_update_qcqp whenever the clip is
// optimal (D diagonal, or no active bound), and otherwise keeps the fixed
// point of the iteration independent of the metric.
Eigen::VectorXd x_update_qcqp_exact(const QcqpProblem& p, const MetricBlocks& s,
                                    const LiftedBlocks& z_t, const LiftedBlocks& l_t);

// argmin_{x ≥ 0} ½xᵀDx − rᵀx for symmetric positive definite D
// (Lawson–Hanson active set; finite termination).
Eigen::VectorXd nonnegative_qp(const Eigen::MatrixXd& d, const Eigen::VectorXd& r);

// (1/s22)(−z̃22 + λ̃22 + 1/s22). Throws MetricError if s22 ≤ 0.
double x22_update(double s22, double z22, double l22);

enum class XUpdateRule {
  kExact,  // x_update_qcqp_exact
  kClip,   // x_update_qcqp
};

// Algorithm loop from zero initialization; see SolverConfig for stopping.
// A Metric in cfg.mode must be sized for lifted_dim().
SolveReport solve_qcqp(const QcqpProblem& p, const SolverConfig& cfg,
                       XUpdateRule rule = XUpdateRule::kExact);

// Default lifted split: the n×n block against the last row/column.
inline Eigen::Index default_qcqp_split(const QcqpProblem& p) { return p.n(); }

struct Tightness {
  bool is_rank1 = false;
  double ratio = 1.0;  // λ2/λ1 of the two largest eigenvalues
};

// Rank-1 test with threshold 1e-6 on λ2/λ1.
Tightness tightness_check(const SymMat& m);

// Boolean QP min xᵀA0x + 2b0ᵀx over x ∈ {±1}ⁿ as the QCQP above with
// Aᵢ = eᵢeᵢᵀ, bᵢ = 0 and c = −1 (objective ⟨x, 1⟩ − x22).
QcqpProblem make_bqp_problem(const SymMat& a0, const Eigen::VectorXd& b0);

struct BqpResult {
  SolveReport report;
  SymMat relaxation{1};   // −Λ: the lifted [[X1, x], [xᵀ, 1]] estimate
  Eigen::VectorXd signs;  // ±1 read off the last column of `relaxation`
  Tightness tightness;
};

// Extracts relaxation, signs and tightness from a finished BQP solve.
BqpResult recover_bqp(SolveReport report);

// BQP fast path: D is diagonal, so the x-update is an elementwise division.
BqpResult solve_bqp(const SymMat& a0, const Eigen::VectorXd& b0,
                    const SolverConfig& cfg);

}  // namespace madmm
