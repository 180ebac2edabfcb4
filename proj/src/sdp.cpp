#include "madmm/sdp.hpp"

#include <string>

#include "admm_loop.hpp"
#include "madmm/errors.hpp"
#include "scaling.hpp"

namespace madmm {

SdpProblem::SdpProblem(SymMat a0, std::vector<SymMat> a_list, Eigen::VectorXd c)
    : a0_(std::move(a0)), a_(std::move(a_list)), c_(std::move(c)) {
  if (a_.empty()) throw DimensionError("SdpProblem: need at least one A_i");
  if (c_.size() != m()) {
    throw DimensionError("SdpProblem: c has length " + std::to_string(c_.size()) +
                         " but there are " + std::to_string(m()) + " matrices");
  }
  const Eigen::Index n2 = n() * n();
  a_tilde_.resize(n2, m());
  for (Eigen::Index i = 0; i < m(); ++i) {
    if (a_[i].n() != n()) throw DimensionError("SdpProblem: A_i size mismatch");
    a_tilde_.col(i) = vec(a_[i]);
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a_tilde_);
  const Eigen::VectorXd& sv = svd.singularValues();
  if (!(sv(sv.size() - 1) > 1e-10 * sv(0))) {
    throw IllPosedError(
        "SdpProblem: constraint matrices are linearly dependent (duplicated or "
        "contradicting constraints)");
  }
}

SymMat SdpProblem::lmi(const Eigen::VectorXd& x) const {
  if (x.size() != m()) throw DimensionError("SdpProblem::lmi: x has wrong length");
  Eigen::VectorXd v = vec(a0_) + a_tilde_ * x;
  return adopt_symmetric(Eigen::Map<Eigen::MatrixXd>(v.data(), n(), n()));
}

namespace detail {

void require_positive_definite(const Eigen::MatrixXd& d, const char* what) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(d, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = es.eigenvalues();
  if (es.info() != Eigen::Success || !(ev(0) > 1e-20 * ev(ev.size() - 1)) ||
      !(ev(ev.size() - 1) > 0.0)) {
    throw IllPosedError(std::string(what) +
                        ": scaled normal matrix is singular (rank-deficient "
                        "constraint set)");
  }
}

SdpXUpdate::SdpXUpdate(const SdpProblem& p, const Eigen::MatrixXd& sqrt_h) : p_(p) {
  const Eigen::Map<const Eigen::VectorXd> s(sqrt_h.data(), sqrt_h.size());
  w_ = s.asDiagonal() * p.a_tilde();
  scaled_a0_ = s.cwiseProduct(vec(p.a0()));
  gram_ = w_.transpose() * w_;
  require_positive_definite(gram_, "x_update_primal");
  chol_.compute(gram_);
}

Eigen::VectorXd SdpXUpdate::operator()(const Eigen::MatrixXd& target) const {
  const Eigen::Map<const Eigen::VectorXd> t(target.data(), target.size());
  const Eigen::VectorXd r = scaled_a0_ - t;
  // Stationarity: c + Wᵀ(W x + r) = 0.
  return chol_.solve(-(p_.c() + w_.transpose() * r));
}

}  // namespace detail

Eigen::VectorXd x_update_primal(const SdpProblem& p, const SymMat& target,
                                const StepMode& mode) {
  if (target.n() != p.n()) throw DimensionError("x_update_primal: target size");
  const detail::Scaling s(mode, p.n());
  return detail::SdpXUpdate(p, s.sqrt_weights())(target.matrix());
}

SolveReport solve_standard_sdp(const SdpProblem& p, const SolverConfig& cfg) {
  const detail::Scaling s(cfg.mode, p.n());
  const detail::SdpXUpdate update(p, s.sqrt_weights());
  const Eigen::VectorXd vec_a0 = vec(p.a0());
  return detail::run_admm(
      p.n(), s, cfg, [&](const Eigen::MatrixXd& z_t, const Eigen::MatrixXd& l_t) {
        detail::PrimalStep out;
        out.x = update(z_t - l_t);
        Eigen::VectorXd v = vec_a0 + p.a_tilde() * out.x;
        const Eigen::Map<Eigen::MatrixXd> lmi(v.data(), p.n(), p.n());
        out.cone = 0.5 * (lmi + lmi.transpose());
        return out;
      });
}

bool residual_monotone(const std::vector<IterationRecord>& history) {
  for (std::size_t i = 1; i < history.size(); ++i) {
    const double prev = history[i - 1].displacement;
    const double slack = 1e-12 * (prev + history[i - 1].zeta_norm);
    if (history[i].displacement > prev + slack) return false;
  }
  return true;
}

}  // namespace madmm
