#include "madmm/qcqp.hpp"

#include <cmath>
#include <algorithm>
#include <string>
#include <vector>

#include "admm_loop.hpp"
#include "madmm/errors.hpp"
#include "madmm/sdp.hpp"
#include "scaling.hpp"

namespace madmm {

namespace {

Eigen::VectorXd vec_of(const Eigen::MatrixXd& m) {
  return Eigen::Map<const Eigen::VectorXd>(m.data(), m.size());
}

Eigen::MatrixXd assemble(const Eigen::MatrixXd& top, const Eigen::VectorXd& edge,
                         double x22) {
  const Eigen::Index n = top.rows();
  Eigen::MatrixXd out(n + 1, n + 1);
  out.topLeftCorner(n, n) = top;
  out.col(n).head(n) = edge;
  out.row(n).head(n) = edge.transpose();
  out(n, n) = -x22;
  return out;
}

// Dense D, general problem.
class DenseXUpdate {
 public:
  DenseXUpdate(const QcqpProblem& p, const MetricBlocks& s) : p_(p) {
    w_ = vec_of(s.top).asDiagonal() * p.a_tilde();
    bs_ = s.edge.asDiagonal() * p.b_mat();
    scaled_a0_ = vec_of(s.top.cwiseProduct(p.a(0).matrix()));
    s0b0_ = s.edge.cwiseProduct(p.b(0));
    d_ = w_.transpose() * w_ + 2.0 * bs_.transpose() * bs_;
    detail::require_positive_definite(d_, "x_update_qcqp");
    chol_.compute(d_);
  }

  Eigen::VectorXd operator()(const LiftedBlocks& z, const LiftedBlocks& l,
                             Eigen::VectorXd* unclipped) const {
    const Eigen::VectorXd r = rhs(z, l);
    Eigen::VectorXd x = chol_.solve(r);
    if (unclipped) *unclipped = x;
    if (rule_ == XUpdateRule::kExact && x.minCoeff() < 0.0) return nonnegative_qp(d_, r);
    return x.cwiseMax(0.0);
  }

  void set_rule(XUpdateRule rule) { rule_ = rule; }

 private:
  Eigen::VectorXd rhs(const LiftedBlocks& z, const LiftedBlocks& l) const {
    const Eigen::VectorXd r1 = scaled_a0_ - vec_of(z.top) + vec_of(l.top);
    const Eigen::VectorXd r0 = s0b0_ - z.edge + l.edge;
    return p_.c() - w_.transpose() * r1 - 2.0 * bs_.transpose() * r0;
  }

  const QcqpProblem& p_;
  XUpdateRule rule_ = XUpdateRule::kClip;
  Eigen::MatrixXd d_;
  Eigen::MatrixXd w_;
  Eigen::MatrixXd bs_;
  Eigen::VectorXd scaled_a0_;
  Eigen::VectorXd s0b0_;
  Eigen::LLT<Eigen::MatrixXd> chol_;
};

void check_blocks(const QcqpProblem& p, const LiftedBlocks& b, const char* what) {
  if (b.top.rows() != p.n() || b.top.cols() != p.n() || b.edge.size() != p.n()) {
    throw DimensionError(std::string("x_update_qcqp: ") + what +
                         " blocks do not match n=" + std::to_string(p.n()));
  }
}

template <typename Update, typename Lmi>
SolveReport run_qcqp(const QcqpProblem& p, const detail::Scaling& s,
                     const MetricBlocks& sb, const SolverConfig& cfg,
                     const Update& update, const Lmi& lmi) {
  const Eigen::Index n = p.n();
  return detail::run_admm(
      n + 1, s, cfg, [&](const Eigen::MatrixXd& z_t, const Eigen::MatrixXd& l_t) {
        const LiftedBlocks z = LiftedBlocks::split(z_t);
        const LiftedBlocks l = LiftedBlocks::split(l_t);
        detail::PrimalStep out;
        out.x = update(z, l, nullptr);
        out.x22 = x22_update(sb.corner, z.corner, l.corner);
        out.cone = assemble(lmi(out.x), p.b(0) + p.b_mat() * out.x, out.x22);
        return out;
      });
}

}  // namespace

QcqpProblem::QcqpProblem(std::vector<SymMat> a_list,
                         std::vector<Eigen::VectorXd> b_list, Eigen::VectorXd c)
    : a_(std::move(a_list)), b_(std::move(b_list)), c_(std::move(c)) {
  if (a_.size() < 2) throw DimensionError("QcqpProblem: need A0 and at least A1");
  if (b_.size() != a_.size()) {
    throw DimensionError("QcqpProblem: need as many b_i as A_i");
  }
  if (c_.size() != m()) throw DimensionError("QcqpProblem: c must have length m");
  const Eigen::Index nn = n();
  b_mat_.resize(nn, m());
  a_tilde_.resize(nn * nn, m());
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (a_[i].n() != nn || b_[i].size() != nn) {
      throw DimensionError("QcqpProblem: A_" + std::to_string(i) + "/b_" +
                           std::to_string(i) + " size mismatch");
    }
    if (i > 0) {
      b_mat_.col(i - 1) = b_[i];
      a_tilde_.col(i - 1) = vec(a_[i]);
    }
  }
}

LiftedPoint assemble_lifted(const QcqpProblem& p, const Eigen::VectorXd& x,
                            double x22) {
  if (x.size() != p.m()) throw DimensionError("assemble_lifted: x has wrong length");
  Eigen::VectorXd top = vec(p.a(0)) + p.a_tilde() * x;
  const Eigen::Map<Eigen::MatrixXd> t(top.data(), p.n(), p.n());
  Eigen::MatrixXd cone =
      assemble(0.5 * (t + t.transpose()), p.b(0) + p.b_mat() * x, x22);
  return {x, x22, adopt_symmetric(std::move(cone))};
}

LiftedBlocks LiftedBlocks::split(const Eigen::MatrixXd& v) {
  const Eigen::Index n = v.rows() - 1;
  return {v.topLeftCorner(n, n), v.col(n).head(n), v(n, n)};
}

Eigen::VectorXd x_update_qcqp(const QcqpProblem& p, const MetricBlocks& s,
                              const LiftedBlocks& z_t, const LiftedBlocks& l_t,
                              Eigen::VectorXd* unclipped) {
  check_blocks(p, s, "metric");
  check_blocks(p, z_t, "Z");
  check_blocks(p, l_t, "Lambda");
  return DenseXUpdate(p, s)(z_t, l_t, unclipped);
}

Eigen::VectorXd x_update_qcqp_exact(const QcqpProblem& p, const MetricBlocks& s,
                                    const LiftedBlocks& z_t, const LiftedBlocks& l_t) {
  check_blocks(p, s, "metric");
  check_blocks(p, z_t, "Z");
  check_blocks(p, l_t, "Lambda");
  DenseXUpdate u(p, s);
  u.set_rule(XUpdateRule::kExact);
  return u(z_t, l_t, nullptr);
}

Eigen::VectorXd nonnegative_qp(const Eigen::MatrixXd& d, const Eigen::VectorXd& r) {
  const Eigen::Index m = r.size();
  if (d.rows() != m || d.cols() != m) throw DimensionError("nonnegative_qp: size mismatch");
  const double tol = 1e-14 * std::max(1.0, r.cwiseAbs().maxCoeff());
  std::vector<char> free(m, 0);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(m);

  // z = argmin over the free set with the others pinned at zero.
  auto solve_free = [&]() {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (free[i]) idx.push_back(i);
    }
    const Eigen::Index f = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXd dff(f, f);
    Eigen::VectorXd rf(f);
    for (Eigen::Index a = 0; a < f; ++a) {
      rf(a) = r(idx[a]);
      for (Eigen::Index b = 0; b < f; ++b) dff(a, b) = d(idx[a], idx[b]);
    }
    const Eigen::VectorXd zf = dff.llt().solve(rf);
    Eigen::VectorXd z = Eigen::VectorXd::Zero(m);
    for (Eigen::Index a = 0; a < f; ++a) z(idx[a]) = zf(a);
    return z;
  };

  for (Eigen::Index outer = 0; outer < 3 * m + 10; ++outer) {
    const Eigen::VectorXd w = r - d * x;
    Eigen::Index best = -1;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (!free[i] && w(i) > tol && (best < 0 || w(i) > w(best))) best = i;
    }
    if (best < 0) return x;
    free[best] = 1;
    for (Eigen::Index inner = 0; inner <= m; ++inner) {
      const Eigen::VectorXd z = solve_free();
      double alpha = 1.0;
      bool blocked = false;
      for (Eigen::Index i = 0; i < m; ++i) {
        if (free[i] && z(i) <= 0.0) {
          blocked = true;
          alpha = std::min(alpha, x(i) / (x(i) - z(i)));
        }
      }
      if (!blocked) {
        x = z;
        break;
      }
      x += alpha * (z - x);
      for (Eigen::Index i = 0; i < m; ++i) {
        if (free[i] && x(i) <= 0.0) {
          free[i] = 0;
          x(i) = 0.0;
        }
      }
    }
  }
  return x;
}

double x22_update(double s22, double z22, double l22) {
  if (!(s22 > 0.0)) throw MetricError("x22_update: s22 must be positive");
  return (-z22 + l22 + 1.0 / s22) / s22;
}

SolveReport solve_qcqp(const QcqpProblem& p, const SolverConfig& cfg, XUpdateRule rule) {
  const detail::Scaling s(cfg.mode, p.lifted_dim());
  const MetricBlocks sb = LiftedBlocks::split(s.sqrt_weights());
  DenseXUpdate update(p, sb);
  update.set_rule(rule);
  const Eigen::VectorXd vec_a0 = vec(p.a(0));
  const Eigen::Index n = p.n();
  return run_qcqp(p, s, sb, cfg, update, [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd v = vec_a0 + p.a_tilde() * x;
    const Eigen::Map<Eigen::MatrixXd> t(v.data(), n, n);
    return Eigen::MatrixXd(0.5 * (t + t.transpose()));
  });
}

Tightness tightness_check(const SymMat& m) {
  const Eigen::VectorXd ev = m.eigenvalues();
  const Eigen::Index n = ev.size();
  const double l1 = ev(n - 1);
  if (!(l1 > 0.0)) return {false, 1.0};
  const double l2 = n > 1 ? std::max(ev(n - 2), 0.0) : 0.0;
  const double ratio = l2 / l1;
  return {ratio <= 1e-6, ratio};
}

QcqpProblem make_bqp_problem(const SymMat& a0, const Eigen::VectorXd& b0) {
  const Eigen::Index n = a0.n();
  if (b0.size() != n) throw DimensionError("make_bqp_problem: b0 has wrong length");
  std::vector<SymMat> a{a0};
  std::vector<Eigen::VectorXd> b{b0};
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e(i) = 1.0;
    a.push_back(SymMat::diagonal(e));
    b.push_back(Eigen::VectorXd::Zero(n));
  }
  return QcqpProblem(std::move(a), std::move(b), -Eigen::VectorXd::Ones(n));
}

BqpResult recover_bqp(SolveReport report) {
  BqpResult out;
  out.relaxation = -report.dual;
  const Eigen::Index n = out.relaxation.n() - 1;
  out.signs.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.signs(i) = out.relaxation(i, n) < 0.0 ? -1.0 : 1.0;
  }
  out.tightness = tightness_check(out.relaxation);
  out.report = std::move(report);
  return out;
}

BqpResult solve_bqp(const SymMat& a0, const Eigen::VectorXd& b0,
                    const SolverConfig& cfg) {
  const Eigen::Index n = a0.n();
  if (b0.size() != n) throw DimensionError("solve_bqp: b0 has wrong length");
  // The generic problem object is kept for b0/B bookkeeping; B is zero.
  const QcqpProblem p = make_bqp_problem(a0, b0);
  const detail::Scaling s(cfg.mode, n + 1);
  const MetricBlocks sb = LiftedBlocks::split(s.sqrt_weights());

  const Eigen::VectorXd s_diag = sb.top.diagonal();
  const Eigen::VectorXd d = s_diag.cwiseAbs2();
  const Eigen::VectorXd scaled_a0_diag = s_diag.cwiseProduct(a0.matrix().diagonal());
  const Eigen::VectorXd c = p.c();
  auto update = [&](const LiftedBlocks& z, const LiftedBlocks& l,
                    Eigen::VectorXd*) -> Eigen::VectorXd {
    const Eigen::VectorXd r1 = scaled_a0_diag - z.top.diagonal() + l.top.diagonal();
    const Eigen::VectorXd rhs = c - s_diag.cwiseProduct(r1);
    return rhs.cwiseQuotient(d).cwiseMax(0.0);
  };
  const Eigen::MatrixXd& a0m = a0.matrix();
  return recover_bqp(run_qcqp(p, s, sb, cfg, update, [&](const Eigen::VectorXd& x) {
    Eigen::MatrixXd out = a0m;
    out.diagonal() += x;
    return out;
  }));
}

}  // namespace madmm
