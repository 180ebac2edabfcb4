#include <gtest/gtest.h>

#include <cmath>

#include "madmm/errors.hpp"
#include "madmm/generate.hpp"
#include "madmm/harness.hpp"
#include "madmm/qcqp.hpp"
#include "test_util.hpp"

namespace madmm {
namespace {

using testing::gaussian_vec;
using testing::random_metric;
using testing::random_sym;

QcqpProblem small_qcqp(std::uint64_t seed, Eigen::Index n, Eigen::Index m,
                       bool random_c) {
  GenConfig g;
  g.n = n;
  g.m = m;
  g.seed = seed;
  const QcqpProblem base = generate_matrix_fractional(g);
  if (!random_c) return base;
  Rng rng(seed ^ 0x5a5a);
  return QcqpProblem(base.a_list(), base.b_list(), gaussian_vec(rng, m));
}

// Inputs of one x-update: √H blocks plus scaled iterates.
struct UpdateCase {
  Eigen::MatrixXd sqrt_h;
  Eigen::MatrixXd z;
  Eigen::MatrixXd l;
};

UpdateCase random_case(Rng& rng, Eigen::Index n) {
  return {random_metric(rng, n + 1).sqrt_weights(), random_sym(rng, n + 1).matrix(),
          random_sym(rng, n + 1).matrix()};
}

// −⟨c, x⟩ + ½‖√H ⊙ L(x) − Z̃ + Λ̃‖² restricted to the x-dependent blocks; the
// corner does not depend on x and is dropped.
double smooth_objective(const QcqpProblem& p, const UpdateCase& u, const Eigen::VectorXd& x) {
  const Eigen::Index n = p.n();
  Eigen::MatrixXd r = u.sqrt_h.cwiseProduct(assemble_lifted(p, x, 0.0).cone_matrix.matrix()) -
                      u.z + u.l;
  r(n, n) = 0.0;
  return -p.c().dot(x) + 0.5 * r.squaredNorm();
}

Eigen::VectorXd fd_gradient(const QcqpProblem& p, const UpdateCase& u,
                            const Eigen::VectorXd& x) {
  Eigen::VectorXd g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double h = 1e-6 * std::max(1.0, std::abs(x(i)));
    Eigen::VectorXd xp = x, xm = x;
    xp(i) += h;
    xm(i) -= h;
    g(i) = (smooth_objective(p, u, xp) - smooth_objective(p, u, xm)) / (2 * h);
  }
  return g;
}

TEST(QcqpProblem, RejectsBadInput) {
  const SymMat a = SymMat::identity(3);
  const Eigen::VectorXd b = Eigen::VectorXd::Zero(3);
  EXPECT_THROW(QcqpProblem({a}, {b}, Eigen::VectorXd(0)), DimensionError);
  EXPECT_THROW(QcqpProblem({a, a}, {b}, Eigen::VectorXd::Ones(1)), DimensionError);
  EXPECT_THROW(QcqpProblem({a, a}, {b, b}, Eigen::VectorXd::Ones(2)), DimensionError);
  EXPECT_THROW(QcqpProblem({a, SymMat::identity(2)}, {b, b}, Eigen::VectorXd::Ones(1)),
               DimensionError);
}

TEST(AssembleLifted, Example) {
  const QcqpProblem p({SymMat::identity(2), SymMat::diagonal(Eigen::Vector2d(1.0, 0.0))},
                      {Eigen::Vector2d(1.0, 2.0), Eigen::Vector2d(0.0, 1.0)},
                      Eigen::VectorXd::Zero(1));
  const LiftedPoint lp = assemble_lifted(p, Eigen::VectorXd::Constant(1, 3.0), 0.5);
  Eigen::Matrix3d want;
  want << 4, 0, 1, 0, 1, 5, 1, 5, -0.5;
  EXPECT_EQ((lp.cone_matrix.matrix() - want).norm(), 0.0);
  const LiftedBlocks b = LiftedBlocks::split(want);
  EXPECT_EQ(b.corner, -0.5);
  EXPECT_EQ(b.edge, Eigen::Vector2d(1.0, 5.0));
  EXPECT_EQ(b.top, want.topLeftCorner(2, 2));
  EXPECT_THROW(assemble_lifted(p, Eigen::VectorXd::Zero(2), 0.0), DimensionError);
}

TEST(X22Update, ExamplesAndStationarity) {
  EXPECT_DOUBLE_EQ(x22_update(1.0, 0.0, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(x22_update(2.0, 1.0, 3.0), (2.0 + 0.5) / 2.0);
  EXPECT_THROW(x22_update(0.0, 0.0, 0.0), MetricError);
  Rng rng(1);
  for (int t = 0; t < 50; ++t) {
    const double s = testing::log_uniform(rng, 1e-2, 1e2);
    const double z = rng.normal(0, 1), l = rng.normal(0, 1);
    const double x = x22_update(s, z, l);
    // d/dx22 of −x22 + ½(−s·x22 − z + l)².
    auto f = [&](double v) { return -v + 0.5 * std::pow(-s * v - z + l, 2); };
    const double h = 1e-6 * std::max(1.0, std::abs(x));
    EXPECT_NEAR((f(x + h) - f(x - h)) / (2 * h), 0.0, 1e-6 * std::max(1.0, s * s * std::abs(x)));
  }
}

TEST(XUpdateQcqp, UnclippedSolutionIsStationary) {
  Rng rng(2);
  for (int t = 0; t < 30; ++t) {
    const QcqpProblem p = small_qcqp(10 + t, 4, 3, true);
    const UpdateCase u = random_case(rng, p.n());
    Eigen::VectorXd unclipped;
    const MetricBlocks s = LiftedBlocks::split(u.sqrt_h);
    const Eigen::VectorXd x = x_update_qcqp(p, s, LiftedBlocks::split(u.z),
                                            LiftedBlocks::split(u.l), &unclipped);
    EXPECT_EQ(x, unclipped.cwiseMax(0.0));
    const Eigen::VectorXd g = fd_gradient(p, u, unclipped);
    EXPECT_LE(g.norm(), 1e-6 * std::max(1.0, unclipped.norm()));
  }
}

TEST(XUpdateQcqp, ExactUpdateSatisfiesBoundKkt) {
  Rng rng(3);
  int active = 0;
  for (int t = 0; t < 40; ++t) {
    const QcqpProblem p = small_qcqp(100 + t, 4, 4, true);
    const UpdateCase u = random_case(rng, p.n());
    const MetricBlocks s = LiftedBlocks::split(u.sqrt_h);
    const LiftedBlocks z = LiftedBlocks::split(u.z), l = LiftedBlocks::split(u.l);
    const Eigen::VectorXd x = x_update_qcqp_exact(p, s, z, l);
    const Eigen::VectorXd clip = x_update_qcqp(p, s, z, l);
    ASSERT_GE(x.minCoeff(), 0.0);
    const Eigen::VectorXd g = fd_gradient(p, u, x);
    const double tol = 1e-5 * std::max(1.0, g.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      if (x(i) > 0.0) {
        EXPECT_NEAR(g(i), 0.0, tol);
      } else {
        EXPECT_GE(g(i), -tol);
        ++active;
      }
    }
    EXPECT_LE(smooth_objective(p, u, x), smooth_objective(p, u, clip) + 1e-10);
  }
  EXPECT_GT(active, 0);
}

TEST(NonnegativeQp, MatchesEnumeration) {
  Rng rng(4);
  for (int t = 0; t < 50; ++t) {
    const Eigen::Index m = testing::uniform_int(rng, 1, 6);
    const Eigen::MatrixXd g = testing::gaussian(rng, m + 2, m);
    const Eigen::MatrixXd d = g.transpose() * g;
    const Eigen::VectorXd r = gaussian_vec(rng, m);
    const Eigen::VectorXd x = nonnegative_qp(d, r);
    // Enumerate every support set and keep the best feasible stationary point.
    double best = INFINITY;
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
      std::vector<Eigen::Index> idx;
      for (Eigen::Index i = 0; i < m; ++i) {
        if (mask & (1u << i)) idx.push_back(i);
      }
      Eigen::VectorXd y = Eigen::VectorXd::Zero(m);
      if (!idx.empty()) {
        const Eigen::Index f = static_cast<Eigen::Index>(idx.size());
        Eigen::MatrixXd df(f, f);
        Eigen::VectorXd rf(f);
        for (Eigen::Index a = 0; a < f; ++a) {
          rf(a) = r(idx[a]);
          for (Eigen::Index b = 0; b < f; ++b) df(a, b) = d(idx[a], idx[b]);
        }
        const Eigen::VectorXd yf = df.ldlt().solve(rf);
        for (Eigen::Index a = 0; a < f; ++a) y(idx[a]) = yf(a);
      }
      if (y.minCoeff() < 0.0) continue;
      best = std::min(best, 0.5 * y.dot(d * y) - r.dot(y));
    }
    EXPECT_NEAR(0.5 * x.dot(d * x) - r.dot(x), best, 1e-10 * std::max(1.0, std::abs(best)));
  }
}

TEST(SolveQcqp, ZeroDataGivesZeroCorner) {
  GenConfig g;
  g.n = 4;
  g.m = 2;
  g.seed = 5;
  const QcqpProblem base = generate_matrix_fractional(g);
  std::vector<Eigen::VectorXd> b(base.b_list().size(), Eigen::VectorXd::Zero(4));
  const QcqpProblem p(base.a_list(), b, Eigen::VectorXd::Zero(2));
  SolverConfig cfg;
  cfg.eps = 1e-12;
  const SolveReport r = solve_qcqp(p, cfg);
  ASSERT_TRUE(r.converged);
  EXPECT_NEAR(r.x22, 0.0, 1e-8);
  EXPECT_TRUE(residual_monotone(r));
}

// (b0 + Bx)ᵀ(A0 + Σ xᵢAᵢ)⁻¹(b0 + Bx) and its gradient.
double fractional_value(const QcqpProblem& p, const Eigen::VectorXd& x, Eigen::VectorXd* grad) {
  Eigen::MatrixXd a = p.a(0).matrix();
  for (Eigen::Index i = 0; i < p.m(); ++i) a += x(i) * p.a(i + 1).matrix();
  const Eigen::VectorXd b = p.b(0) + p.b_mat() * x;
  const Eigen::VectorXd y = a.ldlt().solve(b);
  if (grad) {
    grad->resize(p.m());
    for (Eigen::Index i = 0; i < p.m(); ++i) {
      (*grad)(i) = 2.0 * p.b(i + 1).dot(y) - y.dot(p.a(i + 1).matrix() * y);
    }
  }
  return b.dot(y);
}

TEST(SolveQcqp, MatrixFractionalMatchesProjectedGradient) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const QcqpProblem p = small_qcqp(seed, 5, 2, false);
    // Projected gradient with backtracking on the convex reduced objective.
    Eigen::VectorXd x = Eigen::VectorXd::Zero(p.m());
    double step = 1.0;
    for (int it = 0; it < 20000; ++it) {
      Eigen::VectorXd g;
      const double f = fractional_value(p, x, &g);
      for (;;) {
        const Eigen::VectorXd xn = (x - step * g).cwiseMax(0.0);
        if (fractional_value(p, xn, nullptr) <=
            f + g.dot(xn - x) + (xn - x).squaredNorm() / (2 * step)) {
          x = xn;
          step *= 1.5;
          break;
        }
        step *= 0.5;
      }
    }
    const double want = fractional_value(p, x, nullptr);

    for (const StepMode& mode :
         {StepMode{ScalarStep{1.0}}, StepMode{Metric(p.lifted_dim(), p.n(), 0.5, 3.0)}}) {
      SolverConfig cfg;
      cfg.mode = mode;
      cfg.eps = 1e-12;
      cfg.max_iter = 1000000;
      const SolveReport r = solve_qcqp(p, cfg);
      ASSERT_TRUE(r.converged);
      EXPECT_TRUE(residual_monotone(r));
      EXPECT_NEAR(-r.x22, want, 1e-6 * std::max(1.0, want));
      EXPECT_NEAR(fractional_value(p, r.x, nullptr), want, 1e-6 * std::max(1.0, want));
      EXPECT_LE((r.x - x).norm(), 1e-4 * std::max(1.0, x.norm()));
    }
  }
}

TEST(SolveQcqp, ClipRuleStillRuns) {
  const QcqpProblem p = small_qcqp(9, 4, 2, false);
  SolverConfig cfg;
  cfg.max_iter = 2000;
  const SolveReport r = solve_qcqp(p, cfg, XUpdateRule::kClip);
  EXPECT_GE(r.x.minCoeff(), 0.0);
  EXPECT_TRUE(residual_monotone(r));
}

TEST(Tightness, Examples) {
  const Eigen::Vector3d v(1.0, -2.0, 0.5);
  const Tightness a = tightness_check(SymMat::from(v * v.transpose()));
  EXPECT_TRUE(a.is_rank1);
  EXPECT_LE(a.ratio, 1e-15);
  const Tightness b = tightness_check(SymMat::identity(3));
  EXPECT_FALSE(b.is_rank1);
  EXPECT_DOUBLE_EQ(b.ratio, 1.0);
  EXPECT_FALSE(tightness_check(SymMat(3)).is_rank1);
  EXPECT_FALSE(tightness_check(SymMat::diagonal(Eigen::Vector2d(1.0, 1e-5))).is_rank1);
  EXPECT_TRUE(tightness_check(SymMat::diagonal(Eigen::Vector2d(1.0, 1e-7))).is_rank1);
}

TEST(MakeBqpProblem, Structure) {
  const QcqpProblem p = make_bqp_problem(SymMat::identity(3), Eigen::Vector3d(1, 2, 3));
  EXPECT_EQ(p.m(), 3);
  EXPECT_EQ(p.c(), -Eigen::VectorXd::Ones(3));
  EXPECT_EQ(p.b_mat().norm(), 0.0);
  EXPECT_EQ(p.a(2).matrix(), SymMat::diagonal(Eigen::Vector3d(0, 1, 0)).matrix());
  EXPECT_THROW(make_bqp_problem(SymMat::identity(3), Eigen::Vector2d(1, 2)), DimensionError);
}

TEST(SolveBqp, FastPathMatchesGenericSolver) {
  Rng rng(6);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    GenConfig g;
    g.kind = ProblemKind::kBqp;
    g.n = 6;
    g.seed = seed;
    g.noise = 0.3;
    const BqpInstance inst = generate_bqp(g);
    for (const StepMode& mode :
         {StepMode{ScalarStep{0.8}}, StepMode{Metric(7, 6, 1.3, 0.6)},
          StepMode{random_metric(rng, 7)}}) {
      SolverConfig cfg;
      cfg.mode = mode;
      cfg.eps = 1e-300;
      cfg.max_iter = 200;
      const BqpResult fast = solve_bqp(inst.a0, inst.b0, cfg);
      const SolveReport slow = solve_qcqp(make_bqp_problem(inst.a0, inst.b0), cfg);
      EXPECT_LE((fast.report.x - slow.x).norm(), 1e-12 * std::max(1.0, slow.x.norm()));
      EXPECT_LE((fast.report.dual.matrix() - slow.dual.matrix()).norm(),
                1e-12 * std::max(1.0, slow.dual.norm()));
      EXPECT_NEAR(fast.report.x22, slow.x22, 1e-12 * std::max(1.0, std::abs(slow.x22)));
    }
  }
}

TEST(SolveBqp, NoiseFreeRecoversPlantedMinimizer) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    GenConfig g;
    g.kind = ProblemKind::kBqp;
    g.n = 8;
    g.seed = seed;
    const BqpInstance inst = generate_bqp(g);
    SolverConfig cfg;
    cfg.eps = 1e-12;
    cfg.max_iter = 1000000;
    const BqpResult r = solve_bqp(inst.a0, inst.b0, cfg);
    ASSERT_TRUE(r.report.converged);
    EXPECT_TRUE(residual_monotone(r.report));
    EXPECT_TRUE(r.tightness.is_rank1) << "ratio " << r.tightness.ratio;
    EXPECT_EQ(r.signs, -inst.x0);
    const BruteForceResult bf = brute_force_bqp(inst.a0, inst.b0);
    EXPECT_EQ(r.signs, bf.x);
    // Relaxation diagonal is pinned to one by the Aᵢ = eᵢeᵢᵀ constraints.
    EXPECT_LE((r.relaxation.matrix().diagonal().array() - 1.0).abs().maxCoeff(), 1e-5);
  }
}

TEST(SolveBqp, TwoVariableExample) {
  const BqpResult r = solve_bqp(SymMat::identity(2), Eigen::Vector2d(10.0, 10.0), {});
  ASSERT_TRUE(r.report.converged);
  EXPECT_EQ(r.signs, Eigen::Vector2d(-1.0, -1.0));
  EXPECT_TRUE(r.tightness.is_rank1);
}

}  // namespace
}  // namespace madmm
