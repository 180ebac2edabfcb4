// Acceptance suite: one PASS/FAIL line per criterion, tolerances pinned below.
// Exits non-zero when any criterion fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "madmm/errors.hpp"
#include "madmm/generate.hpp"
#include "madmm/harness.hpp"
#include "madmm/metric.hpp"
#include "madmm/qcqp.hpp"
#include "madmm/quartic.hpp"
#include "madmm/sdp.hpp"
#include "madmm/tuner.hpp"
#include "test_util.hpp"

namespace madmm {
namespace {

using testing::gaussian_vec;
using testing::log_uniform;
using testing::random_gram;
using testing::random_metric;
using testing::random_sym;
using testing::uniform_int;

// Pinned tolerances.
constexpr double kInvarianceSeconds = 10.0;
constexpr double kProjectionViolation = 1e-7;
constexpr double kProjectionPsdTol = 1e-10;
constexpr double kQuarticRelTol = 1e-9;
constexpr double kWorstCaseGammaTol = 1e-6;
constexpr double kWorstCaseFkRelTol = 1e-8;
constexpr double kScalarReductionTol = 1e-12;
constexpr double kP1Slack = 1e-12;
constexpr double kEndToEndFactor = 1.1;
constexpr double kBqpSeconds = 60.0;
constexpr double kBqpRecoveryFraction = 0.8;
constexpr double kRegimeOneBand = 0.15;
constexpr double kRegimeTwoFactor = 5.0;
constexpr double kRegimeThreeFactor = 20.0;
constexpr long kMetricIterationCap = 500;
constexpr double kSweepEps = 1e-8;
constexpr double kGradientTol = 1e-6;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Every solve in this binary reports here; criterion 7 reads the totals.
struct MonotoneLedger {
  long runs = 0;
  long violations = 0;
  void add(bool monotone) {
    ++runs;
    violations += !monotone;
  }
  void add(const SolveReport& r) { add(residual_monotone(r)); }
} g_monotone;

SolveReport tracked(const Problem& p, const SolverConfig& cfg) {
  SolveReport r = solve(p, cfg);
  g_monotone.add(r);
  return r;
}

Problem matrix_fractional(Eigen::Index n, Eigen::Index m, double sa, double sb,
                          std::uint64_t seed) {
  GenConfig g;
  g.n = n;
  g.m = m;
  g.sigma_a = sa;
  g.sigma_b = sb;
  g.seed = seed;
  return generate(g);
}

Problem standard_sdp(Eigen::Index n, Eigen::Index m, std::uint64_t seed) {
  GenConfig g;
  g.kind = ProblemKind::kStandardSdp;
  g.n = n;
  g.m = m;
  g.seed = seed;
  return generate(g);
}

// 1. PSD status of V and S·V agree.
Outcome metric_invariance() {
  Rng rng(101);
  const auto t0 = std::chrono::steady_clock::now();
  int disagree = 0, psd_cases = 0;
  for (int t = 0; t < 500; ++t) {
    const Eigen::Index n = uniform_int(rng, 2, 50);
    const Metric m = random_metric(rng, n);
    SymMat v(n);
    switch (t % 5) {
      case 0: v = random_gram(rng, n, n); break;
      case 1: v = random_gram(rng, n, uniform_int(rng, 1, n)); break;
      case 2: v = random_sym(rng, n); break;
      case 3: v = -1.0 * random_gram(rng, n, n); break;
      default: {
        const SymMat g = random_gram(rng, n, uniform_int(rng, 1, n));
        v = g - 1e-3 * g.max_eigenvalue() * SymMat::identity(n);
      }
    }
    const auto [a, b] = invariance_holds(m, v);
    disagree += a != b;
    psd_cases += a;
  }
  const double secs = seconds_since(t0);
  return {disagree == 0 && secs < kInvarianceSeconds,
          std::to_string(disagree) + "/500 disagreements, " + std::to_string(psd_cases) +
              " PSD cases, " + fmt("%.2f s", secs)};
}

// 2. ⟨M(V − Z), W − Z⟩ ≤ 0 for PSD W, relative to ‖S V‖·‖S(W − Z)‖. The scale
// is that of V, not of the residual V − Z, which is pure round-off when V ⪰ 0.
Outcome projection_optimality() {
  Rng rng(202);
  double worst = 0.0;
  int not_psd = 0;
  for (int t = 0; t < 200; ++t) {
    const Eigen::Index n = uniform_int(rng, 2, 12);
    const Metric m = random_metric(rng, n);
    const SymMat v = random_sym(rng, n, log_uniform(rng, 1e-2, 1e2));
    const SymMat z = scaled_projection(m, v);
    not_psd += !is_psd(z, kProjectionPsdTol);
    const SymMat r = apply_m(m, v - z);
    const double vn = apply_s(m, v).norm();
    for (int s = 0; s < 200; ++s) {
      SymMat w(n);
      switch (s % 3) {
        case 0: w = random_gram(rng, n, uniform_int(rng, 1, n)) * log_uniform(rng, 1e-3, 1e1); break;
        case 1: {
          const Eigen::VectorXd u = gaussian_vec(rng, n);
          w = z + SymMat::from(u * u.transpose()) * log_uniform(rng, 1e-4, 1e1);
          break;
        }
        default: w = z * log_uniform(rng, 0.0 + 1e-3, 3.0);
      }
      const double denom = std::max(1e-300, vn * apply_s(m, w - z).norm());
      worst = std::max(worst, r.inner(w - z) / denom);
    }
  }
  return {worst <= kProjectionViolation && not_psd == 0,
          "worst normalized violation " + fmt("%.2e", worst) + ", " +
              std::to_string(not_psd) + " non-PSD outputs"};
}

double bisect_root(const QuarticCoeffs& c) {
  double lo = 0.0;
  double hi = 1.0 + std::max({std::abs(c.b), std::abs(c.d), std::abs(c.e)}) / c.a;
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (c(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// 3. Closed-form positive root against bisection; exactly one positive real root.
Outcome quartic_correctness() {
  Rng rng(303);
  double worst = 0.0;
  int bad_count = 0;
  for (int t = 0; t < 10000; ++t) {
    auto norm = [&] { return log_uniform(rng, 1e-4, 1e4); };
    const QuarticCoeffs c = quartic_coeffs({norm(), norm(), norm()}, {norm(), norm(), norm()});
    const double want = bisect_root(c);
    const double got = unique_positive_root(c);
    worst = std::max(worst, std::abs(got - want) / want);
    int positive = 0;
    for (const auto& z : roots_closed_form(c)) {
      const bool real = std::abs(z.imag()) <= 1e-7 * std::max(1.0, std::abs(z));
      positive += real && z.real() > 0.0;
    }
    bad_count += positive != 1;
  }
  return {worst <= kQuarticRelTol && bad_count == 0,
          "max relative error " + fmt("%.2e", worst) + ", " + std::to_string(bad_count) +
              "/10000 without exactly one positive real root"};
}

// 4. Λ⋆ = −c·X⋆ collapses the tuned metric to the optimal scalar at every split.
Outcome worst_case() {
  Rng rng(404);
  double g1_err = 0.0, g2_err = 0.0, fk_spread = 0.0;
  for (int t = 0; t < 20; ++t) {
    const Eigen::Index n = uniform_int(rng, 3, 12);
    const double c = log_uniform(rng, 1e-2, 1e2);
    const SymMat x = random_gram(rng, n, uniform_int(rng, 1, n));
    const ReferencePair ref(x, -c * x);
    const double want = optimal_scalar(ref);
    const TuneResult r = tune(ref);
    double fmin = INFINITY, fmax = 0.0;
    for (const PartitionFit& f : r.per_k) {
      g1_err = std::max(g1_err, std::abs(f.gamma1 - want));
      g2_err = std::max(g2_err, std::abs(f.gamma2 - 1.0));
      fmin = std::min(fmin, f.f);
      fmax = std::max(fmax, f.f);
    }
    fk_spread = std::max(fk_spread, (fmax - fmin) / fmax);
  }
  return {g1_err <= kWorstCaseGammaTol && g2_err <= kWorstCaseGammaTol &&
              fk_spread <= kWorstCaseFkRelTol,
          "max |γ1 − ‖Λ‖/‖X‖| " + fmt("%.1e", g1_err) + ", max |γ2 − 1| " +
              fmt("%.1e", g2_err) + ", f_K spread " + fmt("%.1e", fk_spread)};
}

// 5. Metric (k, γ, 1) reproduces scalar γ iterate by iterate.
Outcome scalar_reduction() {
  Rng rng(505);
  double worst = 0.0;
  for (int t = 0; t < 10; ++t) {
    const Problem p = t % 2 ? standard_sdp(6, 3, 500 + t) : matrix_fractional(6, 3, 1, 1, 500 + t);
    const Eigen::Index dim = cone_dim(p);
    const double gamma = log_uniform(rng, 1e-1, 1e1);
    const Metric metric(dim, uniform_int(rng, 1, dim - 1), gamma, 1.0);
    for (long it = 1; it <= 50; ++it) {
      SolverConfig a;
      a.mode = ScalarStep{gamma};
      a.eps = 1e-300;
      a.max_iter = it;
      SolverConfig b = a;
      b.mode = metric;
      const SolveReport ra = tracked(p, a);
      const SolveReport rb = tracked(p, b);
      const double scale = std::max(1.0, ra.x.norm());
      worst = std::max(worst, (ra.x - rb.x).norm() / scale);
      worst = std::max(worst, std::abs(ra.x22 - rb.x22) / std::max(1.0, std::abs(ra.x22)));
    }
  }
  return {worst <= kScalarReductionTol, "max relative iterate gap " + fmt("%.2e", worst)};
}

// 6. Tuned pair never has a larger rate objective than (γ⋆, 1), and the
// end-to-end metric solve stays within 1.1× the γ⋆-scalar solve.
Outcome no_worse_than_scalar() {
  Rng rng(606);
  int p1_bad = 0;
  for (int t = 0; t < 100; ++t) {
    const Eigen::Index n = uniform_int(rng, 3, 15);
    Eigen::VectorXd d = Eigen::VectorXd::Ones(n);
    d.tail(uniform_int(rng, 1, n - 1)) *= log_uniform(rng, 1e-2, 1e2);
    const SymMat x = random_gram(rng, n, uniform_int(rng, 1, n));
    const SymMat l = random_gram(rng, n, uniform_int(rng, 1, n));
    const ReferencePair ref(SymMat::from(d.asDiagonal() * x.matrix() * d.asDiagonal()),
                            SymMat::from(-(d.cwiseInverse().asDiagonal() * l.matrix() *
                                           d.cwiseInverse().asDiagonal())));
    const TuneResult r = tune(ref);
    const double g = optimal_scalar(ref);
    const BlockPartition part(n, r.k_star);
    const BlockNorms xb = block_norms(ref.x_star, part), lb = block_norms(ref.lambda_star, part);
    const double tuned = rate_objective(xb, lb, r.gamma1, r.gamma2);
    const double scalar = rate_objective(xb, lb, g, 1.0);
    p1_bad += tuned > scalar * (1.0 + kP1Slack);
  }

  const std::array<std::array<double, 2>, 3> regimes{{{1.0, 1.0}, {2.0, 0.5}, {3.0, 1.0 / 3.0}}};
  int e2e_bad = 0;
  double worst_ratio = 0.0;
  std::string offenders;
  for (int t = 0; t < 20; ++t) {
    const auto& sg = regimes[t % 3];
    const Problem p = matrix_fractional(10 + 5 * (t % 3), 5, sg[0], sg[1], 600 + t);
    const OracleResult o = oracle_solve(p);
    g_monotone.add(o.monotone);
    if (!o.valid) {
      ++e2e_bad;
      continue;
    }
    SolverConfig cfg;
    cfg.eps = kSweepEps;
    cfg.max_iter = 200000;
    cfg.reference = o.x_star;
    cfg.mode = ScalarStep{optimal_scalar(*o.ref)};
    const SolveReport s = tracked(p, cfg);
    cfg.mode = tune(*o.ref).metric(cone_dim(p));
    const SolveReport m = tracked(p, cfg);
    const double ratio = static_cast<double>(m.iterations) / static_cast<double>(s.iterations);
    worst_ratio = std::max(worst_ratio, ratio);
    if (!s.converged || !m.converged || ratio > kEndToEndFactor) {
      ++e2e_bad;
      offenders += " [σA=" + fmt("%.3g", sg[0]) + " seed " + std::to_string(600 + t) + ": " +
                   std::to_string(m.iterations) + " vs " + std::to_string(s.iterations) + "]";
    }
  }
  return {p1_bad == 0 && e2e_bad == 0,
          std::to_string(p1_bad) + "/100 rate-objective violations, " +
              std::to_string(e2e_bad) + "/20 end-to-end violations (worst metric/scalar " +
              fmt("%.3f", worst_ratio) + ")" + offenders};
}

// 8. BQP relaxation tightness, brute-force agreement and planted recovery.
Outcome bqp_round_trip() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::array<Eigen::Index, 3> sizes{6, 8, 10};
  SolverConfig cfg;
  cfg.eps = 1e-12;
  cfg.max_iter = 1000000;
  int loose = 0, mismatch = 0;
  double worst_ratio = 0.0;
  for (int t = 0; t < 20; ++t) {
    GenConfig g;
    g.kind = ProblemKind::kBqp;
    g.n = sizes[t % 3];
    g.seed = 800 + t;
    const BqpInstance inst = generate_bqp(g);
    const BqpResult r = solve_bqp(inst.a0, inst.b0, cfg);
    g_monotone.add(r.report);
    worst_ratio = std::max(worst_ratio, r.tightness.ratio);
    loose += !r.report.converged || !r.tightness.is_rank1;
    mismatch += r.signs != brute_force_bqp(inst.a0, inst.b0).x;
  }
  int recovered = 0;
  for (int t = 0; t < 20; ++t) {
    GenConfig g;
    g.kind = ProblemKind::kBqp;
    g.n = sizes[t % 3];
    g.seed = 900 + t;
    g.noise = 0.1;
    const BqpInstance inst = generate_bqp(g);
    const BqpResult r = solve_bqp(inst.a0, inst.b0, cfg);
    g_monotone.add(r.report);
    // b0 = A0·x0 makes −x0 the minimizer of xᵀA0x + 2b0ᵀx.
    recovered += r.signs == -inst.x0;
  }
  const double secs = seconds_since(t0);
  return {loose == 0 && mismatch == 0 && recovered >= kBqpRecoveryFraction * 20 &&
              secs < kBqpSeconds,
          std::to_string(loose) + "/20 not tight (worst λ2/λ1 " + fmt("%.1e", worst_ratio) +
              "), " + std::to_string(mismatch) + "/20 brute-force mismatches, " +
              std::to_string(recovered) + "/20 noisy recoveries, " + fmt("%.1f s", secs)};
}

struct Regime {
  const char* name;
  double sigma_a;
  double sigma_b;
  std::vector<SweepRow> rows;
};

constexpr std::uint64_t kSweepSeed = 7;
const std::vector<Eigen::Index> kSweepN{20, 40, 60, 80};

SweepConfig regime_config(const Regime& r) {
  SweepConfig cfg;
  cfg.gen.kind = ProblemKind::kMatrixFractional;
  cfg.gen.m = 5;
  cfg.gen.sigma_a = r.sigma_a;
  cfg.gen.sigma_b = r.sigma_b;
  cfg.gen.seed = kSweepSeed;
  cfg.n_values = kSweepN;
  cfg.eps = kSweepEps;
  return cfg;
}

const SweepRow& row_of(const Regime& r, std::size_t ni, SweepMode mode) {
  for (const SweepRow& row : r.rows) {
    if (row.n == kSweepN[ni] && row.mode == mode) return row;
  }
  throw Error("missing sweep row");
}

double advantage(const Regime& r, std::size_t ni) {
  return static_cast<double>(row_of(r, ni, SweepMode::kScalarLimit).iterations) /
         static_cast<double>(row_of(r, ni, SweepMode::kMetricStar).iterations);
}

// 9. Iteration counts of the scalar limit, γ⋆ and the tuned metric.
Outcome sweep_reproduction(std::vector<Regime>& regimes, std::string& table) {
  const auto t0 = std::chrono::steady_clock::now();
  for (Regime& r : regimes) {
    r.rows = sweep(regime_config(r));
    for (const SweepRow& row : r.rows) g_monotone.add(row.monotone);
  }
  bool ok = true;
  table = "  regime      n  scalar_limit  gamma_star  metric  advantage\n";
  for (std::size_t ri = 0; ri < regimes.size(); ++ri) {
    const Regime& r = regimes[ri];
    for (std::size_t ni = 0; ni < kSweepN.size(); ++ni) {
      const SweepRow& sl = row_of(r, ni, SweepMode::kScalarLimit);
      const SweepRow& gs = row_of(r, ni, SweepMode::kGammaStar);
      const SweepRow& ms = row_of(r, ni, SweepMode::kMetricStar);
      if (!sl.valid || !gs.valid || !ms.valid || !sl.converged || !ms.converged) {
        ok = false;
        table += "  " + std::string(r.name) + " n=" + std::to_string(kSweepN[ni]) +
                 " invalid: " + sl.note + ms.note + "\n";
        continue;
      }
      const double adv = advantage(r, ni);
      char line[160];
      std::snprintf(line, sizeof line, "  %-9s %4ld  %12ld  %10ld  %6ld  %9.2f\n", r.name,
                    static_cast<long>(kSweepN[ni]), sl.iterations, gs.iterations,
                    ms.iterations, adv);
      table += line;
      ok = ok && ms.iterations <= kMetricIterationCap;
      if (ri == 0) {
        ok = ok && std::abs(ms.iterations - sl.iterations) <=
                       kRegimeOneBand * static_cast<double>(sl.iterations);
      } else if (ri == 1) {
        ok = ok && adv >= kRegimeTwoFactor;
      } else {
        ok = ok && adv >= kRegimeThreeFactor && adv > advantage(regimes[1], ni);
      }
    }
  }
  return {ok, "see table; " + fmt("%.0f s", seconds_since(t0))};
}

// 10. Every sweep solve stops on (1/N)‖xᵏ − x⋆‖² ≤ 1e-8, replayed at n = 20.
Outcome stopping_rule(const std::vector<Regime>& regimes) {
  int bad_rows = 0, total = 0, replay_bad = 0;
  for (const Regime& r : regimes) {
    for (const SweepRow& row : r.rows) {
      ++total;
      bad_rows += !row.valid || !row.converged || row.stop_reason != StopReason::kReferenceError;
    }
    // Replay the metric row of the first n with the full history.
    SweepConfig cfg = regime_config(r);
    GenConfig gen = cfg.gen;
    gen.n = kSweepN[0];
    gen.seed = row_seed(cfg.gen.seed, 0);
    const Problem p = generate(gen);
    const OracleResult o = oracle_solve(p, cfg.oracle);
    g_monotone.add(o.monotone);
    if (!o.valid) {
      ++replay_bad;
      continue;
    }
    SolverConfig run;
    run.eps = kSweepEps;
    run.max_iter = cfg.max_iter;
    run.reference = o.x_star;
    run.mode = tune(*o.ref).metric(cone_dim(p));
    const SolveReport rep = tracked(p, run);
    const double err = (rep.x - o.x_star).squaredNorm() / static_cast<double>(o.x_star.size());
    const std::size_t h = rep.history.size();
    replay_bad += rep.stop_reason != StopReason::kReferenceError || err > kSweepEps ||
                  std::abs(err - rep.history.back().error_to_reference) > 1e-15 * kSweepEps ||
                  (h > 1 && rep.history[h - 2].error_to_reference <= kSweepEps) ||
                  rep.iterations != row_of(r, 0, SweepMode::kMetricStar).iterations;
  }
  return {bad_rows == 0 && replay_bad == 0,
          std::to_string(total - bad_rows) + "/" + std::to_string(total) +
              " rows stopped on the reference rule, " + std::to_string(replay_bad) +
              " replay mismatches"};
}

// 11. Finite-difference gradient of the smooth x-subproblem at the unclipped
// solution.
Outcome gradient_check() {
  Rng rng(1111);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const Eigen::Index n = uniform_int(rng, 2, 8);
    const Eigen::Index m = uniform_int(rng, 1, 5);
    GenConfig g;
    g.n = n;
    g.m = m;
    g.seed = 1100 + t;
    const QcqpProblem base = generate_matrix_fractional(g);
    const QcqpProblem p(base.a_list(), base.b_list(), gaussian_vec(rng, m));
    const Eigen::MatrixXd sh = random_metric(rng, n + 1).sqrt_weights();
    const Eigen::MatrixXd z = random_sym(rng, n + 1).matrix();
    const Eigen::MatrixXd l = random_sym(rng, n + 1).matrix();
    Eigen::VectorXd x;
    x_update_qcqp(p, LiftedBlocks::split(sh), LiftedBlocks::split(z), LiftedBlocks::split(l), &x);
    // −⟨c, x⟩ + ½‖√H ⊙ L(x) − Z̃ + Λ̃‖² without the x-independent corner.
    auto f = [&](const Eigen::VectorXd& v) {
      Eigen::MatrixXd r = sh.cwiseProduct(assemble_lifted(p, v, 0.0).cone_matrix.matrix()) - z + l;
      r(n, n) = 0.0;
      return -p.c().dot(v) + 0.5 * r.squaredNorm();
    };
    double gmax = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      const double h = 1e-4 * std::max(1.0, std::abs(x(i)));
      Eigen::VectorXd xp = x, xm = x;
      xp(i) += h;
      xm(i) -= h;
      gmax = std::max(gmax, std::abs(f(xp) - f(xm)) / (2 * h));
    }
    worst = std::max(worst, gmax / std::max({1.0, p.c().cwiseAbs().maxCoeff(),
                                             x.cwiseAbs().maxCoeff()}));
  }
  return {worst <= kGradientTol, "worst scaled gradient " + fmt("%.2e", worst)};
}

// 7 also runs a spread of step sizes on its own.
void extra_monotone_runs() {
  Rng rng(707);
  for (int t = 0; t < 30; ++t) {
    const Problem p = t % 3 == 0   ? standard_sdp(8, 4, 700 + t)
                      : t % 3 == 1 ? matrix_fractional(8, 3, 2.0, 0.5, 700 + t)
                                   : Problem{generate_bqp([&] {
                                       GenConfig g;
                                       g.kind = ProblemKind::kBqp;
                                       g.n = 8;
                                       g.seed = 700 + t;
                                       g.noise = 0.5;
                                       return g;
                                     }())};
    SolverConfig cfg;
    cfg.max_iter = 3000;
    cfg.eps = 1e-13;
    cfg.mode = t % 2 ? StepMode{ScalarStep{log_uniform(rng, 1e-2, 1e2)}}
                     : StepMode{random_metric(rng, cone_dim(p))};
    tracked(p, cfg);
  }
}

}  // namespace
}  // namespace madmm

// Optional arguments select criteria by number; 10 pulls in 9.
int main(int argc, char** argv) {
  using namespace madmm;
  std::vector<bool> wanted(12, argc == 1);
  for (int i = 1; i < argc; ++i) {
    const int id = std::atoi(argv[i]);
    if (id >= 1 && id <= 11) wanted[id] = true;
  }
  if (wanted[10]) wanted[9] = true;
  std::vector<std::pair<std::string, Outcome>> out(11);
  auto run = [&](int id, const char* name, const std::function<Outcome()>& f) {
    if (!wanted[id]) return;
    std::fprintf(stderr, "running %d %s\n", id, name);
    try {
      out[id - 1] = {name, f()};
    } catch (const std::exception& e) {
      out[id - 1] = {name, {false, std::string("exception: ") + e.what()}};
    }
  };
  std::vector<Regime> regimes{{"1/1", 1.0, 1.0, {}}, {"2/0.5", 2.0, 0.5, {}},
                              {"3/0.333", 3.0, 1.0 / 3.0, {}}};
  std::string table;
  run(1, "metric invariance", metric_invariance);
  run(2, "scaled projection optimality", projection_optimality);
  run(3, "quartic root", quartic_correctness);
  run(4, "worst-case collapse", worst_case);
  run(5, "scalar reduction", scalar_reduction);
  run(6, "no worse than scalar", no_worse_than_scalar);
  run(8, "bqp round trip", bqp_round_trip);
  run(9, "iteration sweep", [&] { return sweep_reproduction(regimes, table); });
  run(10, "stopping rule", [&] { return stopping_rule(regimes); });
  run(11, "x-update gradient", gradient_check);
  run(7, "fixed-point monotonicity", [] {
    extra_monotone_runs();
    return Outcome{g_monotone.violations == 0,
                   std::to_string(g_monotone.violations) + " violations in " +
                       std::to_string(g_monotone.runs) + " solver runs"};
  });

  bool all = true;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!wanted[i + 1]) continue;
    all = all && out[i].second.pass;
    std::printf("%s %2zu %s: %s\n", out[i].second.pass ? "PASS" : "FAIL", i + 1,
                out[i].first.c_str(), out[i].second.detail.c_str());
  }
  std::printf("%s", table.c_str());
  return all ? 0 : 1;
}
