#include "madmm/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <sstream>

#include "madmm/errors.hpp"
#include "madmm/qcqp.hpp"
#include "madmm/sdp.hpp"

namespace madmm {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

Eigen::Index problem_n(const Problem& p) {
  return std::visit([](const auto& q) -> Eigen::Index {
    if constexpr (std::is_same_v<std::decay_t<decltype(q)>, BqpInstance>) {
      return q.a0.n();
    } else {
      return q.n();
    }
  }, p);
}

}  // namespace

Eigen::Index cone_dim(const Problem& p) {
  return std::holds_alternative<SdpProblem>(p) ? problem_n(p) : problem_n(p) + 1;
}

SolveReport solve(const Problem& p, const SolverConfig& cfg) {
  return std::visit(
      Overloaded{
          [&](const SdpProblem& q) { return solve_standard_sdp(q, cfg); },
          [&](const QcqpProblem& q) { return solve_qcqp(q, cfg); },
          [&](const BqpInstance& q) { return solve_bqp(q.a0, q.b0, cfg).report; },
      },
      p);
}

OracleResult oracle_solve(const Problem& p, const OracleConfig& oc) {
  OracleResult out;
  SolverConfig cfg;
  cfg.mode = ScalarStep{1.0};
  cfg.eps = oc.eps;
  cfg.max_iter = oc.max_iter;

  auto track = [&](const SolveReport& rep) {
    out.monotone = out.monotone && residual_monotone(rep);
  };
  auto accept = [&](SolveReport& rep, long spent) {
    out.iterations = spent + rep.iterations;
    out.x_star = rep.x;
    out.ref.emplace(rep.cone_point, rep.dual);
    out.valid = true;
  };

  long spent = 0;
  if (oc.bootstrap) {
    try {
      SolverConfig coarse = cfg;
      coarse.eps = oc.bootstrap_eps;
      const SolveReport rough = solve(p, coarse);
      track(rough);
      spent = rough.iterations;
      if (rough.converged) {
        const TuneResult t = tune(ReferencePair(rough.cone_point, rough.dual));
        SolverConfig fine = cfg;
        fine.mode = t.metric(cone_dim(p));
        fine.max_iter = std::max(0L, oc.max_iter - spent);
        SolveReport rep = solve(p, fine);
        track(rep);
        if (rep.converged) {
          accept(rep, spent);
          return out;
        }
        spent += rep.iterations;
      }
    } catch (const Error&) {
      // Fall through to the plain run.
    }
  }
  try {
    SolveReport rep = solve(p, cfg);
    track(rep);
    if (!rep.converged) {
      out.iterations = spent + rep.iterations;
      out.failure = "oracle did not converge within " + std::to_string(oc.max_iter) +
                    " iterations";
      return out;
    }
    accept(rep, spent);
  } catch (const Error& e) {
    out.failure = std::string("oracle failed: ") + e.what();
  }
  return out;
}

std::vector<double> log_grid(double lo, double hi, int points) {
  if (!(lo > 0.0) || !(hi >= lo) || points < 1) {
    throw Error("log_grid: need 0 < lo <= hi and at least one point");
  }
  std::vector<double> g(points);
  if (points == 1) {
    g[0] = lo;
    return g;
  }
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < points; ++i) {
    g[i] = std::exp(a + (b - a) * static_cast<double>(i) / (points - 1));
  }
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> scalar_limit_grid(double gamma_star, int points) {
  return log_grid(gamma_star / 100.0, gamma_star * 100.0, points);
}

ScalarLimitResult scalar_limit_search(const Problem& p, const std::vector<double>& grid,
                                      const SolverConfig& cfg, bool prune) {
  if (grid.empty()) throw Error("scalar_limit_search: empty grid");
  ScalarLimitResult out;
  out.saturated = true;
  out.iterations_best = std::numeric_limits<long>::max();
  out.curve.resize(grid.size());

  // Pruned runs start at the middle of the grid and move outward so the cap
  // tightens early. The winner does not depend on the order.
  std::vector<std::size_t> order(grid.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (prune) {
    const double mid = 0.5 * (std::log(grid.front()) + std::log(grid.back()));
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::abs(std::log(grid[a]) - mid) < std::abs(std::log(grid[b]) - mid);
    });
  }

  SolverConfig run = cfg;
  for (std::size_t i : order) {
    const double g = grid[i];
    run.mode = ScalarStep{g};
    if (prune && !out.saturated) run.max_iter = std::min(cfg.max_iter, out.iterations_best);
    const SolveReport rep = solve(p, run);
    out.curve[i] = {g, rep.iterations, rep.converged, residual_monotone(rep)};
    if (!rep.converged) continue;
    if (out.saturated || rep.iterations < out.iterations_best ||
        (rep.iterations == out.iterations_best && g < out.gamma_best)) {
      out.gamma_best = g;
      out.iterations_best = rep.iterations;
      out.saturated = false;
    }
  }
  if (out.saturated) {
    out.gamma_best = grid.front();
    out.iterations_best = cfg.max_iter;
  }
  return out;
}

bool ScalarLimitResult::monotone() const {
  return std::all_of(curve.begin(), curve.end(),
                     [](const CurvePoint& c) { return c.monotone; });
}

std::string to_string(SweepMode m) {
  switch (m) {
    case SweepMode::kScalarLimit: return "scalar_limit";
    case SweepMode::kGammaStar: return "gamma_star";
    case SweepMode::kMetricStar: return "metric_star";
  }
  return "?";
}

SweepMode parse_sweep_mode(const std::string& s) {
  if (s == "scalar_limit" || s == "scalar-limit") return SweepMode::kScalarLimit;
  if (s == "gamma_star" || s == "gamma-star") return SweepMode::kGammaStar;
  if (s == "metric_star" || s == "metric-star") return SweepMode::kMetricStar;
  throw Error("unknown sweep mode '" + s + "'");
}

std::uint64_t row_seed(std::uint64_t seed, std::uint64_t row) {
  return Rng::stream(seed, row).next_u64();
}

std::vector<SweepRow> sweep(const SweepConfig& cfg) {
  const long groups = static_cast<long>(cfg.n_values.size());
  const long per = static_cast<long>(cfg.modes.size());
  std::vector<SweepRow> rows(groups * per);

#pragma omp parallel for schedule(dynamic, 1)
  for (long gi = 0; gi < groups; ++gi) {
    const Eigen::Index n = cfg.n_values[gi];
    for (long mi = 0; mi < per; ++mi) {
      rows[gi * per + mi].n = n;
      rows[gi * per + mi].mode = cfg.modes[mi];
    }
    auto fail_all = [&](const std::string& why) {
      for (long mi = 0; mi < per; ++mi) {
        rows[gi * per + mi].valid = false;
        rows[gi * per + mi].note = why;
      }
    };
    try {
      GenConfig gen = cfg.gen;
      gen.n = n;
      gen.seed = row_seed(cfg.gen.seed, static_cast<std::uint64_t>(gi));
      const Problem problem = generate(gen);
      const OracleResult oracle = oracle_solve(problem, cfg.oracle);
      if (!oracle.valid) {
        fail_all(oracle.failure);
        continue;
      }
      for (long mi = 0; mi < per; ++mi) rows[gi * per + mi].monotone = oracle.monotone;
      SolverConfig run;
      run.eps = cfg.eps;
      run.max_iter = cfg.max_iter;
      run.reference = oracle.x_star;
      const double gamma_star = optimal_scalar(*oracle.ref);

      for (long mi = 0; mi < per; ++mi) {
        SweepRow& row = rows[gi * per + mi];
        try {
          const auto t0 = std::chrono::steady_clock::now();
          switch (row.mode) {
            case SweepMode::kScalarLimit: {
              const ScalarLimitResult r = scalar_limit_search(
                  problem, scalar_limit_grid(gamma_star, cfg.grid_points), run,
                  cfg.prune_grid);
              row.param = format_double(r.gamma_best);
              row.iterations = r.iterations_best;
              row.converged = !r.saturated;
              row.stop_reason = r.saturated ? StopReason::kMaxIterations
                                            : StopReason::kReferenceError;
              row.monotone = row.monotone && r.monotone();
              break;
            }
            case SweepMode::kGammaStar: {
              run.mode = ScalarStep{gamma_star};
              const SolveReport rep = solve(problem, run);
              row.param = format_double(gamma_star);
              row.iterations = rep.iterations;
              row.converged = rep.converged;
              row.stop_reason = rep.stop_reason;
              row.monotone = row.monotone && residual_monotone(rep);
              break;
            }
            case SweepMode::kMetricStar: {
              const TuneResult t = tune(*oracle.ref);
              run.mode = t.metric(cone_dim(problem));
              const SolveReport rep = solve(problem, run);
              row.param = std::to_string(t.k_star) + ";" + format_double(t.gamma1) +
                          ";" + format_double(t.gamma2);
              row.iterations = rep.iterations;
              row.converged = rep.converged;
              row.stop_reason = rep.stop_reason;
              row.monotone = row.monotone && residual_monotone(rep);
              break;
            }
          }
          row.wall_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
        } catch (const Error& e) {
          row.valid = false;
          row.note = e.what();
        }
      }
    } catch (const Error& e) {
      fail_all(e.what());
    }
  }
  return rows;
}

double bqp_objective(const SymMat& a0, const Eigen::VectorXd& b0,
                     const Eigen::VectorXd& x) {
  return x.dot(a0.matrix() * x) + 2.0 * b0.dot(x);
}

BruteForceResult brute_force_bqp(const SymMat& a0, const Eigen::VectorXd& b0) {
  const Eigen::Index n = a0.n();
  if (n > 20) throw Error("brute_force_bqp: n must be at most 20");
  if (b0.size() != n) throw DimensionError("brute_force_bqp: b0 has wrong length");
  BruteForceResult best;
  best.value = std::numeric_limits<double>::infinity();
  Eigen::VectorXd x(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    for (Eigen::Index i = 0; i < n; ++i) x(i) = (mask >> i) & 1 ? 1.0 : -1.0;
    const double v = bqp_objective(a0, b0, x);
    if (v < best.value) {
      best.value = v;
      best.x = x;
    }
  }
  return best;
}

}  // namespace madmm
