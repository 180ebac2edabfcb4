#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "madmm/generate.hpp"
#include "madmm/solver.hpp"
#include "madmm/tuner.hpp"

namespace madmm {

// Side length of the PSD cone the solver works in (n, or n+1 when lifted).
Eigen::Index cone_dim(const Problem& p);

// Dispatches to the standard-SDP, generic QCQP or BQP fast-path solver.
SolveReport solve(const Problem& p, const SolverConfig& cfg);

struct OracleResult {
  bool valid = false;
  std::string failure;  // set when !valid
  std::optional<ReferencePair> ref;
  Eigen::VectorXd x_star;
  long iterations = 0;
  bool monotone = true;  // every stage had a non-increasing displacement
};

struct OracleConfig {
  double eps = 1e-12;  // displacement rule of the final run
  long max_iter = 1'000'000;
  // Two-stage mode: a γ = 1 run to `bootstrap_eps` feeds the tuner, and the
  // final run uses the tuned metric. Falls back to the plain γ = 1 run when
  // any stage fails. Off: a single γ = 1 run.
  bool bootstrap = true;
  double bootstrap_eps = 1e-6;
};

// High-accuracy reference pair. Non-convergence or a solver error yields
// valid = false, never a throw.
OracleResult oracle_solve(const Problem& p, const OracleConfig& cfg = {});

// `points` log-spaced values over [lo, hi], both ends included.
std::vector<double> log_grid(double lo, double hi, int points);
// 40 points over [γ⋆/100, 100·γ⋆].
std::vector<double> scalar_limit_grid(double gamma_star, int points = 40);

struct CurvePoint {
  double gamma = 0.0;
  long iterations = 0;
  bool converged = false;
  bool monotone = true;  // only meaningful when the config records history
};

struct ScalarLimitResult {
  double gamma_best = 0.0;
  long iterations_best = 0;
  std::vector<CurvePoint> curve;
  bool saturated = false;  // no grid point converged
  bool monotone() const;   // every run on the curve
};

// One scalar solve per grid value; the fewest iterations wins and ties go to
// the smaller γ. With `prune`, each run is capped at the best count so far,
// which leaves the winner unchanged but truncates the losing part of the
// curve. Throws Error on an empty grid.
ScalarLimitResult scalar_limit_search(const Problem& p, const std::vector<double>& grid,
                                      const SolverConfig& cfg, bool prune = false);

enum class SweepMode { kScalarLimit, kGammaStar, kMetricStar };
std::string to_string(SweepMode m);
SweepMode parse_sweep_mode(const std::string& s);

struct SweepConfig {
  GenConfig gen;  // n is overridden per row
  std::vector<Eigen::Index> n_values;
  std::vector<SweepMode> modes{SweepMode::kScalarLimit, SweepMode::kGammaStar,
                               SweepMode::kMetricStar};
  double eps = 1e-8;
  long max_iter = 100'000;
  OracleConfig oracle;
  int grid_points = 40;
  bool prune_grid = true;
};

struct SweepRow {
  Eigen::Index n = 0;
  SweepMode mode = SweepMode::kScalarLimit;
  std::string param;  // γ, or "k;γ1;γ2" for the metric
  long iterations = 0;
  bool converged = false;
  double wall_ms = 0.0;
  bool valid = true;
  std::string note;   // failure diagnostic when !valid
  StopReason stop_reason = StopReason::kMaxIterations;
  bool monotone = true;  // all solves behind the row, oracle included
};

// Instance for n_values[i] is generated from seed stream (gen.seed, i) and
// shared by every mode of that n. Every solve stops on the reference rule
// against the oracle x⋆. Rows are ordered by (n index, mode index); failures
// are recorded per row and the sweep continues.
std::vector<SweepRow> sweep(const SweepConfig& cfg);

// Seed for row i of a sweep.
std::uint64_t row_seed(std::uint64_t seed, std::uint64_t row);

double bqp_objective(const SymMat& a0, const Eigen::VectorXd& b0,
                     const Eigen::VectorXd& x);

struct BruteForceResult {
  Eigen::VectorXd x;
  double value = 0.0;
};

// Exhaustive minimum of xᵀA0x + 2b0ᵀx over {±1}ⁿ; throws Error for n > 20.
BruteForceResult brute_force_bqp(const SymMat& a0, const Eigen::VectorXd& b0);

}  // namespace madmm
