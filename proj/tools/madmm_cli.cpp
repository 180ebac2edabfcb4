// madmm: command-line front end.
//
//   generate      write a random problem file
//   solve         solve a problem (file or generated) and write the iteration CSV
//   tune          oracle + partition search, write k,gamma1,gamma2,f_K,chosen
//   scalar-limit  exhaustive scalar step search, write gamma,iterations,...
//   sweep         iteration counts over n and modes
//   bqp-roundtrip solve a BQP, recover signs, compare with brute force
//
// Exit codes: 0 ok, 1 usage/input error, 2 non-convergence, 3 degenerate data.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "madmm/errors.hpp"
#include "madmm/generate.hpp"
#include "madmm/harness.hpp"
#include "madmm/io.hpp"
#include "madmm/qcqp.hpp"
#include "madmm/tuner.hpp"

namespace {

using namespace madmm;

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kNotConverged = 2;
constexpr int kDegenerate = 3;

struct Options {
  std::uint64_t seed = 1;
  long n = 20;
  long m = 5;
  double sigma_a = 1.0;
  double sigma_b = 1.0;
  double noise = 0.0;
  double eps = 1e-8;
  long max_iter = 100000;
  std::string mode = "scalar:1";
  std::string out;
  std::string kind = "matrix_fractional";
  std::string problem;  // input file; generated from the flags when empty
  std::string stop = "displacement";
  double oracle_eps = 1e-12;
  int points = 40;
  bool no_prune = false;
  std::string n_values = "20,40,60,80";
  std::string modes = "scalar_limit,gamma_star,metric_star";
};

void add_common(CLI::App* app, Options& o) {
  app->add_option("--seed", o.seed, "PRNG seed");
  app->add_option("--n", o.n, "dimension")->check(CLI::PositiveNumber);
  app->add_option("--m", o.m, "number of constraint matrices")->check(CLI::PositiveNumber);
  app->add_option("--sigma-a", o.sigma_a, "std-dev of A entries");
  app->add_option("--sigma-b", o.sigma_b, "std-dev of b entries");
  app->add_option("--noise", o.noise, "std-dev of BQP noise");
  app->add_option("--eps", o.eps, "stopping tolerance");
  app->add_option("--max-iter", o.max_iter, "iteration cap");
  app->add_option("--mode", o.mode, "scalar:<gamma> | gamma-star | metric-star");
  app->add_option("--out", o.out, "output file (stdout when omitted)");
  app->add_option("--kind", o.kind, "matrix_fractional | bqp | standard_sdp");
  app->add_option("--problem", o.problem, "problem file instead of generated data");
  app->add_option("--oracle-eps", o.oracle_eps, "displacement tolerance of the oracle run");
}

GenConfig gen_config(const Options& o) {
  GenConfig g;
  g.kind = parse_problem_kind(o.kind);
  g.n = o.n;
  g.m = o.m;
  g.sigma_a = o.sigma_a;
  g.sigma_b = o.sigma_b;
  g.noise = o.noise;
  g.seed = o.seed;
  g.validate();
  return g;
}

Problem load_or_generate(const Options& o) {
  if (!o.problem.empty()) return load_problem(o.problem, parse_problem_kind(o.kind));
  return generate(gen_config(o));
}

// Output sink: the --out file, or stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw Error("cannot write '" + path + "'");
    }
  }
  std::ostream& get() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

OracleResult require_oracle(const Problem& p, const Options& o) {
  OracleConfig oc;
  oc.eps = o.oracle_eps;
  OracleResult r = oracle_solve(p, oc);
  if (!r.valid) throw SolverError(r.failure);
  return r;
}

// Builds the step mode; the oracle is run only for the starred modes.
StepMode resolve_mode(const std::string& mode, const Problem& p,
                      const std::optional<OracleResult>& oracle) {
  if (mode.rfind("scalar:", 0) == 0) {
    double g = 0.0;
    try {
      g = std::stod(mode.substr(7));
    } catch (const std::exception&) {
      throw Error("bad --mode '" + mode + "'");
    }
    return ScalarStep{g};
  }
  if (!oracle) throw Error("--mode " + mode + " needs an oracle run");
  if (mode == "gamma-star") return ScalarStep{optimal_scalar(*oracle->ref)};
  if (mode == "metric-star") return tune(*oracle->ref).metric(cone_dim(p));
  throw Error("bad --mode '" + mode + "' (scalar:<gamma> | gamma-star | metric-star)");
}

std::string describe(const StepMode& m) {
  std::ostringstream os;
  os.precision(10);
  if (const auto* s = std::get_if<ScalarStep>(&m)) {
    os << "scalar gamma=" << s->gamma;
  } else {
    const Metric& mt = std::get<Metric>(m);
    os << "metric k=" << mt.k() << " gamma1=" << mt.gamma1() << " gamma2=" << mt.gamma2();
  }
  return os.str();
}

int cmd_generate(const Options& o) {
  const Problem p = generate(gen_config(o));
  Sink sink(o.out);
  write_problem(sink.get(), p);
  return kOk;
}

int cmd_solve(const Options& o) {
  const Problem p = load_or_generate(o);
  const bool by_reference = o.stop == "reference";
  if (!by_reference && o.stop != "displacement") throw Error("--stop must be displacement or reference");
  std::optional<OracleResult> oracle;
  if (by_reference || o.mode.rfind("scalar:", 0) != 0) oracle = require_oracle(p, o);

  SolverConfig cfg;
  cfg.mode = resolve_mode(o.mode, p, oracle);
  cfg.eps = o.eps;
  cfg.max_iter = o.max_iter;
  if (by_reference) cfg.reference = oracle->x_star;
  const SolveReport r = solve(p, cfg);
  {
    Sink sink(o.out);
    write_report_csv(sink.get(), r);
  }
  std::cerr << describe(cfg.mode) << ": " << (r.converged ? "converged" : "not converged")
            << " after " << r.iterations << " iterations (" << r.wall_ms << " ms)\n";
  return r.converged ? kOk : kNotConverged;
}

int cmd_tune(const Options& o) {
  const Problem p = load_or_generate(o);
  const OracleResult oracle = require_oracle(p, o);
  const TuneResult t = tune(*oracle.ref);
  Sink sink(o.out);
  write_tune_csv(sink.get(), t);
  std::cerr << "k*=" << t.k_star << " gamma1=" << t.gamma1 << " gamma2=" << t.gamma2
            << " f=" << t.objective << " (scalar gamma*=" << optimal_scalar(*oracle.ref)
            << ")\n";
  return kOk;
}

int cmd_scalar_limit(const Options& o) {
  const Problem p = load_or_generate(o);
  const OracleResult oracle = require_oracle(p, o);
  SolverConfig cfg;
  cfg.eps = o.eps;
  cfg.max_iter = o.max_iter;
  cfg.reference = oracle.x_star;
  cfg.record_history = false;
  const ScalarLimitResult r = scalar_limit_search(
      p, scalar_limit_grid(optimal_scalar(*oracle.ref), o.points), cfg, !o.no_prune);
  Sink sink(o.out);
  write_curve_csv(sink.get(), r);
  if (r.saturated) {
    std::cerr << "every grid point hit --max-iter\n";
    return kNotConverged;
  }
  std::cerr << "gamma_best=" << r.gamma_best << " iterations=" << r.iterations_best << "\n";
  return kOk;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int cmd_sweep(const Options& o) {
  SweepConfig cfg;
  cfg.gen = gen_config(o);
  cfg.n_values.clear();
  for (const std::string& v : split_list(o.n_values)) cfg.n_values.push_back(std::stol(v));
  cfg.modes.clear();
  for (const std::string& v : split_list(o.modes)) cfg.modes.push_back(parse_sweep_mode(v));
  cfg.eps = o.eps;
  cfg.max_iter = o.max_iter;
  cfg.oracle.eps = o.oracle_eps;
  cfg.grid_points = o.points;
  cfg.prune_grid = !o.no_prune;
  const std::vector<SweepRow> rows = sweep(cfg);
  Sink sink(o.out);
  write_sweep_csv(sink.get(), rows);
  bool all_converged = true, all_valid = true;
  for (const SweepRow& r : rows) {
    all_valid = all_valid && r.valid;
    all_converged = all_converged && r.converged;
  }
  if (!all_valid) return kDegenerate;
  return all_converged ? kOk : kNotConverged;
}

int cmd_bqp_roundtrip(const Options& o) {
  BqpInstance inst;
  if (!o.problem.empty()) {
    std::ifstream in(o.problem);
    if (!in) throw ParseError("cannot open '" + o.problem + "'");
    inst = read_bqp(in);
  } else {
    GenConfig g = gen_config(o);
    g.kind = ProblemKind::kBqp;
    inst = generate_bqp(g);
  }
  std::optional<OracleResult> oracle;
  if (o.mode.rfind("scalar:", 0) != 0) oracle = require_oracle(inst, o);
  SolverConfig cfg;
  cfg.mode = resolve_mode(o.mode, inst, oracle);
  cfg.eps = o.eps;
  cfg.max_iter = o.max_iter;
  const BqpResult r = solve_bqp(inst.a0, inst.b0, cfg);
  {
    Sink sink(o.out);
    write_report_csv(sink.get(), r.report);
  }
  std::cerr << "signs:";
  for (Eigen::Index i = 0; i < r.signs.size(); ++i) std::cerr << ' ' << (r.signs(i) > 0 ? "+1" : "-1");
  std::cerr << "\nrank1=" << (r.tightness.is_rank1 ? "yes" : "no")
            << " ratio=" << r.tightness.ratio << " iterations=" << r.report.iterations
            << " objective=" << bqp_objective(inst.a0, inst.b0, r.signs) << "\n";
  if (inst.a0.n() <= 20) {
    const BruteForceResult bf = brute_force_bqp(inst.a0, inst.b0);
    std::cerr << "brute force optimum=" << bf.value
              << (bf.x == r.signs ? " (matches)" : " (differs)") << "\n";
  }
  return r.report.converged ? kOk : kNotConverged;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Metric-ADMM solver for SDPs and convexified QCQPs"};
  app.require_subcommand(1);
  Options o;

  auto* gen = app.add_subcommand("generate", "write a random problem file");
  auto* slv = app.add_subcommand("solve", "solve and write iter,primal_residual,fixed_point_displacement,error_to_reference");
  auto* tun = app.add_subcommand("tune", "write k,gamma1,gamma2,f_K,chosen");
  auto* lim = app.add_subcommand("scalar-limit", "write gamma,iterations,converged,best");
  auto* swp = app.add_subcommand("sweep", "write n,mode,param,iterations,converged,wall_ms,valid,note");
  auto* bqp = app.add_subcommand("bqp-roundtrip", "BQP solve, sign recovery and brute-force check");
  for (CLI::App* sub : {gen, slv, tun, lim, swp, bqp}) add_common(sub, o);
  slv->add_option("--stop", o.stop, "displacement | reference (oracle x*)");
  for (CLI::App* sub : {lim, swp}) {
    sub->add_option("--points", o.points, "scalar grid size");
    sub->add_flag("--no-prune", o.no_prune, "run every grid point to completion");
  }
  swp->add_option("--n-values", o.n_values, "comma-separated dimensions");
  swp->add_option("--modes", o.modes, "comma-separated scalar_limit,gamma_star,metric_star");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*gen) return cmd_generate(o);
    if (*slv) return cmd_solve(o);
    if (*tun) return cmd_tune(o);
    if (*lim) return cmd_scalar_limit(o);
    if (*swp) return cmd_sweep(o);
    if (*bqp) return cmd_bqp_roundtrip(o);
  } catch (const DegenerateDataError& e) {
    std::cerr << "degenerate data: " << e.what() << "\n";
    return kDegenerate;
  } catch (const IllPosedError& e) {
    std::cerr << "degenerate data: " << e.what() << "\n";
    return kDegenerate;
  } catch (const SolverError& e) {
    std::cerr << "solver: " << e.what() << "\n";
    return kNotConverged;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
