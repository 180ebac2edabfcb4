#include "madmm/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <string>

#include "madmm/errors.hpp"

namespace madmm {

namespace {

double read_number(std::istream& in, const std::string& what) {
  std::string tok;
  if (!(in >> tok)) throw ParseError("unexpected end of input while reading " + what);
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size() || !std::isfinite(v)) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError("bad number '" + tok + "' while reading " + what);
  }
}

Eigen::Index read_size(std::istream& in, const std::string& what, Eigen::Index min) {
  const double v = read_number(in, what);
  if (v != std::floor(v) || v < static_cast<double>(min) || v > 1e7) {
    throw ParseError(what + " must be an integer >= " + std::to_string(min));
  }
  return static_cast<Eigen::Index>(v);
}

Eigen::VectorXd read_vector(std::istream& in, Eigen::Index n, const std::string& what) {
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = read_number(in, what);
  return v;
}

// n×n entries after the size line.
SymMat read_entries(std::istream& in, Eigen::Index n, const std::string& what) {
  Eigen::MatrixXd raw(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) raw(i, j) = read_number(in, what);
  }
  const double tol = 1e-12 * std::max(1.0, raw.cwiseAbs().maxCoeff());
  if ((raw - raw.transpose()).cwiseAbs().maxCoeff() > tol) {
    throw ParseError(what + " is not symmetric");
  }
  return SymMat::from(raw);
}

SymMat read_sized(std::istream& in, Eigen::Index n, const std::string& what) {
  const Eigen::Index got = read_size(in, what + " size", 1);
  if (got != n) {
    throw ParseError(what + " has size " + std::to_string(got) + ", expected " +
                     std::to_string(n));
  }
  return read_entries(in, n, what);
}

void expect_end(std::istream& in) {
  std::string tok;
  if (in >> tok) throw ParseError("trailing token '" + tok + "'");
}

void write_vector(std::ostream& out, const Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) out << (i ? " " : "") << v(i);
  out << '\n';
}

const char* bool_str(bool b) { return b ? "1" : "0"; }

}  // namespace

SymMat read_symmat(std::istream& in) {
  const Eigen::Index n = read_size(in, "matrix size", 1);
  return read_entries(in, n, "matrix");
}

void write_symmat(std::ostream& out, const SymMat& m) {
  const auto old = out.precision(17);
  out << m.n() << '\n';
  for (Eigen::Index i = 0; i < m.n(); ++i) {
    for (Eigen::Index j = 0; j < m.n(); ++j) out << (j ? " " : "") << m(i, j);
    out << '\n';
  }
  out.precision(old);
}

SdpProblem read_sdp_problem(std::istream& in) {
  const Eigen::Index n = read_size(in, "n", 1);
  const Eigen::Index m = read_size(in, "m", 1);
  SymMat a0 = read_sized(in, n, "A0");
  std::vector<SymMat> a;
  for (Eigen::Index i = 1; i <= m; ++i) a.push_back(read_sized(in, n, "A" + std::to_string(i)));
  Eigen::VectorXd c = read_vector(in, m, "c");
  expect_end(in);
  return SdpProblem(std::move(a0), std::move(a), std::move(c));
}

QcqpProblem read_qcqp_problem(std::istream& in) {
  const Eigen::Index n = read_size(in, "n", 1);
  const Eigen::Index m = read_size(in, "m", 1);
  std::vector<SymMat> a;
  for (Eigen::Index i = 0; i <= m; ++i) a.push_back(read_sized(in, n, "A" + std::to_string(i)));
  std::vector<Eigen::VectorXd> b;
  for (Eigen::Index i = 0; i <= m; ++i) b.push_back(read_vector(in, n, "b" + std::to_string(i)));
  Eigen::VectorXd c = read_vector(in, m, "c");
  expect_end(in);
  return QcqpProblem(std::move(a), std::move(b), std::move(c));
}

BqpInstance read_bqp(std::istream& in) {
  BqpInstance out;
  out.a0 = read_symmat(in);
  out.b0 = read_vector(in, out.a0.n(), "b0");
  expect_end(in);
  return out;
}

void write_problem(std::ostream& out, const Problem& p) {
  const auto old = out.precision(17);
  if (const auto* s = std::get_if<SdpProblem>(&p)) {
    out << s->n() << ' ' << s->m() << '\n';
    write_symmat(out, s->a0());
    for (const SymMat& a : s->a_list()) write_symmat(out, a);
    write_vector(out, s->c());
  } else if (const auto* q = std::get_if<QcqpProblem>(&p)) {
    out << q->n() << ' ' << q->m() << '\n';
    for (const SymMat& a : q->a_list()) write_symmat(out, a);
    for (const Eigen::VectorXd& b : q->b_list()) write_vector(out, b);
    write_vector(out, q->c());
  } else {
    const BqpInstance& b = std::get<BqpInstance>(p);
    write_symmat(out, b.a0);
    write_vector(out, b.b0);
  }
  out.precision(old);
}

Problem read_problem(std::istream& in, ProblemKind kind) {
  switch (kind) {
    case ProblemKind::kStandardSdp: return read_sdp_problem(in);
    case ProblemKind::kMatrixFractional: return read_qcqp_problem(in);
    case ProblemKind::kBqp: return read_bqp(in);
  }
  throw Error("read_problem: unknown kind");
}

Problem load_problem(const std::string& path, ProblemKind kind) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return read_problem(in, kind);
}

void save_problem(const std::string& path, const Problem& p) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  write_problem(out, p);
}

void write_report_csv(std::ostream& out, const SolveReport& r) {
  const auto old = out.precision(17);
  out << "iter,primal_residual,fixed_point_displacement,error_to_reference\n";
  for (std::size_t i = 0; i < r.history.size(); ++i) {
    const IterationRecord& h = r.history[i];
    out << i + 1 << ',' << h.primal_residual << ',' << h.displacement << ',';
    if (!std::isnan(h.error_to_reference)) out << h.error_to_reference;
    out << '\n';
  }
  out.precision(old);
}

void write_tune_csv(std::ostream& out, const TuneResult& t) {
  const auto old = out.precision(17);
  out << "k,gamma1,gamma2,f_K,chosen\n";
  for (const PartitionFit& f : t.per_k) {
    out << f.k << ',' << f.gamma1 << ',' << f.gamma2 << ',' << f.f << ','
        << bool_str(f.k == t.k_star) << '\n';
  }
  out.precision(old);
}

void write_metric_csv(std::ostream& out, const Metric& m) {
  const auto old = out.precision(17);
  out << "k,gamma1,gamma2\n" << m.k() << ',' << m.gamma1() << ',' << m.gamma2() << '\n';
  out.precision(old);
}

void write_curve_csv(std::ostream& out, const ScalarLimitResult& r) {
  const auto old = out.precision(17);
  out << "gamma,iterations,converged,best\n";
  for (const CurvePoint& c : r.curve) {
    out << c.gamma << ',' << c.iterations << ',' << bool_str(c.converged) << ','
        << bool_str(!r.saturated && c.gamma == r.gamma_best) << '\n';
  }
  out.precision(old);
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  const auto old = out.precision(6);
  out << "n,mode,param,iterations,converged,wall_ms,valid,note\n";
  for (const SweepRow& r : rows) {
    std::string note = r.note;
    for (char& ch : note) {
      if (ch == ',' || ch == '\n') ch = ' ';
    }
    out << r.n << ',' << to_string(r.mode) << ',' << r.param << ',' << r.iterations
        << ',' << bool_str(r.converged) << ',' << std::fixed << r.wall_ms
        << std::defaultfloat << ',' << bool_str(r.valid) << ',' << note << '\n';
  }
  out.precision(old);
}

}  // namespace madmm
