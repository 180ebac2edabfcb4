#pragma once

// Plain-text problem files and CSV output.
//
// Matrix fixture: a line "n" followed by n lines of n decimals. Problem files
// are whitespace-tokenized, so line breaks inside a block are not significant:
//
//   SDP   n m | A0 … Am as fixtures | c (m values)
//   QCQP  n m | A0 … Am as fixtures | b0 … bm (n values each) | c (m values)
//   BQP   A0 as a fixture | b0 (n values)

#include <iosfwd>
#include <string>
#include <vector>

#include "madmm/generate.hpp"
#include "madmm/harness.hpp"
#include "madmm/solver.hpp"
#include "madmm/tuner.hpp"

namespace madmm {

// Parsing throws ParseError naming the offending token; matrices must be
// symmetric to within 1e-12 relative.
SymMat read_symmat(std::istream& in);
void write_symmat(std::ostream& out, const SymMat& m);

SdpProblem read_sdp_problem(std::istream& in);
QcqpProblem read_qcqp_problem(std::istream& in);
BqpInstance read_bqp(std::istream& in);  // x0 is left empty

void write_problem(std::ostream& out, const Problem& p);
Problem read_problem(std::istream& in, ProblemKind kind);

Problem load_problem(const std::string& path, ProblemKind kind);
void save_problem(const std::string& path, const Problem& p);

// iter,primal_residual,fixed_point_displacement,error_to_reference
void write_report_csv(std::ostream& out, const SolveReport& r);
// k,gamma1,gamma2,f_K,chosen
void write_tune_csv(std::ostream& out, const TuneResult& t);
// k,gamma1,gamma2
void write_metric_csv(std::ostream& out, const Metric& m);
// gamma,iterations,converged,best
void write_curve_csv(std::ostream& out, const ScalarLimitResult& r);
// n,mode,param,iterations,converged,wall_ms (+ valid,note)
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace madmm
