#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include <Eigen/Dense>

#include "madmm/qcqp.hpp"
#include "madmm/rng.hpp"
#include "madmm/sdp.hpp"
#include "madmm/symmat.hpp"

namespace madmm {

enum class ProblemKind { kMatrixFractional, kBqp, kStandardSdp };

ProblemKind parse_problem_kind(const std::string& s);
std::string to_string(ProblemKind k);

struct GenConfig {
  ProblemKind kind = ProblemKind::kMatrixFractional;
  Eigen::Index n = 20;
  Eigen::Index m = 5;
  double sigma_a = 1.0;
  double sigma_b = 1.0;
  double noise = 0.0;
  std::uint64_t seed = 1;

  // Throws Error unless n ≥ 1, m ≥ 1, sigma_a, sigma_b > 0 and noise ≥ 0.
  void validate() const;
};

// ±1 planted vector with A0 = √(GᵀG), G ~ N(0, 1), and b0 = A0·x0 + N(0, noise).
struct BqpInstance {
  SymMat a0{1};
  Eigen::VectorXd b0;
  Eigen::VectorXd x0;
};

using Problem = std::variant<SdpProblem, QcqpProblem, BqpInstance>;

// √(GᵀG) for an n×n matrix G with N(0, sigma) entries.
SymMat random_psd(Rng& rng, Eigen::Index n, double sigma);

// Matrix-fractional instance of the lifted QCQP form: Aᵢ = √(GᵢᵀGᵢ) for
// i = 0..m with Gᵢ ~ N(0, σA), bᵢ ~ N(0, σB), c = 0.
QcqpProblem generate_matrix_fractional(const GenConfig& cfg);

// A0 = √(GᵀG) and Aᵢ symmetric N(0, σA); cᵢ = ⟨Aᵢ, Y⟩ for a random Y ≻ 0,
// so x = 0 is strictly feasible and −Y is a strictly feasible dual.
SdpProblem generate_standard_sdp(const GenConfig& cfg);

BqpInstance generate_bqp(const GenConfig& cfg);

// Deterministic in cfg alone.
Problem generate(const GenConfig& cfg);

}  // namespace madmm
