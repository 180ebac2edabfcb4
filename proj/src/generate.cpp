#include "madmm/generate.hpp"

#include <cmath>
#include <vector>

#include "madmm/errors.hpp"

namespace madmm {

namespace {

Eigen::MatrixXd gaussian(Rng& rng, Eigen::Index rows, Eigen::Index cols,
                         double mean, double sigma) {
  Eigen::MatrixXd g(rows, cols);
  // Row-major fill so the draw order does not depend on storage order.
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = rng.normal(mean, sigma);
  }
  return g;
}

SymMat random_symmetric(Rng& rng, Eigen::Index n, double sigma) {
  const Eigen::MatrixXd g = gaussian(rng, n, n, 0.0, sigma);
  return SymMat::from(0.5 * (g + g.transpose()));
}

}  // namespace

ProblemKind parse_problem_kind(const std::string& s) {
  if (s == "matrix_fractional" || s == "matrix-fractional") {
    return ProblemKind::kMatrixFractional;
  }
  if (s == "bqp") return ProblemKind::kBqp;
  if (s == "standard_sdp" || s == "standard-sdp" || s == "sdp") {
    return ProblemKind::kStandardSdp;
  }
  throw Error("unknown problem kind '" + s + "'");
}

std::string to_string(ProblemKind k) {
  switch (k) {
    case ProblemKind::kMatrixFractional: return "matrix_fractional";
    case ProblemKind::kBqp: return "bqp";
    case ProblemKind::kStandardSdp: return "standard_sdp";
  }
  return "?";
}

void GenConfig::validate() const {
  if (n < 1 || m < 1) throw Error("GenConfig: n and m must be at least 1");
  if (!(sigma_a > 0.0) || !(sigma_b > 0.0)) {
    throw Error("GenConfig: sigma_a and sigma_b must be positive");
  }
  if (!(noise >= 0.0)) throw Error("GenConfig: noise must be nonnegative");
}

SymMat random_psd(Rng& rng, Eigen::Index n, double sigma) {
  const Eigen::MatrixXd g = gaussian(rng, n, n, 0.0, sigma);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g.transpose() * g);
  const Eigen::VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Eigen::MatrixXd& u = es.eigenvectors();
  return SymMat::from(u * root.asDiagonal() * u.transpose());
}

QcqpProblem generate_matrix_fractional(const GenConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  std::vector<SymMat> a;
  std::vector<Eigen::VectorXd> b;
  for (Eigen::Index i = 0; i <= cfg.m; ++i) a.push_back(random_psd(rng, cfg.n, cfg.sigma_a));
  for (Eigen::Index i = 0; i <= cfg.m; ++i) {
    b.push_back(gaussian(rng, cfg.n, 1, 0.0, cfg.sigma_b).col(0));
  }
  return QcqpProblem(std::move(a), std::move(b), Eigen::VectorXd::Zero(cfg.m));
}

SdpProblem generate_standard_sdp(const GenConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  SymMat a0 = random_psd(rng, cfg.n, cfg.sigma_a);
  std::vector<SymMat> a;
  for (Eigen::Index i = 0; i < cfg.m; ++i) a.push_back(random_symmetric(rng, cfg.n, cfg.sigma_a));
  const SymMat y = random_psd(rng, cfg.n, 1.0) + SymMat::identity(cfg.n);
  Eigen::VectorXd c(cfg.m);
  for (Eigen::Index i = 0; i < cfg.m; ++i) c(i) = a[i].inner(y);
  return SdpProblem(std::move(a0), std::move(a), std::move(c));
}

BqpInstance generate_bqp(const GenConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  BqpInstance out;
  out.x0.resize(cfg.n);
  for (Eigen::Index i = 0; i < cfg.n; ++i) {
    double s = 0.0;
    while (s == 0.0) s = rng.normal(-0.5, 1.0);
    out.x0(i) = s > 0.0 ? 1.0 : -1.0;
  }
  out.a0 = random_psd(rng, cfg.n, 1.0);
  out.b0 = out.a0.matrix() * out.x0;
  if (cfg.noise > 0.0) out.b0 += gaussian(rng, cfg.n, 1, 0.0, cfg.noise).col(0);
  return out;
}

Problem generate(const GenConfig& cfg) {
  switch (cfg.kind) {
    case ProblemKind::kMatrixFractional: return generate_matrix_fractional(cfg);
    case ProblemKind::kBqp: return generate_bqp(cfg);
    case ProblemKind::kStandardSdp: return generate_standard_sdp(cfg);
  }
  throw Error("generate: unknown kind");
}

}  // namespace madmm
