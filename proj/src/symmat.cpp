#include "madmm/symmat.hpp"

#include <cmath>
#include <string>

#include "madmm/errors.hpp"
#include "madmm/kernels.hpp"

namespace madmm {

SymMat::SymMat(Eigen::Index n) {
  if (n < 1) throw DimensionError("SymMat: dimension must be at least 1");
  data_ = Eigen::MatrixXd::Zero(n, n);
}

SymMat SymMat::from(const Eigen::MatrixXd& raw) {
  if (raw.rows() != raw.cols()) {
    throw DimensionError("SymMat: input is " + std::to_string(raw.rows()) +
                         "x" + std::to_string(raw.cols()) + ", not square");
  }
  if (raw.rows() < 1) throw DimensionError("SymMat: empty input");
  Eigen::MatrixXd sym = 0.5 * (raw + raw.transpose());
  return SymMat(std::move(sym), Trusted{});
}

SymMat SymMat::identity(Eigen::Index n) {
  SymMat out(n);
  out.data_.setIdentity();
  return out;
}

SymMat SymMat::diagonal(const Eigen::VectorXd& d) {
  SymMat out(d.size());
  out.data_.diagonal() = d;
  return out;
}

double SymMat::inner(const SymMat& other) const {
  if (other.n() != n()) throw DimensionError("SymMat::inner: size mismatch");
  return kernels::frobenius_inner(data_, other.data_);
}

Eigen::VectorXd SymMat::eigenvalues() const {
  if (!data_.allFinite()) throw NumericError("SymMat: non-finite entries");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(data_,
                                                    Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericError("SymMat: eigenvalue computation failed");
  }
  return es.eigenvalues();
}

double SymMat::min_eigenvalue() const { return eigenvalues()(0); }
double SymMat::max_eigenvalue() const {
  const Eigen::VectorXd d = eigenvalues();
  return d(d.size() - 1);
}

SymMat SymMat::operator+(const SymMat& o) const {
  if (o.n() != n()) throw DimensionError("SymMat: size mismatch in +");
  return SymMat(data_ + o.data_, Trusted{});
}

SymMat SymMat::operator-(const SymMat& o) const {
  if (o.n() != n()) throw DimensionError("SymMat: size mismatch in -");
  return SymMat(data_ - o.data_, Trusted{});
}

SymMat SymMat::operator-() const { return SymMat(-data_, Trusted{}); }

SymMat SymMat::operator*(double s) const { return SymMat(s * data_, Trusted{}); }

SymMat adopt_symmetric(Eigen::MatrixXd data) {
  return SymMat(std::move(data), SymMat::Trusted{});
}

BlockPartition::BlockPartition(Eigen::Index n_, Eigen::Index k_) : n(n_), k(k_) {
  if (n < 2 || k < 1 || k > n - 1) {
    throw DimensionError("BlockPartition: split " + std::to_string(k) +
                         " outside [1, " + std::to_string(n - 1) + "]");
  }
}

Eigen::VectorXd vec(const SymMat& m) {
  return Eigen::Map<const Eigen::VectorXd>(m.matrix().data(),
                                           m.matrix().size());
}

SymMat mat(const Eigen::VectorXd& v, Eigen::Index n) {
  if (n < 1 || v.size() != n * n) {
    throw DimensionError("mat: vector of length " + std::to_string(v.size()) +
                         " cannot be reshaped to " + std::to_string(n) + "x" +
                         std::to_string(n));
  }
  const Eigen::Map<const Eigen::MatrixXd> raw(v.data(), n, n);
  const double scale = std::max(1.0, raw.cwiseAbs().maxCoeff());
  if ((raw - raw.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw DimensionError("mat: reshaped data is not symmetric");
  }
  return SymMat::from(raw);
}

SymMat project_psd(const SymMat& v) {
  return adopt_symmetric(kernels::psd_project(v.matrix()));
}

BlockNorms block_norms(const SymMat& v, const BlockPartition& p) {
  if (p.n != v.n()) {
    throw DimensionError("block_norms: partition is for n=" +
                         std::to_string(p.n) + " but matrix has n=" +
                         std::to_string(v.n()));
  }
  const auto s = kernels::block_squares(v.matrix(), p.k);
  return {s[0], s[1], s[2]};
}

bool is_psd(const SymMat& v, double rel_tol) {
  const double scale = std::max(v.norm(), 1e-300);
  return v.min_eigenvalue() >= -rel_tol * scale;
}

}  // namespace madmm
