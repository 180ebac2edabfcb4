#pragma once

#include <Eigen/Dense>

namespace madmm {

// Dense real symmetric matrix. Construction symmetrizes, so entry (i,j) and
// (j,i) are always bit-identical. Values are immutable once built.
class SymMat {
 public:
  // n×n zero matrix, n ≥ 1.
  explicit SymMat(Eigen::Index n);

  // (raw + rawᵀ)/2. Throws DimensionError if raw is not square or empty.
  static SymMat from(const Eigen::MatrixXd& raw);
  static SymMat identity(Eigen::Index n);
  static SymMat diagonal(const Eigen::VectorXd& d);

  Eigen::Index n() const { return data_.rows(); }
  const Eigen::MatrixXd& matrix() const { return data_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return data_(i, j); }

  double squared_norm() const { return data_.squaredNorm(); }
  double norm() const { return data_.norm(); }
  double inner(const SymMat& other) const;
  double min_eigenvalue() const;
  double max_eigenvalue() const;
  Eigen::VectorXd eigenvalues() const;  // ascending

  SymMat operator+(const SymMat& o) const;
  SymMat operator-(const SymMat& o) const;
  SymMat operator-() const;
  SymMat operator*(double s) const;
  friend SymMat operator*(double s, const SymMat& m) { return m * s; }

 private:
  struct Trusted {};
  SymMat(Eigen::MatrixXd data, Trusted) : data_(std::move(data)) {}

  // Callers that already produce an exactly symmetric result (sums, Hadamard
  // products with a symmetric pattern) skip the averaging pass.
  friend SymMat adopt_symmetric(Eigen::MatrixXd data);

  Eigen::MatrixXd data_;
};

// Wraps data that is symmetric by construction without re-averaging.
SymMat adopt_symmetric(Eigen::MatrixXd data);

// Split index k of an n×n matrix into a k×k leading block and an (n−k)×(n−k)
// trailing block. 1 ≤ k ≤ n−1.
struct BlockPartition {
  Eigen::Index n;
  Eigen::Index k;

  // Throws DimensionError when k is outside [1, n−1].
  BlockPartition(Eigen::Index n, Eigen::Index k);
};

// Squared Frobenius norms of the three blocks under a split. The off-diagonal
// block is counted once, so v1 + 2·v0 + v2 is the full squared norm.
struct BlockNorms {
  double v1 = 0.0;
  double v0 = 0.0;
  double v2 = 0.0;

  double total() const { return v1 + 2.0 * v0 + v2; }
};

// Column-major stacking: element (i,j) lands at index i + j·n.
Eigen::VectorXd vec(const SymMat& m);

// Inverse of vec. Throws DimensionError if v.size() != n² or if the implied
// matrix is not symmetric to within 1e-12 (relative to its largest entry).
SymMat mat(const Eigen::VectorXd& v, Eigen::Index n);

// U·max(D,0)·Uᵀ for V = U·D·Uᵀ. Throws NumericError on non-finite input.
SymMat project_psd(const SymMat& v);

BlockNorms block_norms(const SymMat& v, const BlockPartition& p);

// True when the smallest eigenvalue is ≥ −rel_tol·max(‖V‖, tiny).
bool is_psd(const SymMat& v, double rel_tol = 1e-8);

}  // namespace madmm
