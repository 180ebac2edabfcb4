#include "madmm/kernels.hpp"

#include <cmath>

#include "madmm/errors.hpp"

namespace madmm::kernels {

namespace {

inline double block_factor(Eigen::Index i, Eigen::Index j, Eigen::Index k,
                           double top, double off, double bottom) {
  const bool ti = i < k;
  const bool tj = j < k;
  if (ti && tj) return top;
  if (!ti && !tj) return bottom;
  return off;
}

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigensolve(
    const Eigen::MatrixXd& v) {
  if (!v.allFinite()) {
    throw NumericError("psd_project: input has non-finite entries");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(v);
  if (es.info() != Eigen::Success) {
    throw NumericError("psd_project: eigendecomposition failed");
  }
  return es;
}

}  // namespace

Eigen::MatrixXd scale_blocks(const Eigen::MatrixXd& v, Eigen::Index k,
                             double top, double off, double bottom) {
  const Eigen::Index n = v.rows();
  Eigen::MatrixXd out(n, n);
#pragma omp parallel for schedule(static) if (n >= 64)
  for (Eigen::Index j = 0; j < n; ++j) {
    const bool tj = j < k;
    const double upper = tj ? top : off;
    const double lower = tj ? off : bottom;
    const Eigen::Index split = std::min(k, n);
    for (Eigen::Index i = 0; i < split; ++i) out(i, j) = upper * v(i, j);
    for (Eigen::Index i = split; i < n; ++i) out(i, j) = lower * v(i, j);
  }
  return out;
}

BlockSquares block_squares(const Eigen::MatrixXd& v, Eigen::Index k) {
  const Eigen::Index n = v.rows();
  double v1 = 0.0, v0 = 0.0, v2 = 0.0;
#pragma omp parallel for reduction(+ : v1, v0, v2) schedule(static) if (n >= 64)
  for (Eigen::Index j = 0; j < n; ++j) {
    double head = 0.0, tail = 0.0;
    for (Eigen::Index i = 0; i < k; ++i) head += v(i, j) * v(i, j);
    for (Eigen::Index i = k; i < n; ++i) tail += v(i, j) * v(i, j);
    if (j < k) {
      v1 += head;
    } else {
      v0 += head;
      v2 += tail;
    }
  }
  return {v1, v0, v2};
}

std::vector<BlockSquares> block_squares_all(const Eigen::MatrixXd& v) {
  const Eigen::Index n = v.rows();
  // Column sums of squares and, per column, the prefix sums down the rows.
  const Eigen::MatrixXd sq = v.cwiseAbs2();
  Eigen::VectorXd col_total(n);
#pragma omp parallel for schedule(static) if (n >= 64)
  for (Eigen::Index j = 0; j < n; ++j) col_total(j) = sq.col(j).sum();
  const double total = col_total.sum();

  std::vector<BlockSquares> out(n > 1 ? n - 1 : 0);
  // top(k) grows by the new row/column pair at index k−1.
  double top = 0.0;
  double first_cols = 0.0;  // Σ over the first k columns, all rows
  for (Eigen::Index k = 1; k < n; ++k) {
    const Eigen::Index c = k - 1;
    top += 2.0 * sq.col(c).head(c).sum() + sq(c, c);
    first_cols += col_total(c);
    const double off = first_cols - top;
    out[k - 1] = {top, off, total - top - 2.0 * off};
  }
  return out;
}

Eigen::MatrixXd psd_project(const Eigen::MatrixXd& v) {
  const auto es = eigensolve(v);
  const Eigen::VectorXd& d = es.eigenvalues();  // ascending
  const Eigen::MatrixXd& u = es.eigenvectors();
  const Eigen::Index n = d.size();
  Eigen::Index neg = 0;
  while (neg < n && d(neg) < 0.0) ++neg;
  if (neg == 0) return v;
  if (neg == n) return Eigen::MatrixXd::Zero(n, n);
  const Eigen::Index pos = n - neg;
  Eigen::MatrixXd out;
  if (pos <= neg) {
    const auto up = u.rightCols(pos);
    out.noalias() = up * d.tail(pos).asDiagonal() * up.transpose();
  } else {
    const auto un = u.leftCols(neg);
    out = v;
    out.noalias() -= un * d.head(neg).asDiagonal() * un.transpose();
  }
  return 0.5 * (out + out.transpose());
}

double frobenius_inner(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const Eigen::Index n = a.cols();
  double acc = 0.0;
#pragma omp parallel for reduction(+ : acc) schedule(static) if (n >= 64)
  for (Eigen::Index j = 0; j < n; ++j) acc += a.col(j).dot(b.col(j));
  return acc;
}

namespace serial {

Eigen::MatrixXd scale_blocks(const Eigen::MatrixXd& v, Eigen::Index k,
                             double top, double off, double bottom) {
  const Eigen::Index n = v.rows();
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      out(i, j) = block_factor(i, j, k, top, off, bottom) * v(i, j);
  return out;
}

BlockSquares block_squares(const Eigen::MatrixXd& v, Eigen::Index k) {
  const Eigen::Index n = v.rows();
  BlockSquares s{0.0, 0.0, 0.0};
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) s[0] += v(i, j) * v(i, j);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = k; j < n; ++j) s[1] += v(i, j) * v(i, j);
  for (Eigen::Index i = k; i < n; ++i)
    for (Eigen::Index j = k; j < n; ++j) s[2] += v(i, j) * v(i, j);
  return s;
}

std::vector<BlockSquares> block_squares_all(const Eigen::MatrixXd& v) {
  std::vector<BlockSquares> out;
  for (Eigen::Index k = 1; k < v.rows(); ++k) out.push_back(block_squares(v, k));
  return out;
}

Eigen::MatrixXd psd_project(const Eigen::MatrixXd& v) {
  const auto es = eigensolve(v);
  const Eigen::VectorXd clamped = es.eigenvalues().cwiseMax(0.0);
  Eigen::MatrixXd out =
      es.eigenvectors() * clamped.asDiagonal() * es.eigenvectors().transpose();
  return 0.5 * (out + out.transpose());
}

double frobenius_inner(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  double acc = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) acc += a(i, j) * b(i, j);
  return acc;
}

}  // namespace serial

}  // namespace madmm::kernels
