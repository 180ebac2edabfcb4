#pragma once

// Dense inner loops shared by the solvers. Every kernel in `madmm::kernels` is
// OpenMP-parallel; `madmm::kernels::serial` keeps a plain single-threaded
// reference of the same computation, used by the tests and the benchmark.

#include <array>
#include <vector>

#include <Eigen/Dense>

namespace madmm::kernels {

// Squared Frobenius norms {top-left k×k, off-diagonal k×(n−k), bottom-right}.
using BlockSquares = std::array<double, 3>;

// out = P ⊙ v, where P is constant on the three blocks of the split at k:
// `top` on [0,k)×[0,k), `off` on the off-diagonal blocks, `bottom` on
// [k,n)×[k,n). k == n means "no bottom block" (the whole matrix is top).
Eigen::MatrixXd scale_blocks(const Eigen::MatrixXd& v, Eigen::Index k,
                             double top, double off, double bottom);

BlockSquares block_squares(const Eigen::MatrixXd& v, Eigen::Index k);

// block_squares for every split k = 1..n−1 in O(n²); element [k−1] holds k.
std::vector<BlockSquares> block_squares_all(const Eigen::MatrixXd& v);

// Euclidean projection onto the PSD cone. Input must be symmetric.
// Rebuilds from whichever eigen-part (positive or negative) is smaller.
Eigen::MatrixXd psd_project(const Eigen::MatrixXd& v);

// ⟨a, b⟩ = Σ aᵢⱼ bᵢⱼ.
double frobenius_inner(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

namespace serial {

Eigen::MatrixXd scale_blocks(const Eigen::MatrixXd& v, Eigen::Index k,
                             double top, double off, double bottom);
BlockSquares block_squares(const Eigen::MatrixXd& v, Eigen::Index k);
std::vector<BlockSquares> block_squares_all(const Eigen::MatrixXd& v);
Eigen::MatrixXd psd_project(const Eigen::MatrixXd& v);
double frobenius_inner(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

}  // namespace serial

}  // namespace madmm::kernels
