#pragma once

#include <utility>

#include <Eigen/Dense>

#include "madmm/symmat.hpp"

namespace madmm {

// Block-Hadamard metric M(V) = H ⊙ V on n×n symmetric matrices, with
//
//        ⎡ (γ1/γ2)·1   γ1·1    ⎤   k rows
//    H = ⎣ γ1·1        γ1γ2·1  ⎦   n−k rows
//
// and its factor S(V) = √H ⊙ V, so that ⟨V, M V⟩ = ‖S V‖². S preserves
// positive semidefiniteness in both directions, which makes the M-norm
// projection onto the PSD cone S⁻¹∘Π∘S. Only (k, γ1, γ2) are stored.
class Metric {
 public:
  // Throws MetricError unless γ1 > 0, γ2 > 0 and 1 ≤ k ≤ n−1.
  Metric(Eigen::Index n, Eigen::Index k, double gamma1, double gamma2);

  // γ2 = 1: every entry of H equals γ, i.e. a plain scalar step.
  static Metric scalar(Eigen::Index n, double gamma);

  Eigen::Index n() const { return n_; }
  Eigen::Index k() const { return k_; }
  double gamma1() const { return gamma1_; }
  double gamma2() const { return gamma2_; }

  // Entries of H on the three blocks: {top-left, off-diagonal, bottom-right}.
  double h_top() const { return gamma1_ / gamma2_; }
  double h_off() const { return gamma1_; }
  double h_bottom() const { return gamma1_ * gamma2_; }
  double h_min() const;

  // Dense n×n copies of H and √H.
  Eigen::MatrixXd weights() const;
  Eigen::MatrixXd sqrt_weights() const;

 private:
  Eigen::Index n_;
  Eigen::Index k_;
  double gamma1_;
  double gamma2_;
};

SymMat apply_m(const Metric& m, const SymMat& v);
SymMat apply_s(const Metric& m, const SymMat& v);
SymMat apply_s_inv(const Metric& m, const SymMat& v);

// {psd(V), psd(S·V)} with the relative tolerance −1e-8·‖·‖.
std::pair<bool, bool> invariance_holds(const Metric& m, const SymMat& v);

// S⁻¹(Π(S V)): the minimizer of ½‖Z − V‖²_M over the PSD cone.
SymMat scaled_projection(const Metric& m, const SymMat& v);

// ½‖Z − V‖²_M, for checking projections against sampled cone points.
double m_distance_sq(const Metric& m, const SymMat& z, const SymMat& v);

}  // namespace madmm
