#ifndef CTFRAMES_FRAME_HPP
#define CTFRAMES_FRAME_HPP

#include <complex>
#include <Eigen/Dense>

#include "ctframes/measure.hpp"

namespace ctf {

// Relative spectral threshold below which a frame operator counts as singular:
// a family is a frame iff lambda_min(S) > kFrameTolerance * lambda_max(S).
inline constexpr double kFrameTolerance = 1e-10;

/// A family of vectors in C^n indexed by the atoms of a measure space; column
/// k holds the vector attached to atom k. Weights stay in the space and enter
/// every operator formula explicitly, so columns remain the raw family values.
/// A Frame object may fail the lower frame inequality (Bessel-only families
/// such as dual-generating perturbations are carried by the same type).
class Frame {
public:
  Frame(MeasureSpace space, Eigen::MatrixXcd vectors);

  Eigen::Index dim() const { return vectors_.rows(); }
  Eigen::Index atom_count() const { return vectors_.cols(); }
  const MeasureSpace& space() const { return space_; }
  const Eigen::MatrixXcd& vectors() const { return vectors_; }
  Eigen::VectorXcd column(Eigen::Index k) const { return vectors_.col(k); }

private:
  MeasureSpace space_;
  Eigen::MatrixXcd vectors_;
};

/// A scalar function on the atoms of a measure space (the discretization of a
/// square-integrable coefficient function).
struct CoefficientFunction {
  MeasureSpace space;
  Eigen::VectorXcd values;

  /// Weighted L2 norm: sqrt(sum_k w_k |values[k]|^2).
  double norm() const;
};

struct FrameBounds {
  double lower = 0.0;  // smallest eigenvalue of the frame operator
  double upper = 0.0;  // largest eigenvalue of the frame operator
  bool frame = false;  // lower > kFrameTolerance * upper
};

/// Inner product, linear in the first argument and conjugate-linear in the
/// second: <f, g> = sum_i f_i conj(g_i).
std::complex<double> inner(const Eigen::VectorXcd& f, const Eigen::VectorXcd& g);

/// Analysis: c_k = <f, F_k>.
CoefficientFunction analysis(const Frame& frame, const Eigen::VectorXcd& f);

/// Synthesis: sum_k w_k c_k F_k.
Eigen::VectorXcd synthesis(const Frame& frame, const CoefficientFunction& coeff);

/// Frame operator S = sum_k w_k F_k F_k^*, symmetrized to (S + S^*)/2 after
/// accumulation. Accumulation follows ascending atom index.
Eigen::MatrixXcd frame_operator(const Frame& frame);

/// Optimal bounds A = lambda_min(S), B = lambda_max(S).
FrameBounds frame_bounds(const Frame& frame);

/// Canonical dual family S^{-1} F_k over the same space. Throws if the family
/// is not a frame.
Frame canonical_dual(const Frame& frame);

/// True iff || sum_k w_k G_k F_k^* - I ||_max <= tol, which is the weak dual
/// identity tested on all pairs of vectors.
bool is_dual_pair(const Frame& f, const Frame& g, double tol);

/// Max-abs-entry residual of the dual identity, sum_k w_k G_k F_k^* - I.
double dual_pair_defect(const Frame& f, const Frame& g);

/// Full dual classification: for a Bessel family Theta on the same space,
///   G_k = S^{-1}F_k + Theta_k - sum_j w_j <S^{-1}F_k, F_j> Theta_j
/// is a dual of F, and every dual arises this way.
Frame dual_from_bessel(const Frame& frame, const Frame& theta);

/// Complex dimension n * (K - rank S) of the affine space of duals.
Eigen::Index dual_space_dimension(const Frame& frame);

/// Same family with every atom mass multiplied by c > 0.
Frame with_weights_scaled(const Frame& frame, double c);

}  // namespace ctf

#endif
