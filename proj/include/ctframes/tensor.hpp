#ifndef CTFRAMES_TENSOR_HPP
#define CTFRAMES_TENSOR_HPP

#include <optional>
#include <Eigen/Dense>

#include "ctframes/frame.hpp"
#include "ctframes/measure.hpp"

namespace ctf {

// Relative threshold on Schmidt coefficients used by simple_rank.
inline constexpr double kRankTolerance = 1e-10;

/// Element of C^{n1} (x) C^{n2}, stored flat with index (a, b) -> a*n2 + b.
struct TensorVector {
  Eigen::Index dim_left = 0;
  Eigen::Index dim_right = 0;
  Eigen::VectorXcd entries;
};

/// Schmidt decomposition x = sum_n c_n (e_n (x) f_n) with c_n >= 0 descending
/// and orthonormal columns e_n, f_n. The first nonzero entry of each left
/// vector is made real positive so the decomposition is unique for testing.
struct SchmidtDecomposition {
  Eigen::VectorXd coefficients;
  Eigen::MatrixXcd left;
  Eigen::MatrixXcd right;
};

/// Frame over a product measure space whose dimension factors as n1 * n2.
/// When built from two factor frames, column (i, j) is kron(F1_i, F2_j) and
/// the factors are kept as provenance.
struct TensorFrame {
  ProductMeasureSpace space;
  Eigen::Index dim_left = 0;
  Eigen::Index dim_right = 0;
  Frame flat;
  std::optional<Frame> left_factor;
  std::optional<Frame> right_factor;
};

TensorVector kron_vec(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v);

/// Kronecker product consistent with the kron_vec index map:
/// (S (x) T)(u (x) v) = Su (x) Tv.
Eigen::MatrixXcd kron_op(const Eigen::MatrixXcd& s, const Eigen::MatrixXcd& t);

TensorFrame tensor_frame(const Frame& f1, const Frame& f2);

/// inf and sup of the quadratic form f -> sum_k w_k |<f, F_k>|^2 over the unit
/// sphere; identical to the optimal Bessel/frame bounds of the family.
std::pair<double, double> bound_constants(const Frame& frame);

SchmidtDecomposition schmidt(const TensorVector& x);

/// Number of Schmidt coefficients above kRankTolerance * c_max; a vector is a
/// simple tensor iff the result is <= 1.
Eigen::Index simple_rank(const TensorVector& x);

/// Dual of the flat tensor frame obtained from the classification formula
/// with perturbation family w (a Bessel family on the joint space).
TensorFrame tensor_dual_from_bessel(const TensorFrame& frame, const Frame& w);

/// Searches a fixed, deterministic family of rank-2 perturbations and returns
/// the first verified dual of f1 (x) f2 that has at least one column of
/// simple_rank >= 2. Requires a redundant frame and factor dimensions > 1.
TensorFrame nonsimple_dual(const TensorFrame& frame);

}  // namespace ctf

#endif
