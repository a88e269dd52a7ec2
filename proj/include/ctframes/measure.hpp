#ifndef CTFRAMES_MEASURE_HPP
#define CTFRAMES_MEASURE_HPP

#include <complex>
#include <Eigen/Dense>

namespace ctf {

/// Finite atomic measure space: K atoms with real coordinate vectors and
/// strictly positive masses. Every integral over the space is the exact
/// weighted sum over atoms, so identities that hold for the continuous
/// objects hold to machine precision here.
class MeasureSpace {
public:
  /// points: one column per atom (coordinate dimension = rows, may be any d >= 1);
  /// weights: one strictly positive, finite mass per atom.
  MeasureSpace(Eigen::MatrixXd points, Eigen::VectorXd weights);

  Eigen::Index atom_count() const { return weights_.size(); }
  Eigen::Index coord_dim() const { return points_.rows(); }
  const Eigen::MatrixXd& points() const { return points_; }
  const Eigen::VectorXd& weights() const { return weights_; }
  double total_mass() const { return weights_.sum(); }

  /// Same atoms with all masses multiplied by c > 0.
  MeasureSpace scaled(double c) const;

  bool same_atoms(const MeasureSpace& other) const;

private:
  Eigen::MatrixXd points_;
  Eigen::VectorXd weights_;
};

/// Convenience constructor for 1-d atom coordinates.
MeasureSpace make_space(const Eigen::VectorXd& points, const Eigen::VectorXd& weights);

/// Product of two atomic measure spaces. Atom (i, j) of the product carries
/// the concatenated coordinates and the product mass, ordered row-major with
/// the right factor fastest: flat index p = i * K2 + j. The ordering matches
/// the Kronecker conventions used for tensor products of frames.
class ProductMeasureSpace {
public:
  ProductMeasureSpace(MeasureSpace left, MeasureSpace right);

  const MeasureSpace& left() const { return left_; }
  const MeasureSpace& right() const { return right_; }
  /// The flattened product space (K1 * K2 atoms).
  const MeasureSpace& joint() const { return joint_; }

  Eigen::Index atom_index(Eigen::Index i, Eigen::Index j) const;
  std::pair<Eigen::Index, Eigen::Index> factor_indices(Eigen::Index p) const;

private:
  MeasureSpace left_;
  MeasureSpace right_;
  MeasureSpace joint_;
};

ProductMeasureSpace product(const MeasureSpace& a, const MeasureSpace& b);

/// Exact weighted sum  sum_k w_k values[k].
std::complex<double> integrate(const Eigen::VectorXcd& values, const MeasureSpace& space);

}  // namespace ctf

#endif
