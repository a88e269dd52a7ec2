#include "ctframes/measure.hpp"

#include <cmath>
#include <stdexcept>

namespace ctf {

MeasureSpace::MeasureSpace(Eigen::MatrixXd points, Eigen::VectorXd weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
  if (weights_.size() == 0) throw std::invalid_argument("measure space needs at least one atom");
  if (points_.cols() != weights_.size())
    throw std::invalid_argument("point/weight count mismatch");
  for (Eigen::Index k = 0; k < weights_.size(); ++k) {
    if (!(weights_[k] > 0.0) || !std::isfinite(weights_[k]))
      throw std::invalid_argument("atom weights must be positive and finite");
  }
  if (!points_.allFinite()) throw std::invalid_argument("atom coordinates must be finite");
}

MeasureSpace MeasureSpace::scaled(double c) const {
  if (!(c > 0.0) || !std::isfinite(c))
    throw std::invalid_argument("weight scale must be positive and finite");
  return MeasureSpace(points_, weights_ * c);
}

bool MeasureSpace::same_atoms(const MeasureSpace& other) const {
  return points_.rows() == other.points_.rows() && points_.cols() == other.points_.cols() &&
         weights_.size() == other.weights_.size() && points_ == other.points_ &&
         weights_ == other.weights_;
}

MeasureSpace make_space(const Eigen::VectorXd& points, const Eigen::VectorXd& weights) {
  Eigen::MatrixXd coords(1, points.size());
  coords.row(0) = points.transpose();
  return MeasureSpace(coords, weights);
}

ProductMeasureSpace::ProductMeasureSpace(MeasureSpace left, MeasureSpace right)
    : left_(std::move(left)),
      right_(std::move(right)),
      joint_([&] {
        const Eigen::Index k1 = left_.atom_count();
        const Eigen::Index k2 = right_.atom_count();
        const Eigen::Index d1 = left_.coord_dim();
        const Eigen::Index d2 = right_.coord_dim();
        Eigen::MatrixXd coords(d1 + d2, k1 * k2);
        Eigen::VectorXd weights(k1 * k2);
        for (Eigen::Index i = 0; i < k1; ++i) {
          for (Eigen::Index j = 0; j < k2; ++j) {
            const Eigen::Index p = i * k2 + j;  // right factor fastest
            coords.col(p).head(d1) = left_.points().col(i);
            coords.col(p).tail(d2) = right_.points().col(j);
            weights[p] = left_.weights()[i] * right_.weights()[j];
          }
        }
        return MeasureSpace(std::move(coords), std::move(weights));
      }()) {}

Eigen::Index ProductMeasureSpace::atom_index(Eigen::Index i, Eigen::Index j) const {
  if (i < 0 || i >= left_.atom_count() || j < 0 || j >= right_.atom_count())
    throw std::invalid_argument("product atom index out of range");
  return i * right_.atom_count() + j;
}

std::pair<Eigen::Index, Eigen::Index> ProductMeasureSpace::factor_indices(Eigen::Index p) const {
  if (p < 0 || p >= joint_.atom_count())
    throw std::invalid_argument("product atom index out of range");
  const Eigen::Index k2 = right_.atom_count();
  return {p / k2, p % k2};
}

ProductMeasureSpace product(const MeasureSpace& a, const MeasureSpace& b) {
  return ProductMeasureSpace(a, b);
}

std::complex<double> integrate(const Eigen::VectorXcd& values, const MeasureSpace& space) {
  if (values.size() != space.atom_count())
    throw std::invalid_argument("integrand length does not match atom count");
  std::complex<double> acc{0.0, 0.0};
  for (Eigen::Index k = 0; k < values.size(); ++k) acc += space.weights()[k] * values[k];
  return acc;
}

}  // namespace ctf
