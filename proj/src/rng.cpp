#include "ctframes/rng.hpp"

#include <cmath>
#include <numbers>

namespace ctf {

double Rng::uniform() {
  // 53-bit mantissa from the raw 64-bit stream; avoids distribution objects
  // whose output differs between standard libraries
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
  // Box-Muller; u clamped away from 0 so the log stays finite
  double u = uniform();
  if (u < 0x1.0p-53) u = 0x1.0p-53;
  const double v = uniform();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

std::complex<double> Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

Eigen::Index Rng::index(Eigen::Index lo, Eigen::Index hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<Eigen::Index>(gen_() % span);
}

Eigen::VectorXd Rng::positive_vector(Eigen::Index n, double lo, double hi) {
  Eigen::VectorXd out(n);
  for (Eigen::Index i = 0; i < n; ++i) out[i] = uniform(lo, hi);
  return out;
}

Eigen::VectorXcd Rng::complex_vector(Eigen::Index n) {
  Eigen::VectorXcd out(n);
  for (Eigen::Index i = 0; i < n; ++i) out[i] = complex_normal();
  return out;
}

Eigen::MatrixXcd Rng::complex_matrix(Eigen::Index rows, Eigen::Index cols) {
  Eigen::MatrixXcd out(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) out(i, j) = complex_normal();
  return out;
}

MeasureSpace random_space(Rng& rng, Eigen::Index atoms) {
  Eigen::VectorXd points(atoms);
  for (Eigen::Index i = 0; i < atoms; ++i) points[i] = static_cast<double>(i);
  return make_space(points, rng.positive_vector(atoms, 0.5, 1.5));
}

Frame random_frame(Rng& rng, Eigen::Index dim, Eigen::Index atoms) {
  while (true) {
    Frame f(random_space(rng, atoms), rng.complex_matrix(dim, atoms));
    if (frame_bounds(f).frame) return f;
  }
}

}  // namespace ctf
