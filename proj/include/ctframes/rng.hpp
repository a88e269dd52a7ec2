#ifndef CTFRAMES_RNG_HPP
#define CTFRAMES_RNG_HPP

#include <complex>
#include <cstdint>
#include <random>
#include <Eigen/Dense>

#include "ctframes/frame.hpp"
#include "ctframes/measure.hpp"

namespace ctf {

/// Deterministic random source for experiments and tests. Gaussian samples
/// are produced by an explicit Box-Muller transform on top of mt19937_64 so
/// that a seed yields the same stream on every standard library.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform();                       // [0, 1)
  double uniform(double lo, double hi);   // [lo, hi)
  double normal();
  std::complex<double> complex_normal();  // independent N(0,1) parts
  Eigen::Index index(Eigen::Index lo, Eigen::Index hi);  // inclusive range

  Eigen::VectorXd positive_vector(Eigen::Index n, double lo, double hi);
  Eigen::VectorXcd complex_vector(Eigen::Index n);
  Eigen::MatrixXcd complex_matrix(Eigen::Index rows, Eigen::Index cols);

private:
  std::mt19937_64 gen_;
};

/// Atoms at integer coordinates 0..k-1 with masses uniform in [0.5, 1.5).
MeasureSpace random_space(Rng& rng, Eigen::Index atoms);

/// Gaussian frame over a random space; resampled until the family passes the
/// frame test (it does generically whenever atoms >= dim).
Frame random_frame(Rng& rng, Eigen::Index dim, Eigen::Index atoms);

}  // namespace ctf

#endif
