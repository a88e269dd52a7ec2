#include <doctest.h>

#include <cmath>
#include <complex>

#include "ctframes/quantum.hpp"
#include "ctframes/rng.hpp"
#include "ctframes/tensor.hpp"

using namespace ctf;
using std::complex;

namespace {

MeasureSpace unit_grid(Eigen::Index atoms) {
  Eigen::VectorXd points(atoms);
  for (Eigen::Index i = 0; i < atoms; ++i) points[i] = static_cast<double>(i);
  return make_space(points, Eigen::VectorXd::Ones(atoms));
}

Symbol constant_symbol(const MeasureSpace& space, complex<double> c) {
  return Symbol(space, Eigen::VectorXcd::Constant(space.atom_count(), c));
}

}  // namespace

TEST_CASE("is_admissible") {
  CHECK(is_admissible(Eigen::MatrixXcd::Identity(4, 4) / 4.0).admissible());

  Rng rng(61);
  Eigen::VectorXcd u = rng.complex_vector(3);
  u /= u.norm();
  CHECK(is_admissible(Eigen::MatrixXcd(u * u.adjoint())).admissible());

  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Zero(2, 2);
  bad(0, 0) = 1.0 / 0.9;
  bad(1, 1) = -0.1 / 0.9;
  const AdmissibilityReport r = is_admissible(bad);
  CHECK_FALSE(r.admissible());
  CHECK(r.hermitian);
  CHECK(r.unit_trace);
  CHECK_FALSE(r.psd);
  CHECK(r.min_eigenvalue == doctest::Approx(-1.0 / 9.0));

  // non-Hermitian and wrong-trace diagnostics
  Eigen::MatrixXcd skew(2, 2);
  skew << 0.5, complex<double>{0, 0.2}, complex<double>{0, 0.2}, 0.5;
  const AdmissibilityReport r2 = is_admissible(skew);
  CHECK_FALSE(r2.hermitian);

  CHECK_THROWS_AS(DensityOperator(bad), std::invalid_argument);
  CHECK_THROWS_AS(is_admissible(Eigen::MatrixXcd::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("purity") {
  CHECK(purity(Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(5, 5) / 5.0)) ==
        doctest::Approx(0.2));
  Rng rng(62);
  Eigen::VectorXcd u = rng.complex_vector(4);
  u /= u.norm();
  CHECK(purity(Eigen::MatrixXcd(u * u.adjoint())) == doctest::Approx(1.0));

  Eigen::MatrixXcd even = Eigen::MatrixXcd::Zero(2, 2);
  even(0, 0) = even(1, 1) = 0.5;
  CHECK(purity(even) == doctest::Approx(0.5));
  Eigen::MatrixXcd skewed = Eigen::MatrixXcd::Zero(2, 2);
  skewed(0, 0) = 0.9;
  skewed(1, 1) = 0.1;
  CHECK(purity(skewed) == doctest::Approx(0.82));
}

TEST_CASE("trace formula") {
  // N = 2, delta windows, unit symbol on the 4-atom grid: both sides are 4
  const Eigen::VectorXcd delta = make_window("delta", 2);
  const MeasureSpace grid = unit_grid(4);
  const TraceFormulaResult r = trace_formula(constant_symbol(grid, 1.0), delta, delta);
  CHECK(std::abs(r.lhs - complex<double>{4, 0}) < 1e-12);
  CHECK(std::abs(r.rhs - complex<double>{4, 0}) < 1e-12);

  // symbol supported on one atom with value c: both sides c <psi, phi>
  Rng rng(63);
  const Eigen::VectorXcd phi = rng.complex_vector(2);
  const Eigen::VectorXcd psi = rng.complex_vector(2);
  Eigen::VectorXcd one_atom = Eigen::VectorXcd::Zero(4);
  const complex<double> c{0.3, -0.8};
  one_atom[2] = c;
  const TraceFormulaResult r1 = trace_formula(Symbol(grid, one_atom), phi, psi);
  CHECK(std::abs(r1.rhs - c * inner(psi, phi)) < 1e-14);
  CHECK(std::abs(r1.lhs - r1.rhs) <= 1e-12 * std::max(1.0, std::abs(r1.rhs)));

  // orthogonal windows force both sides to zero
  Eigen::VectorXcd orth = rng.complex_vector(2);
  orth -= phi * (inner(orth, phi) / inner(phi, phi));
  const TraceFormulaResult r2 =
      trace_formula(Symbol(grid, rng.complex_vector(4)), phi, orth);
  CHECK(std::abs(r2.rhs) < 1e-12);
  CHECK(std::abs(r2.lhs) < 1e-10);

  // random instances: the identity is exact on the finite grid
  for (int trial = 0; trial < 25; ++trial) {
    const Eigen::Index n = 2 + trial % 4;
    const Eigen::VectorXcd a = rng.complex_vector(n);
    const Eigen::VectorXcd b = rng.complex_vector(n);
    const Symbol m(unit_grid(n * n), rng.complex_vector(n * n));
    const TraceFormulaResult rr = trace_formula(m, a, b);
    CHECK(std::abs(rr.lhs - rr.rhs) <= 1e-10 * std::max(1.0, std::abs(rr.rhs)));
  }
}

TEST_CASE("normalize_symbol") {
  const Eigen::VectorXcd delta = make_window("delta", 2);
  const MeasureSpace grid = unit_grid(4);
  const Symbol uniform = constant_symbol(grid, 1.0);
  const Symbol normalized = normalize_symbol(uniform, delta, delta);
  CHECK(normalized.values().isApproxToConstant(complex<double>{0.25, 0}, 1e-14));

  // already normalized symbols stay put
  const Symbol again = normalize_symbol(normalized, delta, delta);
  CHECK(again.values().isApprox(normalized.values(), 1e-14));

  // the rescaled multiplier has unit trace
  const GaborSystem sys = gabor_frame(delta);
  CHECK(std::abs(trace(multiplier(normalized, sys.frame, sys.frame)) -
                 complex<double>{1, 0}) < 1e-12);

  Eigen::VectorXcd zero_mass(4);
  zero_mass << 1, -1, 1, -1;
  CHECK_THROWS_AS(normalize_symbol(Symbol(grid, zero_mass), delta, delta),
                  std::invalid_argument);
  Eigen::VectorXcd e1 = make_window("delta", 2);
  Eigen::VectorXcd e2 = Eigen::VectorXcd::Zero(2);
  e2[1] = 1.0;
  CHECK_THROWS_AS(normalize_symbol(uniform, e1, e2), std::invalid_argument);
}

TEST_CASE("separable density: delta windows and uniform symbols") {
  const Eigen::VectorXcd delta = make_window("delta", 2);
  const MeasureSpace grid = unit_grid(4);
  const Symbol uniform = constant_symbol(grid, 0.25);
  const SeparableDensity d = separable_density(uniform, uniform, delta, delta);

  CHECK(d.rho.op().isApprox(Eigen::MatrixXcd::Identity(4, 4) / 4.0, 1e-12));
  CHECK(d.reduced_left.op().isApprox(Eigen::MatrixXcd::Identity(2, 2) / 2.0, 1e-12));
  CHECK(d.reduced_right.op().isApprox(Eigen::MatrixXcd::Identity(2, 2) / 2.0, 1e-12));
  CHECK(purity(d.rho) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("separable density: random instances") {
  Rng rng(64);
  for (const Eigen::Index n : {2, 3}) {
    const Eigen::VectorXcd phi1 = rng.complex_vector(n);
    const Eigen::VectorXcd phi2 = rng.complex_vector(n);
    const MeasureSpace grid = unit_grid(n * n);
    const Symbol m1(grid, rng.positive_vector(n * n, 0.2, 1.2).cast<complex<double>>());
    const Symbol m2(grid, rng.positive_vector(n * n, 0.2, 1.2).cast<complex<double>>());
    const SeparableDensity d = separable_density(m1, m2, phi1, phi2);

    CHECK(is_admissible(d.rho.op()).admissible());
    CHECK(d.reduced_left.op().trace().real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d.reduced_right.op().trace().real() == doctest::Approx(1.0).epsilon(1e-12));

    // reduced operators equal the independently normalized component multipliers
    const GaborSystem f1 = gabor_frame(phi1);
    Eigen::MatrixXcd c1 =
        multiplier(normalize_symbol(m1, phi1, phi1), f1.frame, f1.frame);
    c1 /= c1.trace().real();
    CHECK((d.reduced_left.op() - c1).cwiseAbs().maxCoeff() < 1e-10);

    // purity factorizes across the tensor product
    CHECK(purity(d.rho) ==
          doctest::Approx(purity(d.reduced_left) * purity(d.reduced_right)).epsilon(1e-10));

    // the state is the frame operator of the square-root-weighted family
    const GaborSystem f2 = gabor_frame(phi2);
    const TensorFrame tf = tensor_frame(f1.frame, f2.frame);
    const Symbol joint = tensor_symbol(normalize_symbol(m1, phi1, phi1),
                                       normalize_symbol(m2, phi2, phi2));
    Eigen::MatrixXcd scaled = tf.flat.vectors();
    for (Eigen::Index k = 0; k < scaled.cols(); ++k)
      scaled.col(k) *= std::sqrt(joint.values()[k].real());
    Eigen::MatrixXcd s = frame_operator(Frame(tf.flat.space(), scaled));
    s /= s.trace().real();
    CHECK((d.rho.op() - s).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("separable density: concentrated symbols give a nearly pure state") {
  const Eigen::Index n = 2;
  const Eigen::VectorXcd delta = make_window("delta", n);
  const MeasureSpace grid = unit_grid(n * n);
  Eigen::VectorXcd spike = Eigen::VectorXcd::Constant(n * n, 1e-9);
  spike[0] = 1.0;
  const Symbol m(grid, spike);
  const SeparableDensity d = separable_density(m, m, delta, delta);
  CHECK(purity(d.rho) > 0.999);
}

TEST_CASE("separable density rejects bad input") {
  const Eigen::VectorXcd delta = make_window("delta", 2);
  const MeasureSpace grid = unit_grid(4);
  Eigen::VectorXcd negative = Eigen::VectorXcd::Constant(4, 1.0);
  negative[2] = -0.5;
  CHECK_THROWS_AS(
      separable_density(Symbol(grid, negative), constant_symbol(grid, 1.0), delta, delta),
      std::invalid_argument);
  CHECK_THROWS_AS(separable_density(constant_symbol(grid, 1.0), constant_symbol(grid, 1.0),
                                    Eigen::VectorXcd::Zero(2), delta),
                  std::invalid_argument);
}
