#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>

#include "ctframes/multiplier.hpp"
#include "ctframes/rng.hpp"
#include "ctframes/tensor.hpp"

using namespace ctf;
using std::complex;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

MeasureSpace unit_space(Eigen::Index k) {
  Eigen::VectorXd points(k);
  for (Eigen::Index i = 0; i < k; ++i) points[i] = static_cast<double>(i);
  return make_space(points, Eigen::VectorXd::Ones(k));
}

Frame e1e2e1() {
  Eigen::MatrixXcd cols(2, 3);
  cols << 1, 0, 1, 0, 1, 0;
  return Frame(unit_space(3), cols);
}

Frame onb(Eigen::Index n) { return Frame(unit_space(n), Eigen::MatrixXcd::Identity(n, n)); }

Symbol constant_symbol(const MeasureSpace& space, complex<double> c) {
  return Symbol(space, Eigen::VectorXcd::Constant(space.atom_count(), c));
}

}  // namespace

TEST_CASE("symbol norms use the measure") {
  const MeasureSpace space = make_space(Eigen::Vector2d(0, 1), Eigen::Vector2d(2.0, 0.5));
  Eigen::VectorXcd values(2);
  values << complex<double>{3, 0}, complex<double>{0, 4};
  const Symbol m(space, values);
  CHECK(m.p_norm(1) == doctest::Approx(2.0 * 3 + 0.5 * 4));
  CHECK(m.p_norm(2) == doctest::Approx(std::sqrt(2.0 * 9 + 0.5 * 16)));
  CHECK(m.sup_norm() == doctest::Approx(4.0));
  CHECK(m.p_norm(kInf) == doctest::Approx(4.0));
  CHECK_THROWS_AS(m.p_norm(0.5), std::invalid_argument);
}

TEST_CASE("multiplier assembly") {
  // unit symbol over a dual pair gives the identity
  const Frame f = e1e2e1();
  const Frame g = canonical_dual(f);
  CHECK(multiplier(constant_symbol(f.space(), 1.0), f, g)
            .isApprox(Eigen::MatrixXcd::Identity(2, 2), 1e-14));

  // an indicator symbol over a weight-1 orthonormal basis projects onto e_k
  const Frame basis = onb(3);
  Eigen::VectorXcd indicator = Eigen::VectorXcd::Zero(3);
  indicator[1] = 1.0;
  Eigen::MatrixXcd projector = Eigen::MatrixXcd::Zero(3, 3);
  projector(1, 1) = 1.0;
  CHECK(multiplier(Symbol(basis.space(), indicator), basis, basis).isApprox(projector, 1e-14));

  // hand sum with the repeated frame: m = (2, 0, 1) gives diag(3, 0)
  Eigen::VectorXcd mv(3);
  mv << 2, 0, 1;
  Eigen::MatrixXcd expected(2, 2);
  expected << 3, 0, 0, 0;
  CHECK(multiplier(Symbol(f.space(), mv), f, f).isApprox(expected, 1e-14));

  CHECK_THROWS_AS(multiplier(constant_symbol(unit_space(2), 1.0), f, f),
                  std::invalid_argument);
  CHECK_THROWS_AS(multiplier(constant_symbol(f.space(), 1.0), f, onb(3)),
                  std::invalid_argument);
}

TEST_CASE("operator norm bound") {
  const Frame basis = onb(2);
  const NormBoundReport parseval =
      norm_bound_check(constant_symbol(basis.space(), 1.0), basis, basis);
  CHECK(parseval.opnorm == doctest::Approx(1.0));
  CHECK(parseval.bound == doctest::Approx(1.0));

  // constant symbol over a tight frame meets the bound with equality
  Eigen::MatrixXcd cols(2, 4);
  cols << 1, 0, 1, 0, 0, 1, 0, 1;
  const Frame tight(unit_space(4), cols);
  const NormBoundReport r = norm_bound_check(constant_symbol(tight.space(), 2.0), tight, tight);
  CHECK(r.opnorm == doctest::Approx(2.0 * 2.0));
  CHECK(r.bound == doctest::Approx(2.0 * 2.0));

  Rng rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const Frame a = random_frame(rng, 3, 6);
    const Frame b(a.space(), rng.complex_matrix(3, 6));
    const Symbol m(a.space(), rng.complex_vector(6));
    const NormBoundReport nb = norm_bound_check(m, a, b);
    CHECK(nb.opnorm <= nb.bound * (1.0 + 1e-9));
  }
}

TEST_CASE("schatten norms") {
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(4, 4);
  CHECK(schatten_norm(id, 1).norm == doctest::Approx(4.0));

  Eigen::MatrixXcd d(2, 2);
  d << 3, 0, 0, 4;
  CHECK(schatten_norm(d, 2).norm == doctest::Approx(5.0));
  CHECK(schatten_norm(d, kInf).norm == doctest::Approx(4.0));
  CHECK(schatten_norm(d, 3).norm == doctest::Approx(std::cbrt(27.0 + 64.0)));
  CHECK_THROWS_AS(schatten_norm(d, 0.9), std::invalid_argument);

  // monotonicity in p on a random operator
  Rng rng(42);
  const Eigen::MatrixXcd t = rng.complex_matrix(5, 5);
  double prev = schatten_norm(t, 1).norm;
  for (const double p : {1.5, 2.0, 3.0, 8.0, kInf}) {
    const double cur = schatten_norm(t, p).norm;
    CHECK(cur <= prev * (1.0 + 1e-12));
    prev = cur;
  }
}

TEST_CASE("schatten bounds") {
  // unit symbol over a weight-1 orthonormal basis: trace norm n meets the bound
  const Frame basis = onb(3);
  const SchattenReport r = schatten_bound(constant_symbol(basis.space(), 1.0), basis, basis, 1);
  CHECK(r.norm == doctest::Approx(3.0));
  CHECK(*r.bound == doctest::Approx(3.0));

  // single-atom symbol: rank-one multiplier with trace norm w |m| ||F_k|| ||G_k||
  const MeasureSpace space = make_space(Eigen::Vector2d(0, 1), Eigen::Vector2d(0.7, 1.3));
  Rng rng(43);
  const Frame f(space, rng.complex_matrix(3, 2));
  const Frame g(space, rng.complex_matrix(3, 2));
  Eigen::VectorXcd delta = Eigen::VectorXcd::Zero(2);
  delta[1] = complex<double>{0.4, -0.2};
  const SchattenReport rank_one = schatten_bound(Symbol(space, delta), f, g, 1);
  const double expected = 1.3 * std::abs(delta[1]) * f.column(1).norm() * g.column(1).norm();
  CHECK(rank_one.norm == doctest::Approx(expected).epsilon(1e-12));
  CHECK(rank_one.norm <= *rank_one.bound * (1.0 + 1e-9));

  for (int trial = 0; trial < 20; ++trial) {
    const Frame a = random_frame(rng, 3, 7);
    const Frame b(a.space(), rng.complex_matrix(3, 7));
    const Symbol m(a.space(), rng.complex_vector(7));
    for (const double p : {1.0, 1.5, 2.0, 3.0}) {
      const SchattenReport sp = schatten_bound(m, a, b, p);
      CHECK(sp.norm <= *sp.bound * (1.0 + 1e-9));
    }
  }
  CHECK_THROWS_AS(schatten_bound(constant_symbol(basis.space(), 1.0), basis, basis, kInf),
                  std::invalid_argument);
}

TEST_CASE("norm_bound is the max column norm") {
  CHECK(norm_bound(onb(4)) == doctest::Approx(1.0));
  Eigen::MatrixXcd cols(2, 2);
  cols << 1, 0, 0, 2;
  CHECK(norm_bound(Frame(unit_space(2), cols)) == doctest::Approx(2.0));
}

TEST_CASE("trace") {
  CHECK(trace(Eigen::MatrixXcd::Identity(5, 5)) == complex<double>{5, 0});

  Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(3);
  e1[0] = 1.0;
  CHECK(trace(Eigen::MatrixXcd(e1 * e1.adjoint())) == complex<double>{1, 0});

  Rng rng(44);
  Eigen::MatrixXcd h = rng.complex_matrix(4, 4);
  h = 0.5 * (h + h.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);
  CHECK(trace(h).real() == doctest::Approx(eig.eigenvalues().sum()).epsilon(1e-12));

  CHECK_THROWS_AS(trace(Eigen::MatrixXcd::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("partial trace") {
  Eigen::MatrixXcd d(2, 2);
  d << 1, 0, 0, 2;
  const Eigen::MatrixXcd t = kron_op(Eigen::MatrixXcd::Identity(2, 2), d);
  CHECK(partial_trace(t, 2, 2, Side::Right)
            .isApprox(3.0 * Eigen::MatrixXcd::Identity(2, 2), 1e-14));
  CHECK(partial_trace(t, 2, 2, Side::Left).isApprox(2.0 * d, 1e-14));

  Rng rng(45);
  const Eigen::MatrixXcd a = rng.complex_matrix(3, 3);
  const Eigen::MatrixXcd b = rng.complex_matrix(2, 2);
  const Eigen::MatrixXcd ab = kron_op(a, b);
  CHECK(partial_trace(ab, 3, 2, Side::Right).isApprox(a * trace(b), 1e-13));
  CHECK(partial_trace(ab, 3, 2, Side::Left).isApprox(b * trace(a), 1e-13));

  // trace preservation and linearity on non-product operators
  const Eigen::MatrixXcd t1 = rng.complex_matrix(6, 6);
  const Eigen::MatrixXcd t2 = rng.complex_matrix(6, 6);
  CHECK(std::abs(trace(partial_trace(t1, 3, 2, Side::Right)) - trace(t1)) <= 1e-12);
  CHECK(std::abs(trace(partial_trace(t1, 3, 2, Side::Left)) - trace(t1)) <= 1e-12);
  const complex<double> alpha = rng.complex_normal();
  CHECK(partial_trace(alpha * t1 + t2, 3, 2, Side::Right)
            .isApprox(alpha * partial_trace(t1, 3, 2, Side::Right) +
                          partial_trace(t2, 3, 2, Side::Right),
                      1e-12));

  CHECK_THROWS_AS(partial_trace(t1, 4, 2, Side::Right), std::invalid_argument);
}

TEST_CASE("multiplier partial trace") {
  Rng rng(46);
  const Frame f1 = random_frame(rng, 2, 3);
  const Frame g1(f1.space(), rng.complex_matrix(2, 3));
  const Frame f2 = random_frame(rng, 2, 4);
  const Frame g2(f2.space(), rng.complex_matrix(2, 4));
  const Symbol m1(f1.space(), rng.complex_vector(3));
  const Symbol m2(f2.space(), rng.complex_vector(4));

  // generic case: reduced operator equals M1 * Tr(M2) (checked internally too)
  const Eigen::MatrixXcd reduced = multiplier_partial_trace(m1, f1, g1, m2, f2, g2, Side::Right);
  const Eigen::MatrixXcd expected = multiplier(m1, f1, g1) * trace(multiplier(m2, f2, g2));
  CHECK(reduced.isApprox(expected, 1e-12));
  const Eigen::MatrixXcd reduced_left =
      multiplier_partial_trace(m1, f1, g1, m2, f2, g2, Side::Left);
  CHECK(reduced_left.isApprox(multiplier(m2, f2, g2) * trace(multiplier(m1, f1, g1)), 1e-12));

  // unit-trace right component reproduces the left multiplier exactly
  const complex<double> tr2 = trace(multiplier(m2, f2, g2));
  const Symbol m2_unit(f2.space(), m2.values() / tr2);
  CHECK(multiplier_partial_trace(m1, f1, g1, m2_unit, f2, g2, Side::Right)
            .isApprox(multiplier(m1, f1, g1), 1e-12));

  // traceless right component reduces to zero: cancel the trace by adjusting
  // one symbol value
  {
    Eigen::VectorXcd vals = m2.values();
    complex<double> acc{0, 0};
    for (Eigen::Index k = 0; k < 3; ++k)
      acc += f2.space().weights()[k] * vals[k] * inner(g2.column(k), f2.column(k));
    const complex<double> last = inner(g2.column(3), f2.column(3)) * f2.space().weights()[3];
    vals[3] = -acc / last;
    const Symbol m2_zero(f2.space(), vals);
    REQUIRE(std::abs(trace(multiplier(m2_zero, f2, g2))) < 1e-10);
    const Eigen::MatrixXcd zero =
        multiplier_partial_trace(m1, f1, g1, m2_zero, f2, g2, Side::Right);
    CHECK(zero.cwiseAbs().maxCoeff() < 1e-10);
  }

  // tensor multiplier factorizes as a Kronecker product
  const Eigen::MatrixXcd big = multiplier(tensor_symbol(m1, m2), tensor_frame(f1, f2).flat,
                                          tensor_frame(g1, g2).flat);
  CHECK(big.isApprox(kron_op(multiplier(m1, f1, g1), multiplier(m2, f2, g2)), 1e-12));
}

TEST_CASE("adjoint identity and positivity") {
  Rng rng(47);
  const MeasureSpace space = random_space(rng, 6);
  const Frame f(space, rng.complex_matrix(3, 6));
  const Frame g(space, rng.complex_matrix(3, 6));
  const Symbol m(space, rng.complex_vector(6));
  const Symbol m_conj(space, m.values().conjugate());
  CHECK(Eigen::MatrixXcd(multiplier(m, f, g).adjoint())
            .isApprox(multiplier(m_conj, g, f), 1e-12));

  // positive symbol: M_{m,F,F} is positive and equals the frame operator of
  // the rescaled family sqrt(m) F
  const Eigen::VectorXd pos = rng.positive_vector(6, 0.1, 1.1);
  const Symbol mp(space, pos.cast<complex<double>>());
  const Eigen::MatrixXcd op = multiplier(mp, f, f);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(op);
  CHECK(eig.eigenvalues().minCoeff() >= -1e-12 * eig.eigenvalues().maxCoeff());

  Eigen::MatrixXcd scaled = f.vectors();
  for (Eigen::Index k = 0; k < 6; ++k) scaled.col(k) *= std::sqrt(pos[k]);
  CHECK(op.isApprox(frame_operator(Frame(space, scaled)), 1e-12));
}
