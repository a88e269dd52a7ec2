#include <doctest.h>

#include <cmath>
#include <complex>

#include "ctframes/localization.hpp"
#include "ctframes/rng.hpp"
#include "ctframes/tensor.hpp"

using namespace ctf;
using std::complex;

namespace {

Eigen::VectorXd linear_grid(double lo, double hi, Eigen::Index n) {
  Eigen::VectorXd out(n);
  for (Eigen::Index i = 0; i < n; ++i)
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return out;
}

Symbol constant_symbol(const MeasureSpace& space, complex<double> c) {
  return Symbol(space, Eigen::VectorXcd::Constant(space.atom_count(), c));
}

}  // namespace

TEST_CASE("time-frequency shifts") {
  Eigen::VectorXcd g(4);
  g << 1, 2, 3, 4;
  const Eigen::VectorXcd shifted = translate(g, 1);
  CHECK(shifted(0) == complex<double>{4, 0});
  CHECK(shifted(1) == complex<double>{1, 0});

  const Eigen::VectorXcd mod = modulate(g, 2);  // phase exp(pi i t) = (-1)^t
  CHECK(mod(0) == complex<double>{1, 0});
  CHECK(std::abs(mod(1) - complex<double>{-2, 0}) < 1e-14);

  // shifts are unitary
  Rng rng(51);
  const Eigen::VectorXcd w = rng.complex_vector(8);
  CHECK(time_frequency_shift(w, 3, 5).norm() == doctest::Approx(w.norm()));
}

TEST_CASE("gabor frame tightness") {
  // delta window, N = 4: brute-force energy oracle sums |<f, pi(k,l) g>|^2
  const Eigen::Index n = 4;
  const Eigen::VectorXcd g = make_window("delta", n);
  const GaborSystem sys = gabor_frame(g);
  CHECK(sys.frame.atom_count() == n * n);

  Rng rng(52);
  const Eigen::VectorXcd f = rng.complex_vector(n);
  double energy = 0.0;
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index l = 0; l < n; ++l)
      energy += std::norm(inner(f, time_frequency_shift(g, k, l)));
  CHECK(energy == doctest::Approx(static_cast<double>(n) * f.squaredNorm()).epsilon(1e-12));

  const FrameBounds b = frame_bounds(sys.frame);
  CHECK(b.lower == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(b.upper == doctest::Approx(4.0).epsilon(1e-10));

  // (1, 1)/sqrt(2) on N = 2: tight bound 2
  Eigen::VectorXcd w(2);
  w << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const FrameBounds b2 = frame_bounds(gabor_frame(w).frame);
  CHECK(b2.lower == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(b2.upper == doctest::Approx(2.0).epsilon(1e-10));

  // unit-norm window with weights 1/N gives a Parseval frame
  const FrameBounds bp = frame_bounds(with_weights_scaled(gabor_frame(w).frame, 0.5));
  CHECK(bp.lower == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(bp.upper == doctest::Approx(1.0).epsilon(1e-10));

  CHECK_THROWS_AS(gabor_frame(Eigen::VectorXcd::Zero(3)), std::invalid_argument);
}

TEST_CASE("stft") {
  // delta window and signal on N = 2: coefficients enumerate to (1, 1, 0, 0)
  const Eigen::VectorXcd d = make_window("delta", 2);
  const CoefficientFunction c = stft(d, d);
  CHECK(std::abs(c.values[0] - complex<double>{1, 0}) < 1e-14);
  CHECK(std::abs(c.values[1] - complex<double>{1, 0}) < 1e-14);
  CHECK(std::abs(c.values[2]) < 1e-14);
  CHECK(std::abs(c.values[3]) < 1e-14);
  CHECK(c.values.cwiseAbs2().sum() == doctest::Approx(2.0));

  CHECK(stft(Eigen::VectorXcd::Zero(2), d).values.isZero());
  CHECK_THROWS_AS(stft(Eigen::VectorXcd::Zero(3), d), std::invalid_argument);

  // energy identity with the finite-group constant N
  Rng rng(53);
  const Eigen::Index n = 8;
  const Eigen::VectorXcd g = rng.complex_vector(n);
  const Eigen::VectorXcd f1 = rng.complex_vector(n);
  const Eigen::VectorXcd f2 = rng.complex_vector(n);
  const complex<double> sum =
      stft(f1, g).values.cwiseProduct(stft(f2, g).values.conjugate()).sum();
  const complex<double> expected = static_cast<double>(n) * inner(f1, f2) * g.squaredNorm();
  CHECK(std::abs(sum - expected) <=
        1e-12 * static_cast<double>(n) * f1.norm() * f2.norm() * g.squaredNorm());

  // the transform agrees with frame analysis on the Gabor grid
  const GaborSystem sys = gabor_frame(g);
  CHECK(stft(f1, g).values.isApprox(analysis(sys.frame, f1).values, 1e-12));

  // spectrogram arranges |V_g f|^2 with translation as row index
  const Eigen::MatrixXd grid = spectrogram(f1, g);
  CHECK(grid.rows() == n);
  CHECK(grid(2, 3) == doctest::Approx(std::norm(stft(f1, g).values[2 * n + 3])));
}

TEST_CASE("admissibility quadrature") {
  const Eigen::VectorXd omega = linear_grid(0.0, 4.0, 16001);

  // indicator of [1, 2]: integral of 1/w over the band is ln 2
  CHECK(admissibility(omega, bandlimited_spectrum(1.0, 2.0, omega)) ==
        doctest::Approx(std::log(2.0)).epsilon(1.5e-3));
  // indicator of [1, e]: exactly 1
  CHECK(admissibility(omega, bandlimited_spectrum(1.0, std::exp(1.0), omega)) ==
        doctest::Approx(1.0).epsilon(1.5e-3));

  // zero-frequency mass is rejected
  Eigen::VectorXcd dc = bandlimited_spectrum(1.0, 2.0, omega);
  dc[0] = 1.0;
  CHECK_THROWS_AS(admissibility(omega, dc), std::domain_error);
  CHECK_THROWS_AS(admissibility(omega, Eigen::VectorXcd::Zero(omega.size())),
                  std::domain_error);
}

TEST_CASE("cross admissibility") {
  const Eigen::VectorXd omega = linear_grid(0.0, 4.0, 16001);
  const Eigen::VectorXcd g1 = bandlimited_spectrum(1.0, 2.0, omega);
  const Eigen::VectorXcd g2 = bandlimited_spectrum(1.5, 3.0, omega);

  // same window: real positive, equals the one-sided admissibility integral
  const complex<double> self = cross_admissibility(omega, g1, g1);
  CHECK(self.imag() == doctest::Approx(0.0));
  CHECK(self.real() == doctest::Approx(admissibility(omega, g1)).epsilon(1e-12));

  // overlap [1.5, 2]: integral of 1/s over it is ln(4/3)
  CHECK(cross_admissibility(omega, g1, g2).real() ==
        doctest::Approx(std::log(4.0 / 3.0)).epsilon(2e-3));

  // disjoint supports vanish
  const Eigen::VectorXcd g3 = bandlimited_spectrum(3.5, 4.0, omega);
  CHECK(std::abs(cross_admissibility(omega, g1, g3)) == doctest::Approx(0.0));

  // a two-sided grid with an even window averages to the one-sided value
  const Eigen::VectorXd sym = linear_grid(-4.0, 4.0, 32001);
  Eigen::VectorXcd even = bandlimited_spectrum(1.0, 2.0, sym);
  for (Eigen::Index i = 0; i < sym.size(); ++i)
    if (sym[i] <= -1.0 && sym[i] >= -2.0) even[i] = 1.0;
  CHECK(cross_admissibility(sym, even, even).real() ==
        doctest::Approx(std::log(2.0)).epsilon(2e-3));
}

TEST_CASE("mexican hat spectrum matches the closed form constant") {
  // one-sided integral of |ghat|^2 / w for the mexican hat equals pi sigma^2
  const double sigma = 3.0;
  const Eigen::VectorXd omega = linear_grid(0.0, 1.5 / sigma, 20001);
  const Eigen::VectorXd spec = mexican_hat_spectrum(omega, sigma);
  const double c = admissibility(omega, spec.cast<complex<double>>());
  CHECK(c == doctest::Approx(std::numbers::pi * sigma * sigma).epsilon(1e-6));
}

TEST_CASE("wavelet frame tightness at desk scale") {
  WaveletParams p;
  p.samples = 32;
  p.translations = 32;
  p.scales = 32;
  const WaveletSystem sys = wavelet_frame(p);
  CHECK(sys.frame.atom_count() == 32 * 32);
  CHECK(sys.max_deviation < 0.1);
  CHECK(sys.tight_constant ==
        doctest::Approx(sys.admissibility_constant).epsilon(0.1));

  // coarser grids deviate more
  WaveletParams coarse = p;
  coarse.scales = 8;
  coarse.translations = 8;
  CHECK(wavelet_frame(coarse).max_deviation > sys.max_deviation);

  // a single scale cannot be tight
  WaveletParams single = p;
  single.scales = 1;
  single.scale_min = single.scale_max = 1.0;
  CHECK(wavelet_frame(single).max_deviation > 0.5);

  // mirrored scales duplicate the columns of an even window: same constant
  WaveletParams mirrored = p;
  mirrored.mirror_scales = true;
  const WaveletSystem msys = wavelet_frame(mirrored);
  CHECK(msys.frame.atom_count() == 2 * 32 * 32);
  CHECK(msys.tight_constant == doctest::Approx(2.0 * sys.tight_constant).epsilon(1e-12));

  CHECK_THROWS_AS(wavelet_frame(WaveletParams{.samples = 1}), std::invalid_argument);
  CHECK_THROWS_AS(wavelet_frame(WaveletParams{.sigma = -1.0}), std::invalid_argument);
  CHECK_THROWS_AS(wavelet_frame(WaveletParams{.scale_min = 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(wavelet_frame(WaveletParams{.scales = 0}), std::invalid_argument);
}

TEST_CASE("stft localization operators") {
  const Eigen::Index n = 3;
  Rng rng(54);
  Eigen::VectorXcd phi1 = rng.complex_vector(n);
  Eigen::VectorXcd phi2 = rng.complex_vector(n);
  phi1 /= phi1.norm();
  phi2 /= phi2.norm();
  const GaborSystem s1 = gabor_frame(phi1);
  const GaborSystem s2 = gabor_frame(phi2);
  const ProductMeasureSpace grid = product(s1.frame.space(), s2.frame.space());

  // unit symbol with Parseval scaling gives the identity
  GaborSystem p1 = s1;
  GaborSystem p2 = s2;
  p1.frame = with_weights_scaled(p1.frame, 1.0 / static_cast<double>(n));
  p2.frame = with_weights_scaled(p2.frame, 1.0 / static_cast<double>(n));
  const ProductMeasureSpace pgrid = product(p1.frame.space(), p2.frame.space());
  const Eigen::MatrixXcd id =
      localize_stft(constant_symbol(pgrid.joint(), 1.0), p1, p2, p1, p2);
  CHECK(id.isApprox(Eigen::MatrixXcd::Identity(n * n, n * n), 1e-10));

  // indicator of a phase-space rectangle: Hermitian, positive, bounded spectrum
  Eigen::VectorXcd mask = Eigen::VectorXcd::Zero(grid.joint().atom_count());
  for (Eigen::Index p = 0; p < grid.joint().atom_count(); ++p)
    if (grid.joint().points()(0, p) <= 1 && grid.joint().points()(2, p) <= 1) mask[p] = 1.0;
  const Eigen::MatrixXcd loc = localize_stft(Symbol(grid.joint(), mask), s1, s2, s1, s2);
  CHECK(loc.isApprox(Eigen::MatrixXcd(loc.adjoint()), 1e-12));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(loc);
  CHECK(eig.eigenvalues().minCoeff() >= -1e-10 * eig.eigenvalues().maxCoeff());
  CHECK(eig.eigenvalues().maxCoeff() <=
        static_cast<double>(n * n) * (1.0 + 1e-10));  // ||m||_inf N^2 ||phi1||^2 ||phi2||^2

  // Schatten estimate holds for the tensor system
  const TensorFrame tf = tensor_frame(s1.frame, s2.frame);
  const Symbol m(grid.joint(), rng.complex_vector(grid.joint().atom_count()));
  const SchattenReport sp = schatten_bound(m, tf.flat, tf.flat, 2.0);
  CHECK(sp.norm <= *sp.bound * (1.0 + 1e-9));

  // zero symbol gives the zero operator
  CHECK(localize_stft(constant_symbol(grid.joint(), 0.0), s1, s2, s1, s2).isZero());
}

TEST_CASE("wavelet localization operators") {
  WaveletParams p;
  p.samples = 12;
  p.translations = 12;
  p.scales = 12;
  const WaveletSystem w1 = wavelet_frame(p);
  const WaveletSystem w2 = wavelet_frame(p);
  const ProductMeasureSpace grid = product(w1.frame.space(), w2.frame.space());

  // unit symbol approximates c1 c2 I within the combined tightness deviation
  const Eigen::MatrixXcd op =
      localize_wavelet(constant_symbol(grid.joint(), 1.0), w1, w2, w1, w2);
  const double scale = w1.tight_constant * w2.tight_constant;
  const double budget =
      w1.max_deviation + w2.max_deviation + w1.max_deviation * w2.max_deviation;
  const Eigen::Index dim = p.samples * p.samples;
  CHECK((op / scale - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff() <=
        budget * (1.0 + 1e-9));

  // indicator of a scale band: positive operator whose trace is the weighted
  // squared-column mass of the band
  Eigen::VectorXcd band = Eigen::VectorXcd::Zero(grid.joint().atom_count());
  const TensorFrame tf = tensor_frame(w1.frame, w2.frame);
  double expected_trace = 0.0;
  for (Eigen::Index q = 0; q < grid.joint().atom_count(); ++q) {
    if (grid.joint().points()(1, q) <= 1.0 && grid.joint().points()(3, q) <= 1.0) {
      band[q] = 1.0;
      expected_trace += grid.joint().weights()[q] * tf.flat.column(q).squaredNorm();
    }
  }
  const Eigen::MatrixXcd banded = localize_wavelet(Symbol(grid.joint(), band), w1, w2, w1, w2);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(banded);
  CHECK(eig.eigenvalues().minCoeff() >= -1e-10 * eig.eigenvalues().maxCoeff());
  CHECK(trace(banded).real() == doctest::Approx(expected_trace).epsilon(1e-10));

  CHECK(localize_wavelet(constant_symbol(grid.joint(), 0.0), w1, w2, w1, w2).isZero());
}

TEST_CASE("mixed localization operators") {
  Rng rng(55);
  const Eigen::Index n = 4;
  Eigen::VectorXcd phi = rng.complex_vector(n);
  phi /= phi.norm();
  const GaborSystem gab = gabor_frame(phi);
  WaveletParams p;
  p.samples = 8;
  p.translations = 8;
  p.scales = 12;
  const WaveletSystem wav = wavelet_frame(p);
  const ProductMeasureSpace grid = product(gab.frame.space(), wav.frame.space());

  // unit symbol: (N ||phi||^2) c_psi I within the wavelet deviation
  const Eigen::MatrixXcd op = localize_mixed(constant_symbol(grid.joint(), 1.0), gab, wav);
  const double scale = static_cast<double>(n) * wav.tight_constant;
  const Eigen::Index dim = n * p.samples;
  CHECK((op / scale - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff() <=
        wav.max_deviation * (1.0 + 1e-6) + 1e-10);

  // separable symbol: Kronecker product of the component multipliers
  const Symbol m1(gab.frame.space(), rng.complex_vector(gab.frame.atom_count()));
  const Symbol m2(wav.frame.space(), rng.complex_vector(wav.frame.atom_count()));
  const Eigen::MatrixXcd sep = localize_mixed(tensor_symbol(m1, m2), gab, wav);
  const Eigen::MatrixXcd expected = kron_op(multiplier(m1, gab.frame, gab.frame),
                                            multiplier(m2, wav.frame, wav.frame));
  CHECK(sep.isApprox(expected, 1e-12));

  CHECK(localize_mixed(constant_symbol(grid.joint(), 0.0), gab, wav).isZero());
}

TEST_CASE("window presets") {
  CHECK(make_window("delta", 4)(0) == complex<double>{1, 0});
  CHECK(make_window("gauss", 16).norm() == doctest::Approx(1.0));
  CHECK(make_window("mexican-hat", 16).norm() == doctest::Approx(1.0));
  const Eigen::VectorXcd band = make_window("bandlimited(1,3)", 8);
  CHECK(band.norm() == doctest::Approx(1.0));
  CHECK_THROWS_AS(make_window("bandlimited(5,2)", 8), std::invalid_argument);
  CHECK_THROWS_AS(make_window("bandlimited(0,8)", 8), std::invalid_argument);
  CHECK_THROWS_AS(make_window("nope", 8), std::invalid_argument);
}
