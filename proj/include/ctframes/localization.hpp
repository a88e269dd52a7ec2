#ifndef CTFRAMES_LOCALIZATION_HPP
#define CTFRAMES_LOCALIZATION_HPP

#include <complex>
#include <string>
#include <Eigen/Dense>

#include "ctframes/frame.hpp"
#include "ctframes/multiplier.hpp"

namespace ctf {

/// Finite Gabor system on the cyclic group Z_N: the frame of all N^2
/// time-frequency shifts pi(k, l) g with unit atom weights. The system is
/// exactly tight with bound N ||g||^2. Atom (k, l) sits at flat index
/// k * N + l and carries coordinates (k, l).
struct GaborSystem {
  Eigen::Index n = 0;
  Eigen::VectorXcd window;
  Frame frame;
};

/// Circular shift (T_k g)[t] = g[(t - k) mod N].
Eigen::VectorXcd translate(const Eigen::VectorXcd& g, Eigen::Index k);
/// Harmonic modulation (M_l g)[t] = exp(2 pi i l t / N) g[t].
Eigen::VectorXcd modulate(const Eigen::VectorXcd& g, Eigen::Index l);
/// pi(k, l) g = M_l T_k g.
Eigen::VectorXcd time_frequency_shift(const Eigen::VectorXcd& g, Eigen::Index k, Eigen::Index l);

GaborSystem gabor_frame(const Eigen::VectorXcd& window);

/// Short-time Fourier transform: values (k, l) = <f, pi(k, l) g> on the N x N
/// grid of the Gabor system of g.
CoefficientFunction stft(const Eigen::VectorXcd& f, const Eigen::VectorXcd& g);

/// |V_g f|^2 arranged with translation index as row and modulation as column.
Eigen::MatrixXd spectrogram(const Eigen::VectorXcd& f, const Eigen::VectorXcd& g);

/// Quadrature of the admissibility integral  int |ghat(w)|^2 / |w| dw  over a
/// sorted frequency grid (trapezoid rule, any w = 0 bin dropped). Throws when
/// the window carries zero-frequency mass, |ghat(0)|^2 >= 1e-8 ||ghat||^2.
double admissibility(const Eigen::VectorXd& omega, const Eigen::VectorXcd& ghat);

/// Directional cross constant  int_0^inf conj(g1hat(s u)) g2hat(s u) ds/s,
/// averaged over the directions u = +1, -1 that carry spectral mass.
std::complex<double> cross_admissibility(const Eigen::VectorXd& omega,
                                         const Eigen::VectorXcd& g1hat,
                                         const Eigen::VectorXcd& g2hat);

struct WaveletParams {
  Eigen::Index samples = 256;       // N
  double dt = 1.0;                  // sample spacing
  double sigma = 4.5;               // mexican-hat width in the same units as dt
  double scale_min = 0.125;
  double scale_max = 8.0;
  Eigen::Index scales = 32;         // J, log-spaced inclusive of both ends
  Eigen::Index translations = 256;  // M, uniform over one period
  bool mirror_scales = false;       // also include the negated scales
};

/// Discretized continuous wavelet system on a periodized interval of length
/// N * dt. Atom (b_m, a_j) carries the Haar weight  db * dln(a) / a_j  and the
/// sampled column  sqrt(dt) a^{-1/2} g((t - b)/a)  of the periodized window.
/// The frame operator approximates c * I; the constructor measures c (trace
/// mean) and the max-entry deviation ||S/c - I||_max.
struct WaveletSystem {
  WaveletParams params;
  Eigen::VectorXd scale_grid;
  Frame frame;
  double tight_constant = 0.0;        // empirical c
  double max_deviation = 0.0;         // ||S/c - I||_max
  double admissibility_constant = 0;  // one-sided quadrature constant of the window
};

WaveletSystem wavelet_frame(const WaveletParams& params);

/// Mexican-hat profile (1 - (t/sigma)^2) exp(-t^2 / (2 sigma^2)) and the
/// modulus of its Fourier transform on a frequency grid.
double mexican_hat(double t, double sigma);
Eigen::VectorXd mexican_hat_spectrum(const Eigen::VectorXd& omega, double sigma);

/// Bilinear localization operators: multipliers over tensor products of two
/// Gabor systems, two wavelet systems, or one of each. Analysis and synthesis
/// systems must share their (per-factor) measure-space grids.
Eigen::MatrixXcd localize_stft(const Symbol& m, const GaborSystem& phi1, const GaborSystem& phi2,
                               const GaborSystem& psi1, const GaborSystem& psi2);

Eigen::MatrixXcd localize_wavelet(const Symbol& m, const WaveletSystem& phi1,
                                  const WaveletSystem& phi2, const WaveletSystem& psi1,
                                  const WaveletSystem& psi2);

Eigen::MatrixXcd localize_mixed(const Symbol& m, const GaborSystem& phi, const WaveletSystem& psi);

/// Window presets for C^N: "delta", "gauss", "mexican-hat",
/// "bandlimited(lo,hi)" (indicator of DFT bins lo..hi, symmetrized).
Eigen::VectorXcd make_window(const std::string& preset, Eigen::Index n);

/// Frequency-domain indicator of [lo, hi] sampled on a grid, for the
/// admissibility quadratures.
Eigen::VectorXcd bandlimited_spectrum(double lo, double hi, const Eigen::VectorXd& omega);

}  // namespace ctf

#endif
