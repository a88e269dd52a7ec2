#include "ctframes/localization.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "ctframes/tensor.hpp"

namespace ctf {

using std::complex;
using std::numbers::pi;

Eigen::VectorXcd translate(const Eigen::VectorXcd& g, Eigen::Index k) {
  const Eigen::Index n = g.size();
  Eigen::VectorXcd out(n);
  for (Eigen::Index t = 0; t < n; ++t) out[t] = g[((t - k) % n + n) % n];
  return out;
}

Eigen::VectorXcd modulate(const Eigen::VectorXcd& g, Eigen::Index l) {
  const Eigen::Index n = g.size();
  Eigen::VectorXcd out(n);
  for (Eigen::Index t = 0; t < n; ++t) {
    const double phase = 2.0 * pi * static_cast<double>(l) * static_cast<double>(t) /
                         static_cast<double>(n);
    out[t] = std::polar(1.0, phase) * g[t];
  }
  return out;
}

Eigen::VectorXcd time_frequency_shift(const Eigen::VectorXcd& g, Eigen::Index k, Eigen::Index l) {
  return modulate(translate(g, k), l);
}

GaborSystem gabor_frame(const Eigen::VectorXcd& window) {
  const Eigen::Index n = window.size();
  if (n < 1) throw std::invalid_argument("Gabor window must be nonempty");
  if (window.norm() == 0.0) throw std::invalid_argument("Gabor window must be nonzero");

  Eigen::MatrixXd coords(2, n * n);
  Eigen::VectorXd weights = Eigen::VectorXd::Ones(n * n);
  Eigen::MatrixXcd columns(n, n * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::VectorXcd shifted = translate(window, k);
    for (Eigen::Index l = 0; l < n; ++l) {
      const Eigen::Index p = k * n + l;
      coords(0, p) = static_cast<double>(k);
      coords(1, p) = static_cast<double>(l);
      columns.col(p) = modulate(shifted, l);
    }
  }
  MeasureSpace space(std::move(coords), std::move(weights));
  return GaborSystem{n, window, Frame(std::move(space), std::move(columns))};
}

CoefficientFunction stft(const Eigen::VectorXcd& f, const Eigen::VectorXcd& g) {
  const Eigen::Index n = g.size();
  if (f.size() != n) throw std::invalid_argument("stft: signal/window length mismatch");
  if (n < 1 || g.norm() == 0.0) throw std::invalid_argument("stft: window must be nonzero");
  // direct evaluation of <f, pi(k,l) g>; kept independent of the Frame path
  Eigen::MatrixXd coords(2, n * n);
  Eigen::VectorXcd values(n * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::VectorXcd shifted = translate(g, k);
    for (Eigen::Index l = 0; l < n; ++l) {
      complex<double> acc{0.0, 0.0};
      for (Eigen::Index t = 0; t < n; ++t) {
        const double phase = -2.0 * pi * static_cast<double>(l) * static_cast<double>(t) /
                             static_cast<double>(n);
        acc += f[t] * std::conj(shifted[t]) * std::polar(1.0, phase);
      }
      const Eigen::Index p = k * n + l;
      values[p] = acc;
      coords(0, p) = static_cast<double>(k);
      coords(1, p) = static_cast<double>(l);
    }
  }
  return {MeasureSpace(std::move(coords), Eigen::VectorXd::Ones(n * n)), std::move(values)};
}

Eigen::MatrixXd spectrogram(const Eigen::VectorXcd& f, const Eigen::VectorXcd& g) {
  const CoefficientFunction c = stft(f, g);
  const Eigen::Index n = g.size();
  Eigen::MatrixXd grid(n, n);
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index l = 0; l < n; ++l) grid(k, l) = std::norm(c.values[k * n + l]);
  return grid;
}

namespace {

void check_sorted(const Eigen::VectorXd& omega) {
  for (Eigen::Index i = 1; i < omega.size(); ++i)
    if (!(omega[i] > omega[i - 1]))
      throw std::invalid_argument("frequency grid must be strictly increasing");
}

void check_zero_mass(const Eigen::VectorXd& omega, const Eigen::VectorXcd& ghat) {
  const double total = ghat.squaredNorm();
  for (Eigen::Index i = 0; i < omega.size(); ++i) {
    if (omega[i] == 0.0 && std::norm(ghat[i]) >= 1e-8 * total)
      throw std::domain_error("window carries zero-frequency mass; admissibility integral diverges");
  }
}

// trapezoid of samples y over grid x
double trapezoid(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  double acc = 0.0;
  for (Eigen::Index i = 1; i < x.size(); ++i)
    acc += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return acc;
}

complex<double> trapezoid(const Eigen::VectorXd& x, const Eigen::VectorXcd& y) {
  complex<double> acc{0.0, 0.0};
  for (Eigen::Index i = 1; i < x.size(); ++i)
    acc += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return acc;
}

struct DirectionalIntegral {
  complex<double> value{0.0, 0.0};
  double mass = 0.0;
};

// int_0^inf conj(g1(s u)) g2(s u) ds / s over one direction u = +1 or -1
DirectionalIntegral directional_cross(const Eigen::VectorXd& omega, const Eigen::VectorXcd& g1,
                                      const Eigen::VectorXcd& g2, int direction) {
  std::vector<Eigen::Index> idx;
  for (Eigen::Index i = 0; i < omega.size(); ++i)
    if ((direction > 0 && omega[i] > 0.0) || (direction < 0 && omega[i] < 0.0)) idx.push_back(i);
  if (direction < 0) std::reverse(idx.begin(), idx.end());  // ascending s = -omega
  if (idx.size() < 2) return {};

  Eigen::VectorXd s(idx.size());
  Eigen::VectorXcd y(idx.size());
  Eigen::VectorXd a(idx.size());
  for (std::size_t q = 0; q < idx.size(); ++q) {
    const Eigen::Index i = idx[q];
    s[static_cast<Eigen::Index>(q)] = std::abs(omega[i]);
    y[static_cast<Eigen::Index>(q)] = std::conj(g1[i]) * g2[i] / std::abs(omega[i]);
    a[static_cast<Eigen::Index>(q)] = std::abs(g1[i]) * std::abs(g2[i]) / std::abs(omega[i]);
  }
  return {trapezoid(s, y), trapezoid(s, a)};
}

}  // namespace

double admissibility(const Eigen::VectorXd& omega, const Eigen::VectorXcd& ghat) {
  if (omega.size() != ghat.size())
    throw std::invalid_argument("frequency grid and spectrum differ in length");
  if (omega.size() < 2) throw std::invalid_argument("frequency grid needs at least two points");
  check_sorted(omega);
  check_zero_mass(omega, ghat);

  // drop any exact zero bin, integrate |ghat|^2 / |omega| over the rest
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < omega.size(); ++i)
    if (omega[i] != 0.0) keep.push_back(i);
  Eigen::VectorXd x(keep.size());
  Eigen::VectorXd y(keep.size());
  for (std::size_t q = 0; q < keep.size(); ++q) {
    x[static_cast<Eigen::Index>(q)] = omega[keep[q]];
    y[static_cast<Eigen::Index>(q)] = std::norm(ghat[keep[q]]) / std::abs(omega[keep[q]]);
  }
  const double value = trapezoid(x, y);
  if (!(value > 0.0) || !std::isfinite(value))
    throw std::domain_error("window is not admissible: integral is zero or diverges");
  return value;
}

std::complex<double> cross_admissibility(const Eigen::VectorXd& omega,
                                         const Eigen::VectorXcd& g1hat,
                                         const Eigen::VectorXcd& g2hat) {
  if (omega.size() != g1hat.size() || omega.size() != g2hat.size())
    throw std::invalid_argument("frequency grid and spectra differ in length");
  check_sorted(omega);
  check_zero_mass(omega, g1hat);
  check_zero_mass(omega, g2hat);

  const DirectionalIntegral plus = directional_cross(omega, g1hat, g2hat, +1);
  const DirectionalIntegral minus = directional_cross(omega, g1hat, g2hat, -1);
  // average over the directions that carry joint spectral mass; a direction
  // with no mass (e.g. a one-sided grid) does not dilute the constant
  const double scale = plus.mass + minus.mass;
  if (scale <= 0.0) return {0.0, 0.0};
  complex<double> acc{0.0, 0.0};
  int used = 0;
  if (plus.mass > 1e-12 * scale) {
    acc += plus.value;
    ++used;
  }
  if (minus.mass > 1e-12 * scale) {
    acc += minus.value;
    ++used;
  }
  return used > 0 ? acc / static_cast<double>(used) : complex<double>{0.0, 0.0};
}

double mexican_hat(double t, double sigma) {
  const double u = t / sigma;
  return (1.0 - u * u) * std::exp(-0.5 * u * u);
}

Eigen::VectorXd mexican_hat_spectrum(const Eigen::VectorXd& omega, double sigma) {
  // Fourier transform with the e^{-2 pi i w t} convention:
  // sqrt(2 pi) sigma^3 (2 pi w)^2 exp(-2 pi^2 sigma^2 w^2)
  Eigen::VectorXd out(omega.size());
  for (Eigen::Index i = 0; i < omega.size(); ++i) {
    const double w = 2.0 * pi * omega[i];
    out[i] = std::sqrt(2.0 * pi) * sigma * sigma * sigma * w * w *
             std::exp(-0.5 * sigma * sigma * w * w);
  }
  return out;
}

namespace {

double wavelet_admissibility_constant(double sigma) {
  // one-sided quadrature of |ghat|^2 / w for the mexican hat on a fine grid
  const Eigen::Index q = 4001;
  const double wmax = 1.5 / sigma;
  Eigen::VectorXd omega(q);
  for (Eigen::Index i = 0; i < q; ++i)
    omega[i] = wmax * static_cast<double>(i) / static_cast<double>(q - 1);
  const Eigen::VectorXd spec = mexican_hat_spectrum(omega, sigma);
  return cross_admissibility(omega, spec.cast<complex<double>>(), spec.cast<complex<double>>())
      .real();
}

}  // namespace

WaveletSystem wavelet_frame(const WaveletParams& params) {
  const Eigen::Index n = params.samples;
  const Eigen::Index j_count = params.scales;
  const Eigen::Index m_count = params.translations;
  if (n < 2) throw std::invalid_argument("wavelet system needs at least two samples");
  if (!(params.dt > 0.0) || !(params.sigma > 0.0))
    throw std::invalid_argument("sample spacing and window width must be positive");
  if (!(params.scale_min > 0.0) || !(params.scale_max >= params.scale_min))
    throw std::invalid_argument("scale range must satisfy 0 < scale_min <= scale_max");
  if (j_count < 1 || m_count < 1)
    throw std::invalid_argument("degenerate scale or translation grid");

  const double length = static_cast<double>(n) * params.dt;
  const double db = length / static_cast<double>(m_count);
  const double dlna = j_count > 1
                          ? std::log(params.scale_max / params.scale_min) /
                                static_cast<double>(j_count - 1)
                          : 1.0;

  Eigen::VectorXd scale_grid(j_count);
  for (Eigen::Index j = 0; j < j_count; ++j)
    scale_grid[j] = params.scale_min * std::exp(dlna * static_cast<double>(j));

  std::vector<double> signed_scales(scale_grid.data(), scale_grid.data() + j_count);
  if (params.mirror_scales)
    for (Eigen::Index j = 0; j < j_count; ++j) signed_scales.push_back(-scale_grid[j]);

  const auto s_count = static_cast<Eigen::Index>(signed_scales.size());
  const Eigen::Index atoms = m_count * s_count;
  const auto replicas =
      static_cast<Eigen::Index>(std::ceil(6.0 * params.sigma * params.scale_max / length)) + 1;

  Eigen::MatrixXd coords(2, atoms);
  Eigen::VectorXd weights(atoms);
  Eigen::MatrixXcd columns(n, atoms);
  Eigen::VectorXd col(n);
  for (Eigen::Index m = 0; m < m_count; ++m) {
    const double b = static_cast<double>(m) * db;
    for (Eigen::Index j = 0; j < s_count; ++j) {
      const double a = signed_scales[j];
      const double amp = std::sqrt(params.dt / std::abs(a));
      col.setZero();
      for (Eigen::Index r = -replicas; r <= replicas; ++r) {
        for (Eigen::Index t = 0; t < n; ++t) {
          const double arg =
              (static_cast<double>(t) * params.dt - b + static_cast<double>(r) * length) / a;
          col[t] += mexican_hat(arg, params.sigma);
        }
      }
      const Eigen::Index p = m * s_count + j;
      columns.col(p) = (amp * col).cast<complex<double>>();
      coords(0, p) = b;
      coords(1, p) = a;
      weights[p] = db * dlna / std::abs(a);
    }
  }

  WaveletSystem sys{params, scale_grid,
                    Frame(MeasureSpace(std::move(coords), std::move(weights)), std::move(columns)),
                    0.0, 0.0, 0.0};
  const Eigen::MatrixXcd s = frame_operator(sys.frame);
  sys.tight_constant = s.trace().real() / static_cast<double>(n);
  sys.max_deviation =
      (s / sys.tight_constant - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  sys.admissibility_constant = wavelet_admissibility_constant(params.sigma);
  return sys;
}

Eigen::MatrixXcd localize_stft(const Symbol& m, const GaborSystem& phi1, const GaborSystem& phi2,
                               const GaborSystem& psi1, const GaborSystem& psi2) {
  if (phi1.n != psi1.n || phi2.n != psi2.n)
    throw std::invalid_argument("analysis/synthesis Gabor systems must share signal lengths");
  const TensorFrame f = tensor_frame(phi1.frame, phi2.frame);
  const TensorFrame g = tensor_frame(psi1.frame, psi2.frame);
  return multiplier(m, f.flat, g.flat);
}

Eigen::MatrixXcd localize_wavelet(const Symbol& m, const WaveletSystem& phi1,
                                  const WaveletSystem& phi2, const WaveletSystem& psi1,
                                  const WaveletSystem& psi2) {
  const TensorFrame f = tensor_frame(phi1.frame, phi2.frame);
  const TensorFrame g = tensor_frame(psi1.frame, psi2.frame);
  return multiplier(m, f.flat, g.flat);
}

Eigen::MatrixXcd localize_mixed(const Symbol& m, const GaborSystem& phi,
                                const WaveletSystem& psi) {
  const TensorFrame f = tensor_frame(phi.frame, psi.frame);
  return multiplier(m, f.flat, f.flat);
}

Eigen::VectorXcd make_window(const std::string& preset, Eigen::Index n) {
  if (n < 1) throw std::invalid_argument("window length must be positive");
  if (preset == "delta") {
    Eigen::VectorXcd g = Eigen::VectorXcd::Zero(n);
    g[0] = 1.0;
    return g;
  }
  if (preset == "gauss" || preset == "mexican-hat") {
    const double sigma = static_cast<double>(n) / 8.0;
    const double center = static_cast<double>(n) / 2.0;
    Eigen::VectorXcd g(n);
    for (Eigen::Index t = 0; t < n; ++t) {
      const double u = (static_cast<double>(t) - center) / sigma;
      g[t] = preset == "gauss" ? std::exp(-0.5 * u * u) : mexican_hat(u, 1.0);
    }
    const double norm = g.norm();
    if (norm == 0.0) throw std::invalid_argument("degenerate window preset");
    return g / norm;
  }
  if (preset.rfind("bandlimited(", 0) == 0 && preset.back() == ')') {
    const std::string body = preset.substr(12, preset.size() - 13);
    const auto comma = body.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("bandlimited preset needs two bin arguments");
    const long lo = std::stol(body.substr(0, comma));
    const long hi = std::stol(body.substr(comma + 1));
    if (lo < 0 || hi < lo || hi >= n)
      throw std::invalid_argument("bandlimited bins out of range");
    // indicator of DFT bins [lo, hi]; inverse transform, unit norm
    Eigen::VectorXcd g = Eigen::VectorXcd::Zero(n);
    for (Eigen::Index t = 0; t < n; ++t)
      for (long k = lo; k <= hi; ++k)
        g[t] += std::polar(1.0, 2.0 * pi * static_cast<double>(k) * static_cast<double>(t) /
                                    static_cast<double>(n));
    return g / g.norm();
  }
  throw std::invalid_argument("unknown window preset: " + preset);
}

Eigen::VectorXcd bandlimited_spectrum(double lo, double hi, const Eigen::VectorXd& omega) {
  if (!(hi > lo)) throw std::invalid_argument("bandlimited spectrum needs lo < hi");
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(omega.size());
  for (Eigen::Index i = 0; i < omega.size(); ++i)
    if (omega[i] >= lo && omega[i] <= hi) out[i] = 1.0;
  return out;
}

}  // namespace ctf
