// The built-in verification battery: each function runs one family of checks
// over seeded random instances and returns the per-check results. The CLI
// full-suite experiment and the acceptance harness both run these.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <vector>

#include "ctframes/experiments.hpp"
#include "ctframes/frame.hpp"
#include "ctframes/localization.hpp"
#include "ctframes/multiplier.hpp"
#include "ctframes/quantum.hpp"
#include "ctframes/rng.hpp"
#include "ctframes/tensor.hpp"

namespace ctf {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Check bool_check(const std::string& name, bool ok) {
  return make_check(name, ok ? 1.0 : 0.0, 1.0, 0.0);
}

Check residual_check(const std::string& name, double residual, double tolerance) {
  return make_check(name, residual, 0.0, tolerance);
}

double rel_err(double computed, double reference) {
  return std::abs(computed - reference) / std::max(std::abs(reference), 1e-300);
}

double max_abs_rel(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  const double scale = std::max(b.cwiseAbs().maxCoeff(), 1e-300);
  return (a - b).cwiseAbs().maxCoeff() / scale;
}

template <typename Fn>
void for_each_tensor_instance(std::uint64_t seed, int count, Fn&& fn) {
  Rng rng(seed);
  for (int i = 0; i < count; ++i) {
    const Eigen::Index n1 = rng.index(1, 4);
    const Eigen::Index n2 = rng.index(1, 4);
    const Eigen::Index k1 = rng.index(n1, 8);
    const Eigen::Index k2 = rng.index(n2, 8);
    fn(random_frame(rng, n1, k1), random_frame(rng, n2, k2));
  }
}

}  // namespace

std::vector<Check> checks_tensor_consistency(std::uint64_t seed) {
  const auto start = Clock::now();
  double worst_lower = 0.0;
  double worst_upper = 0.0;
  for_each_tensor_instance(seed, 100, [&](const Frame& f1, const Frame& f2) {
    const FrameBounds b1 = frame_bounds(f1);
    const FrameBounds b2 = frame_bounds(f2);
    const FrameBounds b = frame_bounds(tensor_frame(f1, f2).flat);
    worst_lower = std::max(worst_lower, rel_err(b.lower, b1.lower * b2.lower));
    worst_upper = std::max(worst_upper, rel_err(b.upper, b1.upper * b2.upper));
  });
  return {residual_check("tensor-bounds.lower-product", worst_lower, 1e-10),
          residual_check("tensor-bounds.upper-product", worst_upper, 1e-10),
          residual_check("tensor-bounds.runtime-seconds", seconds_since(start), 10.0)};
}

std::vector<Check> checks_frame_operator_factorization(std::uint64_t seed) {
  double worst = 0.0;
  for_each_tensor_instance(seed, 100, [&](const Frame& f1, const Frame& f2) {
    const Eigen::MatrixXcd s = frame_operator(tensor_frame(f1, f2).flat);
    const Eigen::MatrixXcd product = kron_op(frame_operator(f1), frame_operator(f2));
    worst = std::max(worst, max_abs_rel(s, product));
  });
  return {residual_check("frame-operator.kron-factorization", worst, 1e-12)};
}

std::vector<Check> checks_bound_constants(std::uint64_t seed) {
  double worst_lower = 0.0;
  double worst_upper = 0.0;
  for_each_tensor_instance(seed, 100, [&](const Frame& f1, const Frame& f2) {
    const FrameBounds joint = frame_bounds(tensor_frame(f1, f2).flat);
    const auto [c2, d2] = bound_constants(f2);
    const FrameBounds b1 = frame_bounds(f1);
    worst_lower = std::max(worst_lower, rel_err(joint.lower / c2, b1.lower));
    worst_upper = std::max(worst_upper, rel_err(joint.upper / d2, b1.upper));
  });
  return {residual_check("bound-constants.lower-quotient", worst_lower, 1e-10),
          residual_check("bound-constants.upper-quotient", worst_upper, 1e-10)};
}

std::vector<Check> checks_dual_classification(std::uint64_t seed) {
  const auto start = Clock::now();
  Rng rng(seed);
  double worst_defect = 0.0;
  int dimension_mismatches = 0;
  int span_mismatches = 0;

  for (Eigen::Index n = 1; n <= 3; ++n) {
    for (Eigen::Index k = n + 1; k <= 5; ++k) {
      const Frame f = random_frame(rng, n, k);
      const Eigen::VectorXd& w = f.space().weights();
      const Frame dual = canonical_dual(f);

      // brute-force linear solve of sum_k w_k G_k F_k^* = I for vec(G):
      // equation (r, c) row, unknown G(r, k) at column k*n + r
      Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n * n, n * k);
      for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c)
          for (Eigen::Index kk = 0; kk < k; ++kk)
            a(r + c * n, kk * n + r) = w[kk] * std::conj(f.vectors()(c, kk));
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
      Eigen::Index rank = 0;
      for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()[i] > 1e-10 * svd.singularValues()[0]) ++rank;
      const Eigen::Index null_dim = n * k - rank;
      if (null_dim != dual_space_dimension(f) || null_dim != n * (k - n))
        ++dimension_mismatches;

      // the classification formula over a basis of perturbations must give
      // duals whose differences from the canonical dual span the null space
      Eigen::MatrixXcd differences(n * k, n * k);
      Eigen::Index col = 0;
      for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index kk = 0; kk < k; ++kk, ++col) {
          Eigen::MatrixXcd basis = Eigen::MatrixXcd::Zero(n, k);
          basis(r, kk) = 1.0;
          const Frame g = dual_from_bessel(f, Frame(f.space(), basis));
          worst_defect = std::max(worst_defect, dual_pair_defect(f, g));
          const Eigen::MatrixXcd diff = g.vectors() - dual.vectors();
          differences.col(col) = Eigen::Map<const Eigen::VectorXcd>(diff.data(), diff.size());
        }
      }
      Eigen::JacobiSVD<Eigen::MatrixXcd> span_svd(differences);
      Eigen::Index span_rank = 0;
      const double top = span_svd.singularValues().size() ? span_svd.singularValues()[0] : 0.0;
      for (Eigen::Index i = 0; i < span_svd.singularValues().size(); ++i)
        if (top > 0.0 && span_svd.singularValues()[i] > 1e-8 * top) ++span_rank;
      if (span_rank != n * (k - n)) ++span_mismatches;
    }
  }
  return {residual_check("dual-class.duality-defect", worst_defect, 1e-10),
          residual_check("dual-class.dimension-mismatches", dimension_mismatches, 0.0),
          residual_check("dual-class.span-mismatches", span_mismatches, 0.0),
          residual_check("dual-class.runtime-seconds", seconds_since(start), 30.0)};
}

std::vector<Check> checks_nonsimple_dual() {
  Eigen::MatrixXcd columns(2, 3);
  columns << 1, 0, 1, 0, 1, 0;
  Eigen::VectorXd points(3);
  points << 0, 1, 2;
  const Frame f(make_space(points, Eigen::VectorXd::Ones(3)), columns);
  const TensorFrame tf = tensor_frame(f, f);
  const TensorFrame g = nonsimple_dual(tf);

  Eigen::Index max_rank = 0;
  for (Eigen::Index k = 0; k < g.flat.atom_count(); ++k)
    max_rank = std::max(
        max_rank, simple_rank(TensorVector{g.dim_left, g.dim_right, g.flat.column(k)}));
  return {residual_check("nonsimple-dual.duality-defect", dual_pair_defect(tf.flat, g.flat), 1e-10),
          bool_check("nonsimple-dual.has-rank-2-column", max_rank >= 2)};
}

std::vector<Check> checks_multiplier_bounds(std::uint64_t seed) {
  const auto start = Clock::now();
  Rng rng(seed);
  double worst_op_slack = -1.0;   // (norm - bound) / bound, negative when satisfied
  double worst_sp_slack = -1.0;
  const std::vector<double> p_values{1.0, 1.5, 2.0, 3.0};
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index n = rng.index(1, 6);
    const Eigen::Index k = rng.index(n, 12);
    const Frame f = random_frame(rng, n, k);
    const Frame g(f.space(), rng.complex_matrix(n, k));
    const Symbol m(f.space(), rng.complex_vector(k));

    const NormBoundReport nb = norm_bound_check(m, f, g);
    worst_op_slack = std::max(worst_op_slack, (nb.opnorm - nb.bound) / nb.bound);
    const double p = p_values[static_cast<std::size_t>(trial % 4)];
    const SchattenReport sp = schatten_bound(m, f, g, p);
    worst_sp_slack = std::max(worst_sp_slack, (sp.norm - *sp.bound) / *sp.bound);
  }
  return {residual_check("multiplier-bounds.operator-norm-slack", worst_op_slack, 1e-9),
          residual_check("multiplier-bounds.schatten-slack", worst_sp_slack, 1e-9),
          residual_check("multiplier-bounds.runtime-seconds", seconds_since(start), 60.0)};
}

std::vector<Check> checks_adjoint_identity(std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index n = rng.index(1, 5);
    const Eigen::Index k = rng.index(1, 9);
    const MeasureSpace space = random_space(rng, k);
    const Frame f(space, rng.complex_matrix(n, k));
    const Frame g(space, rng.complex_matrix(n, k));
    const Symbol m(space, rng.complex_vector(k));
    const Symbol m_conj(space, m.values().conjugate());
    worst = std::max(worst, max_abs_rel(multiplier(m, f, g).adjoint(), multiplier(m_conj, g, f)));
  }
  return {residual_check("adjoint-identity.max-entry", worst, 1e-12)};
}

std::vector<Check> checks_partial_trace(std::uint64_t seed) {
  Rng rng(seed);
  double worst_product = 0.0;
  double worst_trace = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index n1 = rng.index(2, 4);
    const Eigen::Index n2 = rng.index(2, 4);
    const Eigen::MatrixXcd a = rng.complex_matrix(n1, n1);
    const Eigen::MatrixXcd b = rng.complex_matrix(n2, n2);
    const Eigen::MatrixXcd ab = kron_op(a, b);
    worst_product = std::max(
        worst_product, max_abs_rel(partial_trace(ab, n1, n2, Side::Right), a * trace(b)));
    worst_product = std::max(
        worst_product, max_abs_rel(partial_trace(ab, n1, n2, Side::Left), b * trace(a)));

    const Eigen::MatrixXcd t = rng.complex_matrix(n1 * n2, n1 * n2);
    const std::complex<double> full = trace(t);
    worst_trace = std::max(worst_trace,
                           std::abs(trace(partial_trace(t, n1, n2, Side::Right)) - full) /
                               std::max(std::abs(full), 1.0));
    worst_trace = std::max(worst_trace,
                           std::abs(trace(partial_trace(t, n1, n2, Side::Left)) - full) /
                               std::max(std::abs(full), 1.0));
  }
  return {residual_check("partial-trace.kron-product", worst_product, 1e-12),
          residual_check("partial-trace.trace-preserved", worst_trace, 1e-12)};
}

std::vector<Check> checks_gabor_tightness(std::uint64_t seed) {
  const auto start = Clock::now();
  Rng rng(seed);
  double worst_bound = 0.0;
  for (const Eigen::Index n : {2, 4, 8, 16}) {
    for (int widx = 0; widx < 5; ++widx) {
      Eigen::VectorXcd g;
      if (widx == 0)
        g = make_window("delta", n);
      else if (widx == 1)
        g = make_window("gauss", n);
      else
        g = rng.complex_vector(n);
      const FrameBounds b = frame_bounds(gabor_frame(g).frame);
      const double tight = static_cast<double>(n) * g.squaredNorm();
      worst_bound = std::max(worst_bound, rel_err(b.lower, tight));
      worst_bound = std::max(worst_bound, rel_err(b.upper, tight));
    }
  }

  double worst_energy = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index n = 2 << (trial % 4);  // 2, 4, 8, 16
    const Eigen::VectorXcd g = rng.complex_vector(n);
    const Eigen::VectorXcd f1 = rng.complex_vector(n);
    const Eigen::VectorXcd f2 = rng.complex_vector(n);
    const CoefficientFunction v1 = stft(f1, g);
    const CoefficientFunction v2 = stft(f2, g);
    const std::complex<double> sum = v1.values.cwiseProduct(v2.values.conjugate()).sum();
    const std::complex<double> expected =
        static_cast<double>(n) * inner(f1, f2) * g.squaredNorm();
    const double scale = static_cast<double>(n) * f1.norm() * f2.norm() * g.squaredNorm();
    worst_energy = std::max(worst_energy, std::abs(sum - expected) / scale);
  }
  return {residual_check("gabor.tight-bound", worst_bound, 1e-10),
          residual_check("gabor.stft-energy-identity", worst_energy, 1e-12),
          residual_check("gabor.runtime-seconds", seconds_since(start), 30.0)};
}

std::vector<Check> checks_trace_formula(std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index n = rng.index(2, 8);
    const Eigen::VectorXcd phi = rng.complex_vector(n);
    Eigen::VectorXcd psi = rng.complex_vector(n);
    if (trial % 5 == 0) psi -= phi * (inner(psi, phi) / inner(phi, phi));  // orthogonal case
    Eigen::VectorXd points(n * n);
    for (Eigen::Index i = 0; i < n * n; ++i) points[i] = static_cast<double>(i);
    const Symbol m(make_space(points, Eigen::VectorXd::Ones(n * n)),
                   rng.complex_vector(n * n));
    const TraceFormulaResult r = trace_formula(m, phi, psi);
    worst = std::max(worst, std::abs(r.lhs - r.rhs) / std::max(1.0, std::abs(r.rhs)));
  }
  return {residual_check("trace-formula.max-deviation", worst, 1e-10)};
}

std::vector<Check> checks_density_construction(std::uint64_t seed) {
  Rng rng(seed);
  double worst_herm = 0.0;
  double worst_neg = 0.0;
  double worst_trace = 0.0;
  double worst_reduced = 0.0;
  double worst_purity = 0.0;
  for (const Eigen::Index n : {2, 4}) {
    for (int trial = 0; trial < 10; ++trial) {
      const Eigen::VectorXcd phi1 = rng.complex_vector(n);
      const Eigen::VectorXcd phi2 = rng.complex_vector(n);
      Eigen::VectorXd points(n * n);
      for (Eigen::Index i = 0; i < n * n; ++i) points[i] = static_cast<double>(i);
      const MeasureSpace grid = make_space(points, Eigen::VectorXd::Ones(n * n));
      const Symbol m1(grid, rng.positive_vector(n * n, 0.2, 1.2).cast<std::complex<double>>());
      const Symbol m2(grid, rng.positive_vector(n * n, 0.2, 1.2).cast<std::complex<double>>());

      const SeparableDensity d = separable_density(m1, m2, phi1, phi2);
      const AdmissibilityReport adm = is_admissible(d.rho.op());
      worst_herm = std::max(worst_herm, adm.hermitian_defect);
      worst_neg = std::max(worst_neg, -adm.min_eigenvalue / std::max(adm.max_eigenvalue, 1e-300));
      worst_trace = std::max(worst_trace, adm.trace_error);

      // the reduced operators must match the independently built component
      // multipliers (normalized to unit trace)
      const GaborSystem f1 = gabor_frame(phi1);
      const GaborSystem f2 = gabor_frame(phi2);
      Eigen::MatrixXcd c1 = multiplier(normalize_symbol(m1, phi1, phi1), f1.frame, f1.frame);
      Eigen::MatrixXcd c2 = multiplier(normalize_symbol(m2, phi2, phi2), f2.frame, f2.frame);
      c1 /= c1.trace().real();
      c2 /= c2.trace().real();
      worst_reduced = std::max(worst_reduced,
                               (d.reduced_left.op() - c1).cwiseAbs().maxCoeff());
      worst_reduced = std::max(worst_reduced,
                               (d.reduced_right.op() - c2).cwiseAbs().maxCoeff());
      worst_purity = std::max(worst_purity,
                              std::abs(purity(d.rho) -
                                       purity(d.reduced_left) * purity(d.reduced_right)));
    }
  }
  return {residual_check("density.hermitian-defect", worst_herm, 1e-10),
          residual_check("density.negative-eigenvalue", worst_neg, 1e-10),
          residual_check("density.trace-error", worst_trace, 1e-10),
          residual_check("density.reduced-vs-component", worst_reduced, 1e-10),
          residual_check("density.purity-factorization", worst_purity, 1e-10)};
}

std::vector<Check> checks_wavelet_tightness() {
  const auto start = Clock::now();
  // three refinements, each halving the translation and log-scale spacings,
  // ending at the reference grid where the tightness budget applies
  const Eigen::Index j_seq[4] = {4, 8, 16, 32};
  const Eigen::Index m_seq[4] = {32, 64, 128, 256};
  double devs[4] = {0, 0, 0, 0};
  WaveletParams params;
  double c_emp = 0.0;
  double c_quadrature = 0.0;
  for (int level = 0; level < 4; ++level) {
    params.scales = j_seq[level];
    params.translations = m_seq[level];
    const WaveletSystem sys = wavelet_frame(params);
    devs[level] = sys.max_deviation;
    if (level == 3) {
      c_emp = sys.tight_constant;
      c_quadrature = sys.admissibility_constant;
    }
  }
  const bool decreasing = devs[1] < devs[0] && devs[2] < devs[1] && devs[3] < devs[2];

  Eigen::VectorXd omega(16001);
  for (Eigen::Index i = 0; i < omega.size(); ++i)
    omega[i] = 4.0 * static_cast<double>(i) / static_cast<double>(omega.size() - 1);
  const double c_band = admissibility(omega, bandlimited_spectrum(1.0, 2.0, omega));

  return {residual_check("wavelet.reference-deviation", devs[3], 5e-2),
          bool_check("wavelet.refinement-strictly-decreasing", decreasing),
          make_check("wavelet.admissibility-ln2", c_band, std::log(2.0), 1e-3),
          residual_check("wavelet.empirical-vs-quadrature-constant",
                         rel_err(c_emp, c_quadrature), 5e-2),
          residual_check("wavelet.runtime-seconds", seconds_since(start), 120.0)};
}

std::vector<Check> full_suite_checks(std::uint64_t seed) {
  std::vector<Check> all;
  const auto append = [&all](std::vector<Check> more) {
    all.insert(all.end(), more.begin(), more.end());
  };
  append(checks_tensor_consistency(seed));
  append(checks_frame_operator_factorization(seed));
  append(checks_bound_constants(seed));
  append(checks_dual_classification(seed + 1));
  append(checks_nonsimple_dual());
  append(checks_multiplier_bounds(seed + 2));
  append(checks_adjoint_identity(seed + 3));
  append(checks_partial_trace(seed + 4));
  append(checks_gabor_tightness(seed + 5));
  append(checks_trace_formula(seed + 6));
  append(checks_density_construction(seed + 7));
  append(checks_wavelet_tightness());
  return all;
}

}  // namespace ctf
