#include "ctframes/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ctframes/frame.hpp"
#include "ctframes/localization.hpp"
#include "ctframes/multiplier.hpp"
#include "ctframes/quantum.hpp"
#include "ctframes/rng.hpp"
#include "ctframes/serialize.hpp"
#include "ctframes/tensor.hpp"
#include "ctframes/version.hpp"

namespace ctf {

using nlohmann::json;

Check make_check(const std::string& name, double computed, double expected, double tolerance) {
  Check c;
  c.name = name;
  c.computed = computed;
  c.expected = expected;
  c.tolerance = tolerance;
  c.pass = std::isfinite(computed) && std::abs(computed - expected) <= tolerance;
  return c;
}

bool Report::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string Report::to_json() const {
  std::ostringstream out;
  out << "{\n  \"schema\": 1,\n  \"experiment\": \"" << json_escape(experiment) << "\",\n"
      << "  \"seed\": " << seed << ",\n  \"library_version\": \"" << kVersion << "\",\n"
      << "  \"checks\": [\n";
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const Check& c = checks[i];
    out << "    {\"name\": \"" << json_escape(c.name) << "\", \"computed\": "
        << format_double(c.computed) << ", \"expected\": " << format_double(c.expected)
        << ", \"tolerance\": " << format_double(c.tolerance)
        << ", \"pass\": " << (c.pass ? "true" : "false") << "}"
        << (i + 1 < checks.size() ? ",\n" : "\n");
  }
  out << "  ],\n  \"pass\": " << (pass() ? "true" : "false") << ",\n"
      << "  \"wall_time_ms\": " << format_double(wall_time_ms) << "\n}\n";
  return out.str();
}

std::string Report::to_csv() const {
  std::ostringstream out;
  out << "name,computed,expected,tolerance,pass\n";
  for (const Check& c : checks)
    out << c.name << ',' << format_double(c.computed) << ',' << format_double(c.expected) << ','
        << format_double(c.tolerance) << ',' << (c.pass ? "true" : "false") << '\n';
  return out.str();
}

namespace {

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (const auto& item : obj.items())
    if (!allowed.count(item.key()))
      throw ConfigError("unknown key \"" + item.key() + "\" in " + where);
}

double get_number(const json& params, const std::string& key, double fallback) {
  if (!params.contains(key)) return fallback;
  if (!params.at(key).is_number()) throw ConfigError("parameter \"" + key + "\" must be a number");
  return params.at(key).get<double>();
}

Eigen::Index get_index(const json& params, const std::string& key, Eigen::Index fallback,
                       Eigen::Index lo, Eigen::Index hi) {
  if (!params.contains(key)) return fallback;
  if (!params.at(key).is_number_integer())
    throw ConfigError("parameter \"" + key + "\" must be an integer");
  const auto v = params.at(key).get<Eigen::Index>();
  if (v < lo || v > hi)
    throw ConfigError("parameter \"" + key + "\" out of range [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
  return v;
}

std::string get_string(const json& params, const std::string& key, const std::string& fallback) {
  if (!params.contains(key)) return fallback;
  if (!params.at(key).is_string()) throw ConfigError("parameter \"" + key + "\" must be a string");
  return params.at(key).get<std::string>();
}

MeasureSpace unit_grid(Eigen::Index atoms) {
  Eigen::VectorXd points(atoms);
  for (Eigen::Index i = 0; i < atoms; ++i) points[i] = static_cast<double>(i);
  return make_space(points, Eigen::VectorXd::Ones(atoms));
}

// ---- frame-bounds -------------------------------------------------------

std::vector<Check> run_frame_bounds(const json& params, std::uint64_t seed) {
  reject_unknown_keys(params, {"dim", "atoms", "trials"}, "frame-bounds parameters");
  const Eigen::Index dim = get_index(params, "dim", 3, 1, 64);
  const Eigen::Index atoms = get_index(params, "atoms", 6, dim, 512);
  const auto trials = static_cast<int>(get_index(params, "trials", 20, 1, 10000));

  Rng rng(seed);
  double worst_sandwich = 0.0;
  double worst_inverse = 0.0;
  double worst_reconstruct = 0.0;
  double worst_adjoint = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    const Frame f = random_frame(rng, dim, atoms);
    const FrameBounds b = frame_bounds(f);
    const Eigen::MatrixXcd s = frame_operator(f);
    for (int i = 0; i < 100; ++i) {
      const Eigen::VectorXcd v = rng.complex_vector(dim);
      const double q = (v.adjoint() * s * v).real()(0, 0);
      const double n2 = v.squaredNorm();
      const double scale = std::max(b.upper * n2, 1e-300);
      worst_sandwich = std::max(worst_sandwich, (b.lower * n2 - q) / scale);
      worst_sandwich = std::max(worst_sandwich, (q - b.upper * n2) / scale);
    }
    const Frame dual = canonical_dual(f);
    const FrameBounds db = frame_bounds(dual);
    worst_inverse = std::max(worst_inverse,
                             std::abs(db.lower - 1.0 / b.upper) * b.upper);
    worst_inverse = std::max(worst_inverse,
                             std::abs(db.upper - 1.0 / b.lower) * b.lower);
    const Eigen::VectorXcd v = rng.complex_vector(dim);
    worst_reconstruct = std::max(worst_reconstruct,
                                 (synthesis(dual, analysis(f, v)) - v).norm() / v.norm());
    worst_reconstruct = std::max(worst_reconstruct,
                                 (synthesis(f, analysis(dual, v)) - v).norm() / v.norm());

    const CoefficientFunction c{f.space(), rng.complex_vector(atoms)};
    const std::complex<double> lhs = inner(synthesis(f, c), v);
    const Eigen::VectorXcd a = analysis(f, v).values;
    std::complex<double> rhs{0.0, 0.0};
    for (Eigen::Index k = 0; k < atoms; ++k)
      rhs += f.space().weights()[k] * c.values[k] * std::conj(a[k]);
    worst_adjoint = std::max(worst_adjoint,
                             std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
  }
  return {make_check("frame-bounds.sandwich-violation", worst_sandwich, 0.0, 1e-12),
          make_check("frame-bounds.canonical-dual-inverse", worst_inverse, 0.0, 1e-10),
          make_check("frame-bounds.reconstruction", worst_reconstruct, 0.0, 1e-10),
          make_check("frame-bounds.adjoint-relation", worst_adjoint, 0.0, 1e-12)};
}

// ---- tensor-check -------------------------------------------------------

std::vector<Check> run_tensor_check(const json& params, std::uint64_t seed) {
  reject_unknown_keys(params, {"dims", "atoms", "trials"}, "tensor-check parameters");
  Eigen::Index n1 = 2, n2 = 3, k1 = 4, k2 = 5;
  if (params.contains("dims")) {
    const auto& d = params.at("dims");
    if (!d.is_array() || d.size() != 2) throw ConfigError("\"dims\" must be a pair");
    n1 = d.at(0).get<Eigen::Index>();
    n2 = d.at(1).get<Eigen::Index>();
  }
  if (params.contains("atoms")) {
    const auto& a = params.at("atoms");
    if (!a.is_array() || a.size() != 2) throw ConfigError("\"atoms\" must be a pair");
    k1 = a.at(0).get<Eigen::Index>();
    k2 = a.at(1).get<Eigen::Index>();
  }
  if (n1 < 1 || n2 < 1 || k1 < n1 || k2 < n2 || n1 * n2 > 256)
    throw ConfigError("tensor-check sizes out of range");
  const auto trials = static_cast<int>(get_index(params, "trials", 20, 1, 10000));

  Rng rng(seed);
  double worst_factor = 0.0;
  double worst_bounds = 0.0;
  double worst_dual = 0.0;
  double worst_analysis = 0.0;
  double worst_schmidt = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    const Frame f1 = random_frame(rng, n1, k1);
    const Frame f2 = random_frame(rng, n2, k2);
    const TensorFrame tf = tensor_frame(f1, f2);

    const Eigen::MatrixXcd s = frame_operator(tf.flat);
    const Eigen::MatrixXcd sk = kron_op(frame_operator(f1), frame_operator(f2));
    worst_factor = std::max(worst_factor, (s - sk).cwiseAbs().maxCoeff() /
                                              sk.cwiseAbs().maxCoeff());

    const FrameBounds b = frame_bounds(tf.flat);
    const FrameBounds b1 = frame_bounds(f1);
    const FrameBounds b2 = frame_bounds(f2);
    worst_bounds = std::max(worst_bounds,
                            std::abs(b.lower - b1.lower * b2.lower) / (b1.lower * b2.lower));
    worst_bounds = std::max(worst_bounds,
                            std::abs(b.upper - b1.upper * b2.upper) / (b1.upper * b2.upper));

    const TensorFrame dual_product = tensor_frame(canonical_dual(f1), canonical_dual(f2));
    const Frame dual_joint = canonical_dual(tf.flat);
    worst_dual = std::max(worst_dual,
                          (dual_joint.vectors() - dual_product.flat.vectors()).cwiseAbs().maxCoeff() /
                              dual_product.flat.vectors().cwiseAbs().maxCoeff());

    const Eigen::VectorXcd u = rng.complex_vector(n1);
    const Eigen::VectorXcd v = rng.complex_vector(n2);
    const Eigen::VectorXcd joint_coeff = analysis(tf.flat, kron_vec(u, v).entries).values;
    const Eigen::VectorXcd c1 = analysis(f1, u).values;
    const Eigen::VectorXcd c2 = analysis(f2, v).values;
    double scale = std::max(joint_coeff.cwiseAbs().maxCoeff(), 1e-300);
    for (Eigen::Index i = 0; i < k1; ++i)
      for (Eigen::Index j = 0; j < k2; ++j)
        worst_analysis = std::max(worst_analysis,
                                  std::abs(joint_coeff[i * k2 + j] - c1[i] * c2[j]) / scale);

    TensorVector x{n1, n2, rng.complex_vector(n1 * n2)};
    const SchmidtDecomposition dec = schmidt(x);
    Eigen::VectorXcd rebuilt = Eigen::VectorXcd::Zero(n1 * n2);
    for (Eigen::Index q = 0; q < dec.coefficients.size(); ++q)
      rebuilt += dec.coefficients[q] * kron_vec(dec.left.col(q), dec.right.col(q)).entries;
    worst_schmidt = std::max(worst_schmidt, (rebuilt - x.entries).norm() / x.entries.norm());
  }
  return {make_check("tensor-check.frame-operator-factorization", worst_factor, 0.0, 1e-12),
          make_check("tensor-check.bounds-multiply", worst_bounds, 0.0, 1e-10),
          make_check("tensor-check.canonical-dual-tensor", worst_dual, 0.0, 1e-10),
          make_check("tensor-check.analysis-factorization", worst_analysis, 0.0, 1e-12),
          make_check("tensor-check.schmidt-reconstruction", worst_schmidt, 0.0, 1e-12)};
}

// ---- multiplier ---------------------------------------------------------

std::vector<Check> run_multiplier(const json& params, std::uint64_t seed) {
  reject_unknown_keys(params, {"dim", "atoms", "trials", "p_values"}, "multiplier parameters");
  const Eigen::Index dim = get_index(params, "dim", 4, 1, 32);
  const Eigen::Index atoms = get_index(params, "atoms", 8, dim, 256);
  const auto trials = static_cast<int>(get_index(params, "trials", 50, 1, 10000));
  std::vector<double> p_values{1.0, 1.5, 2.0, 3.0};
  if (params.contains("p_values")) {
    if (!params.at("p_values").is_array()) throw ConfigError("\"p_values\" must be an array");
    p_values.clear();
    for (const auto& p : params.at("p_values")) {
      const double v = p.get<double>();
      if (!(v >= 1.0) || std::isinf(v)) throw ConfigError("p values must satisfy 1 <= p < inf");
      p_values.push_back(v);
    }
    if (p_values.empty()) throw ConfigError("\"p_values\" must be nonempty");
  }

  Rng rng(seed);
  double worst_op = -1.0;
  double worst_sp = -1.0;
  double worst_adjoint = 0.0;
  double worst_positive = 0.0;
  double worst_kron = 0.0;
  double worst_reduced = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    const Frame f = random_frame(rng, dim, atoms);
    const Frame g(f.space(), rng.complex_matrix(dim, atoms));
    const Symbol m(f.space(), rng.complex_vector(atoms));

    const NormBoundReport nb = norm_bound_check(m, f, g);
    worst_op = std::max(worst_op, (nb.opnorm - nb.bound) / nb.bound);
    const double p = p_values[static_cast<std::size_t>(trial) % p_values.size()];
    const SchattenReport sp = schatten_bound(m, f, g, p);
    worst_sp = std::max(worst_sp, (sp.norm - *sp.bound) / *sp.bound);

    const Symbol m_conj(f.space(), m.values().conjugate());
    const Eigen::MatrixXcd lhs = multiplier(m, f, g).adjoint();
    const Eigen::MatrixXcd rhs = multiplier(m_conj, g, f);
    worst_adjoint = std::max(worst_adjoint, (lhs - rhs).cwiseAbs().maxCoeff() /
                                                std::max(rhs.cwiseAbs().maxCoeff(), 1e-300));

    const Symbol pos(f.space(),
                     rng.positive_vector(atoms, 0.1, 1.1).cast<std::complex<double>>());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(multiplier(pos, f, f));
    worst_positive = std::max(worst_positive, -eig.eigenvalues().minCoeff() /
                                                  std::max(eig.eigenvalues().maxCoeff(), 1e-300));

    // small tensor instance: factorization and the partial-trace identity
    const Eigen::Index n_small = std::min<Eigen::Index>(dim, 2);
    const Eigen::Index k_small = std::min<Eigen::Index>(atoms, 3);
    const Frame a1 = random_frame(rng, n_small, k_small);
    const Frame a2 = random_frame(rng, n_small, k_small);
    const Frame b1(a1.space(), rng.complex_matrix(n_small, k_small));
    const Frame b2(a2.space(), rng.complex_matrix(n_small, k_small));
    const Symbol s1(a1.space(), rng.complex_vector(k_small));
    const Symbol s2(a2.space(), rng.complex_vector(k_small));
    const Eigen::MatrixXcd big =
        multiplier(tensor_symbol(s1, s2), tensor_frame(a1, a2).flat, tensor_frame(b1, b2).flat);
    const Eigen::MatrixXcd kron_form = kron_op(multiplier(s1, a1, b1), multiplier(s2, a2, b2));
    worst_kron = std::max(worst_kron, (big - kron_form).cwiseAbs().maxCoeff() /
                                          std::max(kron_form.cwiseAbs().maxCoeff(), 1e-300));
    const Eigen::MatrixXcd reduced =
        multiplier_partial_trace(s1, a1, b1, s2, a2, b2, Side::Right);
    const Eigen::MatrixXcd expected =
        multiplier(s1, a1, b1) * trace(multiplier(s2, a2, b2));
    worst_reduced = std::max(worst_reduced, (reduced - expected).cwiseAbs().maxCoeff() /
                                                std::max(expected.cwiseAbs().maxCoeff(), 1e-300));
  }
  return {make_check("multiplier.operator-norm-slack", worst_op, 0.0, 1e-9),
          make_check("multiplier.schatten-slack", worst_sp, 0.0, 1e-9),
          make_check("multiplier.adjoint-identity", worst_adjoint, 0.0, 1e-12),
          make_check("multiplier.positive-symbol-psd", worst_positive, 0.0, 1e-12),
          make_check("multiplier.tensor-factorization", worst_kron, 0.0, 1e-12),
          make_check("multiplier.partial-trace-identity", worst_reduced, 0.0, 1e-12)};
}

// ---- gabor --------------------------------------------------------------

std::vector<Check> run_gabor(const json& params, std::uint64_t seed) {
  reject_unknown_keys(params, {"lengths", "windows_per_length", "signal_pairs", "export"},
                      "gabor parameters");
  std::vector<Eigen::Index> lengths{2, 4, 8, 16};
  if (params.contains("lengths")) {
    if (!params.at("lengths").is_array()) throw ConfigError("\"lengths\" must be an array");
    lengths.clear();
    for (const auto& l : params.at("lengths")) {
      const auto n = l.get<Eigen::Index>();
      if (n < 1 || n > 64) throw ConfigError("gabor lengths must lie in [1, 64]");
      lengths.push_back(n);
    }
    if (lengths.empty()) throw ConfigError("\"lengths\" must be nonempty");
  }
  const auto per_length = static_cast<int>(get_index(params, "windows_per_length", 5, 1, 100));
  const auto pairs = static_cast<int>(get_index(params, "signal_pairs", 50, 1, 10000));

  Rng rng(seed);
  double worst_bound = 0.0;
  double worst_energy = 0.0;
  double worst_view = 0.0;
  for (const Eigen::Index n : lengths) {
    for (int widx = 0; widx < per_length; ++widx) {
      Eigen::VectorXcd g;
      if (widx == 0)
        g = make_window("delta", n);
      else if (widx == 1)
        g = make_window("gauss", n);
      else
        g = rng.complex_vector(n);
      const GaborSystem sys = gabor_frame(g);
      const FrameBounds b = frame_bounds(sys.frame);
      const double tight = static_cast<double>(n) * g.squaredNorm();
      worst_bound = std::max(worst_bound, std::abs(b.lower - tight) / tight);
      worst_bound = std::max(worst_bound, std::abs(b.upper - tight) / tight);

      const Eigen::VectorXcd v = rng.complex_vector(n);
      const Eigen::VectorXcd via_stft = stft(v, g).values;
      const Eigen::VectorXcd via_frame = analysis(sys.frame, v).values;
      worst_view = std::max(worst_view, (via_stft - via_frame).cwiseAbs().maxCoeff() /
                                            std::max(via_frame.cwiseAbs().maxCoeff(), 1e-300));
    }
  }
  for (int trial = 0; trial < pairs; ++trial) {
    const Eigen::Index n = lengths[static_cast<std::size_t>(trial) % lengths.size()];
    const Eigen::VectorXcd g = rng.complex_vector(n);
    const Eigen::VectorXcd f1 = rng.complex_vector(n);
    const Eigen::VectorXcd f2 = rng.complex_vector(n);
    const std::complex<double> sum =
        stft(f1, g).values.cwiseProduct(stft(f2, g).values.conjugate()).sum();
    const std::complex<double> expected =
        static_cast<double>(n) * inner(f1, f2) * g.squaredNorm();
    worst_energy = std::max(worst_energy, std::abs(sum - expected) /
                                              (static_cast<double>(n) * f1.norm() * f2.norm() *
                                               g.squaredNorm()));
  }

  std::vector<Check> checks{
      make_check("gabor.tight-bound", worst_bound, 0.0, 1e-10),
      make_check("gabor.stft-energy-identity", worst_energy, 0.0, 1e-12),
      make_check("gabor.stft-matches-frame-analysis", worst_view, 0.0, 1e-12)};

  if (params.contains("export")) {
    const auto& exp = params.at("export");
    reject_unknown_keys(exp, {"path", "signal", "window", "length"}, "gabor export");
    const auto n = exp.contains("length") ? exp.at("length").get<Eigen::Index>() : lengths.back();
    const Eigen::VectorXcd g = make_window(get_string(exp, "window", "gauss"), n);
    const Eigen::VectorXcd f = make_window(get_string(exp, "signal", "delta"), n);
    const std::string path = get_string(exp, "path", "");
    if (path.empty()) throw ConfigError("gabor export needs a \"path\"");
    try {
      write_grid_csv(path, spectrogram(f, g));
    } catch (const std::exception& e) {
      throw IoError(e.what());
    }
    checks.push_back(make_check("gabor.grid-exported", 1.0, 1.0, 0.0));
  }
  return checks;
}

// ---- wavelet ------------------------------------------------------------

std::vector<Check> run_wavelet(const json& params) {
  reject_unknown_keys(params,
                      {"samples", "scales", "translations", "scale_min", "scale_max", "sigma",
                       "dt", "refinements", "deviation_budget"},
                      "wavelet parameters");
  WaveletParams p;
  p.samples = get_index(params, "samples", 256, 8, 1024);
  p.scales = get_index(params, "scales", 32, 2, 512);
  p.translations = get_index(params, "translations", 256, 2, 4096);
  p.scale_min = get_number(params, "scale_min", 0.125);
  p.scale_max = get_number(params, "scale_max", 8.0);
  p.sigma = get_number(params, "sigma", 4.5);
  p.dt = get_number(params, "dt", 1.0);
  const auto refinements = static_cast<int>(get_index(params, "refinements", 3, 0, 6));
  const double budget = get_number(params, "deviation_budget", 5e-2);
  if (!(p.scale_min > 0.0) || !(p.scale_max >= p.scale_min) || !(p.sigma > 0.0) || !(p.dt > 0.0))
    throw ConfigError("wavelet grid parameters out of range");

  // refinement ladder: each level halves the translation and log-scale
  // spacings of the previous one and the last level is the requested grid
  std::vector<double> deviations;
  WaveletSystem finest = [&] {
    WaveletParams q = p;
    for (int level = 0; level <= refinements; ++level) {
      const int shift = refinements - level;
      q.scales = std::max<Eigen::Index>(2, p.scales >> shift);
      q.translations = std::max<Eigen::Index>(2, p.translations >> shift);
      WaveletSystem sys = wavelet_frame(q);
      deviations.push_back(sys.max_deviation);
      if (level == refinements) return sys;
    }
    return wavelet_frame(p);
  }();

  bool decreasing = true;
  for (std::size_t i = 1; i < deviations.size(); ++i)
    decreasing = decreasing && deviations[i] < deviations[i - 1];

  Eigen::VectorXd omega(16001);
  for (Eigen::Index i = 0; i < omega.size(); ++i)
    omega[i] = 4.0 * static_cast<double>(i) / static_cast<double>(omega.size() - 1);
  const double c_band = admissibility(omega, bandlimited_spectrum(1.0, 2.0, omega));

  return {make_check("wavelet.deviation", finest.max_deviation, 0.0, budget),
          make_check("wavelet.refinement-strictly-decreasing", decreasing ? 1.0 : 0.0, 1.0, 0.0),
          make_check("wavelet.admissibility-ln2", c_band, std::log(2.0), 1e-3),
          make_check("wavelet.empirical-vs-quadrature-constant",
                     std::abs(finest.tight_constant - finest.admissibility_constant) /
                         finest.admissibility_constant,
                     0.0, 5e-2)};
}

// ---- duals --------------------------------------------------------------

std::vector<Check> run_duals(const json& params, std::uint64_t seed) {
  reject_unknown_keys(params, {}, "duals parameters");
  std::vector<Check> checks = checks_dual_classification(seed);
  const std::vector<Check> extra = checks_nonsimple_dual();
  checks.insert(checks.end(), extra.begin(), extra.end());
  return checks;
}

// ---- density ------------------------------------------------------------

std::vector<Check> run_density(const json& params, std::uint64_t seed) {
  reject_unknown_keys(params, {"length", "window_left", "window_right", "symbol"},
                      "density parameters");
  const Eigen::Index n = get_index(params, "length", 2, 1, 16);
  const std::string wl = get_string(params, "window_left", "delta");
  const std::string wr = get_string(params, "window_right", "delta");
  const std::string symbol_kind = get_string(params, "symbol", "uniform");

  Rng rng(seed);
  const Eigen::VectorXcd phi1 = make_window(wl, n);
  const Eigen::VectorXcd phi2 = make_window(wr, n);
  const MeasureSpace grid = unit_grid(n * n);
  Eigen::VectorXcd values1;
  Eigen::VectorXcd values2;
  if (symbol_kind == "uniform") {
    values1 = Eigen::VectorXcd::Constant(n * n, 1.0 / static_cast<double>(n * n));
    values2 = values1;
  } else if (symbol_kind == "random") {
    values1 = rng.positive_vector(n * n, 0.2, 1.2).cast<std::complex<double>>();
    values2 = rng.positive_vector(n * n, 0.2, 1.2).cast<std::complex<double>>();
  } else {
    throw ConfigError("density symbol must be \"uniform\" or \"random\"");
  }

  const SeparableDensity d = separable_density(Symbol(grid, values1), Symbol(grid, values2),
                                               phi1, phi2);
  const AdmissibilityReport adm = is_admissible(d.rho.op());
  return {make_check("density.trace", d.rho.op().trace().real(), 1.0, 1e-10),
          make_check("density.hermitian-defect", adm.hermitian_defect, 0.0, 1e-10),
          make_check("density.negative-eigenvalue",
                     -adm.min_eigenvalue / std::max(adm.max_eigenvalue, 1e-300), 0.0, 1e-10),
          make_check("density.purity", purity(d.rho),
                     purity(d.reduced_left) * purity(d.reduced_right), 1e-10),
          make_check("density.reduced-trace-left", d.reduced_left.op().trace().real(), 1.0, 1e-10),
          make_check("density.reduced-trace-right", d.reduced_right.op().trace().real(), 1.0,
                     1e-10)};
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"frame-bounds", "tensor-check", "duals",
                                              "multiplier",   "gabor",        "wavelet",
                                              "density",      "full-suite"};
  return names;
}

Report run_experiment(const std::string& config_json, const RunOptions& options) {
  json config;
  try {
    config = json::parse(config_json);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!config.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown_keys(config, {"experiment", "seed", "parameters", "output"}, "config");
  if (!config.contains("experiment") || !config.at("experiment").is_string())
    throw ConfigError("config needs an \"experiment\" name");
  const std::string name = config.at("experiment").get<std::string>();
  const auto& names = experiment_names();
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw ConfigError("unknown experiment \"" + name + "\"");

  bool has_seed = options.has_seed;
  std::uint64_t seed = options.seed;
  if (!has_seed && config.contains("seed")) {
    if (!config.at("seed").is_number_unsigned())
      throw ConfigError("\"seed\" must be a non-negative integer");
    seed = config.at("seed").get<std::uint64_t>();
    has_seed = true;
  }

  json params = json::object();
  if (config.contains("parameters")) {
    if (!config.at("parameters").is_object()) throw ConfigError("\"parameters\" must be an object");
    params = config.at("parameters");
  }

  std::string out_path = options.out_path;
  std::string format = options.format;
  if (config.contains("output")) {
    const auto& output = config.at("output");
    if (!output.is_object()) throw ConfigError("\"output\" must be an object");
    reject_unknown_keys(output, {"path", "format"}, "output");
    if (out_path.empty() && output.contains("path"))
      out_path = output.at("path").get<std::string>();
    if (format.empty() && output.contains("format"))
      format = output.at("format").get<std::string>();
  }
  if (format.empty()) format = "json";
  if (format != "json" && format != "csv")
    throw ConfigError("output format must be \"json\" or \"csv\"");

  // deterministic experiments may omit the seed; anything randomized must
  // state one explicitly
  bool randomized = true;
  if (name == "wavelet") randomized = false;
  if (name == "density")
    randomized = params.contains("symbol") && params.at("symbol") == "random";
  if (randomized && !has_seed)
    throw ConfigError("experiment \"" + name + "\" is randomized and needs an explicit seed");

  const auto start = std::chrono::steady_clock::now();
  Report report;
  report.experiment = name;
  report.seed = has_seed ? seed : 0;
  if (name == "frame-bounds") {
    report.checks = run_frame_bounds(params, seed);
  } else if (name == "tensor-check") {
    report.checks = run_tensor_check(params, seed);
  } else if (name == "duals") {
    report.checks = run_duals(params, seed);
  } else if (name == "multiplier") {
    report.checks = run_multiplier(params, seed);
  } else if (name == "gabor") {
    report.checks = run_gabor(params, seed);
  } else if (name == "wavelet") {
    report.checks = run_wavelet(params);
  } else if (name == "density") {
    report.checks = run_density(params, seed);
  } else {  // full-suite
    reject_unknown_keys(params, {}, "full-suite parameters");
    report.checks = full_suite_checks(seed);
  }
  report.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw IoError("cannot open \"" + out_path + "\" for writing");
    out << (format == "json" ? report.to_json() : report.to_csv());
    if (!out.good()) throw IoError("failed while writing \"" + out_path + "\"");
  }
  return report;
}

std::string describe_experiment(const std::string& name) {
  if (name == "frame-bounds")
    return "frame-bounds: optimal frame bounds from the spectrum of the frame operator.\n"
           "Verifies the bound sandwich A||f||^2 <= <Sf,f> <= B||f||^2, that the canonical\n"
           "dual has bounds (1/B, 1/A), perfect reconstruction for dual pairs, and the\n"
           "analysis/synthesis adjoint relation.\n"
           "parameters: dim (int, default 3), atoms (int, default 6), trials (int, default 20)\n"
           "randomized: yes (seed required)\n";
  if (name == "tensor-check")
    return "tensor-check: tensor products of frames over product measure spaces.\n"
           "Verifies that the frame operator of a tensor-product frame is the Kronecker\n"
           "product of the factor operators, that optimal bounds multiply (A = A1*A2,\n"
           "B = B1*B2), that the canonical dual of the tensor frame is the tensor of the\n"
           "factor duals, that analysis of a simple tensor factorizes pointwise, and that\n"
           "the Schmidt decomposition reconstructs its input.\n"
           "parameters: dims ([n1, n2], default [2, 3]), atoms ([K1, K2], default [4, 5]),\n"
           "            trials (int, default 20)\n"
           "randomized: yes (seed required)\n";
  if (name == "duals")
    return "duals: the full classification of dual frames.\n"
           "Verifies that every family produced by the classification formula\n"
           "G = S^-1 F + Theta - integral <S^-1 F, F> Theta is a dual, that the affine\n"
           "space of duals has complex dimension n(K-n) (matched against a brute-force\n"
           "linear solve), that the formula spans that space, and that a redundant tensor\n"
           "frame admits a dual with a column that is not a simple tensor.\n"
           "parameters: none\n"
           "randomized: yes (seed required)\n";
  if (name == "multiplier")
    return "multiplier: frame multipliers and their norm estimates.\n"
           "Verifies the operator-norm bound ||m||_inf sqrt(B_F B_G), the Schatten-p bound\n"
           "||m||_p (L_F L_G)^(1/p) (B_F B_G)^((p-1)/(2p)), the adjoint identity\n"
           "M*_{m,F,G} = M_{conj m,G,F}, positivity for positive symbols, the Kronecker\n"
           "factorization of tensor multipliers, and the partial-trace identity\n"
           "T(M1 (x) M2) = M1 Tr(M2).\n"
           "parameters: dim (int, default 4), atoms (int, default 8), trials (int, default\n"
           "            50), p_values (array, default [1, 1.5, 2, 3])\n"
           "randomized: yes (seed required)\n";
  if (name == "gabor")
    return "gabor: finite Gabor systems of all N^2 time-frequency shifts.\n"
           "Verifies exact tightness with bound N ||g||^2, the energy identity\n"
           "sum V_g f1 conj(V_g f2) = N <f1,f2> ||g||^2, and that the transform agrees\n"
           "with frame analysis. Optionally exports a |V_g f|^2 grid as CSV.\n"
           "parameters: lengths (array, default [2, 4, 8, 16]), windows_per_length (int,\n"
           "            default 5), signal_pairs (int, default 50), export (object with\n"
           "            path/window/signal/length)\n"
           "randomized: yes (seed required)\n";
  if (name == "wavelet")
    return "wavelet: discretized continuous wavelet systems with Haar-measure weights.\n"
           "Verifies that the mexican-hat system at the reference grid is tight within the\n"
           "stated deviation budget (max-entry norm of S/c - I), that the deviation\n"
           "strictly decreases along a ladder of grid refinements ending at that grid, and\n"
           "that the admissibility quadrature reproduces ln 2 for the band-limited [1, 2]\n"
           "window within 1e-3.\n"
           "parameters: samples (default 256), scales (default 32), translations (default\n"
           "            256), scale_min (0.125), scale_max (8), sigma (4.5), dt (1),\n"
           "            refinements (3), deviation_budget (0.05)\n"
           "randomized: no\n";
  if (name == "density")
    return "density: bipartite density operators from Gabor multipliers.\n"
           "Builds the separable state M_{m1 (x) m2, F, F} with F the tensor of two Gabor\n"
           "systems, checks Hermitian/positive/unit-trace, that both partial traces are\n"
           "the component multipliers, and that purity factorizes across the tensor.\n"
           "parameters: length (int, default 2), window_left / window_right (presets,\n"
           "            default \"delta\"), symbol (\"uniform\" or \"random\")\n"
           "randomized: only with symbol = \"random\" (then seed required)\n";
  if (name == "full-suite")
    return "full-suite: runs the complete verification battery (tensor consistency,\n"
           "frame-operator factorization, bound constants, dual classification,\n"
           "non-simple duals, multiplier bounds, adjoint identity, partial traces, Gabor\n"
           "tightness, the trace formula, density construction, wavelet tightness) with\n"
           "the pinned acceptance-scale instance counts and tolerances.\n"
           "parameters: none\n"
           "randomized: yes (seed required)\n";
  throw ConfigError("unknown experiment \"" + name + "\"");
}

}  // namespace ctf
