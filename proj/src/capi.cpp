#include "ctframes.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "ctframes/experiments.hpp"
#include "ctframes/frame.hpp"
#include "ctframes/localization.hpp"
#include "ctframes/measure.hpp"
#include "ctframes/multiplier.hpp"
#include "ctframes/quantum.hpp"
#include "ctframes/serialize.hpp"
#include "ctframes/tensor.hpp"
#include "ctframes/version.hpp"

struct ctf_space {
  ctf::MeasureSpace value;
};
struct ctf_frame {
  ctf::Frame value;
};
struct ctf_operator {
  Eigen::MatrixXcd value;
};
struct ctf_symbol {
  ctf::Symbol value;
};

namespace {

thread_local std::string g_last_error;

ctf_status fail(ctf_status code, const char* message) {
  g_last_error = message;
  return code;
}

template <typename Fn>
ctf_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ctf::ConfigError& e) {
    return fail(CTF_ERR_PARSE, e.what());
  } catch (const ctf::IoError& e) {
    return fail(CTF_ERR_IO, e.what());
  } catch (const std::domain_error& e) {
    return fail(CTF_ERR_NOT_A_FRAME, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(CTF_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(CTF_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CTF_ERR_INTERNAL, e.what());
  }
}

ctf_status require(bool ok, const char* message) {
  return ok ? CTF_OK : fail(CTF_ERR_INVALID_ARGUMENT, message);
}

Eigen::VectorXcd to_complex_vector(const double* interleaved, size_t n) {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(n));
  for (size_t i = 0; i < n; ++i) out[static_cast<Eigen::Index>(i)] = {interleaved[2 * i],
                                                                      interleaved[2 * i + 1]};
  return out;
}

void from_complex(const Eigen::VectorXcd& v, double* out) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out[2 * i] = v[i].real();
    out[2 * i + 1] = v[i].imag();
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* ctf_version(void) { return ctf::kVersion; }

const char* ctf_last_error(void) { return g_last_error.c_str(); }

void ctf_string_free(char* s) { std::free(s); }

/* ---- measure spaces ---------------------------------------------------- */

ctf_status ctf_space_create(const double* coords, size_t coord_dim, const double* weights,
                            size_t count, ctf_space** out) {
  if (ctf_status s = require(coords && weights && out && count > 0 && coord_dim > 0,
                             "ctf_space_create: null or empty input"))
    return s;
  return guarded([&] {
    Eigen::MatrixXd points(static_cast<Eigen::Index>(coord_dim),
                           static_cast<Eigen::Index>(count));
    for (size_t k = 0; k < count; ++k)
      for (size_t d = 0; d < coord_dim; ++d)
        points(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(k)) =
            coords[k * coord_dim + d];
    Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(weights,
                                                          static_cast<Eigen::Index>(count));
    *out = new ctf_space{ctf::MeasureSpace(std::move(points), std::move(w))};
    return CTF_OK;
  });
}

ctf_status ctf_space_product(const ctf_space* a, const ctf_space* b, ctf_space** out) {
  if (ctf_status s = require(a && b && out, "ctf_space_product: null input")) return s;
  return guarded([&] {
    *out = new ctf_space{ctf::product(a->value, b->value).joint()};
    return CTF_OK;
  });
}

ctf_status ctf_space_atom_count(const ctf_space* s, size_t* out) {
  if (ctf_status st = require(s && out, "ctf_space_atom_count: null input")) return st;
  *out = static_cast<size_t>(s->value.atom_count());
  return CTF_OK;
}

ctf_status ctf_space_total_mass(const ctf_space* s, double* out) {
  if (ctf_status st = require(s && out, "ctf_space_total_mass: null input")) return st;
  *out = s->value.total_mass();
  return CTF_OK;
}

ctf_status ctf_space_integrate(const ctf_space* s, const double* values, double out[2]) {
  if (ctf_status st = require(s && values && out, "ctf_space_integrate: null input")) return st;
  return guarded([&] {
    const std::complex<double> v = ctf::integrate(
        to_complex_vector(values, static_cast<size_t>(s->value.atom_count())), s->value);
    out[0] = v.real();
    out[1] = v.imag();
    return CTF_OK;
  });
}

ctf_status ctf_space_to_json(const ctf_space* s, char** out) {
  if (ctf_status st = require(s && out, "ctf_space_to_json: null input")) return st;
  return guarded([&] {
    *out = copy_string(ctf::to_json(s->value));
    return *out ? CTF_OK : fail(CTF_ERR_INTERNAL, "out of memory");
  });
}

void ctf_space_destroy(ctf_space* s) { delete s; }

/* ---- frames ------------------------------------------------------------ */

ctf_status ctf_frame_create(const ctf_space* space, size_t dim, const double* columns,
                            ctf_frame** out) {
  if (ctf_status s = require(space && columns && out && dim > 0, "ctf_frame_create: null input"))
    return s;
  return guarded([&] {
    const auto k = space->value.atom_count();
    Eigen::MatrixXcd vectors(static_cast<Eigen::Index>(dim), k);
    for (Eigen::Index col = 0; col < k; ++col)
      for (size_t i = 0; i < dim; ++i) {
        const size_t base = 2 * (static_cast<size_t>(col) * dim + i);
        vectors(static_cast<Eigen::Index>(i), col) = {columns[base], columns[base + 1]};
      }
    *out = new ctf_frame{ctf::Frame(space->value, std::move(vectors))};
    return CTF_OK;
  });
}

ctf_status ctf_frame_gabor(const double* window, size_t n, ctf_frame** out) {
  if (ctf_status s = require(window && out && n > 0, "ctf_frame_gabor: null input")) return s;
  return guarded([&] {
    *out = new ctf_frame{ctf::gabor_frame(to_complex_vector(window, n)).frame};
    return CTF_OK;
  });
}

ctf_status ctf_frame_wavelet(size_t samples, double dt, double sigma, double scale_min,
                             double scale_max, size_t scales, size_t translations,
                             ctf_frame** out, double diagnostics[2]) {
  if (ctf_status s = require(out != nullptr, "ctf_frame_wavelet: null output")) return s;
  return guarded([&] {
    ctf::WaveletParams p;
    p.samples = static_cast<Eigen::Index>(samples);
    p.dt = dt;
    p.sigma = sigma;
    p.scale_min = scale_min;
    p.scale_max = scale_max;
    p.scales = static_cast<Eigen::Index>(scales);
    p.translations = static_cast<Eigen::Index>(translations);
    ctf::WaveletSystem sys = ctf::wavelet_frame(p);
    if (diagnostics) {
      diagnostics[0] = sys.tight_constant;
      diagnostics[1] = sys.max_deviation;
    }
    *out = new ctf_frame{std::move(sys.frame)};
    return CTF_OK;
  });
}

ctf_status ctf_frame_dim(const ctf_frame* f, size_t* out) {
  if (ctf_status s = require(f && out, "ctf_frame_dim: null input")) return s;
  *out = static_cast<size_t>(f->value.dim());
  return CTF_OK;
}

ctf_status ctf_frame_atom_count(const ctf_frame* f, size_t* out) {
  if (ctf_status s = require(f && out, "ctf_frame_atom_count: null input")) return s;
  *out = static_cast<size_t>(f->value.atom_count());
  return CTF_OK;
}

ctf_status ctf_frame_column(const ctf_frame* f, size_t k, double* out) {
  if (ctf_status s = require(f && out, "ctf_frame_column: null input")) return s;
  if (k >= static_cast<size_t>(f->value.atom_count()))
    return fail(CTF_ERR_INVALID_ARGUMENT, "ctf_frame_column: atom index out of range");
  from_complex(f->value.column(static_cast<Eigen::Index>(k)), out);
  return CTF_OK;
}

ctf_status ctf_frame_bounds(const ctf_frame* f, double* lower, double* upper, int* is_frame) {
  if (ctf_status s = require(f != nullptr, "ctf_frame_bounds: null input")) return s;
  return guarded([&] {
    const ctf::FrameBounds b = ctf::frame_bounds(f->value);
    if (lower) *lower = b.lower;
    if (upper) *upper = b.upper;
    if (is_frame) *is_frame = b.frame ? 1 : 0;
    return CTF_OK;
  });
}

ctf_status ctf_frame_operator(const ctf_frame* f, ctf_operator** out) {
  if (ctf_status s = require(f && out, "ctf_frame_operator: null input")) return s;
  return guarded([&] {
    *out = new ctf_operator{ctf::frame_operator(f->value)};
    return CTF_OK;
  });
}

ctf_status ctf_frame_analysis(const ctf_frame* f, const double* f_data, double* out) {
  if (ctf_status s = require(f && f_data && out, "ctf_frame_analysis: null input")) return s;
  return guarded([&] {
    from_complex(ctf::analysis(f->value, to_complex_vector(
                                             f_data, static_cast<size_t>(f->value.dim())))
                     .values,
                 out);
    return CTF_OK;
  });
}

ctf_status ctf_frame_synthesis(const ctf_frame* f, const double* coeff, double* out) {
  if (ctf_status s = require(f && coeff && out, "ctf_frame_synthesis: null input")) return s;
  return guarded([&] {
    const ctf::CoefficientFunction c{
        f->value.space(),
        to_complex_vector(coeff, static_cast<size_t>(f->value.atom_count()))};
    from_complex(ctf::synthesis(f->value, c), out);
    return CTF_OK;
  });
}

ctf_status ctf_frame_canonical_dual(const ctf_frame* f, ctf_frame** out) {
  if (ctf_status s = require(f && out, "ctf_frame_canonical_dual: null input")) return s;
  return guarded([&] {
    *out = new ctf_frame{ctf::canonical_dual(f->value)};
    return CTF_OK;
  });
}

ctf_status ctf_frame_dual_from_bessel(const ctf_frame* f, const ctf_frame* theta,
                                      ctf_frame** out) {
  if (ctf_status s = require(f && theta && out, "ctf_frame_dual_from_bessel: null input"))
    return s;
  return guarded([&] {
    *out = new ctf_frame{ctf::dual_from_bessel(f->value, theta->value)};
    return CTF_OK;
  });
}

ctf_status ctf_frame_is_dual_pair(const ctf_frame* f, const ctf_frame* g, double tol, int* out) {
  if (ctf_status s = require(f && g && out, "ctf_frame_is_dual_pair: null input")) return s;
  return guarded([&] {
    *out = ctf::is_dual_pair(f->value, g->value, tol) ? 1 : 0;
    return CTF_OK;
  });
}

ctf_status ctf_frame_dual_space_dimension(const ctf_frame* f, size_t* out) {
  if (ctf_status s = require(f && out, "ctf_frame_dual_space_dimension: null input")) return s;
  return guarded([&] {
    *out = static_cast<size_t>(ctf::dual_space_dimension(f->value));
    return CTF_OK;
  });
}

ctf_status ctf_frame_tensor(const ctf_frame* f1, const ctf_frame* f2, ctf_frame** out) {
  if (ctf_status s = require(f1 && f2 && out, "ctf_frame_tensor: null input")) return s;
  return guarded([&] {
    *out = new ctf_frame{ctf::tensor_frame(f1->value, f2->value).flat};
    return CTF_OK;
  });
}

ctf_status ctf_frame_norm_bound(const ctf_frame* f, double* out) {
  if (ctf_status s = require(f && out, "ctf_frame_norm_bound: null input")) return s;
  *out = ctf::norm_bound(f->value);
  return CTF_OK;
}

ctf_status ctf_frame_to_json(const ctf_frame* f, char** out) {
  if (ctf_status s = require(f && out, "ctf_frame_to_json: null input")) return s;
  return guarded([&] {
    *out = copy_string(ctf::to_json(f->value));
    return *out ? CTF_OK : fail(CTF_ERR_INTERNAL, "out of memory");
  });
}

void ctf_frame_destroy(ctf_frame* f) { delete f; }

ctf_status ctf_nonsimple_dual(const ctf_frame* f1, const ctf_frame* f2, ctf_frame** out) {
  if (ctf_status s = require(f1 && f2 && out, "ctf_nonsimple_dual: null input")) return s;
  return guarded([&] {
    *out = new ctf_frame{ctf::nonsimple_dual(ctf::tensor_frame(f1->value, f2->value)).flat};
    return CTF_OK;
  });
}

/* ---- operators ----------------------------------------------------------*/

ctf_status ctf_operator_create(size_t rows, size_t cols, const double* entries,
                               ctf_operator** out) {
  if (ctf_status s = require(entries && out && rows > 0 && cols > 0,
                             "ctf_operator_create: null or empty input"))
    return s;
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (size_t j = 0; j < cols; ++j)
    for (size_t i = 0; i < rows; ++i) {
      const size_t base = 2 * (j * rows + i);
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = {entries[base],
                                                                       entries[base + 1]};
    }
  *out = new ctf_operator{std::move(m)};
  return CTF_OK;
}

ctf_status ctf_operator_rows(const ctf_operator* t, size_t* out) {
  if (ctf_status s = require(t && out, "ctf_operator_rows: null input")) return s;
  *out = static_cast<size_t>(t->value.rows());
  return CTF_OK;
}

ctf_status ctf_operator_cols(const ctf_operator* t, size_t* out) {
  if (ctf_status s = require(t && out, "ctf_operator_cols: null input")) return s;
  *out = static_cast<size_t>(t->value.cols());
  return CTF_OK;
}

ctf_status ctf_operator_data(const ctf_operator* t, double* out) {
  if (ctf_status s = require(t && out, "ctf_operator_data: null input")) return s;
  const auto& m = t->value;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const auto base = 2 * static_cast<size_t>(j * m.rows() + i);
      out[base] = m(i, j).real();
      out[base + 1] = m(i, j).imag();
    }
  return CTF_OK;
}

ctf_status ctf_operator_kron(const ctf_operator* a, const ctf_operator* b, ctf_operator** out) {
  if (ctf_status s = require(a && b && out, "ctf_operator_kron: null input")) return s;
  return guarded([&] {
    *out = new ctf_operator{ctf::kron_op(a->value, b->value)};
    return CTF_OK;
  });
}

ctf_status ctf_operator_trace(const ctf_operator* t, double out[2]) {
  if (ctf_status s = require(t && out, "ctf_operator_trace: null input")) return s;
  return guarded([&] {
    const std::complex<double> v = ctf::trace(t->value);
    out[0] = v.real();
    out[1] = v.imag();
    return CTF_OK;
  });
}

ctf_status ctf_operator_partial_trace(const ctf_operator* t, size_t dim_left, size_t dim_right,
                                      int side, ctf_operator** out) {
  if (ctf_status s = require(t && out, "ctf_operator_partial_trace: null input")) return s;
  if (side != 0 && side != 1)
    return fail(CTF_ERR_INVALID_ARGUMENT, "ctf_operator_partial_trace: side must be 0 or 1");
  if (dim_left * dim_right != static_cast<size_t>(t->value.rows()) ||
      t->value.rows() != t->value.cols())
    return fail(CTF_ERR_DIMENSION_MISMATCH,
                "ctf_operator_partial_trace: operator size must equal dim_left * dim_right");
  return guarded([&] {
    *out = new ctf_operator{ctf::partial_trace(t->value, static_cast<Eigen::Index>(dim_left),
                                               static_cast<Eigen::Index>(dim_right),
                                               side == 0 ? ctf::Side::Left : ctf::Side::Right)};
    return CTF_OK;
  });
}

ctf_status ctf_operator_schatten_norm(const ctf_operator* t, double p, double* out) {
  if (ctf_status s = require(t && out, "ctf_operator_schatten_norm: null input")) return s;
  return guarded([&] {
    *out = ctf::schatten_norm(t->value, p).norm;
    return CTF_OK;
  });
}

ctf_status ctf_operator_write_csv(const ctf_operator* t, const char* path) {
  if (ctf_status s = require(t && path, "ctf_operator_write_csv: null input")) return s;
  return guarded([&] {
    try {
      ctf::write_matrix_csv(path, t->value);
    } catch (const std::runtime_error& e) {
      return fail(CTF_ERR_IO, e.what());
    }
    return CTF_OK;
  });
}

void ctf_operator_destroy(ctf_operator* t) { delete t; }

ctf_status ctf_schmidt_coefficients(const double* entries, size_t n1, size_t n2, double* coeffs,
                                    size_t* count) {
  if (ctf_status s = require(entries && coeffs && count && n1 > 0 && n2 > 0,
                             "ctf_schmidt_coefficients: null or empty input"))
    return s;
  return guarded([&] {
    const ctf::TensorVector x{static_cast<Eigen::Index>(n1), static_cast<Eigen::Index>(n2),
                              to_complex_vector(entries, n1 * n2)};
    const ctf::SchmidtDecomposition d = ctf::schmidt(x);
    *count = static_cast<size_t>(d.coefficients.size());
    for (Eigen::Index i = 0; i < d.coefficients.size(); ++i) coeffs[i] = d.coefficients[i];
    return CTF_OK;
  });
}

ctf_status ctf_simple_rank(const double* entries, size_t n1, size_t n2, size_t* out) {
  if (ctf_status s = require(entries && out && n1 > 0 && n2 > 0,
                             "ctf_simple_rank: null or empty input"))
    return s;
  return guarded([&] {
    const ctf::TensorVector x{static_cast<Eigen::Index>(n1), static_cast<Eigen::Index>(n2),
                              to_complex_vector(entries, n1 * n2)};
    *out = static_cast<size_t>(ctf::simple_rank(x));
    return CTF_OK;
  });
}

/* ---- symbols and multipliers ------------------------------------------- */

ctf_status ctf_symbol_create(const ctf_space* space, const double* values, ctf_symbol** out) {
  if (ctf_status s = require(space && values && out, "ctf_symbol_create: null input")) return s;
  return guarded([&] {
    *out = new ctf_symbol{ctf::Symbol(
        space->value,
        to_complex_vector(values, static_cast<size_t>(space->value.atom_count())))};
    return CTF_OK;
  });
}

ctf_status ctf_symbol_p_norm(const ctf_symbol* m, double p, double* out) {
  if (ctf_status s = require(m && out, "ctf_symbol_p_norm: null input")) return s;
  return guarded([&] {
    *out = m->value.p_norm(p);
    return CTF_OK;
  });
}

void ctf_symbol_destroy(ctf_symbol* m) { delete m; }

ctf_status ctf_multiplier(const ctf_symbol* m, const ctf_frame* f, const ctf_frame* g,
                          ctf_operator** out) {
  if (ctf_status s = require(m && f && g && out, "ctf_multiplier: null input")) return s;
  return guarded([&] {
    *out = new ctf_operator{ctf::multiplier(m->value, f->value, g->value)};
    return CTF_OK;
  });
}

ctf_status ctf_multiplier_norm_bound(const ctf_symbol* m, const ctf_frame* f, const ctf_frame* g,
                                     double* opnorm, double* bound) {
  if (ctf_status s = require(m && f && g, "ctf_multiplier_norm_bound: null input")) return s;
  return guarded([&] {
    const ctf::NormBoundReport r = ctf::norm_bound_check(m->value, f->value, g->value);
    if (opnorm) *opnorm = r.opnorm;
    if (bound) *bound = r.bound;
    return CTF_OK;
  });
}

ctf_status ctf_multiplier_schatten_bound(const ctf_symbol* m, const ctf_frame* f,
                                         const ctf_frame* g, double p, double* norm,
                                         double* bound) {
  if (ctf_status s = require(m && f && g, "ctf_multiplier_schatten_bound: null input")) return s;
  return guarded([&] {
    const ctf::SchattenReport r = ctf::schatten_bound(m->value, f->value, g->value, p);
    if (norm) *norm = r.norm;
    if (bound) *bound = *r.bound;
    return CTF_OK;
  });
}

/* ---- density operators --------------------------------------------------*/

ctf_status ctf_is_admissible(const ctf_operator* t, int* ok, double diagnostics[4]) {
  if (ctf_status s = require(t && ok, "ctf_is_admissible: null input")) return s;
  return guarded([&] {
    const ctf::AdmissibilityReport r = ctf::is_admissible(t->value);
    *ok = r.admissible() ? 1 : 0;
    if (diagnostics) {
      diagnostics[0] = r.hermitian_defect;
      diagnostics[1] = r.min_eigenvalue;
      diagnostics[2] = r.max_eigenvalue;
      diagnostics[3] = r.trace_error;
    }
    return CTF_OK;
  });
}

ctf_status ctf_purity(const ctf_operator* t, double* out) {
  if (ctf_status s = require(t && out, "ctf_purity: null input")) return s;
  return guarded([&] {
    if (t->value.rows() != t->value.cols())
      return fail(CTF_ERR_DIMENSION_MISMATCH, "ctf_purity: operator must be square");
    *out = ctf::purity(t->value);
    return CTF_OK;
  });
}

ctf_status ctf_trace_formula(const ctf_symbol* m, const double* phi, const double* psi, size_t n,
                             double lhs[2], double rhs[2]) {
  if (ctf_status s = require(m && phi && psi && lhs && rhs && n > 0,
                             "ctf_trace_formula: null input"))
    return s;
  return guarded([&] {
    const ctf::TraceFormulaResult r = ctf::trace_formula(
        m->value, to_complex_vector(phi, n), to_complex_vector(psi, n));
    lhs[0] = r.lhs.real();
    lhs[1] = r.lhs.imag();
    rhs[0] = r.rhs.real();
    rhs[1] = r.rhs.imag();
    return CTF_OK;
  });
}

ctf_status ctf_separable_density(const ctf_symbol* m1, const ctf_symbol* m2, const double* phi1,
                                 size_t n1, const double* phi2, size_t n2, ctf_operator** rho,
                                 ctf_operator** rho1, ctf_operator** rho2) {
  if (ctf_status s = require(m1 && m2 && phi1 && phi2 && rho && n1 > 0 && n2 > 0,
                             "ctf_separable_density: null input"))
    return s;
  return guarded([&] {
    const ctf::SeparableDensity d = ctf::separable_density(
        m1->value, m2->value, to_complex_vector(phi1, n1), to_complex_vector(phi2, n2));
    *rho = new ctf_operator{d.rho.op()};
    if (rho1) *rho1 = new ctf_operator{d.reduced_left.op()};
    if (rho2) *rho2 = new ctf_operator{d.reduced_right.op()};
    return CTF_OK;
  });
}

/* ---- experiment runner ---------------------------------------------------*/

ctf_status ctf_run_experiment(const char* config_json, const ctf_run_options* options,
                              char** report_json) {
  if (ctf_status s = require(config_json != nullptr, "ctf_run_experiment: null config")) return s;
  return guarded([&] {
    ctf::RunOptions opts;
    if (options) {
      opts.has_seed = options->has_seed != 0;
      opts.seed = options->seed;
      if (options->out_path) opts.out_path = options->out_path;
      if (options->format) opts.format = options->format;
      opts.quiet = options->quiet != 0;
    }
    const ctf::Report report = ctf::run_experiment(config_json, opts);
    if (report_json) {
      *report_json = copy_string(report.to_json());
      if (!*report_json) return fail(CTF_ERR_INTERNAL, "out of memory");
    }
    if (!report.pass()) return fail(CTF_ERR_CHECK_FAILED, "one or more checks failed");
    return CTF_OK;
  });
}

ctf_status ctf_describe_experiment(const char* name, char** text) {
  if (ctf_status s = require(name && text, "ctf_describe_experiment: null input")) return s;
  return guarded([&] {
    *text = copy_string(ctf::describe_experiment(name));
    return *text ? CTF_OK : fail(CTF_ERR_INTERNAL, "out of memory");
  });
}

}  // extern "C"
