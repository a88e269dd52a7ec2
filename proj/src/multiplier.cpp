#include "ctframes/multiplier.hpp"

#include <cmath>
#include <stdexcept>

#include "ctframes/tensor.hpp"

namespace ctf {

namespace {

void require_compatible(const Symbol& m, const Frame& f, const Frame& g) {
  if (f.dim() != g.dim())
    throw std::invalid_argument("multiplier: analysis/synthesis dimension mismatch");
  if (!f.space().same_atoms(g.space()) || !m.space().same_atoms(f.space()))
    throw std::invalid_argument("multiplier: symbol and frames must share one measure space");
}

Eigen::VectorXd singular_values(const Eigen::MatrixXcd& t) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(t);
  return svd.singularValues();
}

double lp_of_singular_values(const Eigen::VectorXd& sv, double p) {
  if (sv.size() == 0) return 0.0;
  if (std::isinf(p)) return sv[0];
  if (p == 1.0) return sv.sum();
  if (p == 2.0) return sv.norm();
  return std::pow(sv.array().pow(p).sum(), 1.0 / p);
}

}  // namespace

Symbol::Symbol(MeasureSpace space, Eigen::VectorXcd values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (values_.size() != space_.atom_count())
    throw std::invalid_argument("symbol needs one value per atom");
  if (!values_.allFinite()) throw std::invalid_argument("symbol values must be finite");
}

double Symbol::p_norm(double p) const {
  if (std::isinf(p)) return sup_norm();
  if (!(p >= 1.0)) throw std::invalid_argument("p-norm needs p >= 1");
  return std::pow((space_.weights().array() * values_.cwiseAbs().array().pow(p)).sum(), 1.0 / p);
}

double Symbol::sup_norm() const { return values_.size() ? values_.cwiseAbs().maxCoeff() : 0.0; }

Symbol tensor_symbol(const Symbol& m1, const Symbol& m2) {
  ProductMeasureSpace space = product(m1.space(), m2.space());
  const Eigen::Index k2 = m2.space().atom_count();
  Eigen::VectorXcd values(space.joint().atom_count());
  for (Eigen::Index i = 0; i < m1.space().atom_count(); ++i)
    for (Eigen::Index j = 0; j < k2; ++j) values[i * k2 + j] = m1.values()[i] * m2.values()[j];
  return Symbol(space.joint(), std::move(values));
}

Eigen::MatrixXcd multiplier(const Symbol& m, const Frame& f, const Frame& g) {
  require_compatible(m, f, g);
  const Eigen::VectorXcd wm =
      m.values().cwiseProduct(f.space().weights().cast<std::complex<double>>());
  return g.vectors() * wm.asDiagonal() * f.vectors().adjoint();
}

double norm_bound(const Frame& frame) { return frame.vectors().colwise().norm().maxCoeff(); }

NormBoundReport norm_bound_check(const Symbol& m, const Frame& f, const Frame& g) {
  const Eigen::MatrixXcd op = multiplier(m, f, g);
  NormBoundReport r;
  const Eigen::VectorXd sv = singular_values(op);
  r.opnorm = sv.size() ? sv[0] : 0.0;
  r.bound = m.sup_norm() * std::sqrt(frame_bounds(f).upper * frame_bounds(g).upper);
  if (r.opnorm > r.bound * (1.0 + 1e-9))
    throw std::runtime_error("operator norm exceeded its Bessel-bound estimate");
  return r;
}

SchattenReport schatten_norm(const Eigen::MatrixXcd& t, double p) {
  if (!(p >= 1.0) && !std::isinf(p))
    throw std::invalid_argument("Schatten norms are defined for p >= 1");
  SchattenReport r;
  r.p = p;
  r.singular_values = singular_values(t);
  r.norm = lp_of_singular_values(r.singular_values, p);
  return r;
}

SchattenReport schatten_bound(const Symbol& m, const Frame& f, const Frame& g, double p) {
  if (!(p >= 1.0) || std::isinf(p))
    throw std::invalid_argument("Schatten bound needs 1 <= p < inf");
  SchattenReport r = schatten_norm(multiplier(m, f, g), p);
  const double lf = norm_bound(f);
  const double lg = norm_bound(g);
  const double bf = frame_bounds(f).upper;
  const double bg = frame_bounds(g).upper;
  r.bound = m.p_norm(p) * std::pow(lf * lg, 1.0 / p) *
            std::pow(bf * bg, (p - 1.0) / (2.0 * p));
  if (r.norm > *r.bound * (1.0 + 1e-9))
    throw std::runtime_error("Schatten norm exceeded its estimate");
  return r;
}

std::complex<double> trace(const Eigen::MatrixXcd& t) {
  if (t.rows() != t.cols()) throw std::invalid_argument("trace needs a square operator");
  return t.trace();
}

Eigen::MatrixXcd partial_trace(const Eigen::MatrixXcd& t, Eigen::Index dim_left,
                               Eigen::Index dim_right, Side over) {
  if (dim_left < 1 || dim_right < 1 || t.rows() != t.cols() ||
      t.rows() != dim_left * dim_right)
    throw std::invalid_argument("partial trace: operator size must equal dim_left * dim_right");
  if (over == Side::Right) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim_left, dim_left);
    for (Eigen::Index a = 0; a < dim_left; ++a)
      for (Eigen::Index c = 0; c < dim_left; ++c)
        for (Eigen::Index b = 0; b < dim_right; ++b)
          out(a, c) += t(a * dim_right + b, c * dim_right + b);
    return out;
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim_right, dim_right);
  for (Eigen::Index b = 0; b < dim_right; ++b)
    for (Eigen::Index d = 0; d < dim_right; ++d)
      for (Eigen::Index a = 0; a < dim_left; ++a)
        out(b, d) += t(a * dim_right + b, a * dim_right + d);
  return out;
}

Eigen::MatrixXcd multiplier_partial_trace(const Symbol& m1, const Frame& f1, const Frame& g1,
                                          const Symbol& m2, const Frame& f2, const Frame& g2,
                                          Side over) {
  const Eigen::MatrixXcd m_left = multiplier(m1, f1, g1);
  const Eigen::MatrixXcd m_right = multiplier(m2, f2, g2);

  const Symbol m = tensor_symbol(m1, m2);
  const TensorFrame f = tensor_frame(f1, f2);
  const TensorFrame g = tensor_frame(g1, g2);
  Eigen::MatrixXcd reduced =
      partial_trace(multiplier(m, f.flat, g.flat), f1.dim(), f2.dim(), over);

  const Eigen::MatrixXcd expected = over == Side::Right
                                        ? Eigen::MatrixXcd(m_left * trace(m_right))
                                        : Eigen::MatrixXcd(m_right * trace(m_left));
  const double scale = 1.0 + expected.cwiseAbs().maxCoeff();
  if ((reduced - expected).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw std::runtime_error("partial trace of the tensor multiplier failed to factor");
  return reduced;
}

}  // namespace ctf
