#include "ctframes/quantum.hpp"

#include <cmath>
#include <stdexcept>

#include "ctframes/tensor.hpp"

namespace ctf {

AdmissibilityReport is_admissible(const Eigen::MatrixXcd& op) {
  if (op.rows() != op.cols())
    throw std::invalid_argument("density check needs a square operator");
  AdmissibilityReport r;
  const double scale = op.cwiseAbs().maxCoeff();
  const double defect = (op - op.adjoint().eval()).cwiseAbs().maxCoeff();
  r.hermitian_defect = scale > 0.0 ? defect / scale : defect;
  r.hermitian = r.hermitian_defect <= 1e-10;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(0.5 * (op + op.adjoint().eval()));
  r.min_eigenvalue = eig.eigenvalues().minCoeff();
  r.max_eigenvalue = eig.eigenvalues().maxCoeff();
  r.psd = r.min_eigenvalue >= -1e-10 * std::max(r.max_eigenvalue, 0.0);

  r.trace_error = std::abs(op.trace() - std::complex<double>{1.0, 0.0});
  r.unit_trace = r.trace_error <= 1e-10;
  return r;
}

DensityOperator::DensityOperator(Eigen::MatrixXcd op) : op_(std::move(op)) {
  const AdmissibilityReport r = is_admissible(op_);
  if (!r.admissible()) {
    std::string why = "operator is not a density operator:";
    if (!r.hermitian) why += " not Hermitian";
    if (!r.psd) why += " not positive semidefinite";
    if (!r.unit_trace) why += " trace differs from 1";
    throw std::invalid_argument(why);
  }
}

double purity(const Eigen::MatrixXcd& rho) { return (rho * rho).trace().real(); }

double purity(const DensityOperator& rho) { return purity(rho.op()); }

TraceFormulaResult trace_formula(const Symbol& m, const Eigen::VectorXcd& phi,
                                 const Eigen::VectorXcd& psi) {
  const GaborSystem f = gabor_frame(phi);
  const GaborSystem g = gabor_frame(psi);
  TraceFormulaResult r;
  r.lhs = trace(multiplier(m, f.frame, g.frame));
  // columnwise <G_k, F_k> = <pi psi, pi phi> = <psi, phi> since every
  // time-frequency shift is unitary, so the trace collapses to this product
  r.rhs = inner(psi, phi) * integrate(m.values(), m.space());
  return r;
}

Symbol normalize_symbol(const Symbol& m, const Eigen::VectorXcd& phi,
                        const Eigen::VectorXcd& psi) {
  const std::complex<double> window_overlap = inner(psi, phi);
  const std::complex<double> mass = integrate(m.values(), m.space());
  const double scale = std::abs(window_overlap) * std::abs(mass);
  if (scale <= 1e-300)
    throw std::invalid_argument(
        "symbol cannot be normalized: zero integral or orthogonal windows");
  return Symbol(m.space(), m.values() / (window_overlap * mass));
}

namespace {

void require_positive(const Symbol& m, const char* which) {
  const double scale = m.sup_norm();
  for (Eigen::Index k = 0; k < m.values().size(); ++k) {
    const std::complex<double> v = m.values()[k];
    if (!(v.real() > 0.0) || std::abs(v.imag()) > 1e-12 * scale)
      throw std::invalid_argument(std::string(which) +
                                  " symbol must be strictly positive on every atom");
  }
}

}  // namespace

SeparableDensity separable_density(const Symbol& m1, const Symbol& m2,
                                   const Eigen::VectorXcd& phi1, const Eigen::VectorXcd& phi2) {
  require_positive(m1, "left");
  require_positive(m2, "right");

  const GaborSystem f1 = gabor_frame(phi1);
  const GaborSystem f2 = gabor_frame(phi2);
  const Symbol n1 = normalize_symbol(m1, phi1, phi1);
  const Symbol n2 = normalize_symbol(m2, phi2, phi2);

  const TensorFrame f = tensor_frame(f1.frame, f2.frame);
  Eigen::MatrixXcd rho = multiplier(tensor_symbol(n1, n2), f.flat, f.flat);
  rho = 0.5 * (rho + rho.adjoint().eval());
  // component normalization already gives trace 1 up to roundoff; dividing by
  // the computed trace makes the unit-trace invariant exact
  rho /= rho.trace().real();

  Eigen::MatrixXcd left = partial_trace(rho, phi1.size(), phi2.size(), Side::Right);
  Eigen::MatrixXcd right = partial_trace(rho, phi1.size(), phi2.size(), Side::Left);
  left = 0.5 * (left + left.adjoint().eval());
  right = 0.5 * (right + right.adjoint().eval());
  return SeparableDensity{DensityOperator(std::move(rho)), DensityOperator(std::move(left)),
                          DensityOperator(std::move(right))};
}

}  // namespace ctf
