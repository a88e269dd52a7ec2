#include "ctframes/frame.hpp"

#include <cmath>
#include <stdexcept>

namespace ctf {

namespace {

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> spectrum(const Frame& frame) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(frame_operator(frame));
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("frame operator eigendecomposition failed");
  return solver;
}

// S^{-1} applied through the eigendecomposition; rejects non-frames so dual
// operations never fall back to a pseudo-inverse.
Eigen::MatrixXcd apply_inverse(const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>& eig,
                               const Eigen::MatrixXcd& rhs) {
  const Eigen::VectorXd& ev = eig.eigenvalues();
  const double top = ev[ev.size() - 1];
  if (!(ev[0] > kFrameTolerance * top))
    throw std::domain_error("family is not a frame: frame operator is singular");
  return eig.eigenvectors() * ev.cwiseInverse().asDiagonal() *
         (eig.eigenvectors().adjoint() * rhs);
}

}  // namespace

Frame::Frame(MeasureSpace space, Eigen::MatrixXcd vectors)
    : space_(std::move(space)), vectors_(std::move(vectors)) {
  if (vectors_.rows() < 1) throw std::invalid_argument("frame dimension must be at least 1");
  if (vectors_.cols() != space_.atom_count())
    throw std::invalid_argument("frame needs one column per atom");
  if (!vectors_.allFinite()) throw std::invalid_argument("frame vectors must be finite");
}

double CoefficientFunction::norm() const {
  return std::sqrt(space.weights().dot(values.cwiseAbs2()));
}

std::complex<double> inner(const Eigen::VectorXcd& f, const Eigen::VectorXcd& g) {
  return g.dot(f);  // Eigen conjugates the callee, giving sum f_i conj(g_i)
}

CoefficientFunction analysis(const Frame& frame, const Eigen::VectorXcd& f) {
  if (f.size() != frame.dim()) throw std::invalid_argument("analysis: vector/frame dim mismatch");
  return {frame.space(), frame.vectors().adjoint() * f};
}

Eigen::VectorXcd synthesis(const Frame& frame, const CoefficientFunction& coeff) {
  if (!coeff.space.same_atoms(frame.space()))
    throw std::invalid_argument("synthesis: coefficient function lives on a different space");
  const Eigen::VectorXcd weighted =
      coeff.values.cwiseProduct(frame.space().weights().cast<std::complex<double>>());
  return frame.vectors() * weighted;
}

Eigen::MatrixXcd frame_operator(const Frame& frame) {
  const Eigen::MatrixXcd weighted =
      frame.vectors() * frame.space().weights().cast<std::complex<double>>().asDiagonal();
  Eigen::MatrixXcd s = weighted * frame.vectors().adjoint();
  return 0.5 * (s + s.adjoint().eval());
}

FrameBounds frame_bounds(const Frame& frame) {
  const auto eig = spectrum(frame);
  FrameBounds b;
  b.lower = eig.eigenvalues()[0];
  b.upper = eig.eigenvalues()[eig.eigenvalues().size() - 1];
  b.frame = b.upper > 0.0 && b.lower > kFrameTolerance * b.upper;
  return b;
}

Frame canonical_dual(const Frame& frame) {
  const auto eig = spectrum(frame);
  return Frame(frame.space(), apply_inverse(eig, frame.vectors()));
}

double dual_pair_defect(const Frame& f, const Frame& g) {
  if (f.dim() != g.dim() || !f.space().same_atoms(g.space()))
    throw std::invalid_argument("dual pair check needs matching space and dimension");
  const Eigen::MatrixXcd cross =
      g.vectors() * f.space().weights().cast<std::complex<double>>().asDiagonal() *
      f.vectors().adjoint();
  return (cross - Eigen::MatrixXcd::Identity(f.dim(), f.dim())).cwiseAbs().maxCoeff();
}

bool is_dual_pair(const Frame& f, const Frame& g, double tol) {
  return dual_pair_defect(f, g) <= tol;
}

Frame dual_from_bessel(const Frame& frame, const Frame& theta) {
  if (theta.dim() != frame.dim() || !theta.space().same_atoms(frame.space()))
    throw std::invalid_argument("perturbation family needs the same space and dimension");
  const auto eig = spectrum(frame);
  const Eigen::MatrixXcd dual = apply_inverse(eig, frame.vectors());
  // G = S^{-1}F + Theta - Theta W (F^* S^{-1} F), column k of the last term
  // being sum_j w_j <S^{-1}F_k, F_j> Theta_j.
  const Eigen::MatrixXcd gram = frame.vectors().adjoint() * dual;
  const Eigen::MatrixXcd correction =
      theta.vectors() * frame.space().weights().cast<std::complex<double>>().asDiagonal() * gram;
  return Frame(frame.space(), dual + theta.vectors() - correction);
}

Eigen::Index dual_space_dimension(const Frame& frame) {
  const auto eig = spectrum(frame);
  const Eigen::VectorXd& ev = eig.eigenvalues();
  const double top = ev[ev.size() - 1];
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (top > 0.0 && ev[i] > kFrameTolerance * top) ++rank;
  return frame.dim() * (frame.atom_count() - rank);
}

Frame with_weights_scaled(const Frame& frame, double c) {
  return Frame(frame.space().scaled(c), frame.vectors());
}

}  // namespace ctf
