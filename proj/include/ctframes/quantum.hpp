#ifndef CTFRAMES_QUANTUM_HPP
#define CTFRAMES_QUANTUM_HPP

#include <complex>
#include <Eigen/Dense>

#include "ctframes/localization.hpp"
#include "ctframes/multiplier.hpp"

namespace ctf {

struct AdmissibilityReport {
  bool hermitian = false;
  bool psd = false;
  bool unit_trace = false;
  double hermitian_defect = 0.0;  // ||A - A^*||_max / ||A||_max
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  double trace_error = 0.0;       // |Tr A - 1|
  bool admissible() const { return hermitian && psd && unit_trace; }
};

/// Checks the density-operator invariants: Hermitian within 1e-10 relative,
/// lambda_min >= -1e-10 lambda_max, |Tr - 1| <= 1e-10.
AdmissibilityReport is_admissible(const Eigen::MatrixXcd& op);

/// Hermitian, positive semidefinite, unit-trace operator. Construction
/// certifies the invariants and throws when they fail.
class DensityOperator {
public:
  explicit DensityOperator(Eigen::MatrixXcd op);

  const Eigen::MatrixXcd& op() const { return op_; }
  Eigen::Index dim() const { return op_.rows(); }

private:
  Eigen::MatrixXcd op_;
};

/// Tr(rho^2), in (0, 1]; equals 1 exactly for rank-one states.
double purity(const DensityOperator& rho);
double purity(const Eigen::MatrixXcd& rho);

struct TraceFormulaResult {
  std::complex<double> lhs;  // trace of the assembled multiplier
  std::complex<double> rhs;  // <psi, phi> * integral of m
};

/// Trace identity for Gabor multipliers: the trace of M_{m, pi phi, pi psi}
/// equals <psi, phi> times the integral of the symbol (exact on the finite
/// grid, since every pi(k, l) is unitary).
TraceFormulaResult trace_formula(const Symbol& m, const Eigen::VectorXcd& phi,
                                 const Eigen::VectorXcd& psi);

/// Rescales the symbol so the Gabor multiplier M_{m, pi phi, pi psi} has unit
/// trace. Requires a nonzero symbol integral and non-orthogonal windows.
Symbol normalize_symbol(const Symbol& m, const Eigen::VectorXcd& phi, const Eigen::VectorXcd& psi);

struct SeparableDensity {
  DensityOperator rho;            // bipartite state on C^{n1 n2}
  DensityOperator reduced_left;   // partial trace over the right factor
  DensityOperator reduced_right;  // partial trace over the left factor
};

/// Builds the bipartite density operator M_{m1 (x) m2, F1 (x) F2, F1 (x) F2}
/// from Gabor systems F_j = Gabor(phi_j) with positive symbols m_j. Symbols
/// are rescaled to unit component traces and the final trace is renormalized
/// to exactly 1; the reduced operators are the partial traces.
SeparableDensity separable_density(const Symbol& m1, const Symbol& m2,
                                   const Eigen::VectorXcd& phi1, const Eigen::VectorXcd& phi2);

}  // namespace ctf

#endif
