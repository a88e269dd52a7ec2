#ifndef CTFRAMES_MULTIPLIER_HPP
#define CTFRAMES_MULTIPLIER_HPP

#include <complex>
#include <limits>
#include <optional>
#include <Eigen/Dense>

#include "ctframes/frame.hpp"
#include "ctframes/measure.hpp"

namespace ctf {

/// A complex-valued function on the atoms of a measure space: the symbol that
/// a multiplier inserts between analysis and synthesis.
class Symbol {
public:
  Symbol(MeasureSpace space, Eigen::VectorXcd values);

  const MeasureSpace& space() const { return space_; }
  const Eigen::VectorXcd& values() const { return values_; }

  /// Weighted p-norm (sum_k w_k |m_k|^p)^(1/p); p = inf gives max_k |m_k|
  /// (atoms all carry positive mass, so the essential sup is the plain max).
  double p_norm(double p) const;
  double sup_norm() const;

private:
  MeasureSpace space_;
  Eigen::VectorXcd values_;
};

/// Symbol on the product space with values m1_i * m2_j at atom (i, j).
Symbol tensor_symbol(const Symbol& m1, const Symbol& m2);

enum class Side { Left, Right };

struct SchattenReport {
  double p = 1.0;  // std::numeric_limits<double>::infinity() for the operator norm
  double norm = 0.0;
  Eigen::VectorXd singular_values;  // descending
  std::optional<double> bound;      // upper estimate, when one applies
  double slack() const { return bound ? *bound - norm : std::numeric_limits<double>::quiet_NaN(); }
};

struct NormBoundReport {
  double opnorm = 0.0;
  double bound = 0.0;
};

/// M = sum_k w_k m_k G_k F_k^*  (equivalently  T_G D_m T_F^*).
Eigen::MatrixXcd multiplier(const Symbol& m, const Frame& f, const Frame& g);

/// L_F = max column norm of the family.
double norm_bound(const Frame& frame);

/// Operator norm of the multiplier next to the bound ||m||_inf sqrt(B_F B_G).
/// Throws if the bound is violated beyond 1e-9 relative slack.
NormBoundReport norm_bound_check(const Symbol& m, const Frame& f, const Frame& g);

/// lp norm of the singular values of T (max for p = inf). Requires p >= 1.
SchattenReport schatten_norm(const Eigen::MatrixXcd& t, double p);

/// Schatten-p norm of the multiplier with the estimate
/// ||m||_p (L_F L_G)^{1/p} (B_F B_G)^{(p-1)/(2p)}, 1 <= p < inf (p = 1 is the
/// trace-class case with bound ||m||_1 L_F L_G). Throws if violated.
SchattenReport schatten_bound(const Symbol& m, const Frame& f, const Frame& g, double p);

std::complex<double> trace(const Eigen::MatrixXcd& t);

/// Partial trace of an operator on C^{n1*n2} (index (a,b) = a*n2 + b).
/// over = Side::Right contracts the right factor:
///   result[a, a'] = sum_b T[(a,b), (a',b)].
Eigen::MatrixXcd partial_trace(const Eigen::MatrixXcd& t, Eigen::Index dim_left,
                               Eigen::Index dim_right, Side over);

/// Builds the tensor multiplier M_{m1 (x) m2, F1 (x) F2, G1 (x) G2}, takes its
/// partial trace, and checks it equals the kept component multiplier scaled by
/// the trace of the contracted one. Returns the reduced operator.
Eigen::MatrixXcd multiplier_partial_trace(const Symbol& m1, const Frame& f1, const Frame& g1,
                                          const Symbol& m2, const Frame& f2, const Frame& g2,
                                          Side over);

}  // namespace ctf

#endif
