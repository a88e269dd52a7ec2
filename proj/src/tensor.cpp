#include "ctframes/tensor.hpp"

#include <cmath>
#include <stdexcept>

#include "ctframes/rng.hpp"

namespace ctf {

TensorVector kron_vec(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) {
  if (u.size() == 0 || v.size() == 0) throw std::invalid_argument("kron_vec: empty factor");
  TensorVector x{u.size(), v.size(), Eigen::VectorXcd(u.size() * v.size())};
  for (Eigen::Index a = 0; a < u.size(); ++a)
    for (Eigen::Index b = 0; b < v.size(); ++b) x.entries[a * v.size() + b] = u[a] * v[b];
  return x;
}

Eigen::MatrixXcd kron_op(const Eigen::MatrixXcd& s, const Eigen::MatrixXcd& t) {
  Eigen::MatrixXcd out(s.rows() * t.rows(), s.cols() * t.cols());
  for (Eigen::Index i = 0; i < s.rows(); ++i)
    for (Eigen::Index j = 0; j < s.cols(); ++j)
      out.block(i * t.rows(), j * t.cols(), t.rows(), t.cols()) = s(i, j) * t;
  return out;
}

TensorFrame tensor_frame(const Frame& f1, const Frame& f2) {
  ProductMeasureSpace space = product(f1.space(), f2.space());
  // kron of the column matrices produces exactly the product-atom layout:
  // column i*K2 + j equals kron(F1_i, F2_j).
  Frame flat(space.joint(), kron_op(f1.vectors(), f2.vectors()));
  return TensorFrame{std::move(space), f1.dim(), f2.dim(), std::move(flat), f1, f2};
}

std::pair<double, double> bound_constants(const Frame& frame) {
  const FrameBounds b = frame_bounds(frame);
  return {b.lower, b.upper};
}

SchmidtDecomposition schmidt(const TensorVector& x) {
  if (x.entries.size() != x.dim_left * x.dim_right)
    throw std::invalid_argument("tensor vector entry count does not match dims");
  // Reshape row-major: entry (a, b) = x[a*n2 + b], so x = sum c_n e_n (x) f_n
  // corresponds to the factorization M = sum c_n e_n f_n^T of M(a,b).
  Eigen::MatrixXcd m(x.dim_left, x.dim_right);
  for (Eigen::Index a = 0; a < x.dim_left; ++a)
    m.row(a) = x.entries.segment(a * x.dim_right, x.dim_right).transpose();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);

  const Eigen::VectorXd& sv = svd.singularValues();
  const double top = sv.size() > 0 ? sv[0] : 0.0;
  // keep every coefficient above the noise floor; an exactly zero vector
  // yields an empty decomposition
  const double floor = top * 1e-15;
  Eigen::Index count = 0;
  while (count < sv.size() && sv[count] > floor && sv[count] > 0.0) ++count;

  SchmidtDecomposition out;
  out.coefficients = sv.head(count);
  out.left.resize(x.dim_left, count);
  out.right.resize(x.dim_right, count);
  for (Eigen::Index n = 0; n < count; ++n) {
    Eigen::VectorXcd e = svd.matrixU().col(n);
    Eigen::VectorXcd f = svd.matrixV().col(n).conjugate();  // M = U S V^H => f = conj(v)
    // phase convention: first nonzero entry of the left vector real positive
    for (Eigen::Index i = 0; i < e.size(); ++i) {
      if (std::abs(e[i]) > 1e-14 * (1.0 + std::abs(top))) {
        const std::complex<double> phase = e[i] / std::abs(e[i]);
        e /= phase;
        f *= phase;
        break;
      }
    }
    out.left.col(n) = e;
    out.right.col(n) = f;
  }
  return out;
}

Eigen::Index simple_rank(const TensorVector& x) {
  const SchmidtDecomposition d = schmidt(x);
  if (d.coefficients.size() == 0) return 0;
  const double top = d.coefficients[0];
  Eigen::Index rank = 0;
  for (Eigen::Index n = 0; n < d.coefficients.size(); ++n)
    if (d.coefficients[n] > kRankTolerance * top) ++rank;
  return rank;
}

TensorFrame tensor_dual_from_bessel(const TensorFrame& frame, const Frame& w) {
  Frame dual = dual_from_bessel(frame.flat, w);
  return TensorFrame{frame.space, frame.dim_left, frame.dim_right, std::move(dual),
                     std::nullopt, std::nullopt};
}

namespace {

bool has_nonsimple_column(const TensorFrame& g) {
  for (Eigen::Index k = 0; k < g.flat.atom_count(); ++k) {
    TensorVector col{g.dim_left, g.dim_right, g.flat.column(k)};
    if (simple_rank(col) >= 2) return true;
  }
  return false;
}

}  // namespace

TensorFrame nonsimple_dual(const TensorFrame& frame) {
  if (frame.dim_left < 2 || frame.dim_right < 2)
    throw std::invalid_argument("non-simple duals need both factor dimensions > 1");
  if (dual_space_dimension(frame.flat) == 0)
    throw std::domain_error("frame is not redundant: its only dual is the canonical one");

  const Frame dual = canonical_dual(frame.flat);
  double mean_norm = 0.0;
  for (Eigen::Index k = 0; k < dual.atom_count(); ++k) mean_norm += dual.column(k).norm();
  mean_norm /= static_cast<double>(dual.atom_count());
  const double alpha = 0.1 * mean_norm;

  const Eigen::Index n1 = frame.dim_left;
  const Eigen::Index n2 = frame.dim_right;
  const Eigen::Index atoms = frame.flat.atom_count();

  // rank-2 direction from the two leading singular pairs of a fixed seeded
  // random matrix
  Rng rng(0x5eedu);
  const Eigen::MatrixXcd seed_matrix = rng.complex_matrix(n1, n2);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(seed_matrix, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXcd t =
      kron_vec(svd.matrixU().col(0), svd.matrixV().col(0).conjugate()).entries +
      kron_vec(svd.matrixU().col(1), svd.matrixV().col(1).conjugate()).entries;

  // candidate perturbation families: the rank-2 column on every atom, then on
  // a single atom at a time (the all-atoms variant can cancel exactly when
  // the constant coefficient function lies in the range of analysis)
  for (Eigen::Index candidate = 0; candidate <= atoms; ++candidate) {
    Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(n1 * n2, atoms);
    if (candidate == 0) {
      w.colwise() = Eigen::VectorXcd(alpha * t);
    } else {
      w.col(candidate - 1) = alpha * t;
    }
    TensorFrame g = tensor_dual_from_bessel(frame, Frame(frame.flat.space(), w));
    if (!is_dual_pair(frame.flat, g.flat, 1e-10 * (1.0 + frame_bounds(frame.flat).upper)))
      continue;
    if (has_nonsimple_column(g)) return g;
  }
  throw std::runtime_error("no non-simple dual found in the candidate family");
}

}  // namespace ctf
