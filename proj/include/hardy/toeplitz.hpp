#pragma once

#include <memory>
#include <vector>

#include "hardy/config.hpp"
#include "hardy/symbol.hpp"

namespace hardy {

/// Finite section of T_phi on polynomials of degree <= N.
///
/// Rows and columns are stacked degree-major, so block (j, k) is the symbol
/// coefficient at degree j - k.
struct BlockToeplitz {
  MatrixSymbol symbol;
  int domain_degree = 0;
  CMatrix matrix;

  Index out_dim() const { return symbol.rows(); }
  Index in_dim() const { return symbol.cols(); }
};

BlockToeplitz build_toeplitz(const MatrixSymbol& phi, int degree);

/// Orthonormal family of HardyElements sharing dimension and degree.
class SubspaceBasis {
 public:
  SubspaceBasis() = default;
  SubspaceBasis(Index dim, int degree) : dim_(dim), degree_(degree) {}

  /// Columns of `q` (stacked degree-major) are taken as given; no
  /// orthonormalization is done.
  static SubspaceBasis from_columns(const CMatrix& q, Index dim);
  /// Orthonormal basis of the column span of `vectors`, cut at
  /// tol * sigma_max.
  static SubspaceBasis span_of(const CMatrix& vectors, Index dim, double tol = 1e-10);
  static SubspaceBasis span_of(const std::vector<HardyElement>& elems, int degree,
                               double tol = 1e-10);

  Index dim() const { return dim_; }
  int degree() const { return degree_; }
  Index size() const { return static_cast<Index>(elements_.size()); }
  bool empty() const { return elements_.empty(); }
  const std::vector<HardyElement>& elements() const { return elements_; }
  const HardyElement& operator[](Index i) const { return elements_.at(static_cast<size_t>(i)); }

  /// Stacked basis as the columns of a dim*(degree+1) x size matrix.
  CMatrix matrix() const;
  /// Same, zero padded to a larger degree.
  CMatrix matrix(int degree) const;
  /// ||Gram - I||_2.
  double orthonormality_defect() const;

 private:
  Index dim_ = 1;
  int degree_ = 0;
  std::vector<HardyElement> elements_;
};

struct KernelResult {
  SubspaceBasis basis;
  Eigen::VectorXd singular_values;  // descending
  /// sigma just above the cut / sigma just below it (infinity when the cut
  /// falls past the last singular value or the kernel is everything).
  double gap = 0.0;
  Verdict verdict = Verdict::indeterminate;  // pass = determinate cut
  double sigma_max = 0.0;
};

/// Numerical null space: singular values <= rank_tol * sigma_max, with the
/// cut accepted only when the gap across it is at least `min_gap`.
KernelResult kernel_basis(const BlockToeplitz& t, double rank_tol = 1e-8, double min_gap = 1e3);
KernelResult kernel_basis(const CMatrix& m, Index dim, int degree, double rank_tol = 1e-8,
                          double min_gap = 1e3);

/// Largest principal angle between the spans (radians). Bases of different
/// degree are compared after zero padding; different sizes give pi/2.
double subspace_angle(const SubspaceBasis& a, const SubspaceBasis& b);

/// Expression tree over finite Toeplitz sections, materialized on demand at
/// a chosen section degree.
class OperatorExpr {
 public:
  static OperatorExpr toeplitz(const MatrixSymbol& phi);
  static OperatorExpr identity(Index dim);

  Index out_dim() const;
  Index in_dim() const;

  OperatorExpr adjoint() const;
  /// Section matrix at degree d (stacked degree-major, d+1 blocks).
  CMatrix materialize(int degree) const;

  friend OperatorExpr operator*(const OperatorExpr& a, const OperatorExpr& b);
  friend OperatorExpr operator+(const OperatorExpr& a, const OperatorExpr& b);
  friend OperatorExpr operator-(const OperatorExpr& a, const OperatorExpr& b);
  friend OperatorExpr operator*(cplx s, const OperatorExpr& a);

 private:
  enum class Kind { toeplitz, identity, product, sum, scaled, adjoint };
  struct Node;
  explicit OperatorExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Spectral norm of (lhs - rhs) on polynomials of degree <= N/2, with the
/// operators materialized as sections of degree 2N so that every
/// intermediate product on that window is exact.
double operator_residual(const OperatorExpr& lhs, const OperatorExpr& rhs, int degree);

}  // namespace hardy
