#include "hardy/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace hardy {

BlockToeplitz build_toeplitz(const MatrixSymbol& phi, int degree) {
  if (degree < 0) throw DimensionError("build_toeplitz: negative degree");
  const Index p = phi.rows(), q = phi.cols();
  const int n = degree + 1;
  CMatrix m = CMatrix::Zero(p * n, q * n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const int d = j - k;
      if (d < phi.min_deg() || d > phi.max_deg()) continue;
      m.block(j * p, k * q, p, q) = phi.at(d);
    }
  }
  return {phi, degree, std::move(m)};
}

// ---------------------------------------------------------------------------

SubspaceBasis SubspaceBasis::from_columns(const CMatrix& q, Index dim) {
  if (dim <= 0 || q.rows() % dim != 0) throw DimensionError("column length not a multiple of dim");
  SubspaceBasis b(dim, static_cast<int>(q.rows() / dim) - 1);
  for (Index c = 0; c < q.cols(); ++c) b.elements_.push_back(HardyElement::from_stacked(q.col(c), dim));
  return b;
}

SubspaceBasis SubspaceBasis::span_of(const CMatrix& vectors, Index dim, double tol) {
  if (dim <= 0 || vectors.rows() % dim != 0) throw DimensionError("column length not a multiple of dim");
  if (vectors.cols() == 0) return SubspaceBasis(dim, static_cast<int>(vectors.rows() / dim) - 1);
  Eigen::BDCSVD<CMatrix> svd(vectors, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  Index r = 0;
  while (r < sv.size() && sv(r) > tol * std::max(sv(0), 1e-300)) ++r;
  if (sv.size() == 0 || sv(0) == 0.0) r = 0;
  CMatrix q = svd.matrixU().leftCols(r);
  SubspaceBasis b = from_columns(q, dim);
  b.degree_ = static_cast<int>(vectors.rows() / dim) - 1;
  return b;
}

SubspaceBasis SubspaceBasis::span_of(const std::vector<HardyElement>& elems, int degree, double tol) {
  if (elems.empty()) throw DimensionError("span_of: no elements");
  const Index dim = elems.front().dim();
  CMatrix v(dim * (degree + 1), static_cast<Index>(elems.size()));
  for (size_t i = 0; i < elems.size(); ++i) {
    if (elems[i].dim() != dim) throw DimensionError("span_of: mixed dimensions");
    v.col(static_cast<Index>(i)) = elems[i].stacked(degree);
  }
  return span_of(v, dim, tol);
}

CMatrix SubspaceBasis::matrix() const { return matrix(degree_); }

CMatrix SubspaceBasis::matrix(int degree) const {
  CMatrix m(dim_ * (degree + 1), size());
  for (Index i = 0; i < size(); ++i) m.col(i) = elements_[static_cast<size_t>(i)].stacked(degree);
  return m;
}

double SubspaceBasis::orthonormality_defect() const {
  if (empty()) return 0.0;
  CMatrix q = matrix();
  CMatrix g = q.adjoint() * q - CMatrix::Identity(size(), size());
  return Eigen::JacobiSVD<CMatrix>(g).singularValues()(0);
}

// ---------------------------------------------------------------------------

KernelResult kernel_basis(const CMatrix& m, Index dim, int degree, double rank_tol, double min_gap) {
  KernelResult out;
  out.basis = SubspaceBasis(dim, degree);
  const Index n = m.cols();
  if (n != dim * (degree + 1)) throw DimensionError("kernel_basis: column count does not match dim/degree");
  Eigen::BDCSVD<CMatrix> svd(m, Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();
  out.singular_values = sv;
  out.sigma_max = sv.size() ? sv(0) : 0.0;
  const double cut = rank_tol * out.sigma_max;
  Index rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;
  if (out.sigma_max == 0.0) rank = 0;

  const double inf = std::numeric_limits<double>::infinity();
  if (rank == n) {
    // empty kernel: distance of the smallest singular value from the cut
    out.gap = cut > 0.0 ? sv(n - 1) / cut : inf;
  } else if (rank == 0) {
    out.gap = inf;
  } else {
    const double below = rank < sv.size() ? sv(rank) : 0.0;
    out.gap = below > 0.0 ? sv(rank - 1) / below : inf;
  }
  out.verdict = out.gap >= min_gap ? Verdict::pass : Verdict::indeterminate;
  if (rank < n) out.basis = SubspaceBasis::from_columns(svd.matrixV().rightCols(n - rank), dim);
  return out;
}

KernelResult kernel_basis(const BlockToeplitz& t, double rank_tol, double min_gap) {
  return kernel_basis(t.matrix, t.in_dim(), t.domain_degree, rank_tol, min_gap);
}

double subspace_angle(const SubspaceBasis& a, const SubspaceBasis& b) {
  if (a.dim() != b.dim()) throw DimensionError("subspace_angle: ambient dimensions differ");
  if (a.size() != b.size()) return std::numbers::pi / 2;
  if (a.empty()) return 0.0;
  const int d = std::max(a.degree(), b.degree());
  const CMatrix qa = a.matrix(d), qb = b.matrix(d);
  auto one_way = [](const CMatrix& q1, const CMatrix& q2) {
    CMatrix r = q2 - q1 * (q1.adjoint() * q2);
    return Eigen::JacobiSVD<CMatrix>(r).singularValues()(0);
  };
  const double s = std::max(one_way(qa, qb), one_way(qb, qa));
  return std::asin(std::min(1.0, s));
}

// ---------------------------------------------------------------------------

struct OperatorExpr::Node {
  Kind kind;
  Index out_dim;
  Index in_dim;
  MatrixSymbol phi;
  std::shared_ptr<const Node> a, b;
  cplx scale = 1.0;
};

OperatorExpr OperatorExpr::toeplitz(const MatrixSymbol& phi) {
  return OperatorExpr(std::make_shared<const Node>(Node{Kind::toeplitz, phi.rows(), phi.cols(), phi, nullptr, nullptr}));
}

OperatorExpr OperatorExpr::identity(Index dim) {
  return OperatorExpr(std::make_shared<const Node>(Node{Kind::identity, dim, dim, MatrixSymbol(), nullptr, nullptr}));
}

Index OperatorExpr::out_dim() const { return node_->out_dim; }
Index OperatorExpr::in_dim() const { return node_->in_dim; }

OperatorExpr OperatorExpr::adjoint() const {
  return OperatorExpr(std::make_shared<const Node>(Node{Kind::adjoint, in_dim(), out_dim(), MatrixSymbol(), node_, nullptr}));
}

OperatorExpr operator*(const OperatorExpr& a, const OperatorExpr& b) {
  if (a.in_dim() != b.out_dim()) throw DimensionError("operator product shape mismatch");
  using N = OperatorExpr::Node;
  return OperatorExpr(std::make_shared<const N>(N{OperatorExpr::Kind::product, a.out_dim(), b.in_dim(), MatrixSymbol(), a.node_, b.node_}));
}

OperatorExpr operator+(const OperatorExpr& a, const OperatorExpr& b) {
  if (a.in_dim() != b.in_dim() || a.out_dim() != b.out_dim()) throw DimensionError("operator sum shape mismatch");
  using N = OperatorExpr::Node;
  return OperatorExpr(std::make_shared<const N>(N{OperatorExpr::Kind::sum, a.out_dim(), a.in_dim(), MatrixSymbol(), a.node_, b.node_}));
}

OperatorExpr operator*(cplx s, const OperatorExpr& a) {
  using N = OperatorExpr::Node;
  return OperatorExpr(std::make_shared<const N>(N{OperatorExpr::Kind::scaled, a.out_dim(), a.in_dim(), MatrixSymbol(), a.node_, nullptr, s}));
}

OperatorExpr operator-(const OperatorExpr& a, const OperatorExpr& b) { return a + cplx(-1.0) * b; }

CMatrix OperatorExpr::materialize(int degree) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::toeplitz: return build_toeplitz(n.phi, degree).matrix;
    case Kind::identity: return CMatrix::Identity(n.out_dim * (degree + 1), n.in_dim * (degree + 1));
    case Kind::product: return OperatorExpr(n.a).materialize(degree) * OperatorExpr(n.b).materialize(degree);
    case Kind::sum: return OperatorExpr(n.a).materialize(degree) + OperatorExpr(n.b).materialize(degree);
    case Kind::scaled: return n.scale * OperatorExpr(n.a).materialize(degree);
    case Kind::adjoint: return OperatorExpr(n.a).materialize(degree).adjoint();
  }
  throw std::logic_error("unknown operator node");
}

double operator_residual(const OperatorExpr& lhs, const OperatorExpr& rhs, int degree) {
  if (lhs.in_dim() != rhs.in_dim() || lhs.out_dim() != rhs.out_dim())
    throw DimensionError("operator_residual: shape mismatch");
  if (degree < 0) throw DimensionError("operator_residual: negative degree");
  const CMatrix d = lhs.materialize(2 * degree) - rhs.materialize(2 * degree);
  const Index cols = lhs.in_dim() * (degree / 2 + 1);
  const CMatrix w = d.leftCols(cols);
  if (w.size() == 0) return 0.0;
  return Eigen::BDCSVD<CMatrix>(w).singularValues()(0);
}

}  // namespace hardy
