#include "hardy/symbol.hpp"

#include <algorithm>
#include <cmath>

#include "hardy/config.hpp"

namespace hardy {

// ---------------------------------------------------------------------------
// ToleranceConfig

int admissible_grid(int n, int current) {
  int need = std::max(current, 4 * (n + 1));
  int k = 1;
  while (k < need) k <<= 1;
  return k;
}

void ToleranceConfig::validate() const {
  if (trunc_degree < 0) throw PreconditionError("trunc_degree must be >= 0");
  if (grid_size <= 0 || (grid_size & (grid_size - 1)) != 0)
    throw PreconditionError("grid_size must be a power of two");
  if (grid_size < 4 * (trunc_degree + 1))
    throw PreconditionError("grid_size must be >= 4(N+1)");
  if (!(rank_tol > 0) || !(residual_tol > 0))
    throw PreconditionError("tolerances must be positive");
  if (ladder.size() < 2) throw PreconditionError("ladder needs at least two degrees");
  for (size_t i = 1; i < ladder.size(); ++i)
    if (ladder[i] <= ladder[i - 1]) throw PreconditionError("ladder must be strictly increasing");
}

ToleranceConfig ToleranceConfig::with_degree(int n) const {
  ToleranceConfig out = *this;
  out.trunc_degree = n;
  out.grid_size = admissible_grid(n, grid_size);
  return out;
}

// ---------------------------------------------------------------------------
// MatrixSymbol

MatrixSymbol::MatrixSymbol(Index rows, Index cols, int min_deg, int max_deg)
    : rows_(rows), cols_(cols), min_deg_(min_deg), max_deg_(max_deg) {
  if (rows <= 0 || cols <= 0) throw DimensionError("symbol shape must be positive");
  if (max_deg < min_deg) throw DimensionError("max_deg < min_deg");
  coeffs_.assign(static_cast<size_t>(max_deg - min_deg + 1), CMatrix::Zero(rows, cols));
}

MatrixSymbol MatrixSymbol::constant(const CMatrix& c) {
  MatrixSymbol s(c.rows(), c.cols(), 0, 0);
  s.at(0) = c;
  return s;
}

MatrixSymbol MatrixSymbol::monomial(const CMatrix& c, int degree) {
  MatrixSymbol s(c.rows(), c.cols(), degree, degree);
  s.at(degree) = c;
  return s;
}

MatrixSymbol MatrixSymbol::identity(Index n) { return constant(CMatrix::Identity(n, n)); }

MatrixSymbol MatrixSymbol::zero(Index rows, Index cols) { return MatrixSymbol(rows, cols, 0, 0); }

MatrixSymbol MatrixSymbol::scalar(const std::vector<cplx>& coeffs, int min_deg) {
  if (coeffs.empty()) return zero(1, 1);
  MatrixSymbol s(1, 1, min_deg, min_deg + static_cast<int>(coeffs.size()) - 1);
  for (size_t i = 0; i < coeffs.size(); ++i) s.at(min_deg + static_cast<int>(i))(0, 0) = coeffs[i];
  return s;
}

MatrixSymbol MatrixSymbol::diagonal(const std::vector<MatrixSymbol>& entries) {
  const auto n = static_cast<Index>(entries.size());
  std::vector<std::vector<MatrixSymbol>> grid(entries.size());
  for (Index i = 0; i < n; ++i) {
    if (entries[i].rows() != 1 || entries[i].cols() != 1)
      throw DimensionError("diagonal entries must be scalar symbols");
    for (Index j = 0; j < n; ++j) grid[i].push_back(i == j ? entries[i] : zero(1, 1));
  }
  return blocks(grid);
}

MatrixSymbol MatrixSymbol::blocks(const std::vector<std::vector<MatrixSymbol>>& grid) {
  if (grid.empty() || grid.front().empty()) throw DimensionError("empty block grid");
  const size_t br = grid.size();
  const size_t bc = grid.front().size();
  std::vector<Index> row_sizes(br), col_sizes(bc);
  int lo = 0, hi = 0;
  bool first = true;
  for (size_t i = 0; i < br; ++i) {
    if (grid[i].size() != bc) throw DimensionError("ragged block grid");
    for (size_t j = 0; j < bc; ++j) {
      const auto& b = grid[i][j];
      if (j == 0) row_sizes[i] = b.rows();
      if (i == 0) col_sizes[j] = b.cols();
      if (b.rows() != row_sizes[i] || b.cols() != col_sizes[j])
        throw DimensionError("inconsistent block shapes");
      lo = first ? b.min_deg() : std::min(lo, b.min_deg());
      hi = first ? b.max_deg() : std::max(hi, b.max_deg());
      first = false;
    }
  }
  Index rows = 0, cols = 0;
  for (auto r : row_sizes) rows += r;
  for (auto c : col_sizes) cols += c;
  MatrixSymbol out(rows, cols, lo, hi);
  for (int k = lo; k <= hi; ++k) {
    Index r0 = 0;
    for (size_t i = 0; i < br; ++i) {
      Index c0 = 0;
      for (size_t j = 0; j < bc; ++j) {
        out.at(k).block(r0, c0, row_sizes[i], col_sizes[j]) = grid[i][j].coeff(k);
        c0 += col_sizes[j];
      }
      r0 += row_sizes[i];
    }
  }
  return out;
}

CMatrix MatrixSymbol::coeff(int k) const {
  if (k < min_deg_ || k > max_deg_) return CMatrix::Zero(rows_, cols_);
  return coeffs_[static_cast<size_t>(k - min_deg_)];
}

CMatrix& MatrixSymbol::at(int k) {
  if (k < min_deg_ || k > max_deg_) throw std::out_of_range("degree outside stored range");
  return coeffs_[static_cast<size_t>(k - min_deg_)];
}

const CMatrix& MatrixSymbol::at(int k) const {
  if (k < min_deg_ || k > max_deg_) throw std::out_of_range("degree outside stored range");
  return coeffs_[static_cast<size_t>(k - min_deg_)];
}

MatrixSymbol MatrixSymbol::entry(Index i, Index j) const {
  MatrixSymbol out(1, 1, min_deg_, max_deg_);
  for (int k = min_deg_; k <= max_deg_; ++k) out.at(k)(0, 0) = at(k)(i, j);
  return out;
}

MatrixSymbol MatrixSymbol::column(Index j) const {
  MatrixSymbol out(rows_, 1, min_deg_, max_deg_);
  for (int k = min_deg_; k <= max_deg_; ++k) out.at(k) = at(k).col(j);
  return out;
}

MatrixSymbol MatrixSymbol::window(int lo, int hi) const {
  MatrixSymbol out(rows_, cols_, lo, hi);
  for (int k = std::max(lo, min_deg_); k <= std::min(hi, max_deg_); ++k) out.at(k) = at(k);
  return out;
}

MatrixSymbol MatrixSymbol::truncated(int hi) const {
  if (hi < min_deg_) return MatrixSymbol(rows_, cols_, hi, hi);
  return window(min_deg_, hi);
}

MatrixSymbol MatrixSymbol::trimmed(double tol) const {
  int lo = min_deg_, hi = max_deg_;
  while (lo < hi && at(lo).norm() <= tol) ++lo;
  while (hi > lo && at(hi).norm() <= tol) --hi;
  if (lo == hi && at(lo).norm() <= tol) return MatrixSymbol(rows_, cols_, 0, 0);
  return window(lo, hi);
}

MatrixSymbol MatrixSymbol::transpose() const {
  MatrixSymbol out(cols_, rows_, min_deg_, max_deg_);
  for (int k = min_deg_; k <= max_deg_; ++k) out.at(k) = at(k).transpose();
  return out;
}

double MatrixSymbol::l2_norm_squared() const {
  double s = 0.0;
  for (const auto& c : coeffs_) s += c.squaredNorm();
  return s;
}

double MatrixSymbol::l2_norm() const { return std::sqrt(l2_norm_squared()); }

double MatrixSymbol::max_coeff_diff(const MatrixSymbol& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("shape mismatch");
  double worst = 0.0;
  for (int k = std::min(min_deg_, other.min_deg_); k <= std::max(max_deg_, other.max_deg_); ++k) {
    CMatrix d = coeff(k) - other.coeff(k);
    worst = std::max(worst, d.cwiseAbs().maxCoeff());
  }
  return worst;
}

MatrixSymbol& MatrixSymbol::operator+=(const MatrixSymbol& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("shape mismatch in +");
  if (other.min_deg_ < min_deg_ || other.max_deg_ > max_deg_)
    *this = window(std::min(min_deg_, other.min_deg_), std::max(max_deg_, other.max_deg_));
  for (int k = other.min_deg_; k <= other.max_deg_; ++k) at(k) += other.at(k);
  return *this;
}

MatrixSymbol& MatrixSymbol::operator-=(const MatrixSymbol& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("shape mismatch in -");
  if (other.min_deg_ < min_deg_ || other.max_deg_ > max_deg_)
    *this = window(std::min(min_deg_, other.min_deg_), std::max(max_deg_, other.max_deg_));
  for (int k = other.min_deg_; k <= other.max_deg_; ++k) at(k) -= other.at(k);
  return *this;
}

MatrixSymbol& MatrixSymbol::operator*=(cplx s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

MatrixSymbol operator+(MatrixSymbol a, const MatrixSymbol& b) { return a += b; }
MatrixSymbol operator-(MatrixSymbol a, const MatrixSymbol& b) { return a -= b; }
MatrixSymbol operator*(cplx s, MatrixSymbol a) { return a *= s; }
MatrixSymbol operator-(MatrixSymbol a) { return a *= cplx(-1.0); }

MatrixSymbol operator*(const CMatrix& c, const MatrixSymbol& a) {
  if (c.cols() != a.rows()) throw DimensionError("constant * symbol shape mismatch");
  MatrixSymbol out(c.rows(), a.cols(), a.min_deg(), a.max_deg());
  for (int k = a.min_deg(); k <= a.max_deg(); ++k) out.at(k) = c * a.at(k);
  return out;
}

MatrixSymbol operator*(const MatrixSymbol& a, const CMatrix& c) {
  if (a.cols() != c.rows()) throw DimensionError("symbol * constant shape mismatch");
  MatrixSymbol out(a.rows(), c.cols(), a.min_deg(), a.max_deg());
  for (int k = a.min_deg(); k <= a.max_deg(); ++k) out.at(k) = a.at(k) * c;
  return out;
}

MatrixSymbol symbol_mul(const MatrixSymbol& a, const MatrixSymbol& b) {
  return symbol_mul_truncated(a, b, a.max_deg() + b.max_deg());
}

MatrixSymbol symbol_mul_truncated(const MatrixSymbol& a, const MatrixSymbol& b,
                                  int max_degree) {
  if (a.cols() != b.rows()) throw DimensionError("symbol_mul: a.cols != b.rows");
  const int lo = a.min_deg() + b.min_deg();
  const int hi = std::min(a.max_deg() + b.max_deg(), max_degree);
  if (hi < lo) return MatrixSymbol(a.rows(), b.cols(), lo, lo);
  MatrixSymbol out(a.rows(), b.cols(), lo, hi);
  for (int i = a.min_deg(); i <= a.max_deg(); ++i) {
    const CMatrix& ai = a.at(i);
    if (ai.isZero(0.0)) continue;
    const int jmax = std::min(b.max_deg(), hi - i);
    for (int j = b.min_deg(); j <= jmax; ++j) out.at(i + j).noalias() += ai * b.at(j);
  }
  return out;
}

MatrixSymbol adjoint_flip(const MatrixSymbol& a) {
  MatrixSymbol out(a.cols(), a.rows(), -a.max_deg(), -a.min_deg());
  for (int k = a.min_deg(); k <= a.max_deg(); ++k) out.at(-k) = a.at(k).adjoint();
  return out;
}

MatrixSymbol riesz_project(const MatrixSymbol& a, Projection side) {
  if (side == Projection::plus) {
    if (a.max_deg() < 0) return MatrixSymbol(a.rows(), a.cols(), 0, 0);
    return a.window(std::max(0, a.min_deg()), a.max_deg());
  }
  if (a.min_deg() >= 0) return MatrixSymbol(a.rows(), a.cols(), -1, -1);
  return a.window(a.min_deg(), std::min(-1, a.max_deg()));
}

CMatrix eval(const MatrixSymbol& a, cplx z) {
  const double r = std::abs(z);
  if (r > 1.0 + 1e-12) throw PreconditionError("eval: |z| > 1");
  if (a.min_deg() < 0 && std::abs(r - 1.0) > 1e-12)
    throw PreconditionError("eval: Laurent symbol evaluated off the circle");
  CMatrix acc = CMatrix::Zero(a.rows(), a.cols());
  for (int k = a.max_deg(); k >= std::max(0, a.min_deg()); --k) acc = acc * z + a.at(k);
  if (a.min_deg() < 0) {
    // co-analytic part in w = 1/z, Horner from the most negative degree
    const cplx w = 1.0 / z;
    CMatrix neg = CMatrix::Zero(a.rows(), a.cols());
    for (int k = a.min_deg(); k <= -1; ++k) neg = neg * w + a.coeff(k);
    acc += neg * w;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// HardyElement

HardyElement::HardyElement(Index dim, int degree)
    : dim_(dim), coeffs_(static_cast<size_t>(degree + 1), CVector::Zero(dim)) {
  if (dim <= 0 || degree < 0) throw DimensionError("HardyElement needs dim > 0, degree >= 0");
}

HardyElement::HardyElement(std::vector<CVector> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw DimensionError("HardyElement needs at least one coefficient");
  dim_ = coeffs_.front().size();
  for (const auto& c : coeffs_)
    if (c.size() != dim_) throw DimensionError("HardyElement coefficients differ in size");
}

HardyElement HardyElement::from_stacked(const CVector& stacked, Index dim) {
  if (dim <= 0 || stacked.size() % dim != 0 || stacked.size() == 0)
    throw DimensionError("stacked vector length is not a multiple of dim");
  const int n = static_cast<int>(stacked.size() / dim);
  HardyElement f(dim, n - 1);
  for (int k = 0; k < n; ++k) f.coeffs_[static_cast<size_t>(k)] = stacked.segment(k * dim, dim);
  return f;
}

HardyElement HardyElement::from_symbol(const MatrixSymbol& a, Index col) {
  if (!a.is_analytic()) throw PreconditionError("HardyElement from a non-analytic symbol");
  HardyElement f(a.rows(), std::max(0, a.max_deg()));
  for (int k = a.min_deg(); k <= a.max_deg(); ++k) f.coeffs_[static_cast<size_t>(k)] = a.at(k).col(col);
  return f;
}

HardyElement HardyElement::constant(const CVector& u) { return HardyElement(std::vector<CVector>{u}); }

CVector HardyElement::stacked() const { return stacked(degree()); }

CVector HardyElement::stacked(int n) const {
  CVector out = CVector::Zero(dim_ * (n + 1));
  for (int k = 0; k <= std::min(n, degree()); ++k) out.segment(k * dim_, dim_) = coeffs_[static_cast<size_t>(k)];
  return out;
}

MatrixSymbol HardyElement::as_symbol() const {
  MatrixSymbol s(dim_, 1, 0, degree());
  for (int k = 0; k <= degree(); ++k) s.at(k) = coeffs_[static_cast<size_t>(k)];
  return s;
}

CVector HardyElement::eval(cplx z) const {
  CVector acc = CVector::Zero(dim_);
  for (int k = degree(); k >= 0; --k) acc = acc * z + coeffs_[static_cast<size_t>(k)];
  return acc;
}

double HardyElement::norm() const {
  double s = 0.0;
  for (const auto& c : coeffs_) s += c.squaredNorm();
  return std::sqrt(s);
}

HardyElement HardyElement::backward_shift() const {
  if (degree() == 0) return HardyElement(dim_, 0);
  return HardyElement(std::vector<CVector>(coeffs_.begin() + 1, coeffs_.end()));
}

HardyElement HardyElement::truncated(int n) const {
  HardyElement out(dim_, n);
  for (int k = 0; k <= std::min(n, degree()); ++k) out.coeffs_[static_cast<size_t>(k)] = coeffs_[static_cast<size_t>(k)];
  return out;
}

cplx inner(const HardyElement& f, const HardyElement& g) {
  if (f.dim() != g.dim()) throw DimensionError("inner: dimension mismatch");
  cplx s = 0.0;
  for (int k = 0; k <= std::min(f.degree(), g.degree()); ++k) s += g.coeff(k).dot(f.coeff(k));
  return s;
}

HardyElement apply_symbol(const MatrixSymbol& a, const HardyElement& f, int max_degree) {
  MatrixSymbol prod = riesz_project(symbol_mul_truncated(a, f.as_symbol(), max_degree), Projection::plus);
  HardyElement out(a.rows(), max_degree);
  for (int k = 0; k <= std::min(max_degree, prod.max_deg()); ++k) out.coeff(k) = prod.coeff(k).col(0);
  return out;
}

// ---------------------------------------------------------------------------
// Power series

MatrixSymbol series_left_divide(const MatrixSymbol& p, const MatrixSymbol& q, int n) {
  if (!p.is_analytic() || !q.is_analytic()) throw PreconditionError("series division needs analytic symbols");
  if (!p.is_square() || p.rows() != q.rows()) throw DimensionError("series division shape mismatch");
  Eigen::PartialPivLU<CMatrix> lu(p.coeff(0));
  const double cond_guard = p.coeff(0).norm() * 1e-14;
  if (std::abs(lu.determinant()) <= std::pow(cond_guard, static_cast<double>(p.rows())) ||
      lu.rcond() < 1e-14)
    throw PreconditionError("series division: leading coefficient is singular");
  MatrixSymbol x(q.rows(), q.cols(), 0, n);
  const int pmax = p.max_deg();
  for (int k = 0; k <= n; ++k) {
    CMatrix rhs = q.coeff(k);
    for (int j = 1; j <= std::min(k, pmax); ++j) rhs.noalias() -= p.at(j) * x.at(k - j);
    x.at(k) = lu.solve(rhs);
  }
  return x;
}

MatrixSymbol series_inverse(const MatrixSymbol& p, int n) {
  return series_left_divide(p, MatrixSymbol::identity(p.rows()), n);
}

}  // namespace hardy
