#pragma once

#include <functional>
#include <vector>

#include "hardy/types.hpp"

namespace hardy {

/// Matrix-valued Laurent polynomial  a(z) = sum_{k=min_deg}^{max_deg} a_k z^k.
///
/// Coefficients outside [min_deg, max_deg] are zero. All coefficient matrices
/// share the shape rows x cols. A symbol with min_deg >= 0 is analytic in the
/// disc; otherwise it is only defined on the circle.
class MatrixSymbol {
 public:
  MatrixSymbol() : MatrixSymbol(1, 1, 0, 0) {}
  MatrixSymbol(Index rows, Index cols, int min_deg, int max_deg);

  static MatrixSymbol constant(const CMatrix& c);
  static MatrixSymbol monomial(const CMatrix& c, int degree);
  static MatrixSymbol identity(Index n);
  static MatrixSymbol zero(Index rows, Index cols);
  /// Scalar Laurent polynomial with coefficients starting at `min_deg`.
  static MatrixSymbol scalar(const std::vector<cplx>& coeffs, int min_deg = 0);
  /// Diagonal symbol built from scalar (1x1) symbols.
  static MatrixSymbol diagonal(const std::vector<MatrixSymbol>& entries);
  /// Block matrix of symbols; every row of blocks must have consistent shapes.
  static MatrixSymbol blocks(const std::vector<std::vector<MatrixSymbol>>& grid);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  int min_deg() const { return min_deg_; }
  int max_deg() const { return max_deg_; }
  bool is_analytic() const { return min_deg_ >= 0; }
  bool is_square() const { return rows_ == cols_; }

  /// Coefficient at degree k; zero outside the stored range.
  CMatrix coeff(int k) const;
  /// Mutable access; k must lie inside the stored range.
  CMatrix& at(int k);
  const CMatrix& at(int k) const;

  /// Entry (i, j) as a 1x1 symbol.
  MatrixSymbol entry(Index i, Index j) const;
  /// Column j as an rows x 1 symbol.
  MatrixSymbol column(Index j) const;

  /// Same function restricted to degrees [lo, hi] (zero padded if needed).
  MatrixSymbol window(int lo, int hi) const;
  /// Degrees above `hi` dropped; lower range untouched.
  MatrixSymbol truncated(int hi) const;
  /// Removes leading/trailing coefficients whose Frobenius norm is <= tol.
  MatrixSymbol trimmed(double tol = 0.0) const;

  MatrixSymbol transpose() const;

  /// sum_k ||a_k||_F^2, i.e. the squared L^2(T) norm.
  double l2_norm_squared() const;
  double l2_norm() const;
  /// max_k ||a_k - b_k||_max over the union of both ranges.
  double max_coeff_diff(const MatrixSymbol& other) const;

  MatrixSymbol& operator+=(const MatrixSymbol& other);
  MatrixSymbol& operator-=(const MatrixSymbol& other);
  MatrixSymbol& operator*=(cplx s);

 private:
  Index rows_;
  Index cols_;
  int min_deg_;
  int max_deg_;
  std::vector<CMatrix> coeffs_;
};

MatrixSymbol operator+(MatrixSymbol a, const MatrixSymbol& b);
MatrixSymbol operator-(MatrixSymbol a, const MatrixSymbol& b);
MatrixSymbol operator*(cplx s, MatrixSymbol a);
MatrixSymbol operator-(MatrixSymbol a);
/// Left/right multiplication by a constant matrix.
MatrixSymbol operator*(const CMatrix& c, const MatrixSymbol& a);
MatrixSymbol operator*(const MatrixSymbol& a, const CMatrix& c);

/// Exact Cauchy product. Throws DimensionError when a.cols() != b.rows().
MatrixSymbol symbol_mul(const MatrixSymbol& a, const MatrixSymbol& b);

/// Product truncated to degrees <= max_degree (cheaper when both factors
/// are long series).
MatrixSymbol symbol_mul_truncated(const MatrixSymbol& a, const MatrixSymbol& b,
                                  int max_degree);

/// Boundary adjoint: coefficient k of the result is a_{-k}^H.
MatrixSymbol adjoint_flip(const MatrixSymbol& a);

enum class Projection { plus, minus };

/// Riesz projection: `plus` keeps degrees >= 0, `minus` keeps degrees < 0.
MatrixSymbol riesz_project(const MatrixSymbol& a, Projection side);

/// Evaluates the symbol at z. Interior points are only allowed for analytic
/// symbols; throws PreconditionError otherwise or when |z| > 1.
CMatrix eval(const MatrixSymbol& a, cplx z);

/// Analytic vector polynomial f(z) = sum_{k=0}^{N} f_k z^k with f_k in C^m.
class HardyElement {
 public:
  HardyElement() = default;
  HardyElement(Index dim, int degree);
  explicit HardyElement(std::vector<CVector> coeffs);

  /// Reads a stacked coefficient vector laid out degree-major
  /// (entry k*dim + i holds component i of f_k).
  static HardyElement from_stacked(const CVector& stacked, Index dim);
  /// Column `col` of an analytic symbol.
  static HardyElement from_symbol(const MatrixSymbol& a, Index col = 0);
  /// Constant vector u.
  static HardyElement constant(const CVector& u);

  Index dim() const { return dim_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const CVector& coeff(int k) const { return coeffs_.at(static_cast<size_t>(k)); }
  CVector& coeff(int k) { return coeffs_.at(static_cast<size_t>(k)); }

  CVector stacked() const;
  /// Stacked vector padded with zeros (or cut) to degree n.
  CVector stacked(int n) const;
  MatrixSymbol as_symbol() const;

  CVector eval(cplx z) const;
  double norm() const;
  /// Backward shift S*: (f - f(0))/z.
  HardyElement backward_shift() const;
  HardyElement truncated(int n) const;

 private:
  Index dim_ = 0;
  std::vector<CVector> coeffs_;
};

/// H^2 inner product <f, g> = sum_k g_k^H f_k (linear in the first slot).
cplx inner(const HardyElement& f, const HardyElement& g);

/// p_+(a f) truncated to degree `max_degree`.
HardyElement apply_symbol(const MatrixSymbol& a, const HardyElement& f, int max_degree);

/// Solves P X = Q as formal power series up to degree n by the recursive
/// coefficient solve X_k = P_0^{-1}(Q_k - sum_{j>=1} P_j X_{k-j}).
/// Throws PreconditionError when P_0 is singular.
MatrixSymbol series_left_divide(const MatrixSymbol& p, const MatrixSymbol& q, int n);

/// Power-series inverse of an analytic square symbol to degree n.
MatrixSymbol series_inverse(const MatrixSymbol& p, int n);

}  // namespace hardy
