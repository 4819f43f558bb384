#pragma once

#include <string>

#include "hardy/config.hpp"
#include "hardy/sampling.hpp"
#include "hardy/symbol.hpp"

namespace hardy {

struct InnerCertificate {
  bool inner = false;
  Index rank = 0;
  CMatrix kernel_complement;  // U^H U, constant projector
  CMatrix range_projector;    // U U^H, constant projector
  double max_deviation = 0.0;
  double det_modulus_defect = 0.0;  // max | |det U| - 1 | (full rank only)
};

/// Checks that the boundary samples of U are partial isometries with
/// constant initial and final spaces. Throws DimensionError for non-square
/// U and PreconditionError for non-analytic U.
InnerCertificate is_inner(const MatrixSymbol& u, double tol = 1e-8, int grid_size = 0);

/// [[a, -b], [theta b~, theta a~]] where x~ is the analytic representative of
/// the boundary conjugate. Preconditions are checked and reported through
/// PreconditionError naming the failing check.
MatrixSymbol garcia_inner(const MatrixSymbol& theta, const MatrixSymbol& a, const MatrixSymbol& b,
                          double tol = 1e-8);

enum class OuterVerdict { outer, not_outer, indeterminate };
const char* to_string(OuterVerdict v);

struct OuterReport {
  OuterVerdict verdict = OuterVerdict::indeterminate;
  Index rank = 0;
  CMatrix theta0;           // m x r, orthonormal columns
  MatrixSymbol g_tilde;     // r x r, G = theta0 * g_tilde
  double factor_residual = 0.0;  // max_k ||G_k - theta0 g~_k||
  double jensen_inner = 0.0;     // radius 0.99
  double jensen_outer = 0.0;     // radius 0.999
  double span_residual = 0.0;    // diagnostic only, see README
  std::string reason;
};

/// Decides whether G is outer: its coefficient span must equal range G(0),
/// and the reduced square determinant must satisfy Jensen's equality
/// log|det G~(0)| = mean log|det G~| on circles of radius 0.99 and 0.999.
OuterReport shift_span(const MatrixSymbol& g, int degree, double rank_tol = 1e-8);

struct BauerResult {
  MatrixSymbol a;                 // degree N, A(0) Hermitian positive definite
  double min_sample_eig = 0.0;    // min eigenvalue of Phi on the grid
  double reconstruction = 0.0;    // sup_grid ||A^H A - Phi||
  int blocks = 0;                 // block size of the Toeplitz moment matrix
};

/// Spectral factor A with A^H A = Phi on the circle, from the Cholesky factor
/// of the K/2-block Toeplitz moment matrix of Phi^T.
BauerResult bauer_factorize(const MatrixSymbol& phi, int degree, int grid_size);

struct ExpLogResult {
  MatrixSymbol a;            // degree N Taylor truncation
  SampledSymbol boundary;    // exp(h) on the grid, exact modulus sqrt(Phi)
};

/// exp(Herglotz(log(Phi)/2)) entrywise for diagonal Phi. Throws
/// PreconditionError for non-diagonal or non-positive input.
ExpLogResult outer_exp_log(const MatrixSymbol& phi, int degree, int grid_size);

struct DivisionResult {
  bool divisible = false;
  double defect = 0.0;          // ||p_-(U^H B)||_{L^2}
  MatrixSymbol b0;              // p_+(U^H B)
  double remultiply = 0.0;      // sup_grid ||B - U B0||
};

/// U^H B computed coefficientwise; divisible iff the co-analytic mass is at
/// most tol. U must be a certified full-rank inner function.
DivisionResult divide_inner(const MatrixSymbol& b, const MatrixSymbol& u, double tol = 1e-8);

}  // namespace hardy
