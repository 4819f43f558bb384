#pragma once

#include <functional>
#include <vector>

#include "hardy/symbol.hpp"

namespace hardy {

/// Boundary grid point xi_j = exp(2 pi i (j + 1/2) / K).
///
/// The half-sample offset keeps z = 1 and z = -1 off the grid, so boundary
/// ratios such as (1 + conj z)/(1 + z) are always formed from nonzero values.
cplx grid_point(int j, int grid_size);

/// A matrix function known only through its values on the K-point grid.
struct SampledSymbol {
  Index rows = 0;
  Index cols = 0;
  std::vector<CMatrix> values;

  int grid_size() const { return static_cast<int>(values.size()); }
};

/// Values of `a` on the K-point grid (FFT; exact up to rounding).
SampledSymbol sample(const MatrixSymbol& a, int grid_size);

/// Fourier coefficients for degrees [lo, hi] from samples
/// (hi - lo + 1 <= K). Coefficients outside the window alias into it.
MatrixSymbol to_symbol(const SampledSymbol& s, int lo, int hi);

/// Degree-N Taylor truncation of an analytic function known in closed form
/// on the circle, obtained from K boundary samples.
MatrixSymbol taylor_from_boundary(const std::function<CMatrix(cplx)>& f, Index rows,
                                  Index cols, int degree, int grid_size);

/// Scalar convenience wrapper of taylor_from_boundary.
MatrixSymbol taylor_from_boundary(const std::function<cplx(cplx)>& f, int degree,
                                  int grid_size);

SampledSymbol pointwise_mul(const SampledSymbol& a, const SampledSymbol& b);
SampledSymbol pointwise_adjoint(const SampledSymbol& a);
/// Throws PreconditionError on a singular sample.
SampledSymbol pointwise_inverse(const SampledSymbol& a);
/// max_j ||a_j||_2.
double sup_norm(const SampledSymbol& a);
/// max_j ||a_j - b_j||_2.
double sup_distance(const SampledSymbol& a, const SampledSymbol& b);

enum class PointwiseKind { sqrt_psd, log_pd, exp };

/// Applies a principal-branch matrix function samplewise.
/// sqrt_psd requires Hermitian PSD samples, log_pd Hermitian PD samples;
/// exp accepts any square sample. Violations throw PreconditionError.
SampledSymbol matrix_pointwise(const SampledSymbol& a, PointwiseKind kind,
                               double tol = 1e-12);
SampledSymbol matrix_pointwise(const MatrixSymbol& a, PointwiseKind kind, int grid_size,
                               double tol = 1e-12);

/// Samplewise polar decomposition a = unitary * positive.
struct PolarSamples {
  SampledSymbol positive;  // R, Hermitian positive definite
  SampledSymbol unitary;   // A, unitary
};

/// Throws PreconditionError when a sample is singular (relative to tol).
PolarSamples matrix_polar(const SampledSymbol& a, double tol = 1e-12);

}  // namespace hardy
