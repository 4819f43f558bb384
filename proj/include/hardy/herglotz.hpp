#pragma once

#include "hardy/config.hpp"
#include "hardy/symbol.hpp"

namespace hardy {

/// Herglotz integral of a Hermitian density on the circle,
///   F(z) = (1/2pi) int (e^{it} + z)/(e^{it} - z) density(e^{it}) dt,
/// evaluated through its Taylor coefficients F = d_0 + 2 sum_{k>=1} d_k z^k.
///
/// Throws PreconditionError for a non-square or non-Hermitian density or when
/// |z| >= 1.
CMatrix herglotz(const MatrixSymbol& density, cplx z, double tol = 1e-10);

/// Degree-N Taylor truncation of the Herglotz integral.
MatrixSymbol herglotz_taylor(const MatrixSymbol& density, int degree, double tol = 1e-10);

/// Checks d_{-k} = d_k^H for every k; returns the worst violation.
double hermitian_defect(const MatrixSymbol& density);

/// Cayley transform B = (F + I)^{-1}(F - I) as a degree-N power series.
/// Throws PreconditionError when F(0) + I is singular or F is not analytic.
MatrixSymbol cayley(const MatrixSymbol& f, int degree);

}  // namespace hardy
