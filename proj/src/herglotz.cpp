#include "hardy/herglotz.hpp"

#include <algorithm>
#include <cmath>

namespace hardy {

double hermitian_defect(const MatrixSymbol& density) {
  if (!density.is_square()) throw DimensionError("density must be square");
  const int top = std::max(density.max_deg(), -density.min_deg());
  double worst = 0.0;
  for (int k = 0; k <= top; ++k) {
    CMatrix d = density.coeff(-k) - density.coeff(k).adjoint();
    worst = std::max(worst, d.norm());
  }
  return worst;
}

namespace {

void check_density(const MatrixSymbol& density, double tol) {
  if (!density.is_square()) throw PreconditionError("herglotz: density must be square");
  const double scale = std::max(1.0, density.l2_norm());
  if (hermitian_defect(density) > tol * scale)
    throw PreconditionError("herglotz: density is not Hermitian-valued");
}

}  // namespace

MatrixSymbol herglotz_taylor(const MatrixSymbol& density, int degree, double tol) {
  check_density(density, tol);
  if (degree < 0) throw DimensionError("herglotz_taylor: negative degree");
  MatrixSymbol f(density.rows(), density.cols(), 0, degree);
  f.at(0) = density.coeff(0);
  for (int k = 1; k <= degree; ++k) f.at(k) = 2.0 * density.coeff(k);
  return f;
}

CMatrix herglotz(const MatrixSymbol& density, cplx z, double tol) {
  if (std::abs(z) >= 1.0) throw PreconditionError("herglotz: |z| must be < 1");
  return eval(herglotz_taylor(density, std::max(0, density.max_deg()), tol), z);
}

MatrixSymbol cayley(const MatrixSymbol& f, int degree) {
  if (!f.is_analytic()) throw PreconditionError("cayley: F must be analytic");
  if (!f.is_square()) throw DimensionError("cayley: F must be square");
  const auto id = MatrixSymbol::identity(f.rows());
  return series_left_divide(f + id, f - id, degree);
}

}  // namespace hardy
