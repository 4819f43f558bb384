#include "hardy/fixtures.hpp"

#include <cmath>
#include <numbers>

#include "hardy/config.hpp"
#include "hardy/sampling.hpp"

namespace hardy::fixtures {

namespace {

const double s2 = std::sqrt(2.0);
const double s3 = std::sqrt(3.0);

int grid_for(int degree, int grid_size) { return admissible_grid(degree, std::max(grid_size, 512)); }

MatrixSymbol poly(std::initializer_list<cplx> c) { return MatrixSymbol::scalar(std::vector<cplx>(c)); }

}  // namespace

MatrixSymbol z_power(int k, Index m) { return MatrixSymbol::monomial(CMatrix::Identity(m, m), k); }

MatrixSymbol garcia_real() {
  MatrixSymbol u(2, 2, 0, 1);
  u.at(0) << 0.5, -0.5, -0.5, 0.5;
  u.at(1) << 0.5, 0.5, 0.5, 0.5;
  return u;
}

MatrixSymbol garcia_complex() {
  const cplx i(0, 1);
  MatrixSymbol u(2, 2, 0, 1);
  u.at(0) << 0.5, 0.5 * i, -0.5 * i, 0.5;
  u.at(1) << 0.5, -0.5 * i, 0.5 * i, 0.5;
  return u;
}

MatrixSymbol z_garcia() { return symbol_mul(z_power(1, 2), garcia_real()); }

MatrixSymbol one_plus_z() { return poly({1 / s2, 1 / s2}); }

MatrixSymbol flagship_g(int degree, int grid_size) {
  return taylor_from_boundary([](cplx z) { return s3 / (2.0 - z * z); }, degree, grid_for(degree, grid_size));
}

MatrixSymbol flagship_g0p(int degree, int grid_size) {
  return taylor_from_boundary([](cplx z) { return s3 / (2.0 - z); }, degree, grid_for(degree, grid_size));
}

MatrixSymbol z_over_2_plus_z(int degree) {
  MatrixSymbol b(1, 1, 0, degree);
  for (int k = 1; k <= degree; ++k) b.at(k)(0, 0) = 0.5 * std::pow(-0.5, k - 1);
  return b;
}

MatrixSymbol example2_g() {
  return MatrixSymbol::diagonal({poly({1 / s2, 1 / s2}), poly({1 / s2, -1 / s2})});
}

MatrixSymbol example1_g(int degree, int grid_size) {
  const double c = std::sqrt(std::numbers::pi / 4.0);
  return taylor_from_boundary(
      [c](cplx z) {
        CMatrix m = CMatrix::Zero(2, 2);
        m(0, 0) = c * std::sqrt(1.0 + z);
        m(1, 1) = c * std::sqrt(1.0 - z);
        return m;
      },
      2, 2, degree, grid_for(degree, grid_size) * 8);
}

MatrixSymbol example3_g() {
  CMatrix e(2, 1);
  e << 1.0, 0.0;
  return MatrixSymbol::constant(e);
}

CMatrix recipe_c() {
  CMatrix c = CMatrix::Zero(2, 2);
  c(0, 0) = 0.5;
  c(1, 1) = -0.5;
  return c;
}

MatrixSymbol recipe_g0p() {
  // diagonal: (sqrt 3/2)/(1 - c) = sqrt 3 and 1/sqrt 3
  CMatrix g = CMatrix::Zero(2, 2);
  g(0, 0) = s3;
  g(1, 1) = 1.0 / s3;
  return MatrixSymbol::constant(g);
}

std::vector<NamedSymbol> pair_bs() {
  std::vector<NamedSymbol> out;
  out.push_back({"zero", MatrixSymbol::zero(1, 1)});
  out.push_back({"z2_half", poly({0.0, 0.0, 0.5})});
  out.push_back({"const_diag", MatrixSymbol::constant(recipe_c())});
  out.push_back({"z_half", poly({0.0, 0.5})});
  out.push_back({"z_plus_z2_quarter", poly({0.0, 0.25, 0.25})});
  MatrixSymbol m(2, 2, 0, 2);
  m.at(0) << 0.0, 0.125, 0.0, 0.0;
  m.at(1) << 0.25, 0.0, 0.125, 0.0;
  m.at(2) << 0.0, 0.0, 0.0, 1.0 / 6.0;
  out.push_back({"mixed_2x2", m});
  return out;
}

std::vector<NamedSymbol> pair_inners(Index m) {
  std::vector<NamedSymbol> out = {{"z", z_power(1, m)}, {"z2", z_power(2, m)}};
  if (m == 2) out.push_back({"z_garcia", z_garcia()});
  return out;
}

}  // namespace hardy::fixtures
