#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "hardy/herglotz.hpp"
#include "hardy/sampling.hpp"
#include "hardy/symbol.hpp"
#include "hardy/symbol_json.hpp"

using namespace hardy;

namespace {

const double s2 = std::sqrt(2.0);

MatrixSymbol garcia_z() {
  // 1/2 [[1+z, -(1-z)], [z-1, 1+z]]
  MatrixSymbol u(2, 2, 0, 1);
  u.at(0) << 0.5, -0.5, -0.5, 0.5;
  u.at(1) << 0.5, 0.5, 0.5, 0.5;
  return u;
}

MatrixSymbol random_symbol(std::mt19937& rng, Index r, Index c, int lo, int hi) {
  std::normal_distribution<double> nd;
  MatrixSymbol a(r, c, lo, hi);
  for (int k = lo; k <= hi; ++k)
    for (Index i = 0; i < r; ++i)
      for (Index j = 0; j < c; ++j) a.at(k)(i, j) = cplx(nd(rng), nd(rng));
  return a;
}

}  // namespace

TEST_CASE("symbol_mul examples") {
  const auto zi = MatrixSymbol::monomial(CMatrix::Identity(2, 2), 1);
  const auto p = symbol_mul(zi, zi);
  CHECK(p.min_deg() == 2);
  CHECK(p.max_deg() == 2);
  CHECK(p.max_coeff_diff(MatrixSymbol::monomial(CMatrix::Identity(2, 2), 2)) == 0.0);

  const auto u = garcia_z();
  const auto uu = symbol_mul(u, adjoint_flip(u));
  CHECK(uu.max_coeff_diff(MatrixSymbol::identity(2)) < 1e-15);

  const auto a = MatrixSymbol::diagonal({MatrixSymbol::scalar({1.0}, -2), MatrixSymbol::scalar({1.0})});
  const auto b = MatrixSymbol::diagonal({MatrixSymbol::scalar({1.0}, 2), MatrixSymbol::scalar({1.0})});
  CHECK(symbol_mul(a, b).max_coeff_diff(MatrixSymbol::identity(2)) == 0.0);

  CHECK_THROWS_AS(symbol_mul(MatrixSymbol(2, 3, 0, 0), MatrixSymbol(2, 2, 0, 0)), DimensionError);
}

TEST_CASE("adjoint_flip examples") {
  auto a = MatrixSymbol::scalar({cplx(1, 2), cplx(3, -1)});
  auto f = adjoint_flip(a);
  CHECK(f.min_deg() == -1);
  CHECK(f.max_deg() == 0);
  CHECK(f.coeff(0)(0, 0) == cplx(1, -2));
  CHECK(f.coeff(-1)(0, 0) == cplx(3, 1));

  auto zb2 = MatrixSymbol::scalar({1.0}, -2);
  CHECK(adjoint_flip(zb2).max_coeff_diff(MatrixSymbol::scalar({0.0, 0.0, 1.0})) == 0.0);

  auto g = MatrixSymbol::diagonal({MatrixSymbol::scalar({1 / s2, 1 / s2}), MatrixSymbol::scalar({1 / s2, -1 / s2})});
  auto gf = adjoint_flip(g);
  CHECK(gf.coeff(-1)(0, 0) == cplx(1 / s2));
  CHECK(gf.coeff(-1)(1, 1) == cplx(-1 / s2));
  CHECK(gf.coeff(0)(1, 1) == cplx(1 / s2));
}

TEST_CASE("riesz_project examples") {
  auto a = MatrixSymbol::scalar({1.0, 1.0, 1.0}, -1);
  CHECK(riesz_project(a, Projection::plus).max_coeff_diff(MatrixSymbol::scalar({1.0, 1.0})) == 0.0);
  CHECK(riesz_project(a, Projection::minus).max_coeff_diff(MatrixSymbol::scalar({1.0}, -1)) == 0.0);

  auto u = MatrixSymbol::scalar({0.0, 1.0});
  auto b = MatrixSymbol::scalar({0.0, 0.0, 0.5});
  auto p = riesz_project(symbol_mul(adjoint_flip(u), b), Projection::plus);
  CHECK(p.max_coeff_diff(MatrixSymbol::scalar({0.0, 0.5})) == 0.0);
}

TEST_CASE("eval examples") {
  // z/(2+z) truncated at degree 64
  auto b = taylor_from_boundary([](cplx z) { return z / (2.0 + z); }, 64, 512);
  CHECK(std::abs(eval(b, 0.0)(0, 0)) < 1e-15);
  auto f = MatrixSymbol::scalar({1.0, 1.0});
  CHECK(std::abs(eval(f, cplx(0, 1))(0, 0) - cplx(1, 1)) < 1e-15);
  CHECK((eval(garcia_z(), 1.0) - CMatrix::Identity(2, 2)).norm() < 1e-15);
  CHECK_THROWS_AS(eval(MatrixSymbol::scalar({1.0}, -1), 0.5), PreconditionError);
  CHECK_THROWS_AS(eval(f, 1.5), PreconditionError);
  CHECK(std::abs(eval(MatrixSymbol::scalar({2.0, 1.0}, -1), cplx(0, 1))(0, 0) - cplx(1, -2)) < 1e-15);
}

TEST_CASE("herglotz examples") {
  auto f = herglotz_taylor(MatrixSymbol::identity(3), 8);
  CHECK(f.max_coeff_diff(MatrixSymbol::identity(3)) == 0.0);

  // 1 + cos t = z-bar/2 + 1 + z/2, from a 4096 point quadrature
  auto density = to_symbol(
      [] {
        SampledSymbol s{1, 1, {}};
        for (int j = 0; j < 4096; ++j) {
          CMatrix v(1, 1);
          v(0, 0) = 1.0 + std::cos(std::arg(grid_point(j, 4096)));
          s.values.push_back(v);
        }
        return s;
      }(),
      -8, 8);
  auto fh = herglotz_taylor(density, 8);
  CHECK(fh.max_coeff_diff(MatrixSymbol::scalar({1.0, 1.0})) < 1e-14);
  CHECK(std::abs(herglotz(density, 0.3)(0, 0) - 1.3) < 1e-14);
  CHECK_THROWS_AS(herglotz(density, 1.0), PreconditionError);
  CHECK_THROWS_AS(herglotz_taylor(MatrixSymbol::scalar({1.0, 0.0, 1.0}, -1) + MatrixSymbol::scalar({cplx(0, 1)}, 1), 4),
                  PreconditionError);

  // Example 1's G with unit columns: ||(1 + z)^{1/2}||^2 = 4/pi
  const double c1 = std::sqrt(std::numbers::pi / 4.0);
  auto g = taylor_from_boundary(
      [c1](cplx z) {
        CMatrix m = CMatrix::Zero(2, 2);
        m(0, 0) = c1 * std::sqrt(1.0 + z);
        m(1, 1) = c1 * std::sqrt(1.0 - z);
        return m;
      },
      2, 2, 256, 4096);
  auto gram = symbol_mul(adjoint_flip(g), g);
  CHECK((herglotz_taylor(gram, 4).coeff(0) - CMatrix::Identity(2, 2)).norm() < 1e-3);
}

TEST_CASE("cayley examples") {
  CHECK(cayley(MatrixSymbol::identity(2), 10).l2_norm() == 0.0);
  auto b = cayley(MatrixSymbol::scalar({1.0, 1.0}), 64);
  for (int k = 1; k <= 64; ++k) CHECK(std::abs(b.coeff(k)(0, 0) - std::pow(-0.5, k - 1) * 0.5) < 1e-15);
  CHECK(std::abs(b.coeff(0)(0, 0)) == 0.0);
  CHECK_THROWS_AS(cayley(MatrixSymbol::scalar({-1.0, 1.0}), 4), PreconditionError);
}

TEST_CASE("matrix_pointwise examples") {
  auto c = MatrixSymbol::constant(0.75 * CMatrix::Identity(2, 2));
  auto r = matrix_pointwise(c, PointwiseKind::sqrt_psd, 16);
  for (const auto& v : r.values) CHECK((v - std::sqrt(0.75) * CMatrix::Identity(2, 2)).norm() < 1e-15);

  auto pol = matrix_polar(sample(garcia_z(), 32));
  for (const auto& v : pol.positive.values) CHECK((v - CMatrix::Identity(2, 2)).norm() < 1e-14);

  CMatrix bm = CMatrix::Zero(2, 2);
  bm(0, 0) = 0.5;
  bm(1, 1) = -0.5;
  auto phi = MatrixSymbol::identity(2) - MatrixSymbol::constant(bm.adjoint() * bm);
  auto lg = matrix_pointwise(phi, PointwiseKind::log_pd, 16);
  auto back = matrix_pointwise(lg, PointwiseKind::exp);
  CHECK(sup_distance(back, sample(phi, 16)) < 1e-12);

  CHECK_THROWS_AS(matrix_pointwise(MatrixSymbol::constant(-CMatrix::Identity(2, 2)), PointwiseKind::sqrt_psd, 8),
                  PreconditionError);
  CHECK_THROWS_AS(matrix_polar(sample(MatrixSymbol::scalar({0.0, 0.0}), 8)), PreconditionError);
}

TEST_CASE("property: involution and projection algebra") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = random_symbol(rng, 2, 3, -4, 5);
    CHECK(adjoint_flip(adjoint_flip(a)).max_coeff_diff(a) == 0.0);
    auto p = riesz_project(a, Projection::plus);
    CHECK(riesz_project(p, Projection::plus).max_coeff_diff(p) == 0.0);
    CHECK((p + riesz_project(a, Projection::minus)).max_coeff_diff(a) == 0.0);
  }
}

TEST_CASE("property: multiplicativity on the grid") {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    auto a = random_symbol(rng, 2, 2, -3, 6);
    auto b = random_symbol(rng, 2, 1, -2, 7);
    const int K = 64;
    auto lhs = sample(symbol_mul(a, b), K);
    auto rhs = pointwise_mul(sample(a, K), sample(b, K));
    CHECK(sup_distance(lhs, rhs) < 1e-12 * (1.0 + sup_norm(rhs)));
    // grid evaluation agrees with coefficient summation
    for (int j = 0; j < K; j += 7) CHECK((eval(a, grid_point(j, K)) - sample(a, K).values[j]).norm() < 1e-12);
    CHECK(to_symbol(sample(a, K), -3, 6).max_coeff_diff(a) < 1e-13);
  }
}

TEST_CASE("property: Herglotz positivity and Cayley bound") {
  std::vector<MatrixSymbol> densities;
  densities.push_back(MatrixSymbol::scalar({0.5, 1.0, 0.5}, -1));
  CMatrix h(2, 2);
  h << 1.0, 0.2, 0.2, 0.5;
  MatrixSymbol d2(2, 2, -1, 1);
  d2.at(0) = CMatrix::Identity(2, 2);
  d2.at(1) = 0.25 * h;
  d2.at(-1) = 0.25 * h.adjoint();
  densities.push_back(d2);
  std::mt19937 rng(13);
  std::normal_distribution<double> nd;
  for (const auto& d : densities) {
    auto f = herglotz_taylor(d, 16);
    double worst = 0.0;
    for (double rho : {0.0, 0.5, 0.95})
      for (int j = 0; j < 32; ++j) {
        const cplx z = rho * grid_point(j, 32);
        const CMatrix fz = eval(f, z);
        for (int t = 0; t < 32; ++t) {
          CVector u(d.rows());
          for (Index i = 0; i < u.size(); ++i) u(i) = cplx(nd(rng), nd(rng));
          u.normalize();
          worst = std::min(worst, u.dot(fz * u).real());
        }
      }
    CHECK(worst >= -1e-10);
    auto b = cayley(f, 64);
    CHECK(sup_norm(sample(b, 256)) <= 1.0 + 1e-9);
  }
}

TEST_CASE("HardyElement basics") {
  CVector s(6);
  s << 1, 2, 3, 4, 5, 6;
  auto f = HardyElement::from_stacked(s, 2);
  CHECK(f.degree() == 2);
  CHECK(std::abs(f.norm() - s.norm()) < 1e-15);
  CHECK((f.eval(0.0) - f.coeff(0)).norm() == 0.0);
  CHECK(f.backward_shift().coeff(0)(0) == cplx(3));
  CHECK(std::abs(inner(f, f) - cplx(s.squaredNorm())) < 1e-12);
  CHECK_THROWS_AS(HardyElement::from_stacked(s, 4), DimensionError);
}

TEST_CASE("series division") {
  auto p = MatrixSymbol::scalar({2.0, 1.0});
  auto inv = series_inverse(p, 20);
  auto prod = symbol_mul_truncated(p, inv, 20);
  CHECK(prod.max_coeff_diff(MatrixSymbol::identity(1).window(0, 20)) < 1e-15);
}

TEST_CASE("symbol json roundtrip") {
  std::mt19937 rng(14);
  auto a = random_symbol(rng, 2, 3, -2, 3);
  auto b = symbol_from_json(symbol_to_json(a));
  CHECK(b.max_coeff_diff(a) == 0.0);
  CHECK(b.min_deg() == -2);
  nlohmann::json bad = symbol_to_json(a);
  bad["coeffs"].erase(0);
  CHECK_THROWS_AS(symbol_from_json(bad), PreconditionError);
}
