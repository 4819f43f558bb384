#include <cmath>
#include <random>

#include "doctest.h"
#include "hardy/fixtures.hpp"
#include "hardy/inner_outer.hpp"
#include "hardy/sampling.hpp"

using namespace hardy;
namespace fx = hardy::fixtures;

namespace {

const double s3 = std::sqrt(3.0);

MatrixSymbol poly(std::vector<cplx> c) { return MatrixSymbol::scalar(c); }

}  // namespace

TEST_CASE("is_inner examples") {
  auto c1 = is_inner(fx::z_power(1, 2));
  CHECK(c1.inner);
  CHECK(c1.rank == 2);

  // the 3x3 rank-2 example built from theta = z, a = (1+z)/2, b = -(1-z)/2
  auto a = poly({0.5, 0.5});
  auto b = poly({-0.5, 0.5});
  auto tb = poly({0.5, -0.5});  // theta * conj(b)
  auto ta = poly({0.5, 0.5});   // theta * conj(a)
  auto zero = MatrixSymbol::zero(1, 1);
  auto big = MatrixSymbol::blocks({{a, zero, -b}, {tb, zero, ta}, {zero, zero, zero}});
  auto c2 = is_inner(big);
  CHECK(c2.inner);
  CHECK(c2.rank == 2);

  auto c3 = is_inner(fx::example2_g());
  CHECK_FALSE(c3.inner);
  CHECK(c3.max_deviation > 0.5);
  CHECK_THROWS_AS(is_inner(fx::example3_g()), DimensionError);
}

TEST_CASE("garcia_inner examples") {
  auto d = garcia_inner(fx::z_power(1), poly({1.0}), poly({0.0}));
  CHECK(d.max_coeff_diff(MatrixSymbol::diagonal({poly({1.0}), poly({0.0, 1.0})})) < 1e-15);

  auto u = garcia_inner(fx::z_power(1), poly({0.5, 0.5}), poly({0.5, -0.5}));
  CHECK(u.max_coeff_diff(fx::garcia_real()) < 1e-15);
  auto cert = is_inner(u);
  CHECK(cert.inner);
  CHECK(cert.rank == 2);
  // det U = z
  for (int j = 0; j < 16; ++j) {
    const cplx z = grid_point(j, 16);
    CHECK(std::abs(eval(u, z).determinant() - z) < 1e-14);
  }

  auto v = garcia_inner(fx::z_power(1), poly({0.5, 0.5}), poly({cplx(0, -0.5), cplx(0, 0.5)}));
  CHECK(v.max_coeff_diff(fx::garcia_complex()) < 1e-15);

  // b outside K_{z theta}
  CHECK_THROWS_AS(garcia_inner(fx::z_power(1), poly({0.6}), poly({0.0, 0.0, 0.8})), PreconditionError);
  CHECK_THROWS_AS(garcia_inner(fx::z_power(1), poly({0.5}), poly({0.5})), PreconditionError);
}

TEST_CASE("shift_span examples") {
  auto r1 = shift_span(fx::example2_g(), 32);
  CHECK(r1.verdict == OuterVerdict::outer);
  CHECK((r1.theta0 - CMatrix::Identity(2, 2)).norm() < 1e-14);
  // the finite span misses the constants for a boundary zero: diagnostic only
  CHECK(r1.span_residual > 1e-3);

  auto r2 = shift_span(fx::z_power(1), 32);
  CHECK(r2.verdict == OuterVerdict::not_outer);

  auto r3 = shift_span(fx::example3_g(), 8);
  CHECK(r3.verdict == OuterVerdict::outer);
  CHECK(r3.rank == 1);
  CHECK(std::abs(r3.theta0(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(r3.g_tilde.coeff(0)(0, 0) - 1.0) < 1e-15);

  // inner factor with a zero inside the disc
  auto r4 = shift_span(poly({-0.5, 1.0}), 16);
  CHECK(r4.verdict == OuterVerdict::not_outer);
  auto r5 = shift_span(fx::flagship_g(64), 64);
  CHECK(r5.verdict == OuterVerdict::outer);
  // column span not reachable from G(0): (1, z)^T
  MatrixSymbol col(2, 1, 0, 1);
  col.at(0) << 1.0, 0.0;
  col.at(1) << 0.0, 1.0;
  CHECK(shift_span(col, 8).verdict == OuterVerdict::not_outer);
}

TEST_CASE("bauer_factorize examples") {
  auto r1 = bauer_factorize(MatrixSymbol::constant(0.75 * CMatrix::Identity(2, 2)), 16, 128);
  CHECK(r1.a.max_coeff_diff(MatrixSymbol::constant(s3 / 2 * CMatrix::Identity(2, 2))) < 1e-14);

  // 1 + cos t: degenerate at t = pi, algebraic convergence only
  auto phi = MatrixSymbol::scalar({0.5, 1.0, 0.5}, -1);
  auto r2 = bauer_factorize(phi, 16, 1024);
  CHECK(r2.min_sample_eig > 0.0);
  CHECK(r2.a.max_coeff_diff(fx::one_plus_z().window(0, 16)) < 5e-3);

  CMatrix c = fx::recipe_c();
  auto r3 = bauer_factorize(MatrixSymbol::identity(2) - MatrixSymbol::constant(c.adjoint() * c), 8, 64);
  CHECK(r3.a.max_coeff_diff(MatrixSymbol::constant(s3 / 2 * CMatrix::Identity(2, 2))) < 1e-14);

  CHECK_THROWS_AS(bauer_factorize(MatrixSymbol::scalar({0.8, 1.0, 0.8}, -1), 8, 64), PreconditionError);
  CHECK_THROWS_AS(bauer_factorize(MatrixSymbol::scalar({0.5, 1.0}, -1), 8, 64), PreconditionError);
}

TEST_CASE("outer_exp_log examples") {
  auto r1 = outer_exp_log(MatrixSymbol::identity(1), 8, 64);
  CHECK(r1.a.max_coeff_diff(MatrixSymbol::identity(1)) < 1e-14);

  auto phi = MatrixSymbol::scalar({0.5, 1.0, 0.5}, -1);
  auto r2 = outer_exp_log(phi, 64, 4096);
  const auto s = sample(phi, 4096);
  double worst = 0.0;
  for (int j = 0; j < 4096; ++j)
    worst = std::max(worst, std::abs(std::abs(r2.boundary.values[j](0, 0)) - std::sqrt(s.values[j](0, 0).real())));
  CHECK(worst < 1e-8);
  // the analytic factor itself is (1+z)/sqrt 2
  CHECK(r2.a.max_coeff_diff(fx::one_plus_z().window(0, 64)) < 1e-3);

  auto r3 = outer_exp_log(MatrixSymbol::constant(CMatrix::Constant(1, 1, 0.75)), 8, 64);
  CHECK(std::abs(r3.a.coeff(0)(0, 0) - s3 / 2) < 1e-14);

  CMatrix nd(2, 2);
  nd << 1.0, 0.1, 0.1, 1.0;
  CHECK_THROWS_AS(outer_exp_log(MatrixSymbol::constant(nd), 8, 64), PreconditionError);
}

TEST_CASE("divide_inner examples") {
  auto d1 = divide_inner(poly({0.0, 0.0, 0.5}), fx::z_power(1));
  CHECK(d1.divisible);
  CHECK(d1.b0.max_coeff_diff(poly({0.0, 0.5})) < 1e-15);

  auto b = fx::z_over_2_plus_z(64);
  auto d2 = divide_inner(b, fx::z_power(1));
  CHECK(d2.divisible);
  MatrixSymbol expect(1, 1, 0, 63);
  for (int k = 0; k <= 63; ++k) expect.at(k)(0, 0) = 0.5 * std::pow(-0.5, k);
  CHECK(d2.b0.max_coeff_diff(expect) < 1e-15);

  auto d3 = divide_inner(b, fx::z_power(2));
  CHECK_FALSE(d3.divisible);
  CHECK(std::abs(d3.defect - 0.5) < 1e-15);

  CHECK_THROWS_AS(divide_inner(b, fx::one_plus_z()), PreconditionError);
}

TEST_CASE("property: garcia output is inner with unimodular determinant") {
  for (double t : {0.1, 0.7, 1.3, 2.9}) {
    // a = (1 + z)/2 rotated by a constant unitary mixing keeps membership in K_{z^2}
    const cplx w = std::polar(1.0, t);
    auto theta = fx::z_power(2);
    auto a = poly({0.5, 0.5 * w});
    auto b = poly({0.5 * cplx(0, 1), -0.5 * cplx(0, 1) * w});
    auto u = garcia_inner(theta, a, b);
    auto cert = is_inner(u);
    CHECK(cert.inner);
    CHECK(cert.det_modulus_defect < 1e-8);
  }
}

TEST_CASE("property: bauer reconstruction, outerness, gauge stability") {
  for (const auto& f : fx::pair_bs()) {
    const auto& b = f.value;
    const MatrixSymbol phi = MatrixSymbol::identity(b.cols()) - symbol_mul(adjoint_flip(b), b);
    auto r1 = bauer_factorize(phi, 32, 512);
    auto r2 = bauer_factorize(phi, 32, 1024);
    INFO(f.name);
    CHECK(r1.reconstruction <= 1e-8);
    CHECK(shift_span(r1.a, 32).verdict == OuterVerdict::outer);
    // A1 A2^{-1} = I on the grid
    auto q = pointwise_mul(sample(r1.a, 256), pointwise_inverse(sample(r2.a, 256)));
    double worst = 0.0;
    for (const auto& v : q.values) worst = std::max(worst, (v - CMatrix::Identity(v.rows(), v.cols())).norm());
    CHECK(worst <= 1e-6);
    // A(0) Hermitian positive definite
    const CMatrix a0 = r1.a.coeff(0);
    CHECK((a0 - a0.adjoint()).norm() < 1e-14);
    CHECK(Eigen::SelfAdjointEigenSolver<CMatrix>(a0).eigenvalues().minCoeff() > 0.0);
  }
}

TEST_CASE("property: exp-log agrees with bauer for diagonal Phi") {
  auto b = MatrixSymbol::diagonal({poly({0.0, 0.5}), poly({0.0, 0.25, 0.25})});
  const MatrixSymbol phi = MatrixSymbol::identity(2) - symbol_mul(adjoint_flip(b), b);
  auto e = outer_exp_log(phi, 32, 512);
  auto a = bauer_factorize(phi, 32, 512);
  CHECK(e.a.max_coeff_diff(a.a) < 1e-6);
}

TEST_CASE("property: divide then remultiply") {
  std::vector<MatrixSymbol> us = {fx::z_power(1, 2), fx::z_garcia(), fx::garcia_complex()};
  for (const auto& u : us) {
    MatrixSymbol b0(2, 2, 0, 2);
    b0.at(0) << 0.1, 0.2, 0.0, -0.1;
    b0.at(2) << 0.0, 0.1, 0.3, 0.0;
    auto b = symbol_mul(u, b0);
    auto d = divide_inner(b, u);
    CHECK(d.divisible);
    CHECK(d.remultiply <= 1e-7);
    CHECK(d.b0.max_coeff_diff(b0) < 1e-14);
  }
}
