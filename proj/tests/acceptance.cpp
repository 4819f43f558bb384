#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "hardy/fixtures.hpp"
#include "hardy/hayashi.hpp"
#include "hardy/inner_outer.hpp"
#include "hardy/nearly_invariant.hpp"

using namespace hardy;
namespace fx = hardy::fixtures;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

MatrixSymbol poly(std::vector<cplx> c) { return MatrixSymbol::scalar(c); }

MatrixSymbol series(std::function<cplx(cplx)> f, int n) { return taylor_from_boundary(f, n, 1024); }

CVector vec2(cplx a, cplx b) {
  CVector v(2);
  v << a, b;
  return v;
}

SubspaceBasis e1_ze1(int degree) {
  auto e1 = HardyElement::constant(vec2(1, 0));
  auto ze1 = HardyElement(std::vector<CVector>{vec2(0, 0), vec2(1, 0)});
  return SubspaceBasis::span_of({e1, ze1}, degree);
}

MatrixSymbol diag_zbar2_one() {
  return MatrixSymbol::diagonal({MatrixSymbol::scalar({1.0}, -2), MatrixSymbol::scalar({1.0})});
}

double thm34(const MatrixSymbol& g, int n) {
  const auto gn = normalize_columns(g.window(0, std::min(g.max_deg(), n)));
  const auto b = sarason_B(gn, n).b;
  const auto x = OperatorExpr::toeplitz(MatrixSymbol::identity(1) - b) * OperatorExpr::toeplitz(adjoint_flip(gn));
  const auto rhs = OperatorExpr::identity(1) - OperatorExpr::toeplitz(b) * OperatorExpr::toeplitz(adjoint_flip(b));
  return operator_residual(x * x.adjoint(), rhs, n);
}

Outcome c1() {
  auto k = kernel_basis(build_toeplitz(diag_zbar2_one(), 8));
  const double ang = subspace_angle(k.basis, e1_ze1(8));
  return {k.basis.size() == 2 && ang <= 1e-10, fmt("dim %.0f, angle %.2e", double(k.basis.size()), ang)};
}

Outcome c2() {
  auto r = classify_kernel(fx::example2_g(), fx::z_power(1, 2), ToleranceConfig{});
  return {r.final == Final::not_kernel && r.cross_check_angle >= 0.5,
          std::string(to_string(r.final)) + fmt(", angle %.4f", r.cross_check_angle)};
}

Outcome c3() {
  auto s = sarason_B(fx::one_plus_z(), 64);
  const double d = s.b.max_coeff_diff(fx::z_over_2_plus_z(64));
  return {d <= 1e-10, fmt("max coefficient deviation %.2e", d)};
}

Outcome c4() {
  const double r16 = thm34(fx::one_plus_z(), 16);
  const double r64 = thm34(fx::one_plus_z(), 64);
  return {r64 <= 1e-6 && r64 < r16, fmt("residual N=64 %.2e, N=16 %.2e", r64, r16)};
}

Outcome c5() {
  auto pos1 = sarason_equivalence(fx::one_plus_z(), fx::z_power(1), 64);
  auto neg = sarason_equivalence(fx::one_plus_z(), fx::z_power(2), 64);
  auto pos2 = sarason_equivalence(MatrixSymbol::identity(2), fx::z_power(1, 2), 64);
  const bool ok = pos1.verdict == Verdict::pass && neg.verdict == Verdict::fail && pos2.verdict == Verdict::pass &&
                  std::abs(neg.isometry_defect - 0.5) <= 1e-6;
  return {ok, std::string(to_string(pos1.verdict)) + "/" + to_string(neg.verdict) + "/" + to_string(pos2.verdict) +
                  fmt(", negative isometry defect %.8f", neg.isometry_defect)};
}

Outcome c6() {
  auto z = fx::z_power(1);
  const double m1 = counterexample_UBU(z, poly({0.5}), poly({0.0}));
  const double m2 = counterexample_UBU(z, poly({0.0, 0.5}), poly({0.0}));
  return {std::abs(m1 - 0.5) <= 1e-10 && m2 <= 1e-10, fmt("mass %.12f and %.2e", m1, m2)};
}

Outcome c7() {
  const std::vector<int> ladder{16, 32, 64};
  auto r1 = rigidity_test(poly({1.0, 1.0}), ladder, 512);
  bool ok = r1.verdict == Rigidity::non_rigid && r1.witness && r1.gap.front() >= 1e3;
  double wdev = 1.0;
  if (r1.witness) {
    auto one = HardyElement::from_symbol(poly({1.0}));
    wdev = r1.witness->as_symbol().max_coeff_diff(one.as_symbol());
    ok = ok && wdev <= 1e-8;
  }
  double worst_flat = 0.0, min_sigma = 1e300;
  for (const auto& f : {MatrixSymbol::constant(CMatrix::Constant(1, 1, 0.7)), fx::flagship_g0p(64)}) {
    auto r = rigidity_test(f, ladder, 512);
    ok = ok && r.verdict == Rigidity::rigid;
    for (double s : r.sigma_min) min_sigma = std::min(min_sigma, s);
    worst_flat = std::max(worst_flat, std::abs(r.sigma_min.back() - r.sigma_min.front()));
  }
  ok = ok && min_sigma >= 1e-2;
  return {ok, fmt("witness deviation %.1e, min sigma %.4f, sigma drift %.1e", wdev, min_sigma, worst_flat)};
}

Outcome c8() {
  const int n = 64;
  auto s1 = special_test(poly({0.0, 0.5}), poly({std::sqrt(3.0) / 2}), n);
  auto b0 = series([](cplx z) { return 1.0 / (2.0 + z); }, n);
  auto a = series([](cplx z) { return std::sqrt(2.0) * (1.0 + z) / (2.0 + z); }, n);
  auto s2 = special_test(b0, a, n);
  return {s1.mass_gap <= 1e-8 && std::abs(s2.mass_gap - 1.0) <= 1e-6,
          fmt("gaps %.2e and %.10f", s1.mass_gap, s2.mass_gap)};
}

Outcome c9() {
  auto c = construct_kernel(fx::flagship_g0p(64), fx::z_power(1), ToleranceConfig{});
  const double dg = c.g.window(0, 64).max_coeff_diff(fx::flagship_g(64));
  bool ok = dg <= 1e-8 && c.checks.size() == 2;
  std::string d = fmt("G deviation %.2e", dg);
  for (const auto& e : c.checks) {
    ok = ok && e.kernel_dim == 1 && e.cross_check_angle <= 1e-6;
    d += fmt(", N=%.0f dim %.0f angle %.2e", e.n, double(e.kernel_dim), e.cross_check_angle);
  }
  return {ok, d};
}

Outcome c10() {
  auto r = classify_kernel(fx::one_plus_z(), fx::z_power(1), ToleranceConfig{});
  auto e = sarason_equivalence(fx::one_plus_z(), fx::z_power(1), 64);
  const bool ok = r.final == Final::not_kernel && r.special == Verdict::fail && r.divisibility == Verdict::pass &&
                  e.verdict == Verdict::pass;
  return {ok, std::string(to_string(r.final)) + ", special " + to_string(r.special) + ", isometry " +
                  to_string(e.verdict) + fmt(", mass gap %.8f", r.mass_gap)};
}

Outcome c11() {
  auto c = construct_kernel(fx::recipe_g0p(), fx::z_garcia(), ToleranceConfig{});
  const auto& e = c.checks.front();
  const bool ok = c.f.size() == 3 && e.n == 64 && e.kernel_dim == 3 && e.cross_check_angle <= 1e-5;
  return {ok, fmt("dim F %.0f, dim ker %.0f, angle %.2e", double(c.f.size()), double(e.kernel_dim),
                  e.cross_check_angle)};
}

Outcome c12() {
  auto e = embed_rect(fx::example3_g(), fx::z_power(2), ToleranceConfig{});
  const double d = e.phi.laurent.max_coeff_diff(diag_zbar2_one());
  const double ang = subspace_angle(e.kernel, e1_ze1(e.kernel.degree()));
  return {d <= 1e-14 && e.kernel.size() == 2 && ang <= 1e-10,
          fmt("symbol deviation %.1e, kernel dim %.0f, angle %.2e", d, double(e.kernel.size()), ang)};
}

Outcome c13() {
  double ident = 0.0, gauge = 0.0, cor = 0.0;
  for (const auto& f : fx::pair_bs()) {
    ident = std::max(ident, pair_from_B(f.value, 64, 512).identity_residual);
    const MatrixSymbol phi = MatrixSymbol::identity(f.value.cols()) - symbol_mul(adjoint_flip(f.value), f.value);
    auto a1 = bauer_factorize(phi, 64, 512).a;
    auto a2 = bauer_factorize(phi, 64, 1024).a;
    gauge = std::max(gauge, a1.max_coeff_diff(a2));
    for (const auto& u : fx::pair_inners(f.value.rows()))
      cor = std::max(cor, pair_from_B(symbol_mul(u.value, f.value), 64, 512).mass_gap);
  }
  return {ident <= 1e-8 && gauge <= 1e-6 && cor <= 1e-7,
          fmt("identity %.2e, gauge %.2e, mass gap %.2e", ident, gauge, cor)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria = {
      {"example 3 kernel", c1},        {"example 2 negative", c2},     {"sarason closed form", c3},
      {"toeplitz identity", c4},       {"isometry equivalence", c5},   {"UBU counterexample", c6},
      {"rigidity", c7},                {"specialness mass gap", c8},   {"flagship positive", c9},
      {"hayashi negative", c10},       {"matrix recipe", c11},         {"rectangular embedding", c12},
      {"pair invariants", c13}};
  int failed = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o{false, ""};
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%zu/%zu passed in %.1f s\n", criteria.size() - failed, criteria.size(), secs);
  return failed == 0 ? 0 : 1;
}
