#include "hardy/nearly_invariant.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "hardy/herglotz.hpp"
#include "hardy/inner_outer.hpp"
#include "hardy/sampling.hpp"

namespace hardy {

namespace {

double spectral_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::JacobiSVD<CMatrix>(m).singularValues()(0);
}

HardyElement times(const MatrixSymbol& g, const HardyElement& k) {
  return HardyElement::from_symbol(symbol_mul(g, k.as_symbol()));
}

Band band_of(double q, double tol) {
  if (q <= tol) return Band::small;
  if (q > 10 * tol) return Band::large;
  return Band::borderline;
}

MatrixSymbol geometric(cplx ratio, int degree) {
  MatrixSymbol s(1, 1, 0, degree);
  cplx p = 1.0;
  for (int k = 0; k <= degree; ++k, p *= ratio) s.at(k)(0, 0) = p;
  return s;
}

}  // namespace

SubspaceBasis model_space_basis(const MatrixSymbol& u, int degree, double rank_tol) {
  if (!u.is_square()) throw DimensionError("model_space_basis: U must be square");
  if (degree < u.max_deg()) throw PreconditionError("model_space_basis: N must be at least deg U");
  if (!is_inner(u).inner) throw PreconditionError("model_space_basis: U is not inner");
  auto k = kernel_basis(build_toeplitz(adjoint_flip(u), degree), rank_tol);
  return k.basis;
}

NearInvariance is_nearly_invariant(const SubspaceBasis& f, double tol) {
  NearInvariance out;
  if (f.empty()) {
    out.invariant = true;
    return out;
  }
  const Index m = f.dim();
  const CMatrix q = f.matrix();
  const CMatrix e0 = q.topRows(m);
  Eigen::JacobiSVD<CMatrix> svd(e0, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  Index rank = 0;
  while (rank < sv.size() && sv(rank) > tol * std::max(1.0, sv.size() ? sv(0) : 0.0)) ++rank;
  const Index nd = q.cols() - rank;
  out.vanishing_dim = nd;
  for (Index c = 0; c < nd; ++c) {
    const CVector fv = q * svd.matrixV().col(rank + c);
    CVector shifted = CVector::Zero(fv.size());
    shifted.head(fv.size() - m) = fv.tail(fv.size() - m);
    const CVector res = shifted - q * (q.adjoint() * shifted);
    out.residual = std::max(out.residual, res.norm() / fv.norm());
  }
  out.invariant = out.residual <= tol;
  return out;
}

ExtractedW extract_W(const SubspaceBasis& f, double tol) {
  if (f.empty()) throw PreconditionError("extract_W: F is trivial");
  const Index m = f.dim();
  const CMatrix q = f.matrix();
  std::vector<CVector> cols;
  for (Index i = 0; i < m; ++i) {
    // projection onto F of the reproducing kernel e_i at 0
    CVector w = q * q.row(i).adjoint();
    for (const auto& c : cols) w -= c * c.dot(w);
    for (const auto& c : cols) w -= c * c.dot(w);
    if (w.norm() <= tol) continue;
    cols.push_back(w / w.norm());
  }
  ExtractedW out;
  out.r = static_cast<Index>(cols.size());
  out.g = MatrixSymbol(m, out.r, 0, f.degree());
  for (Index c = 0; c < out.r; ++c) {
    const auto e = HardyElement::from_stacked(cols[c], m);
    for (int k = 0; k <= f.degree(); ++k) out.g.at(k).col(c) = e.coeff(k);
  }
  return out;
}

MatrixSymbol normalize_columns(const MatrixSymbol& g) {
  const CMatrix gram = symbol_mul(adjoint_flip(g), g).coeff(0);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(gram);
  if (es.eigenvalues().minCoeff() <= 0.0) throw PreconditionError("normalize_columns: G has dependent columns");
  return g * es.operatorInverseSqrt();
}

SarasonResult sarason_B(const MatrixSymbol& g, int degree, double orth_tol) {
  if (!g.is_analytic()) throw PreconditionError("sarason_B: G must be analytic");
  const MatrixSymbol density = symbol_mul(adjoint_flip(g), g);
  const Index r = g.cols();
  const double defect = (density.coeff(0) - CMatrix::Identity(r, r)).norm();
  if (defect > orth_tol) throw PreconditionError("sarason_B: columns of G are not orthonormal");
  SarasonResult out;
  out.herglotz.f = herglotz_taylor(density, degree);
  const CMatrix f0 = out.herglotz.f.coeff(0);
  out.herglotz.v = (f0 - f0.adjoint()) / cplx(0, 2);
  out.herglotz.f0_defect = (f0 - CMatrix::Identity(r, r)).norm();
  out.b = cayley(out.herglotz.f, degree);
  return out;
}

HardyElement dbr_kernel(const MatrixSymbol& b, cplx lambda, const CVector& u, int degree) {
  if (std::abs(lambda) >= 1.0) throw PreconditionError("dbr_kernel: |lambda| must be < 1");
  if (u.size() != b.rows()) throw DimensionError("dbr_kernel: vector size does not match B");
  const CVector w = eval(b, lambda).adjoint() * u;
  MatrixSymbol num = MatrixSymbol::constant(u) - b * w;
  MatrixSymbol k = symbol_mul_truncated(num, geometric(std::conj(lambda), degree), degree);
  return HardyElement::from_symbol(k.window(0, degree));
}

double verify_lemma31(const MatrixSymbol& g, const MatrixSymbol& b, const std::vector<KernelProbe>& probes,
                      int degree) {
  const int top = 4 * degree;
  const Index r = b.rows();
  const CMatrix id = CMatrix::Identity(r, r);
  double worst = 0.0;
  for (const auto& p : probes) {
    const auto lhs_w = HardyElement::from_symbol(symbol_mul_truncated(g * p.u, geometric(std::conj(p.w), top), top));
    const auto lhs_z = HardyElement::from_symbol(symbol_mul_truncated(g * p.v, geometric(std::conj(p.z), top), top));
    const cplx lhs = inner(lhs_w, lhs_z);

    const CMatrix bw = eval(b, p.w), bz = eval(b, p.z);
    const CVector a = (id - bw.adjoint()).partialPivLu().solve(p.u);
    const CVector c = (id - bz.adjoint()).partialPivLu().solve(p.v);
    const CMatrix kwz = (id - bz * bw.adjoint()) / (1.0 - std::conj(p.w) * p.z);
    const cplx rhs = c.dot(kwz * a);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

std::vector<KernelProbe> random_probes(Index dim, int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> rad(0.0, 0.6), ang(0.0, 2 * std::numbers::pi);
  std::normal_distribution<double> nd;
  auto vec = [&] {
    CVector v(dim);
    for (Index i = 0; i < dim; ++i) v(i) = cplx(nd(rng), nd(rng));
    return CVector(v.normalized());
  };
  std::vector<KernelProbe> out;
  for (int i = 0; i < count; ++i) {
    KernelProbe p;
    p.w = std::polar(rad(rng), ang(rng));
    p.u = vec();
    p.z = std::polar(rad(rng), ang(rng));
    p.v = vec();
    out.push_back(p);
  }
  return out;
}

double isometry_defect(const MatrixSymbol& g, const MatrixSymbol& u, int degree) {
  const SubspaceBasis ku = model_space_basis(u, std::max(degree, u.max_deg()));
  if (ku.empty()) return 0.0;
  std::vector<HardyElement> images;
  for (const auto& k : ku.elements()) images.push_back(times(g, k));
  const Index n = ku.size();
  CMatrix gram(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) gram(i, j) = inner(images[j], images[i]);
  return spectral_norm(gram - CMatrix::Identity(n, n));
}

SarasonEquivalence sarason_equivalence(const MatrixSymbol& g, const MatrixSymbol& u, int degree, double tol) {
  SarasonEquivalence out;
  out.tolerance = tol;
  const auto sb = sarason_B(g, degree);
  out.isometry_defect = isometry_defect(g, u, degree);
  out.divisibility_defect = divide_inner(sb.b, u, tol).defect;

  const SubspaceBasis ku = model_space_basis(u, std::max(degree, u.max_deg()));
  if (!ku.empty()) {
    // ||T_{B*} Q|| over the orthonormal basis matrix Q of K_U
    const int d = ku.degree();
    const CMatrix t = build_toeplitz(adjoint_flip(sb.b), d).matrix;
    out.tb_star_annihilation = spectral_norm(t * ku.matrix());
  }

  int small = 0, large = 0;
  for (double q : {out.isometry_defect, out.divisibility_defect, out.tb_star_annihilation}) {
    const Band b = band_of(q, tol);
    small += b == Band::small;
    large += b == Band::large;
  }
  if (small > 0 && large == 0)
    out.verdict = Verdict::pass;
  else if (large > 0 && small == 0)
    out.verdict = Verdict::fail;
  else
    out.verdict = Verdict::indeterminate;
  return out;
}

Division divide_by_G(const HardyElement& f, const MatrixSymbol& g, const MatrixSymbol& b, int degree, double tol) {
  if (f.dim() != g.rows()) throw DimensionError("divide_by_G: f and G do not fit");
  const MatrixSymbol gf = riesz_project(symbol_mul(adjoint_flip(g), f.as_symbol()), Projection::plus);
  const MatrixSymbol ib = MatrixSymbol::identity(b.rows()) - b;
  const MatrixSymbol h = symbol_mul_truncated(ib, gf, degree).window(0, degree);
  Division out;
  out.h = HardyElement::from_symbol(h);
  const MatrixSymbol diff = symbol_mul(g, h) - f.as_symbol();
  out.residual = diff.l2_norm();
  out.norm_defect = std::abs(out.h.norm() - f.norm());
  out.ok = out.residual <= 10 * tol;
  return out;
}

double counterexample_UBU(const MatrixSymbol& theta, const MatrixSymbol& b1, const MatrixSymbol& b2) {
  const cplx i(0, 1);
  const MatrixSymbol one = MatrixSymbol::identity(1);
  const MatrixSymbol a = 0.5 * (one + theta);
  const MatrixSymbol b = (-0.5 * i) * (one - theta);
  const MatrixSymbol u = garcia_inner(theta, a, b);
  const MatrixSymbol bb = MatrixSymbol::blocks({{b1, b2}, {-b2, -b1}});
  if (!bb.is_analytic()) throw PreconditionError("counterexample_UBU: B must be analytic");
  const int K = admissible_grid(bb.max_deg(), 256);
  if (sup_norm(sample(bb, K)) > 1.0 + 1e-12) throw PreconditionError("counterexample_UBU: B is not a contraction");
  const MatrixSymbol ubu = symbol_mul(symbol_mul(adjoint_flip(u), bb), u);
  return riesz_project(ubu, Projection::minus).l2_norm();
}

}  // namespace hardy
