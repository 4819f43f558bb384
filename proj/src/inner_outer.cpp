#include "hardy/inner_outer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hardy/herglotz.hpp"

namespace hardy {

namespace {

int pick_grid(int degree, int requested) {
  return admissible_grid(std::max(degree, 0), std::max(requested, 64));
}

double spectral_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::JacobiSVD<CMatrix>(m).singularValues()(0);
}

MatrixSymbol conj_analytic(const MatrixSymbol& theta, const MatrixSymbol& x, double tol, const char* what) {
  // theta * conj(x) must be analytic; return its analytic part
  MatrixSymbol prod = symbol_mul(theta, adjoint_flip(x));
  const double leak = riesz_project(prod, Projection::minus).l2_norm();
  if (leak > tol)
    throw PreconditionError(std::string("garcia_inner: ") + what + " is not in K_{z theta} (co-analytic mass " +
                            std::to_string(leak) + ")");
  return riesz_project(prod, Projection::plus);
}

double jensen_gap(const MatrixSymbol& gt, double rho, int grid) {
  MatrixSymbol scaled = gt;
  double p = 1.0;
  for (int k = 0; k <= gt.max_deg(); ++k, p *= rho)
    if (k >= gt.min_deg()) scaled.at(k) *= p;
  const SampledSymbol s = sample(scaled, grid);
  double mean = 0.0;
  for (const auto& v : s.values) mean += std::log(std::max(std::abs(v.determinant()), 1e-300));
  mean /= grid;
  return mean - std::log(std::abs(gt.coeff(0).determinant()));
}

}  // namespace

const char* to_string(OuterVerdict v) {
  switch (v) {
    case OuterVerdict::outer: return "outer";
    case OuterVerdict::not_outer: return "not-outer";
    case OuterVerdict::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

InnerCertificate is_inner(const MatrixSymbol& u, double tol, int grid_size) {
  if (!u.is_square()) throw DimensionError("is_inner: symbol must be square");
  if (!u.is_analytic()) throw PreconditionError("is_inner: symbol must be analytic");
  const int K = pick_grid(u.max_deg(), grid_size);
  const SampledSymbol s = sample(u, K);
  InnerCertificate c;
  const CMatrix& u0 = s.values.front();
  c.kernel_complement = u0.adjoint() * u0;
  c.range_projector = u0 * u0.adjoint();
  double dev = spectral_norm(c.kernel_complement * c.kernel_complement - c.kernel_complement);
  for (const auto& v : s.values) {
    dev = std::max(dev, spectral_norm(v.adjoint() * v - c.kernel_complement));
    dev = std::max(dev, spectral_norm(v * v.adjoint() - c.range_projector));
  }
  c.max_deviation = dev;
  c.rank = static_cast<Index>(std::lround(c.kernel_complement.trace().real()));
  c.inner = dev <= tol;
  if (c.rank == u.rows()) {
    for (const auto& v : s.values) c.det_modulus_defect = std::max(c.det_modulus_defect, std::abs(std::abs(v.determinant()) - 1.0));
  }
  return c;
}

MatrixSymbol garcia_inner(const MatrixSymbol& theta, const MatrixSymbol& a, const MatrixSymbol& b, double tol) {
  for (const auto* x : {&theta, &a, &b}) {
    if (x->rows() != 1 || x->cols() != 1) throw DimensionError("garcia_inner: scalar symbols expected");
    if (!x->is_analytic()) throw PreconditionError("garcia_inner: symbols must be analytic");
  }
  if (!is_inner(theta, tol).inner) throw PreconditionError("garcia_inner: theta is not inner");
  const MatrixSymbol mod = symbol_mul(adjoint_flip(a), a) + symbol_mul(adjoint_flip(b), b) - MatrixSymbol::identity(1);
  if (mod.l2_norm() > tol) throw PreconditionError("garcia_inner: |a|^2 + |b|^2 != 1 on the circle");
  const MatrixSymbol tb = conj_analytic(theta, b, tol, "b");
  const MatrixSymbol ta = conj_analytic(theta, a, tol, "a");
  MatrixSymbol u = MatrixSymbol::blocks({{a, -b}, {tb, ta}}).trimmed(0.0);
  if (u.min_deg() < 0) u = u.window(0, u.max_deg());
  const auto cert = is_inner(u, 10 * tol);
  if (!cert.inner || cert.rank != 2) throw PreconditionError("garcia_inner: assembled U failed the inner check");
  return u;
}

OuterReport shift_span(const MatrixSymbol& g, int degree, double rank_tol) {
  if (!g.is_analytic()) throw PreconditionError("shift_span: G must be analytic");
  OuterReport rep;
  const Index m = g.rows(), r = g.cols();
  const int d = g.max_deg();
  CMatrix coeffs(m, r * (d + 1));
  for (int k = 0; k <= d; ++k) coeffs.middleCols(k * r, r) = g.coeff(k);
  Eigen::BDCSVD<CMatrix> all(coeffs);
  const double scale = all.singularValues()(0);
  if (scale == 0.0) {
    rep.verdict = OuterVerdict::not_outer;
    rep.reason = "G vanishes";
    return rep;
  }
  Index rv = 0;
  while (rv < all.singularValues().size() && all.singularValues()(rv) > rank_tol * scale) ++rv;

  const CMatrix g0 = g.coeff(0);
  Eigen::JacobiSVD<CMatrix> svd0(g0, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Index r0 = 0;
  while (r0 < svd0.singularValues().size() && svd0.singularValues()(r0) > rank_tol * scale) ++r0;
  rep.rank = r0;
  if (r > m || r0 < r) {
    rep.verdict = OuterVerdict::not_outer;
    rep.reason = "G(0) does not have full column rank";
    return rep;
  }
  if (rv > r0) {
    rep.verdict = OuterVerdict::not_outer;
    rep.reason = "coefficients leave the range of G(0)";
    return rep;
  }
  rep.theta0 = svd0.matrixU() * svd0.matrixV().adjoint();
  rep.g_tilde = rep.theta0.adjoint() * g;
  for (int k = 0; k <= d; ++k)
    rep.factor_residual = std::max(rep.factor_residual, (g.coeff(k) - rep.theta0 * rep.g_tilde.coeff(k)).norm());

  rep.jensen_inner = jensen_gap(rep.g_tilde, 0.99, admissible_grid(d, 8192));
  rep.jensen_outer = jensen_gap(rep.g_tilde, 0.999, admissible_grid(d, 32768));

  // diagnostic: distance of the monomials e z^k (e in range G(0)) from the
  // finite shifted span
  const int shifts = std::max(0, degree - d);
  const int top = shifts + d;
  CMatrix span(m * (top + 1), r * (shifts + 1));
  span.setZero();
  for (int s = 0; s <= shifts; ++s)
    for (int k = 0; k <= d; ++k) span.block(m * (s + k), r * s, m, r) = g.coeff(k);
  Eigen::BDCSVD<CMatrix> ss(span, Eigen::ComputeThinU);
  Index rs = 0;
  while (rs < ss.singularValues().size() && ss.singularValues()(rs) > rank_tol * ss.singularValues()(0)) ++rs;
  const CMatrix q = ss.matrixU().leftCols(rs);
  for (int k = 0; k <= shifts / 2; ++k)
    for (Index c = 0; c < r; ++c) {
      CVector e = CVector::Zero(m * (top + 1));
      e.segment(m * k, m) = rep.theta0.col(c);
      rep.span_residual = std::max(rep.span_residual, (e - q * (q.adjoint() * e)).norm());
    }

  const double jt = 1e-6;
  if (rep.jensen_inner > jt) {
    rep.verdict = OuterVerdict::not_outer;
    rep.reason = "det G~ has zeros inside the disc";
  } else if (rep.jensen_outer > jt) {
    rep.verdict = OuterVerdict::indeterminate;
    rep.reason = "Jensen gap differs between radii 0.99 and 0.999";
  } else {
    rep.verdict = OuterVerdict::outer;
  }
  return rep;
}

BauerResult bauer_factorize(const MatrixSymbol& phi, int degree, int grid_size) {
  if (!phi.is_square()) throw DimensionError("bauer_factorize: Phi must be square");
  const double scale = std::max(1.0, phi.l2_norm());
  if (hermitian_defect(phi) > 1e-12 * scale) throw PreconditionError("bauer_factorize: Phi is not Hermitian");
  const int K = pick_grid(std::max(phi.max_deg(), -phi.min_deg()), grid_size);
  const Index m = phi.rows();
  BauerResult res;
  const SampledSymbol s = sample(phi, K);
  res.min_sample_eig = std::numeric_limits<double>::infinity();
  for (const auto& v : s.values) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (v + v.adjoint()), Eigen::EigenvaluesOnly);
    res.min_sample_eig = std::min(res.min_sample_eig, es.eigenvalues()(0));
  }
  if (res.min_sample_eig <= 0.0)
    throw PreconditionError("bauer_factorize: Phi is indefinite or degenerate on the grid (min eigenvalue " +
                            std::to_string(res.min_sample_eig) + ")");

  const int nb = K / 2;
  res.blocks = nb;
  CMatrix t(m * nb, m * nb);
  for (int j = 0; j < nb; ++j)
    for (int k = 0; k < nb; ++k) t.block(m * j, m * k, m, m) = phi.coeff(j - k).transpose();
  Eigen::LLT<CMatrix> llt(t);
  if (llt.info() != Eigen::Success) throw PreconditionError("bauer_factorize: moment matrix is not positive definite");
  const CMatrix l = llt.matrixL();

  const int n = std::min(degree, nb - 1);
  MatrixSymbol a(m, m, 0, degree);
  for (int k = 0; k <= n; ++k) a.at(k) = l.block(m * (nb - 1), m * (nb - 1 - k), m, m).transpose();

  // gauge: make A(0) Hermitian positive definite
  Eigen::JacobiSVD<CMatrix> svd(a.at(0), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const CMatrix w = svd.matrixU() * svd.matrixV().adjoint();
  a = w.adjoint() * a;
  a.at(0) = 0.5 * (a.at(0) + a.at(0).adjoint()).eval();
  res.a = a;

  const SampledSymbol sa = sample(a, K);
  for (int j = 0; j < K; ++j)
    res.reconstruction = std::max(res.reconstruction, spectral_norm(sa.values[j].adjoint() * sa.values[j] - s.values[j]));
  return res;
}

ExpLogResult outer_exp_log(const MatrixSymbol& phi, int degree, int grid_size) {
  if (!phi.is_square()) throw DimensionError("outer_exp_log: Phi must be square");
  const Index m = phi.rows();
  for (int k = phi.min_deg(); k <= phi.max_deg(); ++k) {
    CMatrix off = phi.at(k);
    off.diagonal().setZero();
    if (off.norm() > 0.0) throw PreconditionError("outer_exp_log: Phi must be diagonal (commuting case only)");
  }
  const int K = pick_grid(std::max({degree, phi.max_deg(), -phi.min_deg()}), grid_size);
  ExpLogResult out{MatrixSymbol(m, m, 0, degree), {m, m, std::vector<CMatrix>(K, CMatrix::Zero(m, m))}};
  for (Index i = 0; i < m; ++i) {
    const SampledSymbol s = sample(phi.entry(i, i), K);
    SampledSymbol half_log{1, 1, std::vector<CMatrix>(K, CMatrix(1, 1))};
    double top = 0.0;
    for (const auto& v : s.values) top = std::max(top, std::abs(v(0, 0)));
    for (int j = 0; j < K; ++j) {
      const cplx v = s.values[j](0, 0);
      if (!(v.real() > 0.0) || std::abs(v.imag()) > 1e-12 * top)
        throw PreconditionError("outer_exp_log: Phi must be strictly positive on the grid");
      half_log.values[j](0, 0) = 0.5 * std::log(v.real());
    }
    // Herglotz of the trigonometric interpolant; the Nyquist bin is counted once
    const MatrixSymbol c = to_symbol(half_log, -K / 2 + 1, K / 2);
    MatrixSymbol h(1, 1, 0, K / 2);
    h.at(0) = c.at(0);
    for (int k = 1; k < K / 2; ++k) h.at(k) = 2.0 * c.at(k);
    h.at(K / 2) = c.at(K / 2);
    SampledSymbol e = sample(h, K);
    for (auto& v : e.values) v(0, 0) = std::exp(v(0, 0));
    const MatrixSymbol ai = to_symbol(e, 0, degree);
    for (int k = 0; k <= degree; ++k) out.a.at(k)(i, i) = ai.at(k)(0, 0);
    for (int j = 0; j < K; ++j) out.boundary.values[j](i, i) = e.values[j](0, 0);
  }
  return out;
}

DivisionResult divide_inner(const MatrixSymbol& b, const MatrixSymbol& u, double tol) {
  if (u.cols() != b.rows()) throw DimensionError("divide_inner: shapes of U and B do not fit");
  const auto cert = is_inner(u, std::max(tol, 1e-8));
  if (!cert.inner || cert.rank != u.rows()) throw PreconditionError("divide_inner: U must be inner of full rank");
  DivisionResult res;
  const MatrixSymbol q = symbol_mul(adjoint_flip(u), b);
  res.defect = riesz_project(q, Projection::minus).l2_norm();
  res.b0 = riesz_project(q, Projection::plus);
  res.divisible = res.defect <= tol;
  const MatrixSymbol diff = b - symbol_mul(u, res.b0);
  res.remultiply = sup_norm(sample(diff, pick_grid(std::max(diff.max_deg(), -diff.min_deg()), 0)));
  return res;
}

}  // namespace hardy
