#include "hardy/hayashi.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hardy/herglotz.hpp"
#include "hardy/nearly_invariant.hpp"

namespace hardy {

namespace {

double spectral_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::JacobiSVD<CMatrix>(m).singularValues()(0);
}

CMatrix gram_mass(const MatrixSymbol& g, int upto) {
  CMatrix s = CMatrix::Zero(g.cols(), g.cols());
  for (int k = std::max(0, g.min_deg()); k <= std::min(upto, g.max_deg()); ++k) s += g.coeff(k).adjoint() * g.coeff(k);
  return s;
}

void check_model_inner(const MatrixSymbol& u, const char* who) {
  const auto cert = is_inner(u);
  if (!cert.inner) throw PreconditionError(std::string(who) + ": U is not inner");
  if (cert.rank != u.rows())
    throw PreconditionError(std::string(who) + ": U must be inner of full rank (rank-deficient U is not supported)");
  if (u.coeff(0).norm() > 1e-12) throw PreconditionError(std::string(who) + ": U(0) must vanish");
}

int working_grid(int degree, const ToleranceConfig& cfg) {
  int top = degree;
  for (int n : cfg.ladder) top = std::max(top, n);
  return admissible_grid(2 * top, cfg.grid_size);
}

LadderEntry cross_check(const ToeplitzSymbol& phi, const MatrixSymbol& g, const MatrixSymbol& u, int n,
                        double rank_tol) {
  LadderEntry e;
  e.n = n;
  const auto kb = kernel_basis(build_toeplitz(phi.laurent, n), rank_tol);
  const auto expect = image_of_model_space(g, u, n, rank_tol);
  e.kernel_dim = kb.basis.size();
  e.expected_dim = expect.size();
  e.cross_check_angle = subspace_angle(kb.basis, expect);
  return e;
}

CMatrix complete_unitary(const CMatrix& theta0) {
  const Index m = theta0.rows(), r = theta0.cols();
  const CMatrix q = theta0.householderQr().householderQ();
  CMatrix theta(m, m);
  theta.leftCols(r) = theta0;
  theta.rightCols(m - r) = q.rightCols(m - r);
  return theta;
}

}  // namespace

const char* to_string(Rigidity r) {
  switch (r) {
    case Rigidity::rigid: return "rigid";
    case Rigidity::non_rigid: return "non-rigid";
    case Rigidity::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

const char* to_string(Final f) {
  switch (f) {
    case Final::is_kernel: return "is-kernel";
    case Final::not_kernel: return "not-kernel";
    case Final::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

Pair pair_from_B(const MatrixSymbol& b, int degree, int grid_size, double tol) {
  if (!b.is_analytic()) throw PreconditionError("pair_from_B: B must be analytic");
  const int K = admissible_grid(std::max(degree, b.max_deg()), grid_size);
  const SampledSymbol sb = sample(b, K);
  if (sup_norm(sb) > 1.0 + tol) throw PreconditionError("pair_from_B: B is not a contraction on the grid");
  const Index r = b.cols();
  const MatrixSymbol phi = MatrixSymbol::identity(r) - symbol_mul(adjoint_flip(b), b);
  Pair p;
  p.b = b;
  p.a = bauer_factorize(phi, degree, K).a;
  const SampledSymbol sa = sample(p.a, K);
  for (int j = 0; j < K; ++j) {
    const CMatrix e = sa.values[j].adjoint() * sa.values[j] + sb.values[j].adjoint() * sb.values[j] -
                      CMatrix::Identity(r, r);
    p.identity_residual = std::max(p.identity_residual, spectral_norm(e));
  }
  const auto s = special_test(p.b, p.a, degree, tol);
  p.mass_gap = s.mass_gap;
  p.special = s.verdict;
  return p;
}

MatrixSymbol g0_prime(const MatrixSymbol& b0, const MatrixSymbol& a_prime, int degree, G0Form form) {
  const MatrixSymbol ib = MatrixSymbol::identity(b0.rows()) - b0;
  if (form == G0Form::printed) return symbol_mul_truncated(a_prime, ib, degree).window(0, degree);
  return symbol_mul_truncated(a_prime, series_inverse(ib, degree), degree).window(0, degree);
}

SpecialReport special_test(const MatrixSymbol& b0, const MatrixSymbol& a_prime, int degree, double tol,
                           G0Form form) {
  if (!b0.is_square() || a_prime.cols() != b0.rows()) throw DimensionError("special_test: B0 and A' do not fit");
  const Index r = b0.rows();
  const CMatrix id = CMatrix::Identity(r, r);
  const CMatrix b00 = b0.coeff(0);
  Eigen::FullPivLU<CMatrix> lu(id - b00);
  if (!lu.isInvertible()) throw PreconditionError("special_test: I - B0(0) is singular");
  const CMatrix f00 = (id + b00) * lu.inverse();
  const CMatrix re = 0.5 * (f00 + f00.adjoint());
  const MatrixSymbol g = g0_prime(b0, a_prime, degree, form);
  const CMatrix full = gram_mass(g, degree);
  SpecialReport s;
  s.mass_gap = spectral_norm(re - full);
  s.drift = spectral_norm(full - gram_mass(g, degree / 2));
  if (s.mass_gap <= 10 * tol)
    s.verdict = Verdict::pass;
  else if (s.drift <= 0.1 * s.mass_gap)
    s.verdict = Verdict::fail;
  else
    s.verdict = Verdict::indeterminate;
  return s;
}

RigidityReport rigidity_test(const MatrixSymbol& f, const std::vector<int>& ladder, int grid_size, double rank_tol,
                             double floor) {
  if (!f.is_square()) throw DimensionError("rigidity_test: F must be square");
  if (ladder.empty()) throw PreconditionError("rigidity_test: empty ladder");
  const auto outer = shift_span(f, f.max_deg());
  if (outer.verdict == OuterVerdict::not_outer) throw PreconditionError("rigidity_test: F is not outer");
  const int top = *std::max_element(ladder.begin(), ladder.end());
  const int K = admissible_grid(std::max(2 * top, f.max_deg()), grid_size);
  const SampledSymbol s = sample(f, K);
  const SampledSymbol phi = pointwise_mul(pointwise_adjoint(s), pointwise_inverse(s));
  const MatrixSymbol sym = to_symbol(phi, -K / 2, K / 2 - 1);

  RigidityReport rep;
  for (int n : ladder) {
    const auto t = build_toeplitz(sym, n);
    const auto kr = kernel_basis(t, rank_tol);
    rep.ladder.push_back(n);
    rep.sigma_min.push_back(kr.singular_values.size() ? kr.singular_values.minCoeff() : 0.0);
    rep.gap.push_back(kr.gap);
    if (!rep.witness && kr.verdict == Verdict::pass && !kr.basis.empty()) {
      CVector v = kr.basis[0].stacked();
      Index at = 0;
      v.cwiseAbs().maxCoeff(&at);
      v *= std::conj(v(at)) / std::abs(v(at));
      v.normalize();
      rep.witness = HardyElement::from_stacked(v, f.rows());
      rep.witness_residual = (t.matrix * v).norm();
    }
  }
  if (rep.witness) {
    rep.verdict = Rigidity::non_rigid;
  } else {
    const double lo = *std::min_element(rep.sigma_min.begin(), rep.sigma_min.end());
    const bool flat = rep.sigma_min.back() >= 0.5 * rep.sigma_min.front();
    rep.verdict = lo >= floor && flat ? Rigidity::rigid : Rigidity::indeterminate;
  }
  return rep;
}

ToeplitzSymbol toeplitz_symbol(const MatrixSymbol& g, const MatrixSymbol& u, int grid_size,
                               const OuterReport* outer) {
  const int K = admissible_grid(std::max(g.max_deg(), u.max_deg()), grid_size);
  const SampledSymbol su = pointwise_adjoint(sample(u, K));
  ToeplitzSymbol out;
  if (g.is_square()) {
    const SampledSymbol sg = sample(g, K);
    out.samples = pointwise_mul(pointwise_mul(pointwise_adjoint(sg), su), pointwise_inverse(sg));
  } else {
    if (!outer) throw PreconditionError("toeplitz_symbol: rectangular G needs its outer reduction");
    const Index m = g.rows(), r = outer->rank;
    const SampledSymbol st = sample(outer->g_tilde, K);
    const SampledSymbol inner = pointwise_mul(pointwise_mul(pointwise_adjoint(st), su), pointwise_inverse(st));
    const CMatrix theta = complete_unitary(outer->theta0);
    out.samples.rows = out.samples.cols = m;
    for (const auto& v : inner.values) {
      CMatrix d = CMatrix::Identity(m, m);
      d.topLeftCorner(r, r) = v;
      out.samples.values.push_back(theta * d * theta.adjoint());
    }
  }
  out.laurent = to_symbol(out.samples, -K / 2, K / 2 - 1);
  out.sup_norm = sup_norm(out.samples);
  return out;
}

SubspaceBasis image_of_model_space(const MatrixSymbol& g, const MatrixSymbol& u, int degree, double rank_tol) {
  const SubspaceBasis ku = model_space_basis(u, std::max(degree, u.max_deg()), rank_tol);
  std::vector<HardyElement> elems;
  for (const auto& k : ku.elements())
    elems.push_back(HardyElement::from_symbol(symbol_mul_truncated(g, k.as_symbol(), degree).window(0, degree)));
  return SubspaceBasis::span_of(elems, degree);
}

ClassificationReport classify_kernel(const MatrixSymbol& g, const MatrixSymbol& u, const ToleranceConfig& cfg,
                                     const HayashiOptions& opt) {
  cfg.validate();
  if (!g.is_square()) throw PreconditionError("classify_kernel: G must be square (use embed_rect for r < m)");
  if (!u.is_square() || u.rows() != g.cols()) throw DimensionError("classify_kernel: U does not fit G");
  check_model_inner(u, "classify_kernel");
  const int n = cfg.trunc_degree;
  const int K = working_grid(n, cfg);
  const double tol = cfg.residual_tol;

  ClassificationReport rep;
  rep.b = sarason_B(g, n).b;
  const auto div = divide_inner(rep.b, u, tol);
  rep.divisibility = div.divisible ? Verdict::pass : Verdict::fail;
  rep.divisibility_defect = div.defect;
  rep.b0 = div.b0.window(0, n);

  const Index r = g.cols();
  const MatrixSymbol iub = MatrixSymbol::identity(r) - symbol_mul_truncated(u, rep.b0, n);
  rep.a_prime = symbol_mul_truncated(g, iub, n).window(0, n);

  const G0Form other = opt.g0_form == G0Form::inverse ? G0Form::printed : G0Form::inverse;
  const auto sp = special_test(rep.b0, rep.a_prime, n, tol, opt.g0_form);
  rep.special = sp.verdict;
  rep.mass_gap = sp.mass_gap;
  rep.mass_gap_drift = sp.drift;
  rep.alternative_mass_gap = special_test(rep.b0, rep.a_prime, n, tol, other).mass_gap;
  rep.g0_prime = g0_prime(rep.b0, rep.a_prime, n, opt.g0_form);

  try {
    rep.rigidity = rigidity_test(rep.g0_prime, cfg.ladder, K, cfg.rank_tol);
  } catch (const PreconditionError& e) {
    rep.rigidity.verdict = Rigidity::indeterminate;
    rep.reason = e.what();
  }

  try {
    rep.phi = toeplitz_symbol(g, u, K);
    rep.symbol_ref = "G^H U^H G^{-1} on " + std::to_string(K) + " boundary points";
    for (int m : cfg.ladder) rep.ladder.push_back(cross_check(*rep.phi, g, u, m, cfg.rank_tol));
    rep.cross_check_angle = rep.ladder.back().cross_check_angle;
  } catch (const PreconditionError& e) {
    if (rep.reason.empty()) rep.reason = e.what();
    rep.cross_check_angle = std::acos(-1.0) / 2;
  }

  if (rep.divisibility == Verdict::fail) {
    rep.final = Final::not_kernel;
    rep.reason = "B is not divisible by U";
  } else if (rep.special == Verdict::fail) {
    rep.final = Final::not_kernel;
    rep.reason = "pair (B0, A') is not special";
  } else if (rep.rigidity.verdict == Rigidity::non_rigid) {
    rep.final = Final::not_kernel;
    rep.reason = "G0'^2 is not rigid";
  } else if (rep.special == Verdict::indeterminate || rep.rigidity.verdict == Rigidity::indeterminate ||
             rep.divisibility == Verdict::indeterminate) {
    rep.final = Final::indeterminate;
    if (rep.reason.empty()) rep.reason = "a sub-verdict is indeterminate at this truncation";
  } else if (rep.phi && rep.cross_check_angle <= opt.angle_tol) {
    rep.final = Final::is_kernel;
    rep.reason.clear();
  } else {
    rep.final = Final::indeterminate;
    rep.reason = "kernel cross-check disagrees with G K_U";
  }
  return rep;
}

Construction construct_kernel(const MatrixSymbol& g0p, const MatrixSymbol& u, const ToleranceConfig& cfg,
                              const HayashiOptions& opt) {
  cfg.validate();
  if (!g0p.is_square()) throw PreconditionError("construct_kernel: G0' must be square");
  if (!u.is_square() || u.rows() != g0p.cols()) throw DimensionError("construct_kernel: U does not fit G0'");
  check_model_inner(u, "construct_kernel");
  const int n = cfg.trunc_degree, top = 2 * n;
  const int K = working_grid(top, cfg);
  const Index r = g0p.cols();

  Construction c;
  c.rigidity = rigidity_test(g0p, cfg.ladder, K, cfg.rank_tol);
  if (c.rigidity.verdict != Rigidity::rigid)
    throw PreconditionError(std::string("construct_kernel: rigidity sub-verdict is ") + to_string(c.rigidity.verdict));

  const MatrixSymbol f0 = herglotz_taylor(symbol_mul(adjoint_flip(g0p), g0p), top);
  c.b0 = cayley(f0, top);
  const MatrixSymbol phi0 = MatrixSymbol::identity(r) - symbol_mul(adjoint_flip(c.b0), c.b0);
  c.a_prime = bauer_factorize(phi0, top, K).a;
  c.special = special_test(c.b0, c.a_prime, top, cfg.residual_tol, opt.g0_form);
  if (c.special.verdict != Verdict::pass)
    throw PreconditionError(std::string("construct_kernel: special sub-verdict is ") + to_string(c.special.verdict));

  const MatrixSymbol ib = MatrixSymbol::identity(r) - symbol_mul_truncated(u, c.b0, top);
  const MatrixSymbol g = symbol_mul_truncated(c.a_prime, series_inverse(ib, top), top).window(0, top);
  c.normalization = gram_mass(g, top);
  c.g = normalize_columns(g);
  c.phi = toeplitz_symbol(c.g, u, K);
  c.f = image_of_model_space(c.g, u, n, cfg.rank_tol);
  for (int m : {n, top}) c.checks.push_back(cross_check(c.phi, c.g, u, m, cfg.rank_tol));
  return c;
}

Embedding embed_rect(const MatrixSymbol& g, const MatrixSymbol& u, const ToleranceConfig& cfg,
                     const HayashiOptions& opt) {
  cfg.validate();
  Embedding e;
  e.outer = shift_span(g, std::max(g.max_deg(), 1), cfg.rank_tol);
  if (e.outer.verdict != OuterVerdict::outer) throw PreconditionError("embed_rect: G is not outer");
  const Index m = g.rows(), r = e.outer.rank;
  if (r == m) throw PreconditionError("embed_rect: G has full rank r = m, use classify_kernel");
  if (!u.is_square() || u.rows() != r) throw DimensionError("embed_rect: U must be r x r");
  e.theta = complete_unitary(e.outer.theta0);
  e.reduced = classify_kernel(e.outer.g_tilde, u, cfg, opt);
  const int n = cfg.trunc_degree;
  e.phi = toeplitz_symbol(g, u, working_grid(n, cfg), &e.outer);
  e.kernel = kernel_basis(build_toeplitz(e.phi.laurent, n), cfg.rank_tol).basis;
  e.cross_check_angle = subspace_angle(e.kernel, image_of_model_space(g, u, n, cfg.rank_tol));
  return e;
}

HbSolve hb_plus(const HardyElement& h, const Pair& pair, int degree) {
  if (h.dim() != pair.b.rows()) throw DimensionError("hb_plus: h does not fit B");
  auto solve = [&](int d) {
    const CMatrix ta = build_toeplitz(adjoint_flip(pair.a), d).matrix;
    const CMatrix tb = build_toeplitz(adjoint_flip(pair.b), d).matrix;
    const CVector rhs = tb * h.stacked(d);
    const CVector x = ta.colPivHouseholderQr().solve(rhs);
    return std::pair<CVector, double>(x, (ta * x - rhs).norm());
  };
  const auto [x, res] = solve(degree);
  const auto [xh, resh] = solve(degree / 2);
  (void)resh;
  HbSolve out;
  out.h_plus = HardyElement::from_stacked(x, pair.a.rows());
  out.residual = res;
  out.drift = (x.head(xh.size()) - xh).norm();
  return out;
}

cplx hb_inner(const HardyElement& h1, const HardyElement& h2, const Pair& pair, int degree, double tol) {
  const auto s1 = hb_plus(h1, pair, degree);
  const auto s2 = hb_plus(h2, pair, degree);
  if (std::max(s1.residual, s2.residual) > tol) throw NumericalError("hb_inner: not in H(B) at this truncation");
  return inner(h1, h2) + inner(s1.h_plus, s2.h_plus);
}

}  // namespace hardy
