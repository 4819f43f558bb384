#pragma once

#include <vector>

#include "hardy/config.hpp"
#include "hardy/symbol.hpp"
#include "hardy/toeplitz.hpp"

namespace hardy {

/// Orthonormal basis of K_U = H^2 (-) U H^2 among polynomials of degree <= N,
/// computed as the null space of the finite section of T_{U*}.
/// Throws PreconditionError when N < deg U or U is not inner.
SubspaceBasis model_space_basis(const MatrixSymbol& u, int degree, double rank_tol = 1e-8);

struct NearInvariance {
  bool invariant = false;
  double residual = 0.0;      // worst distance of S* f from the span, ||f|| = 1
  Index vanishing_dim = 0;    // dim of {f in F : f(0) = 0}
};

/// Checks S* f in F for every f in F with f(0) = 0.
NearInvariance is_nearly_invariant(const SubspaceBasis& f, double tol = 1e-8);

struct ExtractedW {
  MatrixSymbol g;  // m x r, orthonormal columns spanning W
  Index r = 0;
};

/// W = F (-) (F intersect z H^2), as the span of the projected reproducing
/// kernels at 0, orthonormalized in coordinate order.
ExtractedW extract_W(const SubspaceBasis& f, double tol = 1e-8);

struct HerglotzData {
  MatrixSymbol f;          // Taylor degree N
  CMatrix v;               // Im F(0)
  double f0_defect = 0.0;  // ||F(0) - I||
};

struct SarasonResult {
  HerglotzData herglotz;
  MatrixSymbol b;
};

/// G (G^H G)_0^{-1/2}: restores unit orthonormal columns after truncation.
MatrixSymbol normalize_columns(const MatrixSymbol& g);

/// F = Herglotz(G^H G), B = (F + I)^{-1}(F - I), both to degree N.
/// Throws PreconditionError when the columns of G are not orthonormal
/// (||G^H G(0) - I|| > orth_tol).
SarasonResult sarason_B(const MatrixSymbol& g, int degree, double orth_tol = 1e-6);

/// k^B_lambda u = (I - B(z) B(lambda)^H) u / (1 - conj(lambda) z), degree N.
HardyElement dbr_kernel(const MatrixSymbol& b, cplx lambda, const CVector& u, int degree);

struct KernelProbe {
  cplx w;
  CVector u;
  cplx z;
  CVector v;
};

/// max over probes of | <G k_w u, G k_z v>_{H^2} - <k^B_w a, k^B_z b>_{H(B)} |
/// with a = (I - B(w)^H)^{-1} u, b = (I - B(z)^H)^{-1} v. The left side is
/// summed from coefficients at degree 4N, the right side uses the
/// reproducing property.
double verify_lemma31(const MatrixSymbol& g, const MatrixSymbol& b, const std::vector<KernelProbe>& probes,
                      int degree);

/// Deterministic probe set with |w|, |z| <= 0.6.
std::vector<KernelProbe> random_probes(Index dim, int count, unsigned seed);

/// ||Gram(p_+(G k) : k in basis K_U) - I||_2.
double isometry_defect(const MatrixSymbol& g, const MatrixSymbol& u, int degree);

enum class Band { small, borderline, large };

struct SarasonEquivalence {
  double isometry_defect = 0.0;
  double divisibility_defect = 0.0;
  double tb_star_annihilation = 0.0;  // ||T_{B*} restricted to K_U||
  Verdict verdict = Verdict::indeterminate;  // pass: all small, fail: all large
  double tolerance = 0.0;
};

/// The three equivalent conditions of the Sarason isometry criterion with a
/// 10x consistency band around tol. A mix of small and large quantities is
/// reported as indeterminate.
SarasonEquivalence sarason_equivalence(const MatrixSymbol& g, const MatrixSymbol& u, int degree,
                                       double tol = 1e-8);

struct Division {
  HardyElement h;
  double residual = 0.0;     // ||G h - f||
  double norm_defect = 0.0;  // | ||h|| - ||f|| |
  bool ok = false;
};

/// h = T_{I-B} T_{G*} f at degree N; ok when G h reproduces f within 10 tol.
Division divide_by_G(const HardyElement& f, const MatrixSymbol& g, const MatrixSymbol& b, int degree,
                     double tol = 1e-8);

/// ||p_-(U^H B U)||_{L^2} for B = [[b1, b2], [-b2, -b1]] and Garcia's U built
/// from theta with a = (1 + theta)/2, b = -i(1 - theta)/2.
double counterexample_UBU(const MatrixSymbol& theta, const MatrixSymbol& b1, const MatrixSymbol& b2);

}  // namespace hardy
