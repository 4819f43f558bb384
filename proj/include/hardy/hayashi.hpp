#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hardy/config.hpp"
#include "hardy/inner_outer.hpp"
#include "hardy/sampling.hpp"
#include "hardy/symbol.hpp"
#include "hardy/toeplitz.hpp"

namespace hardy {

/// Corona pair (B, A): A outer with A^H A + B^H B = I on the circle.
struct Pair {
  MatrixSymbol b;
  MatrixSymbol a;
  double identity_residual = 0.0;  // sup_grid ||A^H A + B^H B - I||
  double mass_gap = 0.0;
  Verdict special = Verdict::indeterminate;
};

/// A from the Bauer factor of I - B^H B; A(0) Hermitian positive definite.
/// Throws PreconditionError when B is not a strict contraction on the grid.
Pair pair_from_B(const MatrixSymbol& b, int degree, int grid_size, double tol = 1e-8);

/// Which product stands for G0'. `inverse` is A'(I - B0)^{-1}; `printed` is
/// A'(I - B0), kept for comparison only.
enum class G0Form { inverse, printed };

MatrixSymbol g0_prime(const MatrixSymbol& b0, const MatrixSymbol& a_prime, int degree,
                      G0Form form = G0Form::inverse);

struct SpecialReport {
  double mass_gap = 0.0;  // ||Re F0(0) - sum_k G0'_k^H G0'_k||_2
  double drift = 0.0;     // change of the Gram mass between N/2 and N
  Verdict verdict = Verdict::indeterminate;
};

/// Total-mass test at 0: special iff the Hermitian part of
/// (I + B0(0))(I - B0(0))^{-1} equals the Gram mass of G0'.
SpecialReport special_test(const MatrixSymbol& b0, const MatrixSymbol& a_prime, int degree,
                           double tol = 1e-8, G0Form form = G0Form::inverse);

enum class Rigidity { rigid, non_rigid, indeterminate };
const char* to_string(Rigidity r);

struct RigidityReport {
  Rigidity verdict = Rigidity::indeterminate;
  std::vector<int> ladder;
  std::vector<double> sigma_min;
  std::vector<double> gap;
  std::optional<HardyElement> witness;  // unit norm, largest entry real positive
  double witness_residual = 0.0;        // ||T v|| at the witness degree
};

/// Finite sections of T_{F^H F^{-1}} along the ladder. Non-rigid when a
/// determinate kernel shows up; rigid when sigma_min stays above `floor`
/// and the last value keeps at least half of the first.
RigidityReport rigidity_test(const MatrixSymbol& f, const std::vector<int>& ladder, int grid_size,
                             double rank_tol = 1e-8, double floor = 1e-4);

struct ToeplitzSymbol {
  SampledSymbol samples;
  MatrixSymbol laurent;  // window [-K/2, K/2 - 1]
  double sup_norm = 0.0;
};

/// G^H U^H G^{-1} on the grid for square G. For r < m pass the outer report
/// of G; the symbol is then Theta diag(G~^H U^H G~^{-1}, I) Theta^H.
ToeplitzSymbol toeplitz_symbol(const MatrixSymbol& g, const MatrixSymbol& u, int grid_size,
                               const OuterReport* outer = nullptr);

/// Orthonormal basis of p_+(G k), k in K_U, cut at degree N.
SubspaceBasis image_of_model_space(const MatrixSymbol& g, const MatrixSymbol& u, int degree,
                                   double rank_tol = 1e-8);

enum class Final { is_kernel, not_kernel, indeterminate };
const char* to_string(Final f);

struct LadderEntry {
  int n = 0;
  double cross_check_angle = 0.0;
  Index kernel_dim = 0;
  Index expected_dim = 0;
};

struct HayashiOptions {
  double angle_tol = 1e-5;
  G0Form g0_form = G0Form::inverse;
};

struct ClassificationReport {
  Verdict divisibility = Verdict::indeterminate;
  double divisibility_defect = 0.0;
  Verdict special = Verdict::indeterminate;
  double mass_gap = 0.0;
  double mass_gap_drift = 0.0;
  double alternative_mass_gap = 0.0;  // with the other G0' form
  RigidityReport rigidity;
  Final final = Final::indeterminate;
  std::string reason;
  MatrixSymbol b, b0, a_prime, g0_prime;
  std::optional<ToeplitzSymbol> phi;
  std::string symbol_ref;
  double cross_check_angle = 0.0;
  std::vector<LadderEntry> ladder;
};

/// Hayashi classification of F = G K_U for square G with orthonormal columns
/// and full-rank inner U with U(0) = 0.
ClassificationReport classify_kernel(const MatrixSymbol& g, const MatrixSymbol& u, const ToleranceConfig& cfg,
                                     const HayashiOptions& opt = {});

struct Construction {
  MatrixSymbol g;              // degree 2N, orthonormal columns
  CMatrix normalization;       // Gram of the unnormalized G at 0
  MatrixSymbol b0, a_prime;
  SubspaceBasis f;             // at degree N
  ToeplitzSymbol phi;
  std::vector<LadderEntry> checks;  // N and 2N
  RigidityReport rigidity;
  SpecialReport special;
};

/// Recipe: F0 = Herglotz(G0'^H G0'), B0 = Cayley(F0), A' = Bauer(I - B0^H B0),
/// G = A'(I - U B0)^{-1}, columns normalized. Checked at N and 2N.
Construction construct_kernel(const MatrixSymbol& g0p, const MatrixSymbol& u, const ToleranceConfig& cfg,
                              const HayashiOptions& opt = {});

struct Embedding {
  CMatrix theta;  // m x m unitary, first r columns Theta0
  OuterReport outer;
  ClassificationReport reduced;
  ToeplitzSymbol phi;
  SubspaceBasis kernel;
  double cross_check_angle = 0.0;
};

/// r < m: reduce G = Theta0 G~, classify G~ K_U, lift the symbol back.
Embedding embed_rect(const MatrixSymbol& g, const MatrixSymbol& u, const ToleranceConfig& cfg,
                     const HayashiOptions& opt = {});

struct HbSolve {
  HardyElement h_plus;
  double residual = 0.0;
  double drift = 0.0;  // ||h+ at N - h+ at N/2|| on the common window
};

/// h+ with T_{A*} h+ = T_{B*} h, least squares at degree N.
HbSolve hb_plus(const HardyElement& h, const Pair& pair, int degree);

/// <h1, h2>_{H(B)} = <h1, h2> + <h1+, h2+>. Throws NumericalError when a solve
/// residual exceeds tol.
cplx hb_inner(const HardyElement& h1, const HardyElement& h2, const Pair& pair, int degree, double tol = 1e-8);

}  // namespace hardy
