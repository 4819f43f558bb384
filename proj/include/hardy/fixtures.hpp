#pragma once

#include <string>
#include <vector>

#include "hardy/symbol.hpp"

namespace hardy::fixtures {

/// z^k I_m.
MatrixSymbol z_power(int k, Index m = 1);

/// 1/2 [[1+z, -(1-z)], [z-1, 1+z]]  (theta = z, a = (1+z)/2, b = (1-z)/2).
MatrixSymbol garcia_real();
/// Garcia's V with theta = z: a = (1+z)/2, b = -i(1-z)/2.
MatrixSymbol garcia_complex();
/// z * garcia_real(); det = z^3.
MatrixSymbol z_garcia();

/// (1+z)/sqrt 2.
MatrixSymbol one_plus_z();
/// sqrt 3/(2 - z^2), Taylor degree N.
MatrixSymbol flagship_g(int degree, int grid_size = 0);
/// sqrt 3/(2 - z), Taylor degree N.
MatrixSymbol flagship_g0p(int degree, int grid_size = 0);
/// z/(2+z), Taylor degree N.
MatrixSymbol z_over_2_plus_z(int degree);

/// diag((1+z), (1-z))/sqrt 2.
MatrixSymbol example2_g();
/// diag((1+z)^{1/2}, (1-z)^{1/2}) with unit columns (factor sqrt(pi/4)).
MatrixSymbol example1_g(int degree, int grid_size = 0);
/// (1, 0)^T.
MatrixSymbol example3_g();

/// 1/2 diag(1, -1).
CMatrix recipe_c();
/// (I - C)^{-1}(I - C^H C)^{1/2} for recipe_c.
MatrixSymbol recipe_g0p();

struct NamedSymbol {
  std::string name;
  MatrixSymbol value;
};

/// Strictly contractive analytic B used for pair invariants.
std::vector<NamedSymbol> pair_bs();

/// Inner U used to rebuild pairs (U, UB): z I, z^2 I, and z*garcia for 2x2.
std::vector<NamedSymbol> pair_inners(Index m);

}  // namespace hardy::fixtures
