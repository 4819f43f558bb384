#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace hardy {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Shapes of operands do not fit together.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An input violates a mathematical precondition of the operation
/// (non-Hermitian density, indefinite sample, non-inner U, ...).
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical procedure could not reach a decision at the requested
/// truncation.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Three-valued outcome used by every finite-section decision procedure.
enum class Verdict { pass, fail, indeterminate };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

}  // namespace hardy
