#include "hardy/sampling.hpp"

#include <cmath>
#include <numbers>

#include <unsupported/Eigen/FFT>
#include <unsupported/Eigen/MatrixFunctions>

namespace hardy {

namespace {

void check_grid(int k) {
  if (k <= 0 || (k & (k - 1)) != 0) throw PreconditionError("grid size must be a power of two");
}

void check_same_shape(const SampledSymbol& a, const SampledSymbol& b) {
  if (a.grid_size() != b.grid_size()) throw DimensionError("sample grids differ");
  if (a.rows != b.rows || a.cols != b.cols) throw DimensionError("sample shapes differ");
}

cplx half_shift(int k, int grid) {
  return std::polar(1.0, std::numbers::pi * k / grid);
}

int wrap(int k, int grid) { return ((k % grid) + grid) % grid; }

}  // namespace

cplx grid_point(int j, int grid_size) {
  return std::polar(1.0, 2.0 * std::numbers::pi * (j + 0.5) / grid_size);
}

SampledSymbol sample(const MatrixSymbol& a, int grid_size) {
  check_grid(grid_size);
  const int K = grid_size;
  SampledSymbol out{a.rows(), a.cols(), std::vector<CMatrix>(K, CMatrix::Zero(a.rows(), a.cols()))};
  Eigen::FFT<double> fft;
  std::vector<cplx> spec(K), vals(K);
  for (Index r = 0; r < a.rows(); ++r) {
    for (Index c = 0; c < a.cols(); ++c) {
      std::fill(spec.begin(), spec.end(), cplx(0.0));
      for (int k = a.min_deg(); k <= a.max_deg(); ++k) spec[wrap(k, K)] += a.at(k)(r, c) * half_shift(k, K);
      fft.inv(vals, spec);
      for (int j = 0; j < K; ++j) out.values[j](r, c) = vals[j] * static_cast<double>(K);
    }
  }
  return out;
}

MatrixSymbol to_symbol(const SampledSymbol& s, int lo, int hi) {
  const int K = s.grid_size();
  check_grid(K);
  if (hi < lo || hi - lo + 1 > K) throw DimensionError("coefficient window wider than the grid");
  MatrixSymbol out(s.rows, s.cols, lo, hi);
  Eigen::FFT<double> fft;
  std::vector<cplx> vals(K), spec(K);
  for (Index r = 0; r < s.rows; ++r) {
    for (Index c = 0; c < s.cols; ++c) {
      for (int j = 0; j < K; ++j) vals[j] = s.values[j](r, c);
      fft.fwd(spec, vals);
      for (int k = lo; k <= hi; ++k)
        out.at(k)(r, c) = spec[wrap(k, K)] * std::conj(half_shift(k, K)) / static_cast<double>(K);
    }
  }
  return out;
}

MatrixSymbol taylor_from_boundary(const std::function<CMatrix(cplx)>& f, Index rows, Index cols,
                                  int degree, int grid_size) {
  check_grid(grid_size);
  if (degree + 1 > grid_size) throw DimensionError("degree too large for grid");
  SampledSymbol s{rows, cols, {}};
  s.values.reserve(grid_size);
  for (int j = 0; j < grid_size; ++j) {
    CMatrix v = f(grid_point(j, grid_size));
    if (v.rows() != rows || v.cols() != cols) throw DimensionError("closed form returned wrong shape");
    s.values.push_back(std::move(v));
  }
  return to_symbol(s, 0, degree);
}

MatrixSymbol taylor_from_boundary(const std::function<cplx(cplx)>& f, int degree, int grid_size) {
  return taylor_from_boundary(
      [&f](cplx z) {
        CMatrix m(1, 1);
        m(0, 0) = f(z);
        return m;
      },
      1, 1, degree, grid_size);
}

SampledSymbol pointwise_mul(const SampledSymbol& a, const SampledSymbol& b) {
  if (a.grid_size() != b.grid_size()) throw DimensionError("sample grids differ");
  if (a.cols != b.rows) throw DimensionError("pointwise_mul shape mismatch");
  SampledSymbol out{a.rows, b.cols, std::vector<CMatrix>(a.values.size())};
  for (size_t j = 0; j < a.values.size(); ++j) out.values[j] = a.values[j] * b.values[j];
  return out;
}

SampledSymbol pointwise_adjoint(const SampledSymbol& a) {
  SampledSymbol out{a.cols, a.rows, std::vector<CMatrix>(a.values.size())};
  for (size_t j = 0; j < a.values.size(); ++j) out.values[j] = a.values[j].adjoint();
  return out;
}

SampledSymbol pointwise_inverse(const SampledSymbol& a) {
  if (a.rows != a.cols) throw DimensionError("pointwise_inverse needs square samples");
  SampledSymbol out{a.rows, a.cols, std::vector<CMatrix>(a.values.size())};
  for (size_t j = 0; j < a.values.size(); ++j) {
    Eigen::JacobiSVD<CMatrix> svd(a.values[j]);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) <= 1e-14 * std::max(1.0, sv(0)))
      throw PreconditionError("pointwise_inverse: singular sample");
    out.values[j] = a.values[j].inverse();
  }
  return out;
}

double sup_norm(const SampledSymbol& a) {
  double worst = 0.0;
  for (const auto& v : a.values) {
    Eigen::JacobiSVD<CMatrix> svd(v);
    worst = std::max(worst, svd.singularValues()(0));
  }
  return worst;
}

double sup_distance(const SampledSymbol& a, const SampledSymbol& b) {
  check_same_shape(a, b);
  double worst = 0.0;
  for (size_t j = 0; j < a.values.size(); ++j) {
    Eigen::JacobiSVD<CMatrix> svd(a.values[j] - b.values[j]);
    worst = std::max(worst, svd.singularValues()(0));
  }
  return worst;
}

SampledSymbol matrix_pointwise(const SampledSymbol& a, PointwiseKind kind, double tol) {
  if (a.rows != a.cols) throw DimensionError("matrix_pointwise needs square samples");
  SampledSymbol out{a.rows, a.cols, std::vector<CMatrix>(a.values.size())};
  for (size_t j = 0; j < a.values.size(); ++j) {
    const CMatrix& v = a.values[j];
    if (kind == PointwiseKind::exp) {
      out.values[j] = v.exp();
      continue;
    }
    const double scale = std::max(1.0, v.norm());
    if ((v - v.adjoint()).norm() > tol * scale * 1e4)
      throw PreconditionError("matrix_pointwise: sample is not Hermitian");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (v + v.adjoint()));
    Eigen::VectorXd ev = es.eigenvalues();
    if (kind == PointwiseKind::sqrt_psd) {
      if (ev.minCoeff() < -tol * scale) throw PreconditionError("sqrt_psd: indefinite sample");
      ev = ev.cwiseMax(0.0).cwiseSqrt();
    } else {
      if (ev.minCoeff() <= tol * scale) throw PreconditionError("log_pd: sample is not positive definite");
      ev = ev.array().log().matrix();
    }
    out.values[j] = es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
  }
  return out;
}

SampledSymbol matrix_pointwise(const MatrixSymbol& a, PointwiseKind kind, int grid_size, double tol) {
  return matrix_pointwise(sample(a, grid_size), kind, tol);
}

PolarSamples matrix_polar(const SampledSymbol& a, double tol) {
  if (a.rows != a.cols) throw DimensionError("matrix_polar needs square samples");
  PolarSamples out{{a.rows, a.cols, std::vector<CMatrix>(a.values.size())},
                   {a.rows, a.cols, std::vector<CMatrix>(a.values.size())}};
  for (size_t j = 0; j < a.values.size(); ++j) {
    Eigen::JacobiSVD<CMatrix> svd(a.values[j], Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) <= tol * std::max(1.0, sv(0))) throw PreconditionError("matrix_polar: singular sample");
    const CMatrix& V = svd.matrixV();
    out.unitary.values[j] = svd.matrixU() * V.adjoint();
    out.positive.values[j] = V * sv.cast<cplx>().asDiagonal() * V.adjoint();
  }
  return out;
}

}  // namespace hardy
