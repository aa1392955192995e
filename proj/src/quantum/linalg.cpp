#include "entroscope/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace entroscope {

EigenSystem hermitian_eig(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(m));
  if (solver.info() != Eigen::Success) throw Error("eigendecomposition failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector hermitian_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(m), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("eigendecomposition failed");
  return solver.eigenvalues();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

double trace_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

Matrix spectral_map(const EigenSystem& es, const std::function<double(double)>& f) {
  RealVector mapped(es.values.size());
  for (Index i = 0; i < es.values.size(); ++i) mapped(i) = f(es.values(i));
  return es.vectors * mapped.cast<cplx>().asDiagonal() * es.vectors.adjoint();
}

Matrix apply_on_support(const Matrix& hermitian, const std::function<double(double)>& f) {
  EigenSystem es = hermitian_eig(hermitian);
  double scale = es.values.size() ? es.values.cwiseAbs().maxCoeff() : 0.0;
  double cutoff = kSupportCutoff * scale;
  RealVector mapped = RealVector::Zero(es.values.size());
  for (Index i = 0; i < es.values.size(); ++i) {
    double lambda = es.values(i);
    if (std::abs(lambda) <= cutoff || scale == 0.0) continue;
    double v = f(lambda);
    if (!std::isfinite(v))
      throw InvalidArgument("function undefined on supported eigenvalue " + std::to_string(lambda));
    mapped(i) = v;
  }
  return es.vectors * mapped.cast<cplx>().asDiagonal() * es.vectors.adjoint();
}

Matrix psd_sqrt(const Matrix& psd) {
  return spectral_map(hermitian_eig(psd), [](double x) { return std::sqrt(std::max(x, 0.0)); });
}

double log2_clamped(double x) {
  if (x <= 0.0) return -std::numeric_limits<double>::infinity();
  return std::log2(x);
}

}  // namespace entroscope
