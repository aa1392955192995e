#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace entroscope {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Relative eigenvalue cutoff below which a spectral component is treated as
/// outside the support of an operator.
inline constexpr double kSupportCutoff = 1e-10;

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an argument violates a documented precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
struct EigenSystem {
  RealVector values;
  Matrix vectors;
};

EigenSystem hermitian_eig(const Matrix& m);
RealVector hermitian_eigenvalues(const Matrix& m);

/// Kronecker product a ⊗ b.
Matrix kron(const Matrix& a, const Matrix& b);

/// Sum of singular values.
double trace_norm(const Matrix& m);

/// Largest singular value.
double operator_norm(const Matrix& m);

/// (m + m†)/2
Matrix hermitian_part(const Matrix& m);

/// Rebuilds V diag(f(λ)) V† from an eigensystem; f is applied to every value.
Matrix spectral_map(const EigenSystem& es, const std::function<double(double)>& f);

/// Applies f to eigenvalues with |λ| above kSupportCutoff·max|λ| and maps the
/// rest to zero. Throws InvalidArgument when f is not finite on a supported
/// eigenvalue.
Matrix apply_on_support(const Matrix& hermitian, const std::function<double(double)>& f);

/// Matrix square root of a PSD matrix (negative noise clipped to zero).
Matrix psd_sqrt(const Matrix& psd);

/// log₂ that maps 0 to -inf instead of producing NaN for tiny negatives.
double log2_clamped(double x);

}  // namespace entroscope
