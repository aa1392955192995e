#include <cmath>

#include "detail.hpp"
#include "entroscope/entropy.hpp"

namespace entroscope {

namespace {

void check_dims(const QState& rho, const HermitianOperator& sigma) {
  if (rho.dim() != sigma.dim()) throw InvalidArgument("rho and sigma have different dimensions");
  if (!sigma.is_psd()) throw InvalidArgument("sigma is not positive semidefinite");
}

// Weight of ρ outside the support of σ, relative to tr ρ.
bool escapes_support(const QState& rho, const HermitianOperator& sigma) {
  Matrix kernel = Matrix::Identity(rho.dim(), rho.dim()) - support_projector(sigma).matrix();
  return (kernel * rho.matrix()).trace().real() > kSupportCutoff * rho.trace();
}

double entropy_of(const RealVector& spectrum) {
  double cut = kSupportCutoff * spectrum.cwiseAbs().maxCoeff();
  double h = 0.0;
  for (double l : spectrum)
    if (l > cut) h -= l * std::log2(l);
  return h;
}

}  // namespace

EntropyValue d_max(const QState& rho, const HermitianOperator& sigma) {
  check_dims(rho, sigma);
  if (escapes_support(rho, sigma)) return EntropyValue::plus_infinity("support");
  Matrix inv_sqrt = apply_on_support(sigma.matrix(), [](double x) { return 1.0 / std::sqrt(x); });
  double lmax = hermitian_eigenvalues(hermitian_part(inv_sqrt * rho.matrix() * inv_sqrt)).maxCoeff();
  return EntropyValue::finite(std::log2(lmax), "spectral");
}

EntropyValue d_min(const QState& rho, const HermitianOperator& sigma) {
  check_dims(rho, sigma);
  double f = root_fidelity(rho.matrix(), sigma.matrix());
  if (f <= 1e-12 * std::sqrt(rho.trace() * std::max(sigma.trace(), 0.0))) return EntropyValue::plus_infinity("orthogonal");
  return EntropyValue::finite(-2.0 * std::log2(f), "spectral");
}

double von_neumann(const QState& rho) { return entropy_of(rho.op().eigenvalues()); }

double h_cond_vn(const QState& rho_ab, const Partition& p) {
  detail::check_partition(p, rho_ab.layout());
  double h_ab = von_neumann(rho_ab);
  if (p.b.empty()) return h_ab;
  Matrix rho_b = partial_trace(rho_ab.matrix(), rho_ab.layout(), p.b);
  return h_ab - entropy_of(hermitian_eigenvalues(rho_b));
}

EntropyValue kl_div(const QState& rho, const HermitianOperator& sigma) {
  check_dims(rho, sigma);
  if (escapes_support(rho, sigma)) return EntropyValue::plus_infinity("support");
  Matrix log_sigma = apply_on_support(sigma.matrix(), [](double x) { return std::log2(x); });
  double cross = (rho.matrix() * log_sigma).trace().real();
  return EntropyValue::finite(-von_neumann(rho) - cross, "spectral");
}

EntropyValue renyi0(const QState& rho, const HermitianOperator& sigma) {
  check_dims(rho, sigma);
  double overlap = (support_projector(rho.op()).matrix() * sigma.matrix()).trace().real();
  if (overlap <= kSupportCutoff * std::max(sigma.trace(), 0.0)) return EntropyValue::plus_infinity("orthogonal");
  return EntropyValue::finite(-std::log2(overlap), "spectral");
}

}  // namespace entroscope
