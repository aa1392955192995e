#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "entroscope/quantum.hpp"

namespace entroscope {

// ---------------------------------------------------------------------------
// SystemLayout

SystemLayout::SystemLayout(std::vector<Subsystem> subsystems) : subsystems_(std::move(subsystems)) {
  std::set<std::string> seen;
  for (const auto& s : subsystems_) {
    if (s.dim < 1) throw InvalidArgument("subsystem '" + s.label + "' has dimension < 1");
    if (s.label.empty()) throw InvalidArgument("empty subsystem label");
    if (!seen.insert(s.label).second) throw InvalidArgument("duplicate subsystem label '" + s.label + "'");
  }
}

SystemLayout SystemLayout::single(Index dim, std::string label) {
  return SystemLayout({Subsystem{std::move(label), dim}});
}

SystemLayout SystemLayout::from_dims(const std::vector<Index>& dims) {
  std::vector<Subsystem> subs;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    std::string label = i < 26 ? std::string(1, char('A' + i)) : "S" + std::to_string(i);
    subs.push_back({label, dims[i]});
  }
  return SystemLayout(std::move(subs));
}

Index SystemLayout::total_dim() const {
  Index d = 1;
  for (const auto& s : subsystems_) d *= s.dim;
  return d;
}

bool SystemLayout::contains(const std::string& label) const {
  return std::any_of(subsystems_.begin(), subsystems_.end(), [&](const Subsystem& s) { return s.label == label; });
}

std::size_t SystemLayout::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < subsystems_.size(); ++i)
    if (subsystems_[i].label == label) return i;
  throw InvalidArgument("unknown subsystem label '" + label + "'");
}

Index SystemLayout::dim_of(const std::string& label) const { return subsystems_[index_of(label)].dim; }

SystemLayout SystemLayout::restricted_to(const std::vector<std::string>& labels) const {
  for (const auto& l : labels) index_of(l);
  std::vector<Subsystem> subs;
  for (const auto& s : subsystems_)
    if (std::find(labels.begin(), labels.end(), s.label) != labels.end()) subs.push_back(s);
  return SystemLayout(std::move(subs));
}

SystemLayout SystemLayout::concat(const SystemLayout& other) const {
  std::vector<Subsystem> subs = subsystems_;
  subs.insert(subs.end(), other.subsystems_.begin(), other.subsystems_.end());
  return SystemLayout(std::move(subs));
}

SystemLayout SystemLayout::with_dim(const std::string& label, Index dim) const {
  std::vector<Subsystem> subs = subsystems_;
  subs[index_of(label)].dim = dim;
  return SystemLayout(std::move(subs));
}

std::vector<std::string> SystemLayout::labels() const {
  std::vector<std::string> out;
  for (const auto& s : subsystems_) out.push_back(s.label);
  return out;
}

// ---------------------------------------------------------------------------
// HermitianOperator

HermitianOperator::HermitianOperator(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) throw InvalidArgument("operator is not square");
  if (m.rows() == 0) throw InvalidArgument("operator has dimension 0");
  if (!m.allFinite()) throw InvalidArgument("operator has non-finite entries");
  double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (asym > tol * scale)
    throw InvalidArgument("operator is not Hermitian (deviation " + std::to_string(asym) + ")");
  m_ = hermitian_part(m);
}

HermitianOperator HermitianOperator::identity(Index dim) { return HermitianOperator(Matrix::Identity(dim, dim)); }

HermitianOperator HermitianOperator::zero(Index dim) { return HermitianOperator(Matrix::Zero(dim, dim)); }

HermitianOperator HermitianOperator::diagonal(const std::vector<double>& diag) {
  Matrix m = Matrix::Zero(Index(diag.size()), Index(diag.size()));
  for (std::size_t i = 0; i < diag.size(); ++i) m(Index(i), Index(i)) = diag[i];
  return HermitianOperator(m);
}

HermitianOperator HermitianOperator::projector(const Vector& ket) {
  Vector v = ket / ket.norm();
  return HermitianOperator(v * v.adjoint());
}

double HermitianOperator::min_eigenvalue() const { return eigenvalues().minCoeff(); }

double HermitianOperator::max_eigenvalue() const { return eigenvalues().maxCoeff(); }

bool HermitianOperator::is_psd(double rel_tol) const {
  RealVector ev = eigenvalues();
  double top = std::max(std::abs(ev.maxCoeff()), std::numeric_limits<double>::min());
  return ev.minCoeff() >= -rel_tol * top;
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& o) const {
  if (dim() != o.dim()) throw InvalidArgument("dimension mismatch in operator sum");
  return HermitianOperator(m_ + o.m_);
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& o) const {
  if (dim() != o.dim()) throw InvalidArgument("dimension mismatch in operator difference");
  return HermitianOperator(m_ - o.m_);
}

HermitianOperator HermitianOperator::operator*(double s) const { return HermitianOperator(s * m_); }

HermitianOperator operator*(double s, const HermitianOperator& h) { return h * s; }

HermitianOperator tensor_product(const HermitianOperator& a, const HermitianOperator& b) {
  return HermitianOperator(kron(a.matrix(), b.matrix()));
}

// ---------------------------------------------------------------------------
// spectral helpers

HermitianOperator fn_on_support(const HermitianOperator& x, const std::function<double(double)>& f) {
  return HermitianOperator(apply_on_support(x.matrix(), f));
}

HermitianOperator support_projector(const HermitianOperator& x) {
  return fn_on_support(x, [](double) { return 1.0; });
}

HermitianOperator positive_part_projector(const HermitianOperator& delta) {
  EigenSystem es = delta.eig();
  double scale = es.values.size() ? es.values.cwiseAbs().maxCoeff() : 0.0;
  double cutoff = kSupportCutoff * scale;
  Matrix p = Matrix::Zero(delta.dim(), delta.dim());
  for (Index i = 0; i < es.values.size(); ++i)
    if (es.values(i) > cutoff && scale > 0.0) p += es.vectors.col(i) * es.vectors.col(i).adjoint();
  return HermitianOperator(p);
}

Matrix weyl_shift(Index d) {
  Matrix u = Matrix::Zero(d, d);
  for (Index j = 0; j < d; ++j) u((j + 1) % d, j) = 1.0;
  return u;
}

Matrix weyl_clock(Index d) {
  Matrix v = Matrix::Zero(d, d);
  for (Index k = 0; k < d; ++k) v(k, k) = std::polar(1.0, 2.0 * std::numbers::pi * double(k) / double(d));
  return v;
}

}  // namespace entroscope
