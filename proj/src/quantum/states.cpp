#include <algorithm>
#include <cmath>

#include "entroscope/quantum.hpp"

namespace entroscope {

namespace {

constexpr double kTraceSlack = 1e-12;

// Offsets of each multi-index over `positions` in the full row-major index.
std::vector<Index> offsets_for(const SystemLayout& layout, const std::vector<std::size_t>& positions) {
  const auto& subs = layout.subsystems();
  std::vector<Index> strides(subs.size(), 1);
  for (std::size_t s = subs.size(); s-- > 1;) strides[s - 1] = strides[s] * subs[s].dim;

  std::vector<Index> offsets{0};
  for (std::size_t p : positions) {
    std::vector<Index> next;
    next.reserve(offsets.size() * std::size_t(subs[p].dim));
    for (Index base : offsets)
      for (Index i = 0; i < subs[p].dim; ++i) next.push_back(base + i * strides[p]);
    offsets = std::move(next);
  }
  return offsets;
}

}  // namespace

QState::QState(HermitianOperator op, SystemLayout layout) : op_(std::move(op)), layout_(std::move(layout)) {
  if (layout_.size() == 0) layout_ = SystemLayout::single(op_.dim());
  if (layout_.total_dim() != op_.dim())
    throw InvalidArgument("layout dimension " + std::to_string(layout_.total_dim()) +
                          " does not match operator dimension " + std::to_string(op_.dim()));
  RealVector ev = op_.eigenvalues();
  double top = std::max(ev.maxCoeff(), 0.0);
  if (ev.minCoeff() < -1e-10 * top || top <= 0.0)
    throw InvalidArgument("state is not positive semidefinite (min eigenvalue " + std::to_string(ev.minCoeff()) + ")");
  trace_ = op_.trace();
  if (!(trace_ > 0.0) || trace_ > 1.0 + kTraceSlack)
    throw InvalidArgument("state trace " + std::to_string(trace_) + " outside (0, 1]");
}

QState::QState(const Matrix& m, SystemLayout layout) : QState(HermitianOperator(m), std::move(layout)) {}

QState QState::from_matrix(const Matrix& m) { return QState(HermitianOperator(m), SystemLayout::single(m.rows())); }

QState QState::pure(const Vector& ket, SystemLayout layout) {
  return QState(HermitianOperator::projector(ket), std::move(layout));
}

QState QState::maximally_mixed(SystemLayout layout) {
  Index d = layout.total_dim();
  return QState(HermitianOperator(Matrix::Identity(d, d) / double(d)), std::move(layout));
}

bool QState::is_normalized(double tol) const { return std::abs(trace_ - 1.0) <= tol; }

QState tensor_product(const QState& a, const QState& b) {
  return QState(tensor_product(a.op(), b.op()), a.layout().concat(b.layout()));
}

QState tensor_power(const QState& a, int n) {
  if (n < 1) throw InvalidArgument("tensor power needs n >= 1");
  auto relabel = [&](int copy) {
    std::vector<Subsystem> subs = a.layout().subsystems();
    for (auto& s : subs) s.label += std::to_string(copy);
    return SystemLayout(subs);
  };
  Matrix m = a.matrix();
  SystemLayout layout = relabel(1);
  for (int k = 2; k <= n; ++k) {
    m = kron(m, a.matrix());
    layout = layout.concat(relabel(k));
  }
  return QState(m, layout);
}

Matrix partial_trace(const Matrix& m, const SystemLayout& layout, const std::vector<std::string>& keep) {
  if (layout.total_dim() != m.rows()) throw InvalidArgument("layout does not match operator dimension");
  std::vector<std::size_t> kept, traced;
  for (const auto& l : keep) layout.index_of(l);
  for (std::size_t s = 0; s < layout.size(); ++s) {
    const auto& label = layout.subsystems()[s].label;
    if (std::find(keep.begin(), keep.end(), label) != keep.end())
      kept.push_back(s);
    else
      traced.push_back(s);
  }
  std::vector<Index> off_k = offsets_for(layout, kept);
  std::vector<Index> off_t = offsets_for(layout, traced);
  Index dk = Index(off_k.size());
  Matrix out = Matrix::Zero(dk, dk);
  for (Index a = 0; a < dk; ++a)
    for (Index b = 0; b < dk; ++b) {
      cplx acc = 0.0;
      for (Index t : off_t) acc += m(off_k[a] + t, off_k[b] + t);
      out(a, b) = acc;
    }
  return out;
}

QState partial_trace(const QState& rho, const std::vector<std::string>& keep) {
  Matrix m = partial_trace(rho.matrix(), rho.layout(), keep);
  SystemLayout layout = rho.layout().restricted_to(keep);
  if (layout.size() == 0) layout = SystemLayout::single(1, "I");
  return QState(m, layout);
}

Matrix permute_systems(const Matrix& m, const SystemLayout& layout, const std::vector<std::string>& order) {
  if (layout.total_dim() != m.rows()) throw InvalidArgument("layout does not match operator dimension");
  if (order.size() != layout.size()) throw InvalidArgument("permutation must list every subsystem once");
  std::vector<std::size_t> positions;
  for (const auto& l : order) {
    std::size_t pos = layout.index_of(l);
    if (std::find(positions.begin(), positions.end(), pos) != positions.end())
      throw InvalidArgument("subsystem " + l + " listed twice");
    positions.push_back(pos);
  }
  std::vector<Index> off = offsets_for(layout, positions);
  Index d = m.rows();
  Matrix out(d, d);
  for (Index a = 0; a < d; ++a)
    for (Index b = 0; b < d; ++b) out(a, b) = m(off[a], off[b]);
  return out;
}

QState permute_systems(const QState& rho, const std::vector<std::string>& order) {
  std::vector<Subsystem> subs;
  for (const auto& l : order) subs.push_back({l, rho.layout().dim_of(l)});
  return QState(permute_systems(rho.matrix(), rho.layout(), order), SystemLayout(subs));
}

namespace {

std::string fresh_label(const SystemLayout& layout, const std::string& base) {
  std::string label = base;
  for (int k = 1; layout.contains(label); ++k) label = base + std::to_string(k);
  return label;
}

QState purify_impl(const QState& rho, const std::string& label, bool minimal) {
  if (!minimal && !rho.is_normalized()) throw InvalidArgument("purify expects a normalized state");
  EigenSystem es = rho.op().eig();
  Index d = rho.dim();
  double cutoff = kSupportCutoff * es.values.maxCoeff();
  Index rank = 0;
  for (Index i = 0; i < d; ++i)
    if (es.values(i) > cutoff) ++rank;
  Index dr = minimal ? rank : d;
  Vector psi = Vector::Zero(d * dr);
  // descending eigenvalue order: column d-1 of the ascending decomposition first
  for (Index k = 0; k < rank; ++k) {
    Index col = d - 1 - k;
    double lambda = std::max(es.values(col), 0.0);
    Vector term = kron(es.vectors.col(col), Vector::Unit(dr, k));
    psi += std::sqrt(lambda) * term;
  }
  SystemLayout layout = rho.layout().concat(SystemLayout::single(dr, fresh_label(rho.layout(), label)));
  return QState(HermitianOperator(psi * psi.adjoint()), layout);
}

}  // namespace

QState purify(const QState& rho) { return purify_impl(rho, "R", false); }

QState purify_minimal(const QState& rho, const std::string& label) { return purify_impl(rho, label, true); }

double root_fidelity(const Matrix& a, const Matrix& b) { return trace_norm(psd_sqrt(a) * psd_sqrt(b)); }

double generalized_fidelity(const QState& rho, const QState& sigma) {
  if (rho.dim() != sigma.dim()) throw InvalidArgument("fidelity of states with different dimensions");
  double f = root_fidelity(rho.matrix(), sigma.matrix());
  double defect = std::max(0.0, 1.0 - rho.trace()) * std::max(0.0, 1.0 - sigma.trace());
  return std::clamp(f + std::sqrt(defect), 0.0, 1.0);
}

double purified_distance(const QState& rho, const QState& sigma) {
  double f = generalized_fidelity(rho, sigma);
  return std::sqrt(std::max(0.0, 1.0 - f * f));
}

double generalized_trace_distance(const QState& rho, const QState& sigma) {
  if (rho.dim() != sigma.dim()) throw InvalidArgument("trace distance of states with different dimensions");
  RealVector ev = hermitian_eigenvalues(rho.matrix() - sigma.matrix());
  return 0.5 * ev.cwiseAbs().sum() + 0.5 * std::abs(rho.trace() - sigma.trace());
}

QState weyl_heisenberg_twirl(const QState& rho, const std::string& target) {
  Index d = rho.layout().dim_of(target);
  Matrix shift = weyl_shift(d);
  Matrix clock = weyl_clock(d);
  Matrix acc = Matrix::Zero(rho.dim(), rho.dim());
  Matrix uj = Matrix::Identity(d, d);
  for (Index j = 0; j < d; ++j) {
    Matrix w = uj;
    for (Index k = 0; k < d; ++k) {
      Matrix full = embed_on(w, rho.layout(), target);
      acc += full * rho.matrix() * full.adjoint();
      w = w * clock;
    }
    uj = shift * uj;
  }
  return QState(acc / double(d * d), rho.layout());
}

}  // namespace entroscope
