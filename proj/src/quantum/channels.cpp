#include "entroscope/quantum.hpp"

namespace entroscope {

QChannel::QChannel(std::vector<Matrix> kraus, double tol) : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw InvalidArgument("channel needs at least one operator term");
  dim_out_ = kraus_.front().rows();
  dim_in_ = kraus_.front().cols();
  if (dim_in_ == 0 || dim_out_ == 0) throw InvalidArgument("channel term has dimension 0");
  Matrix gram_in = Matrix::Zero(dim_in_, dim_in_);
  Matrix gram_out = Matrix::Zero(dim_out_, dim_out_);
  for (const auto& k : kraus_) {
    if (k.rows() != dim_out_ || k.cols() != dim_in_) throw InvalidArgument("channel terms have inconsistent shapes");
    if (!k.allFinite()) throw InvalidArgument("channel term has non-finite entries");
    gram_in += k.adjoint() * k;
    gram_out += k * k.adjoint();
  }
  trace_preserving_ = (gram_in - Matrix::Identity(dim_in_, dim_in_)).cwiseAbs().maxCoeff() <= tol;
  trace_non_increasing_ = hermitian_eigenvalues(gram_in).maxCoeff() <= 1.0 + tol;
  sub_unital_ = hermitian_eigenvalues(gram_out).maxCoeff() <= 1.0 + tol;
}

QChannel QChannel::identity(Index dim) { return QChannel({Matrix::Identity(dim, dim)}); }

QChannel QChannel::unitary(const Matrix& u) { return QChannel({u}); }

Matrix QChannel::apply(const Matrix& x) const {
  if (x.rows() != dim_in_) throw InvalidArgument("channel input dimension mismatch");
  Matrix out = Matrix::Zero(dim_out_, dim_out_);
  for (const auto& k : kraus_) out += k * x * k.adjoint();
  return out;
}

QChannel QChannel::adjoint() const {
  std::vector<Matrix> terms;
  for (const auto& k : kraus_) terms.push_back(k.adjoint());
  return QChannel(std::move(terms));
}

Matrix embed_on(const Matrix& op, const SystemLayout& layout, const std::string& target) {
  std::size_t pos = layout.index_of(target);
  if (op.cols() != layout.subsystems()[pos].dim) throw InvalidArgument("operator does not match target dimension");
  Index left = 1, right = 1;
  for (std::size_t s = 0; s < layout.size(); ++s) {
    if (s < pos) left *= layout.subsystems()[s].dim;
    if (s > pos) right *= layout.subsystems()[s].dim;
  }
  Matrix out = op;
  if (left > 1) out = kron(Matrix::Identity(left, left), out);
  if (right > 1) out = kron(out, Matrix::Identity(right, right));
  return out;
}

Matrix apply_channel(const QChannel& ch, const Matrix& m, const SystemLayout& layout, const std::string& target) {
  if (layout.dim_of(target) != ch.dim_in())
    throw InvalidArgument("channel input dimension " + std::to_string(ch.dim_in()) + " does not match subsystem '" +
                          target + "'");
  Index out_dim = layout.total_dim() / ch.dim_in() * ch.dim_out();
  Matrix out = Matrix::Zero(out_dim, out_dim);
  for (const auto& k : ch.kraus()) {
    Matrix full = embed_on(k, layout, target);
    out += full * m * full.adjoint();
  }
  return out;
}

QState apply_channel(const QChannel& ch, const QState& rho, const std::string& target) {
  Matrix out = apply_channel(ch, rho.matrix(), rho.layout(), target);
  return QState(HermitianOperator(out, 1e-10), rho.layout().with_dim(target, ch.dim_out()));
}

}  // namespace entroscope
