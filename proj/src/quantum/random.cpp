#include "entroscope/random.hpp"

#include <cmath>

namespace entroscope {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Matrix random_gaussian(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) {
      double re = normal(rng);
      double im = normal(rng);
      g(i, j) = cplx(re, im);
    }
  return g;
}

Matrix random_isometry(Index rows, Index cols, Rng& rng) {
  if (rows < cols) throw InvalidArgument("isometry needs rows >= cols");
  Matrix g = random_gaussian(rows, cols, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
  Matrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  // fix column phases so the distribution is unitarily invariant
  for (Index j = 0; j < cols; ++j) {
    cplx d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

Matrix random_unitary(Index dim, Rng& rng) { return random_isometry(dim, dim, rng); }

QState random_state(const SystemLayout& layout, Index rank, Rng& rng) {
  Index d = layout.total_dim();
  if (rank < 1 || rank > d) throw InvalidArgument("rank must lie in [1, dim]");
  Matrix g = random_gaussian(d, rank, rng);
  Matrix m = g * g.adjoint();
  m /= m.trace().real();
  return QState(HermitianOperator(m), layout);
}

QState random_state(Index dim, Index rank, Rng& rng) { return random_state(SystemLayout::single(dim), rank, rng); }

QState random_pure_state(const SystemLayout& layout, Rng& rng) { return random_state(layout, 1, rng); }

QState random_subnormalized_state(const SystemLayout& layout, Index rank, double min_trace, Rng& rng) {
  QState s = random_state(layout, rank, rng);
  std::uniform_real_distribution<double> unif(min_trace, 1.0);
  double t = unif(rng);
  return QState(HermitianOperator(t * s.matrix()), layout);
}

QState random_cq_state(Index dim_x, Index dim_b, Rng& rng) {
  if (dim_x < 1 || dim_b < 1) throw InvalidArgument("CQ state dimensions must be positive");
  std::exponential_distribution<double> expo(1.0);
  std::uniform_int_distribution<Index> rank_dist(1, dim_b);
  std::vector<double> p(static_cast<std::size_t>(dim_x));
  double total = 0.0;
  for (auto& v : p) total += (v = expo(rng));
  Matrix m = Matrix::Zero(dim_x * dim_b, dim_x * dim_b);
  for (Index x = 0; x < dim_x; ++x) {
    QState rb = random_state(dim_b, rank_dist(rng), rng);
    m.block(x * dim_b, x * dim_b, dim_b, dim_b) = (p[std::size_t(x)] / total) * rb.matrix();
  }
  return QState(HermitianOperator(m), SystemLayout({{"X", dim_x}, {"B", dim_b}}));
}

QChannel random_channel(Index dim_in, Index dim_out, Index n_kraus, Rng& rng) {
  if (dim_in < 1 || dim_out < 1 || n_kraus < 1) throw InvalidArgument("channel dimensions must be positive");
  if (dim_out * n_kraus < dim_in) throw InvalidArgument("too few operator terms for a trace-preserving channel");
  Matrix v = random_isometry(dim_out * n_kraus, dim_in, rng);
  std::vector<Matrix> kraus;
  for (Index j = 0; j < n_kraus; ++j) {
    Matrix k(dim_out, dim_in);
    for (Index o = 0; o < dim_out; ++o) k.row(o) = v.row(o * n_kraus + j);
    kraus.push_back(k);
  }
  return QChannel(std::move(kraus));
}

QChannel random_trace_non_increasing_channel(Index dim_in, Index dim_out, Index n_kraus, Rng& rng) {
  QChannel tp = random_channel(dim_in, dim_out, n_kraus, rng);
  std::uniform_real_distribution<double> unif(0.6, 1.0);
  Matrix u = random_unitary(dim_in, rng);
  RealVector c(dim_in);
  for (Index i = 0; i < dim_in; ++i) c(i) = unif(rng);
  Matrix contraction = u * c.cast<cplx>().asDiagonal() * u.adjoint();
  std::vector<Matrix> kraus;
  for (const auto& k : tp.kraus()) kraus.push_back(k * contraction);
  return QChannel(std::move(kraus));
}

QChannel random_subunital_channel(Index dim_in, Index dim_out, Index n_unitaries, Rng& rng) {
  if (dim_out < dim_in) throw InvalidArgument("sub-unital trace-preserving channel needs dim_out >= dim_in");
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> p(static_cast<std::size_t>(n_unitaries));
  double total = 0.0;
  for (auto& v : p) total += (v = expo(rng));
  Matrix w = random_isometry(dim_out, dim_in, rng);
  std::vector<Matrix> kraus;
  for (Index i = 0; i < n_unitaries; ++i)
    kraus.push_back(std::sqrt(p[std::size_t(i)] / total) * w * random_unitary(dim_in, rng));
  return QChannel(std::move(kraus));
}

std::variant<QState, QChannel> sample_instance(InstanceKind kind, const std::vector<Index>& dims, Index rank,
                                               std::uint64_t seed) {
  if (dims.empty()) throw InvalidArgument("no dimensions given");
  for (Index d : dims)
    if (d < 1) throw InvalidArgument("dimensions must be >= 1");
  Rng rng(seed);
  switch (kind) {
    case InstanceKind::State: {
      SystemLayout layout = SystemLayout::from_dims(dims);
      if (rank == 0) rank = layout.total_dim();
      return random_state(layout, rank, rng);
    }
    case InstanceKind::Pure:
      return random_pure_state(SystemLayout::from_dims(dims), rng);
    case InstanceKind::CqState:
      if (dims.size() != 2) throw InvalidArgument("CQ state needs dims {|X|, |B|}");
      return random_cq_state(dims[0], dims[1], rng);
    case InstanceKind::Channel: {
      Index din = dims[0];
      Index dout = dims.size() > 1 ? dims[1] : dims[0];
      if (rank == 0) rank = din * dout;
      return random_channel(din, dout, rank, rng);
    }
  }
  throw InvalidArgument("unknown instance kind");
}

}  // namespace entroscope
