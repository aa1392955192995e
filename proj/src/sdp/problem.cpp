#include <cmath>
#include <random>

#include "entroscope/sdp.hpp"

namespace entroscope::sdp {

std::size_t SdpProblem::add_input(Index dim) {
  input_dims.push_back(dim);
  A.push_back(Matrix::Zero(dim, dim));
  return input_dims.size() - 1;
}

std::size_t SdpProblem::add_output(Index dim, Relation rel, Matrix rhs) {
  if (rhs.rows() != dim || rhs.cols() != dim) throw InvalidArgument("output right-hand side has the wrong shape");
  outputs.push_back({dim, rel});
  B.push_back(std::move(rhs));
  return outputs.size() - 1;
}

void SdpProblem::add_term(std::size_t in, std::size_t out, Matrix left, Matrix right) {
  terms.push_back({in, out, std::move(left), std::move(right)});
}

void SdpProblem::add_functional(std::size_t in, std::size_t out, const Matrix& h) {
  EigenSystem es = hermitian_eig(h);
  double scale = es.values.size() ? es.values.cwiseAbs().maxCoeff() : 0.0;
  for (Index k = 0; k < es.values.size(); ++k) {
    double lambda = es.values(k);
    if (std::abs(lambda) <= 1e-15 * scale || lambda == 0.0) continue;
    Matrix u = es.vectors.col(k).adjoint();
    add_term(in, out, lambda * u, u);
  }
}

void SdpProblem::validate() const {
  if (input_dims.empty()) throw InvalidArgument("SDP has no input blocks");
  if (outputs.empty()) throw InvalidArgument("SDP has no output blocks");
  if (A.size() != input_dims.size()) throw InvalidArgument("cost has the wrong number of blocks");
  if (B.size() != outputs.size()) throw InvalidArgument("right-hand side has the wrong number of blocks");
  for (std::size_t i = 0; i < input_dims.size(); ++i) {
    if (input_dims[i] < 1) throw InvalidArgument("input block of dimension < 1");
    if (A[i].rows() != input_dims[i] || A[i].cols() != input_dims[i])
      throw InvalidArgument("cost block " + std::to_string(i) + " has the wrong shape");
    if ((A[i] - A[i].adjoint()).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, A[i].cwiseAbs().maxCoeff()))
      throw InvalidArgument("cost block " + std::to_string(i) + " is not Hermitian");
  }
  for (std::size_t j = 0; j < outputs.size(); ++j) {
    if (outputs[j].dim < 1) throw InvalidArgument("output block of dimension < 1");
    if (B[j].rows() != outputs[j].dim || B[j].cols() != outputs[j].dim)
      throw InvalidArgument("right-hand side block " + std::to_string(j) + " has the wrong shape");
    if ((B[j] - B[j].adjoint()).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, B[j].cwiseAbs().maxCoeff()))
      throw InvalidArgument("right-hand side block " + std::to_string(j) + " is not Hermitian");
  }
  for (const auto& t : terms) {
    if (t.in >= input_dims.size() || t.out >= outputs.size()) throw InvalidArgument("map term references a missing block");
    Index n = input_dims[t.in], m = outputs[t.out].dim;
    if (t.left.rows() != m || t.left.cols() != n || t.right.rows() != m || t.right.cols() != n)
      throw InvalidArgument("map term has the wrong shape");
  }

  // Hermiticity preservation on a fixed random Hermitian probe
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> normal;
  BlockMatrix probe;
  for (Index n : input_dims) {
    Matrix g(n, n);
    for (Index a = 0; a < n; ++a)
      for (Index b = 0; b < n; ++b) g(a, b) = cplx(normal(rng), normal(rng));
    probe.push_back(g + g.adjoint());
  }
  BlockMatrix image = apply(probe);
  for (const auto& blk : image) {
    double scale = std::max(1.0, blk.cwiseAbs().maxCoeff());
    if ((blk - blk.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
      throw InvalidArgument("map is not Hermiticity-preserving");
  }
}

BlockMatrix SdpProblem::zero_inputs() const {
  BlockMatrix out;
  for (Index n : input_dims) out.push_back(Matrix::Zero(n, n));
  return out;
}

BlockMatrix SdpProblem::zero_outputs() const {
  BlockMatrix out;
  for (const auto& o : outputs) out.push_back(Matrix::Zero(o.dim, o.dim));
  return out;
}

BlockMatrix SdpProblem::apply(const BlockMatrix& x) const {
  BlockMatrix out = zero_outputs();
  for (const auto& t : terms) out[t.out] += t.left * x[t.in] * t.right.adjoint();
  return out;
}

BlockMatrix SdpProblem::apply_adjoint(const BlockMatrix& y) const {
  BlockMatrix out = zero_inputs();
  for (const auto& t : terms) out[t.in] += t.left.adjoint() * y[t.out] * t.right;
  return out;
}

MapEvaluator adjoint(const SdpProblem& p) {
  return [p](const BlockMatrix& y) { return p.apply_adjoint(y); };
}

double inner(const BlockMatrix& a, const BlockMatrix& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i].conjugate().cwiseProduct(b[i])).sum().real();
  return acc;
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::NumericalFailure: return "numerical_failure";
  }
  return "unknown";
}

}  // namespace entroscope::sdp
