#include "standard_form.hpp"

#include <cmath>

namespace entroscope::sdp::detail {

namespace {

bool is_real(const Matrix& m) { return m.imag().cwiseAbs().maxCoeff() == 0.0; }

bool problem_is_real(const SdpProblem& p) {
  for (const auto& a : p.A)
    if (!is_real(a)) return false;
  for (const auto& b : p.B)
    if (!is_real(b)) return false;
  for (const auto& t : p.terms)
    if (!is_real(t.left) || !is_real(t.right)) return false;
  return true;
}

SparseBlock to_sparse(std::size_t block, const RealMatrix& m) {
  SparseBlock sb{block, {}};
  for (Index c = 0; c < m.cols(); ++c)
    for (Index r = 0; r < m.rows(); ++r)
      if (m(r, c) != 0.0) sb.entries.push_back({int(r), int(c), m(r, c)});
  return sb;
}

}  // namespace

RealMatrix embed(const Matrix& h, bool embedded) {
  if (!embedded) return h.real();
  Index n = h.rows();
  RealMatrix out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = h.real();
  out.topRightCorner(n, n) = -h.imag();
  out.bottomLeftCorner(n, n) = h.imag();
  out.bottomRightCorner(n, n) = h.real();
  return out;
}

Matrix unembed(const RealMatrix& z, bool embedded) {
  if (!embedded) return z.cast<cplx>();
  Index n = z.rows() / 2;
  RealMatrix re = 0.5 * (z.topLeftCorner(n, n) + z.bottomRightCorner(n, n));
  RealMatrix im = 0.5 * (z.bottomLeftCorner(n, n) - z.topRightCorner(n, n));
  Matrix out(n, n);
  out.real() = re;
  out.imag() = im;
  return out;
}

Matrix basis_element(const BasisRef& ref, Index dim) {
  Matrix e = Matrix::Zero(dim, dim);
  const double s = 1.0 / std::sqrt(2.0);
  switch (ref.kind) {
    case BasisKind::Diagonal:
      e(ref.a, ref.a) = 1.0;
      break;
    case BasisKind::Symmetric:
      e(ref.a, ref.b) = s;
      e(ref.b, ref.a) = s;
      break;
    case BasisKind::AntiSymmetricImag:
      e(ref.a, ref.b) = cplx(0.0, s);
      e(ref.b, ref.a) = cplx(0.0, -s);
      break;
  }
  return e;
}

StandardForm build_standard_form(const SdpProblem& p) {
  StandardForm sf;
  sf.real_mode = problem_is_real(p);

  for (std::size_t i = 0; i < p.input_dims.size(); ++i) {
    RealBlock rb;
    rb.complex_dim = p.input_dims[i];
    rb.embedded = !sf.real_mode && rb.complex_dim > 1;
    rb.dim = rb.embedded ? 2 * rb.complex_dim : rb.complex_dim;
    rb.source = i;
    sf.input_block.push_back(sf.blocks.size());
    sf.blocks.push_back(rb);
  }
  std::vector<std::size_t> slack_block(p.outputs.size(), std::size_t(-1));
  for (std::size_t j = 0; j < p.outputs.size(); ++j) {
    if (p.outputs[j].relation != Relation::GreaterEqual) continue;
    RealBlock rb;
    rb.complex_dim = p.outputs[j].dim;
    rb.embedded = !sf.real_mode && rb.complex_dim > 1;
    rb.dim = rb.embedded ? 2 * rb.complex_dim : rb.complex_dim;
    rb.slack = true;
    rb.source = j;
    slack_block[j] = sf.blocks.size();
    sf.blocks.push_back(rb);
  }

  for (const auto& rb : sf.blocks) {
    if (rb.slack) {
      sf.C.push_back(RealMatrix::Zero(rb.dim, rb.dim));
    } else {
      double scale = rb.embedded ? 0.5 : 1.0;
      sf.C.push_back(scale * embed(p.A[rb.source], rb.embedded));
    }
  }

  // terms grouped by output block
  std::vector<std::vector<const MapTerm*>> by_out(p.outputs.size());
  for (const auto& t : p.terms) by_out[t.out].push_back(&t);

  std::vector<double> rhs;
  for (std::size_t j = 0; j < p.outputs.size(); ++j) {
    Index m = p.outputs[j].dim;
    std::vector<BasisRef> refs;
    for (Index a = 0; a < m; ++a) {
      refs.push_back({j, a, a, BasisKind::Diagonal});
      for (Index b = a + 1; b < m; ++b) {
        refs.push_back({j, a, b, BasisKind::Symmetric});
        if (!sf.real_mode) refs.push_back({j, a, b, BasisKind::AntiSymmetricImag});
      }
    }
    for (const auto& ref : refs) {
      Matrix e = basis_element(ref, m);
      std::vector<Matrix> g(p.input_dims.size());
      for (const MapTerm* t : by_out[j]) {
        Matrix& gi = g[t->in];
        if (gi.size() == 0) gi = Matrix::Zero(p.input_dims[t->in], p.input_dims[t->in]);
        for (Index c = 0; c < m; ++c)
          for (Index r = 0; r < m; ++r)
            if (e(r, c) != cplx(0.0)) gi.noalias() += e(r, c) * t->left.row(r).adjoint() * t->right.row(c);
      }
      std::vector<SparseBlock> row;
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i].size() == 0) continue;
        const RealBlock& rb = sf.blocks[sf.input_block[i]];
        Matrix herm = 0.5 * (g[i] + g[i].adjoint());
        double scale = rb.embedded ? 0.5 : 1.0;
        SparseBlock sb = to_sparse(sf.input_block[i], scale * embed(herm, rb.embedded));
        if (!sb.entries.empty()) row.push_back(std::move(sb));
      }
      if (slack_block[j] != std::size_t(-1)) {
        const RealBlock& rb = sf.blocks[slack_block[j]];
        double scale = rb.embedded ? 0.5 : 1.0;
        row.push_back(to_sparse(slack_block[j], -scale * embed(e, rb.embedded)));
      }
      double bk = (e.conjugate().cwiseProduct(p.B[j])).sum().real();
      if (row.empty()) {
        if (std::abs(bk) > 1e-12 * std::max(1.0, p.B[j].cwiseAbs().maxCoeff())) sf.trivially_infeasible = true;
        continue;
      }
      sf.constraints.push_back(std::move(row));
      sf.basis.push_back(ref);
      rhs.push_back(bk);
    }
  }
  sf.b = Eigen::Map<RealVector>(rhs.data(), Index(rhs.size()));
  return sf;
}

}  // namespace entroscope::sdp::detail
