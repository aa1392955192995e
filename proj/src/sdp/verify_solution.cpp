#include <algorithm>
#include <cmath>

#include "entroscope/sdp.hpp"

namespace entroscope::sdp {

namespace {

double negative_part(const Matrix& m) {
  Matrix h = 0.5 * (m + m.adjoint());
  return std::max(0.0, -hermitian_eigenvalues(h).minCoeff());
}

void check_shapes(const BlockMatrix& blocks, const std::vector<Index>& dims, const char* what) {
  if (blocks.size() != dims.size()) throw InvalidArgument(std::string(what) + " has the wrong number of blocks");
  for (std::size_t i = 0; i < dims.size(); ++i)
    if (blocks[i].rows() != dims[i] || blocks[i].cols() != dims[i])
      throw InvalidArgument(std::string(what) + " block " + std::to_string(i) + " has the wrong shape");
}

}  // namespace

ResidualReport verify_solution(const SdpProblem& p, const SdpSolution& s, double tol) {
  std::vector<Index> out_dims;
  for (const auto& o : p.outputs) out_dims.push_back(o.dim);
  check_shapes(s.X, p.input_dims, "primal solution");
  check_shapes(s.Y, out_dims, "dual solution");

  ResidualReport r;
  BlockMatrix psi_x = p.apply(s.X);
  BlockMatrix psi_y = p.apply_adjoint(s.Y);

  for (const auto& x : s.X) r.primal_feasibility = std::max(r.primal_feasibility, negative_part(x));
  for (std::size_t j = 0; j < p.outputs.size(); ++j) {
    Matrix d = psi_x[j] - p.B[j];
    if (p.outputs[j].relation == Relation::Equal) {
      r.primal_feasibility = std::max(r.primal_feasibility, d.norm());
    } else {
      r.primal_feasibility = std::max(r.primal_feasibility, negative_part(d));
      r.dual_feasibility = std::max(r.dual_feasibility, negative_part(s.Y[j]));
    }
    r.primal_slackness = std::max(r.primal_slackness, (d * s.Y[j]).norm());
  }
  for (std::size_t i = 0; i < p.input_dims.size(); ++i) {
    Matrix slack = p.A[i] - psi_y[i];
    r.dual_feasibility = std::max(r.dual_feasibility, negative_part(slack));
    r.dual_slackness = std::max(r.dual_slackness, (slack * s.X[i]).norm());
  }

  double alpha = inner(p.A, s.X);
  double beta = inner(p.B, s.Y);
  r.gap = std::abs(alpha - beta);
  r.relative_gap = r.gap / (1.0 + std::abs(alpha));
  r.passed = r.primal_feasibility <= tol && r.dual_feasibility <= tol && r.relative_gap <= tol &&
             r.primal_slackness <= tol && r.dual_slackness <= tol;
  return r;
}

}  // namespace entroscope::sdp
