#pragma once

#include <functional>
#include <string>
#include <vector>

#include "entroscope/linalg.hpp"

namespace entroscope::sdp {

/// Block-diagonal Hermitian operator, one dense matrix per block.
using BlockMatrix = std::vector<Matrix>;

enum class Relation { GreaterEqual, Equal };

/// One term X_in ↦ left · X_in · right† of the linear map Ψ, contributing to
/// output block `out`. `left` and `right` are (out dim) × (in dim).
struct MapTerm {
  std::size_t in = 0;
  std::size_t out = 0;
  Matrix left;
  Matrix right;
};

struct OutputBlock {
  Index dim = 1;
  Relation relation = Relation::GreaterEqual;
};

/// Semidefinite program (Ψ, A, B) over block-diagonal Hermitian spaces:
///
///   primal:  minimize ⟨A, X⟩  s.t.  Ψ(X)_j ≥ B_j (or = B_j),  X ⪰ 0
///   dual:    maximize ⟨B, Y⟩  s.t.  Ψ*(Y) ≤ A,  Y_j ⪰ 0 for ≥ blocks
///
/// Equality output blocks have a free dual block. With a single input and a
/// single ≥ output block this is exactly the (Ψ, A, B) triple form.
struct SdpProblem {
  std::vector<Index> input_dims;
  std::vector<OutputBlock> outputs;
  std::vector<MapTerm> terms;
  BlockMatrix A;  // cost, one Hermitian block per input block
  BlockMatrix B;  // right-hand side, one Hermitian block per output block

  std::size_t add_input(Index dim);
  std::size_t add_output(Index dim, Relation rel, Matrix rhs);
  void add_term(std::size_t in, std::size_t out, Matrix left, Matrix right);
  /// Adds terms realizing X_in ↦ ⟨H, X_in⟩ into the 1×1 output `out`.
  void add_functional(std::size_t in, std::size_t out, const Matrix& h);

  /// Throws InvalidArgument on inconsistent shapes.
  void validate() const;
  BlockMatrix apply(const BlockMatrix& x) const;
  BlockMatrix apply_adjoint(const BlockMatrix& y) const;
  BlockMatrix zero_inputs() const;
  BlockMatrix zero_outputs() const;
};

using MapEvaluator = std::function<BlockMatrix(const BlockMatrix&)>;

/// Ψ* as a callable: Y ↦ Σ left† · Y · right.
MapEvaluator adjoint(const SdpProblem& p);

/// Real part of Σ_i tr(a_i† b_i).
double inner(const BlockMatrix& a, const BlockMatrix& b);

enum class SolveStatus { Optimal, Infeasible, NumericalFailure };
std::string to_string(SolveStatus s);

struct SolverOptions {
  double gap_tol = 1e-7;
  double feas_tol = 1e-8;
  /// Target for the slackness residuals; after the gap and feasibility
  /// tolerances are met, a few centering steps are taken to reach it.
  double slack_tol = 1e-7;
  int max_iter = 200;
};

struct SdpSolution {
  BlockMatrix X;  // primal, per input block
  BlockMatrix Y;  // dual, per output block
  double alpha = 0.0;  // ⟨A, X⟩
  double beta = 0.0;   // ⟨B, Y⟩
  double gap = 0.0;    // |alpha − beta|
  SolveStatus status = SolveStatus::NumericalFailure;
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double slackness_residual = 0.0;
};

/// Primal–dual path-following interior-point method (HKM direction with a
/// Mehrotra predictor–corrector). Deterministic for fixed input.
SdpSolution solve(const SdpProblem& p, const SolverOptions& opts = {});

struct ResidualReport {
  double primal_feasibility = 0.0;  // worst violation of Ψ(X) ≥ B / = B and X ⪰ 0
  double dual_feasibility = 0.0;    // worst violation of Ψ*(Y) ≤ A and Y ⪰ 0
  double gap = 0.0;
  double relative_gap = 0.0;
  double primal_slackness = 0.0;    // max_j ‖(Ψ(X)_j − B_j) Y_j‖_F
  double dual_slackness = 0.0;      // max_i ‖(A_i − Ψ*(Y)_i) X_i‖_F
  bool passed = false;
};

ResidualReport verify_solution(const SdpProblem& p, const SdpSolution& s, double tol = 1e-6);

}  // namespace entroscope::sdp
