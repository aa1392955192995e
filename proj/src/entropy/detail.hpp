#pragma once

#include <string>
#include <vector>

#include "entroscope/entropy.hpp"

namespace entroscope::detail {

/// Throws unless the partition names every subsystem of `layout` exactly once.
void check_partition(const Partition& p, const SystemLayout& layout);

/// Layout with the A factors first and the B factors after, each group in
/// the original order.
SystemLayout grouped_layout(const SystemLayout& layout, const Partition& p);

/// I_A ⊗ m_B expressed in the original layout order of `layout`.
Matrix identity_tensor(const Matrix& m_b, const SystemLayout& layout, const Partition& p);

bool is_diagonal(const Matrix& m);

void check_epsilon(double eps, bool allow_zero);

/// Variable ρ̃ = U R U† constrained to the purified-distance ball around ρ.
/// The input block is W = [[R, N], [N†, Λ]] with ρ = VΛV† (rank r) and
/// Re tr(V†U N) ≥ ‖√ρ√ρ̃‖₁ lower-bounding the fidelity term.
struct BallVariable {
  std::size_t input = 0;
  Index support_dim = 0;  // columns of U
  Index rho_rank = 0;
  /// [I 0], so that selector · W · selector† = R.
  Matrix selector() const;
};

BallVariable add_ball(sdp::SdpProblem& prog, const QState& rho, const Matrix& basis, double eps);

/// True when the zero operator lies in the ball, i.e. ε² ≥ tr ρ.
bool ball_contains_zero(const QState& rho, double eps);

}  // namespace entroscope::detail
