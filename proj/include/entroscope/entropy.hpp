#pragma once

#include <string>
#include <vector>

#include "entroscope/quantum.hpp"
#include "entroscope/sdp.hpp"

namespace entroscope {

/// Split of a layout into the conditioned system A and the side system B.
/// Together the two lists must name every subsystem exactly once.
struct Partition {
  std::vector<std::string> a;
  std::vector<std::string> b;
};

/// Bits, with an explicit marker for ±∞.
struct EntropyValue {
  enum class Kind { Finite, PlusInfinity, MinusInfinity };

  double bits = 0.0;
  Kind kind = Kind::Finite;
  /// Short tag naming the optimization or formula that produced the value.
  std::string witness;

  static EntropyValue finite(double bits, std::string witness = {});
  static EntropyValue plus_infinity(std::string witness = {});
  static EntropyValue minus_infinity(std::string witness = {});

  bool is_finite() const { return kind == Kind::Finite; }
  /// bits, or ±HUGE_VAL for the infinite markers.
  double to_double() const;
  EntropyValue operator-() const;
};

std::string to_string(const EntropyValue& v);

/// Residuals of the optimality conditions (μρ−X)Q = σQ, tr[Qρ] = ε, QX = X,
/// plus the commutator ‖[Q,X]‖ they imply. Frobenius norms.
struct HypoSlackness {
  double stationarity = 0.0;  // ‖(μρ − X − σ)Q‖
  double trace = 0.0;         // |tr[Qρ] − ε|
  double support = 0.0;       // ‖QX − X‖
  double commutator = 0.0;    // ‖QX − XQ‖
  double max() const;
};

struct HypoTestResult {
  double value = 0.0;  // D_H^ε in bits; +HUGE_VAL when `infinite`
  bool infinite = false;
  double epsilon = 1.0;
  HermitianOperator Q;  // primal witness, 0 ≤ Q ≤ I
  double mu = 0.0;      // dual witness
  HermitianOperator X;  // dual witness, X ≥ 0
  double primal = 0.0;  // (1/ε) tr[Qσ]
  double dual = 0.0;    // μ − tr[X]/ε
  HypoSlackness slackness;
  /// "sdp", "classical", "support" (value fixed by the support of σ),
  /// "spectral" (small ε: Q ≤ I is inactive and D_H^ε = D_max) or
  /// "facial" (ε = tr ρ: the program has no interior and is solved on the
  /// face Q = Π_ρ + Q'; the dual optimum is not attained, μ and X stay zero
  /// and only the trace residual is meaningful).
  std::string method;
  int iterations = 0;
};

struct HypoOptions {
  /// Diagonal ρ and σ are solved exactly as a linear program.
  bool classical_shortcut = true;
  /// When supp ρ ⊆ supp σ and ε is small enough that the rank-one optimum of
  /// the program without Q ≤ I is feasible, return it with D_H^ε = D_max.
  bool spectral_shortcut = true;
  /// The cost is scaled by 2^{D_max} when finite, so gap_tol bounds the gap
  /// relative to the type-II error.
  sdp::SolverOptions solver = {1e-8, 1e-9, 1e-8, 200};
  /// On a stalled solve, retry with gap_tol ten times larger, at most this
  /// many times. The gap reached is visible in primal and dual.
  int gap_relaxations = 2;
};

/// Neyman–Pearson problem on probability vectors.
struct ClassicalHypoResult {
  double value = 0.0;
  bool infinite = false;
  RealVector q;  // optimal test, entries in [0,1]
  double mu = 0.0;
  RealVector x;  // (μp − s)_+
  double primal = 0.0;
  double dual = 0.0;
};

/// min (1/ε)Σ q_i s_i s.t. Σ q_i p_i ≥ ε, 0 ≤ q ≤ 1, via the likelihood-ratio
/// ordering. p is subnormalized, s nonnegative.
ClassicalHypoResult d_hypo_classical(const RealVector& p, const RealVector& s, double eps);

/// D_H^ε(ρ‖σ) = −log₂ min{(1/ε)tr[Qσ] : 0 ≤ Q ≤ I, tr[Qρ] ≥ ε}.
/// Throws InvalidArgument for ε ∉ (0,1], a non-PSD σ, a dimension mismatch or
/// ε > tr ρ; throws Error when the solver fails.
HypoTestResult d_hypo(const QState& rho, const HermitianOperator& sigma, double eps, const HypoOptions& opts = {});
HypoTestResult d_hypo(const QState& rho, const QState& sigma, double eps, const HypoOptions& opts = {});

/// Recomputes the slackness residuals of a result against (ρ, σ).
HypoSlackness hypo_slackness(const HypoTestResult& r, const Matrix& rho, const Matrix& sigma);

/// I_A ⊗ ρ_B in the layout order of ρ_AB.
HermitianOperator conditioning_operator(const QState& rho_ab, const Partition& p);

/// H_H^ε(A|B) = −D_H^ε(ρ_AB‖I_A⊗ρ_B).
EntropyValue h_hypo(const QState& rho_ab, const Partition& p, double eps, const HypoOptions& opts = {});
/// The underlying hypothesis test, witnesses included.
HypoTestResult h_hypo_test(const QState& rho_ab, const Partition& p, double eps, const HypoOptions& opts = {});

/// log₂ λ_max(σ^{−½}ρσ^{−½}) on the support; +∞ when supp ρ ⊄ supp σ.
EntropyValue d_max(const QState& rho, const HermitianOperator& sigma);
/// log₂ min{μ : ρ ≤ μσ} by SDP; cross-check for d_max.
EntropyValue d_max_sdp(const QState& rho, const HermitianOperator& sigma, const sdp::SolverOptions& opts = {});
/// −log₂ ‖√ρ√σ‖₁²; +∞ for orthogonal supports.
EntropyValue d_min(const QState& rho, const HermitianOperator& sigma);

/// ‖√ζ√η‖₁² from max tr[ζ_AB X] s.t. tr_B X = η, with ζ_AB a purification.
double fidelity_sdp(const QState& zeta, const QState& eta, const sdp::SolverOptions& opts = {});

/// max tr[P(ρ−σ)] over 0 ≤ P ≤ I, solved as min tr Z s.t. Z ≥ ρ−σ, Z ≥ 0.
/// For tr ρ ≥ tr σ this is the generalized trace distance.
double trace_distance_sdp(const QState& rho, const QState& sigma, const sdp::SolverOptions& opts = {});

/// min over ρ̃ ∈ B_ε(ρ) of D_max(ρ̃‖σ). ε = 0 reduces to d_max.
EntropyValue d_max_smooth(const QState& rho, const HermitianOperator& sigma, double eps,
                          const sdp::SolverOptions& opts = {});

/// ρ̃ = Q^½ρQ^½ with Q primal-optimal for D_H^{1−ε}(ρ‖σ); ε ∈ (0,1).
QState dmin_smoothing_witness(const QState& rho, const HermitianOperator& sigma, double eps,
                              const HypoOptions& opts = {});
/// ρ̃ = GρG† with G = σ^½(σ+X)^{−½} and (μ, X) dual-optimal for D_H^ε(ρ‖σ); ε ∈ (0,1].
QState dmax_smoothing_witness(const QState& rho, const HermitianOperator& sigma, double eps,
                              const HypoOptions& opts = {});
/// Same construction from an already solved test.
QState dmax_smoothing_witness(const QState& rho, const HermitianOperator& sigma, const HypoTestResult& test);

/// H_min^ε(A|B)_{ρ|σ} = −D_max^ε(ρ_AB‖I_A⊗σ_B).
EntropyValue h_min(const QState& rho_ab, const Partition& p, const QState& sigma_b, double eps,
                   const sdp::SolverOptions& opts = {});
/// H_min^ε(A|B)_ρ, optimized over σ_B: −log₂ min{tr σ_B : ρ̃ ≤ I_A⊗σ_B, ρ̃ ∈ B_ε(ρ)}.
EntropyValue h_min(const QState& rho_ab, const Partition& p, double eps, const sdp::SolverOptions& opts = {});
/// H_max^ε(A|B)_ρ = −H_min^ε(A|C)_ρ on a purification ρ_ABC.
EntropyValue h_max(const QState& rho_ab, const Partition& p, double eps, const sdp::SolverOptions& opts = {});
/// Non-smooth fixed-σ form −D_min(ρ_AB‖I_A⊗σ_B).
EntropyValue h_max(const QState& rho_ab, const Partition& p, const QState& sigma_b);

/// −Σ λ log₂ λ.
double von_neumann(const QState& rho);
/// H(AB) − H(B).
double h_cond_vn(const QState& rho_ab, const Partition& p);
/// tr[ρ(log₂ρ − log₂σ)]; +∞ when supp ρ ⊄ supp σ.
EntropyValue kl_div(const QState& rho, const HermitianOperator& sigma);
/// −log₂ tr[ρ⁰σ].
EntropyValue renyi0(const QState& rho, const HermitianOperator& sigma);

}  // namespace entroscope
