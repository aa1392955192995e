#pragma once

#include <string>
#include <vector>

#include "entroscope/linalg.hpp"

namespace entroscope {

struct Subsystem {
  std::string label;
  Index dim = 1;

  bool operator==(const Subsystem&) const = default;
};

/// Ordered tensor-factor structure of a Hilbert space, e.g. A(2) ⊗ B(3).
class SystemLayout {
 public:
  SystemLayout() = default;
  explicit SystemLayout(std::vector<Subsystem> subsystems);

  /// Single-factor layout labelled `label`.
  static SystemLayout single(Index dim, std::string label = "A");
  /// Layout from dims with labels A, B, C, ... (continuing with S<k> after Z).
  static SystemLayout from_dims(const std::vector<Index>& dims);

  const std::vector<Subsystem>& subsystems() const { return subsystems_; }
  std::size_t size() const { return subsystems_.size(); }
  Index total_dim() const;
  Index dim_of(const std::string& label) const;
  bool contains(const std::string& label) const;
  /// Position of a label; throws InvalidArgument for unknown labels.
  std::size_t index_of(const std::string& label) const;

  /// Layout restricted to `labels`, keeping this layout's order.
  SystemLayout restricted_to(const std::vector<std::string>& labels) const;
  /// Concatenation; throws if labels collide.
  SystemLayout concat(const SystemLayout& other) const;
  /// Same layout with the dimension of one factor changed.
  SystemLayout with_dim(const std::string& label, Index dim) const;
  std::vector<std::string> labels() const;

  bool operator==(const SystemLayout&) const = default;

 private:
  std::vector<Subsystem> subsystems_;
};

/// Dense Hermitian matrix. Construction checks Hermiticity entrywise and
/// stores the exactly Hermitian part.
class HermitianOperator {
 public:
  HermitianOperator() = default;
  explicit HermitianOperator(const Matrix& m, double tol = 1e-12);

  static HermitianOperator identity(Index dim);
  static HermitianOperator zero(Index dim);
  static HermitianOperator diagonal(const std::vector<double>& diag);
  static HermitianOperator projector(const Vector& ket);

  Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  double trace() const { return m_.trace().real(); }
  EigenSystem eig() const { return hermitian_eig(m_); }
  RealVector eigenvalues() const { return hermitian_eigenvalues(m_); }
  double min_eigenvalue() const;
  double max_eigenvalue() const;
  /// Minimum eigenvalue ≥ -rel_tol·max(|λ_max|, tiny).
  bool is_psd(double rel_tol = 1e-10) const;

  HermitianOperator operator+(const HermitianOperator& o) const;
  HermitianOperator operator-(const HermitianOperator& o) const;
  HermitianOperator operator*(double s) const;

 private:
  Matrix m_;
};

HermitianOperator operator*(double s, const HermitianOperator& h);

/// Subnormalized density operator with an explicit tensor layout.
class QState {
 public:
  QState() = default;
  /// Throws InvalidArgument unless PSD, 0 < tr ≤ 1 and the layout matches.
  QState(HermitianOperator op, SystemLayout layout);
  QState(const Matrix& m, SystemLayout layout);
  /// Single-system state labelled "A".
  static QState from_matrix(const Matrix& m);
  static QState pure(const Vector& ket, SystemLayout layout);
  static QState maximally_mixed(SystemLayout layout);

  const HermitianOperator& op() const { return op_; }
  const Matrix& matrix() const { return op_.matrix(); }
  const SystemLayout& layout() const { return layout_; }
  Index dim() const { return op_.dim(); }
  double trace() const { return trace_; }
  bool is_normalized(double tol = 1e-10) const;

 private:
  HermitianOperator op_;
  SystemLayout layout_;
  double trace_ = 0.0;
};

/// Completely positive map in operator-sum form.
class QChannel {
 public:
  QChannel() = default;
  explicit QChannel(std::vector<Matrix> kraus, double tol = 1e-10);

  static QChannel identity(Index dim);
  static QChannel unitary(const Matrix& u);

  const std::vector<Matrix>& kraus() const { return kraus_; }
  Index dim_in() const { return dim_in_; }
  Index dim_out() const { return dim_out_; }
  bool trace_preserving() const { return trace_preserving_; }
  bool trace_non_increasing() const { return trace_non_increasing_; }
  bool sub_unital() const { return sub_unital_; }

  /// Σ K X K† on the full input space.
  Matrix apply(const Matrix& x) const;
  /// Adjoint map with terms K†.
  QChannel adjoint() const;

 private:
  std::vector<Matrix> kraus_;
  Index dim_in_ = 0;
  Index dim_out_ = 0;
  bool trace_preserving_ = false;
  bool trace_non_increasing_ = false;
  bool sub_unital_ = false;
};

// ---------------------------------------------------------------------------
// operations

HermitianOperator tensor_product(const HermitianOperator& a, const HermitianOperator& b);
QState tensor_product(const QState& a, const QState& b);
/// n-fold tensor power; subsystem labels get a copy suffix ("A1", "A2", ...).
QState tensor_power(const QState& a, int n);

/// Marginal on the subsystems named in `keep` (layout order is preserved).
Matrix partial_trace(const Matrix& m, const SystemLayout& layout, const std::vector<std::string>& keep);
QState partial_trace(const QState& rho, const std::vector<std::string>& keep);

/// Reorders tensor factors so that they appear in `order` (a permutation of
/// the layout labels).
Matrix permute_systems(const Matrix& m, const SystemLayout& layout, const std::vector<std::string>& order);
QState permute_systems(const QState& rho, const std::vector<std::string>& order);

/// Pure state on ℋ⊗ℋ whose first marginal is ρ, built from the eigenvalues
/// in descending order. Output layout is ρ's layout followed by "R".
QState purify(const QState& rho);
/// Same construction with the purifying system trimmed to rank(ρ) and
/// labelled `label`. Subnormalized input is accepted.
QState purify_minimal(const QState& rho, const std::string& label);

/// op ⊗ identity elsewhere, with op acting on `target`; op may be rectangular.
Matrix embed_on(const Matrix& op, const SystemLayout& layout, const std::string& target);
QState apply_channel(const QChannel& ch, const QState& rho, const std::string& target);
Matrix apply_channel(const QChannel& ch, const Matrix& m, const SystemLayout& layout, const std::string& target);

/// F(ρ,σ) = ‖√ρ√σ‖₁ + √((1−tr ρ)(1−tr σ)), clamped to [0,1].
double generalized_fidelity(const QState& rho, const QState& sigma);
/// ‖√a√b‖₁ for PSD a, b.
double root_fidelity(const Matrix& a, const Matrix& b);
double purified_distance(const QState& rho, const QState& sigma);
/// ½‖ρ−σ‖₁ + ½|tr ρ − tr σ|.
double generalized_trace_distance(const QState& rho, const QState& sigma);

/// Projector onto the strictly positive eigenspaces of Δ.
HermitianOperator positive_part_projector(const HermitianOperator& delta);

/// Shift U|j⟩ = |j+1 mod d⟩ and clock V|k⟩ = ω^k|k⟩.
Matrix weyl_shift(Index d);
Matrix weyl_clock(Index d);
/// (1/d²) Σ_{j,k} (UʲVᵏ) ρ (UʲVᵏ)† on `target`, identity elsewhere.
QState weyl_heisenberg_twirl(const QState& rho, const std::string& target);

/// Spectral function on the support (cutoff kSupportCutoff relative to the
/// largest |eigenvalue|).
HermitianOperator fn_on_support(const HermitianOperator& x, const std::function<double(double)>& f);

/// Projector onto the support of a PSD operator.
HermitianOperator support_projector(const HermitianOperator& x);

}  // namespace entroscope
