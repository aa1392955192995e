#include <algorithm>
#include <cmath>
#include <optional>
#include <numeric>

#include "detail.hpp"
#include "entroscope/entropy.hpp"

namespace entroscope {

namespace {

constexpr double kTraceSlack = 1e-12;

void check_pair(const Matrix& rho, const Matrix& sigma, double eps) {
  detail::check_epsilon(eps, false);
  if (rho.rows() != sigma.rows()) throw InvalidArgument("rho and sigma have different dimensions");
  if (!HermitianOperator(sigma).is_psd()) throw InvalidArgument("sigma is not positive semidefinite");
  double tr = rho.trace().real();
  if (eps > tr + kTraceSlack) throw InvalidArgument("epsilon exceeds tr(rho); the test is infeasible");
}

Matrix real_diag(const RealVector& v) { return v.cast<cplx>().asDiagonal(); }

HypoTestResult from_classical(const ClassicalHypoResult& c, const Matrix& rho, const Matrix& sigma, double eps) {
  HypoTestResult r;
  r.epsilon = eps;
  r.value = c.value;
  r.infinite = c.infinite;
  r.Q = HermitianOperator(real_diag(c.q));
  r.mu = c.mu;
  r.X = HermitianOperator(real_diag(c.x));
  r.primal = c.primal;
  r.dual = c.dual;
  r.method = c.infinite ? "support" : "classical";
  if (!c.infinite) r.slackness = hypo_slackness(r, rho, sigma);
  return r;
}

// At ε = tr ρ every feasible test acts as the identity on supp ρ, so the
// program is solved on the face Q = Π_ρ + Q' with Q' supported on ker ρ.
HypoTestResult facial_test(const QState& rho_state, const Matrix& sigma, double eps, const HypoOptions& opts) {
  EigenSystem es = rho_state.op().eig();
  const Index n = es.values.size();
  const double cut = kSupportCutoff * es.values.cwiseAbs().maxCoeff();
  Index kernel_dim = 0;
  while (kernel_dim < n && es.values(kernel_dim) <= cut) ++kernel_dim;
  Matrix ker = es.vectors.leftCols(kernel_dim);
  Matrix supp = es.vectors.rightCols(n - kernel_dim);
  Matrix q = supp * supp.adjoint();

  HypoTestResult r;
  r.epsilon = eps;
  r.method = "facial";
  double offset = (q * sigma).trace().real() / eps;
  r.primal = r.dual = offset;
  if (kernel_dim > 0) {
    sdp::SdpProblem prog;
    std::size_t in = prog.add_input(kernel_dim);
    prog.A[in] = ker.adjoint() * sigma * ker / eps;
    Matrix id = Matrix::Identity(kernel_dim, kernel_dim);
    std::size_t bound = prog.add_output(kernel_dim, sdp::Relation::GreaterEqual, -id);
    prog.add_term(in, bound, id, -id);
    sdp::SdpSolution sol = sdp::solve(prog, opts.solver);
    if (sol.status != sdp::SolveStatus::Optimal)
      throw Error("reduced hypothesis-testing SDP did not converge: " + sdp::to_string(sol.status));
    q += ker * hermitian_part(sol.X[in]) * ker.adjoint();
    r.primal += sol.alpha;
    r.dual += sol.beta;
    r.iterations = sol.iterations;
  }
  r.Q = HermitianOperator(hermitian_part(q));
  r.X = HermitianOperator::zero(n);
  if (r.primal <= 0.0) throw Error("hypothesis-testing SDP returned a nonpositive type-II error");
  r.value = -std::log2(r.primal);
  r.slackness.trace = std::abs((q * rho_state.matrix()).trace().real() - eps);
  return r;
}

}  // namespace

double HypoSlackness::max() const { return std::max({stationarity, trace, support, commutator}); }

ClassicalHypoResult d_hypo_classical(const RealVector& p, const RealVector& s, double eps) {
  detail::check_epsilon(eps, false);
  if (p.size() != s.size() || p.size() == 0) throw InvalidArgument("distributions must have equal nonzero length");
  if (p.minCoeff() < 0.0 || s.minCoeff() < 0.0) throw InvalidArgument("distributions must be nonnegative");
  if (eps > p.sum() + kTraceSlack) throw InvalidArgument("epsilon exceeds the total weight of p");

  const Index n = p.size();
  const double s_cut = kSupportCutoff * s.maxCoeff();
  auto in_kernel = [&](Index i) { return s(i) <= s_cut; };

  ClassicalHypoResult r;
  r.q = RealVector::Zero(n);
  r.x = RealVector::Zero(n);

  double kernel_weight = 0.0;
  for (Index i = 0; i < n; ++i)
    if (in_kernel(i)) kernel_weight += p(i);
  if (kernel_weight >= eps) {
    for (Index i = 0; i < n; ++i)
      if (in_kernel(i)) r.q(i) = 1.0;
    r.infinite = true;
    r.value = HUGE_VAL;
    r.dual = HUGE_VAL;
    return r;
  }

  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  auto ratio = [&](Index i) {
    if (p(i) == 0.0) return 0.0;
    return in_kernel(i) ? HUGE_VAL : p(i) / s(i);
  };
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return ratio(a) > ratio(b); });

  double acc = 0.0;
  Index boundary = -1;
  for (Index i : order) {
    if (p(i) == 0.0) break;
    boundary = i;
    if (acc + p(i) >= eps) {
      r.q(i) = (eps - acc) / p(i);
      acc = eps;
      break;
    }
    r.q(i) = 1.0;
    acc += p(i);
  }
  r.mu = s(boundary) / p(boundary);
  for (Index i = 0; i < n; ++i) r.x(i) = std::max(r.mu * p(i) - s(i), 0.0);
  r.primal = r.q.dot(s) / eps;
  r.dual = r.mu - r.x.sum() / eps;
  r.value = -std::log2(r.primal);
  return r;
}

namespace {

// Top eigenpair of M = σ^{-½}ρσ^{-½} on supp σ; λ = 2^{D_max(ρ‖σ)} when
// supp ρ ⊆ supp σ.
struct TopRatio {
  double lambda = 0.0;
  Vector w;  // σ^{-½}v/√λ
};

TopRatio top_ratio(const Matrix& rho, const Matrix& sigma) {
  Matrix inv_root = apply_on_support(sigma, [](double x) { return 1.0 / std::sqrt(x); });
  EigenSystem es = hermitian_eig(hermitian_part(inv_root * rho * inv_root));
  const Index top = es.values.size() - 1;
  TopRatio t;
  t.lambda = es.values(top);
  if (t.lambda > 0.0) t.w = inv_root * es.vectors.col(top) / std::sqrt(t.lambda);
  return t;
}

// The test Q = ε|w⟩⟨w| and the dual pair μ = 1/λ, X = 0 have equal
// objectives. Q ≤ I holds iff ε‖w‖² ≤ 1.
std::optional<HypoTestResult> spectral_test(const Matrix& rho, const Matrix& sigma, const TopRatio& t, double eps) {
  if (!(t.lambda > 0.0) || eps * t.w.squaredNorm() > 1.0) return std::nullopt;
  HypoTestResult r;
  r.epsilon = eps;
  r.Q = HermitianOperator(hermitian_part(eps * t.w * t.w.adjoint()));
  r.mu = 1.0 / t.lambda;
  r.X = HermitianOperator::zero(rho.rows());
  r.primal = (r.Q.matrix() * sigma).trace().real() / eps;
  r.dual = r.mu;
  r.value = std::log2(t.lambda);
  r.method = "spectral";
  r.slackness = hypo_slackness(r, rho, sigma);
  return r;
}

}  // namespace

HypoSlackness hypo_slackness(const HypoTestResult& r, const Matrix& rho, const Matrix& sigma) {
  const Matrix& q = r.Q.matrix();
  const Matrix& x = r.X.matrix();
  HypoSlackness s;
  s.stationarity = ((r.mu * rho - x - sigma) * q).norm();
  s.trace = std::abs((q * rho).trace().real() - r.epsilon);
  s.support = (q * x - x).norm();
  s.commutator = (q * x - x * q).norm();
  return s;
}

HypoTestResult d_hypo(const QState& rho_state, const HermitianOperator& sigma_op, double eps, const HypoOptions& opts) {
  const Matrix& rho = rho_state.matrix();
  const Matrix& sigma = sigma_op.matrix();
  check_pair(rho, sigma, eps);
  const Index n = rho.rows();

  if (opts.classical_shortcut && detail::is_diagonal(rho) && detail::is_diagonal(sigma)) {
    RealVector p = rho.diagonal().real().cwiseMax(0.0);
    RealVector s = sigma.diagonal().real().cwiseMax(0.0);
    return from_classical(d_hypo_classical(p, s, eps), rho, sigma, eps);
  }

  HermitianOperator kernel = HermitianOperator::identity(n) - support_projector(sigma_op);
  if ((kernel.matrix() * rho).trace().real() >= eps) {
    HypoTestResult r;
    r.epsilon = eps;
    r.infinite = true;
    r.value = HUGE_VAL;
    r.Q = kernel;
    r.X = HermitianOperator::zero(n);
    r.dual = HUGE_VAL;
    r.method = "support";
    return r;
  }

  // with supp ρ ⊆ supp σ the optimal type-II error is at least 1/λ
  const bool contained = (kernel.matrix() * rho).trace().real() <= kSupportCutoff * rho_state.trace();
  TopRatio ratio;
  if (contained) ratio = top_ratio(rho, sigma);
  if (contained && opts.spectral_shortcut) {
    if (auto r = spectral_test(rho, sigma, ratio, eps)) return *r;
  }

  if (eps >= rho_state.trace() - kTraceSlack) return facial_test(rho_state, sigma, eps, opts);

  sdp::SdpProblem prog;
  std::size_t q = prog.add_input(n);
  // cost scaled so the optimum is ≥ 1 and the solver's gap test is relative
  const double scale = contained && ratio.lambda > 0.0 ? ratio.lambda : 1.0;
  prog.A[q] = scale * sigma / eps;
  Matrix id = Matrix::Identity(n, n);
  std::size_t bound = prog.add_output(n, sdp::Relation::GreaterEqual, -id);
  prog.add_term(q, bound, id, -id);
  std::size_t power = prog.add_output(1, sdp::Relation::GreaterEqual, Matrix::Constant(1, 1, eps));
  prog.add_functional(q, power, rho);

  sdp::SolverOptions solver = opts.solver;
  sdp::SdpSolution sol = sdp::solve(prog, solver);
  for (int k = 0; k < opts.gap_relaxations && sol.status == sdp::SolveStatus::NumericalFailure; ++k) {
    solver.gap_tol *= 10.0;
    sol = sdp::solve(prog, solver);
  }
  if (sol.status != sdp::SolveStatus::Optimal)
    throw Error("hypothesis-testing SDP did not converge: " + sdp::to_string(sol.status));

  HypoTestResult r;
  r.epsilon = eps;
  r.Q = HermitianOperator(hermitian_part(sol.X[q]));
  r.mu = eps * sol.Y[power](0, 0).real() / scale;
  r.X = HermitianOperator(hermitian_part(eps / scale * sol.Y[bound]));
  r.primal = sol.alpha / scale;
  r.dual = sol.beta / scale;
  r.iterations = sol.iterations;
  r.method = "sdp";
  if (r.primal <= 0.0) throw Error("hypothesis-testing SDP returned a nonpositive type-II error");
  r.value = -std::log2(r.primal);
  r.slackness = hypo_slackness(r, rho, sigma);
  return r;
}

HypoTestResult d_hypo(const QState& rho, const QState& sigma, double eps, const HypoOptions& opts) {
  return d_hypo(rho, sigma.op(), eps, opts);
}

HermitianOperator conditioning_operator(const QState& rho_ab, const Partition& p) {
  detail::check_partition(p, rho_ab.layout());
  Matrix rho_b = p.b.empty() ? Matrix::Constant(1, 1, rho_ab.trace())
                             : partial_trace(rho_ab.matrix(), rho_ab.layout(), p.b);
  return HermitianOperator(hermitian_part(detail::identity_tensor(rho_b, rho_ab.layout(), p)));
}

HypoTestResult h_hypo_test(const QState& rho_ab, const Partition& p, double eps, const HypoOptions& opts) {
  return d_hypo(rho_ab, conditioning_operator(rho_ab, p), eps, opts);
}

EntropyValue h_hypo(const QState& rho_ab, const Partition& p, double eps, const HypoOptions& opts) {
  HypoTestResult t = h_hypo_test(rho_ab, p, eps, opts);
  if (t.infinite) return EntropyValue::minus_infinity(t.method);
  return EntropyValue::finite(-t.value, "d_hypo/" + t.method);
}

}  // namespace entroscope
