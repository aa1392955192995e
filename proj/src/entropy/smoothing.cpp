#include <cmath>

#include "detail.hpp"
#include "entroscope/entropy.hpp"

namespace entroscope {

namespace detail {

Matrix BallVariable::selector() const {
  Matrix e = Matrix::Zero(support_dim, support_dim + rho_rank);
  e.leftCols(support_dim).setIdentity();
  return e;
}

bool ball_contains_zero(const QState& rho, double eps) { return eps * eps >= rho.trace(); }

BallVariable add_ball(sdp::SdpProblem& prog, const QState& rho, const Matrix& basis, double eps) {
  EigenSystem es = rho.op().eig();
  const double cut = kSupportCutoff * es.values.cwiseAbs().maxCoeff();
  Index first = 0;
  while (first < es.values.size() && es.values(first) <= cut) ++first;
  Matrix v = es.vectors.rightCols(es.values.size() - first);
  RealVector lambda = es.values.tail(es.values.size() - first);

  BallVariable ball;
  ball.support_dim = basis.cols();
  ball.rho_rank = v.cols();
  const Index s = ball.support_dim, r = ball.rho_rank;
  ball.input = prog.add_input(s + r);

  Matrix lower = Matrix::Zero(r, s + r);
  lower.rightCols(r).setIdentity();
  std::size_t fixed = prog.add_output(r, sdp::Relation::Equal, lambda.cast<cplx>().asDiagonal());
  prog.add_term(ball.input, fixed, lower, lower);

  Matrix overlap = Matrix::Zero(s + r, s + r);
  Matrix k = v.adjoint() * basis;
  overlap.topRightCorner(s, r) = 0.5 * k.adjoint();
  overlap.bottomLeftCorner(r, s) = 0.5 * k;
  std::size_t fid = prog.add_output(1, sdp::Relation::GreaterEqual, Matrix::Constant(1, 1, std::sqrt(1.0 - eps * eps)));
  prog.add_functional(ball.input, fid, overlap);

  Matrix trace_r = Matrix::Zero(s + r, s + r);
  trace_r.topLeftCorner(s, s).setIdentity();
  if (rho.is_normalized(1e-12)) {
    std::size_t norm = prog.add_output(1, sdp::Relation::GreaterEqual, Matrix::Constant(1, 1, -1.0));
    prog.add_functional(ball.input, norm, -trace_r);
    return ball;
  }

  // [[a, t], [t, b]] ⪰ 0 with a = 1 − tr ρ̃ and b = 1 − tr ρ bounds t by the
  // subnormalization term of the generalized fidelity.
  std::size_t corr = prog.add_input(2);
  Matrix e00 = Matrix::Zero(2, 2), e11 = Matrix::Zero(2, 2), off = Matrix::Zero(2, 2);
  e00(0, 0) = 1.0;
  e11(1, 1) = 1.0;
  off(0, 1) = off(1, 0) = 0.5;
  std::size_t slack_a = prog.add_output(1, sdp::Relation::Equal, Matrix::Constant(1, 1, 1.0));
  prog.add_functional(corr, slack_a, e00);
  prog.add_functional(ball.input, slack_a, trace_r);
  std::size_t slack_b = prog.add_output(1, sdp::Relation::Equal, Matrix::Constant(1, 1, 1.0 - rho.trace()));
  prog.add_functional(corr, slack_b, e11);
  prog.add_functional(corr, fid, off);
  return ball;
}

}  // namespace detail

double fidelity_sdp(const QState& zeta, const QState& eta, const sdp::SolverOptions& opts) {
  if (zeta.dim() != eta.dim()) throw InvalidArgument("fidelity_sdp: dimension mismatch");
  QState zeta_ab = purify_minimal(QState(zeta.op(), SystemLayout::single(zeta.dim(), "A")), "B");
  const Index da = zeta.dim(), db = zeta_ab.dim() / da;

  EigenSystem es = eta.op().eig();
  const double cut = kSupportCutoff * es.values.cwiseAbs().maxCoeff();
  Index first = 0;
  while (first < da && es.values(first) <= cut) ++first;
  Matrix w = es.vectors.rightCols(da - first);
  const Index t = w.cols();
  Matrix lift = kron(w, Matrix::Identity(db, db));

  sdp::SdpProblem prog;
  std::size_t x = prog.add_input(t * db);
  prog.A[x] = -(lift.adjoint() * zeta_ab.matrix() * lift);
  std::size_t marg = prog.add_output(t, sdp::Relation::Equal, es.values.tail(t).cast<cplx>().asDiagonal());
  for (Index k = 0; k < db; ++k) {
    Matrix l = kron(Matrix::Identity(t, t), Matrix::Identity(db, db).row(k));
    prog.add_term(x, marg, l, l);
  }
  sdp::SdpSolution sol = sdp::solve(prog, opts);
  if (sol.status != sdp::SolveStatus::Optimal)
    throw Error("fidelity SDP did not converge: " + sdp::to_string(sol.status));
  return -sol.alpha;
}

EntropyValue d_max_smooth(const QState& rho, const HermitianOperator& sigma, double eps, const sdp::SolverOptions& opts) {
  detail::check_epsilon(eps, true);
  if (eps == 0.0) return d_max(rho, sigma);
  if (rho.dim() != sigma.dim()) throw InvalidArgument("rho and sigma have different dimensions");
  if (!sigma.is_psd()) throw InvalidArgument("sigma is not positive semidefinite");
  if (detail::ball_contains_zero(rho, eps)) return EntropyValue::minus_infinity("zero in ball");

  EigenSystem es = sigma.eig();
  const double cut = kSupportCutoff * es.values.cwiseAbs().maxCoeff();
  Index first = 0;
  while (first < es.values.size() && es.values(first) <= cut) ++first;
  const Index s = es.values.size() - first;
  if (s == 0) return EntropyValue::plus_infinity("support");
  Matrix u = es.vectors.rightCols(s);

  sdp::SdpProblem prog;
  std::size_t mu = prog.add_input(1);
  prog.A[mu] = Matrix::Constant(1, 1, 1.0);
  detail::BallVariable ball = detail::add_ball(prog, rho, u, eps);
  std::size_t dom = prog.add_output(s, sdp::Relation::GreaterEqual, Matrix::Zero(s, s));
  for (Index k = 0; k < s; ++k) {
    Matrix col = Matrix::Zero(s, 1);
    col(k, 0) = std::sqrt(es.values(first + k));
    prog.add_term(mu, dom, col, col);
  }
  Matrix sel = ball.selector();
  prog.add_term(ball.input, dom, -sel, sel);

  sdp::SdpSolution sol = sdp::solve(prog, opts);
  if (sol.status == sdp::SolveStatus::Infeasible) return EntropyValue::plus_infinity("infeasible");
  if (sol.status != sdp::SolveStatus::Optimal)
    throw Error("smooth max-divergence SDP did not converge: " + sdp::to_string(sol.status));
  if (sol.alpha <= 0.0) return EntropyValue::minus_infinity("sdp");
  return EntropyValue::finite(std::log2(sol.alpha), "sdp");
}

EntropyValue d_max_sdp(const QState& rho, const HermitianOperator& sigma, const sdp::SolverOptions& opts) {
  if (rho.dim() != sigma.dim()) throw InvalidArgument("rho and sigma have different dimensions");
  sdp::SdpProblem prog;
  std::size_t mu = prog.add_input(1);
  prog.A[mu] = Matrix::Constant(1, 1, 1.0);
  std::size_t dom = prog.add_output(rho.dim(), sdp::Relation::GreaterEqual, rho.matrix());
  EigenSystem es = sigma.eig();
  for (Index k = 0; k < es.values.size(); ++k) {
    if (es.values(k) <= 0.0) continue;
    prog.add_term(mu, dom, std::sqrt(es.values(k)) * es.vectors.col(k), std::sqrt(es.values(k)) * es.vectors.col(k));
  }
  sdp::SdpSolution sol = sdp::solve(prog, opts);
  if (sol.status == sdp::SolveStatus::Infeasible) return EntropyValue::plus_infinity("infeasible");
  if (sol.status != sdp::SolveStatus::Optimal)
    throw Error("max-divergence SDP did not converge: " + sdp::to_string(sol.status));
  return EntropyValue::finite(std::log2(sol.alpha), "sdp");
}

double trace_distance_sdp(const QState& rho, const QState& sigma, const sdp::SolverOptions& opts) {
  if (rho.dim() != sigma.dim()) throw InvalidArgument("rho and sigma have different dimensions");
  const Index n = rho.dim();
  sdp::SdpProblem prog;
  std::size_t z = prog.add_input(n);
  prog.A[z] = Matrix::Identity(n, n);
  std::size_t dom = prog.add_output(n, sdp::Relation::GreaterEqual, rho.matrix() - sigma.matrix());
  prog.add_term(z, dom, Matrix::Identity(n, n), Matrix::Identity(n, n));
  sdp::SdpSolution sol = sdp::solve(prog, opts);
  if (sol.status != sdp::SolveStatus::Optimal)
    throw Error("trace-distance SDP did not converge: " + sdp::to_string(sol.status));
  return sol.alpha;
}

QState dmin_smoothing_witness(const QState& rho, const HermitianOperator& sigma, double eps, const HypoOptions& opts) {
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidArgument("epsilon must lie in (0,1)");
  HypoTestResult t = d_hypo(rho, sigma, 1.0 - eps, opts);
  Matrix root = psd_sqrt(t.Q.matrix());
  return QState(hermitian_part(root * rho.matrix() * root), rho.layout());
}

QState dmax_smoothing_witness(const QState& rho, const HermitianOperator& sigma, const HypoTestResult& test) {
  if (test.infinite || test.method == "facial")
    throw InvalidArgument("hypothesis test has no attained dual witness");
  Matrix sum = sigma.matrix() + test.X.matrix();
  Matrix inv_root = apply_on_support(hermitian_part(sum), [](double x) { return 1.0 / std::sqrt(x); });
  Matrix g = psd_sqrt(sigma.matrix()) * inv_root;
  return QState(hermitian_part(g * rho.matrix() * g.adjoint()), rho.layout());
}

QState dmax_smoothing_witness(const QState& rho, const HermitianOperator& sigma, double eps, const HypoOptions& opts) {
  return dmax_smoothing_witness(rho, sigma, d_hypo(rho, sigma, eps, opts));
}

}  // namespace entroscope
