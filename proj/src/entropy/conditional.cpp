#include <cmath>

#include "detail.hpp"
#include "entroscope/entropy.hpp"

namespace entroscope {

namespace {

HermitianOperator lift_sigma(const QState& rho_ab, const Partition& p, const QState& sigma_b) {
  detail::check_partition(p, rho_ab.layout());
  Index db = rho_ab.layout().restricted_to(p.b).total_dim();
  if (sigma_b.dim() != db) throw InvalidArgument("sigma_B does not match the dimension of the B systems");
  return HermitianOperator(hermitian_part(detail::identity_tensor(sigma_b.matrix(), rho_ab.layout(), p)));
}

std::string fresh_label(const SystemLayout& layout) {
  std::string label = "C";
  for (int k = 1; layout.contains(label); ++k) label = "C" + std::to_string(k);
  return label;
}

}  // namespace

EntropyValue h_min(const QState& rho_ab, const Partition& p, const QState& sigma_b, double eps,
                   const sdp::SolverOptions& opts) {
  return -d_max_smooth(rho_ab, lift_sigma(rho_ab, p, sigma_b), eps, opts);
}

EntropyValue h_min(const QState& rho_ab, const Partition& p, double eps, const sdp::SolverOptions& opts) {
  detail::check_epsilon(eps, true);
  detail::check_partition(p, rho_ab.layout());
  if (eps > 0.0 && detail::ball_contains_zero(rho_ab, eps)) return EntropyValue::plus_infinity("zero in ball");

  SystemLayout grouped = detail::grouped_layout(rho_ab.layout(), p);
  QState rho = grouped.labels() == rho_ab.layout().labels() ? rho_ab : permute_systems(rho_ab, grouped.labels());
  const Index da = grouped.restricted_to(p.a).total_dim();
  const Index db = rho.dim() / da;
  const Index n = rho.dim();

  sdp::SdpProblem prog;
  std::size_t sig = prog.add_input(db);
  prog.A[sig] = Matrix::Identity(db, db);
  Matrix rhs = Matrix::Zero(n, n);
  detail::BallVariable ball;
  if (eps == 0.0) rhs = rho.matrix();
  else ball = detail::add_ball(prog, rho, Matrix::Identity(n, n), eps);
  std::size_t dom = prog.add_output(n, sdp::Relation::GreaterEqual, rhs);
  for (Index a = 0; a < da; ++a) {
    Matrix lift = kron(Matrix::Identity(da, da).col(a), Matrix::Identity(db, db));
    prog.add_term(sig, dom, lift, lift);
  }
  if (eps > 0.0) {
    Matrix sel = ball.selector();
    prog.add_term(ball.input, dom, -sel, sel);
  }

  sdp::SdpSolution sol = sdp::solve(prog, opts);
  if (sol.status != sdp::SolveStatus::Optimal)
    throw Error("conditional min-entropy SDP did not converge: " + sdp::to_string(sol.status));
  if (sol.alpha <= 0.0) return EntropyValue::plus_infinity("sdp");
  return EntropyValue::finite(-std::log2(sol.alpha), "sdp");
}

EntropyValue h_max(const QState& rho_ab, const Partition& p, double eps, const sdp::SolverOptions& opts) {
  detail::check_partition(p, rho_ab.layout());
  std::string c = fresh_label(rho_ab.layout());
  QState pure = purify_minimal(rho_ab, c);
  std::vector<std::string> keep = p.a;
  keep.push_back(c);
  QState rho_ac = partial_trace(pure, keep);
  return -h_min(rho_ac, Partition{p.a, {c}}, eps, opts);
}

EntropyValue h_max(const QState& rho_ab, const Partition& p, const QState& sigma_b) {
  return -d_min(rho_ab, lift_sigma(rho_ab, p, sigma_b));
}

}  // namespace entroscope
