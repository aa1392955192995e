#include <cmath>

#include "harness.hpp"

namespace entroscope::verify {

using namespace detail;

namespace {

const Partition kAB{{"A"}, {"B"}};

// Σ_x p_x |x⟩⟨x| ⊗ |b_x⟩⟨b_x| with orthonormal b_x: X is a function of B.
QState deterministic_cq(Index dx, Rng& rng) {
  Matrix u = random_unitary(dx, rng);
  std::uniform_real_distribution<double> w(0.1, 1.0);
  RealVector p(dx);
  for (Index x = 0; x < dx; ++x) p(x) = w(rng);
  p /= p.sum();
  Matrix m = Matrix::Zero(dx * dx, dx * dx);
  for (Index x = 0; x < dx; ++x) {
    Matrix ket = kron(Matrix(Vector::Unit(dx, x)), Matrix(u.col(x)));
    m += p(x) * ket * ket.adjoint();
  }
  return QState(hermitian_part(m), SystemLayout({{"X", dx}, {"B", dx}}));
}

}  // namespace

CheckReport check_hh_core(const CheckConfig& cfg) {
  return run_trials("hh_core", 2, cfg, cfg.trials, [&](int, Rng& rng, Trial& out) {
    const Index da = pick_dim(cfg, rng), db = pick_dim(cfg, rng);
    double e1 = pick_eps(cfg, rng), e2 = pick_eps(cfg, rng);
    if (e1 > e2) std::swap(e1, e2);
    SystemLayout layout = bipartite(da, db);
    QState rho = sample_state(layout, rng);
    out.instance["epsilons"] = {e1, e2};
    out.instance["rho"] = io::state_to_json(rho);

    const double log_da = std::log2(static_cast<double>(da));
    const double h1 = hh(cfg, rho, kAB, e1);
    const double h2 = hh(cfg, rho, kAB, e2);
    out.record("lower_dimension_bound", margin_le(-log_da, h1));
    out.record("upper_dimension_bound", margin_le(h1, log_da));
    out.record("monotone_in_epsilon", margin_le(h1, h2));

    // π_A ⊗ ρ_B attains the upper bound
    QState rho_b = partial_trace(rho, {"B"});
    QState product = tensor_product(QState::maximally_mixed(SystemLayout::single(da)), rho_b);
    out.record("maximal_for_product", -std::abs(hh(cfg, product, kAB, e1) - log_da));

    const Index dx = pick_dim(cfg, rng);
    QState cq = random_cq_state(dx, db, rng);
    out.instance["cq"] = io::state_to_json(cq);
    const double hcq = hh(cfg, cq, Partition{{"X"}, {"B"}}, e1);
    out.record("cq_nonnegative", margin_le(0.0, hcq));
    out.record("cq_upper", margin_le(hcq, std::log2(static_cast<double>(dx))));
    QState det = deterministic_cq(dx, rng);
    out.record("cq_deterministic_zero", -std::abs(hh(cfg, det, Partition{{"X"}, {"B"}}, e1)));

    // sub-unital TP map on A, TP map on B
    const Index da_out = std::max(da, pick_dim(cfg, rng));
    const Index db_out = pick_dim(cfg, rng);
    std::uniform_int_distribution<Index> nk(1, 3);
    QChannel e = random_subunital_channel(da, da_out, nk(rng), rng);
    std::uniform_int_distribution<Index> nf((db + db_out - 1) / db_out, db * db_out);
    QChannel f = random_channel(db, db_out, nf(rng), rng);
    out.instance["channel_a"] = io::channel_to_json(e);
    out.instance["channel_b"] = io::channel_to_json(f);
    QState tau = apply_channel(f, apply_channel(e, rho, "A"), "B");
    out.record("data_processing", margin_le(h1, hh(cfg, tau, kAB, e1)));

    // H_H^ε ≥ H_min(A|B)_{ρ|ρ}, with the gap non-increasing as ε → 0
    const double hmin = -to_bits(d_max(rho, conditioning_operator(rho, kAB)));
    out.record("above_min_entropy", margin_le(hmin, h1));
    double prev = HUGE_VAL;
    io::json seq = io::json::array();
    for (double eps : {1e-2, 1e-3, 1e-4}) {
      double gap = std::abs(hh(cfg, rho, kAB, eps) - hmin);
      seq.push_back(gap);
      if (prev != HUGE_VAL) out.record("limit_trend", prev - gap);
      prev = gap;
    }
    out.instance["limit_gaps"] = seq;
  });
}

CheckReport check_decomposition_chain(const CheckConfig& cfg) {
  return run_trials("decomposition_chain", 5, cfg, cfg.trials, [&](int, Rng& rng, Trial& out) {
    const Index da = pick_dim(cfg, rng), db = pick_dim(cfg, rng), dc = pick_dim(cfg, rng);
    const double eps = pick_eps(cfg, rng), eps2 = pick_eps(cfg, rng);
    SystemLayout layout({{"A", da}, {"B", db}, {"C", dc}});
    QState rho = sample_state(layout, rng);
    QState sigma_bc = sample_state(layout.restricted_to({"B", "C"}), rng);
    QState sigma = tensor_product(QState::maximally_mixed(SystemLayout::single(da)), sigma_bc);
    QState xi = weyl_heisenberg_twirl(rho, "A");
    out.instance["epsilon"] = eps;
    out.instance["epsilon_prime"] = eps2;
    out.instance["rho"] = io::state_to_json(rho);
    out.instance["sigma"] = io::state_to_json(sigma);

    out.record("invariant_equality", -std::abs(dh(cfg, xi, xi.op(), eps)));

    const double big = eps + std::sqrt(2.0 * eps2);
    if (big > 1.0) {
      out.skip("decomposition");
      out.skip("decomposition_invariant_rho");
    } else {
      const double overhead = std::log2(big / eps);
      const double d_xs = dh(cfg, xi, sigma.op(), eps2);
      double rhs = dh(cfg, rho, xi.op(), eps) + d_xs + overhead;
      out.record("decomposition", margin_le(dh(cfg, rho, sigma.op(), big), rhs));
      // ρ = ξ: the first term on the right vanishes
      out.record("decomposition_invariant_rho",
                 margin_le(dh(cfg, xi, sigma.op(), big), dh(cfg, xi, xi.op(), eps) + d_xs + overhead));
    }

    const double chain = eps + std::sqrt(8.0 * eps2);
    if (chain > 1.0) {
      out.skip("chain_rule");
    } else {
      QState rho_bc = partial_trace(rho, {"B", "C"});
      double lhs = hh(cfg, rho, Partition{{"A", "B"}, {"C"}}, chain);
      double rhs = hh(cfg, rho, Partition{{"A"}, {"B", "C"}}, eps) + hh(cfg, rho_bc, Partition{{"B"}, {"C"}}, eps2) -
                   std::log2((eps + std::sqrt(2.0 * eps2)) / eps);
      out.record("chain_rule", margin_le(rhs, lhs));
    }
  });
}

}  // namespace entroscope::verify
