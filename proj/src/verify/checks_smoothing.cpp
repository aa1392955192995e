#include <cmath>

#include "harness.hpp"

namespace entroscope::verify {

using namespace detail;

namespace {

const Partition kAB{{"A"}, {"B"}};

QState conjugate(const Matrix& g, const QState& rho) {
  return QState(hermitian_part(g * rho.matrix() * g.adjoint()), rho.layout());
}

Matrix positive_part(const Matrix& h) {
  EigenSystem es = hermitian_eig(h);
  RealVector pos = es.values.cwiseMax(0.0);
  return hermitian_part(es.vectors * pos.cast<cplx>().asDiagonal() * es.vectors.adjoint());
}

}  // namespace

CheckReport check_smooth_relations(const CheckConfig& cfg) {
  return run_trials("smooth_relations", 4, cfg, cfg.trials, [&](int, Rng& rng, Trial& out) {
    const Index da = pick_dim(cfg, rng), db = pick_dim(cfg, rng);
    const double eps = pick_eps(cfg, rng);
    const double radius = std::min(std::sqrt(2.0 * eps), 1.0);
    SystemLayout layout = bipartite(da, db);
    QState rho = sample_state(layout, rng);
    QState sigma = random_state(layout, layout.total_dim(), rng);
    const HermitianOperator& s = sigma.op();
    out.instance["epsilon"] = eps;
    out.instance["rho"] = io::state_to_json(rho);
    out.instance["sigma"] = io::state_to_json(sigma);

    HypoTestResult t = d_hypo(rho, s, eps);
    const double D = dh(cfg, t);
    out.record("dh_below_dmax", margin_le(D, to_bits(d_max(rho, s))));
    if (t.infinite) {
      out.skip("dmax_witness_below_dh");
      out.skip("dmax_witness_in_ball");
    } else {
      QState tilde = dmax_smoothing_witness(rho, s, t);
      out.record("dmax_witness_below_dh", margin_le(to_bits(d_max(tilde, s)), D));
      out.record("dmax_witness_in_ball", margin_le(purified_distance(rho, tilde), radius));
    }
    out.record("smooth_dmax_below_dh", margin_le(to_bits(d_max_smooth(rho, s, radius)), D));

    HypoTestResult self = d_hypo(rho, rho.op(), eps);
    QState self_tilde = dmax_smoothing_witness(rho, rho.op(), self);
    out.record("dmax_witness_at_rho_eq_sigma", margin_le(to_bits(d_max(self_tilde, rho.op())), dh(cfg, self)));

    const double h = hh(cfg, rho, kAB, eps);
    out.record("hmin_smooth_above_hh", margin_le(h, to_bits(h_min(rho, kAB, radius))));
    out.record("hh_above_hmin_rho_rho", margin_le(-to_bits(d_max(rho, conditioning_operator(rho, kAB))), h));

    EntropyValue dmin = d_min(rho, s);
    HypoTestResult t2 = d_hypo(rho, s, 1.0 - eps);
    if (!dmin.is_finite() || t2.infinite) {
      out.skip("dmin_below_dh");
      out.skip("dmin_witness_above_dh");
      out.skip("dmin_witness_in_ball");
    } else {
      const double D2 = dh(cfg, t2);
      out.record("dmin_below_dh", margin_le(dmin.bits - std::log2(1.0 / (eps * eps)), D2));
      QState tilde2 = conjugate(psd_sqrt(t2.Q.matrix()), rho);
      out.record("dmin_witness_above_dh", margin_le(D2, to_bits(d_min(tilde2, s)) - std::log2(1.0 / (1.0 - eps))));
      out.record("dmin_witness_in_ball", margin_le(purified_distance(rho, tilde2), radius));
    }
    const double hmax = to_bits(h_max(rho, kAB, 0.0));
    out.record("hmax_above_hh", margin_le(hh(cfg, rho, kAB, 1.0 - eps), hmax + std::log2(1.0 / (eps * eps))));
  });
}

CheckReport check_appendix_lemmas(const CheckConfig& cfg) {
  return run_trials("appendix_lemmas", 6, cfg, cfg.trials, [&](int trial, Rng& rng, Trial& out) {
    const Index d = pick_dim(cfg, rng);
    SystemLayout layout = SystemLayout::single(d);
    QState rho = random_subnormalized_state(layout, pick_rank(d, rng), 0.2, rng);
    QState sigma = random_subnormalized_state(layout, pick_rank(d, rng), 0.2, rng);
    out.instance["rho"] = io::state_to_json(rho);
    out.instance["sigma"] = io::state_to_json(sigma);

    // max tr[P(ρ−σ)] over tests, with the states ordered so that tr ρ ≥ tr σ
    const double dist = generalized_trace_distance(rho, sigma);
    const bool ordered = rho.trace() >= sigma.trace();
    const double sdp = trace_distance_sdp(ordered ? rho : sigma, ordered ? sigma : rho) + cfg.mutation_offset;
    out.record("trace_distance_sdp", -std::abs(sdp - dist));
    const double pd = purified_distance(rho, sigma);
    out.record("trace_below_purified", margin_le(dist, pd));
    out.record("purified_below_sqrt_2d", margin_le(pd, std::sqrt(2.0 * dist)));

    // D_H^{ε+δ}(ρ‖σ) + log(ε/(ε+δ)) ≤ D_H^ε(ρ̃‖σ) for ρ̃ within δ of ρ
    const double eps = pick_eps(cfg, rng);
    if (eps >= rho.trace()) {
      out.skip("perturbed_state");
    } else {
      std::uniform_real_distribution<double> u(0.05, 1.0);
      const double delta = u(rng) * (rho.trace() - eps);
      QState tau = random_subnormalized_state(layout, pick_rank(d, rng), 0.2, rng);
      double t = 1.0;
      Matrix mixed = tau.matrix();
      for (int k = 0; k < 80; ++k) {
        mixed = (1.0 - t) * rho.matrix() + t * tau.matrix();
        if (generalized_trace_distance(rho, QState(hermitian_part(mixed), layout)) <= delta) break;
        t *= 0.5;
      }
      QState tilde(hermitian_part(mixed), layout);
      QState target = sample_state(layout, rng);
      out.instance["perturbation_delta"] = delta;
      out.instance["perturbation_epsilon"] = eps;
      out.instance["perturbed_rho"] = io::state_to_json(tilde);
      double lhs = dh(cfg, rho, target.op(), eps + delta) + std::log2(eps / (eps + delta));
      out.record("perturbed_state", margin_le(lhs, dh(cfg, tilde, target.op(), eps)));
    }

    // P(ρ, ΠρΠ) bound; every tenth trial uses Π = I
    Matrix pi = trial % 10 == 0 ? Matrix(Matrix::Identity(d, d)) : random_contraction_psd(d, rng);
    out.instance["pinching_pi"] = io::matrix_to_json(pi);
    const double r = rho.trace();
    const double tt = (pi * pi * rho.matrix()).trace().real();
    const double bound = std::sqrt(std::max(r * r - tt * tt, 0.0)) / std::sqrt(r);
    Matrix pinched = hermitian_part(pi * rho.matrix() * pi);
    if (pinched.trace().real() <= 0.0) {
      out.skip("pinching");
    } else {
      out.record("pinching", margin_le(purified_distance(rho, QState(pinched, layout)), bound));
    }

    // square-root map G = √σ(σ+Δ)^{-½} with Δ = (ρ − σ)_+ on normalized states
    QState rn = sample_state(layout, rng);
    QState sn = sample_state(layout, rng);
    Matrix delta = positive_part(rn.matrix() - sn.matrix());
    const double tr_delta = delta.trace().real();
    Matrix inv_root = apply_on_support(hermitian_part(sn.matrix() + delta), [](double x) { return 1.0 / std::sqrt(x); });
    Matrix g = psd_sqrt(sn.matrix()) * inv_root;
    QState psi = purify(rn);
    Matrix g_full = embed_on(g, psi.layout(), "A");
    Matrix moved = hermitian_part(g_full * psi.matrix() * g_full.adjoint());
    out.instance["square_root_rho"] = io::state_to_json(rn);
    out.instance["square_root_sigma"] = io::state_to_json(sn);
    if (moved.trace().real() <= 0.0) {
      out.skip("square_root_map");
    } else {
      double p = purified_distance(psi, QState(moved, psi.layout()));
      out.record("square_root_map", margin_le(p, std::sqrt(tr_delta * (2.0 - tr_delta))));
    }
  });
}

}  // namespace entroscope::verify
