#include <cmath>

#include "harness.hpp"

namespace entroscope::verify {

using namespace detail;

namespace {

RealVector kron_power(const RealVector& v, int n) {
  RealVector out = RealVector::Ones(1);
  for (int k = 0; k < n; ++k) {
    RealVector next(out.size() * v.size());
    for (Index i = 0; i < out.size(); ++i) next.segment(i * v.size(), v.size()) = out(i) * v;
    out = next;
  }
  return out;
}

Matrix diag_matrix(const RealVector& v) { return v.cast<cplx>().asDiagonal(); }

double shannon(const RealVector& p) {
  double h = 0.0;
  for (double x : p)
    if (x > 0.0) h -= x * std::log2(x);
  return h;
}

struct GapSeries {
  std::vector<double> gaps;
  io::json to_json() const { return gaps; }
};

// (1/n)·D_H^ε on product distributions, n = 1..n_max.
GapSeries classical_series(const CheckConfig& cfg, const RealVector& p, const RealVector& s, double eps,
                           double target, int n_max, double sign) {
  GapSeries g;
  for (int n = 1; n <= n_max; ++n) {
    ClassicalHypoResult r = d_hypo_classical(kron_power(p, n), kron_power(s, n), eps);
    if (r.infinite) throw Error("unexpected infinite value in AEP instance");
    double v = sign * (r.value + cfg.mutation_offset) / n;
    g.gaps.push_back(std::abs(v - target));
  }
  return g;
}

QState rotated_diag(double a, double theta) {
  Matrix r(2, 2);
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = a;
  d(1, 1) = 1.0 - a;
  return QState(hermitian_part(r * d * r.adjoint()), SystemLayout::single(2));
}

}  // namespace

CheckReport check_dh_core(const CheckConfig& cfg) {
  return run_trials("dh_core", 1, cfg, cfg.trials, [&](int trial, Rng& rng, Trial& out) {
    const Index d = pick_dim(cfg, rng);
    const double eps = pick_eps(cfg, rng);
    SystemLayout layout = SystemLayout::single(d);
    QState rho = sample_state(layout, rng);
    QState sigma = sample_state(layout, rng);
    out.instance["epsilon"] = eps;
    out.instance["rho"] = io::state_to_json(rho);
    out.instance["sigma"] = io::state_to_json(sigma);

    const double D = dh(cfg, rho, sigma.op(), eps);
    out.record("positivity", margin_le(0.0, D));
    out.record("equality_at_rho_eq_sigma", -std::abs(dh(cfg, rho, rho.op(), eps)));

    const double delta = 0.5 * trace_norm(rho.matrix() - sigma.matrix());
    out.record("trace_distance_upper", margin_le(D, eps > delta ? std::log2(eps / (eps - delta)) : HUGE_VAL));
    if (eps > (1.0 - eps) * delta) {
      out.record("trace_distance_lower", margin_le(std::log2(eps / (eps - (1.0 - eps) * delta)), D));
      out.record("pinsker_like", margin_le((1.0 - eps) / eps * delta, D));
    } else {
      out.skip("trace_distance_lower");
      out.skip("pinsker_like");
    }

    const Index d_out = pick_dim(cfg, rng);
    std::uniform_int_distribution<Index> nk((d + d_out - 1) / d_out, d * d_out);
    QChannel ch = trial % 2 == 0 ? random_channel(d, d_out, nk(rng), rng)
                                 : random_trace_non_increasing_channel(d, d_out, nk(rng), rng);
    out.instance["channel"] = io::channel_to_json(ch);
    Matrix e_rho = apply_channel(ch, rho.matrix(), layout, "A");
    Matrix e_sigma = apply_channel(ch, sigma.matrix(), layout, "A");
    if (e_rho.trace().real() < eps) {
      out.skip("data_processing");
    } else {
      SystemLayout lo = SystemLayout::single(d_out);
      QState er(HermitianOperator(hermitian_part(e_rho)), lo);
      HermitianOperator es(hermitian_part(e_sigma));
      out.record("data_processing", margin_le(dh(cfg, er, es, eps), D));
    }
  });
}

CheckReport check_aep(const CheckConfig& cfg, int n_max) {
  if (n_max < 1 || n_max > 8) throw InvalidArgument("n_max must lie in [1,8]");
  const int instances = cfg.trials == 0 ? 0 : 5;
  const double eps = 0.5;
  return run_trials("aep", 3, cfg, instances, [&](int trial, Rng&, Trial& out) {
    out.instance["epsilon"] = eps;
    out.instance["n_max"] = n_max;
    switch (trial) {
      case 0: {
        RealVector p(2), s(2);
        p << 0.7, 0.3;
        s << 0.5, 0.5;
        double kl = to_bits(kl_div(QState(HermitianOperator(diag_matrix(p)), SystemLayout::single(2)),
                                   HermitianOperator(diag_matrix(s))));
        GapSeries g = classical_series(cfg, p, s, eps, kl, n_max, 1.0);
        out.instance["instance"] = "classical diag(0.7,0.3) vs diag(0.5,0.5)";
        out.instance["target"] = kl;
        out.instance["gaps"] = g.to_json();
        out.record("relative_trend", g.gaps.front() - g.gaps.back());
        break;
      }
      case 1: {
        RealVector p(3);
        p << 0.5, 0.3, 0.2;
        GapSeries g = classical_series(cfg, p, p, eps, 0.0, n_max, 1.0);
        out.instance["instance"] = "rho = sigma = diag(0.5,0.3,0.2)";
        out.instance["gaps"] = g.to_json();
        double worst = 0.0;
        for (double x : g.gaps) worst = std::max(worst, x);
        out.record("identity_gap", -worst);
        break;
      }
      case 2: {
        // p(x,b) on X×B, flattened with x major; I_X⊗p_B is the second argument
        RealVector pxb(4), s(4);
        pxb << 0.4, 0.1, 0.15, 0.35;
        RealVector pb(2);
        pb << pxb(0) + pxb(2), pxb(1) + pxb(3);
        s << pb(0), pb(1), pb(0), pb(1);
        double h = shannon(pxb) - shannon(pb);
        GapSeries g = classical_series(cfg, pxb, s, eps, h, n_max, -1.0);
        out.instance["instance"] = "classical conditional p(x,b) = (0.4,0.1,0.15,0.35)";
        out.instance["target"] = h;
        out.instance["gaps"] = g.to_json();
        out.record("conditional_trend", g.gaps.front() - g.gaps.back());
        break;
      }
      case 3: {
        QState rho = rotated_diag(0.7, 1.0);
        QState sigma = rotated_diag(0.6, 0.0);
        double kl = to_bits(kl_div(rho, sigma.op()));
        std::vector<double> gaps;
        for (int n = 1; n <= std::min(n_max, 3); ++n) {
          QState rn = n == 1 ? rho : tensor_power(rho, n);
          QState sn = n == 1 ? sigma : tensor_power(sigma, n);
          gaps.push_back(std::abs(dh(cfg, rn, sn.op(), eps) / n - kl));
        }
        out.instance["instance"] = "qubit pair, rotated diag(0.7,0.3) vs diag(0.6,0.4)";
        out.instance["target"] = kl;
        out.instance["gaps"] = gaps;
        out.record("quantum_trend", gaps.front() - gaps.back());
        break;
      }
      default: {
        Vector psi(4);
        psi << 0.8, 0.1, 0.2, std::sqrt(1.0 - 0.64 - 0.01 - 0.04);
        Matrix m = 0.8 * psi * psi.adjoint() + 0.05 * Matrix::Identity(4, 4);
        QState rho(hermitian_part(m), bipartite(2, 2));
        double h = h_cond_vn(rho, Partition{{"A"}, {"B"}});
        std::vector<double> gaps;
        for (int n = 1; n <= std::min(n_max, 2); ++n) {
          QState rn = n == 1 ? rho : tensor_power(rho, n);
          Partition p = n == 1 ? Partition{{"A"}, {"B"}} : Partition{{"A1", "A2"}, {"B1", "B2"}};
          gaps.push_back(std::abs(hh(cfg, rn, p, eps) / n - h));
        }
        out.instance["instance"] = "two-qubit mixed state, conditional";
        out.instance["target"] = h;
        out.instance["gaps"] = gaps;
        out.record("quantum_conditional_trend", gaps.front() - gaps.back());
      }
    }
  });
}

}  // namespace entroscope::verify
