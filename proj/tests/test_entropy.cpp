#include <cmath>

#include "doctest.h"
#include "entroscope/entropy.hpp"
#include "entroscope/random.hpp"

using namespace entroscope;

namespace {

// Vertex enumeration of min Σq_i s_i / ε s.t. Σq_i p_i ≥ ε, 0 ≤ q ≤ 1: an
// optimal vertex has q ∈ {0,1} except for at most one coordinate.
double np_bruteforce(const std::vector<double>& p, const std::vector<double>& s, double eps) {
  const int n = static_cast<int>(p.size());
  double best = HUGE_VAL;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    double ps = 0.0, ss = 0.0;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1u) ps += p[i], ss += s[i];
    if (ps >= eps) best = std::min(best, ss / eps);
    for (int j = 0; j < n; ++j) {
      if ((mask >> j & 1u) || p[j] <= 0.0) continue;
      double qj = (eps - ps) / p[j];
      if (qj >= 0.0 && qj <= 1.0) best = std::min(best, (ss + qj * s[j]) / eps);
    }
  }
  return -std::log2(best);
}

QState diag_state(const std::vector<double>& d) { return QState(HermitianOperator::diagonal(d), SystemLayout::single(static_cast<Index>(d.size()))); }

QState ket_state(const Vector& v) { return QState::pure(v, SystemLayout::single(v.size())); }

Vector basis(Index d, Index k) { return Vector::Unit(d, k); }

double trace_distance(const QState& a, const QState& b) { return 0.5 * trace_norm(a.matrix() - b.matrix()); }

void check_witnesses(const HypoTestResult& r, const Matrix& rho, const Matrix& sigma) {
  RealVector q = r.Q.eigenvalues();
  CHECK(q.minCoeff() >= -1e-8);
  CHECK(q.maxCoeff() <= 1.0 + 1e-8);
  CHECK((r.Q.matrix() * rho).trace().real() >= r.epsilon - 1e-8);
  CHECK(r.X.min_eigenvalue() >= -1e-8);
  RealVector gap = hermitian_eigenvalues(sigma + r.X.matrix() - r.mu * rho);
  CHECK(gap.minCoeff() >= -1e-8);
  CHECK(std::abs(r.primal - r.dual) <= 1e-6 * std::max(1.0, std::abs(r.primal)));
  CHECK(r.slackness.max() <= 1e-6);
}

const Partition kAB{{"A"}, {"B"}};

}  // namespace

TEST_CASE("d_hypo worked instances") {
  QState rho = diag_state({0.9, 0.1});
  QState sigma = diag_state({0.5, 0.5});
  HypoTestResult r = d_hypo(rho, sigma, 0.9);
  CHECK(r.value == doctest::Approx(std::log2(1.8)).epsilon(1e-12));
  CHECK(r.value == doctest::Approx(0.84800).epsilon(1e-5));
  CHECK((r.Q.matrix() - Matrix(HermitianOperator::diagonal({1.0, 0.0}).matrix())).norm() < 1e-12);

  HypoOptions quantum;
  quantum.classical_shortcut = false;
  quantum.spectral_shortcut = false;
  HypoTestResult s = d_hypo(rho, sigma, 0.9, quantum);
  CHECK(s.method == "sdp");
  CHECK(std::abs(s.value - std::log2(1.8)) < 1e-7);

  HypoTestResult one = d_hypo(ket_state(basis(2, 0)), HermitianOperator::identity(2) * 0.5, 1.0, quantum);
  CHECK(std::abs(one.value - 1.0) < 1e-7);

  Rng rng(3);
  QState r3 = random_state(3, 3, rng);
  CHECK(std::abs(d_hypo(r3, r3, 0.5).value) < 1e-7);
}

TEST_CASE("spectral path equals D_max and matches the SDP") {
  Rng rng(57);
  HypoOptions sdp_only;
  sdp_only.classical_shortcut = false;
  sdp_only.spectral_shortcut = false;
  int hits = 0;
  for (int k = 0; k < 20; ++k) {
    QState rho = random_state(3, 1 + k % 3, rng);
    QState sigma = random_state(3, 3, rng);
    HypoTestResult r = d_hypo(rho, sigma, 0.01);
    if (r.method != "spectral") continue;
    ++hits;
    CHECK(std::abs(r.value - d_max(rho, sigma.op()).bits) < 1e-9);
    CHECK(r.primal == doctest::Approx(r.dual).epsilon(1e-12));
    CHECK(r.slackness.stationarity < 1e-9);
    CHECK(r.slackness.trace < 1e-12);
    CHECK(r.Q.min_eigenvalue() > -1e-12);
    CHECK(r.Q.max_eigenvalue() < 1.0 + 1e-12);
    HypoTestResult s = d_hypo(rho, sigma, 0.01, sdp_only);
    CHECK(std::abs(r.value - s.value) < 1e-6);
  }
  CHECK(hits > 10);
}

TEST_CASE("spectral path covers small epsilon on pure states") {
  Rng rng(58);
  QState rho = random_state(SystemLayout({{"A", 2}, {"B", 3}}), 1, rng);
  HermitianOperator s = conditioning_operator(rho, kAB);
  for (double eps : {1e-4, 1e-5, 1e-8}) {
    HypoTestResult r = d_hypo(rho, s, eps);
    CHECK(r.method == "spectral");
    CHECK(std::abs(r.value - d_max(rho, s).bits) < 1e-9);
  }
  HypoTestResult big = d_hypo(rho, s, 0.9);
  CHECK(big.method != "spectral");
}

TEST_CASE("ill-conditioned sigma keeps a small relative gap") {
  Rng rng(59);
  Matrix u = random_unitary(6, rng);
  RealVector ev(6);
  ev << 2e-4, 5e-3, 0.056, 0.155, 0.35, 0.4338;
  HermitianOperator sigma(hermitian_part(u * ev.cast<cplx>().asDiagonal() * u.adjoint()));
  for (int k = 0; k < 5; ++k) {
    QState rho = random_state(6, 1, rng);
    const double dmax = d_max(rho, sigma).bits;
    for (double eps : {0.25, 0.3, 0.5, 0.75}) {
      HypoTestResult r = d_hypo(rho, sigma, eps);
      CHECK(r.value <= dmax + 1e-9);
      if (r.method == "sdp") CHECK(std::abs(r.primal - r.dual) <= 1e-6 * r.primal);
    }
  }
}

TEST_CASE("classical path agrees with vertex enumeration") {
  Rng rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  HypoOptions quantum;
  quantum.classical_shortcut = false;
  for (int t = 0; t < 20; ++t) {
    int n = 2 + t % 4;
    std::vector<double> p(n), s(n);
    for (int i = 0; i < n; ++i) p[i] = u(rng), s[i] = u(rng);
    if (t % 3 == 0) s[0] = 0.0;
    double sp = 0, ss = 0;
    for (int i = 0; i < n; ++i) sp += p[i], ss += s[i];
    for (int i = 0; i < n; ++i) p[i] /= sp, s[i] /= ss;
    for (double eps : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      double oracle = np_bruteforce(p, s, eps);
      RealVector pv = Eigen::Map<RealVector>(p.data(), n), sv = Eigen::Map<RealVector>(s.data(), n);
      ClassicalHypoResult c = d_hypo_classical(pv, sv, eps);
      if (std::isinf(oracle)) {
        CHECK(c.infinite);
        continue;
      }
      CHECK(c.value == doctest::Approx(oracle).epsilon(1e-12));
      CHECK(c.primal == doctest::Approx(c.dual).epsilon(1e-12));
      HypoTestResult q = d_hypo(diag_state(p), diag_state(s), eps, quantum);
      CHECK(std::abs(q.value - oracle) < 1e-6);
    }
  }
}

TEST_CASE("d_hypo witnesses satisfy complementary slackness") {
  Rng rng(21);
  for (int t = 0; t < 30; ++t) {
    Index d = 2 + t % 3;
    QState rho = random_state(d, 1 + t % d, rng);
    QState sigma = random_state(d, 1 + (t / 3) % d, rng);
    double eps = 0.05 + 0.9 * ((t * 7) % 10) / 10.0;
    HypoTestResult r = d_hypo(rho, sigma, eps);
    if (r.infinite) continue;
    check_witnesses(r, rho.matrix(), sigma.matrix());
    HypoSlackness again = hypo_slackness(r, rho.matrix(), sigma.matrix());
    CHECK(again.max() == doctest::Approx(r.slackness.max()));
  }
}

TEST_CASE("support violations give infinite values") {
  QState zero = ket_state(basis(2, 0));
  HermitianOperator one = HermitianOperator::projector(basis(2, 1));
  CHECK(d_hypo(zero, one, 0.5).infinite);
  CHECK(d_max(zero, one).kind == EntropyValue::Kind::PlusInfinity);
  CHECK(d_min(zero, one).kind == EntropyValue::Kind::PlusInfinity);
  CHECK(kl_div(zero, one).kind == EntropyValue::Kind::PlusInfinity);
  CHECK(renyi0(zero, one).kind == EntropyValue::Kind::PlusInfinity);

  Rng rng(4);
  Matrix u = random_unitary(3, rng);
  QState rho(u * HermitianOperator::diagonal({0.6, 0.4, 0.0}).matrix() * u.adjoint(), SystemLayout::single(3));
  HermitianOperator sigma(u * HermitianOperator::diagonal({0.0, 0.5, 0.5}).matrix() * u.adjoint());
  HypoTestResult r = d_hypo(rho, sigma, 0.5);
  CHECK(r.infinite);
  CHECK(r.method == "support");
  HypoTestResult f = d_hypo(rho, sigma, 0.7);
  CHECK_FALSE(f.infinite);
  CHECK(f.value > 1.0);
}

TEST_CASE("argument validation") {
  QState rho = diag_state({0.5, 0.5});
  CHECK_THROWS_AS(d_hypo(rho, rho, 0.0), InvalidArgument);
  CHECK_THROWS_AS(d_hypo(rho, rho, 1.5), InvalidArgument);
  CHECK_THROWS_AS(d_hypo(rho, rho, std::nan("")), InvalidArgument);
  CHECK_THROWS_AS(d_hypo(rho, HermitianOperator::identity(3), 0.5), InvalidArgument);
  CHECK_THROWS_AS(d_hypo(rho, HermitianOperator::diagonal({1.0, -0.2}), 0.5), InvalidArgument);
  QState sub = diag_state({0.3, 0.3});
  CHECK_THROWS_AS(d_hypo(sub, rho, 0.7), InvalidArgument);
  QState ab = QState::maximally_mixed(SystemLayout::from_dims({2, 2}));
  CHECK_THROWS_AS(h_hypo(ab, Partition{{"A"}, {}}, 0.5), InvalidArgument);
  CHECK_THROWS_AS(h_hypo(ab, Partition{{"A"}, {"A", "B"}}, 0.5), InvalidArgument);
  CHECK_THROWS_AS(h_hypo(ab, Partition{{"A"}, {"Z"}}, 0.5), InvalidArgument);
}

TEST_CASE("Renyi-0 at epsilon one") {
  CHECK(renyi0(ket_state(basis(2, 0)), HermitianOperator::identity(2) * 0.5).bits == doctest::Approx(1.0));
  Rng rng(8);
  QState full = random_state(3, 3, rng);
  CHECK(std::abs(renyi0(full, random_state(3, 2, rng).op()).bits) < 1e-10);
  for (int t = 0; t < 30; ++t) {
    Index d = 2 + t % 3;
    QState rho = random_state(d, 1 + t % d, rng);
    QState sigma = random_state(d, d, rng);
    HypoTestResult r = d_hypo(rho, sigma, 1.0);
    CHECK(std::abs(r.value - renyi0(rho, sigma.op()).bits) < 1e-5);
  }
}

TEST_CASE("trace-distance sandwich and positivity") {
  Rng rng(13);
  for (int t = 0; t < 30; ++t) {
    Index d = 2 + t % 3;
    QState rho = random_state(d, 1 + t % d, rng);
    QState sigma = random_state(d, d, rng);
    double delta = trace_distance(rho, sigma);
    for (double eps : {0.2, 0.5, 0.8}) {
      double v = d_hypo(rho, sigma, eps).value;
      CHECK(v >= -1e-8);
      if (eps > (1 - eps) * delta) CHECK(v >= std::log2(eps / (eps - (1 - eps) * delta)) - 1e-6);
      if (eps > delta) CHECK(v <= std::log2(eps / (eps - delta)) + 1e-6);
      if (eps > (1 - eps) * delta) CHECK((1 - eps) / eps * delta <= v + 1e-6);
    }
  }
}

TEST_CASE("Pinsker-like bound fails once (1-eps)delta exceeds eps") {
  QState rho = diag_state({1.0, 0.0});
  QState sigma = diag_state({0.1, 0.9});
  double v = d_hypo(rho, sigma, 0.2).value;
  CHECK(v == doctest::Approx(std::log2(10.0)));
  CHECK(0.8 / 0.2 * 0.9 > v + 0.1);
}

TEST_CASE("data processing") {
  Rng rng(17);
  for (int t = 0; t < 10; ++t) {
    QState rho = random_state(3, 2 + t % 2, rng);
    QState sigma = random_state(3, 3, rng);
    QChannel ch = t % 2 ? random_channel(3, 2, 3, rng) : random_trace_non_increasing_channel(3, 2, 3, rng);
    QState a = apply_channel(ch, rho, "A");
    HermitianOperator b(hermitian_part(ch.apply(sigma.matrix())));
    double eps = std::min(0.4, a.trace());
    CHECK(d_hypo(rho, sigma, eps).value >= d_hypo(a, b, eps).value - 1e-6);
  }
}

TEST_CASE("conditional hypothesis entropy examples and bounds") {
  Rng rng(19);
  QState rb = random_state(3, 3, rng);
  QState mixed = tensor_product(QState::maximally_mixed(SystemLayout::single(2, "A")), QState(rb.op(), SystemLayout::single(3, "B")));
  for (double eps : {0.1, 0.5, 1.0}) CHECK(std::abs(h_hypo(mixed, kAB, eps).bits - 1.0) < 1e-6);

  // X determined by B: orthogonal conditional states
  Matrix cq = Matrix::Zero(4, 4);
  cq(0, 0) = 0.3;
  cq(3, 3) = 0.7;
  QState determined(cq, SystemLayout({{"X", 2}, {"B", 2}}));
  CHECK(std::abs(h_hypo(determined, Partition{{"X"}, {"B"}}, 0.5).bits) < 1e-6);

  for (int t = 0; t < 10; ++t) {
    QState rho = random_state(SystemLayout::from_dims({2, 2}), 1 + t % 4, rng);
    double prev = -HUGE_VAL;
    for (double eps : {0.1, 0.3, 0.6, 0.9}) {
      double h = h_hypo(rho, kAB, eps).bits;
      CHECK(h >= -1.0 - 1e-6);
      CHECK(h <= 1.0 + 1e-6);
      CHECK(h >= prev - 1e-6);
      prev = h;
    }
    QState x = random_cq_state(2, 2, rng);
    double hx = h_hypo(x, Partition{{"X"}, {"B"}}, 0.4).bits;
    CHECK(hx >= -1e-6);
    CHECK(hx <= 1.0 + 1e-6);
  }
}

TEST_CASE("partition order is respected") {
  Rng rng(23);
  QState ra = random_state(2, 2, rng), rb = random_state(3, 3, rng);
  QState prod(kron(ra.matrix(), rb.matrix()), SystemLayout({{"A", 2}, {"B", 3}}));
  double h_b = -std::log2(rb.op().eigenvalues().maxCoeff());
  CHECK(std::abs(h_min(prod, Partition{{"B"}, {"A"}}, 0.0).bits - h_b) < 1e-6);
  HermitianOperator c = conditioning_operator(prod, Partition{{"B"}, {"A"}});
  CHECK((c.matrix() - kron(ra.matrix(), Matrix::Identity(3, 3))).norm() < 1e-12);
}

TEST_CASE("max and min divergences") {
  QState zero = ket_state(basis(2, 0));
  HermitianOperator half = HermitianOperator::identity(2) * 0.5;
  CHECK(d_max(zero, half).bits == doctest::Approx(1.0));
  CHECK(d_min(zero, half).bits == doctest::Approx(1.0));
  Rng rng(29);
  for (int t = 0; t < 20; ++t) {
    Index d = 2 + t % 3;
    QState rho = random_state(d, 1 + t % d, rng);
    QState sigma = random_state(d, d, rng);
    CHECK(std::abs(d_max(rho, rho.op()).bits) < 1e-8);
    CHECK(std::abs(d_min(rho, rho.op()).bits) < 1e-8);
    EntropyValue dm = d_max(rho, sigma.op());
    CHECK(std::abs(dm.bits - d_max_sdp(rho, sigma.op()).bits) < 1e-6);
    // 2^D σ − ρ is PSD and singular
    RealVector ev = hermitian_eigenvalues(std::exp2(dm.bits) * sigma.matrix() - rho.matrix());
    CHECK(ev.minCoeff() > -1e-9);
    CHECK(ev.minCoeff() < 1e-9);
    double f = fidelity_sdp(rho, sigma, {1e-10, 1e-10, 1e-9, 200});
    CHECK(std::abs(std::exp2(-d_min(rho, sigma.op()).bits) - f) < 1e-6);
    CHECK(d_min(rho, sigma.op()).bits <= dm.bits + 1e-8);
  }
}

TEST_CASE("fidelity SDP") {
  Vector plus = Vector::Constant(2, 1.0 / std::sqrt(2.0));
  QState zero = ket_state(basis(2, 0));
  CHECK(std::abs(fidelity_sdp(zero, zero) - 1.0) < 1e-6);
  CHECK(std::abs(fidelity_sdp(zero, ket_state(plus)) - 0.5) < 1e-6);
  Rng rng(31);
  for (int t = 0; t < 10; ++t) {
    QState a = random_subnormalized_state(SystemLayout::single(3), 1 + t % 3, 0.3, rng);
    QState b = random_subnormalized_state(SystemLayout::single(3), 1 + (t + 1) % 3, 0.3, rng);
    double direct = std::pow(root_fidelity(a.matrix(), b.matrix()), 2);
    CHECK(std::abs(fidelity_sdp(a, b, {1e-10, 1e-10, 1e-9, 200}) - direct) < 1e-6);
  }
}

TEST_CASE("trace-distance SDP") {
  Rng rng(41);
  for (int t = 0; t < 20; ++t) {
    SystemLayout l = SystemLayout::single(2 + t % 3);
    QState rho = random_subnormalized_state(l, 1 + t % 2, 0.3, rng);
    QState sigma = random_subnormalized_state(l, 2, 0.3, rng);
    // tr (ρ−σ)_+ from the spectrum
    RealVector ev = hermitian_eigenvalues(rho.matrix() - sigma.matrix());
    double pos = 0.0;
    for (double e : ev) pos += std::max(e, 0.0);
    CHECK(std::abs(trace_distance_sdp(rho, sigma) - pos) < 1e-7);
    double both = std::max(trace_distance_sdp(rho, sigma), trace_distance_sdp(sigma, rho));
    CHECK(std::abs(both - generalized_trace_distance(rho, sigma)) < 1e-7);
  }
}

TEST_CASE("smooth max divergence") {
  QState zero = ket_state(basis(2, 0));
  HermitianOperator half = HermitianOperator::identity(2) * 0.5;
  Rng rng(37);
  QState rho = random_state(3, 2, rng);
  QState sigma = random_state(3, 3, rng);
  CHECK(std::abs(d_max_smooth(rho, sigma.op(), 0.0).bits - d_max(rho, sigma.op()).bits) < 1e-6);
  double prev = HUGE_VAL;
  for (double eps : {0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3}) {
    double v = d_max_smooth(rho, sigma.op(), eps).bits;
    CHECK(v <= prev + 1e-6);
    prev = v;
    CHECK(d_max_smooth(zero, half, eps).bits <= 1.0 + 1e-6);
  }
  // shrinking |0⟩ to weight cos²θ reaches purified distance sin θ
  double theta = 0.3;
  HermitianOperator skew = HermitianOperator::diagonal({0.8, 0.2});
  double v = d_max_smooth(zero, skew, std::sin(theta)).bits;
  CHECK(std::abs(v - std::log2(std::pow(std::cos(theta), 2) / 0.8)) < 1e-6);
  QState sub = random_subnormalized_state(SystemLayout::single(3), 3, 0.4, rng);
  CHECK(d_max_smooth(sub, sigma.op(), 0.1).bits <= d_max(sub, sigma.op()).bits + 1e-7);
  CHECK(d_max_smooth(zero, half, 1.0).kind == EntropyValue::Kind::MinusInfinity);
}

TEST_CASE("smoothing witnesses") {
  Rng rng(41);
  for (int t = 0; t < 20; ++t) {
    Index d = 2 + t % 2;
    QState rho = random_state(d, 1 + t % d, rng);
    QState sigma = random_state(d, d, rng);
    double eps = 0.1 + 0.05 * (t % 5);

    HypoTestResult test = d_hypo(rho, sigma, eps);
    QState g = dmax_smoothing_witness(rho, sigma.op(), test);
    CHECK(hermitian_eigenvalues(sigma.matrix() - test.mu * g.matrix()).minCoeff() >= -1e-7);
    CHECK(d_max(g, sigma.op()).bits <= test.value + 1e-6);
    CHECK(purified_distance(rho, g) <= std::sqrt(2 * eps) + 1e-6);
    CHECK(d_max_smooth(rho, sigma.op(), std::min(1.0, std::sqrt(2 * eps))).bits <= test.value + 1e-6);
    CHECK(test.value <= d_max(rho, sigma.op()).bits + 1e-6);

    QState m = dmin_smoothing_witness(rho, sigma.op(), eps);
    double dh = d_hypo(rho, sigma, 1 - eps).value;
    CHECK(purified_distance(rho, m) <= std::sqrt(2 * eps) + 1e-6);
    CHECK(d_min(m, sigma.op()).bits >= dh + std::log2(1 / (1 - eps)) - 1e-6);
    CHECK(d_min(rho, sigma.op()).bits - 2 * std::log2(1 / eps) <= dh + 1e-6);
  }
  QState r = random_state(2, 2, rng);
  QState same = dmax_smoothing_witness(r, r.op(), 0.3);
  CHECK((same.matrix() - r.matrix()).norm() < 1e-6);
  QState flat = diag_state({0.5, 0.5});
  CHECK(purified_distance(flat, dmin_smoothing_witness(flat, flat.op(), 0.5)) <= 1.0);
  // Q → I as ε → 0
  QState near = dmin_smoothing_witness(r, HermitianOperator::identity(2) * 0.5, 1e-4);
  CHECK(purified_distance(r, near) <= std::sqrt(2e-4) + 1e-6);
  CHECK((near.matrix() - r.matrix()).norm() < 1e-3);
}

TEST_CASE("conditional min and max entropies") {
  Vector bell = Vector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  QState phi = QState::pure(bell, SystemLayout::from_dims({2, 2}));
  CHECK(std::abs(h_min(phi, kAB, 0.0).bits + 1.0) < 1e-6);
  CHECK(std::abs(h_max(phi, kAB, 0.0).bits + 1.0) < 1e-6);
  CHECK(std::abs(h_cond_vn(phi, kAB) + 1.0) < 1e-9);

  QState pi = QState::maximally_mixed(SystemLayout::single(2, "A"));
  CHECK(std::abs(h_min(pi, Partition{{"A"}, {}}, 0.0).bits - 1.0) < 1e-6);
  CHECK(std::abs(von_neumann(pi) - 1.0) < 1e-12);

  Rng rng(43);
  QState rb(random_state(2, 2, rng).op(), SystemLayout::single(2, "B"));
  QState mixed = tensor_product(pi, rb);
  CHECK(std::abs(h_min(mixed, kAB, 0.0).bits - 1.0) < 1e-6);
  CHECK(std::abs(h_max(mixed, kAB, rb).bits - 1.0) < 1e-6);
  CHECK(std::abs(h_max(mixed, kAB, 0.0).bits - 1.0) < 1e-6);

  QState product = QState::pure(basis(4, 0), SystemLayout::from_dims({2, 2}));
  CHECK(std::abs(h_max(product, kAB, 0.0).bits) < 1e-6);
  CHECK(std::abs(von_neumann(product)) < 1e-12);

  for (int t = 0; t < 6; ++t) {
    QState rho = random_state(SystemLayout::from_dims({2, 2}), 1 + t % 4, rng);
    QState rho_b = partial_trace(rho, {"B"});
    double fixed = h_min(rho, kAB, rho_b, 0.0).bits;
    double opt = h_min(rho, kAB, 0.0).bits;
    CHECK(opt >= fixed - 1e-6);
    CHECK(std::abs(fixed + d_max(rho, conditioning_operator(rho, kAB)).bits) < 1e-6);
    CHECK(h_min(rho, kAB, 0.1).bits >= opt - 1e-6);
    CHECK(h_max(rho, kAB, 0.1).bits <= h_max(rho, kAB, 0.0).bits + 1e-6);
    CHECK(h_max(rho, kAB, 0.0).bits >= h_max(rho, kAB, rho_b).bits - 1e-6);
    CHECK(opt <= h_cond_vn(rho, kAB) + 1e-6);
    CHECK(h_cond_vn(rho, kAB) <= h_max(rho, kAB, 0.0).bits + 1e-6);
  }
}

TEST_CASE("relative entropy") {
  QState p = diag_state({0.7, 0.3});
  HermitianOperator u = HermitianOperator::identity(2) * 0.5;
  double h2 = -0.3 * std::log2(0.3) - 0.7 * std::log2(0.7);
  CHECK(kl_div(p, u).bits == doctest::Approx(1.0 - h2).epsilon(1e-12));
  CHECK(kl_div(p, u).bits == doctest::Approx(0.11871).epsilon(1e-4));
  Rng rng(47);
  QState r = random_state(3, 3, rng);
  CHECK(std::abs(kl_div(r, r.op()).bits) < 1e-10);
  QState s = random_state(3, 3, rng);
  double kl = kl_div(r, s.op()).bits;
  CHECK(kl >= 0.0);
  CHECK(kl <= d_max(r, s.op()).bits + 1e-9);
  CHECK(kl >= d_min(r, s.op()).bits - 1e-9);
}

TEST_CASE("entropy values") {
  EntropyValue inf = EntropyValue::plus_infinity("x");
  CHECK((-inf).kind == EntropyValue::Kind::MinusInfinity);
  CHECK(std::isinf(inf.to_double()));
  CHECK(to_string(inf) == "+inf");
  CHECK(to_string(EntropyValue::finite(0.5)) == "0.5");
  CHECK_THROWS_AS(EntropyValue::finite(HUGE_VAL), InvalidArgument);
}
