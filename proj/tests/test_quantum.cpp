#include <cmath>

#include "doctest.h"
#include "entroscope/quantum.hpp"
#include "entroscope/random.hpp"

using namespace entroscope;

namespace {

// tr_B by explicit index sums
Matrix trace_out_second(const Matrix& m, Index da, Index db) {
  Matrix out = Matrix::Zero(da, da);
  for (Index i = 0; i < da; ++i)
    for (Index j = 0; j < da; ++j)
      for (Index k = 0; k < db; ++k) out(i, j) += m(i * db + k, j * db + k);
  return out;
}

Matrix trace_out_first(const Matrix& m, Index da, Index db) {
  Matrix out = Matrix::Zero(db, db);
  for (Index i = 0; i < db; ++i)
    for (Index j = 0; j < db; ++j)
      for (Index k = 0; k < da; ++k) out(i, j) += m(k * db + i, k * db + j);
  return out;
}

}  // namespace

TEST_CASE("layouts") {
  SystemLayout l = SystemLayout::from_dims({2, 3, 4});
  CHECK(l.total_dim() == 24);
  CHECK(l.dim_of("B") == 3);
  CHECK(l.index_of("C") == 2);
  CHECK_THROWS_AS(l.index_of("Q"), InvalidArgument);
  CHECK(l.restricted_to({"C", "A"}).labels() == std::vector<std::string>{"A", "C"});
  CHECK_THROWS_AS(l.concat(SystemLayout::single(2, "B")), InvalidArgument);
  CHECK(l.with_dim("A", 5).total_dim() == 60);
}

TEST_CASE("operator validation") {
  Matrix m(2, 2);
  m << 1.0, cplx(0, 1), cplx(0, 1), 1.0;
  CHECK_THROWS_AS(HermitianOperator{m}, InvalidArgument);
  Matrix neg = Matrix::Identity(2, 2);
  neg(1, 1) = -0.1;
  CHECK_THROWS_AS(QState::from_matrix(neg), InvalidArgument);
  CHECK_THROWS_AS(QState::from_matrix(Matrix::Identity(2, 2)), InvalidArgument);
  CHECK_THROWS_AS(QState::from_matrix(Matrix::Zero(2, 2)), InvalidArgument);
  CHECK_NOTHROW(QState::from_matrix(0.3 * Matrix::Identity(2, 2)));
  CHECK_THROWS_AS(QState(HermitianOperator::identity(4) * 0.25, SystemLayout::from_dims({2, 3})), InvalidArgument);
}

TEST_CASE("partial trace against index sums") {
  Rng rng(7);
  for (int t = 0; t < 5; ++t) {
    QState rho = random_state(SystemLayout::from_dims({2, 3}), 3, rng);
    Matrix a = partial_trace(rho.matrix(), rho.layout(), {"A"});
    Matrix b = partial_trace(rho.matrix(), rho.layout(), {"B"});
    CHECK((a - trace_out_second(rho.matrix(), 2, 3)).norm() < 1e-12);
    CHECK((b - trace_out_first(rho.matrix(), 2, 3)).norm() < 1e-12);
  }
  // middle factor of three
  QState abc = random_state(SystemLayout::from_dims({2, 2, 3}), 4, rng);
  Matrix ac = partial_trace(abc.matrix(), abc.layout(), {"A", "C"});
  Matrix oracle = Matrix::Zero(6, 6);
  for (Index a1 = 0; a1 < 2; ++a1)
    for (Index c1 = 0; c1 < 3; ++c1)
      for (Index a2 = 0; a2 < 2; ++a2)
        for (Index c2 = 0; c2 < 3; ++c2)
          for (Index b = 0; b < 2; ++b) oracle(a1 * 3 + c1, a2 * 3 + c2) += abc.matrix()(a1 * 6 + b * 3 + c1, a2 * 6 + b * 3 + c2);
  CHECK((ac - oracle).norm() < 1e-12);
}

TEST_CASE("tensor products") {
  Rng rng(3);
  QState a = random_state(2, 2, rng);
  QState b = random_state(SystemLayout::single(3, "B"), 1, rng);
  QState ab = tensor_product(a, b);
  CHECK(ab.dim() == 6);
  CHECK(std::abs(ab.matrix()(1 * 3 + 2, 0 * 3 + 1) - a.matrix()(1, 0) * b.matrix()(2, 1)) < 1e-14);
  QState p = tensor_power(a, 3);
  CHECK(p.dim() == 8);
  CHECK(p.layout().labels() == std::vector<std::string>{"A1", "A2", "A3"});
}

TEST_CASE("purification marginals") {
  Rng rng(11);
  for (int rank = 1; rank <= 3; ++rank) {
    QState rho = random_subnormalized_state(SystemLayout::from_dims({3}), rank, 0.4, rng);
    QState normalized(HermitianOperator(rho.matrix() / rho.trace()), rho.layout());
    QState psi = purify(normalized);
    CHECK((partial_trace(psi.matrix(), psi.layout(), {"A"}) - normalized.matrix()).norm() < 1e-12);
    CHECK_THROWS_AS(purify(rho), InvalidArgument);
    QState minimal = purify_minimal(rho, "C");
    CHECK(minimal.layout().dim_of("C") == rank);
    CHECK((partial_trace(minimal.matrix(), minimal.layout(), {"A"}) - rho.matrix()).norm() < 1e-12);
    // rank one overall
    RealVector ev = minimal.op().eigenvalues();
    CHECK(ev(ev.size() - 2) < 1e-12);
  }
}

TEST_CASE("distances on commuting states") {
  std::vector<double> p{0.5, 0.3, 0.2}, q{0.1, 0.6, 0.2};
  QState rho = QState::from_matrix(HermitianOperator::diagonal(p).matrix());
  QState sigma = QState::from_matrix(HermitianOperator::diagonal(q).matrix());
  double bc = 0.0, tv = 0.0;
  for (int i = 0; i < 3; ++i) {
    bc += std::sqrt(p[i] * q[i]);
    tv += 0.5 * std::abs(p[i] - q[i]);
  }
  tv += 0.5 * std::abs(1.0 - 0.9);  // q is subnormalized
  CHECK(generalized_fidelity(rho, sigma) == doctest::Approx(bc).epsilon(1e-12));
  CHECK(generalized_trace_distance(rho, sigma) == doctest::Approx(tv).epsilon(1e-12));
  CHECK(purified_distance(rho, sigma) == doctest::Approx(std::sqrt(1 - bc * bc)).epsilon(1e-12));
}

TEST_CASE("distance properties on subnormalized pairs") {
  Rng rng(5);
  for (int t = 0; t < 30; ++t) {
    QState r = random_subnormalized_state(SystemLayout::single(3), 1 + t % 3, 0.2, rng);
    QState s = random_subnormalized_state(SystemLayout::single(3), 1 + (t / 3) % 3, 0.2, rng);
    double d = generalized_trace_distance(r, s), pd = purified_distance(r, s);
    CHECK(d <= pd + 1e-12);
    CHECK(pd <= std::sqrt(2 * d) + 1e-12);
    CHECK(purified_distance(r, r) < 1e-6);
    CHECK(std::abs(purified_distance(r, s) - purified_distance(s, r)) < 1e-10);
  }
}

TEST_CASE("channels") {
  Rng rng(9);
  QChannel tp = random_channel(2, 3, 2, rng);
  CHECK(tp.trace_preserving());
  CHECK(tp.trace_non_increasing());
  QChannel tni = random_trace_non_increasing_channel(3, 2, 3, rng);
  CHECK_FALSE(tni.trace_preserving());
  CHECK(tni.trace_non_increasing());
  QChannel su = random_subunital_channel(2, 3, 3, rng);
  CHECK(su.trace_preserving());
  CHECK(su.sub_unital());

  QState rho = random_state(SystemLayout::from_dims({2, 2}), 4, rng);
  QState out = apply_channel(tp, rho, "B");
  CHECK(out.layout().dim_of("B") == 3);
  CHECK(out.trace() == doctest::Approx(1.0).epsilon(1e-12));
  // acting on B leaves the A marginal alone
  CHECK((partial_trace(out.matrix(), out.layout(), {"A"}) - partial_trace(rho.matrix(), rho.layout(), {"A"})).norm() <
        1e-12);
  CHECK_THROWS_AS(apply_channel(random_channel(3, 3, 1, rng), rho, "A"), InvalidArgument);
}

TEST_CASE("Weyl twirl depolarizes the target") {
  Rng rng(13);
  QState rho = random_state(SystemLayout::from_dims({3, 2}), 6, rng);
  QState tw = weyl_heisenberg_twirl(rho, "A");
  Matrix expected = kron(Matrix::Identity(3, 3) / 3.0, partial_trace(rho.matrix(), rho.layout(), {"B"}));
  CHECK((tw.matrix() - expected).norm() < 1e-12);
  Matrix u = weyl_shift(3);
  CHECK(std::abs(u(1, 0) - 1.0) < 1e-15);
}

TEST_CASE("positive part projector") {
  HermitianOperator d = HermitianOperator::diagonal({0.5, -0.2, 0.0, 1e-18});
  Matrix p = positive_part_projector(d).matrix();
  CHECK(p.trace().real() == doctest::Approx(1.0));
  CHECK(std::abs(p(0, 0) - 1.0) < 1e-15);
}

TEST_CASE("seeded sampling is reproducible") {
  auto a = std::get<QState>(sample_instance(InstanceKind::State, {2, 2}, 0, 42));
  auto b = std::get<QState>(sample_instance(InstanceKind::State, {2, 2}, 0, 42));
  CHECK((a.matrix() - b.matrix()).norm() == 0.0);
  auto c = std::get<QState>(sample_instance(InstanceKind::State, {2, 2}, 0, 43));
  CHECK((a.matrix() - c.matrix()).norm() > 0.0);
  auto cq = std::get<QState>(sample_instance(InstanceKind::CqState, {2, 3}, 0, 1));
  CHECK(cq.layout().labels() == std::vector<std::string>{"X", "B"});
}

TEST_CASE("system permutation") {
  Rng rng(53);
  QState rho = random_state(SystemLayout::from_dims({2, 3, 2}), 4, rng);
  QState p = permute_systems(rho, {"C", "A", "B"});
  CHECK(p.layout().labels() == std::vector<std::string>{"C", "A", "B"});
  for (Index a = 0; a < 2; ++a)
    for (Index b = 0; b < 3; ++b)
      for (Index c = 0; c < 2; ++c)
        for (Index a2 = 0; a2 < 2; ++a2)
          for (Index b2 = 0; b2 < 3; ++b2)
            for (Index c2 = 0; c2 < 2; ++c2)
              CHECK(std::abs(p.matrix()(c * 6 + a * 3 + b, c2 * 6 + a2 * 3 + b2) -
                             rho.matrix()(a * 6 + b * 2 + c, a2 * 6 + b2 * 2 + c2)) < 1e-15);
  QState back = permute_systems(p, {"A", "B", "C"});
  CHECK((back.matrix() - rho.matrix()).norm() < 1e-15);
  CHECK((partial_trace(p, {"A"}).matrix() - partial_trace(rho, {"A"}).matrix()).norm() < 1e-12);
  CHECK_THROWS_AS(permute_systems(rho, {"A", "B"}), InvalidArgument);
  CHECK_THROWS_AS(permute_systems(rho, {"A", "A", "B"}), InvalidArgument);
}
