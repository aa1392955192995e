#include <cmath>

#include "doctest.h"
#include "entroscope/quantum.hpp"
#include "entroscope/random.hpp"
#include "entroscope/sdp.hpp"

using namespace entroscope;
using namespace entroscope::sdp;

namespace {

Matrix scalar(double v) { return Matrix::Constant(1, 1, v); }

Matrix unit(Index n, Index i) {
  Matrix e = Matrix::Zero(n, 1);
  e(i, 0) = 1.0;
  return e;
}

Matrix random_hermitian(Index n, Rng& rng) {
  Matrix g = random_gaussian(n, n, rng);
  return 0.5 * (g + g.adjoint());
}

// min t  s.t.  t·I ≥ H
SdpProblem max_eigenvalue_program(const Matrix& h) {
  SdpProblem p;
  Index n = h.rows();
  p.add_input(1);
  p.A[0] = scalar(1.0);
  p.add_output(n, Relation::GreaterEqual, h);
  for (Index i = 0; i < n; ++i) p.add_term(0, 0, unit(n, i), unit(n, i));
  return p;
}

// min tr σ  s.t.  I_A ⊗ σ ≥ ρ_AB
SdpProblem guessing_program(const Matrix& rho, Index da, Index db) {
  SdpProblem p;
  p.add_input(db);
  p.A[0] = Matrix::Identity(db, db);
  p.add_output(da * db, Relation::GreaterEqual, rho);
  for (Index a = 0; a < da; ++a) {
    Matrix v = kron(unit(da, a), Matrix::Identity(db, db));
    p.add_term(0, 0, v, v);
  }
  return p;
}

}  // namespace

TEST_CASE("scalar program") {
  SdpProblem p;
  p.add_input(1);
  p.A[0] = scalar(1.0);
  p.add_output(1, Relation::GreaterEqual, scalar(0.3));
  p.add_term(0, 0, scalar(1.0), scalar(1.0));
  SdpSolution s = solve(p);
  REQUIRE(s.status == SolveStatus::Optimal);
  CHECK(s.alpha == doctest::Approx(0.3).epsilon(1e-7));
  CHECK(s.beta == doctest::Approx(0.3).epsilon(1e-7));
  CHECK(verify_solution(p, s).passed);
}

TEST_CASE("largest eigenvalue of complex Hermitian matrices") {
  Rng rng(21);
  for (Index n = 2; n <= 5; ++n) {
    Matrix h = random_hermitian(n, rng);
    SdpSolution s = solve(max_eigenvalue_program(h));
    REQUIRE(s.status == SolveStatus::Optimal);
    CHECK(std::abs(s.alpha - hermitian_eigenvalues(h).maxCoeff()) < 1e-6);
    CHECK(s.beta <= s.alpha + 1e-9);
  }
}

TEST_CASE("trace norm through an equality block") {
  Rng rng(4);
  Matrix h = random_hermitian(4, rng);
  SdpProblem p;
  p.add_input(4);
  p.add_input(4);
  p.A[0] = Matrix::Identity(4, 4);
  p.A[1] = Matrix::Identity(4, 4);
  p.add_output(4, Relation::Equal, h);
  p.add_term(0, 0, Matrix::Identity(4, 4), Matrix::Identity(4, 4));
  p.add_term(1, 0, cplx(0, 1) * Matrix::Identity(4, 4), cplx(0, 1) * -Matrix::Identity(4, 4).conjugate());
  // second term is X ↦ i·X·(−i)† = −X
  SdpSolution s = solve(p);
  REQUIRE(s.status == SolveStatus::Optimal);
  double oracle = hermitian_eigenvalues(h).cwiseAbs().sum();
  CHECK(std::abs(s.alpha - oracle) < 1e-6);
  ResidualReport r = verify_solution(p, s);
  CHECK(r.passed);
}

TEST_CASE("partial-trace-type constraints") {
  // maximally mixed A: value 1/|A|
  Rng rng(8);
  QState rb = random_state(3, 3, rng);
  Matrix rho = kron(Matrix::Identity(2, 2) / 2.0, rb.matrix());
  SdpSolution s = solve(guessing_program(rho, 2, 3));
  REQUIRE(s.status == SolveStatus::Optimal);
  CHECK(std::abs(s.alpha - 0.5) < 1e-6);

  // maximally entangled: value d
  Index d = 3;
  Vector phi = Vector::Zero(d * d);
  for (Index i = 0; i < d; ++i) phi(i * d + i) = 1.0 / std::sqrt(double(d));
  SdpSolution e = solve(guessing_program(phi * phi.adjoint(), d, d));
  REQUIRE(e.status == SolveStatus::Optimal);
  CHECK(std::abs(e.alpha - double(d)) < 1e-6);
  CHECK(verify_solution(guessing_program(phi * phi.adjoint(), d, d), e).passed);
}

TEST_CASE("random strictly feasible programs satisfy strong duality") {
  Rng rng(123);
  for (int t = 0; t < 10; ++t) {
    Index n = 2 + t % 3, m = 2 + (t / 3) % 2;
    SdpProblem p;
    p.add_input(n);
    Matrix g = random_gaussian(n, n, rng);
    p.A[0] = g * g.adjoint() + 0.1 * Matrix::Identity(n, n);
    p.add_output(m, Relation::GreaterEqual, random_hermitian(m, rng));
    QChannel ch = random_channel(n, m, 2, rng);
    for (const auto& k : ch.kraus()) p.add_term(0, 0, k, k);
    SdpSolution s = solve(p);
    REQUIRE(s.status == SolveStatus::Optimal);
    ResidualReport r = verify_solution(p, s);
    CHECK(r.passed);
    CHECK(s.beta <= s.alpha + 1e-8);
  }
}

TEST_CASE("adjoint identity") {
  Rng rng(77);
  SdpProblem p;
  p.add_input(3);
  p.add_input(2);
  p.add_output(2, Relation::GreaterEqual, Matrix::Zero(2, 2));
  p.add_output(4, Relation::Equal, Matrix::Zero(4, 4));
  p.add_term(0, 0, random_gaussian(2, 3, rng), random_gaussian(2, 3, rng));
  p.add_term(1, 1, random_gaussian(4, 2, rng), random_gaussian(4, 2, rng));
  p.add_term(0, 1, random_gaussian(4, 3, rng), random_gaussian(4, 3, rng));
  BlockMatrix x{random_gaussian(3, 3, rng), random_gaussian(2, 2, rng)};
  BlockMatrix y{random_gaussian(2, 2, rng), random_gaussian(4, 4, rng)};
  cplx lhs = 0.0, rhs = 0.0;
  BlockMatrix px = p.apply(x), py = adjoint(p)(y);
  for (int j = 0; j < 2; ++j) lhs += (y[j].adjoint() * px[j]).trace();
  for (int i = 0; i < 2; ++i) rhs += (py[i].adjoint() * x[i]).trace();
  CHECK(std::abs(lhs - rhs) < 1e-10);
}

TEST_CASE("infeasible programs") {
  SdpProblem p;
  p.add_input(1);
  p.A[0] = scalar(1.0);
  p.add_output(1, Relation::Equal, scalar(-1.0));
  p.add_term(0, 0, scalar(1.0), scalar(1.0));
  CHECK(solve(p).status == SolveStatus::Infeasible);

  SdpProblem q;
  q.add_input(1);
  q.A[0] = scalar(1.0);
  q.add_output(1, Relation::Equal, scalar(1.0));
  CHECK(solve(q).status == SolveStatus::Infeasible);
}

TEST_CASE("validation") {
  SdpProblem p;
  p.add_input(2);
  p.add_output(2, Relation::GreaterEqual, Matrix::Zero(2, 2));
  p.add_term(0, 0, Matrix::Identity(2, 2), cplx(0, 1) * Matrix::Identity(2, 2));
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  SdpProblem q;
  q.add_input(2);
  CHECK_THROWS_AS(q.add_output(2, Relation::Equal, Matrix::Zero(3, 3)), InvalidArgument);
}

TEST_CASE("corrupted solutions are detected") {
  Rng rng(2);
  Matrix h = random_hermitian(3, rng);
  SdpProblem p = max_eigenvalue_program(h);
  SdpSolution s = solve(p);
  REQUIRE(verify_solution(p, s).passed);
  SdpSolution bad = s;
  bad.X[0](0, 0) -= 0.01;
  CHECK_FALSE(verify_solution(p, bad).passed);
  bad = s;
  bad.Y[0] *= 1.1;
  CHECK_FALSE(verify_solution(p, bad).passed);
}
