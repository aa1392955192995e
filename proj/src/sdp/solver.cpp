#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "entroscope/sdp.hpp"
#include "standard_form.hpp"

namespace entroscope::sdp {

namespace {

using detail::SparseBlock;
using detail::StandardForm;

template <typename T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <typename T>
using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;
template <typename T>
using Blocks = std::vector<Mat<T>>;

template <typename T>
T dot(const Blocks<T>& a, const Blocks<T>& b) {
  T acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i].cwiseProduct(b[i]).sum();
  return acc;
}

template <typename T>
T norm(const Blocks<T>& a) {
  using std::sqrt;
  return sqrt(dot(a, a));
}

template <typename T>
Mat<T> sym(const Mat<T>& m) {
  return T(0.5) * (m + m.transpose());
}

template <typename T>
Mat<T> dense(const SparseBlock& sb, Index dim) {
  Mat<T> m = Mat<T>::Zero(dim, dim);
  for (const auto& e : sb.entries) m(e.row, e.col) = T(e.value);
  return m;
}

template <typename T>
struct Iterate {
  Blocks<T> Z, S;
  Vec<T> y;
};

template <typename T>
class Ipm {
 public:
  struct Touch {
    int k;
    const SparseBlock* a;
  };

  Ipm(const StandardForm& sf, const std::vector<RealMatrix>& C, const RealVector& b) : sf_(sf) {
    for (const auto& c : C) C_.push_back(c.cast<T>());
    b_ = b.cast<T>();
    touch_.resize(sf.blocks.size());
    for (std::size_t k = 0; k < sf.constraints.size(); ++k)
      for (const auto& sb : sf.constraints[k]) touch_[sb.block].push_back({int(k), &sb});
    n_total_ = 0;
    for (const auto& rb : sf.blocks) n_total_ += T(rb.dim);
  }

  Index m() const { return Index(sf_.constraints.size()); }
  std::size_t nb() const { return sf_.blocks.size(); }
  const Blocks<T>& C() const { return C_; }
  const Vec<T>& b() const { return b_; }
  const std::vector<Touch>& touching(std::size_t block) const { return touch_[block]; }
  T n_total() const { return n_total_; }

  Vec<T> apply_A(const Blocks<T>& g) const {
    Vec<T> out = Vec<T>::Zero(m());
    for (std::size_t k = 0; k < sf_.constraints.size(); ++k) {
      T acc = 0;
      for (const auto& sb : sf_.constraints[k]) {
        const Mat<T>& mm = g[sb.block];
        for (const auto& e : sb.entries) acc += T(e.value) * mm(e.row, e.col);
      }
      out(Index(k)) = acc;
    }
    return out;
  }

  Blocks<T> apply_AT(const Vec<T>& y) const {
    Blocks<T> out;
    for (const auto& rb : sf_.blocks) out.push_back(Mat<T>::Zero(rb.dim, rb.dim));
    for (std::size_t k = 0; k < sf_.constraints.size(); ++k) {
      T yk = y(Index(k));
      if (yk == T(0)) continue;
      for (const auto& sb : sf_.constraints[k])
        for (const auto& e : sb.entries) out[sb.block](e.row, e.col) += yk * T(e.value);
    }
    return out;
  }

  // M_kl = Σ_blocks tr(A_k Z A_l S⁻¹)
  Mat<T> schur(const Blocks<T>& z, const Blocks<T>& sinv) const {
    Mat<T> M = Mat<T>::Zero(m(), m());
    for (std::size_t b = 0; b < nb(); ++b) {
      const auto& list = touch_[b];
      Index n = sf_.blocks[b].dim;
      for (std::size_t il = 0; il < list.size(); ++il) {
        const SparseBlock& al = *list[il].a;
        Mat<T> g;
        if (Index(al.entries.size()) <= 2 * n) {
          g = Mat<T>::Zero(n, n);
          for (const auto& e : al.entries) g.noalias() += T(e.value) * z[b].col(e.row) * sinv[b].row(e.col);
        } else {
          g = z[b] * dense<T>(al, n) * sinv[b];
        }
        // lists are sorted by constraint index, so this fills the lower triangle
        for (std::size_t ik = il; ik < list.size(); ++ik) {
          T acc = 0;
          for (const auto& e : list[ik].a->entries) acc += T(e.value) * g(e.col, e.row);
          M(list[ik].k, list[il].k) += acc;
        }
      }
    }
    for (Index c = 0; c < m(); ++c)
      for (Index r = c + 1; r < m(); ++r) M(c, r) = M(r, c);
    return M;
  }

  bool factor(Mat<T> M) {
    T diag = M.size() ? M.diagonal().cwiseAbs().maxCoeff() : T(1);
    if (!(diag > T(0))) diag = T(1);
    for (int attempt = 0; attempt < 6; ++attempt) {
      if (attempt > 0) M.diagonal().array() += T(std::pow(10.0, -14 + 2 * attempt)) * diag;
      llt_.compute(M);
      if (llt_.info() == Eigen::Success) return true;
    }
    return false;
  }

  struct Direction {
    Blocks<T> dz, ds;
    Vec<T> dy;
  };

  // HKM direction for complementarity right-hand side rc
  Direction direction(const Blocks<T>& z, const Blocks<T>& sinv, const Vec<T>& rp, const Blocks<T>& rd,
                      const Blocks<T>& rc) const {
    Blocks<T> t1(z.size()), t2(z.size());
    for (std::size_t b = 0; b < z.size(); ++b) {
      t1[b] = z[b] * rd[b] * sinv[b];
      t2[b] = rc[b] * sinv[b];
    }
    Vec<T> rhs = rp + apply_A(t1) - apply_A(t2);
    Direction d;
    d.dy = llt_.solve(rhs);
    Blocks<T> aty = apply_AT(d.dy);
    d.ds.resize(z.size());
    d.dz.resize(z.size());
    for (std::size_t b = 0; b < z.size(); ++b) {
      d.ds[b] = rd[b] - aty[b];
      d.dz[b] = sym<T>((rc[b] - z[b] * d.ds[b]) * sinv[b]);
    }
    return d;
  }

 private:
  const StandardForm& sf_;
  Blocks<T> C_;
  Vec<T> b_;
  std::vector<std::vector<Touch>> touch_;
  T n_total_;
  Eigen::LLT<Mat<T>> llt_;
};

// Largest t with Z + t·dZ ⪰ 0; 0 if Z itself is not positive definite.
template <typename T>
T max_step(const Blocks<T>& z, const Blocks<T>& dz) {
  T step = std::numeric_limits<T>::infinity();
  for (std::size_t b = 0; b < z.size(); ++b) {
    if (z[b].rows() == 1) {
      if (dz[b](0, 0) < T(0)) step = std::min(step, -z[b](0, 0) / dz[b](0, 0));
      continue;
    }
    Eigen::LLT<Mat<T>> llt(z[b]);
    if (llt.info() != Eigen::Success) return T(0);
    Mat<T> w = llt.matrixL().solve(dz[b]);
    w = llt.matrixL().solve(Mat<T>(w.transpose()));
    Eigen::SelfAdjointEigenSolver<Mat<T>> es(sym<T>(w), Eigen::EigenvaluesOnly);
    T lmin = es.eigenvalues()(0);
    if (lmin < T(0)) step = std::min(step, T(-1) / lmin);
  }
  return step;
}

template <typename T>
bool inverse_pd(const Mat<T>& m, Mat<T>& inv) {
  if (m.rows() == 1) {
    if (!(m(0, 0) > T(0))) return false;
    inv = Mat<T>::Constant(1, 1, T(1) / m(0, 0));
    return true;
  }
  Eigen::LLT<Mat<T>> llt(m);
  if (llt.info() != Eigen::Success) return false;
  inv = sym<T>(llt.solve(Mat<T>::Identity(m.rows(), m.cols())));
  return true;
}

// max_b ‖Z S − μI‖ / μ; this is what the slackness residuals see
template <typename T>
T product_centrality(const Blocks<T>& z, const Blocks<T>& s, T mu) {
  T worst = 0;
  for (std::size_t b = 0; b < z.size(); ++b) {
    Mat<T> d = z[b] * s[b];
    d.diagonal().array() -= mu;
    worst = std::max(worst, T(d.norm() / mu));
  }
  return worst;
}

template <typename T>
struct Residuals {
  Vec<T> rp;
  Blocks<T> rd;
  T mu;
};

template <typename T>
Residuals<T> residuals(const Ipm<T>& ipm, const Iterate<T>& it) {
  Residuals<T> r;
  r.rp = ipm.b() - ipm.apply_A(it.Z);
  Blocks<T> aty = ipm.apply_AT(it.y);
  r.rd.resize(ipm.nb());
  for (std::size_t b = 0; b < ipm.nb(); ++b) r.rd[b] = ipm.C()[b] - aty[b] - it.S[b];
  r.mu = dot(it.Z, it.S) / ipm.n_total();
  return r;
}

template <typename T>
void take_step(Iterate<T>& it, const typename Ipm<T>::Direction& d, T step_p, T step_d) {
  for (std::size_t b = 0; b < it.Z.size(); ++b) {
    it.Z[b] = sym<T>(it.Z[b] + step_p * d.dz[b]);
    it.S[b] = sym<T>(it.S[b] + step_d * d.ds[b]);
  }
  it.y += step_d * d.dy;
}

// Newton step towards the point of the central path with parameter target·μ.
template <typename T>
bool centering_step(Ipm<T>& ipm, Iterate<T>& it, T target) {
  Residuals<T> r = residuals(ipm, it);
  std::size_t nb = ipm.nb();
  Blocks<T> sinv(nb), rc(nb);
  for (std::size_t b = 0; b < nb; ++b)
    if (!inverse_pd(it.S[b], sinv[b])) return false;
  if (!ipm.factor(ipm.schur(it.Z, sinv))) return false;
  for (std::size_t b = 0; b < nb; ++b)
    rc[b] = target * r.mu * Mat<T>::Identity(it.Z[b].rows(), it.Z[b].cols()) - it.Z[b] * it.S[b];
  auto d = ipm.direction(it.Z, sinv, r.rp, r.rd, rc);
  T sp = std::min(T(1), T(0.99) * max_step(it.Z, d.dz));
  T sd = std::min(T(1), T(0.99) * max_step(it.S, d.ds));
  if (!(sp > T(0)) || !(sd > T(0))) return false;
  take_step(it, d, sp, sd);
  return true;
}

template <typename To, typename From>
Iterate<To> convert(const Iterate<From>& it) {
  Iterate<To> out;
  for (const auto& z : it.Z) out.Z.push_back(z.template cast<To>());
  for (const auto& s : it.S) out.S.push_back(s.template cast<To>());
  out.y = it.y.template cast<To>();
  return out;
}

double slackness(const SdpProblem& p, const SdpSolution& s) {
  ResidualReport r = verify_solution(p, s);
  return std::max(r.primal_slackness, r.dual_slackness);
}

}  // namespace

SdpSolution solve(const SdpProblem& p, const SolverOptions& opts) {
  p.validate();
  StandardForm sf = detail::build_standard_form(p);

  SdpSolution sol;
  sol.X = p.zero_inputs();
  sol.Y = p.zero_outputs();
  if (sf.trivially_infeasible) {
    sol.status = SolveStatus::Infeasible;
    return sol;
  }

  const std::size_t nb = sf.blocks.size();
  const Index m = Index(sf.constraints.size());

  // row normalization, then objective and right-hand side scaling
  RealVector row_scale = RealVector::Ones(m);
  for (Index k = 0; k < m; ++k) {
    double s = 0.0;
    for (const auto& sb : sf.constraints[std::size_t(k)])
      for (const auto& e : sb.entries) s += e.value * e.value;
    s = std::sqrt(s);
    if (s > 0.0) {
      row_scale(k) = s;
      for (auto& sb : sf.constraints[std::size_t(k)])
        for (auto& e : sb.entries) e.value /= s;
      sf.b(k) /= s;
    }
  }
  double c_norm_raw = 0.0;
  for (const auto& c : sf.C) c_norm_raw += c.squaredNorm();
  const double b_scale = std::max(1.0, sf.b.size() ? sf.b.norm() : 0.0);
  const double c_scale = std::max(1.0, std::sqrt(c_norm_raw));
  RealVector b = sf.b / b_scale;
  std::vector<RealMatrix> C = sf.C;
  for (auto& c : C) c /= c_scale;

  Ipm<double> ipm(sf, C, b);
  const double b_norm = b.norm();
  const double c_norm = norm(ipm.C());

  auto to_complex = [&](const Blocks<double>& Z, const RealVector& y) {
    for (std::size_t i = 0; i < p.input_dims.size(); ++i) {
      std::size_t bi = sf.input_block[i];
      sol.X[i] = detail::unembed(Z[bi], sf.blocks[bi].embedded) * b_scale;
    }
    for (auto& yb : sol.Y) yb.setZero();
    for (Index k = 0; k < m; ++k) {
      const auto& ref = sf.basis[std::size_t(k)];
      double yk = y(k) * c_scale / row_scale(k);
      sol.Y[ref.out] += yk * detail::basis_element(ref, p.outputs[ref.out].dim);
    }
    sol.alpha = inner(p.A, sol.X);
    sol.beta = inner(p.B, sol.Y);
    sol.gap = std::abs(sol.alpha - sol.beta);
  };

  // starting point: multiples of the identity sized to the data
  Iterate<double> it;
  it.Z.resize(nb);
  it.S.resize(nb);
  double z_scale0 = 0.0;
  for (std::size_t bi = 0; bi < nb; ++bi) {
    Index n = sf.blocks[bi].dim;
    double xi = std::max(10.0, std::sqrt(double(n)));
    double eta = std::max({10.0, std::sqrt(double(n)), C[bi].norm()});
    for (const auto& t : ipm.touching(bi)) {
      double an = dense<double>(*t.a, n).norm();
      xi = std::max(xi, double(n) * (1.0 + std::abs(b(t.k))) / (1.0 + an));
      eta = std::max(eta, an);
    }
    it.Z[bi] = xi * RealMatrix::Identity(n, n);
    it.S[bi] = eta * RealMatrix::Identity(n, n);
    z_scale0 = std::max(z_scale0, xi);
  }
  it.y = RealVector::Zero(m);

  SolveStatus status = SolveStatus::NumericalFailure;
  int iter = 0;
  int stalls = 0;
  for (; iter <= opts.max_iter; ++iter) {
    Residuals<double> r = residuals(ipm, it);
    double pobj = dot(ipm.C(), it.Z) * c_scale * b_scale;
    double dobj = b.dot(it.y) * c_scale * b_scale;
    double rel_gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj));
    double pinf = r.rp.norm() / (1.0 + b_norm);
    double dinf = norm(r.rd) / (1.0 + c_norm);
    if (rel_gap <= opts.gap_tol && pinf <= opts.feas_tol && dinf <= opts.feas_tol) {
      status = SolveStatus::Optimal;
      break;
    }
    if (iter == opts.max_iter) break;
    if (!std::isfinite(pobj) || !std::isfinite(dobj)) break;
    if (norm(it.Z) > 1e8 * z_scale0 * std::max(1.0, ipm.n_total()) || it.y.norm() > 1e10 * std::max(1.0, c_norm)) {
      status = SolveStatus::Infeasible;
      break;
    }

    Blocks<double> sinv(nb);
    bool ok = true;
    for (std::size_t bi = 0; bi < nb && ok; ++bi) ok = inverse_pd(it.S[bi], sinv[bi]);
    if (!ok || !ipm.factor(ipm.schur(it.Z, sinv))) break;

    // predictor
    Blocks<double> rc(nb);
    for (std::size_t bi = 0; bi < nb; ++bi) rc[bi] = -it.Z[bi] * it.S[bi];
    auto pred = ipm.direction(it.Z, sinv, r.rp, r.rd, rc);
    double ap = std::min(1.0, max_step(it.Z, pred.dz));
    double ad = std::min(1.0, max_step(it.S, pred.ds));
    Blocks<double> za(nb), sa(nb);
    for (std::size_t bi = 0; bi < nb; ++bi) {
      za[bi] = it.Z[bi] + ap * pred.dz[bi];
      sa[bi] = it.S[bi] + ad * pred.ds[bi];
    }
    double mu_aff = dot(za, sa) / ipm.n_total();
    double sigma = std::clamp(std::pow(mu_aff / r.mu, 3.0), 0.0, 1.0);

    // corrector
    for (std::size_t bi = 0; bi < nb; ++bi)
      rc[bi] = sigma * r.mu * RealMatrix::Identity(it.Z[bi].rows(), it.Z[bi].cols()) - it.Z[bi] * it.S[bi] -
               pred.dz[bi] * pred.ds[bi];
    auto corr = ipm.direction(it.Z, sinv, r.rp, r.rd, rc);

    double tau = 0.9 + 0.09 * std::min(ap, ad);
    double step_p = std::min(1.0, tau * max_step(it.Z, corr.dz));
    double step_d = std::min(1.0, tau * max_step(it.S, corr.ds));
    if (step_p < 1e-10 && step_d < 1e-10) {
      if (++stalls >= 3) break;
    } else {
      stalls = 0;
    }
    take_step(it, corr, step_p, step_d);
  }
  to_complex(it.Z, it.y);

  // extended-precision recentring
  if (status == SolveStatus::Optimal && slackness(p, sol) > opts.slack_tol) {
    using Long = long double;
    Ipm<Long> lipm(sf, C, b);
    Iterate<Long> lit = convert<Long>(it);
    SdpSolution best = sol;
    double best_slack = slackness(p, sol);
    Long prev_pc = std::numeric_limits<Long>::infinity();
    for (int step = 0; step < 40 && best_slack > opts.slack_tol; ++step) {
      Residuals<Long> r = residuals(lipm, lit);
      Long pc = product_centrality(lit.Z, lit.S, r.mu);
      // recentre until the product residual is small or stops improving, then shrink μ
      bool stalled = pc > Long(0.5) * prev_pc && pc < Long(100);
      Long target = pc < Long(0.05) || stalled ? Long(0.1) : Long(1);
      prev_pc = target < Long(1) ? std::numeric_limits<Long>::infinity() : pc;
      if (!centering_step(lipm, lit, target)) break;
      Iterate<double> cand = convert<double>(lit);
      to_complex(cand.Z, cand.y);
      double s = slackness(p, sol);
      if (s < best_slack) {
        best_slack = s;
        best = sol;
      }
    }
    sol = best;
  }

  sol.status = status;
  sol.iterations = iter;
  ResidualReport rep = verify_solution(p, sol);
  sol.primal_residual = rep.primal_feasibility;
  sol.dual_residual = rep.dual_feasibility;
  sol.slackness_residual = std::max(rep.primal_slackness, rep.dual_slackness);
  return sol;
}

}  // namespace entroscope::sdp
