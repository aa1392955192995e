#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <thread>

#include "harness.hpp"

namespace entroscope::verify {

namespace detail {

double Trial::min_margin() const {
  double m = HUGE_VAL;
  for (const auto& [name, v] : margins) m = std::min(m, v);
  return m;
}

namespace {

int thread_count(const CheckConfig& cfg, int trials) {
  int n = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("ENTROSCOPE_THREADS")) {
    int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, cap);
  }
  return std::clamp(n, 1, std::max(trials, 1));
}

io::json margin_value(double m) {
  if (std::isfinite(m)) return m;
  return m > 0 ? "+inf" : "-inf";
}

}  // namespace

CheckReport run_trials(const std::string& name, std::uint64_t check_id, const CheckConfig& cfg, int trials,
                       const TrialFn& fn) {
  cfg.validate();
  auto start = std::chrono::steady_clock::now();
  std::vector<Trial> results(static_cast<std::size_t>(std::max(trials, 0)));
  const std::uint64_t base = mix_seed(cfg.seed, check_id);

  std::atomic<int> next{0};
  auto worker = [&] {
    for (int t = next++; t < trials; t = next++) {
      Trial& out = results[static_cast<std::size_t>(t)];
      Rng rng(mix_seed(base, static_cast<std::uint64_t>(t)));
      try {
        fn(t, rng, out);
      } catch (const std::exception& e) {
        out.solver_failure = true;
        out.failure = e.what();
      }
    }
  };
  int n_threads = thread_count(cfg, trials);
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  CheckReport rep;
  rep.check_name = name;
  bool failure_witness = false;
  for (int t = 0; t < trials; ++t) {
    const Trial& tr = results[static_cast<std::size_t>(t)];
    ++rep.trials_run;
    for (const auto& [sub, m] : tr.margins) {
      SubcheckStats& s = rep.subchecks[sub];
      ++s.evaluated;
      s.worst_margin = std::min(s.worst_margin, m);
      if (m < -cfg.tolerance) ++s.violations;
    }
    for (const auto& sub : tr.skipped) {
      ++rep.subchecks[sub].skipped;
      ++rep.skipped;
    }
    double m = tr.min_margin();
    bool violated = tr.solver_failure || m < -cfg.tolerance;
    if (violated) ++rep.violations;
    if (tr.solver_failure) ++rep.solver_failures;

    // the first solver failure outranks any margin as the witness
    bool worse = m < rep.worst_margin;
    if (worse) {
      rep.worst_margin = m;
      for (const auto& [sub, v] : tr.margins)
        if (v == m) {
          if (!failure_witness) rep.worst_subcheck = sub;
          break;
        }
    }
    if ((worse && !failure_witness) || (tr.solver_failure && !failure_witness)) {
      io::json w = tr.instance;
      w["trial"] = t;
      io::json margins = io::json::object();
      for (const auto& [sub, v] : tr.margins) margins[sub] = margin_value(v);
      w["margins"] = margins;
      if (tr.solver_failure) {
        w["failure"] = tr.failure;
        rep.worst_subcheck = "solver_failure";
        failure_witness = true;
      }
      rep.witness = w;
    }
  }
  rep.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

double margin_le(double a, double b) {
  if (a == -HUGE_VAL || b == HUGE_VAL) return HUGE_VAL;
  if (a == HUGE_VAL || b == -HUGE_VAL) return -HUGE_VAL;
  return b - a;
}

double dh(const CheckConfig& cfg, const HypoTestResult& t) {
  if (t.infinite) return HUGE_VAL;
  return t.value + cfg.mutation_offset;
}

double dh(const CheckConfig& cfg, const QState& rho, const HermitianOperator& sigma, double eps) {
  return dh(cfg, d_hypo(rho, sigma, eps));
}

double hh(const CheckConfig& cfg, const QState& rho_ab, const Partition& p, double eps) {
  return -dh(cfg, rho_ab, conditioning_operator(rho_ab, p), eps);
}

Index pick_dim(const CheckConfig& cfg, Rng& rng) {
  std::uniform_int_distribution<std::size_t> u(0, cfg.dims.size() - 1);
  return cfg.dims[u(rng)];
}

double pick_eps(const CheckConfig& cfg, Rng& rng) {
  std::uniform_int_distribution<std::size_t> u(0, cfg.epsilons.size() - 1);
  return cfg.epsilons[u(rng)];
}

Index pick_rank(Index dim, Rng& rng) {
  std::uniform_int_distribution<Index> u(1, dim);
  return u(rng);
}

QState sample_state(const SystemLayout& layout, Rng& rng) {
  return random_state(layout, pick_rank(layout.total_dim(), rng), rng);
}

SystemLayout bipartite(Index da, Index db) { return SystemLayout({{"A", da}, {"B", db}}); }

Matrix random_contraction_psd(Index dim, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix v = random_unitary(dim, rng);
  RealVector d(dim);
  for (Index i = 0; i < dim; ++i) d(i) = u(rng);
  return hermitian_part(v * d.cast<cplx>().asDiagonal() * v.adjoint());
}

double to_bits(const EntropyValue& v) { return v.to_double(); }

}  // namespace detail

void CheckConfig::validate() const {
  if (trials < 0) throw InvalidArgument("trials must be >= 0");
  if (dims.empty()) throw InvalidArgument("dims must not be empty");
  for (Index d : dims)
    if (d < 2) throw InvalidArgument("dims must be >= 2");
  if (epsilons.empty()) throw InvalidArgument("epsilons must not be empty");
  for (double e : epsilons)
    if (!(e > 0.0 && e < 1.0)) throw InvalidArgument("epsilons must lie in (0,1)");
  if (!(tolerance >= 0.0)) throw InvalidArgument("tolerance must be >= 0");
  if (aep_n_max < 1 || aep_n_max > 8) throw InvalidArgument("aep n_max must lie in [1,8]");
  if (!std::isfinite(mutation_offset)) throw InvalidArgument("mutation offset must be finite");
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {"dh_core",          "hh_core",
                                                 "aep",              "smooth_relations",
                                                 "decomposition_chain", "appendix_lemmas"};
  return names;
}

std::vector<CheckReport> run_suite(const CheckConfig& cfg, const std::vector<std::string>& selection) {
  for (const auto& n : selection)
    if (std::find(check_names().begin(), check_names().end(), n) == check_names().end())
      throw InvalidArgument("unknown check: " + n);
  cfg.validate();
  std::vector<CheckReport> out;
  for (const auto& n : selection) {
    if (n == "dh_core") out.push_back(check_dh_core(cfg));
    else if (n == "hh_core") out.push_back(check_hh_core(cfg));
    else if (n == "aep") out.push_back(check_aep(cfg, cfg.aep_n_max));
    else if (n == "smooth_relations") out.push_back(check_smooth_relations(cfg));
    else if (n == "decomposition_chain") out.push_back(check_decomposition_chain(cfg));
    else out.push_back(check_appendix_lemmas(cfg));
  }
  return out;
}

int total_violations(const std::vector<CheckReport>& reports) {
  int n = 0;
  for (const auto& r : reports) n += r.violations;
  return n;
}

int total_solver_failures(const std::vector<CheckReport>& reports) {
  int n = 0;
  for (const auto& r : reports) n += r.solver_failures;
  return n;
}

io::json config_to_json(const CheckConfig& cfg) {
  io::json j;
  j["seed"] = cfg.seed;
  j["trials"] = cfg.trials;
  j["dims"] = cfg.dims;
  j["epsilons"] = cfg.epsilons;
  j["tolerance"] = cfg.tolerance;
  j["threads"] = cfg.threads;
  j["mutation_offset"] = cfg.mutation_offset;
  j["aep_n_max"] = cfg.aep_n_max;
  return j;
}

io::json report_to_json(const CheckReport& r) {
  auto num = [](double v) -> io::json {
    if (std::isfinite(v)) return v;
    return nullptr;
  };
  io::json j;
  j["check_name"] = r.check_name;
  j["trials_run"] = r.trials_run;
  j["violations"] = r.violations;
  j["skipped"] = r.skipped;
  j["solver_failures"] = r.solver_failures;
  j["worst_margin"] = num(r.worst_margin);
  j["worst_subcheck"] = r.worst_subcheck;
  j["elapsed"] = r.elapsed;
  io::json subs = io::json::object();
  for (const auto& [name, s] : r.subchecks) {
    io::json e;
    e["evaluated"] = s.evaluated;
    e["violations"] = s.violations;
    e["skipped"] = s.skipped;
    e["worst_margin"] = num(s.worst_margin);
    subs[name] = e;
  }
  j["subchecks"] = subs;
  j["witness"] = r.witness.is_null() ? io::json::object() : r.witness;
  return j;
}

}  // namespace entroscope::verify
