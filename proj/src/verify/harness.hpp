#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "entroscope/entropy.hpp"
#include "entroscope/random.hpp"
#include "entroscope/verify.hpp"

namespace entroscope::verify::detail {

/// Outcome of one trial: named margins (≥ 0 means the statement holds) and
/// the instance that produced them.
struct Trial {
  std::vector<std::pair<std::string, double>> margins;
  std::vector<std::string> skipped;
  io::json instance = io::json::object();
  bool solver_failure = false;
  std::string failure;

  void record(const std::string& name, double margin) { margins.emplace_back(name, margin); }
  void skip(const std::string& name) { skipped.push_back(name); }
  double min_margin() const;
};

using TrialFn = std::function<void(int trial, Rng& rng, Trial& out)>;

/// Runs `trials` trials (possibly in parallel) with sub-seeds derived from
/// (cfg.seed, check_id, trial) and aggregates them in trial order.
CheckReport run_trials(const std::string& name, std::uint64_t check_id, const CheckConfig& cfg, int trials,
                       const TrialFn& fn);

/// b − a for the statement a ≤ b, with ±∞ handled: +∞ when the statement
/// holds by infinity, −∞ when it fails by infinity.
double margin_le(double a, double b);

/// D_H^ε plus the mutation offset; +HUGE_VAL when infinite.
double dh(const CheckConfig& cfg, const QState& rho, const HermitianOperator& sigma, double eps);
double dh(const CheckConfig& cfg, const HypoTestResult& t);
/// H_H^ε(A|B) = −D_H^ε(ρ_AB‖I_A⊗ρ_B) with the mutated D_H; −HUGE_VAL when infinite.
double hh(const CheckConfig& cfg, const QState& rho_ab, const Partition& p, double eps);

Index pick_dim(const CheckConfig& cfg, Rng& rng);
double pick_eps(const CheckConfig& cfg, Rng& rng);
/// Rank uniform in {1, …, dim}.
Index pick_rank(Index dim, Rng& rng);
QState sample_state(const SystemLayout& layout, Rng& rng);
SystemLayout bipartite(Index da, Index db);
/// Random operator with 0 ≤ Π ≤ I.
Matrix random_contraction_psd(Index dim, Rng& rng);

double to_bits(const EntropyValue& v);

}  // namespace entroscope::verify::detail
