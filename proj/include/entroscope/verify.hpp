#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "entroscope/io.hpp"
#include "entroscope/quantum.hpp"

namespace entroscope::verify {

struct CheckConfig {
  std::uint64_t seed = 42;
  int trials = 100;
  /// Subsystem dimensions sampled uniformly per factor.
  std::vector<Index> dims = {2, 3};
  std::vector<double> epsilons = {0.01, 0.05, 0.1, 0.25, 0.5, 0.75, 0.9};
  double tolerance = 1e-6;
  /// 0 means hardware concurrency; ENTROSCOPE_THREADS caps either choice.
  int threads = 0;
  /// Added to every D_H^ε evaluation (so H_H^ε moves by the negative) and to
  /// the trace-distance SDP value. Nonzero only for mutation testing.
  double mutation_offset = 0.0;
  /// Largest copy number for the AEP check, at most 8.
  int aep_n_max = 8;

  /// Throws InvalidArgument when an invariant fails.
  void validate() const;
};

struct SubcheckStats {
  int evaluated = 0;
  int violations = 0;
  int skipped = 0;
  double worst_margin = HUGE_VAL;
};

struct CheckReport {
  std::string check_name;
  int trials_run = 0;
  /// Trials whose smallest margin is below −tolerance, solver failures included.
  int violations = 0;
  /// Subcheck evaluations dropped because an ε argument left (0, 1] or a
  /// precondition of the statement failed.
  int skipped = 0;
  int solver_failures = 0;
  /// Most negative margin over all trials; HUGE_VAL when nothing finite was recorded.
  double worst_margin = HUGE_VAL;
  std::string worst_subcheck;
  /// Instance achieving the worst margin.
  io::json witness;
  double elapsed = 0.0;
  std::map<std::string, SubcheckStats> subchecks;
};

/// D_H^ε positivity and equality at ρ = σ, the trace-distance sandwich and
/// Pinsker-like bound, data processing.
CheckReport check_dh_core(const CheckConfig& cfg);
/// H_H^ε dimension and CQ bounds, conditional data processing,
/// monotonicity in ε and the ε → 0 limit.
CheckReport check_hh_core(const CheckConfig& cfg);
/// Relative and conditional AEP on fixed instances: gap_n = |(1/n)D_H^ε − D| must shrink
/// between n = 1 and n_max. Quantum instances stop at n = 3 (conditional at 2).
CheckReport check_aep(const CheckConfig& cfg, int n_max);
/// D_H^ε against smoothed D_max, D_min, H_min and H_max, with the smoothing
/// witnesses.
CheckReport check_smooth_relations(const CheckConfig& cfg);
/// Decomposition of hypothesis tests under a group twirl and the chain rule,
/// on tripartite instances.
CheckReport check_decomposition_chain(const CheckConfig& cfg);
/// Trace-distance SDP identity, D_H^ε under small perturbations, pinching
/// and square-root-map distance bounds, plus D ≤ P ≤ √(2D).
CheckReport check_appendix_lemmas(const CheckConfig& cfg);

/// dh_core, hh_core, aep, smooth_relations, decomposition_chain, appendix_lemmas.
const std::vector<std::string>& check_names();
/// Runs the named checks in the given order; throws InvalidArgument on an
/// unknown name.
std::vector<CheckReport> run_suite(const CheckConfig& cfg, const std::vector<std::string>& selection);
int total_violations(const std::vector<CheckReport>& reports);
int total_solver_failures(const std::vector<CheckReport>& reports);

io::json config_to_json(const CheckConfig& cfg);
io::json report_to_json(const CheckReport& r);

}  // namespace entroscope::verify
