#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "entroscope/entropy.hpp"
#include "entroscope/io.hpp"
#include "entroscope/random.hpp"
#include "entroscope/verify.hpp"

using namespace entroscope;
using io::json;

namespace {

enum Exit { kOk = 0, kViolations = 1, kUsage = 2, kSolver = 3 };

struct UsageError : InvalidArgument {
  using InvalidArgument::InvalidArgument;
};

struct Options {
  std::string quantity;
  double epsilon = std::nan("");
  std::string state;
  std::string sigma;
  std::string partition;
  std::uint64_t seed = 42;
  int trials = 100;
  std::string dims;
  std::string epsilons;
  double tolerance = 1e-6;
  std::vector<std::string> checks;
  bool all = false;
  std::string out;
  std::string format = "json";
  int threads = 0;
  double mutation_offset = 0.0;
  std::string kind;
  int rank = 0;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

std::vector<Index> parse_dims(const std::string& s) {
  std::vector<Index> dims;
  for (const auto& p : split(s, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(p, &used);
    } catch (const std::exception&) {
      throw UsageError("--dims: not an integer: '" + p + "'");
    }
    if (used != p.size()) throw UsageError("--dims: not an integer: '" + p + "'");
    if (v < 1) throw UsageError("--dims: dimensions must be positive");
    dims.push_back(static_cast<Index>(v));
  }
  if (dims.empty()) throw UsageError("--dims: empty list");
  return dims;
}

std::vector<double> parse_reals(const std::string& s, const std::string& flag) {
  std::vector<double> out;
  for (const auto& p : split(s, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(p, &used);
    } catch (const std::exception&) {
      throw UsageError(flag + ": not a number: '" + p + "'");
    }
    if (used != p.size()) throw UsageError(flag + ": not a number: '" + p + "'");
    out.push_back(v);
  }
  return out;
}

// "A:0;B:1,2" names subsystems by position in the state's layout.
Partition parse_partition(const std::string& text, const SystemLayout& layout) {
  if (text.empty()) throw UsageError("--partition is required for this quantity");
  std::map<std::string, std::vector<std::string>> groups;
  const auto labels = layout.labels();
  for (const auto& part : split(text, ';')) {
    auto colon = part.find(':');
    if (colon == std::string::npos) throw UsageError("--partition: expected NAME:i,j in '" + part + "'");
    std::string name = part.substr(0, colon);
    if (name != "A" && name != "B") throw UsageError("--partition: group must be A or B, got '" + name + "'");
    for (const auto& idx : split(part.substr(colon + 1), ',')) {
      std::size_t k = 0;
      try {
        k = std::stoul(idx);
      } catch (const std::exception&) {
        throw UsageError("--partition: bad index '" + idx + "'");
      }
      if (k >= labels.size()) throw UsageError("--partition: index " + idx + " out of range");
      groups[name].push_back(labels[k]);
    }
  }
  return Partition{groups["A"], groups["B"]};
}

QState load_state(const std::string& path, const std::string& flag) {
  if (path.empty()) throw UsageError(flag + " is required for this quantity");
  return io::state_from_json(io::parse_file(path));
}

json number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

json entropy_value(const EntropyValue& v) {
  json j;
  j["value_bits"] = number(v.to_double());
  j["value"] = to_string(v);
  return j;
}

json hypo_summary(const HypoTestResult& r) {
  json w;
  w["method"] = r.method;
  w["infinite"] = r.infinite;
  w["mu"] = r.mu;
  w["primal"] = number(r.primal);
  w["dual"] = number(r.dual);
  RealVector q = r.Q.eigenvalues();
  w["Q_eigenvalues"] = std::vector<double>(q.begin(), q.end());
  w["X_trace"] = r.X.matrix().trace().real();
  json d;
  d["iterations"] = r.iterations;
  d["stationarity"] = r.slackness.stationarity;
  d["trace"] = r.slackness.trace;
  d["support"] = r.slackness.support;
  d["commutator"] = r.slackness.commutator;
  json j;
  j["witness"] = w;
  j["diagnostics"] = d;
  return j;
}

double require_eps(const Options& o, bool allow_zero) {
  if (std::isnan(o.epsilon)) throw UsageError("--epsilon is required for this quantity");
  if (allow_zero ? !(o.epsilon >= 0.0 && o.epsilon < 1.0) : !(o.epsilon > 0.0 && o.epsilon <= 1.0))
    throw UsageError(allow_zero ? "--epsilon must lie in [0,1)" : "--epsilon must lie in (0,1]");
  return o.epsilon;
}

const std::vector<std::string>& quantities() {
  static const std::vector<std::string> q = {
      "von_neumann", "h_cond_vn",     "kl",          "renyi0",           "d_max",
      "d_min",       "d_hypo",        "h_hypo",      "d_max_smooth",     "h_min",
      "h_max",       "trace_distance", "purified_distance", "fidelity"};
  return q;
}

json compute(const Options& o) {
  json r;
  r["quantity"] = o.quantity;
  QState rho = load_state(o.state, "--state");
  auto sigma = [&] { return load_state(o.sigma, "--sigma"); };
  const std::string& q = o.quantity;

  if (q == "von_neumann") {
    r["value_bits"] = von_neumann(rho);
  } else if (q == "h_cond_vn") {
    r["value_bits"] = h_cond_vn(rho, parse_partition(o.partition, rho.layout()));
  } else if (q == "kl") {
    r.update(entropy_value(kl_div(rho, sigma().op())));
  } else if (q == "renyi0") {
    r.update(entropy_value(renyi0(rho, sigma().op())));
  } else if (q == "d_max") {
    r.update(entropy_value(d_max(rho, sigma().op())));
  } else if (q == "d_min") {
    r.update(entropy_value(d_min(rho, sigma().op())));
  } else if (q == "d_hypo") {
    const double eps = require_eps(o, false);
    r["epsilon"] = eps;
    HypoTestResult t = d_hypo(rho, sigma().op(), eps);
    r["value_bits"] = number(t.value);
    r["value"] = t.infinite ? "+inf" : std::to_string(t.value);
    r.update(hypo_summary(t));
  } else if (q == "h_hypo") {
    const double eps = require_eps(o, false);
    r["epsilon"] = eps;
    HypoTestResult t = h_hypo_test(rho, parse_partition(o.partition, rho.layout()), eps);
    r["value_bits"] = number(-t.value);
    r["value"] = t.infinite ? "-inf" : std::to_string(-t.value);
    r.update(hypo_summary(t));
  } else if (q == "d_max_smooth") {
    const double eps = require_eps(o, true);
    r["epsilon"] = eps;
    r.update(entropy_value(d_max_smooth(rho, sigma().op(), eps)));
  } else if (q == "h_min") {
    const double eps = require_eps(o, true);
    r["epsilon"] = eps;
    r.update(entropy_value(h_min(rho, parse_partition(o.partition, rho.layout()), eps)));
  } else if (q == "h_max") {
    const double eps = require_eps(o, true);
    r["epsilon"] = eps;
    r.update(entropy_value(h_max(rho, parse_partition(o.partition, rho.layout()), eps)));
  } else if (q == "trace_distance") {
    r["value"] = generalized_trace_distance(rho, sigma());
  } else if (q == "purified_distance") {
    r["value"] = purified_distance(rho, sigma());
  } else if (q == "fidelity") {
    r["value"] = generalized_fidelity(rho, sigma());
  } else {
    throw UsageError("--quantity: unknown quantity '" + q + "'");
  }
  return r;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string csv_number(const json& v) {
  if (v.is_null()) return "";
  if (v.is_number_float()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
    return buf;
  }
  return v.is_string() ? csv_escape(v.get<std::string>()) : v.dump();
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty() || o.out == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    io::write_file(o.out, text.back() == '\n' ? text : text + "\n");
  }
}

int cmd_compute(const Options& o) {
  json report;
  report["version"] = io::kVersion;
  report["command"] = "compute";
  json cfg;
  cfg["quantity"] = o.quantity;
  cfg["epsilon"] = number(o.epsilon);
  cfg["state"] = o.state;
  cfg["sigma"] = o.sigma;
  cfg["partition"] = o.partition;
  report["config"] = cfg;
  report.update(compute(o));
  if (o.format == "csv") {
    std::string text = "quantity,epsilon,value_bits,value\n";
    text += csv_escape(o.quantity) + "," + csv_number(report.value("epsilon", json())) + "," +
            csv_number(report.value("value_bits", report.value("value", json()))) + "," +
            csv_number(report.value("value", json())) + "\n";
    emit(o, text);
  } else {
    emit(o, io::dump(report));
  }
  return kOk;
}

int cmd_verify(const Options& o) {
  verify::CheckConfig cfg;
  cfg.seed = o.seed;
  cfg.trials = o.trials;
  if (!o.dims.empty()) cfg.dims = parse_dims(o.dims);
  if (!o.epsilons.empty()) cfg.epsilons = parse_reals(o.epsilons, "--epsilons");
  cfg.tolerance = o.tolerance;
  cfg.threads = o.threads;
  cfg.mutation_offset = o.mutation_offset;
  cfg.validate();

  std::vector<std::string> selection = o.all ? verify::check_names() : o.checks;
  if (selection.empty()) throw UsageError("give --check NAME or --all");
  auto reports = verify::run_suite(cfg, selection);

  const int violations = verify::total_violations(reports);
  const int failures = verify::total_solver_failures(reports);
  if (o.format == "csv") {
    std::string text = "check_name,trials_run,violations,skipped,solver_failures,worst_margin,worst_subcheck,elapsed\n";
    for (const auto& r : reports) {
      json j = verify::report_to_json(r);
      text += csv_escape(r.check_name) + "," + std::to_string(r.trials_run) + "," + std::to_string(r.violations) + "," +
              std::to_string(r.skipped) + "," + std::to_string(r.solver_failures) + "," +
              csv_number(j["worst_margin"]) + "," + csv_escape(r.worst_subcheck) + "," + csv_number(j["elapsed"]) +
              "\n";
    }
    emit(o, text);
  } else {
    json report;
    report["version"] = io::kVersion;
    report["command"] = "verify";
    report["config"] = verify::config_to_json(cfg);
    report["seed"] = cfg.seed;
    report["checks"] = selection;
    report["violations"] = violations;
    report["solver_failures"] = failures;
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(verify::report_to_json(r));
    report["reports"] = arr;
    emit(o, io::dump(report));
  }
  if (failures > 0) return kSolver;
  return violations > 0 ? kViolations : kOk;
}

int cmd_gen(const Options& o) {
  static const std::map<std::string, InstanceKind> kinds = {
      {"state", InstanceKind::State}, {"pure", InstanceKind::Pure}, {"cq", InstanceKind::CqState}, {"channel", InstanceKind::Channel}};
  auto it = kinds.find(o.kind);
  if (it == kinds.end()) throw UsageError("gen: kind must be state, pure, cq or channel");
  if (o.format != "json") throw UsageError("gen writes JSON only");
  if (o.dims.empty()) throw UsageError("--dims is required");
  std::vector<Index> dims = parse_dims(o.dims);
  if (o.rank < 0) throw UsageError("--rank must be >= 0");
  auto inst = sample_instance(it->second, dims, o.rank, o.seed);
  json j;
  j["version"] = io::kVersion;
  j["kind"] = o.kind;
  j["seed"] = o.seed;
  if (auto* s = std::get_if<QState>(&inst)) j.update(io::state_to_json(*s));
  else j.update(io::channel_to_json(std::get<QChannel>(inst)));
  emit(o, io::dump(j));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"One-shot entropy calculator and verification harness"};
  app.set_version_flag("--version", std::string(io::kVersion));
  app.require_subcommand(1);
  Options o;

  auto common_out = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "Output path (default stdout)");
    sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };

  std::string quantity_list;
  for (const auto& q : quantities()) quantity_list += (quantity_list.empty() ? "" : ", ") + q;
  CLI::App* compute_cmd = app.add_subcommand("compute", "Evaluate one quantity on state files");
  compute_cmd->add_option("--quantity", o.quantity, quantity_list)->required();
  compute_cmd->add_option("--epsilon", o.epsilon, "Smoothing or test parameter");
  compute_cmd->add_option("--state", o.state, "State file (rho)")->required();
  compute_cmd->add_option("--sigma", o.sigma, "Second operator file");
  compute_cmd->add_option("--partition", o.partition, "e.g. \"A:0;B:1\" (subsystem positions)");
  common_out(compute_cmd);

  CLI::App* verify_cmd = app.add_subcommand("verify", "Run randomized checks");
  verify_cmd->add_option("--check", o.checks, "Check name (repeatable)");
  verify_cmd->add_flag("--all", o.all, "Run every check");
  verify_cmd->add_option("--seed", o.seed, "Master seed");
  verify_cmd->add_option("--trials", o.trials, "Trials per check")->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--dims", o.dims, "Comma-separated subsystem dimensions");
  verify_cmd->add_option("--epsilons", o.epsilons, "Comma-separated epsilon grid");
  verify_cmd->add_option("--tolerance", o.tolerance, "Violation tolerance")->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--threads", o.threads, "Worker threads (0 = hardware)");
  verify_cmd->add_option("--mutation-offset", o.mutation_offset, "Bits added to every D_H evaluation");
  common_out(verify_cmd);

  CLI::App* gen_cmd = app.add_subcommand("gen", "Write a seeded random instance");
  gen_cmd->add_option("kind", o.kind, "state, pure, cq or channel")->required();
  gen_cmd->add_option("--dims", o.dims, "Subsystem dims; dim_in,dim_out for channels; |X|,|B| for cq")->required();
  gen_cmd->add_option("--rank,--kraus", o.rank, "Rank or Kraus count (0 = full)");
  gen_cmd->add_option("--seed", o.seed, "Seed");
  common_out(gen_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*compute_cmd) return cmd_compute(o);
    if (*verify_cmd) return cmd_verify(o);
    return cmd_gen(o);
  } catch (const io::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kSolver;
  }
}
