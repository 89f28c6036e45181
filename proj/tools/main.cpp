#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "duelknap/errors.hpp"
#include "duelknap/generators.hpp"
#include "duelknap/harness.hpp"

namespace dk = duelknap;
using nlohmann::json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitRuntime = 4;

struct InstanceFlags {
  std::string instance;  // builtin name or JSON path
  std::string csv;       // car dataset
  int K = 6;
  double epsilon = 0.05;
  std::string variant = "general";
  int which = 1;
  std::optional<long long> T;
  std::optional<double> B;
  std::optional<double> sigma;
};

void add_instance_flags(CLI::App* cmd, InstanceFlags& f, bool required) {
  auto* opt = cmd->add_option(
      "--instance", f.instance,
      "builtin (synthetic-a|b|c, car, condorcet-lb, borda-lb) or instance JSON path");
  if (required) opt->required();
  cmd->add_option("--csv", f.csv, "pairwise-count CSV for the car instance");
  cmd->add_option("--K", f.K, "arm count for condorcet-lb");
  cmd->add_option("--epsilon", f.epsilon, "gap parameter for the lower-bound families");
  cmd->add_option("--variant", f.variant,
                  "condorcet-lb: general|total-order|total-order-prime|sst; "
                  "borda-lb: zero-probe|eps-probe");
  cmd->add_option("--which", f.which, "member index of the condorcet-lb family");
  cmd->add_option("--T", f.T, "horizon override");
  cmd->add_option("--B", f.B, "budget override");
  cmd->add_option("--sigma", f.sigma, "consumption noise override");
}

dk::InstanceSpec resolve_instance(const InstanceFlags& f) {
  dk::InstanceSpec inst;
  if (f.instance.rfind("synthetic-", 0) == 0 && f.instance.size() == 11) {
    inst = dk::synthetic_instance(f.instance.back());
  } else if (f.instance == "car" || f.instance.rfind("car-", 0) == 0) {
    if (f.csv.empty()) throw dk::ConfigError("car instance needs --csv");
    const char c = f.instance == "car" ? 'a' : f.instance.back();
    inst = dk::car_instance(f.csv, c);
  } else if (f.instance == "condorcet-lb") {
    dk::CondorcetLbVariant v;
    if (f.variant == "general")
      v = dk::CondorcetLbVariant::general;
    else if (f.variant == "total-order")
      v = dk::CondorcetLbVariant::total_order;
    else if (f.variant == "total-order-prime")
      v = dk::CondorcetLbVariant::total_order_prime;
    else if (f.variant == "sst")
      v = dk::CondorcetLbVariant::sst;
    else
      throw dk::ConfigError("unknown condorcet-lb variant: " + f.variant);
    inst = dk::condorcet_lb_family(f.K, f.epsilon, v, f.which);
  } else if (f.instance == "borda-lb") {
    dk::BordaLbVariant v;
    if (f.variant == "zero-probe" || f.variant == "general")
      v = dk::BordaLbVariant::zero_probe_cost;
    else if (f.variant == "eps-probe")
      v = dk::BordaLbVariant::eps_probe_cost;
    else
      throw dk::ConfigError("unknown borda-lb variant: " + f.variant);
    inst = dk::borda_lb_instance(f.epsilon, v);
  } else if (std::filesystem::exists(f.instance)) {
    inst = dk::load_instance(f.instance);
  } else {
    throw dk::ConfigError("unknown instance: " + f.instance);
  }
  if (f.T) inst.T = *f.T;
  if (f.B) inst.B = *f.B;
  if (f.sigma) inst.noise_sigma = *f.sigma;
  inst.check();
  return inst;
}

struct PolicyFlags {
  std::string policy = "vigilant";
  std::optional<double> z;
  std::optional<double> eta, gamma, eta_dual;
  std::string dual_input = "observed";
};

void add_policy_flags(CLI::App* cmd, PolicyFlags& f) {
  cmd->add_option("--policy", f.policy, "vigilant|dexp3|dts|static-lp")
      ->default_val("vigilant");
  cmd->add_option("--z", f.z, "Lagrangian scale Z for both sides");
  cmd->add_option("--eta", f.eta, "primal learning rate override");
  cmd->add_option("--gamma", f.gamma, "exploration floor override");
  cmd->add_option("--eta-dual", f.eta_dual, "dual step size override");
  cmd->add_option("--dual-input", f.dual_input, "observed|estimated")
      ->default_val("observed");
}

dk::PolicyConfig resolve_policy(const PolicyFlags& f) {
  dk::PolicyConfig cfg;
  cfg.name = f.policy;
  cfg.Z_x = cfg.Z_y = f.z;
  cfg.eta_x = cfg.eta_y = f.eta;
  cfg.gamma_x = cfg.gamma_y = f.gamma;
  cfg.eta_dual = f.eta_dual;
  if (f.dual_input == "observed")
    cfg.dual_input = dk::DualInput::observed;
  else if (f.dual_input == "estimated")
    cfg.dual_input = dk::DualInput::estimated;
  else
    throw dk::ConfigError("unknown dual input: " + f.dual_input);
  return cfg;
}

dk::ScoreKind parse_score(const std::string& s) {
  if (s == "borda") return dk::ScoreKind::borda;
  if (s == "shifted-borda") return dk::ScoreKind::shifted_borda;
  if (s == "condorcet") return dk::ScoreKind::condorcet;
  throw dk::ConfigError("unknown score kind: " + s);
}

std::vector<uint64_t> resolve_seeds(const std::vector<uint64_t>& seeds, int num_seeds,
                                    uint64_t seed_base) {
  if (!seeds.empty()) return seeds;
  if (num_seeds < 1) throw dk::ConfigError("need at least one seed");
  std::vector<uint64_t> out;
  for (int i = 0; i < num_seeds; ++i) out.push_back(seed_base + i);
  return out;
}

json benchmark_json(const dk::BenchmarkSolution& sol, const char* label) {
  json j;
  j["kind"] = label;
  j["per_round_value"] = sol.per_round_value;
  j["opt_total"] = sol.opt_total;
  j["pi_x"] = sol.policy.pi_x;
  j["pi_y"] = sol.policy.pi_y;
  return j;
}

void write_or_print(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw dk::IoError("cannot write " + out_path);
  out << j.dump(2) << "\n";
}

int cmd_gen_instance(const InstanceFlags& f, const std::string& out_path) {
  const auto inst = resolve_instance(f);
  if (out_path.empty()) {
    json j;
    j["name"] = inst.name;
    j["K"] = inst.K();
    j["T"] = inst.T;
    j["B"] = inst.B;
    std::cout << j.dump(2) << "\n";
  } else {
    dk::save_instance(inst, out_path);
  }
  return 0;
}

int cmd_solve_benchmark(const InstanceFlags& f, const std::string& kind,
                        const std::string& out_path) {
  const auto inst = resolve_instance(f);
  json j;
  if (kind == "borda") {
    j = benchmark_json(dk::solve_borda_lp(inst), "borda");
  } else if (kind == "shifted-borda") {
    j = benchmark_json(dk::solve_shifted_borda_lp(inst), "shifted-borda");
  } else if (kind == "condorcet") {
    j = benchmark_json(dk::solve_condorcet_lp(inst), "condorcet");
  } else if (kind == "separated") {
    const auto [sx, sy] = dk::solve_separated_lps(inst);
    j["kind"] = "separated";
    j["x"] = benchmark_json(sx, "separated-x");
    j["y"] = benchmark_json(sy, "separated-y");
    j["opt_total"] = sx.opt_total + sy.opt_total;
  } else if (kind == "all") {
    j["borda"] = benchmark_json(dk::solve_borda_lp(inst), "borda");
    j["shifted_borda"] = benchmark_json(dk::solve_shifted_borda_lp(inst), "shifted-borda");
    const auto [sx, sy] = dk::solve_separated_lps(inst);
    j["separated_x"] = benchmark_json(sx, "separated-x");
    j["separated_y"] = benchmark_json(sy, "separated-y");
  } else {
    throw dk::ConfigError("unknown benchmark kind: " + kind);
  }
  write_or_print(j, out_path);
  return 0;
}

dk::ExperimentResult run_one(const dk::InstanceSpec& inst, const dk::PolicyConfig& pc,
                             const std::vector<uint64_t>& seeds, dk::ScoreKind score,
                             int threads) {
  dk::ExperimentConfig cfg;
  cfg.instance = inst;
  cfg.policy = pc;
  cfg.seeds = seeds;
  cfg.score_kind = score;
  cfg.threads = threads;
  return dk::run_experiment(cfg);
}

int cmd_run(const InstanceFlags& f, const std::vector<PolicyFlags>& policies,
            const std::vector<uint64_t>& seeds_flag, int num_seeds, uint64_t seed_base,
            const std::string& score, const std::string& out_dir, int threads) {
  const auto inst = resolve_instance(f);
  const auto seeds = resolve_seeds(seeds_flag, num_seeds, seed_base);
  const auto kind = parse_score(score);

  dk::ResultsTable table;
  for (const auto& pf : policies)
    table.runs.push_back(run_one(inst, resolve_policy(pf), seeds, kind, threads));

  dk::BenchmarkSolution bench;
  switch (kind) {
    case dk::ScoreKind::borda:
      bench = dk::solve_borda_lp(inst);
      break;
    case dk::ScoreKind::shifted_borda:
      bench = dk::solve_shifted_borda_lp(inst);
      break;
    case dk::ScoreKind::condorcet:
      bench = dk::solve_condorcet_lp(inst);
      break;
  }

  json summary;
  summary["instance"] = inst.name;
  summary["T"] = inst.T;
  summary["B"] = inst.B;
  summary["score"] = score;
  summary["opt_total"] = bench.opt_total;
  for (const auto& run : table.runs) {
    const auto reg = dk::compute_regret(run, bench);
    json p;
    p["policy"] = run.policy;
    p["mean_regret"] = reg.mean;
    p["std_regret"] = reg.stddev;
    p["stderr_regret"] = reg.stderr_mean;
    double mean_tau = 0.0;
    for (const auto& tr : run.trials) mean_tau += static_cast<double>(tr.tau);
    p["mean_tau"] = mean_tau / run.trials.size();
    summary["policies"].push_back(p);
  }

  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    const auto base = std::filesystem::path(out_dir);
    dk::emit_csv(table, (base / "results.csv").string());
    dk::emit_plot(table, (base / "curves.svg").string());
    summary["results_csv"] = (base / "results.csv").string();
    summary["curves_svg"] = (base / "curves.svg").string();
    std::ofstream out(base / "summary.json");
    out << summary.dump(2) << "\n";
  }
  std::cout << summary.dump(2) << "\n";
  return 0;
}

int cmd_sweep(const InstanceFlags& f, const PolicyFlags& pf,
              const std::vector<long long>& horizons, double budget_frac,
              const std::vector<uint64_t>& seeds_flag, int num_seeds, uint64_t seed_base,
              const std::string& score, const std::string& out_path, int threads) {
  if (horizons.empty()) throw dk::ConfigError("sweep needs at least one --Ts value");
  const auto seeds = resolve_seeds(seeds_flag, num_seeds, seed_base);
  const auto kind = parse_score(score);

  json rows = json::array();
  std::vector<double> log_t, log_reg;
  for (long long t : horizons) {
    InstanceFlags g = f;
    g.T = t;
    if (!f.B) g.B = budget_frac * static_cast<double>(t);
    const auto inst = resolve_instance(g);
    dk::BenchmarkSolution bench;
    switch (kind) {
      case dk::ScoreKind::borda:
        bench = dk::solve_borda_lp(inst);
        break;
      case dk::ScoreKind::shifted_borda:
        bench = dk::solve_shifted_borda_lp(inst);
        break;
      case dk::ScoreKind::condorcet:
        bench = dk::solve_condorcet_lp(inst);
        break;
    }
    auto run = run_one(inst, resolve_policy(pf), seeds, kind, threads);
    const auto reg = dk::compute_regret(run, bench);
    json r;
    r["T"] = t;
    r["B"] = inst.B;
    r["opt_total"] = bench.opt_total;
    r["mean_regret"] = reg.mean;
    r["std_regret"] = reg.stddev;
    rows.push_back(r);
    if (reg.mean > 0.0) {
      log_t.push_back(std::log(static_cast<double>(t)));
      log_reg.push_back(std::log(reg.mean));
    }
  }

  json out;
  out["policy"] = pf.policy;
  out["score"] = score;
  out["rows"] = rows;
  if (log_t.size() >= 2) {
    // least squares slope of log regret against log T
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < log_t.size(); ++i) {
      mx += log_t[i];
      my += log_reg[i];
    }
    mx /= log_t.size();
    my /= log_t.size();
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < log_t.size(); ++i) {
      num += (log_t[i] - mx) * (log_reg[i] - my);
      den += (log_t[i] - mx) * (log_t[i] - mx);
    }
    out["loglog_slope"] = num / den;
  }
  write_or_print(out, out_path);
  return 0;
}

int cmd_plot(const std::string& in_path, const std::string& out_path) {
  const auto curves = dk::read_csv_curves(in_path);
  dk::render_curves_svg(curves, out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dueling bandits with knapsack constraints: benchmarks and experiments"};
  app.require_subcommand(1);

  InstanceFlags gen_f;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen-instance", "construct an instance and save it as JSON");
  add_instance_flags(gen, gen_f, true);
  gen->add_option("--out", gen_out, "output JSON path (default: print a short summary)");

  InstanceFlags bench_f;
  std::string bench_kind = "borda", bench_out;
  auto* bench = app.add_subcommand("solve-benchmark", "solve the static LP benchmarks");
  add_instance_flags(bench, bench_f, true);
  bench->add_option("--kind", bench_kind, "borda|shifted-borda|condorcet|separated|all")
      ->default_val("borda");
  bench->add_option("--out", bench_out, "write the JSON report here instead of stdout");

  InstanceFlags run_f;
  std::vector<std::string> run_policies{"vigilant"};
  PolicyFlags run_pf;
  std::vector<uint64_t> run_seeds;
  int run_num_seeds = 10;
  uint64_t run_seed_base = 1;
  std::string run_score = "borda", run_out;
  int run_threads = 0;
  auto* run = app.add_subcommand("run", "run policies on an instance and report regret");
  add_instance_flags(run, run_f, true);
  run->add_option("--policy", run_policies,
                  "one or more of vigilant|dexp3|dts|static-lp")
      ->default_val(std::vector<std::string>{"vigilant"});
  run->add_option("--z", run_pf.z, "Lagrangian scale Z for both sides");
  run->add_option("--eta", run_pf.eta, "primal learning rate override");
  run->add_option("--gamma", run_pf.gamma, "exploration floor override");
  run->add_option("--eta-dual", run_pf.eta_dual, "dual step size override");
  run->add_option("--dual-input", run_pf.dual_input, "observed|estimated")
      ->default_val("observed");
  run->add_option("--seeds", run_seeds, "explicit seed list");
  run->add_option("--num-seeds", run_num_seeds, "seed count when --seeds is absent")
      ->default_val(10);
  run->add_option("--seed-base", run_seed_base, "first seed when --seeds is absent")
      ->default_val(1);
  run->add_option("--score", run_score, "borda|shifted-borda|condorcet")
      ->default_val("borda");
  run->add_option("--out", run_out, "output directory for results.csv and curves.svg");
  run->add_option("--threads", run_threads, "worker threads, 0 = all cores")
      ->default_val(0);

  InstanceFlags sweep_f;
  PolicyFlags sweep_pf;
  std::vector<long long> sweep_ts;
  double sweep_bfrac = 0.5;
  std::vector<uint64_t> sweep_seeds;
  int sweep_num_seeds = 10;
  uint64_t sweep_seed_base = 1;
  std::string sweep_score = "borda", sweep_out;
  int sweep_threads = 0;
  auto* sweep = app.add_subcommand("sweep", "regret of one policy across horizons");
  add_instance_flags(sweep, sweep_f, true);
  sweep->add_option("--Ts", sweep_ts, "horizons to sweep")->required();
  sweep->add_option("--B-frac", sweep_bfrac, "budget as a fraction of T when --B is absent")
      ->default_val(0.5);
  sweep->add_option("--policy", sweep_pf.policy, "vigilant|dexp3|dts|static-lp")
      ->default_val("vigilant");
  sweep->add_option("--z", sweep_pf.z, "Lagrangian scale Z for both sides");
  sweep->add_option("--dual-input", sweep_pf.dual_input, "observed|estimated")
      ->default_val("observed");
  sweep->add_option("--seeds", sweep_seeds, "explicit seed list");
  sweep->add_option("--num-seeds", sweep_num_seeds, "seed count when --seeds is absent")
      ->default_val(10);
  sweep->add_option("--seed-base", sweep_seed_base, "first seed when --seeds is absent")
      ->default_val(1);
  sweep->add_option("--score", sweep_score, "borda|shifted-borda|condorcet")
      ->default_val("borda");
  sweep->add_option("--out", sweep_out, "write the JSON report here instead of stdout");
  sweep->add_option("--threads", sweep_threads, "worker threads, 0 = all cores")
      ->default_val(0);

  std::string plot_in, plot_out;
  auto* plot = app.add_subcommand("plot", "render an SVG from a results CSV");
  plot->add_option("--in", plot_in, "results.csv produced by run")->required();
  plot->add_option("--out", plot_out, "output SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitValidation;
  }

  try {
    if (gen->parsed()) return cmd_gen_instance(gen_f, gen_out);
    if (bench->parsed()) return cmd_solve_benchmark(bench_f, bench_kind, bench_out);
    if (run->parsed()) {
      std::vector<PolicyFlags> pfs;
      for (const auto& name : run_policies) {
        PolicyFlags pf = run_pf;
        pf.policy = name;
        pfs.push_back(pf);
      }
      return cmd_run(run_f, pfs, run_seeds, run_num_seeds, run_seed_base, run_score,
                     run_out, run_threads);
    }
    if (sweep->parsed())
      return cmd_sweep(sweep_f, sweep_pf, sweep_ts, sweep_bfrac, sweep_seeds,
                       sweep_num_seeds, sweep_seed_base, sweep_score, sweep_out,
                       sweep_threads);
    if (plot->parsed()) return cmd_plot(plot_in, plot_out);
  } catch (const dk::Infeasible& e) {
    std::cerr << "infeasible benchmark: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const dk::Error& e) {
    const bool validation =
        dynamic_cast<const dk::ValidationFailure*>(&e) ||
        dynamic_cast<const dk::ConfigError*>(&e) ||
        dynamic_cast<const dk::OutOfRange*>(&e) ||
        dynamic_cast<const dk::EpsilonTooLarge*>(&e) ||
        dynamic_cast<const dk::BadCsv*>(&e) ||
        dynamic_cast<const dk::InconsistentPairCount*>(&e) ||
        dynamic_cast<const dk::KMismatch*>(&e) ||
        dynamic_cast<const dk::SchemaMismatch*>(&e) ||
        dynamic_cast<const dk::NotSkewComplement*>(&e) ||
        dynamic_cast<const dk::BadDiagonal*>(&e) ||
        dynamic_cast<const dk::GammaOutOfRange*>(&e);
    if (validation) {
      std::cerr << "validation error: " << e.what() << "\n";
      return kExitValidation;
    }
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
