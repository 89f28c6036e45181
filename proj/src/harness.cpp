#include "duelknap/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <map>
#include <sstream>
#include <thread>

#include "duelknap/errors.hpp"

namespace duelknap {

double TrialTrace::final_reward(ScoreKind kind) const {
  switch (kind) {
    case ScoreKind::borda:
      return final_borda;
    case ScoreKind::shifted_borda:
      return final_shifted;
    case ScoreKind::condorcet:
      if (!has_condorcet) throw NoCondorcetWinner("trace has no Condorcet reward");
      return final_condorcet;
  }
  return 0.0;
}

std::unique_ptr<Policy> make_policy(const PolicyConfig& cfg, const InstanceSpec& inst,
                                    ScoreKind score_kind) {
  if (cfg.name == "vigilant" || cfg.name == "dexp3") {
    double zx = 0.0, zy = 0.0;
    if (cfg.name == "vigilant") {
      if (cfg.Z_x && cfg.Z_y) {
        zx = *cfg.Z_x;
        zy = *cfg.Z_y;
      } else if (inst.B > 0.0) {
        const auto [sx, sy] = solve_separated_lps(inst);
        zx = cfg.Z_x.value_or(sx.opt_total / inst.B + 1.0);
        zy = cfg.Z_y.value_or(sy.opt_total / inst.B + 1.0);
      } else {
        zx = cfg.Z_x.value_or(1.0);
        zy = cfg.Z_y.value_or(1.0);
      }
    }
    VigilantParams p = vigilant_init(inst.K(), inst.d, inst.T, inst.B, zx, zy);
    if (cfg.eta_x) p.eta_x = *cfg.eta_x;
    if (cfg.eta_y) p.eta_y = *cfg.eta_y;
    if (cfg.gamma_x) p.gamma_x = *cfg.gamma_x;
    if (cfg.gamma_y) p.gamma_y = *cfg.gamma_y;
    if (cfg.eta_dual) p.eta_dual = *cfg.eta_dual;
    p.dual_input = cfg.dual_input;
    return std::make_unique<VigilantPolicy>(p);
  }
  if (cfg.name == "dts") return std::make_unique<DuelingThompson>(inst.K());
  if (cfg.name == "static-lp") {
    if (cfg.static_solution) return std::make_unique<StaticLpPolicy>(*cfg.static_solution);
    BenchmarkSolution sol;
    switch (score_kind) {
      case ScoreKind::borda:
        sol = solve_borda_lp(inst);
        break;
      case ScoreKind::shifted_borda:
        sol = solve_shifted_borda_lp(inst);
        break;
      case ScoreKind::condorcet:
        sol = solve_condorcet_lp(inst);
        break;
    }
    return std::make_unique<StaticLpPolicy>(sol);
  }
  throw ConfigError("unknown policy: " + cfg.name);
}

TrialTrace run_trial(const InstanceSpec& inst, const PolicyConfig& policy,
                     ScoreKind score_kind, uint64_t seed, bool keep_rounds) {
  const auto sb = borda_scores(inst.P);
  const auto ss = shifted_borda_scores(inst.P);
  std::optional<ScoreVector> sc;
  if (condorcet_winner(inst.P)) sc = condorcet_scores(inst.P);

  Environment env(inst, seed);
  auto pol = make_policy(policy, inst, score_kind);

  TrialTrace tr;
  tr.seed = seed;
  tr.d = inst.d;
  tr.has_condorcet = sc.has_value();
  tr.final_consumed.assign(inst.d, 0.0);
  if (keep_rounds) {
    const size_t cap = static_cast<size_t>(inst.T);
    tr.x.reserve(cap);
    tr.y.reserve(cap);
    tr.o.reserve(cap);
    tr.cum_borda.reserve(cap);
    tr.cum_shifted.reserve(cap);
  }

  while (!env.stopped()) {
    const auto [x, y] = pol->select(env.rng());
    const auto fb = env.step(x, y);
    pol->update(x, y, fb.o, fb.u_obs, fb.v_obs);

    tr.final_borda += sb.values[x] + sb.values[y];
    tr.final_shifted += ss.values[x] + ss.values[y];
    if (sc) tr.final_condorcet += sc->values[x] + sc->values[y];
    for (int r = 0; r < inst.d; ++r)
      tr.final_consumed[r] += fb.u_obs[r] + fb.v_obs[r];

    if (keep_rounds) {
      tr.x.push_back(x);
      tr.y.push_back(y);
      tr.o.push_back(static_cast<uint8_t>(fb.o));
      tr.u_obs.insert(tr.u_obs.end(), fb.u_obs.begin(), fb.u_obs.end());
      tr.v_obs.insert(tr.v_obs.end(), fb.v_obs.begin(), fb.v_obs.end());
      tr.cum_borda.push_back(tr.final_borda);
      tr.cum_shifted.push_back(tr.final_shifted);
      if (sc) tr.cum_condorcet.push_back(tr.final_condorcet);
      tr.cum_consumed.insert(tr.cum_consumed.end(), tr.final_consumed.begin(),
                             tr.final_consumed.end());
    }
  }
  tr.tau = env.tau();
  return tr;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.seeds.empty()) throw ConfigError("experiment needs at least one seed");
  cfg.instance.check();

  std::vector<uint64_t> seeds = cfg.seeds;
  std::sort(seeds.begin(), seeds.end());

  ExperimentResult result;
  result.policy = cfg.policy.name;
  result.instance_name = cfg.instance.name;
  result.T = cfg.instance.T;
  result.d = cfg.instance.d;
  result.B = cfg.instance.B;
  result.score_kind = cfg.score_kind;
  result.trials.resize(seeds.size());

  unsigned n_threads = cfg.threads > 0 ? cfg.threads : std::thread::hardware_concurrency();
  n_threads = std::max(1u, std::min<unsigned>(n_threads, seeds.size()));

  auto worker = [&](unsigned offset) {
    for (size_t i = offset; i < seeds.size(); i += n_threads)
      result.trials[i] =
          run_trial(cfg.instance, cfg.policy, cfg.score_kind, seeds[i], cfg.keep_rounds);
  };
  std::vector<std::future<void>> futs;
  for (unsigned w = 1; w < n_threads; ++w)
    futs.push_back(std::async(std::launch::async, worker, w));
  worker(0);
  for (auto& f : futs) f.get();
  return result;
}

namespace {

ScoreKind benchmark_score_kind(BenchmarkKind kind) {
  switch (kind) {
    case BenchmarkKind::borda:
      return ScoreKind::borda;
    case BenchmarkKind::shifted_borda:
      return ScoreKind::shifted_borda;
    case BenchmarkKind::condorcet:
      return ScoreKind::condorcet;
    default:
      throw KindMismatch("one-sided benchmark cannot score a full run");
  }
}

}  // namespace

RegretSummary compute_regret(const ExperimentResult& result,
                             const BenchmarkSolution& benchmark) {
  if (benchmark_score_kind(benchmark.kind) != result.score_kind)
    throw KindMismatch("benchmark score kind does not match the run");
  RegretSummary s;
  s.per_seed.reserve(result.trials.size());
  for (const auto& tr : result.trials)
    s.per_seed.push_back(benchmark.opt_total - tr.final_reward(result.score_kind));
  const double n = static_cast<double>(s.per_seed.size());
  for (double r : s.per_seed) s.mean += r;
  s.mean /= n;
  if (s.per_seed.size() > 1) {
    double ss = 0.0;
    for (double r : s.per_seed) ss += (r - s.mean) * (r - s.mean);
    s.stddev = std::sqrt(ss / (n - 1.0));
    s.stderr_mean = s.stddev / std::sqrt(n);
  }
  return s;
}

namespace {

const std::vector<double>& cum_by_kind(const TrialTrace& tr, ScoreKind kind) {
  switch (kind) {
    case ScoreKind::borda:
      return tr.cum_borda;
    case ScoreKind::shifted_borda:
      return tr.cum_shifted;
    case ScoreKind::condorcet:
      if (!tr.has_condorcet) throw NoCondorcetWinner("trace has no Condorcet reward");
      return tr.cum_condorcet;
  }
  return tr.cum_borda;
}

}  // namespace

CurveSummary aggregate_cum_reward(const ExperimentResult& result) {
  const size_t T = static_cast<size_t>(result.T);
  const size_t n = result.trials.size();
  CurveSummary out;
  out.mean.assign(T, 0.0);
  out.stddev.assign(T, 0.0);
  std::vector<std::vector<double>> curves;
  curves.reserve(n);
  for (const auto& tr : result.trials) {
    const auto& c = cum_by_kind(tr, result.score_kind);
    if (c.empty()) throw ConfigError("aggregation needs per-round traces");
    std::vector<double> ext(T, c.back());
    std::copy(c.begin(), c.end(), ext.begin());
    curves.push_back(std::move(ext));
  }
  for (size_t t = 0; t < T; ++t) {
    double m = 0.0;
    for (const auto& c : curves) m += c[t];
    m /= n;
    out.mean[t] = m;
    if (n > 1) {
      double ss = 0.0;
      for (const auto& c : curves) ss += (c[t] - m) * (c[t] - m);
      out.stddev[t] = std::sqrt(ss / (n - 1.0));
    }
  }
  return out;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

void emit_csv(const ResultsTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  int d = 1;
  if (!table.runs.empty()) d = table.runs.front().d;
  out << "policy,seed,t,cum_reward";
  for (int r = 1; r <= d; ++r) out << ",cum_consumption_" << r;
  out << ",tau\n";
  for (const auto& run : table.runs) {
    if (run.d != d) throw ConfigError("mixed resource counts in one table");
    for (const auto& tr : run.trials) {
      const auto& cum = cum_by_kind(tr, run.score_kind);
      if (cum.empty()) throw ConfigError("CSV output needs per-round traces");
      for (long long t = 1; t <= tr.tau; ++t) {
        out << run.policy << ',' << tr.seed << ',' << t << ','
            << fmt(cum[static_cast<size_t>(t - 1)]);
        for (int r = 0; r < d; ++r)
          out << ',' << fmt(tr.cum_consumed[static_cast<size_t>(t - 1) * d + r]);
        out << ',' << tr.tau << '\n';
      }
    }
  }
  if (!out) throw IoError("write failed: " + path);
}

namespace {

struct Stats {
  double mean, lo, hi;
};

std::vector<Stats> band(const std::vector<std::vector<double>>& per_seed) {
  const size_t T = per_seed.front().size();
  const size_t n = per_seed.size();
  std::vector<Stats> out(T);
  for (size_t t = 0; t < T; ++t) {
    double m = 0.0;
    for (const auto& c : per_seed) m += c[t];
    m /= n;
    double sd = 0.0;
    if (n > 1) {
      double ss = 0.0;
      for (const auto& c : per_seed) ss += (c[t] - m) * (c[t] - m);
      sd = std::sqrt(ss / (n - 1.0));
    }
    out[t] = {m, m - sd, m + sd};
  }
  return out;
}

}  // namespace

void render_curves_svg(const std::vector<PolicyCurves>& curves, const std::string& path) {
  if (curves.empty()) throw ConfigError("nothing to plot");
  static const char* kColors[] = {"#4878cf", "#ee854a", "#6acc65", "#d65f5f",
                                  "#956cb4", "#8c613c"};
  const double W = 860, H = 520;
  const double ml = 70, mr = 20, mt = 20, mb = 50;

  size_t T = 0;
  double ymax = 1e-9;
  std::vector<std::vector<Stats>> bands;
  for (const auto& pc : curves) {
    if (pc.per_seed.empty()) throw ConfigError("policy with no curves: " + pc.policy);
    bands.push_back(band(pc.per_seed));
    T = std::max(T, bands.back().size());
    for (const auto& st : bands.back()) ymax = std::max(ymax, st.hi);
  }
  auto xs = [&](double t) { return ml + (t - 1.0) / std::max<double>(1.0, T - 1) * (W - ml - mr); };
  auto ys = [&](double v) { return H - mb - v / ymax * (H - mt - mb); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // axes and ticks
  svg << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
      << H - mb << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
      << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double t = 1.0 + (T - 1.0) * i / 5.0;
    const double v = ymax * i / 5.0;
    svg << "<line x1=\"" << xs(t) << "\" y1=\"" << H - mb << "\" x2=\"" << xs(t) << "\" y2=\""
        << H - mb + 5 << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << xs(t) << "\" y=\"" << H - mb + 20
        << "\" font-size=\"12\" text-anchor=\"middle\">" << static_cast<long long>(t + 0.5)
        << "</text>\n";
    svg << "<line x1=\"" << ml - 5 << "\" y1=\"" << ys(v) << "\" x2=\"" << ml << "\" y2=\""
        << ys(v) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << ml - 8 << "\" y=\"" << ys(v) + 4
        << "\" font-size=\"12\" text-anchor=\"end\">" << fmt(v) << "</text>\n";
  }
  svg << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 10
      << "\" font-size=\"14\" text-anchor=\"middle\">round</text>\n";
  svg << "<text x=\"15\" y=\"" << (mt + H - mb) / 2
      << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
      << (mt + H - mb) / 2 << ")\">cumulative reward</text>\n";

  const size_t step = std::max<size_t>(1, T / 800);
  for (size_t c = 0; c < curves.size(); ++c) {
    const char* color = kColors[c % (sizeof kColors / sizeof *kColors)];
    const auto& b = bands[c];
    // +-1 std band
    svg << "<polygon fill=\"" << color << "\" fill-opacity=\"0.2\" stroke=\"none\" points=\"";
    for (size_t t = 0; t < b.size(); t += step)
      svg << xs(t + 1.0) << ',' << ys(std::max(0.0, b[t].hi)) << ' ';
    svg << xs(static_cast<double>(b.size())) << ',' << ys(std::max(0.0, b.back().hi)) << ' ';
    svg << xs(static_cast<double>(b.size())) << ',' << ys(std::max(0.0, b.back().lo)) << ' ';
    for (size_t t = b.size(); t-- > 0;)
      if (t % step == 0) svg << xs(t + 1.0) << ',' << ys(std::max(0.0, b[t].lo)) << ' ';
    svg << "\"/>\n";
    // mean curve
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (size_t t = 0; t < b.size(); t += step) svg << xs(t + 1.0) << ',' << ys(b[t].mean) << ' ';
    svg << xs(static_cast<double>(b.size())) << ',' << ys(b.back().mean);
    svg << "\"/>\n";
    // legend
    const double lx = ml + 15, ly = mt + 20 + 22.0 * c;
    svg << "<rect x=\"" << lx << "\" y=\"" << ly - 10 << "\" width=\"24\" height=\"10\" fill=\""
        << color << "\"/>\n"
        << "<text x=\"" << lx + 30 << "\" y=\"" << ly << "\" font-size=\"13\">"
        << curves[c].policy << "</text>\n";
  }
  svg << "</svg>\n";

  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << svg.str();
}

void emit_plot(const ResultsTable& table, const std::string& path) {
  std::vector<PolicyCurves> curves;
  for (const auto& run : table.runs) {
    PolicyCurves pc;
    pc.policy = run.policy;
    for (const auto& tr : run.trials) {
      const auto& c = cum_by_kind(tr, run.score_kind);
      if (c.empty()) throw ConfigError("plot needs per-round traces");
      std::vector<double> ext(static_cast<size_t>(run.T), c.back());
      std::copy(c.begin(), c.end(), ext.begin());
      pc.per_seed.push_back(std::move(ext));
    }
    curves.push_back(std::move(pc));
  }
  render_curves_svg(curves, path);
}

std::vector<PolicyCurves> read_csv_curves(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("policy,seed,t,cum_reward", 0) != 0)
    throw IoError("unrecognized results CSV header");
  // policy -> seed -> cum rewards by round
  std::map<std::string, std::map<uint64_t, std::vector<double>>> data;
  size_t max_t = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string policy, tok;
    if (!std::getline(ss, policy, ',')) throw IoError("bad CSV row: " + line);
    std::getline(ss, tok, ',');
    const uint64_t seed = std::stoull(tok);
    std::getline(ss, tok, ',');
    const size_t t = std::stoull(tok);
    std::getline(ss, tok, ',');
    const double cum = std::stod(tok);
    auto& v = data[policy][seed];
    if (t != v.size() + 1) throw IoError("non-contiguous rounds in CSV for " + policy);
    v.push_back(cum);
    max_t = std::max(max_t, t);
  }
  std::vector<PolicyCurves> out;
  for (auto& [policy, seeds] : data) {
    PolicyCurves pc;
    pc.policy = policy;
    for (auto& [seed, curve] : seeds) {
      std::vector<double> ext(max_t, curve.empty() ? 0.0 : curve.back());
      std::copy(curve.begin(), curve.end(), ext.begin());
      pc.per_seed.push_back(std::move(ext));
    }
    out.push_back(std::move(pc));
  }
  return out;
}

OracleEstimates estimator_oracle(const PreferenceMatrix& P,
                                 const std::vector<double>& q_x,
                                 const std::vector<double>& q_y,
                                 const std::vector<std::vector<double>>& u_mean,
                                 const std::vector<std::vector<double>>& v_mean,
                                 double B, long long T) {
  const int k = P.size();
  const int d = static_cast<int>(u_mean.front().size());
  VigilantParams p;
  p.K = k;
  p.d = d;
  p.T = T;
  p.B = B;
  p.gamma_x = p.gamma_y = 1.0;  // only K, d and q matter for the estimates
  VigilantState s;
  s.q_x = q_x;
  s.q_y = q_y;

  OracleEstimates out;
  out.b_hat_mean.assign(k, 0.0);
  out.u_hat_x_mean.assign(k, std::vector<double>(d, 0.0));
  out.u_hat_y_mean.assign(k, std::vector<double>(d, 0.0));
  for (int x = 0; x < k; ++x) {
    for (int y = 0; y < k; ++y) {
      const double pxy = q_x[x] * q_y[y];
      if (pxy == 0.0) continue;
      for (int o = 0; o <= 1; ++o) {
        const double pr = pxy * (o ? P(x, y) : 1.0 - P(x, y));
        if (pr == 0.0) continue;
        const auto est = vigilant_estimates(p, s, x, y, o, u_mean[x], v_mean[y]);
        for (int i = 0; i < k; ++i) {
          out.b_hat_mean[i] += pr * est.b_hat[i];
          for (int r = 0; r < d; ++r) {
            out.u_hat_x_mean[i][r] += pr * est.u_hat_x[i][r];
            out.u_hat_y_mean[i][r] += pr * est.u_hat_y[i][r];
          }
        }
      }
    }
  }
  return out;
}

}  // namespace duelknap
