#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "duelknap/errors.hpp"
#include "duelknap/generators.hpp"
#include "duelknap/harness.hpp"

namespace py = pybind11;
namespace dk = duelknap;

namespace {

dk::ScoreKind parse_score(const std::string& s) {
  if (s == "borda") return dk::ScoreKind::borda;
  if (s == "shifted_borda") return dk::ScoreKind::shifted_borda;
  if (s == "condorcet") return dk::ScoreKind::condorcet;
  throw dk::ConfigError("unknown score kind: " + s);
}

py::dict benchmark_dict(const dk::BenchmarkSolution& sol) {
  py::dict d;
  d["per_round_value"] = sol.per_round_value;
  d["opt_total"] = sol.opt_total;
  d["pi_x"] = sol.policy.pi_x;
  d["pi_y"] = sol.policy.pi_y;
  return d;
}

py::dict instance_dict(const dk::InstanceSpec& inst) {
  py::dict d;
  d["name"] = inst.name;
  d["K"] = inst.K();
  d["d"] = inst.d;
  std::vector<std::vector<double>> rows(inst.K(), std::vector<double>(inst.K()));
  for (int i = 0; i < inst.K(); ++i)
    for (int j = 0; j < inst.K(); ++j) rows[i][j] = inst.P(i, j);
  d["P"] = rows;
  d["u_mean"] = inst.u_mean;
  d["v_mean"] = inst.v_mean;
  d["noise_sigma"] = inst.noise_sigma;
  d["T"] = inst.T;
  d["B"] = inst.B;
  return d;
}

dk::InstanceSpec make_instance(const std::vector<std::vector<double>>& P,
                               const std::vector<std::vector<double>>& u_mean,
                               const std::vector<std::vector<double>>& v_mean,
                               double noise_sigma, long long T, double B,
                               const std::string& name) {
  dk::InstanceSpec inst{dk::PreferenceMatrix::validate(P)};
  inst.d = u_mean.empty() ? 1 : static_cast<int>(u_mean.front().size());
  inst.u_mean = u_mean;
  inst.v_mean = v_mean;
  inst.noise_sigma = noise_sigma;
  inst.T = T;
  inst.B = B;
  inst.name = name;
  inst.check();
  return inst;
}

}  // namespace

PYBIND11_MODULE(_duelknap, m) {
  m.doc() = "Dueling bandits under knapsack constraints";

  py::register_exception<dk::Infeasible>(m, "Infeasible");
  py::register_exception<dk::ValidationFailure>(m, "ValidationFailure");
  static py::exception<dk::Error> exc(m, "DuelknapError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const dk::Infeasible&) {
      throw;  // handled by the registrations above
    } catch (const dk::ValidationFailure&) {
      throw;
    } catch (const dk::Error& e) {
      exc(e.what());
    }
  });

  py::class_<dk::InstanceSpec>(m, "InstanceSpec")
      .def_property_readonly("K", &dk::InstanceSpec::K)
      .def_readonly("d", &dk::InstanceSpec::d)
      .def_readonly("T", &dk::InstanceSpec::T)
      .def_readonly("B", &dk::InstanceSpec::B)
      .def_readonly("noise_sigma", &dk::InstanceSpec::noise_sigma)
      .def_readonly("name", &dk::InstanceSpec::name)
      .def("to_dict", &instance_dict);

  m.def("make_instance", &make_instance, py::arg("P"), py::arg("u_mean"),
        py::arg("v_mean"), py::arg("noise_sigma") = 0.0, py::arg("T") = 1000,
        py::arg("B") = 0.0, py::arg("name") = "custom");
  m.def("synthetic_instance", &dk::synthetic_instance, py::arg("which"));
  m.def(
      "condorcet_lb_instance",
      [](int K, double epsilon, const std::string& variant, int which) {
        dk::CondorcetLbVariant v;
        if (variant == "general")
          v = dk::CondorcetLbVariant::general;
        else if (variant == "total_order")
          v = dk::CondorcetLbVariant::total_order;
        else if (variant == "total_order_prime")
          v = dk::CondorcetLbVariant::total_order_prime;
        else if (variant == "sst")
          v = dk::CondorcetLbVariant::sst;
        else
          throw dk::ConfigError("unknown variant: " + variant);
        return dk::condorcet_lb_family(K, epsilon, v, which);
      },
      py::arg("K"), py::arg("epsilon"), py::arg("variant") = "general",
      py::arg("which") = 1);
  m.def(
      "borda_lb_instance",
      [](double epsilon, bool eps_probe_cost) {
        return dk::borda_lb_instance(epsilon,
                                     eps_probe_cost ? dk::BordaLbVariant::eps_probe_cost
                                                    : dk::BordaLbVariant::zero_probe_cost);
      },
      py::arg("epsilon"), py::arg("eps_probe_cost") = false);
  m.def("car_instance", &dk::car_instance, py::arg("csv_path"),
        py::arg("consumption_case") = 'a');
  m.def("load_instance", &dk::load_instance, py::arg("path"));
  m.def("save_instance", &dk::save_instance, py::arg("instance"), py::arg("path"));

  m.def("borda_scores", [](const std::vector<std::vector<double>>& P) {
    return dk::borda_scores(dk::PreferenceMatrix::validate(P)).values;
  });
  m.def("shifted_borda_scores", [](const std::vector<std::vector<double>>& P) {
    return dk::shifted_borda_scores(dk::PreferenceMatrix::validate(P)).values;
  });
  m.def("condorcet_winner", [](const std::vector<std::vector<double>>& P) -> py::object {
    const auto w = dk::condorcet_winner(dk::PreferenceMatrix::validate(P));
    if (!w) return py::none();
    return py::int_(*w);
  });

  m.def("solve_borda_lp",
        [](const dk::InstanceSpec& inst) { return benchmark_dict(dk::solve_borda_lp(inst)); });
  m.def("solve_shifted_borda_lp", [](const dk::InstanceSpec& inst) {
    return benchmark_dict(dk::solve_shifted_borda_lp(inst));
  });
  m.def("solve_condorcet_lp", [](const dk::InstanceSpec& inst) {
    return benchmark_dict(dk::solve_condorcet_lp(inst));
  });
  m.def("solve_separated_lps", [](const dk::InstanceSpec& inst) {
    const auto [sx, sy] = dk::solve_separated_lps(inst);
    py::dict d;
    d["x"] = benchmark_dict(sx);
    d["y"] = benchmark_dict(sy);
    d["opt_total"] = sx.opt_total + sy.opt_total;
    return d;
  });

  m.def(
      "run",
      [](const dk::InstanceSpec& inst, const std::string& policy,
         const std::vector<uint64_t>& seeds, const std::string& score, int threads) {
        dk::ExperimentConfig cfg;
        cfg.instance = inst;
        cfg.policy.name = policy;
        cfg.seeds = seeds;
        cfg.score_kind = parse_score(score);
        cfg.keep_rounds = false;
        cfg.threads = threads;
        const auto res = dk::run_experiment(cfg);
        py::dict d;
        d["policy"] = res.policy;
        std::vector<uint64_t> out_seeds;
        std::vector<double> rewards;
        std::vector<long long> taus;
        for (const auto& tr : res.trials) {
          out_seeds.push_back(tr.seed);
          rewards.push_back(tr.final_reward(res.score_kind));
          taus.push_back(tr.tau);
        }
        d["seeds"] = out_seeds;
        d["final_rewards"] = rewards;
        d["taus"] = taus;
        return d;
      },
      py::arg("instance"), py::arg("policy") = "vigilant",
      py::arg("seeds") = std::vector<uint64_t>{1, 2, 3, 4, 5}, py::arg("score") = "borda",
      py::arg("threads") = 0);
}
