#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "duelknap/errors.hpp"
#include "duelknap/generators.hpp"
#include "duelknap/preference.hpp"

using namespace duelknap;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

std::string write_car_csv(const std::string& name, bool skip_last = false,
                          bool duplicate = false, bool zero_total_first = false) {
  const auto path = temp_path(name);
  std::ofstream out(path);
  out << "i,j,wins_i,wins_j\n";
  bool first = true;
  for (int i = 1; i <= 10; ++i) {
    for (int j = i + 1; j <= 10; ++j) {
      if (skip_last && i == 9 && j == 10) continue;
      if (first && zero_total_first) {
        out << i << ',' << j << ",0,0\n";
        first = false;
        continue;
      }
      first = false;
      out << i << ',' << j << ',' << (10 + i) << ',' << (5 + j) << "\n";
      if (duplicate && i == 1 && j == 2) out << "1,2,3,4\n";
    }
  }
  return path;
}

}  // namespace

TEST_CASE("synthetic instance") {
  const auto a = synthetic_instance('a');
  CHECK(a.K() == 6);
  CHECK(a.P(0, 4) == doctest::Approx(0.61).epsilon(1e-15));
  CHECK(a.u_mean[2][0] == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(a.v_mean[2][0] == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(a.T == 2000);
  CHECK(a.B == 1000.0);
  CHECK(a.noise_sigma == doctest::Approx(0.05).epsilon(1e-15));

  const auto c = synthetic_instance('c');
  for (int i = 0; i < 6; ++i) CHECK(c.u_mean[i][0] == 0.0);
  // noise still applies in case c unless explicitly zeroed
  CHECK(c.noise_sigma == doctest::Approx(0.05).epsilon(1e-15));

  CHECK_THROWS_AS(synthetic_instance('d'), ConfigError);
}

TEST_CASE("car instance") {
  const auto path = write_car_csv("car_ok.csv");
  const auto inst = car_instance(path, 'a');
  CHECK(inst.K() == 10);
  CHECK(inst.T == 5000);
  CHECK(inst.B == 4000.0);
  // row "1,2,11,7": P(1,2) = 11/18
  CHECK(inst.P(0, 1) == doctest::Approx(11.0 / 18.0).epsilon(1e-12));
  CHECK(inst.P(1, 0) == doctest::Approx(7.0 / 18.0).epsilon(1e-12));
  CHECK(inst.u_mean[2][0] == doctest::Approx(0.01).epsilon(1e-15));

  const auto zt = car_instance(write_car_csv("car_zero.csv", false, false, true), 'b');
  CHECK(zt.P(0, 1) == doctest::Approx(0.5).epsilon(1e-15));

  CHECK_THROWS_AS(car_instance(write_car_csv("car_missing.csv", true)),
                  InconsistentPairCount);
  CHECK_THROWS_AS(car_instance(write_car_csv("car_dup.csv", false, true)),
                  InconsistentPairCount);

  const auto bad_header = temp_path("car_header.csv");
  std::ofstream(bad_header) << "a,b,c,d\n";
  CHECK_THROWS_AS(car_instance(bad_header), BadCsv);

  const auto big_arm = temp_path("car_bigarm.csv");
  {
    std::ofstream out(big_arm);
    out << "i,j,wins_i,wins_j\n1,11,3,4\n";
  }
  CHECK_THROWS_AS(car_instance(big_arm), KMismatch);

  CHECK_THROWS_AS(car_instance(temp_path("does_not_exist.csv")), BadCsv);
}

TEST_CASE("condorcet lower-bound family") {
  // printed 3-arm instance, which = 1
  const auto g = condorcet_lb_family(3, 0.1, CondorcetLbVariant::general, 1);
  const std::vector<std::vector<double>> want = {
      {0.5, 0.6, 0.7}, {0.4, 0.5, 0.5}, {0.3, 0.5, 0.5}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(g.P(i, j) == doctest::Approx(want[i][j]).epsilon(1e-15));
  CHECK(g.u_mean[0][0] == 1.0);
  CHECK(g.u_mean[1][0] == 0.0);
  CHECK(g.T == 1000);
  CHECK(g.B == 250.0);
  CHECK(g.noise_sigma == 0.0);

  // which = 2 permutes the epsilon multiples in row 1
  const auto g2 = condorcet_lb_family(3, 0.1, CondorcetLbVariant::general, 2);
  CHECK(g2.P(0, 1) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(g2.P(0, 2) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(condorcet_winner(g2.P).has_value());

  // the winner is the Condorcet winner in every family member
  for (int k : {3, 5, 8}) {
    for (int which = 1; which < k; ++which) {
      const auto inst =
          condorcet_lb_family(k, 0.4 / k, CondorcetLbVariant::general, which);
      REQUIRE(condorcet_winner(inst.P).has_value());
      CHECK(*condorcet_winner(inst.P) == 0);
      // sub-block away from the winner is exactly 1/2
      for (int i = 1; i < k; ++i)
        for (int j = 1; j < k; ++j)
          if (i != j) CHECK(inst.P(i, j) == 0.5);
    }
  }

  // printed primed 3-arm instance
  const auto pr = condorcet_lb_family(3, 0.1, CondorcetLbVariant::total_order_prime, 1);
  const std::vector<std::vector<double>> want_pr = {
      {0.5, 0.6, 0.7}, {0.4, 0.5, 0.4}, {0.3, 0.6, 0.5}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(pr.P(i, j) == doctest::Approx(want_pr[i][j]).epsilon(1e-15));

  CHECK_THROWS_AS(condorcet_lb_family(3, 0.3, CondorcetLbVariant::general, 1),
                  EpsilonTooLarge);
  CHECK_THROWS_AS(condorcet_lb_family(3, 0.1, CondorcetLbVariant::general, 3),
                  OutOfRange);
  CHECK_THROWS_AS(condorcet_lb_family(3, 0.1, CondorcetLbVariant::general, 0),
                  OutOfRange);
}

TEST_CASE("borda lower-bound instance") {
  const auto z = borda_lb_instance(0.1, BordaLbVariant::zero_probe_cost);
  const auto b = borda_scores(z.P);
  CHECK(b.values[0] == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(b.values[1] == doctest::Approx(0.55).epsilon(1e-14));
  CHECK(b.values[2] == doctest::Approx(0.35).epsilon(1e-14));
  CHECK(borda_winner(z.P) == 0);
  CHECK(std::abs((b.values[0] - b.values[1]) - 0.05) <= 1e-12);
  CHECK(z.u_mean[1][0] == 0.0);
  CHECK(z.u_mean[2][0] == 1.0);

  const auto e = borda_lb_instance(0.1, BordaLbVariant::eps_probe_cost);
  CHECK(e.u_mean[1][0] == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(e.v_mean[1][0] == doctest::Approx(0.1).epsilon(1e-15));

  CHECK_THROWS_AS(borda_lb_instance(0.3, BordaLbVariant::zero_probe_cost),
                  EpsilonTooLarge);
}

TEST_CASE("instance file round trip") {
  const auto a = synthetic_instance('a');
  const auto path = temp_path("inst_roundtrip.json");
  save_instance(a, path);
  const auto back = load_instance(path);
  CHECK(back.K() == a.K());
  CHECK(back.d == a.d);
  CHECK(back.T == a.T);
  CHECK(back.B == a.B);
  CHECK(back.noise_sigma == a.noise_sigma);
  CHECK(back.name == a.name);
  CHECK(back.u_mean == a.u_mean);
  CHECK(back.v_mean == a.v_mean);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) CHECK(back.P(i, j) == a.P(i, j));

  // broken skew-complement entry
  const auto bad = temp_path("inst_bad.json");
  std::ofstream(bad) << R"({"schema_version":1,"name":"x","K":2,"d":1,
    "P":[0.5,0.7,0.4,0.5],"u_mean":[[0.1],[0.1]],"v_mean":[[0.1],[0.1]],
    "noise_sigma":0.0,"T":10,"B":1.0})";
  CHECK_THROWS_AS(load_instance(bad), ValidationFailure);

  const auto schema = temp_path("inst_schema.json");
  std::ofstream(schema) << R"({"schema_version":99})";
  CHECK_THROWS_AS(load_instance(schema), SchemaMismatch);

  CHECK_THROWS_AS(load_instance(temp_path("missing_inst.json")), IoError);
}
