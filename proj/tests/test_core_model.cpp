#include <doctest.h>

#include <cmath>

#include "duelknap/errors.hpp"
#include "duelknap/generators.hpp"
#include "duelknap/preference.hpp"
#include "duelknap/rng.hpp"
#include "oracles.hpp"

using namespace duelknap;

namespace {

const std::vector<std::vector<double>> kSynthetic = {
    {0.50, 0.55, 0.55, 0.54, 0.61, 0.61}, {0.45, 0.50, 0.55, 0.55, 0.58, 0.60},
    {0.45, 0.45, 0.50, 0.54, 0.51, 0.56}, {0.46, 0.45, 0.46, 0.50, 0.54, 0.50},
    {0.39, 0.42, 0.49, 0.46, 0.50, 0.51}, {0.39, 0.40, 0.44, 0.50, 0.49, 0.50}};

std::vector<std::vector<double>> uniform_matrix(int k) {
  return std::vector<std::vector<double>>(k, std::vector<double>(k, 0.5));
}

std::vector<std::vector<double>> cyclic3() {
  return {{0.5, 0.6, 0.4}, {0.4, 0.5, 0.6}, {0.6, 0.4, 0.5}};
}

}  // namespace

TEST_CASE("preference matrix validation") {
  CHECK_NOTHROW(PreferenceMatrix::validate({{0.5, 0.7}, {0.3, 0.5}}));
  CHECK_THROWS_AS(PreferenceMatrix::validate({{0.5, 0.7}, {0.4, 0.5}}),
                  NotSkewComplement);
  CHECK_THROWS_AS(PreferenceMatrix::validate({{0.4, 0.7}, {0.3, 0.6}}), BadDiagonal);
  CHECK_THROWS_AS(PreferenceMatrix::validate({{0.5, 1.2}, {-0.2, 0.5}}), OutOfRange);
  CHECK_THROWS_AS(PreferenceMatrix::validate({{0.5}}), OutOfRange);
  CHECK_NOTHROW(PreferenceMatrix::validate(kSynthetic));

  const auto p = PreferenceMatrix::validate(kSynthetic);
  for (int i = 0; i < p.size(); ++i)
    for (int j = 0; j < p.size(); ++j)
      CHECK(std::abs(p(i, j) + p(j, i) - 1.0) <= 1e-12);
}

TEST_CASE("borda scores") {
  const auto uni = borda_scores(PreferenceMatrix::validate(uniform_matrix(4)));
  for (double v : uni.values) CHECK(v == doctest::Approx(0.5).epsilon(1e-14));

  const auto syn = borda_scores(PreferenceMatrix::validate(kSynthetic));
  // hand-summed row means excluding the diagonal
  const std::vector<double> expect = {0.572, 0.546, 0.502, 0.482, 0.454, 0.444};
  for (int i = 0; i < 6; ++i)
    CHECK(syn.values[i] == doctest::Approx(expect[i]).epsilon(1e-12));
  CHECK(borda_winner(PreferenceMatrix::validate(kSynthetic)) == 0);

  const auto lb = borda_scores(PreferenceMatrix::validate(
      {{0.5, 0.5, 0.7}, {0.5, 0.5, 0.6}, {0.3, 0.4, 0.5}}));
  CHECK(lb.values[0] == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(lb.values[1] == doctest::Approx(0.55).epsilon(1e-14));
  CHECK(lb.values[2] == doctest::Approx(0.35).epsilon(1e-14));
}

TEST_CASE("shifted borda scores and shift identity") {
  const auto p = PreferenceMatrix::validate(kSynthetic);
  const auto sb = shifted_borda_scores(p);
  CHECK(sb.values[0] == doctest::Approx(3.36 / 6.0).epsilon(1e-12));

  Rng rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const int k = 2 + static_cast<int>(rng.next_double() * 9);
    const auto m = PreferenceMatrix::validate(oracles::random_matrix(rng, k));
    const auto b = borda_scores(m);
    const auto bt = shifted_borda_scores(m);
    for (int i = 0; i < k; ++i) {
      const double want = (k - 1.0) / k * b.values[i] + 1.0 / (2.0 * k);
      CHECK(std::abs(bt.values[i] - want) <= 1e-12);
    }
    // argmax invariance under the affine shift
    int amax = 0;
    for (int i = 1; i < k; ++i)
      if (bt.values[i] > bt.values[amax]) amax = i;
    CHECK(borda_winner(m) == amax);
  }
}

TEST_CASE("condorcet winner and scores") {
  const auto i1 = PreferenceMatrix::validate(
      {{0.5, 0.6, 0.7}, {0.4, 0.5, 0.5}, {0.3, 0.5, 0.5}});
  REQUIRE(condorcet_winner(i1).has_value());
  CHECK(*condorcet_winner(i1) == 0);
  const auto c = condorcet_scores(i1);
  CHECK(c.values[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(c.values[1] == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(c.values[2] == doctest::Approx(0.3).epsilon(1e-14));

  CHECK_FALSE(condorcet_winner(PreferenceMatrix::validate(cyclic3())).has_value());
  CHECK_FALSE(condorcet_winner(PreferenceMatrix::validate(uniform_matrix(3))).has_value());
  CHECK_THROWS_AS(condorcet_scores(PreferenceMatrix::validate(cyclic3())),
                  NoCondorcetWinner);

  const auto k2 = PreferenceMatrix::validate({{0.5, 0.9}, {0.1, 0.5}});
  const auto c2 = condorcet_scores(k2);
  CHECK(c2.values[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(c2.values[1] == doctest::Approx(0.1).epsilon(1e-14));
}

TEST_CASE("total ordering") {
  const auto to = condorcet_lb_family(4, 0.05, CondorcetLbVariant::total_order, 1);
  const auto order = check_total_ordering(to.P);
  REQUIRE(order.has_value());
  CHECK(order->ranking == std::vector<int>{0, 1, 2, 3});

  CHECK_FALSE(check_total_ordering(PreferenceMatrix::validate(cyclic3())).has_value());
  // off-winner 1/2 block: strict TO fails
  const auto gen = condorcet_lb_family(4, 0.05, CondorcetLbVariant::general, 1);
  CHECK_FALSE(check_total_ordering(gen.P).has_value());

  // soundness: the returned order always re-certifies
  Rng rng(11);
  int found = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 2 + static_cast<int>(rng.next_double() * 5);
    const auto m = PreferenceMatrix::validate(oracles::random_matrix(rng, k));
    const auto ord = check_total_ordering(m);
    if (!ord) continue;
    ++found;
    for (size_t a = 0; a < ord->ranking.size(); ++a)
      for (size_t b = a + 1; b < ord->ranking.size(); ++b)
        CHECK(m(ord->ranking[a], ord->ranking[b]) > 0.5);
  }
  CHECK(found > 0);
}

TEST_CASE("strong stochastic transitivity") {
  const auto k2 = PreferenceMatrix::validate({{0.5, 0.7}, {0.3, 0.5}});
  const auto ord2 = check_total_ordering(k2);
  REQUIRE(ord2.has_value());
  CHECK(check_sst(k2, *ord2));

  const auto to = condorcet_lb_family(5, 0.04, CondorcetLbVariant::total_order, 1);
  const auto ord = check_total_ordering(to.P);
  REQUIRE(ord.has_value());
  CHECK(check_sst(to.P, *ord));

  const auto prime =
      condorcet_lb_family(3, 0.1, CondorcetLbVariant::total_order_prime, 1);
  const auto pord = check_total_ordering(prime.P);
  REQUIRE(pord.has_value());
  CHECK_FALSE(check_sst(prime.P, *pord));

  // an order that does not certify the matrix is rejected
  TotalOrder bad{{1, 0}};
  CHECK_THROWS_AS(check_sst(k2, bad), OrderNotCertifying);
}

TEST_CASE("rng determinism and distributions") {
  Rng a(123), b(123), c(124);
  bool diverged = false;
  for (int i = 0; i < 1000; ++i) {
    const auto va = a.next_u64();
    CHECK(va == b.next_u64());
    if (va != c.next_u64()) diverged = true;
  }
  CHECK(diverged);

  Rng r(5);
  int ones = 0;
  for (int i = 0; i < 100000; ++i) ones += r.bernoulli(0.3);
  CHECK(std::abs(ones / 100000.0 - 0.3) < 3.0 * std::sqrt(0.3 * 0.7 / 100000.0));

  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double z = r.normal(0.0, 1.0);
    sum += z;
    sum2 += z * z;
  }
  CHECK(std::abs(sum / 100000.0) < 0.02);
  CHECK(std::abs(sum2 / 100000.0 - 1.0) < 0.03);

  // beta(2, 1) has mean 2/3
  double bsum = 0.0;
  for (int i = 0; i < 100000; ++i) bsum += r.beta(2.0, 1.0);
  CHECK(std::abs(bsum / 100000.0 - 2.0 / 3.0) < 0.01);

  std::vector<double> probs = {0.2, 0.5, 0.3};
  std::vector<int> counts(3, 0);
  for (int i = 0; i < 100000; ++i) counts[r.categorical(probs)]++;
  for (int j = 0; j < 3; ++j)
    CHECK(std::abs(counts[j] / 100000.0 - probs[j]) <
          3.0 * std::sqrt(probs[j] * (1 - probs[j]) / 100000.0));
}
