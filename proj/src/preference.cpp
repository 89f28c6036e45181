#include "duelknap/preference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "duelknap/errors.hpp"

namespace duelknap {

namespace {
constexpr double kTol = 1e-12;
}

PreferenceMatrix PreferenceMatrix::validate(const std::vector<std::vector<double>>& raw) {
  const int k = static_cast<int>(raw.size());
  std::vector<double> flat;
  flat.reserve(static_cast<size_t>(k) * k);
  for (const auto& row : raw) {
    if (static_cast<int>(row.size()) != k)
      throw OutOfRange("preference matrix is not square");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return validate_flat(k, std::move(flat));
}

PreferenceMatrix PreferenceMatrix::validate_flat(int k, std::vector<double> row_major) {
  if (k < 2) throw OutOfRange("preference matrix needs K >= 2");
  if (static_cast<int>(row_major.size()) != k * k)
    throw OutOfRange("preference matrix entry count does not match K");
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const double v = row_major[i * k + j];
      if (!(v >= 0.0 && v <= 1.0))
        throw OutOfRange("P(" + std::to_string(i) + "," + std::to_string(j) +
                         ") outside [0,1]");
    }
  }
  for (int i = 0; i < k; ++i) {
    if (std::abs(row_major[i * k + i] - 0.5) > kTol)
      throw BadDiagonal("P(" + std::to_string(i) + "," + std::to_string(i) + ") != 1/2");
  }
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      if (std::abs(row_major[i * k + j] + row_major[j * k + i] - 1.0) > kTol)
        throw NotSkewComplement("P(" + std::to_string(i) + "," + std::to_string(j) +
                                ") + P(" + std::to_string(j) + "," + std::to_string(i) +
                                ") != 1");
    }
  }
  return PreferenceMatrix(k, std::move(row_major));
}

ScoreVector borda_scores(const PreferenceMatrix& p) {
  const int k = p.size();
  ScoreVector s{std::vector<double>(k, 0.0), ScoreKind::borda};
  for (int i = 0; i < k; ++i) {
    double sum = 0.0;
    for (int j = 0; j < k; ++j)
      if (j != i) sum += p(i, j);
    s.values[i] = sum / (k - 1);
  }
  return s;
}

int borda_winner(const PreferenceMatrix& p) {
  const auto s = borda_scores(p);
  return static_cast<int>(std::max_element(s.values.begin(), s.values.end()) -
                          s.values.begin());
}

ScoreVector shifted_borda_scores(const PreferenceMatrix& p) {
  const int k = p.size();
  ScoreVector s{std::vector<double>(k, 0.0), ScoreKind::shifted_borda};
  for (int i = 0; i < k; ++i) {
    double sum = 0.0;
    for (int j = 0; j < k; ++j) sum += p(i, j);
    s.values[i] = sum / k;
  }
  return s;
}

std::optional<int> condorcet_winner(const PreferenceMatrix& p) {
  const int k = p.size();
  for (int i = 0; i < k; ++i) {
    bool beats_all = true;
    for (int j = 0; j < k && beats_all; ++j)
      if (j != i && !(p(i, j) > 0.5)) beats_all = false;
    if (beats_all) return i;
  }
  return std::nullopt;
}

ScoreVector condorcet_scores(const PreferenceMatrix& p) {
  const auto winner = condorcet_winner(p);
  if (!winner) throw NoCondorcetWinner("matrix has no Condorcet winner");
  const int k = p.size();
  ScoreVector s{std::vector<double>(k, 0.0), ScoreKind::condorcet};
  for (int i = 0; i < k; ++i) s.values[i] = p(i, *winner);
  return s;
}

std::optional<TotalOrder> check_total_ordering(const PreferenceMatrix& p) {
  const int k = p.size();
  // In a transitive tournament the strict-win counts sort the arms; build
  // that candidate and re-certify it.
  std::vector<int> wins(k, 0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (j != i && p(i, j) > 0.5) ++wins[i];
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return wins[a] > wins[b]; });
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if (!(p(order[a], order[b]) > 0.5)) return std::nullopt;
  return TotalOrder{std::move(order)};
}

bool check_sst(const PreferenceMatrix& p, const TotalOrder& order) {
  const int k = p.size();
  if (static_cast<int>(order.ranking.size()) != k)
    throw OrderNotCertifying("order length does not match K");
  std::vector<bool> seen(k, false);
  for (int i : order.ranking) {
    if (i < 0 || i >= k || seen[i]) throw OrderNotCertifying("not a permutation of [K]");
    seen[i] = true;
  }
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if (!(p(order.ranking[a], order.ranking[b]) > 0.5))
        throw OrderNotCertifying("order does not certify total ordering");
  constexpr double kSlack = 1e-12;
  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) {
      for (int c = b + 1; c < k; ++c) {
        const int i = order.ranking[a], j = order.ranking[b], l = order.ranking[c];
        if (p(i, l) < std::max(p(i, j), p(j, l)) - kSlack) return false;
      }
    }
  }
  return true;
}

}  // namespace duelknap
