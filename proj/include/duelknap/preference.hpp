#pragma once

#include <optional>
#include <vector>

namespace duelknap {

enum class ScoreKind { borda, shifted_borda, condorcet };

// K x K pairwise win-probability matrix with P(i,j) + P(j,i) = 1 and
// P(i,i) = 1/2. Immutable once validated.
class PreferenceMatrix {
 public:
  PreferenceMatrix() : k_(0) {}  // placeholder; validate before use
  // Throws NotSkewComplement / BadDiagonal / OutOfRange on invalid input.
  static PreferenceMatrix validate(const std::vector<std::vector<double>>& raw);
  static PreferenceMatrix validate_flat(int k, std::vector<double> row_major);

  int size() const { return k_; }
  double operator()(int i, int j) const { return entries_[i * k_ + j]; }
  const std::vector<double>& entries() const { return entries_; }

 private:
  PreferenceMatrix(int k, std::vector<double> e) : k_(k), entries_(std::move(e)) {}
  int k_;
  std::vector<double> entries_;
};

struct ScoreVector {
  std::vector<double> values;
  ScoreKind kind;
};

// Permutation of [K], best arm first.
struct TotalOrder {
  std::vector<int> ranking;
};

// b(x): mean of row x excluding the diagonal.
ScoreVector borda_scores(const PreferenceMatrix& p);

// Lowest index on ties.
int borda_winner(const PreferenceMatrix& p);

// Full-row mean including the diagonal; affine in b, same argmax.
ScoreVector shifted_borda_scores(const PreferenceMatrix& p);

// Arm beating every other arm strictly, if one exists.
std::optional<int> condorcet_winner(const PreferenceMatrix& p);

// c(x) = P(x, winner). Throws NoCondorcetWinner when absent.
ScoreVector condorcet_scores(const PreferenceMatrix& p);

// A permutation certifying P(earlier, later) > 1/2 for every pair, or absent.
// Off-diagonal ties fail the strict ordering.
std::optional<TotalOrder> check_total_ordering(const PreferenceMatrix& p);

// Strong stochastic transitivity under the given certified order.
// Throws OrderNotCertifying if the order does not certify the matrix.
bool check_sst(const PreferenceMatrix& p, const TotalOrder& order);

}  // namespace duelknap
