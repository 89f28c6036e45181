#pragma once

#include <string>

#include "duelknap/instance.hpp"

namespace duelknap {

// Built-in 6-arm instance: fixed preference matrix, three consumption
// profiles ('a' mid-arm cheapest, 'b' consumption ordered like the scores,
// 'c' all-zero), shared across both duel slots. T = 2000, B = 1000,
// noise 0.05 by default.
InstanceSpec synthetic_instance(char which);

// 10-arm instance built from a CSV of pairwise comparison counts
// (header "i,j,wins_i,wins_j", one row per unordered pair, 1-based arms).
// Pairs with zero total count fall back to 1/2. T = 5000, B = 4000.
// Throws BadCsv / InconsistentPairCount / KMismatch.
InstanceSpec car_instance(const std::string& csv_path, char consumption_case = 'a');

enum class CondorcetLbVariant { general, total_order, total_order_prime, sst };

// Family of K-1 hard instances for the Condorcet setting: arm 1 always wins,
// the epsilon multiples in its row are cyclically shifted by `which`, and the
// loser block is flat (general), graded (total_order / sst) or graded with
// flipped sign (total_order_prime). Arm 1 is the only consuming arm.
InstanceSpec condorcet_lb_family(int K, double epsilon, CondorcetLbVariant variant,
                                 int which);

// Distinguished by arm 2's consumption: zero, or epsilon (so probing the
// runner-up costs budget).
enum class BordaLbVariant { zero_probe_cost, eps_probe_cost };

// 3-arm hard instance for the Borda setting; arms 1 and 2 differ by
// epsilon/2 in Borda score and are only separable through arm 3 duels.
InstanceSpec borda_lb_instance(double epsilon, BordaLbVariant variant);

// JSON instance files. save followed by load is the identity.
// Throws SchemaMismatch / ValidationFailure / IoError.
InstanceSpec load_instance(const std::string& path);
void save_instance(const InstanceSpec& inst, const std::string& path);

}  // namespace duelknap
