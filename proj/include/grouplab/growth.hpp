#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "grouplab/finite_group.hpp"
#include "grouplab/parallel.hpp"

namespace grouplab {

/// Ball size in F_2 (symmetric alphabet {x,y,x^-1,y^-1}: 2*3^n - 1) or in the
/// free monoid on {x,y} (positive alphabet: 2^(n+1) - 1).
std::uint64_t free_ball_size(int n, bool symmetric);

/// Cumulative Cayley-ball sizes |B(r)| for r = 0..n around the identity.
struct BallProfile {
  std::vector<std::uint64_t> sizes;
  bool symmetric = true;
  std::string a_name, b_name;

  int radius() const { return static_cast<int>(sizes.size()) - 1; }
};

/// Tabled BFS.
BallProfile ball_profile(const GroupPtr& g, std::uint32_t a, std::uint32_t b, int n,
                         bool symmetric);

/// Permutation-native BFS with a hash element store; errors with
/// budget-exceeded when the store would grow past `store_cap`.
BallProfile ball_profile(const Permutation& a, const Permutation& b, int n, bool symmetric,
                         std::uint64_t store_cap = 10000000);

/// Search outcome for approximations to F_2 (symmetric) or M_2 (positive):
/// the largest r <= n_max at which some pair's ball matches the free ball
/// size exactly. Degree 0 means no pair reached radius 1.
struct ApproxReport {
  std::string group;
  bool symmetric = true;
  int best_degree = 0;
  std::string witness_a, witness_b;
  std::uint64_t pairs_tried = 0;
  bool exhaustive = false;
  int radius_limit = 0;
};

/// Tabled groups scan (class representative, element) pairs, exhaustively
/// when they fit the budget; permutation-native groups sample seeded random
/// pairs. Per pair the ball is grown radius by radius and abandoned at the
/// first mismatch, which is sound because a deficit at radius r forces a
/// deficit at every larger radius.
ApproxReport approx_degree(const GroupPtr& g, int n_max, bool symmetric,
                           std::uint64_t budget = 200000, std::uint64_t seed = 1,
                           Exec exec = Exec::parallel);

}  // namespace grouplab
