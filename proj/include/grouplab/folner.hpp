#pragma once

#include <cstdint>
#include <vector>

#include "grouplab/finite_group.hpp"
#include "grouplab/parallel.hpp"
#include "grouplab/rational.hpp"

namespace grouplab {

/// One amenability question: a window A inside g and a tolerance epsilon in
/// (0,1]. The certificate inequality is |A V| < (1 + epsilon) |V|, compared
/// in exact rational arithmetic throughout.
struct FolnerQuery {
  GroupPtr g;
  std::vector<std::uint32_t> a;
  Rational epsilon{1, 2};

  void validate() const;
};

enum class FolnerMode { exact, greedy };

struct FolnerResult {
  std::vector<std::uint32_t> v;
  std::uint64_t av_size = 0;
  bool exact = false;  // exact = |v| is the true minimum

  bool certificate_holds(const FolnerQuery& q) const {
    // |AV| * den < (den + num) * |V|
    return static_cast<__int128>(av_size) * q.epsilon.den <
           static_cast<__int128>(q.epsilon.den + q.epsilon.num) * v.size();
  }
};

/// Exact mode enumerates subsets by increasing size (|G| <= 16 only, errors
/// with cap-exceeded otherwise) and returns a minimum-cardinality witness;
/// greedy mode grows V from {identity}, locally minimizing |AV|, and is an
/// upper bound. V = G always certifies, so both modes terminate with a valid
/// witness.
FolnerResult folner_search(const FolnerQuery& q, FolnerMode mode);

/// Empirical alpha-hat(epsilon, n): the worst (largest) minimal Folner
/// witness size over windows A of size n, exhaustive over all windows when
/// they fit the budget and seeded-random sampled otherwise.
struct AmenabilityCell {
  Rational epsilon;
  std::uint32_t set_size = 1;
  std::uint32_t alpha_hat = 1;
  bool exact = false;
  std::uint64_t windows_tried = 0;
};
std::vector<AmenabilityCell> amenability_profile(const GroupPtr& g, std::uint32_t n,
                                                 const std::vector<Rational>& epsilons,
                                                 std::uint64_t budget = 512,
                                                 std::uint64_t seed = 1,
                                                 Exec exec = Exec::parallel);

}  // namespace grouplab
