#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "grouplab/finite_group.hpp"
#include "grouplab/rational.hpp"

namespace grouplab {

/// Finite partial multiplication table: labels with a partial product map and
/// an optional designated identity label.
struct PartialStructure {
  std::vector<std::string> labels;
  std::optional<std::uint32_t> identity;                      // index into labels
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> products;

  /// JSON form: {"labels":[...], "identity":"e", "products":{"a,b":"c",...}}.
  static PartialStructure from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  /// The additive window {-r..r} of the integers with products defined when
  /// |i+j| <= r; label of i is its decimal string, identity "0".
  static PartialStructure integer_window(int r);

  /// The full multiplication table of a tabled group.
  static PartialStructure group_table(const GroupPtr& g);

  std::uint32_t label_index(const std::string& name) const;
  /// Identity laws on defined products; raises on violation.
  void validate() const;
};

/// Complete backtracking search for an injective, product-preserving map of
/// the labels into g. nullopt = exhausted (no embedding exists).
std::optional<std::vector<std::uint32_t>> lef_embed(const PartialStructure& p, const GroupPtr& g);

/// Normalized Hamming distance |{i : p(i) != q(i)}| / degree.
Rational hamming(const Permutation& p, const Permutation& q);

/// A candidate sofic approximation: one permutation of the given degree per
/// label of the domain structure.
struct SoficMap {
  PartialStructure domain;
  std::uint32_t degree = 1;
  std::vector<Permutation> images;
};

/// max_defect = max over defined products of d(xi(gh), xi(g) xi(h));
/// min_separation = min over non-identity labels of d(1, xi(g)).
/// Empty ranges score 0 and 1 respectively.
struct SoficScore {
  Rational max_defect{0, 1};
  Rational min_separation{1, 1};
};
SoficScore sofic_defect(const SoficMap& m);

/// Heuristic search for a low-defect, well-separated map: seeded random
/// restarts plus single-image hill climbing. Scoring stays exact; only the
/// search is heuristic.
SoficMap sofic_search(const PartialStructure& p, std::uint32_t degree, std::uint64_t budget,
                      std::uint64_t seed);

}  // namespace grouplab
