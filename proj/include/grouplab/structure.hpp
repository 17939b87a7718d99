#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "grouplab/parallel.hpp"
#include "grouplab/subgroup.hpp"

namespace grouplab {

// --- series -------------------------------------------------------------------

/// [H,H]: normal closure inside H of the commutators of H's generators.
SubgroupMask derived_subgroup(const SubgroupMask& h);

/// G = G^(0) > G^(1) > ... listed until stable (last entry repeated once is
/// dropped). Soluble iff the last entry is trivial.
std::vector<SubgroupMask> derived_series(const GroupPtr& g);

/// G = L_1 >= L_2 = [G, L_1] >= ... until stable.
std::vector<SubgroupMask> lower_central_series(const GroupPtr& g);

bool is_abelian(const GroupPtr& g);
bool is_soluble_mask(const SubgroupMask& h);
std::optional<int> derived_length(const GroupPtr& g);      // nullopt if not soluble
std::optional<int> nilpotency_class(const GroupPtr& g);    // nullopt if not nilpotent
std::optional<int> nilpotency_class_mask(const SubgroupMask& h);

// --- radicals and socle ---------------------------------------------------------

/// Largest soluble normal subgroup, computed as the join of the soluble
/// normal closures ncl(x) over class representatives (sound and complete:
/// every soluble normal closure lies in the radical, and every element of the
/// radical has a soluble normal closure).
SubgroupMask soluble_radical(const GroupPtr& g);

/// Minimal nontrivial normal subgroups: a candidate N = ncl(x) is minimal iff
/// ncl(y) = N for every nontrivial y in N.
std::vector<SubgroupMask> minimal_normal_subgroups(const GroupPtr& g);

SubgroupMask socle(const GroupPtr& g);

/// No nontrivial normal abelian subgroup, decided as "every minimal normal
/// subgroup is nonabelian" (equivalent to the radical being trivial).
bool is_semisimple(const GroupPtr& g);

/// All normal subgroups: join-closure of the single-element normal closures.
/// Errors with cap-exceeded when the lattice grows past `cap` entries.
std::vector<SubgroupMask> normal_subgroup_lattice(const GroupPtr& g, std::size_t cap = 8192);

// --- CSA, centralizer chains ----------------------------------------------------

struct CsaResult {
  bool csa = false;
  enum class FailKind { none, nonabelian_centralizer, malnormality };
  FailKind fail = FailKind::none;
  // nonabelian_centralizer: x with C(x) nonabelian.
  // malnormality: x, y not in C(x), z != 1 in C(x) meet C(x)^y.
  std::uint32_t x = 0, y = 0, z = 0;
};
CsaResult is_csa(const GroupPtr& g);

/// Longest strict chain of centralizer subgroups, counted in steps (an
/// abelian group has c-dimension 0). The centralizer lattice is the closure
/// of the element centralizers under intersection.
std::uint32_t c_dimension(const GroupPtr& g);

// --- rank, exponent, width -------------------------------------------------------

/// Least size of a generating tuple of the subgroup h.
std::uint32_t min_generators(const SubgroupMask& h);

enum class RankMode { exact, sampled };
struct RankResult {
  std::uint32_t value = 0;
  bool exact = false;
};
/// Exact mode enumerates every subgroup (iterated one-element extensions) and
/// maximizes min_generators; errors with cap-exceeded above `exact_cap`.
/// Sampled mode reports a lower bound from random tuple closures.
RankResult prufer_rank(const GroupPtr& g, RankMode mode, std::uint32_t exact_cap = 256,
                       std::uint32_t sample_budget = 32, std::uint64_t seed = 1);

std::uint64_t exponent(const GroupPtr& g);

struct MaxKGenerated {
  std::uint32_t max_size = 1;
  bool exact = false;
  std::uint64_t tuples_tried = 0;
};
/// Largest k-generated subgroup; exhaustive (first coordinate over class
/// representatives) when the tuple count fits the budget, sampled otherwise.
MaxKGenerated max_k_generated(const GroupPtr& g, int k, std::uint64_t budget = 200000,
                              std::uint64_t seed = 1);

/// Least w such that every element of [G,G] is a product of w commutators
/// (0 for abelian groups).
std::uint32_t commutator_width(const GroupPtr& g);

/// Exists normal N <= M <= G with N nilpotent of class <= c, M/N abelian and
/// [G:M] <= f; decided by scanning normal subgroups M of index <= f and
/// testing the nilpotency class of [M,M].
bool nilpotent_by_abelian_by_index(const GroupPtr& g, int c, int f);

// --- report -------------------------------------------------------------------

struct ReportOptions {
  std::vector<int> ks = {1, 2};
  std::uint64_t tuple_budget = 200000;
  std::uint32_t prufer_exact_cap = 256;
  std::uint32_t prufer_sample_budget = 32;
  std::uint64_t seed = 1;
};

struct StructureReport {
  std::string description;
  std::uint32_t order = 1;
  std::uint64_t exponent = 1;
  bool abelian = true, nilpotent = true, soluble = true;
  std::optional<int> nilpotency_class;  // set if nilpotent
  std::optional<int> derived_length;    // set if soluble
  SubgroupMask radical;
  SubgroupMask socle;
  bool semisimple = false;
  bool csa = false;
  std::uint32_t c_dim = 0;
  RankResult rank;
  std::uint32_t min_generating_number = 0;
  std::uint32_t width = 0;
  std::map<int, MaxKGenerated> k_generated;
  // weakly-of-bounded-rank data: rank of rad(G) and the socle index inside
  // G/rad(G); no threshold is attached, the numbers are just exposed.
  RankResult radical_rank;
  std::uint32_t semisimple_quotient_order = 1;
  std::uint32_t socle_index_in_quotient = 1;

  nlohmann::json to_json() const;
};

StructureReport structure_report(const GroupPtr& g, const ReportOptions& opts = {});

}  // namespace grouplab
