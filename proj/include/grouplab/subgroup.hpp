#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "grouplab/finite_group.hpp"

namespace grouplab {

/// Membership mask over a parent group's element ids. The unit of all
/// structural computation: closures, radicals, socles, centralizers are all
/// masks. Value type; bit operations are word-wide.
class SubgroupMask {
 public:
  SubgroupMask() = default;
  explicit SubgroupMask(GroupPtr parent);

  const GroupPtr& parent() const { return parent_; }
  std::uint32_t size() const { return size_; }
  bool trivial() const { return size_ == 1; }
  bool full() const { return parent_ && size_ == parent_->order(); }

  bool contains(std::uint32_t id) const {
    return (bits_[id >> 6] >> (id & 63)) & 1u;
  }
  void add(std::uint32_t id) {
    const std::uint64_t bit = 1ull << (id & 63);
    if (!(bits_[id >> 6] & bit)) {
      bits_[id >> 6] |= bit;
      ++size_;
    }
  }

  std::vector<std::uint32_t> members() const;

  bool operator==(const SubgroupMask& o) const { return bits_ == o.bits_; }
  bool operator!=(const SubgroupMask& o) const { return !(*this == o); }
  bool is_subset_of(const SubgroupMask& o) const;

  SubgroupMask intersect(const SubgroupMask& o) const;

  const std::vector<std::uint64_t>& words() const { return bits_; }
  std::uint64_t hash() const;

 private:
  GroupPtr parent_;
  std::vector<std::uint64_t> bits_;
  std::uint32_t size_ = 0;
};

// --- subgroup operations (all require cayley-table backing) -----------------

/// Smallest subgroup containing `seed` (BFS over right multiplication).
SubgroupMask closure(const GroupPtr& parent, const std::vector<std::uint32_t>& seed);

/// Smallest normal subgroup containing `seed`.
SubgroupMask normal_closure(const GroupPtr& parent, const std::vector<std::uint32_t>& seed);

bool is_subgroup(const SubgroupMask& m);
bool is_normal(const SubgroupMask& m);
bool is_abelian_mask(const SubgroupMask& m);

/// Short generating list for a subgroup mask (greedy; not guaranteed minimal).
std::vector<std::uint32_t> subgroup_generators(const SubgroupMask& m);

/// Join <A, B> of two subgroups of the same parent.
SubgroupMask join(const SubgroupMask& a, const SubgroupMask& b);

/// Conjugate subgroup m^g.
SubgroupMask conjugate_mask(const SubgroupMask& m, std::uint32_t g);

SubgroupMask centralizer(const GroupPtr& parent, const std::vector<std::uint32_t>& s);
SubgroupMask center(const GroupPtr& parent);

SubgroupMask trivial_mask(const GroupPtr& parent);
SubgroupMask full_mask(const GroupPtr& parent);

/// Coset group G/N together with the natural projection (id -> coset id).
/// Errors with not-normal when N is not conjugation-stable.
struct Quotient {
  GroupPtr group;
  std::vector<std::uint32_t> projection;
};
Quotient quotient(const GroupPtr& parent, const SubgroupMask& n);

/// The subgroup as a standalone tabled group plus the member list mapping new
/// ids to parent ids (new id 0 = identity).
struct SubgroupGroup {
  GroupPtr group;
  std::vector<std::uint32_t> to_parent;
};
SubgroupGroup subgroup_as_group(const SubgroupMask& m);

/// Conjugacy class representatives of a subgroup under its own conjugation
/// action (parent-group classes are cached on FiniteGroup instead).
std::vector<std::uint32_t> subgroup_class_reps(const SubgroupMask& m);

}  // namespace grouplab
