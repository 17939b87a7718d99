#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "grouplab/permutation.hpp"

namespace grouplab {

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Default enumeration cap for Cayley-table backed groups. Ids are stored as
/// 16-bit words in the multiplication table, so the cap can be raised up to
/// 65535 but no further.
inline constexpr std::uint32_t kDefaultEnumerationCap = 20000;
inline constexpr std::uint32_t kHardIdLimit = 65535;

/// A concrete finite group. Two backings:
///
///  - cayley_table: elements are dense ids 0..order-1 with id 0 the identity,
///    multiplication is a table lookup. Everything in the structure, words and
///    approximation modules requires this backing.
///  - permutation_native: only the degree and generator permutations are
///    stored (symmetric/alternating groups too large to enumerate). Only the
///    growth module operates on these.
///
/// Instances are immutable after construction and safe to share across
/// threads. Conjugacy classes of tabled groups are computed eagerly at build.
class FiniteGroup {
 public:
  enum class Backing { cayley_table, permutation_native };

  // --- construction -------------------------------------------------------

  /// Builds a tabled group from explicit permutation generators by closure
  /// enumeration (id 0 = identity). Errors with cap-exceeded when the closure
  /// grows past `cap`.
  static GroupPtr from_permutations(std::uint32_t degree,
                                    std::vector<Permutation> generators,
                                    std::string description,
                                    std::uint32_t cap = kDefaultEnumerationCap);

  /// Abstract element universe: elements are opaque codes, `mul` combines
  /// codes, `name` renders them. Closure-enumerates from the identity code,
  /// then tables. Used by the cyclic/dihedral/quaternion/wreath/direct
  /// constructions.
  struct Universe {
    std::uint64_t identity = 0;
    std::vector<std::uint64_t> generators;
    std::function<std::uint64_t(std::uint64_t, std::uint64_t)> mul;
    std::function<std::string(std::uint64_t)> name;
  };
  static GroupPtr from_universe(const Universe& u, std::string description,
                                std::uint32_t cap = kDefaultEnumerationCap);

  /// Tables a group whose ids are already dense with id 0 the identity
  /// (quotients, subgroup re-indexings). The full axiom check still runs.
  static GroupPtr from_table(std::uint32_t order,
                             const std::function<std::uint32_t(std::uint32_t, std::uint32_t)>& mul,
                             std::vector<std::uint32_t> generator_ids,
                             std::vector<std::string> names, std::string description);

  /// Permutation-native group (no enumeration); `order` may be given if the
  /// caller knows it, otherwise 0 = unknown.
  static GroupPtr permutation_native(std::uint32_t degree,
                                     std::vector<Permutation> generators,
                                     std::string description,
                                     std::uint64_t order = 0);

  // --- common --------------------------------------------------------------

  Backing backing() const { return backing_; }
  bool is_tabled() const { return backing_ == Backing::cayley_table; }
  const std::string& description() const { return description_; }
  const std::vector<std::uint32_t>& generators() const { return generator_ids_; }

  /// Order; exact for tabled groups, may be 0 (unknown) for native ones.
  std::uint64_t order_u64() const { return order64_; }
  std::uint32_t order() const;  // tabled only

  // --- tabled accessors ----------------------------------------------------

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return table_[static_cast<std::size_t>(a) * order_ + b];
  }
  std::uint32_t inv(std::uint32_t a) const { return inverse_[a]; }
  std::uint32_t conjugate(std::uint32_t x, std::uint32_t g) const {
    return mul(mul(inv(g), x), g);
  }
  std::uint32_t commutator(std::uint32_t a, std::uint32_t b) const {
    return mul(mul(mul(inv(a), inv(b)), a), b);
  }
  std::uint32_t pow(std::uint32_t x, std::int64_t e) const;
  std::uint32_t element_order(std::uint32_t x) const;

  /// Conjugacy data (tabled): class_of[x] = least id in the class of x;
  /// class_reps ascending.
  const std::vector<std::uint32_t>& class_of() const { return class_of_; }
  const std::vector<std::uint32_t>& class_reps() const { return class_reps_; }

  std::string element_name(std::uint32_t id) const;

  /// Permutation realization of an element, when the group was built from
  /// permutations; nullopt otherwise.
  std::optional<Permutation> element_permutation(std::uint32_t id) const;
  /// Id of a permutation in a permutation-built tabled group.
  std::optional<std::uint32_t> id_of_permutation(const Permutation& p) const;

  // --- native accessors ----------------------------------------------------

  std::uint32_t degree() const { return degree_; }
  const std::vector<Permutation>& generator_permutations() const { return generator_perms_; }

  void require_tabled(const char* op) const;

 private:
  FiniteGroup() = default;

  static GroupPtr finish_table(std::vector<std::uint16_t> table,
                               std::uint32_t order,
                               std::vector<std::uint32_t> generator_ids,
                               std::vector<std::string> names,
                               std::vector<Permutation> perms,
                               std::string description);
  void compute_classes();
  void verify_axioms() const;

  Backing backing_ = Backing::cayley_table;
  std::string description_;

  // tabled state
  std::uint32_t order_ = 0;
  std::uint64_t order64_ = 0;
  std::vector<std::uint16_t> table_;    // order x order, row-major
  std::vector<std::uint16_t> inverse_;  // order
  std::vector<std::uint32_t> generator_ids_;
  std::vector<std::string> names_;
  std::vector<Permutation> perms_;  // empty unless permutation-built
  std::unordered_map<Permutation, std::uint32_t, PermutationHash> perm_index_;
  std::vector<std::uint32_t> class_of_;
  std::vector<std::uint32_t> class_reps_;

  // native state
  std::uint32_t degree_ = 0;
  std::vector<Permutation> generator_perms_;
};

}  // namespace grouplab
