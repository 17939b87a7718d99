#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "grouplab/finite_group.hpp"
#include "grouplab/parallel.hpp"

namespace grouplab {

struct WordCyclicForm;
struct WordRoot;

/// Reduced word over {x, y, x^-1, y^-1}. Letters are +1/-1 for x/x^-1 and
/// +2/-2 for y/y^-1; adjacent inverse pairs are cancelled eagerly, so equal
/// words have equal letter sequences.
class FreeWord {
 public:
  FreeWord() = default;

  static FreeWord letter(int l);
  static FreeWord x() { return letter(1); }
  static FreeWord y() { return letter(2); }

  /// Word syntax: letters `x y X Y` (uppercase = inverse), juxtaposition,
  /// parentheses, `^n` powers (n may be negative) and `[u,v]` commutator
  /// sugar. Whitespace and `*` are ignored.
  static FreeWord parse(std::string_view text);

  bool empty() const { return letters_.empty(); }
  std::size_t length() const { return letters_.size(); }
  const std::vector<std::int8_t>& letters() const { return letters_; }

  FreeWord operator*(const FreeWord& o) const;
  FreeWord inverse() const;
  FreeWord pow(std::int64_t e) const;
  static FreeWord commutator(const FreeWord& u, const FreeWord& v);

  /// Cyclic decomposition w = u p u^-1 with p cyclically reduced.
  WordCyclicForm cyclic_form() const;

  /// Primitive root: the unique r with w = r^e, e maximal (e >= 1).
  WordRoot primitive_root() const;  // requires nonempty

  std::string str() const;  // compact, e.g. "xyXY"; empty word prints "1"

  friend bool operator==(const FreeWord& a, const FreeWord& b) {
    return a.letters_ == b.letters_;
  }
  friend bool operator!=(const FreeWord& a, const FreeWord& b) { return !(a == b); }

 private:
  static FreeWord from_letters(std::vector<std::int8_t> raw);  // reduces
  std::vector<std::int8_t> letters_;
};

struct WordCyclicForm {
  FreeWord conjugator;  // u
  FreeWord core;        // p
};

struct WordRoot {
  FreeWord root;
  std::int64_t exponent = 1;
};

/// Substitutes a for x and b for y and multiplies out.
std::uint32_t evaluate_word(const FreeWord& w, const FiniteGroup& g, std::uint32_t a,
                            std::uint32_t b);

/// Whole-group identity check. Scans the first variable over conjugacy class
/// representatives only (sound: t(x^g, y^g) = t(x,y)^g); on failure carries
/// the first witness pair in scan order, which is independent of the thread
/// count.
struct IdentityScan {
  bool holds = false;
  std::optional<std::pair<std::uint32_t, std::uint32_t>> witness;
  std::uint64_t pairs_scanned = 0;
};
IdentityScan satisfies_identity(const GroupPtr& g, const FreeWord& w,
                                Exec exec = Exec::parallel);

/// Single identity equivalent to the pointwise disjunction t1 = 1 or t2 = 1:
/// the commutator [t1,t2] when the two words do not commute in F_2, otherwise
/// r^(e1*e2) for their common primitive root r. Errors on empty input.
FreeWord combine_identities(const FreeWord& t1, const FreeWord& t2);

}  // namespace grouplab
