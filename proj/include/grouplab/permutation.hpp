#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace grouplab {

/// Permutation of {0..degree-1} stored as its image array.
/// Composition convention: (p.compose(q))(i) = p(q(i)), i.e. q acts first.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::uint32_t degree);               // identity
  explicit Permutation(std::vector<std::uint32_t> images);  // validates bijection

  static Permutation from_cycles(std::uint32_t degree,
                                 const std::vector<std::vector<std::uint32_t>>& cycles);
  /// Parses 0-based cycle notation, e.g. "(0 1)(2 3)" or "(0,1,2)".
  /// An empty string or "()" is the identity.
  static Permutation parse_cycles(std::uint32_t degree, std::string_view text);

  std::uint32_t degree() const { return static_cast<std::uint32_t>(images_.size()); }
  std::uint32_t operator()(std::uint32_t i) const { return images_[i]; }
  const std::vector<std::uint32_t>& images() const { return images_; }

  Permutation compose(const Permutation& q) const;
  Permutation inverse() const;
  bool is_identity() const;
  bool is_even() const;

  std::string cycle_string() const;  // "(0 1 2)(3 4)", identity prints "()"

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.images_ == b.images_;
  }
  friend bool operator!=(const Permutation& a, const Permutation& b) { return !(a == b); }
  friend bool operator<(const Permutation& a, const Permutation& b) {
    return a.images_ < b.images_;
  }

  std::size_t hash() const;

 private:
  std::vector<std::uint32_t> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const { return p.hash(); }
};

}  // namespace grouplab
