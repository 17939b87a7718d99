// Test-only oracles. Each one recomputes a quantity by brute force along a
// different algorithmic route than the library uses, so the two can
// cross-check each other.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "grouplab/finite_group.hpp"
#include "grouplab/partial_structure.hpp"
#include "grouplab/permutation.hpp"
#include "grouplab/subgroup.hpp"

namespace oracles {

using namespace grouplab;

/// Count of distinct reduced words of length <= n over {x,y,x^-1,y^-1}
/// (symmetric) or of arbitrary words over {x,y} (positive), by explicit
/// enumeration.
inline std::uint64_t reduced_word_count(int n, bool symmetric) {
  if (!symmetric) {
    std::uint64_t total = 0, level = 1;
    for (int r = 0; r <= n; ++r, level *= 2) total += level;
    return total;
  }
  std::uint64_t total = 1;  // empty word
  // words as letter sequences avoiding adjacent inverses; count by DFS levels
  std::vector<std::vector<int>> frontier{{}};
  for (int r = 1; r <= n; ++r) {
    std::vector<std::vector<int>> next;
    for (const auto& w : frontier) {
      for (int l : {1, -1, 2, -2}) {
        if (!w.empty() && w.back() == -l) continue;
        auto v = w;
        v.push_back(l);
        next.push_back(std::move(v));
      }
    }
    total += next.size();
    frontier = std::move(next);
  }
  return total;
}

/// Every normal subgroup of g, enumerated as ncl(S) over all subsets S of
/// conjugacy class representatives. A normal subgroup is a union of classes,
/// so this enumeration is complete.
inline std::vector<SubgroupMask> all_normal_subgroups(const GroupPtr& g) {
  const auto& reps = g->class_reps();
  std::vector<std::uint32_t> nontrivial;
  for (std::uint32_t r : reps)
    if (r != 0) nontrivial.push_back(r);
  std::set<std::vector<std::uint64_t>> seen;
  std::vector<SubgroupMask> out;
  const std::uint64_t subsets = 1ull << nontrivial.size();
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    std::vector<std::uint32_t> seed;
    for (std::size_t i = 0; i < nontrivial.size(); ++i)
      if (mask & (1ull << i)) seed.push_back(nontrivial[i]);
    SubgroupMask n = normal_closure(g, seed);
    if (seen.insert(n.words()).second) out.push_back(std::move(n));
  }
  return out;
}

/// Solubility by repeatedly taking the full commutator set of all member
/// pairs (not generator commutators, which is the library's route).
inline bool soluble_by_full_commutators(const SubgroupMask& h) {
  const auto& g = h.parent();
  SubgroupMask cur = h;
  while (cur.size() > 1) {
    std::vector<std::uint32_t> comms;
    const auto mem = cur.members();
    for (std::uint32_t a : mem)
      for (std::uint32_t b : mem) comms.push_back(g->commutator(a, b));
    SubgroupMask next = closure(g, comms);
    if (next == cur) return false;
    cur = std::move(next);
  }
  return true;
}

/// Largest soluble normal subgroup via the full normal-subgroup enumeration.
inline SubgroupMask radical_oracle(const GroupPtr& g) {
  SubgroupMask best = trivial_mask(g);
  for (const auto& n : all_normal_subgroups(g))
    if (n.size() > best.size() && soluble_by_full_commutators(n)) best = n;
  return best;
}

/// Socle via the full lattice: join of the minimal nontrivial normals.
inline SubgroupMask socle_oracle(const GroupPtr& g) {
  const auto normals = all_normal_subgroups(g);
  SubgroupMask s = trivial_mask(g);
  for (const auto& n : normals) {
    if (n.size() == 1) continue;
    bool minimal = true;
    for (const auto& m : normals)
      if (m.size() > 1 && m.size() < n.size() && m.is_subset_of(n)) {
        minimal = false;
        break;
      }
    if (minimal) s = join(s, n);
  }
  return s;
}

/// Exhaustive isomorphism test for tiny groups: tries every injective map of
/// a's generators into b and extends it by multiplicativity.
inline bool isomorphic_brute(const GroupPtr& a, const GroupPtr& b) {
  if (a->order() != b->order()) return false;
  const std::uint32_t n = a->order();
  const auto gens = a->generators();

  std::vector<std::uint32_t> image;
  auto extend = [&](auto&& self, std::size_t next) -> bool {
    if (next < gens.size()) {
      for (std::uint32_t target = 0; target < n; ++target) {
        image.push_back(target);
        if (self(self, next + 1)) return true;
        image.pop_back();
      }
      return false;
    }
    // grow the partial homomorphism from the generator images
    std::vector<std::uint32_t> phi(n, n);
    phi[0] = 0;
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::uint32_t x = 0; x < n; ++x) {
        if (phi[x] == n) continue;
        for (std::size_t i = 0; i < gens.size(); ++i) {
          const std::uint32_t y = a->mul(x, gens[i]);
          const std::uint32_t fy = b->mul(phi[x], image[i]);
          if (phi[y] == n) {
            phi[y] = fy;
            grew = true;
          } else if (phi[y] != fy) {
            return false;
          }
        }
      }
    }
    std::vector<bool> hit(n, false);
    for (std::uint32_t x = 0; x < n; ++x) {
      if (phi[x] == n || hit[phi[x]]) return false;
      hit[phi[x]] = true;
    }
    for (std::uint32_t x = 0; x < n; ++x)
      for (std::uint32_t y = 0; y < n; ++y)
        if (phi[a->mul(x, y)] != b->mul(phi[x], phi[y])) return false;
    return true;
  };
  return extend(extend, 0);
}

/// Longest strict chain length (in steps) among centralizers of arbitrary
/// subsets; feasible for |G| <= 10 or so.
inline std::uint32_t c_dimension_subsets_oracle(const GroupPtr& g) {
  const std::uint32_t n = g->order();
  std::set<std::vector<std::uint64_t>> seen;
  std::vector<SubgroupMask> cents;
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    std::vector<std::uint32_t> subset;
    for (std::uint32_t i = 0; i < n; ++i)
      if (mask & (1ull << i)) subset.push_back(i);
    SubgroupMask c = centralizer(g, subset);
    if (seen.insert(c.words()).second) cents.push_back(std::move(c));
  }
  std::sort(cents.begin(), cents.end(),
            [](const SubgroupMask& a, const SubgroupMask& b) { return a.size() < b.size(); });
  std::vector<std::uint32_t> len(cents.size(), 0);
  std::uint32_t best = 0;
  for (std::size_t i = 0; i < cents.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j)
      if (cents[j].size() < cents[i].size() && cents[j].is_subset_of(cents[i]))
        len[i] = std::max(len[i], len[j] + 1);
    best = std::max(best, len[i]);
  }
  return best;
}

/// Exhaustive enumeration of all injective maps; the reference for
/// lef_embed's completeness on tiny instances.
inline bool lef_embeddable_exhaustive(const PartialStructure& p, const GroupPtr& g) {
  const std::uint32_t n = g->order();
  if (p.labels.size() > n) return false;
  std::vector<std::uint32_t> map(p.labels.size());
  std::vector<bool> used(n, false);
  auto ok = [&](std::size_t assigned) {
    for (const auto& [key, value] : p.products) {
      if (key.first >= assigned || key.second >= assigned || value >= assigned) continue;
      if (g->mul(map[key.first], map[key.second]) != map[value]) return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, std::size_t l) -> bool {
    if (l == p.labels.size()) return true;
    for (std::uint32_t id = 0; id < n; ++id) {
      if (used[id]) continue;
      map[l] = id;
      used[id] = true;
      if (ok(l + 1) && self(self, l + 1)) return true;
      used[id] = false;
    }
    return false;
  };
  return rec(rec, 0);
}

/// Minimum Folner witness size by scanning every nonempty subset.
inline std::uint32_t folner_min_oracle(const GroupPtr& g, const std::vector<std::uint32_t>& a,
                                       std::int64_t eps_num, std::int64_t eps_den) {
  const std::uint32_t n = g->order();
  std::uint32_t best = n + 1;
  for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
    std::set<std::uint32_t> av;
    std::uint32_t size = 0;
    for (std::uint32_t v = 0; v < n; ++v) {
      if (!(mask & (1ull << v))) continue;
      ++size;
      for (std::uint32_t x : a) av.insert(g->mul(x, v));
    }
    if (static_cast<std::int64_t>(av.size()) * eps_den <
        (eps_den + eps_num) * static_cast<std::int64_t>(size))
      best = std::min(best, size);
  }
  return best;
}

/// Independent ball BFS over explicit permutations with a std::set store.
inline std::vector<std::uint64_t> ball_sizes_oracle(const Permutation& a, const Permutation& b,
                                                    int n, bool symmetric) {
  std::vector<Permutation> alphabet{a, b};
  if (symmetric) {
    alphabet.push_back(a.inverse());
    alphabet.push_back(b.inverse());
  }
  std::set<Permutation> seen{Permutation(a.degree())};
  std::vector<Permutation> frontier{Permutation(a.degree())};
  std::vector<std::uint64_t> sizes{1};
  for (int r = 1; r <= n; ++r) {
    std::vector<Permutation> next;
    for (const auto& e : frontier)
      for (const auto& l : alphabet) {
        Permutation y = e.compose(l);
        if (seen.insert(y).second) next.push_back(std::move(y));
      }
    sizes.push_back(seen.size());
    frontier = std::move(next);
  }
  return sizes;
}

}  // namespace oracles
