#include "grouplab/growth.hpp"

#include <algorithm>
#include <random>
#include <unordered_set>

#include "grouplab/errors.hpp"

namespace grouplab {

std::uint64_t free_ball_size(int n, bool symmetric) {
  if (n < 0) raise(ErrorKind::invalid_parameter, "free_ball_size needs n >= 0");
  if (n == 0) return 1;
  if (symmetric) {
    if (n > 39) raise(ErrorKind::cap_exceeded, "free ball size overflows u64 past n = 39");
    std::uint64_t p = 1;
    for (int i = 0; i < n; ++i) p *= 3;
    return 2 * p - 1;
  }
  if (n > 62) raise(ErrorKind::cap_exceeded, "free ball size overflows u64 past n = 62");
  return (std::uint64_t{1} << (n + 1)) - 1;
}

namespace {

void check_free_bound(const std::vector<std::uint64_t>& sizes, bool symmetric) {
  for (std::size_t r = 0; r < sizes.size(); ++r)
    if (sizes[r] > free_ball_size(static_cast<int>(r), symmetric))
      raise(ErrorKind::invalid_parameter, "ball exceeded the free bound (internal)");
}

/// Generic level BFS. Elem is uint32_t (tabled) or Permutation (native);
/// Step multiplies, Seen tracks membership and reports the running count.
template <class Elem, class Step, class Seen>
std::vector<std::uint64_t> bfs_sizes(const Elem& identity, const std::vector<Elem>& alphabet,
                                     int n, Step&& step, Seen&& seen) {
  std::vector<std::uint64_t> sizes{1};
  std::vector<Elem> frontier{identity};
  seen.insert(identity);
  for (int r = 1; r <= n && !frontier.empty(); ++r) {
    std::vector<Elem> next;
    for (const Elem& e : frontier) {
      for (const Elem& a : alphabet) {
        Elem y = step(e, a);
        if (seen.insert(y)) next.push_back(std::move(y));
      }
    }
    sizes.push_back(seen.count());
    frontier = std::move(next);
  }
  while (static_cast<int>(sizes.size()) <= n) sizes.push_back(sizes.back());
  return sizes;
}

struct TabledSeen {
  std::vector<std::uint8_t> mark;
  std::uint64_t n = 0;
  explicit TabledSeen(std::uint32_t order) : mark(order, 0) {}
  bool insert(std::uint32_t x) {
    if (mark[x]) return false;
    mark[x] = 1;
    ++n;
    return true;
  }
  std::uint64_t count() const { return n; }
};

struct NativeSeen {
  std::unordered_set<Permutation, PermutationHash> set;
  std::uint64_t cap;
  explicit NativeSeen(std::uint64_t store_cap) : cap(store_cap) {}
  bool insert(const Permutation& p) {
    if (set.size() >= cap && set.find(p) == set.end())
      raise(ErrorKind::budget_exceeded,
            "ball element store exceeded " + std::to_string(cap) + " elements");
    return set.insert(p).second;
  }
  std::uint64_t count() const { return set.size(); }
};

std::vector<std::uint32_t> tabled_alphabet(const FiniteGroup& g, std::uint32_t a,
                                           std::uint32_t b, bool symmetric) {
  std::vector<std::uint32_t> alpha{a, b};
  if (symmetric) {
    alpha.push_back(g.inv(a));
    alpha.push_back(g.inv(b));
  }
  std::sort(alpha.begin(), alpha.end());
  alpha.erase(std::unique(alpha.begin(), alpha.end()), alpha.end());
  return alpha;
}

std::vector<Permutation> native_alphabet(const Permutation& a, const Permutation& b,
                                         bool symmetric) {
  std::vector<Permutation> alpha{a, b};
  if (symmetric) {
    alpha.push_back(a.inverse());
    alpha.push_back(b.inverse());
  }
  std::sort(alpha.begin(), alpha.end());
  alpha.erase(std::unique(alpha.begin(), alpha.end()), alpha.end());
  return alpha;
}

}  // namespace

BallProfile ball_profile(const GroupPtr& g, std::uint32_t a, std::uint32_t b, int n,
                         bool symmetric) {
  g->require_tabled("ball_profile(id pair)");
  if (n < 0 || a >= g->order() || b >= g->order())
    raise(ErrorKind::invalid_parameter, "bad ball_profile arguments");
  BallProfile out;
  out.symmetric = symmetric;
  out.a_name = g->element_name(a);
  out.b_name = g->element_name(b);
  TabledSeen seen(g->order());
  out.sizes = bfs_sizes<std::uint32_t>(
      0u, tabled_alphabet(*g, a, b, symmetric), n,
      [&g](std::uint32_t x, std::uint32_t y) { return g->mul(x, y); }, seen);
  check_free_bound(out.sizes, symmetric);
  return out;
}

BallProfile ball_profile(const Permutation& a, const Permutation& b, int n, bool symmetric,
                         std::uint64_t store_cap) {
  if (a.degree() != b.degree())
    raise(ErrorKind::invalid_parameter, "ball_profile pair degree mismatch");
  BallProfile out;
  out.symmetric = symmetric;
  out.a_name = a.cycle_string();
  out.b_name = b.cycle_string();
  NativeSeen seen(store_cap);
  out.sizes = bfs_sizes<Permutation>(
      Permutation(a.degree()), native_alphabet(a, b, symmetric), n,
      [](const Permutation& p, const Permutation& q) { return p.compose(q); }, seen);
  check_free_bound(out.sizes, symmetric);
  return out;
}

namespace {

/// Largest r <= n_max with |B(r)| = free(r); stops growing at the first
/// mismatch, which is sound because the deficit only widens with the radius.
/// Balls that still match the free count are tiny, so a sorted flat vector
/// beats hashing here.
template <class Elem, class Step>
int pair_degree(const Elem& identity, const std::vector<Elem>& alphabet, int n_max,
                bool symmetric, Step&& step) {
  std::vector<Elem> frontier{identity};
  std::vector<Elem> sorted{identity};
  std::uint64_t count = 1;
  for (int r = 1; r <= n_max; ++r) {
    std::vector<Elem> next;
    for (const Elem& e : frontier) {
      for (const Elem& a : alphabet) {
        Elem y = step(e, a);
        auto it = std::lower_bound(sorted.begin(), sorted.end(), y);
        if (it == sorted.end() || !(*it == y)) {
          sorted.insert(it, y);
          next.push_back(std::move(y));
          ++count;
        }
      }
    }
    if (count != free_ball_size(r, symmetric)) return r - 1;
    frontier = std::move(next);
  }
  return n_max;
}

Permutation random_permutation(std::uint32_t degree, bool even_only, std::mt19937_64& rng) {
  std::vector<std::uint32_t> img(degree);
  for (std::uint32_t i = 0; i < degree; ++i) img[i] = i;
  for (std::uint32_t i = degree; i > 1; --i) {
    std::uniform_int_distribution<std::uint32_t> pick(0, i - 1);
    std::swap(img[i - 1], img[pick(rng)]);
  }
  Permutation p(std::move(img));
  if (even_only && !p.is_even()) {
    auto im = p.images();
    std::swap(im[0], im[1]);
    p = Permutation(std::move(im));
  }
  return p;
}

}  // namespace

ApproxReport approx_degree(const GroupPtr& g, int n_max, bool symmetric, std::uint64_t budget,
                           std::uint64_t seed, Exec exec) {
  if (n_max < 1) raise(ErrorKind::invalid_parameter, "approx_degree needs n_max >= 1");
  ApproxReport out;
  out.group = g->description();
  out.symmetric = symmetric;
  out.radius_limit = n_max;

  if (g->is_tabled()) {
    const auto& reps = g->class_reps();
    const std::uint64_t n = g->order();
    const std::uint64_t total = reps.size() * n;
    const std::uint64_t scan = std::min(total, budget);
    out.exhaustive = scan == total;
    out.pairs_tried = scan;

    std::vector<int> degree(scan, 0);
    parallel_for(exec, static_cast<std::int64_t>(scan), [&](std::int64_t i) {
      const std::uint32_t a = reps[static_cast<std::size_t>(i / static_cast<std::int64_t>(n))];
      const auto b = static_cast<std::uint32_t>(i % static_cast<std::int64_t>(n));
      degree[static_cast<std::size_t>(i)] = pair_degree<std::uint32_t>(
          0u, tabled_alphabet(*g, a, b, symmetric), n_max, symmetric,
          [&g](std::uint32_t x, std::uint32_t y) { return g->mul(x, y); });
    });
    std::uint64_t best_at = 0;
    for (std::uint64_t i = 0; i < scan; ++i) {
      if (degree[i] > out.best_degree) {
        out.best_degree = degree[i];
        best_at = i;
      }
    }
    if (out.best_degree > 0 || scan > 0) {
      const std::uint32_t a = reps[static_cast<std::size_t>(best_at / n)];
      const auto b = static_cast<std::uint32_t>(best_at % n);
      out.witness_a = g->element_name(a);
      out.witness_b = g->element_name(b);
    }
    return out;
  }

  // permutation-native: seeded random pairs
  const std::uint32_t deg = g->degree();
  const bool even_only = !g->generator_permutations().empty() &&
                         std::all_of(g->generator_permutations().begin(),
                                     g->generator_permutations().end(),
                                     [](const Permutation& p) { return p.is_even(); });
  out.exhaustive = false;
  out.pairs_tried = budget;

  std::vector<int> degree(budget, 0);
  std::vector<std::pair<Permutation, Permutation>> pairs(budget);
  {
    std::mt19937_64 rng(seed);
    for (std::uint64_t i = 0; i < budget; ++i) {
      pairs[i].first = random_permutation(deg, even_only, rng);
      pairs[i].second = random_permutation(deg, even_only, rng);
    }
  }
  parallel_for(exec, static_cast<std::int64_t>(budget), [&](std::int64_t i) {
    degree[static_cast<std::size_t>(i)] = pair_degree<Permutation>(
        Permutation(deg), native_alphabet(pairs[static_cast<std::size_t>(i)].first,
                                          pairs[static_cast<std::size_t>(i)].second, symmetric),
        n_max, symmetric,
        [](const Permutation& p, const Permutation& q) { return p.compose(q); });
  });
  std::uint64_t best_at = 0;
  for (std::uint64_t i = 0; i < budget; ++i) {
    if (degree[i] > out.best_degree) {
      out.best_degree = degree[i];
      best_at = i;
    }
  }
  if (budget > 0) {
    out.witness_a = pairs[best_at].first.cycle_string();
    out.witness_b = pairs[best_at].second.cycle_string();
  }
  return out;
}

}  // namespace grouplab
