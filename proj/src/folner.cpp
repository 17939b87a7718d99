#include "grouplab/folner.hpp"

#include <algorithm>
#include <array>
#include <random>

#include "grouplab/errors.hpp"

namespace grouplab {

void FolnerQuery::validate() const {
  g->require_tabled("folner_search");
  if (a.empty()) raise(ErrorKind::invalid_parameter, "folner window A must be nonempty");
  for (std::uint32_t x : a)
    if (x >= g->order()) raise(ErrorKind::invalid_parameter, "window element out of range");
  if (epsilon.num <= 0 || epsilon > Rational(1))
    raise(ErrorKind::invalid_parameter, "epsilon must lie in (0, 1]");
}

namespace {

constexpr std::uint32_t kExactLimit = 16;

FolnerResult folner_exact(const FolnerQuery& q) {
  const auto& g = *q.g;
  const std::uint32_t n = g.order();
  if (n > kExactLimit)
    raise(ErrorKind::cap_exceeded, "exact folner search caps at order " +
                                       std::to_string(kExactLimit) + "; " + g.description() +
                                       " has order " + std::to_string(n));

  // per window element a, the bit image of v under left translation
  std::vector<std::array<std::uint32_t, kExactLimit>> shift(q.a.size());
  for (std::size_t i = 0; i < q.a.size(); ++i)
    for (std::uint32_t v = 0; v < n; ++v) shift[i][v] = g.mul(q.a[i], v);

  // subsets by increasing size, ascending bit-pattern within a size
  std::vector<std::vector<std::uint32_t>> by_size(n + 1);
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask)
    by_size[static_cast<std::uint32_t>(__builtin_popcount(mask))].push_back(mask);

  for (std::uint32_t s = 1; s <= n; ++s) {
    // certificate threshold: |AV| * den < (den+num) * s
    const std::int64_t limit = (q.epsilon.den + q.epsilon.num) * static_cast<std::int64_t>(s);
    for (std::uint32_t vmask : by_size[s]) {
      std::uint32_t av = 0;
      for (std::uint32_t rest = vmask; rest;) {
        const std::uint32_t v = static_cast<std::uint32_t>(__builtin_ctz(rest));
        rest &= rest - 1;
        for (std::size_t i = 0; i < q.a.size(); ++i) av |= 1u << shift[i][v];
      }
      const auto av_size = static_cast<std::int64_t>(__builtin_popcount(av));
      if (av_size * q.epsilon.den < limit) {
        FolnerResult r;
        r.exact = true;
        r.av_size = static_cast<std::uint64_t>(av_size);
        for (std::uint32_t v = 0; v < n; ++v)
          if (vmask & (1u << v)) r.v.push_back(v);
        return r;
      }
    }
  }
  raise(ErrorKind::invalid_parameter, "no folner witness found (internal; V = G certifies)");
}

FolnerResult folner_greedy(const FolnerQuery& q) {
  const auto& g = *q.g;
  const std::uint32_t n = g.order();
  std::vector<bool> in_v(n, false), in_av(n, false);
  std::vector<std::uint32_t> v;
  std::uint64_t av_size = 0;

  auto add = [&](std::uint32_t x) {
    in_v[x] = true;
    v.push_back(x);
    for (std::uint32_t a : q.a) {
      const std::uint32_t y = g.mul(a, x);
      if (!in_av[y]) {
        in_av[y] = true;
        ++av_size;
      }
    }
  };
  add(0);

  FolnerResult r;
  r.exact = false;
  while (true) {
    r.av_size = av_size;
    r.v = v;
    if (r.certificate_holds(q)) return r;
    // V = G certifies (|AG| = |G| < (1+eps)|G|), so the loop always exits
    std::uint32_t best = n;
    std::uint64_t best_new = q.a.size() + 1;
    for (std::uint32_t x = 0; x < n; ++x) {
      if (in_v[x]) continue;
      std::uint64_t added = 0;
      for (std::uint32_t a : q.a)
        if (!in_av[g.mul(a, x)]) ++added;
      if (added < best_new) {
        best_new = added;
        best = x;
      }
    }
    add(best);
  }
}

}  // namespace

FolnerResult folner_search(const FolnerQuery& q, FolnerMode mode) {
  q.validate();
  return mode == FolnerMode::exact ? folner_exact(q) : folner_greedy(q);
}

std::vector<AmenabilityCell> amenability_profile(const GroupPtr& g, std::uint32_t n,
                                                 const std::vector<Rational>& epsilons,
                                                 std::uint64_t budget, std::uint64_t seed,
                                                 Exec exec) {
  g->require_tabled("amenability_profile");
  const std::uint32_t order = g->order();
  if (n < 1 || n > order)
    raise(ErrorKind::invalid_parameter, "window size must lie in 1..order");

  // enumerate or sample the windows once; every epsilon shares them
  std::uint64_t combos = 1;
  bool exhaustive = true;
  for (std::uint32_t i = 0; i < n && exhaustive; ++i) {
    combos = combos * (order - i) / (i + 1);
    if (combos > budget) exhaustive = false;
  }

  std::vector<std::vector<std::uint32_t>> windows;
  if (exhaustive) {
    std::vector<std::uint32_t> idx(n);
    for (std::uint32_t i = 0; i < n; ++i) idx[i] = i;
    while (true) {
      windows.push_back(idx);
      std::int32_t i = static_cast<std::int32_t>(n) - 1;
      while (i >= 0 && idx[static_cast<std::uint32_t>(i)] ==
                           order - n + static_cast<std::uint32_t>(i))
        --i;
      if (i < 0) break;
      ++idx[static_cast<std::uint32_t>(i)];
      for (auto j = static_cast<std::uint32_t>(i) + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
    }
  } else {
    std::mt19937_64 rng(seed);
    for (std::uint64_t t = 0; t < budget; ++t) {
      std::vector<std::uint32_t> pool(order);
      for (std::uint32_t i = 0; i < order; ++i) pool[i] = i;
      for (std::uint32_t i = 0; i < n; ++i) {
        std::uniform_int_distribution<std::uint32_t> pick(i, order - 1);
        std::swap(pool[i], pool[pick(rng)]);
      }
      windows.emplace_back(pool.begin(), pool.begin() + n);
    }
  }

  const FolnerMode mode = order <= 16 ? FolnerMode::exact : FolnerMode::greedy;
  std::vector<AmenabilityCell> cells(epsilons.size());
  const std::int64_t total =
      static_cast<std::int64_t>(epsilons.size()) * static_cast<std::int64_t>(windows.size());
  std::vector<std::uint32_t> min_v(static_cast<std::size_t>(total), 0);
  parallel_for(exec, total, [&](std::int64_t i) {
    const auto e = static_cast<std::size_t>(i) / windows.size();
    const auto w = static_cast<std::size_t>(i) % windows.size();
    FolnerQuery q{g, windows[w], epsilons[e]};
    min_v[static_cast<std::size_t>(i)] =
        static_cast<std::uint32_t>(folner_search(q, mode).v.size());
  });

  for (std::size_t e = 0; e < epsilons.size(); ++e) {
    auto& cell = cells[e];
    cell.epsilon = epsilons[e];
    cell.set_size = n;
    cell.windows_tried = windows.size();
    cell.exact = exhaustive && mode == FolnerMode::exact;
    cell.alpha_hat = 0;
    for (std::size_t w = 0; w < windows.size(); ++w)
      cell.alpha_hat = std::max(cell.alpha_hat, min_v[e * windows.size() + w]);
  }
  return cells;
}

}  // namespace grouplab
