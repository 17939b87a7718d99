#include "grouplab/structure.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <unordered_map>

#include "grouplab/errors.hpp"

namespace grouplab {

namespace {

/// Normal closure of `seeds` inside the subgroup with generators `ambient_gens`.
SubgroupMask ncl_in(const GroupPtr& g, const std::vector<std::uint32_t>& ambient_gens,
                    std::vector<std::uint32_t> seeds) {
  SubgroupMask m = closure(g, seeds);
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::uint32_t x : m.members()) {
      for (std::uint32_t a : ambient_gens) {
        const std::uint32_t c = g->conjugate(x, a);
        if (!m.contains(c)) {
          seeds.push_back(c);
          grew = true;
        }
      }
    }
    if (grew) m = closure(g, seeds);
  }
  return m;
}

/// Deduplicating collection of subgroup masks keyed by content.
struct MaskSet {
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> by_hash;
  std::vector<SubgroupMask> items;

  bool insert(const SubgroupMask& m) {
    auto& bucket = by_hash[m.hash()];
    for (std::size_t idx : bucket)
      if (items[idx] == m) return false;
    bucket.push_back(items.size());
    items.push_back(m);
    return true;
  }
  bool contains(const SubgroupMask& m) const {
    auto it = by_hash.find(m.hash());
    if (it == by_hash.end()) return false;
    for (std::size_t idx : it->second)
      if (items[idx] == m) return true;
    return false;
  }
};

}  // namespace

SubgroupMask derived_subgroup(const SubgroupMask& h) {
  const auto& g = h.parent();
  const auto gens = subgroup_generators(h);
  std::vector<std::uint32_t> seeds;
  for (std::uint32_t a : gens)
    for (std::uint32_t b : gens)
      if (a != b) seeds.push_back(g->commutator(a, b));
  return ncl_in(g, gens, std::move(seeds));
}

std::vector<SubgroupMask> derived_series(const GroupPtr& g) {
  std::vector<SubgroupMask> series{full_mask(g)};
  while (true) {
    SubgroupMask next = derived_subgroup(series.back());
    if (next == series.back()) break;
    series.push_back(std::move(next));
  }
  return series;
}

std::vector<SubgroupMask> lower_central_series(const GroupPtr& g) {
  std::vector<SubgroupMask> series{full_mask(g)};
  const auto g_gens = g->generators();
  while (true) {
    const auto term_gens = subgroup_generators(series.back());
    std::vector<std::uint32_t> seeds;
    for (std::uint32_t a : g_gens)
      for (std::uint32_t b : term_gens) seeds.push_back(g->commutator(a, b));
    SubgroupMask next = ncl_in(g, g_gens, std::move(seeds));
    if (next == series.back()) break;
    series.push_back(std::move(next));
  }
  return series;
}

bool is_abelian(const GroupPtr& g) {
  const auto& gens = g->generators();
  for (std::uint32_t a : gens)
    for (std::uint32_t b : gens)
      if (g->mul(a, b) != g->mul(b, a)) return false;
  return true;
}

bool is_soluble_mask(const SubgroupMask& h) {
  SubgroupMask cur = h;
  while (true) {
    SubgroupMask next = derived_subgroup(cur);
    if (next.trivial()) return true;
    if (next == cur) return false;
    cur = std::move(next);
  }
}

std::optional<int> derived_length(const GroupPtr& g) {
  const auto series = derived_series(g);
  if (!series.back().trivial()) return std::nullopt;
  return static_cast<int>(series.size()) - 1;
}

std::optional<int> nilpotency_class_mask(const SubgroupMask& h) {
  const auto& g = h.parent();
  const auto h_gens = subgroup_generators(h);
  std::vector<SubgroupMask> series{h};
  while (true) {
    const auto term_gens = subgroup_generators(series.back());
    std::vector<std::uint32_t> seeds;
    for (std::uint32_t a : h_gens)
      for (std::uint32_t b : term_gens) seeds.push_back(g->commutator(a, b));
    SubgroupMask next = ncl_in(g, h_gens, std::move(seeds));
    if (next == series.back()) break;
    series.push_back(std::move(next));
  }
  if (!series.back().trivial()) return std::nullopt;
  return static_cast<int>(series.size()) - 1;
}

std::optional<int> nilpotency_class(const GroupPtr& g) {
  const auto series = lower_central_series(g);
  if (!series.back().trivial()) return std::nullopt;
  return static_cast<int>(series.size()) - 1;
}

// --- radicals -------------------------------------------------------------------

SubgroupMask soluble_radical(const GroupPtr& g) {
  g->require_tabled("soluble_radical");
  SubgroupMask rad = trivial_mask(g);
  for (std::uint32_t rep : g->class_reps()) {
    if (rep == 0 || rad.contains(rep)) continue;
    SubgroupMask n = normal_closure(g, {rep});
    if (is_soluble_mask(n)) rad = join(rad, n);
  }
  return rad;
}

std::vector<SubgroupMask> minimal_normal_subgroups(const GroupPtr& g) {
  g->require_tabled("minimal_normal_subgroups");
  // ncl is a class function, so one closure per conjugacy class suffices.
  std::unordered_map<std::uint32_t, SubgroupMask> ncl_of_class;
  auto ncl_of = [&](std::uint32_t x) -> const SubgroupMask& {
    const std::uint32_t rep = g->class_of()[x];
    auto it = ncl_of_class.find(rep);
    if (it == ncl_of_class.end())
      it = ncl_of_class.emplace(rep, normal_closure(g, {rep})).first;
    return it->second;
  };

  MaskSet candidates;
  for (std::uint32_t rep : g->class_reps())
    if (rep != 0) candidates.insert(ncl_of(rep));

  std::vector<SubgroupMask> out;
  for (const auto& n : candidates.items) {
    bool minimal = true;
    for (std::uint32_t y : n.members()) {
      if (y == 0) continue;
      if (!(ncl_of(y) == n)) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(n);
  }
  return out;
}

SubgroupMask socle(const GroupPtr& g) {
  SubgroupMask s = trivial_mask(g);
  for (const auto& n : minimal_normal_subgroups(g)) s = join(s, n);
  return s;
}

bool is_semisimple(const GroupPtr& g) {
  const auto minimals = minimal_normal_subgroups(g);
  for (const auto& n : minimals)
    if (is_abelian_mask(n)) return false;
  return true;
}

std::vector<SubgroupMask> normal_subgroup_lattice(const GroupPtr& g, std::size_t cap) {
  g->require_tabled("normal_subgroup_lattice");
  MaskSet set;
  set.insert(trivial_mask(g));
  for (std::uint32_t rep : g->class_reps())
    if (rep != 0) set.insert(normal_closure(g, {rep}));
  // close under pairwise joins
  std::size_t processed = 1;  // trivial joins are no-ops
  while (processed < set.items.size()) {
    const std::size_t i = processed++;
    for (std::size_t j = 1; j < i; ++j) {
      SubgroupMask jn = join(set.items[i], set.items[j]);
      if (set.items.size() >= cap && !set.contains(jn))
        raise(ErrorKind::cap_exceeded, "normal subgroup lattice larger than " +
                                           std::to_string(cap) + " in " + g->description());
      set.insert(jn);
    }
  }
  return set.items;
}

// --- CSA ------------------------------------------------------------------------

CsaResult is_csa(const GroupPtr& g) {
  g->require_tabled("is_csa");
  const std::uint32_t n = g->order();
  for (std::uint32_t x : g->class_reps()) {
    if (x == 0) continue;
    const SubgroupMask cx = centralizer(g, {x});
    if (!is_abelian_mask(cx)) {
      CsaResult r;
      r.csa = false;
      r.fail = CsaResult::FailKind::nonabelian_centralizer;
      r.x = x;
      return r;
    }
    for (std::uint32_t y = 0; y < n; ++y) {
      if (cx.contains(y)) continue;
      const SubgroupMask meet = cx.intersect(conjugate_mask(cx, y));
      if (meet.size() > 1) {
        CsaResult r;
        r.csa = false;
        r.fail = CsaResult::FailKind::malnormality;
        r.x = x;
        r.y = y;
        for (std::uint32_t z : meet.members())
          if (z != 0) {
            r.z = z;
            break;
          }
        return r;
      }
    }
  }
  CsaResult r;
  r.csa = true;
  return r;
}

std::uint32_t c_dimension(const GroupPtr& g) {
  g->require_tabled("c_dimension");
  MaskSet set;
  for (std::uint32_t x = 0; x < g->order(); ++x) set.insert(centralizer(g, {x}));
  // close under intersection; every centralizer of a subset is such a meet
  std::size_t processed = 0;
  while (processed < set.items.size()) {
    const std::size_t i = processed++;
    for (std::size_t j = 0; j < i; ++j) set.insert(set.items[i].intersect(set.items[j]));
  }

  auto& subs = set.items;
  std::sort(subs.begin(), subs.end(),
            [](const SubgroupMask& a, const SubgroupMask& b) { return a.size() < b.size(); });
  std::vector<std::uint32_t> len(subs.size(), 0);
  std::uint32_t best = 0;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (subs[j].size() < subs[i].size() && subs[j].is_subset_of(subs[i]))
        len[i] = std::max(len[i], len[j] + 1);
    }
    best = std::max(best, len[i]);
  }
  return best;
}

// --- rank, exponent, width --------------------------------------------------------

namespace {

bool tuple_generates(const GroupPtr& g, const SubgroupMask& h,
                     std::vector<std::uint32_t>& tuple, std::size_t pos,
                     const std::vector<std::uint32_t>& members) {
  if (pos == tuple.size()) return closure(g, tuple) == h;
  // each later generator may be assumed outside the closure of the earlier
  // ones, otherwise a shorter tuple would do
  const SubgroupMask sofar = closure(g, {tuple.begin(), tuple.begin() + pos});
  for (std::uint32_t m : members) {
    if (sofar.contains(m)) continue;
    tuple[pos] = m;
    if (tuple_generates(g, h, tuple, pos + 1, members)) return true;
  }
  return false;
}

}  // namespace

std::uint32_t min_generators(const SubgroupMask& h) {
  if (h.size() == 1) return 0;
  const auto& g = h.parent();
  const auto members = h.members();
  const auto reps = subgroup_class_reps(h);
  // every group of order <= 2^k is k-generated, so k never passes 32 here
  for (std::uint32_t k = 1; k <= 32; ++k) {
    for (std::uint32_t first : reps) {
      if (first == 0) continue;
      std::vector<std::uint32_t> tuple(k);
      tuple[0] = first;
      if (tuple_generates(g, h, tuple, 1, members)) return k;
    }
  }
  raise(ErrorKind::invalid_parameter, "min_generators did not converge (internal)");
}

RankResult prufer_rank(const GroupPtr& g, RankMode mode, std::uint32_t exact_cap,
                       std::uint32_t sample_budget, std::uint64_t seed) {
  g->require_tabled("prufer_rank");
  if (mode == RankMode::exact) {
    if (g->order() > exact_cap)
      raise(ErrorKind::cap_exceeded, "prufer_rank exact mode caps at order " +
                                         std::to_string(exact_cap) + "; " + g->description() +
                                         " has order " + std::to_string(g->order()));
    // enumerate all subgroups by iterated one-element extensions
    MaskSet seen;
    seen.insert(trivial_mask(g));
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
      const SubgroupMask h = seen.items[queue.front()];
      queue.pop_front();
      auto gens = subgroup_generators(h);
      gens.push_back(0);
      for (std::uint32_t x = 1; x < g->order(); ++x) {
        if (h.contains(x)) continue;
        gens.back() = x;
        if (seen.insert(closure(g, gens))) queue.push_back(seen.items.size() - 1);
      }
    }
    RankResult r;
    r.exact = true;
    for (const auto& h : seen.items) r.value = std::max(r.value, min_generators(h));
    return r;
  }

  // sampled: lower bound from random tuple closures (whole group included)
  RankResult r;
  r.exact = false;
  r.value = min_generators(full_mask(g));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> pick(0, g->order() - 1);
  for (std::uint32_t t = 0; t < sample_budget; ++t) {
    const int k = 1 + static_cast<int>(t % 3);
    std::vector<std::uint32_t> tuple;
    for (int i = 0; i < k; ++i) tuple.push_back(pick(rng));
    r.value = std::max(r.value, min_generators(closure(g, tuple)));
  }
  return r;
}

std::uint64_t exponent(const GroupPtr& g) {
  g->require_tabled("exponent");
  std::uint64_t e = 1;
  for (std::uint32_t rep : g->class_reps()) e = std::lcm(e, std::uint64_t{g->element_order(rep)});
  return e;
}

MaxKGenerated max_k_generated(const GroupPtr& g, int k, std::uint64_t budget,
                              std::uint64_t seed) {
  g->require_tabled("max_k_generated");
  if (k < 1) raise(ErrorKind::invalid_parameter, "max_k_generated needs k >= 1");
  const std::uint32_t n = g->order();
  const auto& reps = g->class_reps();

  // subgroup size is conjugation-invariant, so the first slot only needs
  // class representatives even in the exhaustive sweep
  std::uint64_t total = reps.size();
  for (int i = 1; i < k; ++i) {
    if (total > budget / n + 1) {
      total = budget + 1;
      break;
    }
    total *= n;
  }

  MaxKGenerated out;
  if (total <= budget) {
    out.exact = true;
    out.tuples_tried = total;
    std::vector<std::uint32_t> tuple(static_cast<std::size_t>(k));
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::uint64_t rest = idx;
      tuple[0] = reps[static_cast<std::size_t>(rest % reps.size())];
      rest /= reps.size();
      for (int i = 1; i < k; ++i, rest /= n) tuple[static_cast<std::size_t>(i)] = rest % n;
      out.max_size = std::max(out.max_size, closure(g, tuple).size());
      if (out.max_size == n) break;
    }
    return out;
  }

  out.exact = false;
  out.tuples_tried = budget;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> pick(0, n - 1);
  std::vector<std::uint32_t> tuple(static_cast<std::size_t>(k));
  for (std::uint64_t t = 0; t < budget; ++t) {
    for (auto& v : tuple) v = pick(rng);
    out.max_size = std::max(out.max_size, closure(g, tuple).size());
    if (out.max_size == n) break;
  }
  return out;
}

std::uint32_t commutator_width(const GroupPtr& g) {
  g->require_tabled("commutator_width");
  const std::uint32_t n = g->order();
  const SubgroupMask derived = derived_subgroup(full_mask(g));
  if (derived.trivial()) return 0;

  SubgroupMask comms(g);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) comms.add(g->commutator(a, b));

  SubgroupMask reach = comms;
  std::uint32_t width = 1;
  while (!derived.is_subset_of(reach)) {
    SubgroupMask next = reach;
    for (std::uint32_t s : reach.members())
      for (std::uint32_t c : comms.members()) next.add(g->mul(s, c));
    reach = std::move(next);
    ++width;
  }
  return width;
}

bool nilpotent_by_abelian_by_index(const GroupPtr& g, int c, int f) {
  g->require_tabled("nilpotent_by_abelian_by_index");
  if (c < 0 || f < 1) raise(ErrorKind::invalid_parameter, "need c >= 0 and f >= 1");
  const std::uint64_t n = g->order();
  for (const auto& m : normal_subgroup_lattice(g)) {
    if (static_cast<std::uint64_t>(m.size()) * static_cast<std::uint64_t>(f) < n) continue;
    const auto cls = nilpotency_class_mask(derived_subgroup(m));
    if (cls && *cls <= c) return true;
  }
  return false;
}

// --- report -------------------------------------------------------------------

StructureReport structure_report(const GroupPtr& g, const ReportOptions& opts) {
  g->require_tabled("structure_report");
  StructureReport r;
  r.description = g->description();
  r.order = g->order();
  r.exponent = exponent(g);
  r.abelian = is_abelian(g);
  r.derived_length = derived_length(g);
  r.soluble = r.derived_length.has_value();
  r.nilpotency_class = nilpotency_class(g);
  r.nilpotent = r.nilpotency_class.has_value();
  r.radical = soluble_radical(g);
  r.socle = socle(g);
  r.semisimple = is_semisimple(g);
  r.csa = is_csa(g).csa;
  r.c_dim = c_dimension(g);
  const RankMode mode = g->order() <= opts.prufer_exact_cap ? RankMode::exact : RankMode::sampled;
  r.rank = prufer_rank(g, mode, opts.prufer_exact_cap, opts.prufer_sample_budget, opts.seed);
  r.min_generating_number = min_generators(full_mask(g));
  r.width = commutator_width(g);
  for (int k : opts.ks) r.k_generated[k] = max_k_generated(g, k, opts.tuple_budget, opts.seed);

  // weakly-of-bounded-rank data
  if (r.radical.full()) {
    r.radical_rank = r.rank;
    r.semisimple_quotient_order = 1;
    r.socle_index_in_quotient = 1;
  } else {
    const auto radg = subgroup_as_group(r.radical);
    const RankMode rmode =
        radg.group->order() <= opts.prufer_exact_cap ? RankMode::exact : RankMode::sampled;
    r.radical_rank = prufer_rank(radg.group, rmode, opts.prufer_exact_cap,
                                 opts.prufer_sample_budget, opts.seed);
    const auto q = quotient(g, r.radical);
    r.semisimple_quotient_order = q.group->order();
    r.socle_index_in_quotient = q.group->order() / socle(q.group).size();
  }
  return r;
}

nlohmann::json StructureReport::to_json() const {
  nlohmann::json j;
  j["group"] = description;
  j["order"] = order;
  j["exponent"] = exponent;
  j["is_abelian"] = abelian;
  j["is_nilpotent"] = nilpotent;
  if (nilpotency_class) j["nilpotency_class"] = *nilpotency_class;
  j["is_soluble"] = soluble;
  if (derived_length) j["derived_length"] = *derived_length;
  j["radical_order"] = radical.size();
  j["socle_order"] = socle.size();
  j["is_semisimple"] = semisimple;
  j["is_csa"] = csa;
  j["c_dimension"] = c_dim;
  j["prufer_rank"] = {{"value", rank.value}, {"exact", rank.exact}};
  j["min_generating_number"] = min_generating_number;
  j["commutator_width"] = width;
  nlohmann::json kg = nlohmann::json::object();
  for (const auto& [k, v] : k_generated)
    kg[std::to_string(k)] = {{"max_size", v.max_size}, {"exact", v.exact}};
  j["max_k_generated"] = kg;
  j["radical_prufer_rank"] = {{"value", radical_rank.value}, {"exact", radical_rank.exact}};
  j["semisimple_quotient_order"] = semisimple_quotient_order;
  j["socle_index_in_quotient"] = socle_index_in_quotient;
  return j;
}

}  // namespace grouplab
