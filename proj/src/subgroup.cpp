#include "grouplab/subgroup.hpp"

#include <algorithm>
#include <deque>

#include "grouplab/errors.hpp"

namespace grouplab {

SubgroupMask::SubgroupMask(GroupPtr parent) : parent_(std::move(parent)) {
  parent_->require_tabled("subgroup mask");
  bits_.assign((parent_->order() + 63) / 64, 0);
}

std::vector<std::uint32_t> SubgroupMask::members() const {
  std::vector<std::uint32_t> out;
  out.reserve(size_);
  for (std::uint32_t w = 0; w < bits_.size(); ++w) {
    std::uint64_t word = bits_[w];
    while (word) {
      const int bit = __builtin_ctzll(word);
      out.push_back(w * 64 + static_cast<std::uint32_t>(bit));
      word &= word - 1;
    }
  }
  return out;
}

bool SubgroupMask::is_subset_of(const SubgroupMask& o) const {
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] & ~o.bits_[i]) return false;
  return true;
}

SubgroupMask SubgroupMask::intersect(const SubgroupMask& o) const {
  SubgroupMask out(parent_);
  out.size_ = 0;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    out.bits_[i] = bits_[i] & o.bits_[i];
    out.size_ += static_cast<std::uint32_t>(__builtin_popcountll(out.bits_[i]));
  }
  return out;
}

std::uint64_t SubgroupMask::hash() const {
  std::uint64_t h = 1469598103934665603ull;
  for (std::uint64_t w : bits_) {
    h ^= w;
    h *= 1099511628211ull;
  }
  return h;
}

SubgroupMask trivial_mask(const GroupPtr& parent) {
  SubgroupMask m(parent);
  m.add(0);
  return m;
}

SubgroupMask full_mask(const GroupPtr& parent) {
  SubgroupMask m(parent);
  for (std::uint32_t x = 0; x < parent->order(); ++x) m.add(x);
  return m;
}

SubgroupMask closure(const GroupPtr& parent, const std::vector<std::uint32_t>& seed) {
  parent->require_tabled("closure");
  SubgroupMask m(parent);
  m.add(0);
  std::vector<std::uint32_t> alphabet;
  for (std::uint32_t s : seed) {
    if (s >= parent->order()) raise(ErrorKind::invalid_parameter, "seed id out of range");
    alphabet.push_back(s);
    alphabet.push_back(parent->inv(s));
  }
  std::deque<std::uint32_t> queue{0};
  while (!queue.empty()) {
    const std::uint32_t x = queue.front();
    queue.pop_front();
    for (std::uint32_t a : alphabet) {
      const std::uint32_t y = parent->mul(x, a);
      if (!m.contains(y)) {
        m.add(y);
        queue.push_back(y);
      }
    }
  }
  return m;
}

SubgroupMask normal_closure(const GroupPtr& parent, const std::vector<std::uint32_t>& seed) {
  std::vector<std::uint32_t> gens = seed;
  SubgroupMask m = closure(parent, gens);
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::uint32_t x : m.members()) {
      for (std::uint32_t g : parent->generators()) {
        const std::uint32_t c = parent->conjugate(x, g);
        if (!m.contains(c)) {
          gens.push_back(c);
          grew = true;
        }
      }
    }
    if (grew) m = closure(parent, gens);
  }
  return m;
}

bool is_subgroup(const SubgroupMask& m) {
  const auto& g = m.parent();
  if (!m.contains(0)) return false;
  const auto mem = m.members();
  for (std::uint32_t a : mem) {
    if (!m.contains(g->inv(a))) return false;
    for (std::uint32_t b : mem)
      if (!m.contains(g->mul(a, b))) return false;
  }
  return true;
}

bool is_normal(const SubgroupMask& m) {
  const auto& g = m.parent();
  for (std::uint32_t x : m.members())
    for (std::uint32_t gen : g->generators())
      if (!m.contains(g->conjugate(x, gen))) return false;
  return true;
}

bool is_abelian_mask(const SubgroupMask& m) {
  const auto& g = m.parent();
  const auto mem = m.members();
  for (std::size_t i = 0; i < mem.size(); ++i)
    for (std::size_t j = i + 1; j < mem.size(); ++j)
      if (g->mul(mem[i], mem[j]) != g->mul(mem[j], mem[i])) return false;
  return true;
}

std::vector<std::uint32_t> subgroup_generators(const SubgroupMask& m) {
  const auto& g = m.parent();
  std::vector<std::uint32_t> gens;
  SubgroupMask cur = closure(g, gens);
  while (cur.size() < m.size()) {
    // smallest member not yet generated
    std::uint32_t pick = g->order();
    for (std::uint32_t x : m.members()) {
      if (!cur.contains(x)) {
        pick = x;
        break;
      }
    }
    gens.push_back(pick);
    cur = closure(g, gens);
  }
  return gens;
}

SubgroupMask join(const SubgroupMask& a, const SubgroupMask& b) {
  std::vector<std::uint32_t> seed = subgroup_generators(a);
  for (std::uint32_t x : subgroup_generators(b)) seed.push_back(x);
  return closure(a.parent(), seed);
}

SubgroupMask conjugate_mask(const SubgroupMask& m, std::uint32_t g) {
  SubgroupMask out(m.parent());
  for (std::uint32_t x : m.members()) out.add(m.parent()->conjugate(x, g));
  return out;
}

SubgroupMask centralizer(const GroupPtr& parent, const std::vector<std::uint32_t>& s) {
  parent->require_tabled("centralizer");
  SubgroupMask m(parent);
  for (std::uint32_t x = 0; x < parent->order(); ++x) {
    bool central = true;
    for (std::uint32_t y : s) {
      if (parent->mul(x, y) != parent->mul(y, x)) {
        central = false;
        break;
      }
    }
    if (central) m.add(x);
  }
  return m;
}

SubgroupMask center(const GroupPtr& parent) {
  // C(G) = C(generators); coincides with the centralizer of the full set.
  return centralizer(parent, parent->generators());
}

Quotient quotient(const GroupPtr& parent, const SubgroupMask& n) {
  parent->require_tabled("quotient");
  if (!is_subgroup(n) || !is_normal(n))
    raise(ErrorKind::not_normal, "quotient by a non-normal subset of " + parent->description());

  const std::uint32_t order = parent->order();
  const std::uint32_t q_order = order / n.size();
  std::vector<std::uint32_t> proj(order, q_order);
  std::vector<std::uint32_t> reps;
  reps.reserve(q_order);
  const auto n_members = n.members();
  for (std::uint32_t x = 0; x < order; ++x) {
    if (proj[x] != q_order) continue;
    const auto c = static_cast<std::uint32_t>(reps.size());
    reps.push_back(x);
    for (std::uint32_t m : n_members) proj[parent->mul(x, m)] = c;
  }

  std::vector<std::uint16_t> table(static_cast<std::size_t>(q_order) * q_order);
  for (std::uint32_t a = 0; a < q_order; ++a)
    for (std::uint32_t b = 0; b < q_order; ++b)
      table[static_cast<std::size_t>(a) * q_order + b] =
          static_cast<std::uint16_t>(proj[parent->mul(reps[a], reps[b])]);

  std::vector<std::uint32_t> gen_ids;
  for (std::uint32_t g : parent->generators()) {
    const std::uint32_t img = proj[g];
    if (img != 0 && std::find(gen_ids.begin(), gen_ids.end(), img) == gen_ids.end())
      gen_ids.push_back(img);
  }
  if (gen_ids.empty()) gen_ids.push_back(0);

  std::vector<std::string> names(q_order);
  for (std::uint32_t c = 0; c < q_order; ++c)
    names[c] = "[" + parent->element_name(reps[c]) + "]";

  // from_table re-checks the group axioms, which doubles as a sanity check
  // on the coset table.
  Quotient out;
  out.group = FiniteGroup::from_table(
      q_order,
      [&table, q_order](std::uint32_t a, std::uint32_t b) {
        return static_cast<std::uint32_t>(table[static_cast<std::size_t>(a) * q_order + b]);
      },
      std::move(gen_ids), std::move(names),
      "quotient(" + parent->description() + ", " + std::to_string(n.size()) + ")");
  out.projection = std::move(proj);
  return out;
}

SubgroupGroup subgroup_as_group(const SubgroupMask& m) {
  const auto& g = m.parent();
  const auto mem = m.members();  // ascending; identity (id 0) first
  std::vector<std::uint32_t> to_new(g->order(), 0);
  for (std::uint32_t i = 0; i < mem.size(); ++i) to_new[mem[i]] = i;

  const auto gens = subgroup_generators(m);
  std::vector<std::uint32_t> gen_ids;
  for (std::uint32_t x : gens) gen_ids.push_back(to_new[x]);
  if (gen_ids.empty()) gen_ids.push_back(0);

  std::vector<std::string> names(mem.size());
  for (std::uint32_t i = 0; i < mem.size(); ++i) names[i] = g->element_name(mem[i]);

  SubgroupGroup out;
  out.group = FiniteGroup::from_table(
      static_cast<std::uint32_t>(mem.size()),
      [&](std::uint32_t a, std::uint32_t b) { return to_new[g->mul(mem[a], mem[b])]; },
      std::move(gen_ids), std::move(names),
      "subgroup(" + g->description() + ", " + std::to_string(m.size()) + ")");
  out.to_parent = mem;
  return out;
}

std::vector<std::uint32_t> subgroup_class_reps(const SubgroupMask& m) {
  const auto& g = m.parent();
  const auto mem = m.members();
  const auto gens = subgroup_generators(m);
  std::vector<bool> assigned(g->order(), false);
  std::vector<std::uint32_t> reps;
  for (std::uint32_t x : mem) {
    if (assigned[x]) continue;
    reps.push_back(x);
    std::deque<std::uint32_t> queue{x};
    assigned[x] = true;
    while (!queue.empty()) {
      const std::uint32_t y = queue.front();
      queue.pop_front();
      for (std::uint32_t gen : gens) {
        const std::uint32_t z = g->conjugate(y, gen);
        if (!assigned[z]) {
          assigned[z] = true;
          queue.push_back(z);
        }
      }
    }
  }
  return reps;
}

}  // namespace grouplab
