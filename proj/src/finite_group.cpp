#include "grouplab/finite_group.hpp"

#include <algorithm>
#include <deque>
#include <random>

#include "grouplab/errors.hpp"

namespace grouplab {

namespace {

void check_cap(std::uint64_t needed, std::uint32_t cap, const std::string& what) {
  if (cap > kHardIdLimit)
    raise(ErrorKind::cap_exceeded,
          "enumeration cap " + std::to_string(cap) + " exceeds the hard id limit " +
              std::to_string(kHardIdLimit));
  if (needed > cap)
    raise(ErrorKind::cap_exceeded,
          what + " requires enumerating " + std::to_string(needed) +
              " elements (cap " + std::to_string(cap) + ")");
}

}  // namespace

std::uint32_t FiniteGroup::order() const {
  require_tabled("order");
  return order_;
}

void FiniteGroup::require_tabled(const char* op) const {
  if (!is_tabled())
    raise(ErrorKind::unsupported_backing,
          std::string(op) + " requires a Cayley-table backed group; " + description_ +
              " is permutation-native");
}

std::uint32_t FiniteGroup::pow(std::uint32_t x, std::int64_t e) const {
  if (e < 0) {
    x = inv(x);
    e = -e;
  }
  std::uint32_t acc = 0;
  while (e > 0) {
    if (e & 1) acc = mul(acc, x);
    x = mul(x, x);
    e >>= 1;
  }
  return acc;
}

std::uint32_t FiniteGroup::element_order(std::uint32_t x) const {
  std::uint32_t n = 1, y = x;
  while (y != 0) {
    y = mul(y, x);
    ++n;
  }
  return n;
}

std::string FiniteGroup::element_name(std::uint32_t id) const {
  if (id < names_.size() && !names_[id].empty()) return names_[id];
  return "#" + std::to_string(id);
}

std::optional<Permutation> FiniteGroup::element_permutation(std::uint32_t id) const {
  if (id < perms_.size()) return perms_[id];
  return std::nullopt;
}

std::optional<std::uint32_t> FiniteGroup::id_of_permutation(const Permutation& p) const {
  auto it = perm_index_.find(p);
  if (it == perm_index_.end()) return std::nullopt;
  return it->second;
}

GroupPtr FiniteGroup::finish_table(std::vector<std::uint16_t> table, std::uint32_t order,
                                   std::vector<std::uint32_t> generator_ids,
                                   std::vector<std::string> names,
                                   std::vector<Permutation> perms, std::string description) {
  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->backing_ = Backing::cayley_table;
  g->order_ = order;
  g->order64_ = order;
  g->table_ = std::move(table);
  g->generator_ids_ = std::move(generator_ids);
  g->names_ = std::move(names);
  g->perms_ = std::move(perms);
  g->description_ = std::move(description);
  if (g->generator_ids_.empty()) g->generator_ids_.push_back(0);

  g->inverse_.assign(order, 0);
  for (std::uint32_t a = 0; a < order; ++a) {
    bool found = false;
    for (std::uint32_t b = 0; b < order; ++b) {
      if (g->mul(a, b) == 0) {
        if (g->mul(b, a) != 0)
          raise(ErrorKind::invalid_parameter,
                "one-sided inverse in " + g->description_ + "; not a group table");
        g->inverse_[a] = static_cast<std::uint16_t>(b);
        found = true;
        break;
      }
    }
    if (!found)
      raise(ErrorKind::invalid_parameter, "element without inverse in " + g->description_);
  }

  if (!g->perms_.empty()) {
    g->perm_index_.reserve(g->perms_.size() * 2);
    for (std::uint32_t i = 0; i < g->perms_.size(); ++i) g->perm_index_.emplace(g->perms_[i], i);
  }

  g->verify_axioms();
  g->compute_classes();
  return g;
}

void FiniteGroup::verify_axioms() const {
  const std::uint32_t n = order_;
  for (std::uint32_t a = 0; a < n; ++a)
    if (mul(0, a) != a || mul(a, 0) != a)
      raise(ErrorKind::invalid_parameter, "id 0 is not an identity in " + description_);

  // Associativity: exhaustive for tiny groups, seeded random triples otherwise.
  auto check = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    if (mul(mul(a, b), c) != mul(a, mul(b, c)))
      raise(ErrorKind::invalid_parameter, "non-associative table in " + description_);
  };
  if (static_cast<std::uint64_t>(n) * n * n <= 200000) {
    for (std::uint32_t a = 0; a < n; ++a)
      for (std::uint32_t b = 0; b < n; ++b)
        for (std::uint32_t c = 0; c < n; ++c) check(a, b, c);
  } else {
    std::mt19937_64 rng(0x5eed5eedULL ^ n);
    std::uniform_int_distribution<std::uint32_t> pick(0, n - 1);
    for (int t = 0; t < 3000; ++t) check(pick(rng), pick(rng), pick(rng));
  }

  // Generators must span the whole id set.
  std::vector<bool> seen(n, false);
  seen[0] = true;
  std::deque<std::uint32_t> queue{0};
  while (!queue.empty()) {
    const std::uint32_t x = queue.front();
    queue.pop_front();
    for (std::uint32_t gen : generator_ids_) {
      for (std::uint32_t y : {mul(x, gen), mul(x, inverse_[gen])}) {
        if (!seen[y]) {
          seen[y] = true;
          queue.push_back(y);
        }
      }
    }
  }
  for (std::uint32_t x = 0; x < n; ++x)
    if (!seen[x])
      raise(ErrorKind::invalid_parameter,
            "generators do not span " + description_ + " (missing id " + std::to_string(x) + ")");
}

void FiniteGroup::compute_classes() {
  const std::uint32_t n = order_;
  class_of_.assign(n, n);
  class_reps_.clear();
  std::deque<std::uint32_t> queue;
  for (std::uint32_t x = 0; x < n; ++x) {
    if (class_of_[x] != n) continue;
    class_reps_.push_back(x);
    class_of_[x] = x;
    queue.clear();
    queue.push_back(x);
    while (!queue.empty()) {
      const std::uint32_t y = queue.front();
      queue.pop_front();
      for (std::uint32_t gen : generator_ids_) {
        const std::uint32_t z = conjugate(y, gen);
        if (class_of_[z] == n) {
          class_of_[z] = x;
          queue.push_back(z);
        }
      }
    }
  }
}

GroupPtr FiniteGroup::from_permutations(std::uint32_t degree, std::vector<Permutation> generators,
                                        std::string description, std::uint32_t cap) {
  for (const auto& p : generators)
    if (p.degree() != degree)
      raise(ErrorKind::invalid_parameter, "generator degree mismatch in " + description);

  // Closure enumeration, identity first.
  std::vector<Permutation> elems{Permutation(degree)};
  std::unordered_map<Permutation, std::uint32_t, PermutationHash> index;
  index.emplace(elems[0], 0);
  std::deque<std::uint32_t> queue{0};
  std::vector<Permutation> alphabet;
  for (const auto& p : generators) {
    alphabet.push_back(p);
    alphabet.push_back(p.inverse());
  }
  while (!queue.empty()) {
    const std::uint32_t x = queue.front();
    queue.pop_front();
    for (const auto& a : alphabet) {
      Permutation y = elems[x].compose(a);
      if (index.find(y) == index.end()) {
        check_cap(elems.size() + 1, cap, description);
        const auto id = static_cast<std::uint32_t>(elems.size());
        index.emplace(y, id);
        elems.push_back(std::move(y));
        queue.push_back(id);
      }
    }
  }

  const auto n = static_cast<std::uint32_t>(elems.size());
  std::vector<std::uint16_t> table(static_cast<std::size_t>(n) * n);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      table[static_cast<std::size_t>(a) * n + b] =
          static_cast<std::uint16_t>(index.at(elems[a].compose(elems[b])));

  std::vector<std::uint32_t> gen_ids;
  for (const auto& p : generators) gen_ids.push_back(index.at(p));
  std::vector<std::string> names(n);
  for (std::uint32_t i = 0; i < n; ++i) names[i] = elems[i].cycle_string();
  return finish_table(std::move(table), n, std::move(gen_ids), std::move(names),
                      std::move(elems), std::move(description));
}

GroupPtr FiniteGroup::from_universe(const Universe& u, std::string description,
                                    std::uint32_t cap) {
  std::vector<std::uint64_t> codes{u.identity};
  std::unordered_map<std::uint64_t, std::uint32_t> index{{u.identity, 0}};
  std::deque<std::uint32_t> queue{0};
  while (!queue.empty()) {
    const std::uint32_t x = queue.front();
    queue.pop_front();
    for (std::uint64_t gen : u.generators) {
      const std::uint64_t y = u.mul(codes[x], gen);
      if (index.find(y) == index.end()) {
        check_cap(codes.size() + 1, cap, description);
        const auto id = static_cast<std::uint32_t>(codes.size());
        index.emplace(y, id);
        codes.push_back(y);
        queue.push_back(id);
      }
    }
  }
  // Right-multiplication by generators alone can stall on a proper
  // subsemigroup only in infinite settings; in a finite group it closes the
  // subgroup, so no inverse pass is needed.

  const auto n = static_cast<std::uint32_t>(codes.size());
  std::vector<std::uint16_t> table(static_cast<std::size_t>(n) * n);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) {
      const auto it = index.find(u.mul(codes[a], codes[b]));
      if (it == index.end())
        raise(ErrorKind::invalid_parameter, "universe not closed under mul in " + description);
      table[static_cast<std::size_t>(a) * n + b] = static_cast<std::uint16_t>(it->second);
    }

  std::vector<std::uint32_t> gen_ids;
  for (std::uint64_t gen : u.generators) gen_ids.push_back(index.at(gen));
  std::vector<std::string> names(n);
  if (u.name)
    for (std::uint32_t i = 0; i < n; ++i) names[i] = u.name(codes[i]);
  return finish_table(std::move(table), n, std::move(gen_ids), std::move(names), {},
                      std::move(description));
}

GroupPtr FiniteGroup::from_table(
    std::uint32_t order, const std::function<std::uint32_t(std::uint32_t, std::uint32_t)>& mul,
    std::vector<std::uint32_t> generator_ids, std::vector<std::string> names,
    std::string description) {
  if (order == 0 || order > kHardIdLimit)
    raise(ErrorKind::cap_exceeded, "from_table order out of range for " + description);
  std::vector<std::uint16_t> table(static_cast<std::size_t>(order) * order);
  for (std::uint32_t a = 0; a < order; ++a)
    for (std::uint32_t b = 0; b < order; ++b) {
      const std::uint32_t v = mul(a, b);
      if (v >= order) raise(ErrorKind::invalid_parameter, "table value out of range");
      table[static_cast<std::size_t>(a) * order + b] = static_cast<std::uint16_t>(v);
    }
  return finish_table(std::move(table), order, std::move(generator_ids), std::move(names), {},
                      std::move(description));
}

GroupPtr FiniteGroup::permutation_native(std::uint32_t degree,
                                         std::vector<Permutation> generators,
                                         std::string description, std::uint64_t order) {
  for (const auto& p : generators)
    if (p.degree() != degree)
      raise(ErrorKind::invalid_parameter, "generator degree mismatch in " + description);
  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->backing_ = Backing::permutation_native;
  g->degree_ = degree;
  g->generator_perms_ = std::move(generators);
  g->description_ = std::move(description);
  g->order64_ = order;
  return g;
}

}  // namespace grouplab
