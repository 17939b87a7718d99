#include "grouplab/partial_structure.hpp"

#include <algorithm>
#include <random>

#include "grouplab/errors.hpp"

namespace grouplab {

std::uint32_t PartialStructure::label_index(const std::string& name) const {
  for (std::uint32_t i = 0; i < labels.size(); ++i)
    if (labels[i] == name) return i;
  raise(ErrorKind::invalid_parameter, "unknown label: " + name);
}

PartialStructure PartialStructure::from_json(const nlohmann::json& j) {
  PartialStructure p;
  for (const auto& l : j.at("labels")) p.labels.push_back(l.get<std::string>());
  if (j.contains("identity") && !j.at("identity").is_null())
    p.identity = p.label_index(j.at("identity").get<std::string>());
  if (j.contains("products")) {
    for (const auto& [key, value] : j.at("products").items()) {
      const auto comma = key.find(',');
      if (comma == std::string::npos)
        raise(ErrorKind::parse_error, "product key must be \"a,b\": " + key);
      p.products[{p.label_index(key.substr(0, comma)), p.label_index(key.substr(comma + 1))}] =
          p.label_index(value.get<std::string>());
    }
  }
  p.validate();
  return p;
}

nlohmann::json PartialStructure::to_json() const {
  nlohmann::json j;
  j["labels"] = labels;
  if (identity) j["identity"] = labels[*identity];
  nlohmann::json prods = nlohmann::json::object();
  for (const auto& [key, value] : products)
    prods[labels[key.first] + "," + labels[key.second]] = labels[value];
  j["products"] = prods;
  return j;
}

PartialStructure PartialStructure::integer_window(int r) {
  if (r < 0) raise(ErrorKind::invalid_parameter, "integer_window needs r >= 0");
  PartialStructure p;
  for (int i = -r; i <= r; ++i) p.labels.push_back(std::to_string(i));
  p.identity = static_cast<std::uint32_t>(r);  // label "0"
  auto idx = [r](int i) { return static_cast<std::uint32_t>(i + r); };
  for (int i = -r; i <= r; ++i)
    for (int j = -r; j <= r; ++j)
      if (std::abs(i + j) <= r) p.products[{idx(i), idx(j)}] = idx(i + j);
  return p;
}

PartialStructure PartialStructure::group_table(const GroupPtr& g) {
  g->require_tabled("group_table");
  PartialStructure p;
  for (std::uint32_t i = 0; i < g->order(); ++i) p.labels.push_back(g->element_name(i));
  p.identity = 0;
  for (std::uint32_t a = 0; a < g->order(); ++a)
    for (std::uint32_t b = 0; b < g->order(); ++b) p.products[{a, b}] = g->mul(a, b);
  return p;
}

void PartialStructure::validate() const {
  for (const auto& [key, value] : products) {
    if (key.first >= labels.size() || key.second >= labels.size() || value >= labels.size())
      raise(ErrorKind::invalid_parameter, "product entry out of range");
    if (identity) {
      if (key.first == *identity && value != key.second)
        raise(ErrorKind::invalid_parameter, "identity law violated: e*a != a");
      if (key.second == *identity && value != key.first)
        raise(ErrorKind::invalid_parameter, "identity law violated: a*e != a");
    }
  }
}

namespace {

struct LefSearch {
  const PartialStructure& p;
  const FiniteGroup& g;
  std::vector<std::uint32_t> assign;   // label -> id, kUnset when free
  std::vector<bool> used;              // id taken
  static constexpr std::uint32_t kUnset = 0xffffffffu;

  LefSearch(const PartialStructure& p_, const FiniteGroup& g_)
      : p(p_), g(g_), assign(p_.labels.size(), kUnset), used(g_.order(), false) {}

  /// Checks every product constraint touching `l` that is fully assigned, and
  /// propagates products that become forced. Returns false on contradiction;
  /// records propagated labels for undo.
  bool propagate(std::uint32_t l, std::vector<std::uint32_t>& trail) {
    for (const auto& [key, value] : p.products) {
      if (key.first != l && key.second != l && value != l) continue;
      const std::uint32_t a = assign[key.first], b = assign[key.second], c = assign[value];
      if (a == kUnset || b == kUnset) continue;
      const std::uint32_t ab = g.mul(a, b);
      if (c == kUnset) {
        if (used[ab]) return false;  // injectivity would break
        assign[value] = ab;
        used[ab] = true;
        trail.push_back(value);
        if (!propagate(value, trail)) return false;
      } else if (c != ab) {
        return false;
      }
    }
    return true;
  }

  void undo(const std::vector<std::uint32_t>& trail) {
    for (std::uint32_t l : trail) {
      used[assign[l]] = false;
      assign[l] = kUnset;
    }
  }

  bool solve(std::uint32_t next) {
    while (next < assign.size() && assign[next] != kUnset) ++next;
    if (next == assign.size()) return true;
    for (std::uint32_t id = 0; id < g.order(); ++id) {
      if (used[id]) continue;
      std::vector<std::uint32_t> trail{next};
      assign[next] = id;
      used[id] = true;
      if (propagate(next, trail) && solve(next + 1)) return true;
      undo(trail);
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<std::uint32_t>> lef_embed(const PartialStructure& p,
                                                    const GroupPtr& g) {
  g->require_tabled("lef_embed");
  p.validate();
  // no injective map can exist into a smaller group; that is an exhausted
  // search, not an error
  if (p.labels.size() > g->order()) return std::nullopt;
  LefSearch search(p, *g);
  if (!search.solve(0)) return std::nullopt;
  return search.assign;
}

Rational hamming(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree())
    raise(ErrorKind::invalid_parameter, "hamming distance needs equal degrees");
  std::int64_t moved = 0;
  for (std::uint32_t i = 0; i < p.degree(); ++i)
    if (p(i) != q(i)) ++moved;
  return Rational(moved, p.degree());
}

SoficScore sofic_defect(const SoficMap& m) {
  if (m.images.size() != m.domain.labels.size())
    raise(ErrorKind::invalid_parameter, "sofic map image count mismatch");
  for (const auto& img : m.images)
    if (img.degree() != m.degree)
      raise(ErrorKind::invalid_parameter, "sofic map image degree mismatch");

  SoficScore score;
  for (const auto& [key, value] : m.domain.products) {
    const Rational d =
        hamming(m.images[value], m.images[key.first].compose(m.images[key.second]));
    if (d > score.max_defect) score.max_defect = d;
  }
  const Permutation id(m.degree);
  bool any = false;
  for (std::uint32_t l = 0; l < m.domain.labels.size(); ++l) {
    if (m.domain.identity && l == *m.domain.identity) continue;
    const Rational s = hamming(id, m.images[l]);
    if (!any || s < score.min_separation) score.min_separation = s;
    any = true;
  }
  if (!any) score.min_separation = Rational(1, 1);
  return score;
}

namespace {

/// Lexicographic objective: low defect first, then high separation.
bool better(const SoficScore& a, const SoficScore& b) {
  if (a.max_defect != b.max_defect) return a.max_defect < b.max_defect;
  return a.min_separation > b.min_separation;
}

}  // namespace

SoficMap sofic_search(const PartialStructure& p, std::uint32_t degree, std::uint64_t budget,
                      std::uint64_t seed) {
  if (degree == 0) raise(ErrorKind::invalid_parameter, "sofic_search needs degree >= 1");
  p.validate();
  std::mt19937_64 rng(seed);
  auto random_perm = [&rng, degree] {
    std::vector<std::uint32_t> img(degree);
    for (std::uint32_t i = 0; i < degree; ++i) img[i] = i;
    for (std::uint32_t i = degree; i > 1; --i) {
      std::uniform_int_distribution<std::uint32_t> pick(0, i - 1);
      std::swap(img[i - 1], img[pick(rng)]);
    }
    return Permutation(std::move(img));
  };

  SoficMap best;
  best.domain = p;
  best.degree = degree;
  best.images.assign(p.labels.size(), Permutation(degree));
  SoficScore best_score = sofic_defect(best);

  SoficMap cur = best;
  SoficScore cur_score = best_score;
  const std::uint64_t restart_every = std::max<std::uint64_t>(budget / 8, 1);
  for (std::uint64_t it = 0; it < budget; ++it) {
    if (it % restart_every == restart_every - 1) {
      for (std::uint32_t l = 0; l < cur.images.size(); ++l) {
        if (cur.domain.identity && l == *cur.domain.identity)
          cur.images[l] = Permutation(degree);
        else
          cur.images[l] = random_perm();
      }
      cur_score = sofic_defect(cur);
    }
    if (cur.images.empty()) break;
    std::uniform_int_distribution<std::uint32_t> pick_label(
        0, static_cast<std::uint32_t>(cur.images.size()) - 1);
    const std::uint32_t l = pick_label(rng);
    const Permutation saved = cur.images[l];
    if (rng() & 1) {
      auto img = saved.images();
      std::uniform_int_distribution<std::uint32_t> pick_pt(0, degree - 1);
      std::swap(img[pick_pt(rng)], img[pick_pt(rng)]);
      cur.images[l] = Permutation(std::move(img));
    } else {
      cur.images[l] = random_perm();
    }
    const SoficScore s = sofic_defect(cur);
    if (better(s, cur_score)) {
      cur_score = s;
      if (better(s, best_score)) {
        best = cur;
        best_score = s;
      }
    } else {
      cur.images[l] = saved;
    }
  }
  return best;
}

}  // namespace grouplab
