#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "grouplab/errors.hpp"
#include "grouplab/folner.hpp"
#include "grouplab/group_spec.hpp"
#include "grouplab/partial_structure.hpp"
#include "oracles.hpp"

using namespace grouplab;

namespace {

GroupPtr build(const std::string& text) { return build_group(GroupSpec::parse(text)); }

}  // namespace

TEST_CASE("partial structure json round trip and validation") {
  const auto j = nlohmann::json::parse(R"({
    "labels": ["e", "a", "b"],
    "identity": "e",
    "products": {"e,a": "a", "a,e": "a", "a,a": "b"}
  })");
  const auto p = PartialStructure::from_json(j);
  CHECK(p.labels.size() == 3);
  CHECK(p.identity == 0);
  CHECK(p.products.at({1, 1}) == 2);
  CHECK(PartialStructure::from_json(p.to_json()).products == p.products);

  auto bad = j;
  bad["products"]["e,a"] = "b";  // identity law broken
  CHECK_THROWS_AS(PartialStructure::from_json(bad), Error);
}

TEST_CASE("integer window embeds iff the group is big enough") {
  // {-1,0,1} with products defined when |i+j| <= 1 embeds into C_3
  const auto w1 = PartialStructure::integer_window(1);
  CHECK(lef_embed(w1, build("cyclic(3)")).has_value());

  // {-3..3} needs seven distinct powers, so C_7 is the threshold
  const auto w3 = PartialStructure::integer_window(3);
  for (int m = 2; m <= 9; ++m) {
    const auto found = lef_embed(w3, build("cyclic(" + std::to_string(m) + ")"));
    CHECK(found.has_value() == (m >= 7));
    if (found) {
      // verify the embedding really preserves defined products
      const auto g = build("cyclic(" + std::to_string(m) + ")");
      for (const auto& [key, value] : w3.products)
        CHECK(g->mul((*found)[key.first], (*found)[key.second]) == (*found)[value]);
    }
  }
}

TEST_CASE("an idempotent label other than the identity never embeds") {
  // a group window containing e and a defines all four products
  PartialStructure p;
  p.labels = {"e", "a"};
  p.identity = 0;
  p.products[{0, 0}] = 0;
  p.products[{0, 1}] = 1;
  p.products[{1, 0}] = 1;
  p.products[{1, 1}] = 1;  // a*a = a with a != e: two idempotents cannot both map to 1
  for (const char* text : {"cyclic(4)", "symmetric(3)", "quaternion8"})
    CHECK_FALSE(lef_embed(p, build(text)).has_value());
}

TEST_CASE("lef completeness against exhaustive enumeration") {
  std::mt19937_64 rng(43);
  std::vector<GroupPtr> targets;
  for (const char* text : {"cyclic(6)", "symmetric(3)", "cyclic(10)", "dihedral(5)",
                           "cyclic(12)", "alternating(4)"})
    targets.push_back(build(text));

  for (int t = 0; t < 60; ++t) {
    // random partial structure with up to 5 labels and a handful of products
    std::uniform_int_distribution<std::uint32_t> nlab(2, 5);
    const std::uint32_t n = nlab(rng);
    PartialStructure p;
    for (std::uint32_t i = 0; i < n; ++i) p.labels.push_back("l" + std::to_string(i));
    std::uniform_int_distribution<std::uint32_t> pick(0, n - 1);
    std::uniform_int_distribution<int> nprod(1, 6);
    for (int k = nprod(rng); k > 0; --k) p.products[{pick(rng), pick(rng)}] = pick(rng);
    for (const auto& g : targets)
      CHECK(lef_embed(p, g).has_value() == oracles::lef_embeddable_exhaustive(p, g));
  }
}

TEST_CASE("hamming distance") {
  const Permutation id4(4);
  CHECK(hamming(id4, id4) == Rational(0));
  CHECK(hamming(id4, Permutation::parse_cycles(4, "(0 1)")) == Rational(1, 2));
  CHECK_THROWS_AS(hamming(id4, Permutation(5)), Error);

  // a nonidentity permutation moves at least two points: min over all of S_4
  Rational least(1);
  std::vector<std::uint32_t> img{0, 1, 2, 3};
  do {
    Permutation q(img);
    if (!q.is_identity()) least = std::min(least, hamming(Permutation(4), q));
  } while (std::next_permutation(img.begin(), img.end()));
  CHECK(least == Rational(2, 4));
}

TEST_CASE("hamming bi-invariance") {
  std::mt19937_64 rng(47);
  for (std::uint32_t degree = 2; degree <= 8; ++degree) {
    std::vector<std::uint32_t> base(degree);
    for (std::uint32_t i = 0; i < degree; ++i) base[i] = i;
    auto rand_perm = [&] {
      auto img = base;
      std::shuffle(img.begin(), img.end(), rng);
      return Permutation(img);
    };
    for (int t = 0; t < 200; ++t) {
      const Permutation p = rand_perm(), q = rand_perm(), r = rand_perm();
      const Rational d = hamming(p, q);
      CHECK(hamming(r.compose(p), r.compose(q)) == d);
      CHECK(hamming(p.compose(r), q.compose(r)) == d);
    }
  }
}

TEST_CASE("sofic defect scoring") {
  // genuine embedding of C_2 into S_2
  SoficMap good;
  good.domain = PartialStructure::group_table(build("cyclic(2)"));
  good.degree = 2;
  good.images = {Permutation(2), Permutation::parse_cycles(2, "(0 1)")};
  const auto s = sofic_defect(good);
  CHECK(s.max_defect == Rational(0));
  CHECK(s.min_separation == Rational(1));

  // collapsing everything to the identity kills the separation
  SoficMap flat = good;
  flat.images = {Permutation(2), Permutation(2)};
  CHECK(sofic_defect(flat).min_separation == Rational(0));
  CHECK(sofic_defect(flat).max_defect == Rational(0));

  // C_3 -> S_3 sending both nontrivial labels to (0 1): defect 2/3
  SoficMap lossy;
  lossy.domain = PartialStructure::group_table(build("cyclic(3)"));
  lossy.degree = 3;
  lossy.images = {Permutation(3), Permutation::parse_cycles(3, "(0 1)"),
                  Permutation::parse_cycles(3, "(0 1)")};
  const auto t = sofic_defect(lossy);
  CHECK(t.max_defect == Rational(2, 3));
  CHECK(t.min_separation == Rational(2, 3));
}

TEST_CASE("sofic search finds the exact embedding of C_2 in S_2") {
  const auto table = PartialStructure::group_table(build("cyclic(2)"));
  const auto m = sofic_search(table, 2, 500, 5);
  const auto s = sofic_defect(m);
  CHECK(s.max_defect == Rational(0));
  CHECK(s.min_separation == Rational(1));
}

TEST_CASE("folner search exact on cyclic groups") {
  // C_n with A = {0,1}: min |V| = min(floor(1/eps) + 1, n)
  for (std::uint32_t n = 2; n <= 12; ++n) {
    const auto g = build("cyclic(" + std::to_string(n) + ")");
    for (const auto& [num, den] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {1, 3}}) {
      FolnerQuery q{g, {0, 1}, Rational(num, den)};
      const auto r = folner_search(q, FolnerMode::exact);
      CHECK(r.exact);
      CHECK(r.certificate_holds(q));
      const std::uint32_t expected = std::min<std::uint32_t>(den / num + 1, n);
      CHECK(r.v.size() == expected);
      CHECK(r.v.size() == oracles::folner_min_oracle(g, {0, 1}, num, den));
    }
  }
}

TEST_CASE("folner corner cases") {
  const auto g = build("cyclic(8)");
  // A = {identity}: V = {identity}
  FolnerQuery singleton{g, {0}, Rational(1, 2)};
  const auto r = folner_search(singleton, FolnerMode::exact);
  CHECK(r.v == std::vector<std::uint32_t>{0});

  // A = G with a small epsilon forces V = G
  std::vector<std::uint32_t> all;
  for (std::uint32_t x = 0; x < g->order(); ++x) all.push_back(x);
  FolnerQuery whole{g, all, Rational(1, 8)};
  const auto w = folner_search(whole, FolnerMode::exact);
  CHECK(w.v.size() == g->order());
  CHECK(w.v.size() == oracles::folner_min_oracle(g, all, 1, 8));

  CHECK_THROWS_AS(folner_search(FolnerQuery{g, {}, Rational(1, 2)}, FolnerMode::exact), Error);
  CHECK_THROWS_AS(folner_search(FolnerQuery{g, {0}, Rational(3, 2)}, FolnerMode::exact), Error);
  CHECK_THROWS_AS(folner_search(FolnerQuery{build("cyclic(17)"), {0}, Rational(1, 2)},
                                FolnerMode::exact),
                  Error);
}

TEST_CASE("greedy upper-bounds exact") {
  std::mt19937_64 rng(53);
  for (const char* text : {"cyclic(12)", "dihedral(8)", "cyclic(16)"}) {
    const auto g = build(text);
    std::uniform_int_distribution<std::uint32_t> pick(0, g->order() - 1);
    for (int t = 0; t < 10; ++t) {
      FolnerQuery q{g, {0, pick(rng)}, Rational(1, 3)};
      const auto exact = folner_search(q, FolnerMode::exact);
      const auto greedy = folner_search(q, FolnerMode::greedy);
      CHECK(greedy.certificate_holds(q));
      CHECK(greedy.v.size() >= exact.v.size());
    }
  }
}

TEST_CASE("amenability profile") {
  const auto c12 = build("cyclic(12)");
  // alpha(eps, 1) = 1 for any group and epsilon
  const auto singles = amenability_profile(c12, 1, {Rational(1, 3)}, 4096, 1);
  CHECK(singles[0].alpha_hat == 1);
  CHECK(singles[0].exact);

  // C_12, |A| = 2, eps = 1/3: the worst window needs 4 elements
  const auto pairs = amenability_profile(c12, 2, {Rational(1, 3)}, 4096, 1);
  CHECK(pairs[0].exact);
  CHECK(pairs[0].alpha_hat == 4);
  CHECK(pairs[0].windows_tried == 66);

  // serial equals parallel
  const auto serial = amenability_profile(c12, 2, {Rational(1, 3)}, 4096, 1, Exec::serial);
  CHECK(serial[0].alpha_hat == pairs[0].alpha_hat);

  // the whole group as the window: at eps <= 1/(|G|-1) only V = G certifies
  const auto c8 = build("cyclic(8)");
  const auto whole = amenability_profile(c8, 8, {Rational(1, 8)}, 4096, 1);
  CHECK(whole[0].alpha_hat == 8);
  CHECK(whole[0].exact);
}

TEST_CASE("amenability profile monotonic on exact instances") {
  const auto c8 = build("cyclic(8)");
  const auto cells =
      amenability_profile(c8, 2, {Rational(1, 4), Rational(1, 2), Rational(1)}, 4096, 1);
  // nonincreasing in epsilon
  CHECK(cells[0].alpha_hat >= cells[1].alpha_hat);
  CHECK(cells[1].alpha_hat >= cells[2].alpha_hat);
  // nondecreasing in the window size
  const auto n1 = amenability_profile(c8, 1, {Rational(1, 2)}, 4096, 1);
  const auto n2 = amenability_profile(c8, 2, {Rational(1, 2)}, 4096, 1);
  const auto n3 = amenability_profile(c8, 3, {Rational(1, 2)}, 4096, 1);
  CHECK(n1[0].alpha_hat <= n2[0].alpha_hat);
  CHECK(n2[0].alpha_hat <= n3[0].alpha_hat);
}
