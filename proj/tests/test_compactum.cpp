#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corpus.hpp"
#include "fiberlab/error.hpp"

using namespace fiberlab;

namespace {

ErrorCode code_of(const std::function<void()> &f) {
  try {
    f();
  } catch (const Error &e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidInput;
}

FiniteTree cherry() { return FiniteTree::build("0", {{"a", "0"}, {"b", "0"}}); }

} // namespace

TEST_CASE("points need at most two pairs on one branch") {
  const FiniteTree t = cherry();
  CHECK(KPoint::valid({{"0", "c"}, {"a", "c"}}, t));
  CHECK(KPoint::valid({{"a", "c"}, {"a", "d"}}, t));
  CHECK_FALSE(KPoint::valid({{"a", "c"}, {"b", "c"}}, t));
  CHECK_FALSE(KPoint::valid({{"0", "c"}, {"a", "c"}, {"a", "d"}}, t));
  CHECK_FALSE(KPoint::valid({{"z", "c"}}, t));
  CHECK(code_of([&] { KPoint::make({{"a", "c"}, {"b", "c"}}, t); }) == ErrorCode::InvalidInput);
  const KPoint x = KPoint::make({{"a", "c"}, {"0", "d"}}, t);
  CHECK(x.pairs().front().node == "0");
}

TEST_CASE("point enumeration counts") {
  // With k named colors on n nodes: 1 + nk one-point sets, plus two-point
  // sets over comparable or equal node pairs.
  for (const FiniteTree &t : corpus::tree_list()) {
    for (std::size_t k = 1; k <= 2; ++k) {
      ColorUniverse colors;
      for (std::size_t i = 0; i < k; ++i)
        colors.named.push_back(std::string(1, char('c' + i)));
      std::vector<KPair> all;
      for (const auto &id : t.ids())
        for (const auto &c : colors.named)
          all.push_back({id, c});
      std::size_t expected = 1 + all.size();
      for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j)
          expected += t.comparable(t.index_of(all[i].node), t.index_of(all[j].node));
      const auto e = k_points(t, colors);
      CHECK(e.points.size() == expected);
      CHECK_FALSE(e.anonymous_remainder);
      CHECK(std::set<KPoint>(e.points.begin(), e.points.end()).size() == expected);
    }
  }
  CHECK(k_points(cherry(), {{"c"}, true}).anonymous_remainder);
}

TEST_CASE("projection keeps the pairs over S with colors in N") {
  const FiniteTree t = cherry();
  const NodeSet s = t.node_set({"0", "a"});
  const ColorUniverse n{{"c"}, true};
  const KPoint x = KPoint::make({{"0", "c"}, {"a", "d"}}, t);
  CHECK(project_g(x, t, s, n) == KPoint::singleton({"0", "c"}));
  const KPoint y = KPoint::make({{"b", "c"}}, t);
  CHECK(project_g(y, t, s, n).empty());
  const KPoint anon = KPoint::make({{"a", "*"}}, t);
  CHECK(project_g(anon, t, s, n).empty());
}

TEST_CASE("embedding norms") {
  const FiniteTree t = cherry();
  CHECK(squared_norm(embed_l2(KPoint{})) == Rational(0));
  CHECK(squared_norm(embed_l2(KPoint::singleton({"a", "c"}))) == Rational(1));
  const KPoint two = KPoint::make({{"0", "c"}, {"a", "c"}}, t);
  const SparseVector v = embed_l2(two);
  CHECK(v.size() == 3);
  CHECK(squared_norm(v) == Rational(3));
}

TEST_CASE("fiber over the empty set for a two-node subtree of a cherry") {
  const FiniteTree t = cherry();
  const QuotientSetting q{t, t.node_set({"0", "a"}), {{"c"}, true}, {{"c"}, true}};
  const FiberOrder f = fiber_order_oracle(q, KPoint{});
  CHECK(f.order.size() == 4);
  CHECK(are_isomorphic(f.order, chain_poset(4)));
  const RPoset r = build_R(q.s, t);
  CHECK(are_isomorphic(f.order, r.poset.whole));
}

TEST_CASE("fibers over nonempty points") {
  for (const auto &pair : corpus::subtree_pairs()) {
    if (pair.tree.size() > 4)
      continue;
    const QuotientSetting q = corpus::quotient(pair);
    for (Index x = pair.s.find_first(); x != Bits::npos; x = pair.s.find_next(x)) {
      const NodeId &id = pair.tree.id(x);
      const FiberOrder one = fiber_order_oracle(q, KPoint::singleton({id, "c"}));
      CHECK(are_isomorphic(one.order, chain_poset(2)));
      if (pair.tree.parent(x) && pair.s.test(*pair.tree.parent(x))) {
        const KPoint two = KPoint::make({{pair.tree.id(*pair.tree.parent(x)), "c"}, {id, "c"}},
                                        pair.tree);
        CHECK(fiber_order_oracle(q, two).order.size() == 1);
      }
    }
  }
}

TEST_CASE("the oracle needs unbounded color sets and points of the target") {
  const FiniteTree t = cherry();
  const QuotientSetting bounded{t, t.full_set(), {{"c"}, false}, {{"c"}, true}};
  CHECK(code_of([&] { fiber_order_oracle(bounded, KPoint{}); }) == ErrorCode::UnboundedRequired);
  const QuotientSetting q{t, t.node_set({"0"}), {{"c"}, true}, {{"c"}, true}};
  CHECK(code_of([&] { fiber_order_oracle(q, KPoint::singleton({"a", "c"})); }) ==
        ErrorCode::InvalidInput);
}

TEST_CASE("neighborhood images shrink as exclusions grow") {
  const FiniteTree t = cherry();
  const QuotientSetting q{t, t.full_set(), {{"c"}, true}, {{"c"}, true}};
  const KPoint x = KPoint::singleton({"0", "c"});
  const auto probes = probe_exclusions(q);
  CHECK(probes.size() == 1 + 3 + 1);
  const SymbolicImage wide = neighborhood_image(q, x, {});
  const SymbolicImage narrow = neighborhood_image(q, x, probes.back());
  CHECK(image_contained(q, narrow, wide));
  CHECK(fiber_leq(q, x, x));
}
