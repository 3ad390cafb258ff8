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

// Block index and level inside the block, read off the "g<γ>." prefix and
// by counting parent links up to the block root.
std::pair<int, std::size_t> block_position(const FiniteTree &t, Index x) {
  const NodeId &id = t.id(x);
  const int g = std::stoi(id.substr(1, id.find('.') - 1));
  std::size_t level = 0;
  for (Index y = x; *t.parent(y) != t.root(); y = *t.parent(y))
    ++level;
  return {g, level};
}

bool oracle_member(const FiniteTree &t, const NodeSet &s, int delta, int unit) {
  std::map<int, bool> touched;
  for (Index x = 0; x < t.size(); ++x)
    if (x != t.root() && s.test(x))
      touched[block_position(t, x).first] = true;
  for (Index x = 0; x < t.size(); ++x) {
    if (x == t.root() || s.test(x))
      continue;
    const auto [g, level] = block_position(t, x);
    if (g <= delta)
      return false;
    if (touched[g] && level < static_cast<std::size_t>(unit * (delta + 1)))
      return false;
  }
  return true;
}

} // namespace

TEST_CASE("caterpillar shape") {
  for (int unit = 1; unit <= 4; ++unit)
    for (int index = 1; index <= 3; ++index) {
      const FiniteTree t = make_upsilon({unit, index, Profile::Caterpillar});
      const std::size_t n = static_cast<std::size_t>(unit * index);
      CHECK(t.size() == 2 * n + 1);
      const TreeStats st = tree_stats(t);
      CHECK(st.height == n);
      CHECK(st.max_branch_length == n);
      CHECK(st.ever_branching);
      CHECK(t.spine().size() == n + 1);
      CHECK(t.label(t.root()) == std::to_string(index));
      for (std::size_t d = 1; d <= n; ++d)
        CHECK(st.level_sizes[d] == 2);
    }
}

TEST_CASE("complete binary shape") {
  const FiniteTree t = make_upsilon({2, 2, Profile::CompleteBinary});
  const TreeStats st = tree_stats(t);
  CHECK(t.size() == 31);
  CHECK(st.height == 4);
  CHECK(st.ever_branching);
  CHECK(st.level_sizes == std::vector<std::size_t>{1, 2, 4, 8, 16});
  CHECK(code_of([] { make_upsilon({6, 3, Profile::CompleteBinary}, 4096); }) ==
        ErrorCode::SizeCapExceeded);
}

TEST_CASE("family trees hang one block per index under a fresh root") {
  const FiniteTree f = make_upsilon_family({1, 2}, 1, Profile::Caterpillar);
  CHECK(f.size() == 1 + 3 + 5);
  CHECK(f.root_id() == "0");
  CHECK(f.children(f.root()).size() == 2);
  CHECK(f.find("g2.b2").has_value());
  const auto blocks = family_blocks(f);
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[0].index == 1);
  CHECK(blocks[0].nodes.count() == 3);
  CHECK(blocks[1].nodes.count() == 5);
  CHECK(code_of([] { make_upsilon_family({}, 1, Profile::Caterpillar); }) ==
        ErrorCode::ParameterViolation);
  CHECK(code_of([] { make_upsilon_family({0}, 1, Profile::Caterpillar); }) ==
        ErrorCode::ParameterViolation);
}

TEST_CASE("tree validation") {
  CHECK(code_of([] { FiniteTree::build("0", {{"a", "b"}, {"b", "a"}}); }) ==
        ErrorCode::InvalidInput);
  CHECK(code_of([] { FiniteTree::build("0", {{"a", "z"}}); }) == ErrorCode::InvalidInput);
  const FiniteTree t = FiniteTree::build("0", {{"a", "0"}, {"b", "a"}});
  CHECK(t.precedes(t.index_of("0"), t.index_of("b")));
  CHECK_FALSE(t.precedes(t.index_of("b"), t.index_of("a")));
  CHECK(code_of([&] { t.restrict(t.node_set({"b"})); }) == ErrorCode::NotASubtree);
  CHECK(t.restrict(t.node_set({"0", "a"})).size() == 2);
}

TEST_CASE("all_subtrees matches the power-set filter") {
  for (const FiniteTree &t : corpus::tree_list()) {
    const auto got = all_subtrees(t);
    const auto want = corpus::brute_subtrees(t);
    CHECK(std::set<NodeSet>(got.begin(), got.end()) == std::set<NodeSet>(want.begin(), want.end()));
    CHECK(got.size() == want.size());
  }
  // One node, then 1, 2, 4 and 9 trees: the counts of rooted trees.
  const std::vector<std::size_t> counts{1, 1, 2, 4, 9};
  for (std::size_t n = 1; n <= counts.size(); ++n)
    CHECK(corpus::rooted_trees(n).size() == counts[n - 1]);
}

TEST_CASE("comparability sets") {
  const FiniteTree t = make_upsilon({2, 1, Profile::Caterpillar});
  const NodeSet full = t.full_set();
  const NodeSet r = comparability_upset(t, full, t.index_of("l1"));
  CHECK(t.node_ids(r) == std::vector<NodeId>{"b0", "b1", "l1"});
  CHECK(comparability_upset(t, full, t.root()) == full);
}

TEST_CASE("admissible subtrees are exactly the filtered subtrees") {
  struct Case {
    std::set<int> indices;
    int delta, unit;
  };
  const std::vector<Case> cases{{{1}, 1, 1}, {{2}, 1, 1}, {{1, 2}, 1, 1}, {{2, 3}, 1, 1},
                                {{1, 3}, 2, 1}, {{2}, 1, 2}, {{1, 2}, 1, 2}, {{3}, 2, 1}};
  for (const auto &c : cases) {
    const FiniteTree f = make_upsilon_family(c.indices, c.unit, Profile::Caterpillar);
    const auto got = admissible_subtrees(f, c.indices, c.delta, c.unit);
    std::set<NodeSet> want;
    for (const NodeSet &s : corpus::brute_subtrees(f)) {
      const bool member = oracle_member(f, s, c.delta, c.unit);
      CHECK(is_in_family_F(s, f, c.indices, c.delta, c.unit).member == member);
      if (member)
        want.insert(s);
    }
    CHECK(std::set<NodeSet>(got.begin(), got.end()) == want);
    REQUIRE_FALSE(got.empty());
    CHECK(got.front() == f.full_set());
  }
}

TEST_CASE("membership failures name the violated condition") {
  const FiniteTree f = make_upsilon_family({1, 2}, 1, Profile::Caterpillar);
  const NodeSet s = f.node_set({"0", "g1.b0", "g1.b1", "g2.b0"});
  const auto v = is_in_family_F(s, f, {1, 2}, 1, 1);
  CHECK_FALSE(v.member);
  REQUIRE(v.reasons.size() == 2);
  CHECK(v.reasons[0].rfind("full_block", 0) == 0);
  CHECK(v.reasons[1].rfind("prefix_levels", 0) == 0);
  CHECK(code_of([&] { is_in_family_F(f.node_set({"g1.b0"}), f, {1, 2}, 1, 1); }) ==
        ErrorCode::NotASubtree);
}

TEST_CASE("profile names") {
  CHECK(parse_profile(to_string(Profile::Caterpillar)) == Profile::Caterpillar);
  CHECK(parse_profile(to_string(Profile::CompleteBinary)) == Profile::CompleteBinary);
  CHECK(code_of([] { parse_profile("bushy"); }) == ErrorCode::InvalidInput);
}
