#include "fiberlab/rposet.hpp"

#include <algorithm>

#include "fiberlab/error.hpp"
#include "fiberlab/walks.hpp"

namespace fiberlab {

namespace {

std::string set_label(const FiniteTree &t, const NodeSet &s) {
  std::string out = "{";
  for (Index x = s.find_first(); x != Bits::npos; x = s.find_next(x)) {
    if (out.size() > 1)
      out += ",";
    out += t.id(x);
  }
  return out + "}";
}

Poset with_top(const Poset &p) {
  std::string top = "top";
  while (p.find(top))
    top += "'";
  std::vector<ElementId> elems = p.ids();
  elems.push_back(top);
  std::vector<std::pair<ElementId, ElementId>> rel;
  for (Index x = 0; x < p.size(); ++x)
    rel.emplace_back(p.id(x), top);
  for (const auto &[lo, hi] : p.covers())
    rel.emplace_back(p.id(lo), p.id(hi));
  return Poset::build(std::move(elems), rel);
}

std::vector<ElementId> element_ids(const Poset &p, const std::vector<Index> &xs) {
  std::vector<ElementId> out;
  for (Index x : xs)
    out.push_back(p.id(x));
  std::sort(out.begin(), out.end());
  return out;
}

std::string join(const std::vector<ElementId> &ids) {
  std::string out;
  for (const auto &id : ids)
    out += (out.empty() ? "" : " ") + id;
  return out.empty() ? "(none)" : out;
}

} // namespace

RPoset build_R(const NodeSet &s, const FiniteTree &t) {
  if (s.size() != t.size() || !t.is_subtree(s))
    throw Error(ErrorCode::NotASubtree, "S is not a rooted subtree of T");

  RPoset r;
  r.tree = t;
  r.subtree = s;
  std::vector<NodeSet> distinct;
  std::vector<ElementId> elems;
  std::map<ElementId, std::string> labels;
  // Nodes are visited in id order, so the first node giving a set is the
  // least representative.
  for (Index x = 0; x < t.size(); ++x) {
    const NodeSet set = comparability_upset(t, s, x);
    auto it = std::find(distinct.begin(), distinct.end(), set);
    if (it == distinct.end()) {
      const ElementId id = "r:" + t.id(x);
      distinct.push_back(set);
      elems.push_back(id);
      r.rep.emplace(id, t.id(x));
      r.sets.emplace(id, set);
      labels.emplace(id, set_label(t, set));
      r.of_node.emplace(t.id(x), id);
    } else {
      r.of_node.emplace(t.id(x), elems[static_cast<std::size_t>(it - distinct.begin())]);
    }
  }
  std::vector<std::pair<ElementId, ElementId>> rel;
  for (std::size_t i = 0; i < distinct.size(); ++i)
    for (std::size_t j = 0; j < distinct.size(); ++j)
      if (distinct[j].is_proper_subset_of(distinct[i]))
        rel.emplace_back(elems[i], elems[j]);
  r.poset = adjoin_bounds(Poset::build(elems, rel, labels));
  r.carrier = std::make_shared<const Poset>(r.poset.whole);
  return r;
}

bool RStructureReport::passed() const {
  return std::all_of(clauses.begin(), clauses.end(), [](const auto &c) { return c.passed; });
}

RStructureReport check_R_structure(const RPoset &r, const FamilyContext &context) {
  RStructureReport report;
  const Poset &inner = r.poset.inner;

  {
    ClauseResult c{"minimum", r.root_element(), true, "", {}};
    const auto least = inner.minimum();
    if (!least) {
      c.passed = false;
      c.detail = "R has no minimum";
      c.witness = element_ids(inner, inner.minimal_elements());
    } else if (inner.id(*least) != r.root_element() || r.sets.at(inner.id(*least)) != r.subtree) {
      c.passed = false;
      c.detail = "minimum is " + inner.id(*least) + ", not the set S";
      c.witness = {inner.id(*least)};
    }
    report.clauses.push_back(std::move(c));
  }

  const auto blocks = family_blocks(r.tree);
  std::vector<const Block *> present;
  for (const auto &b : blocks)
    if (r.subtree.test(b.root))
      present.push_back(&b);

  {
    std::vector<ElementId> expected;
    if (present.size() >= 2) {
      for (const Block *b : present)
        expected.push_back(r.of_node.at(r.tree.id(b->root)));
    } else if (present.size() == 1) {
      for (Index child : r.tree.children(present.front()->root))
        if (r.subtree.test(child))
          expected.push_back(r.of_node.at(r.tree.id(child)));
    }
    std::sort(expected.begin(), expected.end());
    expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
    const Index r0 = inner.index_of(r.root_element());
    const auto actual = element_ids(inner, imsuc(inner, r0));
    ClauseResult c{"root_successors", r.root_element(), actual == expected, "", actual};
    if (!c.passed)
      c.detail = "expected " + join(expected) + ", found " + join(actual);
    report.clauses.push_back(std::move(c));
  }

  for (int gamma : context.indices) {
    auto block = std::find_if(blocks.begin(), blocks.end(),
                              [&](const Block &b) { return b.index == gamma; });
    const std::string subject = "index " + std::to_string(gamma);
    if (block == blocks.end()) {
      report.clauses.push_back({gamma <= context.delta ? "low_block_shape" : "high_block_walk",
                                subject, false, "no block with this index", {}});
      continue;
    }
    const ElementId root_set = r.of_node.at(r.tree.id(block->root));

    if (gamma <= context.delta) {
      ClauseResult c{"low_block_shape", subject, true, "", {}};
      if (!r.subtree.test(block->root)) {
        c.passed = false;
        c.detail = "block root not in S";
      } else {
        const Poset upper = inner.induced(inner.up(inner.index_of(root_set)));
        const Poset shape =
            make_upsilon({context.unit, gamma, context.profile}).as_poset();
        const bool plain = upper.size() == shape.size() &&
                           are_isomorphic(upper, shape, context.iso_cap);
        const bool topped = !plain && upper.size() == shape.size() + 1 &&
                            are_isomorphic(upper, with_top(shape), context.iso_cap);
        c.passed = plain || topped;
        c.detail = std::to_string(upper.size()) + " elements above " + root_set + ", block has " +
                   std::to_string(shape.size()) + (plain ? ", isomorphic" : "") +
                   (topped ? ", isomorphic after adding a top" : "");
        if (!c.passed)
          c.witness = upper.ids();
      }
      report.clauses.push_back(std::move(c));
    } else if (r.subtree.test(block->root)) {
      // The walk lives in the up-set of the block root's set and starts there.
      const std::size_t length = static_cast<std::size_t>(context.unit) *
                                 static_cast<std::size_t>(context.delta + 1);
      const auto upper =
          std::make_shared<const Poset>(inner.induced(inner.up(inner.index_of(root_set))));
      const auto walk = walk_through(upper, upper->index_of(root_set), length);
      ClauseResult c{"high_block_walk", subject, walk.has_value(), "", {}};
      c.detail = (walk ? "walk of " : "no walk of ") + std::to_string(length) +
                 " elements starting at " + root_set;
      if (walk)
        c.witness = walk->ids();
      report.clauses.push_back(std::move(c));
    }
  }
  return report;
}

std::string to_string(FiberKind kind) {
  switch (kind) {
  case FiberKind::Trivial:
    return "trivial";
  case FiberKind::IntervalSurrogate:
    return "interval";
  case FiberKind::BigFiber:
    return "big";
  }
  return "?";
}

FiberTypeDescriptor classify_fiber(const std::vector<std::pair<KPoint, Rational>> &support,
                                   const QuotientSetting &q) {
  if (support.empty())
    throw Error(ErrorCode::InvalidWeights, "empty support");
  Rational total(0);
  for (const auto &[point, weight] : support) {
    if (weight <= 0)
      throw Error(ErrorCode::InvalidWeights, "weight of " + point.to_string() + " is not positive");
    total += weight;
  }
  if (total != Rational(1))
    throw Error(ErrorCode::InvalidWeights, "weights sum to " + to_string(total));

  std::set<KPoint> seen;
  FiberTypeDescriptor out;
  for (const auto &[point, weight] : support) {
    if (!seen.insert(point).second)
      throw Error(ErrorCode::InvalidInput, "repeated support point " + point.to_string());
    if (!KPoint::valid(point.pairs(), q.tree) || project_g(point, q.tree, q.s, q.n) != point)
      throw Error(ErrorCode::InvalidInput, point.to_string() + " is not a point of K[S,N]");
    FiberFactor f;
    f.weight = weight;
    f.point = point;
    if (point.size() == 2) {
      f.kind = FiberKind::Trivial;
    } else if (point.size() == 1) {
      f.kind = FiberKind::IntervalSurrogate;
    } else {
      f.kind = FiberKind::BigFiber;
      f.big = build_R(q.s, q.tree);
    }
    out.factors.push_back(std::move(f));
  }
  return out;
}

} // namespace fiberlab
