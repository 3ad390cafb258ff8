#include "fiberlab/compactum.hpp"

#include <algorithm>

#include "fiberlab/error.hpp"

namespace fiberlab {

bool is_anonymous(const std::string &color) { return !color.empty() && color.front() == '*'; }

bool ColorUniverse::contains_named(const std::string &color) const {
  return std::find(named.begin(), named.end(), color) != named.end();
}

bool KPoint::valid(const std::vector<KPair> &pairs, const FiniteTree &tree) {
  if (pairs.size() > 2)
    return false;
  for (const auto &p : pairs)
    if (!tree.find(p.node))
      return false;
  if (pairs.size() == 2) {
    if (pairs[0] == pairs[1])
      return false;
    return tree.comparable(tree.index_of(pairs[0].node), tree.index_of(pairs[1].node));
  }
  return true;
}

KPoint KPoint::make(std::vector<KPair> pairs, const FiniteTree &tree) {
  std::sort(pairs.begin(), pairs.end());
  if (!valid(pairs, tree))
    throw Error(ErrorCode::InvalidInput, "not a point of K[T,Γ]: size above 2, repeated pair, "
                                         "unknown node, or nodes off a common branch");
  KPoint x;
  x.pairs_ = std::move(pairs);
  return x;
}

KPoint KPoint::singleton(KPair p) {
  KPoint x;
  x.pairs_.push_back(std::move(p));
  return x;
}

bool KPoint::contains(const KPair &p) const {
  return std::find(pairs_.begin(), pairs_.end(), p) != pairs_.end();
}

std::string KPoint::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    if (i)
      s += ",";
    s += "(" + pairs_[i].node + "," + pairs_[i].color + ")";
  }
  return s + "}";
}

KPointEnumeration k_points(const FiniteTree &t, const ColorUniverse &colors) {
  std::vector<KPair> singles;
  for (const auto &node : t.ids())
    for (const auto &c : colors.named)
      singles.push_back({node, c});
  std::sort(singles.begin(), singles.end());

  KPointEnumeration out;
  out.anonymous_remainder = colors.unbounded;
  out.points.push_back(KPoint{});
  for (const auto &p : singles)
    out.points.push_back(KPoint::make({p}, t));
  for (std::size_t i = 0; i < singles.size(); ++i)
    for (std::size_t j = i + 1; j < singles.size(); ++j)
      if (KPoint::valid({singles[i], singles[j]}, t))
        out.points.push_back(KPoint::make({singles[i], singles[j]}, t));
  return out;
}

namespace {

bool in_product(const KPair &p, const FiniteTree &t, const NodeSet &s, const ColorUniverse &n) {
  auto idx = t.find(p.node);
  return idx && s.test(*idx) && n.contains_named(p.color);
}

} // namespace

KPoint project_g(const KPoint &x, const FiniteTree &t, const NodeSet &s,
                 const ColorUniverse &n) {
  std::vector<KPair> kept;
  for (const auto &p : x.pairs())
    if (in_product(p, t, s, n))
      kept.push_back(p);
  return KPoint::make(std::move(kept), t);
}

SparseVector embed_l2(const KPoint &x) {
  SparseVector v;
  if (x.empty())
    return v;
  v[x] = Rational(1);
  if (x.size() == 2)
    for (const auto &p : x.pairs())
      v[KPoint::singleton(p)] = Rational(1);
  return v;
}

Rational squared_norm(const SparseVector &v) {
  Rational total(0);
  for (const auto &[key, value] : v)
    total += value * value;
  return total;
}

std::vector<std::set<KPair>> probe_exclusions(const QuotientSetting &q) {
  std::vector<std::set<KPair>> out{{}};
  std::set<KPair> all;
  for (Index s = q.s.find_first(); s != Bits::npos; s = q.s.find_next(s))
    for (const auto &c : q.n.named) {
      out.push_back({KPair{q.tree.id(s), c}});
      all.insert(KPair{q.tree.id(s), c});
    }
  if (all.size() > 1)
    out.push_back(all);
  return out;
}

SymbolicImage neighborhood_image(const QuotientSetting &q, const KPoint &x,
                                 const std::set<KPair> &exclusion) {
  SymbolicImage img;
  img.base = project_g(x, q.tree, q.s, q.n);
  img.extension_nodes = q.tree.empty_set();
  if (x.size() == 2 && x != img.base)
    return img; // isolated point: its singleton neighborhood maps onto the base

  for (const auto &p : exclusion)
    if (!x.contains(p) && in_product(p, q.tree, q.s, q.n) && !img.base.contains(p))
      img.excluded.insert(p);
  // Extensions x ∪ {(s, c)} with (s, c) ∈ S × N map to base ∪ {(s, c)}.
  if (x.size() <= 1) {
    for (Index s = q.s.find_first(); s != Bits::npos; s = q.s.find_next(s)) {
      std::vector<KPair> ext = x.pairs();
      ext.push_back({q.tree.id(s), "*fresh"});
      if (KPoint::valid(ext, q.tree))
        img.extension_nodes.set(s);
    }
  }
  img.includes_pairs = x.empty();
  return img;
}

bool image_contained(const QuotientSetting &q, const SymbolicImage &inner,
                     const SymbolicImage &outer) {
  if (inner.base != outer.base)
    return false;
  if (inner.includes_base && !outer.includes_base)
    return false;
  if (inner.includes_pairs) {
    if (!outer.includes_pairs)
      return false;
    for (const auto &p : outer.excluded)
      if (!inner.excluded.count(p))
        return false;
  }
  for (Index s = inner.extension_nodes.find_first(); s != Bits::npos;
       s = inner.extension_nodes.find_next(s)) {
    const NodeId &node = q.tree.id(s);
    if (outer.extension_nodes.test(s)) {
      bool absorbed = true;
      for (const auto &p : outer.excluded)
        if (p.node == node && !inner.excluded.count(p))
          absorbed = false;
      if (absorbed)
        continue;
    }
    // Only an empty set of extensions at s can still fit.
    if (q.n.unbounded)
      return false;
    for (const auto &c : q.n.named) {
      const KPair p{node, c};
      if (!inner.excluded.count(p) && !inner.base.contains(p))
        return false;
    }
  }
  return true;
}

bool fiber_leq(const QuotientSetting &q, const KPoint &x, const KPoint &x_prime) {
  const auto probes = probe_exclusions(q);
  for (const auto &f : probes) {
    const SymbolicImage outer = neighborhood_image(q, x, f);
    bool found = false;
    // A larger F' gives a smaller image; the last candidate excludes every
    // named pair of S x N.
    for (const auto &f_prime : {std::set<KPair>{}, f, probes.back()}) {
      if (image_contained(q, neighborhood_image(q, x_prime, f_prime), outer)) {
        found = true;
        break;
      }
    }
    if (!found)
      return false;
  }
  return true;
}

std::vector<KPoint> fiber_members(const QuotientSetting &q, const KPoint &y) {
  std::vector<KPoint> out{y};
  if (y.size() > 1)
    return out;
  for (Index t = 0; t < q.tree.size(); ++t) {
    const NodeId &node = q.tree.id(t);
    std::vector<KPair> extras{{node, kAnonymousColor}};
    for (const auto &c : q.m.named)
      if (!in_product({node, c}, q.tree, q.s, q.n))
        extras.push_back({node, c});
    for (const auto &p : extras) {
      std::vector<KPair> pairs = y.pairs();
      pairs.push_back(p);
      if (KPoint::valid(pairs, q.tree))
        out.push_back(KPoint::make(std::move(pairs), q.tree));
    }
  }
  if (y.empty()) {
    for (Index t = 0; t < q.tree.size(); ++t) {
      out.push_back(KPoint::make({{q.tree.id(t), "*"}, {q.tree.id(t), "*2"}}, q.tree));
      for (Index u = 0; u < q.tree.size(); ++u)
        if (u != t && q.tree.precedes(t, u))
          out.push_back(KPoint::make({{q.tree.id(t), "*"}, {q.tree.id(u), "*"}}, q.tree));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

FiberOrder fiber_order_oracle(const QuotientSetting &q, const KPoint &y) {
  if (!q.m.unbounded || !q.n.unbounded)
    throw Error(ErrorCode::UnboundedRequired,
                "fiber order oracle needs infinitely many colors in N and outside N");
  for (const auto &c : q.n.named)
    if (!q.m.contains_named(c))
      throw Error(ErrorCode::InvalidInput, "color '" + c + "' of N is not a color of M");
  if (!q.tree.is_subtree(q.s))
    throw Error(ErrorCode::NotASubtree, "S is not a rooted subtree of T");
  for (const auto &p : y.pairs())
    if (!in_product(p, q.tree, q.s, q.n))
      throw Error(ErrorCode::InvalidInput, "y = " + y.to_string() + " is not a point of K[S,N]");

  const std::vector<KPoint> members = fiber_members(q, y);
  const std::size_t k = members.size();
  std::vector<std::vector<bool>> leq(k, std::vector<bool>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      leq[i][j] = i == j || fiber_leq(q, members[i], members[j]);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t l = 0; l < k; ++l)
        if (leq[i][j] && leq[j][l] && !leq[i][l])
          throw std::logic_error("fiber relation is not transitive at " + members[i].to_string());

  // Members are sorted, so the first member of each class is its least.
  std::vector<std::size_t> cls(k, k);
  std::vector<std::size_t> reps;
  FiberOrder out;
  for (std::size_t i = 0; i < k; ++i) {
    if (cls[i] != k)
      continue;
    cls[i] = reps.size();
    out.classes.push_back({members[i]});
    for (std::size_t j = i + 1; j < k; ++j)
      if (cls[j] == k && leq[i][j] && leq[j][i]) {
        cls[j] = reps.size();
        out.classes.back().push_back(members[j]);
      }
    reps.push_back(i);
  }
  std::vector<ElementId> elems;
  std::map<ElementId, std::string> labels;
  for (std::size_t c = 0; c < reps.size(); ++c) {
    elems.push_back(members[reps[c]].to_string());
    labels.emplace(elems.back(), std::to_string(out.classes[c].size()) + " member(s)");
  }
  std::vector<std::pair<ElementId, ElementId>> rel;
  for (std::size_t a = 0; a < reps.size(); ++a)
    for (std::size_t b = 0; b < reps.size(); ++b)
      if (a != b && leq[reps[a]][reps[b]])
        rel.emplace_back(elems[a], elems[b]);
  out.order = Poset::build(elems, rel, labels);
  // Poset indices follow id order; realign the classes with them.
  std::vector<std::vector<KPoint>> aligned(reps.size());
  for (std::size_t c = 0; c < reps.size(); ++c)
    aligned[out.order.index_of(elems[c])] = std::move(out.classes[c]);
  out.classes = std::move(aligned);
  return out;
}

} // namespace fiberlab
