#include "fiberlab/poset.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "fiberlab/error.hpp"

namespace fiberlab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
  case ErrorCode::CycleDetected: return "CycleDetected";
  case ErrorCode::UnknownElement: return "UnknownElement";
  case ErrorCode::SizeCapExceeded: return "SizeCapExceeded";
  case ErrorCode::NotASubtree: return "NotASubtree";
  case ErrorCode::UnboundedRequired: return "UnboundedRequired";
  case ErrorCode::CarrierMismatch: return "CarrierMismatch";
  case ErrorCode::NotAbove: return "NotAbove";
  case ErrorCode::NotAChain: return "NotAChain";
  case ErrorCode::InvalidWeights: return "InvalidWeights";
  case ErrorCode::InvalidMeasure: return "InvalidMeasure";
  case ErrorCode::NotADiscreteWalk: return "NotADiscreteWalk";
  case ErrorCode::NoMinimum: return "NoMinimum";
  case ErrorCode::ParameterViolation: return "ParameterViolation";
  case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

Poset Poset::build(std::vector<ElementId> elements,
                   const std::vector<std::pair<ElementId, ElementId>> &relations,
                   std::map<ElementId, std::string> labels) {
  std::sort(elements.begin(), elements.end());
  if (std::adjacent_find(elements.begin(), elements.end()) != elements.end())
    throw Error(ErrorCode::InvalidInput, "duplicate element id");

  Poset p;
  const std::size_t n = elements.size();
  p.ids_ = std::move(elements);
  for (Index i = 0; i < n; ++i)
    p.index_.emplace(p.ids_[i], i);

  std::vector<std::vector<Index>> succ(n);
  std::vector<std::size_t> indegree(n, 0);
  for (const auto &[lo, hi] : relations) {
    const Index a = p.index_of(lo);
    const Index b = p.index_of(hi);
    if (a == b)
      throw Error(ErrorCode::CycleDetected, "self-relation on '" + lo + "'");
    succ[a].push_back(b);
  }
  for (auto &s : succ) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (Index b : s)
      ++indegree[b];
  }

  // Kahn order; leftovers sit on a cycle.
  std::vector<Index> topo;
  topo.reserve(n);
  for (Index i = 0; i < n; ++i)
    if (indegree[i] == 0)
      topo.push_back(i);
  for (std::size_t k = 0; k < topo.size(); ++k)
    for (Index b : succ[topo[k]])
      if (--indegree[b] == 0)
        topo.push_back(b);
  if (topo.size() != n) {
    for (Index i = 0; i < n; ++i)
      if (indegree[i] != 0)
        throw Error(ErrorCode::CycleDetected, "cycle through '" + p.ids_[i] + "'");
  }

  p.up_.assign(n, Bits(n));
  p.down_.assign(n, Bits(n));
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    const Index x = *it;
    p.up_[x].set(x);
    for (Index y : succ[x])
      p.up_[x] |= p.up_[y];
  }
  for (Index x = 0; x < n; ++x)
    for (Index y = p.up_[x].find_first(); y != Bits::npos; y = p.up_[x].find_next(y))
      p.down_[y].set(x);

  p.upper_covers_.assign(n, {});
  p.lower_covers_.assign(n, {});
  for (Index x = 0; x < n; ++x) {
    Bits strict = p.up_[x];
    strict.reset(x);
    for (Index y = strict.find_first(); y != Bits::npos; y = strict.find_next(y)) {
      if ((strict & p.down_[y]).count() == 1) {
        p.upper_covers_[x].push_back(y);
        p.lower_covers_[y].push_back(x);
      }
    }
  }
  for (auto &lc : p.lower_covers_)
    std::sort(lc.begin(), lc.end());

  for (const auto &[key, text] : labels) {
    if (!p.index_.count(key))
      throw Error(ErrorCode::InvalidInput, "label for unknown element '" + key + "'");
  }
  p.labels_ = std::move(labels);
  return p;
}

const ElementId &Poset::id(Index i) const {
  check_index(i);
  return ids_[i];
}

Index Poset::index_of(const ElementId &id) const {
  auto it = index_.find(id);
  if (it == index_.end())
    throw Error(ErrorCode::UnknownElement, "'" + id + "'");
  return it->second;
}

std::optional<Index> Poset::find(const ElementId &id) const {
  auto it = index_.find(id);
  if (it == index_.end())
    return std::nullopt;
  return it->second;
}

void Poset::check_index(Index i) const {
  if (i >= ids_.size())
    throw Error(ErrorCode::UnknownElement, "index " + std::to_string(i));
}

std::vector<std::pair<Index, Index>> Poset::covers() const {
  std::vector<std::pair<Index, Index>> out;
  for (Index x = 0; x < size(); ++x)
    for (Index y : upper_covers_[x])
      out.emplace_back(x, y);
  return out;
}

std::size_t Poset::cover_count() const {
  std::size_t c = 0;
  for (const auto &uc : upper_covers_)
    c += uc.size();
  return c;
}

std::string Poset::label(Index i) const {
  auto it = labels_.find(id(i));
  return it == labels_.end() ? std::string{} : it->second;
}

std::optional<Index> Poset::minimum() const {
  for (Index i = 0; i < size(); ++i)
    if (up_[i].count() == size())
      return i;
  return std::nullopt;
}

std::optional<Index> Poset::maximum() const {
  for (Index i = 0; i < size(); ++i)
    if (down_[i].count() == size())
      return i;
  return std::nullopt;
}

std::vector<Index> Poset::minimal_elements() const {
  std::vector<Index> out;
  for (Index i = 0; i < size(); ++i)
    if (lower_covers_[i].empty())
      out.push_back(i);
  return out;
}

std::vector<Index> Poset::maximal_elements() const {
  std::vector<Index> out;
  for (Index i = 0; i < size(); ++i)
    if (upper_covers_[i].empty())
      out.push_back(i);
  return out;
}

std::size_t Poset::comparable_pairs() const {
  std::size_t c = 0;
  for (const auto &u : up_)
    c += u.count();
  return c;
}

Poset Poset::induced(const Bits &subset) const {
  std::vector<ElementId> elems;
  std::vector<std::pair<ElementId, ElementId>> rel;
  std::map<ElementId, std::string> labs;
  for (Index x = subset.find_first(); x != Bits::npos; x = subset.find_next(x)) {
    elems.push_back(ids_[x]);
    if (auto it = labels_.find(ids_[x]); it != labels_.end())
      labs.emplace(it->first, it->second);
    Bits above = up_[x] & subset;
    above.reset(x);
    for (Index y = above.find_first(); y != Bits::npos; y = above.find_next(y))
      rel.emplace_back(ids_[x], ids_[y]);
  }
  return build(std::move(elems), rel, std::move(labs));
}

bool operator==(const Poset &a, const Poset &b) {
  return a.ids_ == b.ids_ && a.upper_covers_ == b.upper_covers_ && a.labels_ == b.labels_;
}

Poset build_poset(std::vector<ElementId> elements,
                  const std::vector<std::pair<ElementId, ElementId>> &cover_pairs) {
  return Poset::build(std::move(elements), cover_pairs);
}

std::vector<Index> imsuc(const Poset &p, Index t) {
  p.id(t);
  return p.upper_covers(t);
}

bool interval_is_chain(const Poset &p, Index a, Index b) {
  const Bits interval = p.up(a) & p.down(b);
  for (Index x = interval.find_first(); x != Bits::npos; x = interval.find_next(x))
    for (Index y = interval.find_next(x); y != Bits::npos; y = interval.find_next(y))
      if (!p.comparable(x, y))
        return false;
  return true;
}

std::vector<Index> lisuc(const Poset &p, Index t) {
  p.id(t);
  Bits linear(p.size());
  for (Index x = p.up(t).find_first(); x != Bits::npos; x = p.up(t).find_next(x))
    if (x != t && interval_is_chain(p, t, x))
      linear.set(x);
  std::vector<Index> out;
  for (Index x = linear.find_first(); x != Bits::npos; x = linear.find_next(x)) {
    Bits above = p.up(x) & linear;
    if (above.count() == 1)
      out.push_back(x);
  }
  return out;
}

std::vector<Bits> upsets(const Poset &p, std::size_t cap) {
  const std::size_t n = p.size();
  std::vector<Bits> out;
  // Antichains in increasing index order; `allowed` holds the elements
  // incomparable to everything chosen so far.
  std::function<void(Index, const Bits &, const Bits &)> rec =
      [&](Index from, const Bits &current, const Bits &allowed) {
        if (out.size() >= cap)
          throw Error(ErrorCode::SizeCapExceeded,
                      "more than " + std::to_string(cap) + " upsets");
        out.push_back(current);
        for (Index x = from; x < n; ++x) {
          if (!allowed.test(x))
            continue;
          Bits next = allowed - p.up(x);
          next -= p.down(x);
          rec(x + 1, current | p.up(x), next);
        }
      };
  rec(0, p.empty_set(), p.full_set());
  return out;
}

Bits upper_bounds(const Poset &p, const std::vector<Index> &set) {
  Bits ub = p.full_set();
  for (Index a : set)
    ub &= p.up(a);
  return ub;
}

std::optional<Index> supremum(const Poset &p, const std::vector<Index> &set) {
  for (Index a : set)
    p.id(a);
  const Bits ub = upper_bounds(p, set);
  for (Index x = ub.find_first(); x != Bits::npos; x = ub.find_next(x))
    if (ub.is_subset_of(p.up(x)))
      return x;
  return std::nullopt;
}

Poset product(const Poset &p, const Poset &q, std::size_t cap) {
  if (p.size() * q.size() > cap)
    throw Error(ErrorCode::SizeCapExceeded,
                "product of " + std::to_string(p.size()) + " x " + std::to_string(q.size()));
  auto name = [&](Index a, Index b) { return "(" + p.id(a) + "," + q.id(b) + ")"; };
  std::vector<ElementId> elems;
  std::vector<std::pair<ElementId, ElementId>> rel;
  for (Index a = 0; a < p.size(); ++a)
    for (Index b = 0; b < q.size(); ++b) {
      elems.push_back(name(a, b));
      for (Index a2 : p.upper_covers(a))
        rel.emplace_back(name(a, b), name(a2, b));
      for (Index b2 : q.upper_covers(b))
        rel.emplace_back(name(a, b), name(a, b2));
    }
  return Poset::build(std::move(elems), rel);
}

BoundedPoset adjoin_bounds(const Poset &p) {
  auto fresh = [&](std::string base) {
    while (p.find(base))
      base += "'";
    return base;
  };
  BoundedPoset out;
  out.inner = p;
  out.bottom = fresh("-inf");
  out.top = fresh("+inf");
  std::vector<ElementId> elems = p.ids();
  elems.push_back(out.bottom);
  elems.push_back(out.top);
  std::vector<std::pair<ElementId, ElementId>> rel;
  rel.emplace_back(out.bottom, out.top);
  for (Index x = 0; x < p.size(); ++x) {
    rel.emplace_back(out.bottom, p.id(x));
    rel.emplace_back(p.id(x), out.top);
    for (Index y : p.upper_covers(x))
      rel.emplace_back(p.id(x), p.id(y));
  }
  out.whole = Poset::build(std::move(elems), rel, p.labels());
  return out;
}

std::vector<std::vector<Index>> maximal_chains(const Poset &p) {
  std::vector<std::vector<Index>> out;
  std::vector<Index> chain;
  std::function<void(Index)> rec = [&](Index x) {
    chain.push_back(x);
    if (p.upper_covers(x).empty())
      out.push_back(chain);
    for (Index y : p.upper_covers(x))
      rec(y);
    chain.pop_back();
  };
  for (Index m : p.minimal_elements())
    rec(m);
  return out;
}

std::vector<std::size_t> longest_path_from(const Poset &p) {
  const std::size_t n = p.size();
  std::vector<Index> order(n);
  for (Index i = 0; i < n; ++i)
    order[i] = i;
  // x < y implies |up(y)| < |up(x)|, so this visits y before x.
  std::sort(order.begin(), order.end(),
            [&](Index a, Index b) { return p.up(a).count() < p.up(b).count(); });
  std::vector<std::size_t> best(n, 1);
  for (Index x : order)
    for (Index y : p.upper_covers(x))
      best[x] = std::max(best[x], best[y] + 1);
  return best;
}

namespace {
std::string padded(std::size_t i, std::size_t n) {
  std::string digits = std::to_string(i);
  const std::size_t width = std::to_string(n == 0 ? 0 : n - 1).size();
  if (digits.size() < width)
    digits.insert(0, width - digits.size(), '0');
  return digits;
}
} // namespace

Poset chain_poset(std::size_t n) {
  std::vector<ElementId> elems;
  std::vector<std::pair<ElementId, ElementId>> rel;
  for (std::size_t i = 0; i < n; ++i) {
    elems.push_back(padded(i, n));
    if (i > 0)
      rel.emplace_back(padded(i - 1, n), padded(i, n));
  }
  return Poset::build(std::move(elems), rel);
}

Poset antichain_poset(std::size_t n) {
  std::vector<ElementId> elems;
  for (std::size_t i = 0; i < n; ++i)
    elems.push_back(padded(i, n));
  return Poset::build(std::move(elems), {});
}

} // namespace fiberlab
