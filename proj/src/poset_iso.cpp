#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <tuple>

#include "fiberlab/error.hpp"
#include "fiberlab/poset.hpp"

namespace fiberlab {

namespace {

using Signature = std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>;

Signature signature(const Poset &p, Index x) {
  return {p.down(x).count(), p.up(x).count(), p.lower_covers(x).size(),
          p.upper_covers(x).size()};
}

class IsoSearch {
public:
  IsoSearch(const Poset &p, const Poset &q) : p_(p), q_(q), map_(p.size()), used_(q.size()) {
    order_.resize(p.size());
    std::iota(order_.begin(), order_.end(), Index{0});
    // Linear-extension order keeps each new element related to earlier ones.
    std::stable_sort(order_.begin(), order_.end(), [&](Index a, Index b) {
      return p.down(a).count() < p.down(b).count();
    });
    for (Index y = 0; y < q.size(); ++y)
      by_sig_[signature(q, y)].push_back(y);
  }

  std::optional<std::vector<Index>> run() {
    if (rec(0))
      return map_;
    return std::nullopt;
  }

private:
  bool rec(std::size_t k) {
    if (k == order_.size())
      return true;
    const Index x = order_[k];
    auto it = by_sig_.find(signature(p_, x));
    if (it == by_sig_.end())
      return false;
    for (Index y : it->second) {
      if (used_[y] || !consistent(k, x, y))
        continue;
      used_[y] = true;
      map_[x] = y;
      if (rec(k + 1))
        return true;
      used_[y] = false;
    }
    return false;
  }

  bool consistent(std::size_t k, Index x, Index y) const {
    for (std::size_t j = 0; j < k; ++j) {
      const Index x2 = order_[j];
      const Index y2 = map_[x2];
      if (p_.leq(x2, x) != q_.leq(y2, y) || p_.leq(x, x2) != q_.leq(y, y2))
        return false;
    }
    return true;
  }

  const Poset &p_;
  const Poset &q_;
  std::vector<Index> order_;
  std::vector<Index> map_;
  std::vector<bool> used_;
  std::map<Signature, std::vector<Index>> by_sig_;
};

// Posets on at most 8 points as strict down-set masks; used only for
// generating factor candidates.
struct SmallPoset {
  std::size_t n = 0;
  std::array<std::uint8_t, 8> down{}; // strict

  bool less(std::size_t a, std::size_t b) const { return (down[b] >> a) & 1U; }
};

std::vector<std::size_t> small_key(const SmallPoset &s) {
  std::vector<std::size_t> sig;
  for (std::size_t x = 0; x < s.n; ++x) {
    std::size_t ups = 0;
    for (std::size_t y = 0; y < s.n; ++y)
      ups += s.less(x, y);
    sig.push_back(static_cast<std::size_t>(__builtin_popcount(s.down[x])) * 16 + ups);
  }
  std::sort(sig.begin(), sig.end());
  return sig;
}

bool small_iso_rec(const SmallPoset &a, const SmallPoset &b, std::size_t k,
                   std::array<std::size_t, 8> &map, std::uint8_t used) {
  if (k == a.n)
    return true;
  for (std::size_t y = 0; y < b.n; ++y) {
    if ((used >> y) & 1U)
      continue;
    if (__builtin_popcount(a.down[k]) != __builtin_popcount(b.down[y]))
      continue;
    bool ok = true;
    for (std::size_t j = 0; j < k && ok; ++j)
      ok = a.less(j, k) == b.less(map[j], y) && a.less(k, j) == b.less(y, map[j]);
    if (!ok)
      continue;
    map[k] = y;
    if (small_iso_rec(a, b, k + 1, map, static_cast<std::uint8_t>(used | (1U << y))))
      return true;
  }
  return false;
}

bool small_isomorphic(const SmallPoset &a, const SmallPoset &b) {
  std::array<std::size_t, 8> map{};
  return small_iso_rec(a, b, 0, map, 0);
}

Poset to_poset(const SmallPoset &s) {
  std::vector<ElementId> elems;
  std::vector<std::pair<ElementId, ElementId>> rel;
  for (std::size_t x = 0; x < s.n; ++x) {
    elems.push_back(std::to_string(x));
    for (std::size_t y = 0; y < s.n; ++y)
      if (s.less(y, x))
        rel.emplace_back(std::to_string(y), std::to_string(x));
  }
  return Poset::build(std::move(elems), rel);
}

std::vector<SmallPoset> small_posets(std::size_t n) {
  std::vector<SmallPoset> level{SmallPoset{}};
  for (std::size_t k = 0; k < n; ++k) {
    std::map<std::vector<std::size_t>, std::vector<std::size_t>> buckets;
    std::vector<SmallPoset> next;
    for (const SmallPoset &base : level) {
      // New point k is maximal; its strict down-set is any order ideal.
      for (std::uint32_t mask = 0; mask < (1U << k); ++mask) {
        bool ideal = true;
        for (std::size_t x = 0; x < k && ideal; ++x)
          if ((mask >> x) & 1U)
            ideal = (base.down[x] & ~mask) == 0;
        if (!ideal)
          continue;
        SmallPoset cand = base;
        cand.n = k + 1;
        cand.down[k] = static_cast<std::uint8_t>(mask);
        auto key = small_key(cand);
        auto &bucket = buckets[key];
        bool seen = false;
        for (std::size_t idx : bucket)
          if (small_isomorphic(next[idx], cand)) {
            seen = true;
            break;
          }
        if (!seen) {
          bucket.push_back(next.size());
          next.push_back(cand);
        }
      }
    }
    level = std::move(next);
  }
  return level;
}

std::size_t components(const Poset &p) {
  std::vector<Index> parent(p.size());
  std::iota(parent.begin(), parent.end(), Index{0});
  std::function<Index(Index)> find = [&](Index x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (auto [a, b] : p.covers())
    parent[find(a)] = find(b);
  std::size_t c = 0;
  for (Index x = 0; x < p.size(); ++x)
    c += find(x) == x;
  return c;
}

struct Invariants {
  std::size_t size, pairs, minima, maxima, covers, comps;
};

Invariants invariants(const Poset &p) {
  return {p.size(), p.comparable_pairs(), p.minimal_elements().size(),
          p.maximal_elements().size(), p.cover_count(), components(p)};
}

} // namespace

std::optional<std::vector<Index>> find_isomorphism(const Poset &p, const Poset &q,
                                                   std::size_t cap) {
  if (p.size() > cap || q.size() > cap)
    throw Error(ErrorCode::SizeCapExceeded,
                "isomorphism test on " + std::to_string(std::max(p.size(), q.size())) +
                    " elements (cap " + std::to_string(cap) + ")");
  if (p.size() != q.size() || p.cover_count() != q.cover_count() ||
      p.comparable_pairs() != q.comparable_pairs())
    return std::nullopt;
  std::vector<Signature> sp, sq;
  for (Index x = 0; x < p.size(); ++x) {
    sp.push_back(signature(p, x));
    sq.push_back(signature(q, x));
  }
  std::sort(sp.begin(), sp.end());
  std::sort(sq.begin(), sq.end());
  if (sp != sq)
    return std::nullopt;
  return IsoSearch(p, q).run();
}

bool are_isomorphic(const Poset &p, const Poset &q, std::size_t cap) {
  return find_isomorphism(p, q, cap).has_value();
}

std::vector<Poset> posets_up_to_isomorphism(std::size_t n) {
  if (n > 8)
    throw Error(ErrorCode::SizeCapExceeded, "poset generation beyond 8 points");
  std::vector<Poset> out;
  for (const SmallPoset &s : small_posets(n))
    out.push_back(to_poset(s));
  return out;
}

IrreducibilityVerdict is_irreducible(const Poset &p, std::size_t cap) {
  const std::size_t n = p.size();
  if (n > cap)
    throw Error(ErrorCode::SizeCapExceeded,
                "factorization of " + std::to_string(n) + " elements (cap " +
                    std::to_string(cap) + ")");
  const Invariants inv = invariants(p);
  for (std::size_t d = 2; d * d <= n; ++d) {
    if (n % d != 0)
      continue;
    const std::size_t e = n / d;
    const auto small = posets_up_to_isomorphism(d);
    const auto large = posets_up_to_isomorphism(e);
    std::vector<Invariants> large_inv;
    for (const Poset &r : large)
      large_inv.push_back(invariants(r));
    for (const Poset &q : small) {
      const Invariants qi = invariants(q);
      if (inv.pairs % qi.pairs != 0 || inv.minima % qi.minima != 0 ||
          inv.maxima % qi.maxima != 0 || inv.comps % qi.comps != 0)
        continue;
      for (std::size_t k = 0; k < large.size(); ++k) {
        const Invariants &ri = large_inv[k];
        if (qi.pairs * ri.pairs != inv.pairs || qi.minima * ri.minima != inv.minima ||
            qi.maxima * ri.maxima != inv.maxima || qi.comps * ri.comps != inv.comps ||
            qi.covers * e + d * ri.covers != inv.covers)
          continue;
        if (are_isomorphic(p, product(q, large[k]), cap))
          return {false, q, large[k]};
      }
    }
  }
  return {};
}

} // namespace fiberlab
