#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace fiberlab {

using ElementId = std::string;
using Index = std::size_t;
using Bits = boost::dynamic_bitset<>;

/// Default cap on poset size for isomorphism and factorization searches.
inline constexpr std::size_t kDefaultIsoCap = 16;
/// Default cap on the number of elements a product may have.
inline constexpr std::size_t kDefaultProductCap = 4096;
/// Default cap on the number of upsets enumerated.
inline constexpr std::size_t kDefaultUpsetCap = std::size_t{1} << 20;

/**
 * A finite partial order, stored as its Hasse diagram plus a reachability
 * closure. Elements are addressed by index; indices follow the lexicographic
 * order of the element ids, so every enumeration over a Poset is
 * reproducible.
 *
 * Instances are immutable once built.
 */
class Poset {
public:
  Poset() = default;

  /// Builds from any generating relation (pairs lower < upper). The stored
  /// cover relation is its transitive reduction. Throws CycleDetected,
  /// UnknownElement, or InvalidInput (duplicate ids, labels on unknown ids).
  static Poset build(std::vector<ElementId> elements,
                     const std::vector<std::pair<ElementId, ElementId>> &relations,
                     std::map<ElementId, std::string> labels = {});

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }

  const std::vector<ElementId> &ids() const { return ids_; }
  const ElementId &id(Index i) const;
  Index index_of(const ElementId &id) const;
  std::optional<Index> find(const ElementId &id) const;

  bool leq(Index a, Index b) const { return up_[a].test(b); }
  bool less(Index a, Index b) const { return a != b && up_[a].test(b); }
  bool comparable(Index a, Index b) const { return leq(a, b) || leq(b, a); }

  /// {y : y >= x}, including x.
  const Bits &up(Index x) const { return up_[x]; }
  /// {y : y <= x}, including x.
  const Bits &down(Index x) const { return down_[x]; }

  const std::vector<Index> &upper_covers(Index x) const { return upper_covers_[x]; }
  const std::vector<Index> &lower_covers(Index x) const { return lower_covers_[x]; }
  /// All cover pairs, sorted lexicographically by (lower, upper) index.
  std::vector<std::pair<Index, Index>> covers() const;
  std::size_t cover_count() const;

  const std::map<ElementId, std::string> &labels() const { return labels_; }
  std::string label(Index i) const;

  std::optional<Index> minimum() const;
  std::optional<Index> maximum() const;
  std::vector<Index> minimal_elements() const;
  std::vector<Index> maximal_elements() const;

  /// Number of pairs (x, y) with x <= y, reflexive pairs included.
  std::size_t comparable_pairs() const;

  /// Subposet induced on the given element set.
  Poset induced(const Bits &subset) const;

  Bits empty_set() const { return Bits(size()); }
  Bits full_set() const { return Bits(size()).set(); }

  friend bool operator==(const Poset &a, const Poset &b);

private:
  void check_index(Index i) const;

  std::vector<ElementId> ids_;
  std::map<ElementId, Index> index_;
  std::vector<Bits> up_;
  std::vector<Bits> down_;
  std::vector<std::vector<Index>> upper_covers_;
  std::vector<std::vector<Index>> lower_covers_;
  std::map<ElementId, std::string> labels_;
};

/// Poset with a freshly adjoined bottom and top.
struct BoundedPoset {
  Poset whole;
  Poset inner;
  ElementId bottom;
  ElementId top;

  Index bottom_index() const { return whole.index_of(bottom); }
  Index top_index() const { return whole.index_of(top); }
};

Poset build_poset(std::vector<ElementId> elements,
                  const std::vector<std::pair<ElementId, ElementId>> &cover_pairs);

std::vector<Index> imsuc(const Poset &p, Index t);
std::vector<Index> lisuc(const Poset &p, Index t);

/// Whether the closed interval [a, b] is a chain.
bool interval_is_chain(const Poset &p, Index a, Index b);

/// Every upward-closed subset exactly once, generated from the antichains of
/// their minimal elements. Throws SizeCapExceeded beyond `cap` upsets.
std::vector<Bits> upsets(const Poset &p, std::size_t cap = kDefaultUpsetCap);

/// Least upper bound of `set`, if any. The supremum of the empty set is the
/// minimum of p.
std::optional<Index> supremum(const Poset &p, const std::vector<Index> &set);

/// Elements above every member of `set`.
Bits upper_bounds(const Poset &p, const std::vector<Index> &set);

/// Coordinatewise product; element ids are "(x,y)".
Poset product(const Poset &p, const Poset &q, std::size_t cap = kDefaultProductCap);

/// Order isomorphism p -> q as an index map, or nullopt.
std::optional<std::vector<Index>> find_isomorphism(const Poset &p, const Poset &q,
                                                   std::size_t cap = kDefaultIsoCap);
bool are_isomorphic(const Poset &p, const Poset &q, std::size_t cap = kDefaultIsoCap);

struct IrreducibilityVerdict {
  bool irreducible = true;
  // Set when reducible; product(*left, *right) is isomorphic to the input.
  std::optional<Poset> left;
  std::optional<Poset> right;
};

IrreducibilityVerdict is_irreducible(const Poset &p, std::size_t cap = kDefaultIsoCap);

/// All posets on `n` elements up to isomorphism, with ids "0".."n-1".
/// Intended for n <= 8.
std::vector<Poset> posets_up_to_isomorphism(std::size_t n);

BoundedPoset adjoin_bounds(const Poset &p);

/// All maximal chains, each listed bottom-up.
std::vector<std::vector<Index>> maximal_chains(const Poset &p);

/// For each element, the number of elements in the longest cover path
/// starting there (1 for maximal elements).
std::vector<std::size_t> longest_path_from(const Poset &p);

/// Chain with ids "0" < "1" < ... ; zero-padded when n > 10.
Poset chain_poset(std::size_t n);
Poset antichain_poset(std::size_t n);

} // namespace fiberlab
