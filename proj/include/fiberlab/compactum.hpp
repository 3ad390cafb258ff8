#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fiberlab/poset.hpp"
#include "fiberlab/rational.hpp"
#include "fiberlab/tree.hpp"

namespace fiberlab {

/// Colors beginning with '*' are anonymous: they stand for colors outside
/// every named list. "*" is the canonical anonymous color.
inline const std::string kAnonymousColor = "*";
bool is_anonymous(const std::string &color);

/// A color set: finitely many named colors, optionally followed by
/// infinitely many further anonymous ones.
struct ColorUniverse {
  std::vector<std::string> named;
  bool unbounded = false;

  bool contains_named(const std::string &color) const;
};

struct KPair {
  NodeId node;
  std::string color;

  auto operator<=>(const KPair &) const = default;
};

/**
 * A point of K[T, Γ]: at most two (node, color) pairs whose nodes lie on a
 * common branch. Pairs are kept sorted.
 */
class KPoint {
public:
  KPoint() = default;

  /// Validates size and the branch condition against `tree`; throws
  /// InvalidInput otherwise.
  static KPoint make(std::vector<KPair> pairs, const FiniteTree &tree);
  /// Same checks as make(), without throwing.
  static bool valid(const std::vector<KPair> &pairs, const FiniteTree &tree);
  /// A one-pair point; valid in any tree containing the node.
  static KPoint singleton(KPair p);

  const std::vector<KPair> &pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }
  bool contains(const KPair &p) const;

  std::string to_string() const;

  auto operator<=>(const KPoint &) const = default;

private:
  std::vector<KPair> pairs_;
};

struct KPointEnumeration {
  std::vector<KPoint> points; // over named colors only
  bool anonymous_remainder = false;
};

KPointEnumeration k_points(const FiniteTree &t, const ColorUniverse &colors);

/// x ∩ (S × N). Anonymous colors are never in N unless listed by name.
KPoint project_g(const KPoint &x, const FiniteTree &t, const NodeSet &s,
                 const ColorUniverse &n);

using SparseVector = std::map<KPoint, Rational>;

/// Coordinates of x in the Hilbert space indexed by points: the empty set
/// goes to 0, {p} to e_{p}, and {p, q} to e_{p,q} + e_{p} + e_{q}.
SparseVector embed_l2(const KPoint &x);
Rational squared_norm(const SparseVector &v);

/**
 * Image under g of the basic neighborhood {x' ⊇ x : x' ∩ F = ∅} of a point
 * of the fiber over `base`:
 *   - the base point itself, when includes_base;
 *   - base ∪ {(s, c)} for s in extension_nodes and (s, c) in S × N outside
 *     `excluded`;
 *   - two-point sets over S × N avoiding `excluded`, when includes_pairs
 *     (only possible over the empty base).
 */
struct SymbolicImage {
  KPoint base;
  bool includes_base = true;
  NodeSet extension_nodes;
  std::set<KPair> excluded;
  bool includes_pairs = false;
};

/// The quotient map g : K[T, M] -> K[S, N] with the data the fiber oracle
/// needs.
struct QuotientSetting {
  FiniteTree tree;
  NodeSet s;
  ColorUniverse m;
  ColorUniverse n;
};

SymbolicImage neighborhood_image(const QuotientSetting &q, const KPoint &x,
                                 const std::set<KPair> &exclusion);

/// Whether `inner` ⊆ `outer` as subsets of K[S, N].
bool image_contained(const QuotientSetting &q, const SymbolicImage &inner,
                     const SymbolicImage &outer);

/// Exclusion sets used to probe "for every neighborhood": ∅, each single
/// named pair of S × N, and all named pairs of S × N.
std::vector<std::set<KPair>> probe_exclusions(const QuotientSetting &q);

/// x <= x' in the fiber preorder: for every probed F there is F' with
/// image(x', F') ⊆ image(x, F).
bool fiber_leq(const QuotientSetting &q, const KPoint &x, const KPoint &x_prime);

/// Symbolic members of g^{-1}(y): y, its one-point extensions outside
/// S × N (one anonymous representative per node, plus named colors of M
/// outside S × N), and sampled two-point extensions when y is empty.
std::vector<KPoint> fiber_members(const QuotientSetting &q, const KPoint &y);

struct FiberOrder {
  Poset order;                             // quotient ordered set
  std::vector<std::vector<KPoint>> classes; // indexed like order
};

/// Computes the fiber order over y from neighborhood images alone. Throws
/// UnboundedRequired unless both color universes are unbounded, and
/// InvalidInput when y is not a point of K[S, N].
FiberOrder fiber_order_oracle(const QuotientSetting &q, const KPoint &y);

} // namespace fiberlab
