#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fiberlab/compactum.hpp"
#include "fiberlab/measure.hpp"
#include "fiberlab/poset.hpp"
#include "fiberlab/tree.hpp"

namespace fiberlab {

/**
 * The sets r_t = { s in S : s comparable to t } for t ranging over T,
 * deduplicated and ordered by reverse inclusion, with a fresh bottom and top.
 * Element ids are "r:<node>", where <node> is the least node id producing
 * that set.
 */
struct RPoset {
  BoundedPoset poset;
  Carrier carrier;                      // shares poset.whole
  std::map<ElementId, NodeId> rep;      // inner element -> representative node
  std::map<ElementId, NodeSet> sets;    // inner element -> r_t
  std::map<NodeId, ElementId> of_node;  // every node t of T -> element of r_t
  FiniteTree tree;
  NodeSet subtree;

  /// Inner element for the set S itself (the root's set).
  const ElementId &root_element() const { return of_node.at(tree.root_id()); }
  Index index_in_whole(const ElementId &id) const { return poset.whole.index_of(id); }
};

/// Throws NotASubtree when S is not a rooted subtree of T.
RPoset build_R(const NodeSet &s, const FiniteTree &t);

/// Family parameters against which an RPoset is checked.
struct FamilyContext {
  std::set<int> indices;
  int delta = 0;
  int unit = 1;
  Profile profile = Profile::Caterpillar;
  std::size_t iso_cap = 128;
};

struct ClauseResult {
  std::string clause;  // minimum | root_successors | low_block_shape | high_block_walk
  std::string subject; // block index or element concerned
  bool passed = true;
  std::string detail;
  std::vector<ElementId> witness;
};

struct RStructureReport {
  std::vector<ClauseResult> clauses;
  bool passed() const;
};

/**
 * Checks an R built from a family tree:
 *   minimum          the inner minimum is the set S;
 *   root_successors  the immediate successors of the minimum are the sets of
 *                    the block roots present in S (when only one block is
 *                    present its root's set is the minimum itself, and the
 *                    successors are the sets of that root's children in S);
 *   low_block_shape  for index <= delta, the elements above the block root's
 *                    set form a copy of the block, possibly with a top added;
 *   high_block_walk  for index > delta with its root in S, the elements above
 *                    the block root's set contain a discrete walk with
 *                    unit * (delta + 1) elements starting at that set.
 */
RStructureReport check_R_structure(const RPoset &r, const FamilyContext &context);

enum class FiberKind { Trivial, IntervalSurrogate, BigFiber };

std::string to_string(FiberKind kind);

struct FiberFactor {
  FiberKind kind = FiberKind::Trivial;
  Rational weight;
  KPoint point;
  std::optional<RPoset> big; // set for BigFiber
};

struct FiberTypeDescriptor {
  std::vector<FiberFactor> factors;
};

/**
 * Factor types of the fiber over sum_i weight_i * delta(y_i): two-point y
 * gives Trivial, one-point y an interval, and the empty set the big fiber
 * built from R(S, T). Throws InvalidWeights unless the weights are positive
 * and sum to one, InvalidInput when a point is not in K[S, N] or repeats.
 */
FiberTypeDescriptor classify_fiber(const std::vector<std::pair<KPoint, Rational>> &support,
                                   const QuotientSetting &q);

} // namespace fiberlab
