#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fiberlab/poset.hpp"

namespace fiberlab {

using NodeId = std::string;

/// A set of nodes of some FiniteTree, indexed like the tree.
using NodeSet = Bits;

inline constexpr std::size_t kDefaultTreeCap = 4096;

/**
 * Finite rooted tree under the ancestor order. Nodes are indexed in
 * lexicographic id order. The optional spine records a distinguished
 * branch (bottom-up) for construction-generated trees.
 */
class FiniteTree {
public:
  FiniteTree() = default;

  /// Throws InvalidInput when the parent map has a cycle, names unknown
  /// nodes, or leaves a node unreachable from the root.
  static FiniteTree build(NodeId root, const std::map<NodeId, NodeId> &parent,
                          std::map<NodeId, std::string> labels = {},
                          std::vector<NodeId> spine = {});

  std::size_t size() const { return ids_.size(); }
  const std::vector<NodeId> &ids() const { return ids_; }
  const NodeId &id(Index i) const;
  Index index_of(const NodeId &id) const;
  std::optional<Index> find(const NodeId &id) const;

  Index root() const { return root_; }
  const NodeId &root_id() const { return ids_[root_]; }
  std::optional<Index> parent(Index x) const;
  const std::vector<Index> &children(Index x) const { return children_[x]; }
  std::size_t depth(Index x) const { return depth_[x]; }

  /// a is an ancestor of b or equal to it.
  bool precedes(Index a, Index b) const { return ancestors_[b].test(a); }
  bool comparable(Index a, Index b) const { return precedes(a, b) || precedes(b, a); }
  /// Ancestors of x, including x.
  const Bits &ancestors(Index x) const { return ancestors_[x]; }
  /// Descendants of x, including x.
  const Bits &descendants(Index x) const { return descendants_[x]; }

  const std::map<NodeId, std::string> &labels() const { return labels_; }
  std::string label(Index x) const;
  const std::vector<NodeId> &spine() const { return spine_; }

  std::map<NodeId, NodeId> parent_map() const;
  Poset as_poset() const;

  NodeSet empty_set() const { return NodeSet(size()); }
  NodeSet full_set() const { return NodeSet(size()).set(); }
  NodeSet node_set(const std::vector<NodeId> &ids) const;
  std::vector<NodeId> node_ids(const NodeSet &s) const;

  /// Whether s contains the root and is closed under taking parents.
  bool is_subtree(const NodeSet &s) const;
  /// The subtree s as a tree of its own; throws NotASubtree.
  FiniteTree restrict(const NodeSet &s) const;

  friend bool operator==(const FiniteTree &a, const FiniteTree &b) {
    return a.ids_ == b.ids_ && a.parent_ == b.parent_ && a.root_ == b.root_ &&
           a.labels_ == b.labels_ && a.spine_ == b.spine_;
  }

private:
  std::vector<NodeId> ids_;
  std::map<NodeId, Index> index_;
  Index root_ = 0;
  std::vector<std::optional<Index>> parent_;
  std::vector<std::vector<Index>> children_;
  std::vector<std::size_t> depth_;
  std::vector<Bits> ancestors_;
  std::vector<Bits> descendants_;
  std::map<NodeId, std::string> labels_;
  std::vector<NodeId> spine_;
};

enum class Profile { Caterpillar, CompleteBinary };

std::string to_string(Profile p);
Profile parse_profile(const std::string &text);

/// Finite stand-in for the tree indexed by an ordinal: `unit` plays the role
/// of omega and `index` the role of the ordinal, so the height is
/// unit * index.
struct UpsilonParams {
  int unit = 1;
  int index = 1;
  Profile profile = Profile::Caterpillar;
};

/**
 * Caterpillar: a spine b0 < b1 < ... < b(n), n = unit * index, where every
 * spine node except the last carries one extra leaf l(i). Every inner node
 * has exactly two children, the height is n and the tree has 2n + 1 nodes.
 *
 * Complete binary: full binary tree of height n; the spine is the leftmost
 * branch.
 *
 * The root carries the label std::to_string(index).
 */
FiniteTree make_upsilon(const UpsilonParams &params, std::size_t cap = kDefaultTreeCap);

/// Root "0" whose children are the roots of make_upsilon(γ) for γ in
/// `indices`; node ids of the block for γ are prefixed "g<γ>.".
FiniteTree make_upsilon_family(const std::set<int> &indices, int unit, Profile profile,
                               std::size_t cap = kDefaultTreeCap);

struct TreeStats {
  std::size_t height = 0;            // number of levels - 1
  std::size_t max_branch_length = 0; // edges on the longest root-to-leaf path
  bool ever_branching = true;        // every non-leaf has >= 2 children
  std::vector<std::size_t> level_sizes;
};

TreeStats tree_stats(const FiniteTree &t);

/// The block of a family tree rooted at the root child labelled γ.
struct Block {
  int index = 0;
  Index root = 0;
  NodeSet nodes;
};

/// Blocks of a make_upsilon_family tree, in increasing index order. Throws
/// InvalidInput when a root child carries no integer label.
std::vector<Block> family_blocks(const FiniteTree &family);

struct FamilyVerdict {
  bool member = true;
  std::vector<std::string> reasons; // one entry per violated condition
};

/**
 * Membership of the subtree S of `family` in the admissible family for
 * threshold δ: blocks with index <= δ must be entirely inside S, and blocks
 * with index > δ that S touches must have their first unit * (δ + 1) levels
 * inside S. The size bound of the infinite setting is vacuous here.
 *
 * Throws NotASubtree when S is not a rooted subtree.
 */
FamilyVerdict is_in_family_F(const NodeSet &s, const FiniteTree &family,
                             const std::set<int> &indices, int delta, int unit);

/// r_t = { s in S : s and t comparable }.
NodeSet comparability_upset(const FiniteTree &t, const NodeSet &s, Index node);

/// All rooted subtrees (node sets containing the root, closed under parent).
std::vector<NodeSet> all_subtrees(const FiniteTree &t, std::size_t cap = 1 << 16);

/// All rooted subtrees of `family` passing is_in_family_F, in deterministic
/// order; the full tree comes first.
std::vector<NodeSet> admissible_subtrees(const FiniteTree &family,
                                         const std::set<int> &indices, int delta, int unit,
                                         std::size_t cap = 4096);

} // namespace fiberlab
