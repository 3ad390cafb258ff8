#include "fiberlab/tree.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "fiberlab/error.hpp"

namespace fiberlab {

FiniteTree FiniteTree::build(NodeId root, const std::map<NodeId, NodeId> &parent,
                             std::map<NodeId, std::string> labels,
                             std::vector<NodeId> spine) {
  std::set<NodeId> all{root};
  for (const auto &[child, par] : parent) {
    if (child == root)
      throw Error(ErrorCode::InvalidInput, "root '" + root + "' has a parent");
    all.insert(child);
  }
  for (const auto &[child, par] : parent)
    if (!all.count(par))
      throw Error(ErrorCode::InvalidInput, "parent '" + par + "' of '" + child + "' is not a node");

  FiniteTree t;
  t.ids_.assign(all.begin(), all.end());
  const std::size_t n = t.ids_.size();
  for (Index i = 0; i < n; ++i)
    t.index_.emplace(t.ids_[i], i);
  t.root_ = t.index_.at(root);
  t.parent_.assign(n, std::nullopt);
  t.children_.assign(n, {});
  for (const auto &[child, par] : parent) {
    const Index c = t.index_.at(child);
    const Index p = t.index_.at(par);
    t.parent_[c] = p;
    t.children_[p].push_back(c);
  }
  for (auto &ch : t.children_)
    std::sort(ch.begin(), ch.end());

  // BFS from the root; anything unreached is on a cycle or disconnected.
  t.depth_.assign(n, 0);
  t.ancestors_.assign(n, Bits(n));
  t.descendants_.assign(n, Bits(n));
  std::vector<bool> seen(n, false);
  std::vector<Index> order{t.root_};
  seen[t.root_] = true;
  t.ancestors_[t.root_].set(t.root_);
  for (std::size_t k = 0; k < order.size(); ++k) {
    const Index x = order[k];
    for (Index c : t.children_[x]) {
      seen[c] = true;
      t.depth_[c] = t.depth_[x] + 1;
      t.ancestors_[c] = t.ancestors_[x];
      t.ancestors_[c].set(c);
      order.push_back(c);
    }
  }
  if (order.size() != n) {
    for (Index i = 0; i < n; ++i)
      if (!seen[i])
        throw Error(ErrorCode::InvalidInput, "node '" + t.ids_[i] + "' unreachable from root");
  }
  for (Index x = 0; x < n; ++x)
    for (Index a = t.ancestors_[x].find_first(); a != Bits::npos;
         a = t.ancestors_[x].find_next(a))
      t.descendants_[a].set(x);

  for (const auto &[key, text] : labels)
    if (!t.index_.count(key))
      throw Error(ErrorCode::InvalidInput, "label for unknown node '" + key + "'");
  for (std::size_t k = 0; k < spine.size(); ++k) {
    const Index s = t.index_of(spine[k]);
    if (k > 0 && t.parent_[s] != t.index_of(spine[k - 1]))
      throw Error(ErrorCode::InvalidInput, "spine is not a path at '" + spine[k] + "'");
  }
  t.labels_ = std::move(labels);
  t.spine_ = std::move(spine);
  return t;
}

const NodeId &FiniteTree::id(Index i) const {
  if (i >= ids_.size())
    throw Error(ErrorCode::UnknownElement, "node index " + std::to_string(i));
  return ids_[i];
}

Index FiniteTree::index_of(const NodeId &id) const {
  auto it = index_.find(id);
  if (it == index_.end())
    throw Error(ErrorCode::UnknownElement, "node '" + id + "'");
  return it->second;
}

std::optional<Index> FiniteTree::find(const NodeId &id) const {
  auto it = index_.find(id);
  if (it == index_.end())
    return std::nullopt;
  return it->second;
}

std::optional<Index> FiniteTree::parent(Index x) const {
  id(x);
  return parent_[x];
}

std::string FiniteTree::label(Index x) const {
  auto it = labels_.find(id(x));
  return it == labels_.end() ? std::string{} : it->second;
}

std::map<NodeId, NodeId> FiniteTree::parent_map() const {
  std::map<NodeId, NodeId> out;
  for (Index x = 0; x < size(); ++x)
    if (parent_[x])
      out.emplace(ids_[x], ids_[*parent_[x]]);
  return out;
}

Poset FiniteTree::as_poset() const {
  std::vector<std::pair<ElementId, ElementId>> rel;
  for (Index x = 0; x < size(); ++x)
    if (parent_[x])
      rel.emplace_back(ids_[*parent_[x]], ids_[x]);
  return Poset::build(ids_, rel, labels_);
}

NodeSet FiniteTree::node_set(const std::vector<NodeId> &ids) const {
  NodeSet s = empty_set();
  for (const auto &n : ids)
    s.set(index_of(n));
  return s;
}

std::vector<NodeId> FiniteTree::node_ids(const NodeSet &s) const {
  std::vector<NodeId> out;
  for (Index x = s.find_first(); x != Bits::npos; x = s.find_next(x))
    out.push_back(ids_[x]);
  return out;
}

bool FiniteTree::is_subtree(const NodeSet &s) const {
  if (s.size() != size() || !s.test(root_))
    return false;
  for (Index x = s.find_first(); x != Bits::npos; x = s.find_next(x))
    if (parent_[x] && !s.test(*parent_[x]))
      return false;
  return true;
}

FiniteTree FiniteTree::restrict(const NodeSet &s) const {
  if (!is_subtree(s))
    throw Error(ErrorCode::NotASubtree, "node set is not a rooted subtree");
  std::map<NodeId, NodeId> par;
  std::map<NodeId, std::string> labs;
  for (Index x = s.find_first(); x != Bits::npos; x = s.find_next(x)) {
    if (parent_[x])
      par.emplace(ids_[x], ids_[*parent_[x]]);
    if (auto it = labels_.find(ids_[x]); it != labels_.end())
      labs.insert(*it);
  }
  std::vector<NodeId> sp;
  for (const auto &n : spine_) {
    if (!s.test(index_.at(n)))
      break;
    sp.push_back(n);
  }
  return build(ids_[root_], par, std::move(labs), std::move(sp));
}

std::string to_string(Profile p) {
  return p == Profile::Caterpillar ? "caterpillar" : "complete-binary";
}

Profile parse_profile(const std::string &text) {
  if (text == "caterpillar")
    return Profile::Caterpillar;
  if (text == "complete-binary")
    return Profile::CompleteBinary;
  throw Error(ErrorCode::InvalidInput, "unknown profile '" + text + "'");
}

namespace {

std::string pad(std::size_t i, std::size_t width) {
  std::string s = std::to_string(i);
  if (s.size() < width)
    s.insert(0, width - s.size(), '0');
  return s;
}

struct RawTree {
  NodeId root;
  std::map<NodeId, NodeId> parent;
  std::vector<NodeId> spine;
};

RawTree raw_upsilon(const UpsilonParams &params, const std::string &prefix, std::size_t cap) {
  if (params.unit < 1 || params.index < 1)
    throw Error(ErrorCode::ParameterViolation, "unit and index must be positive");
  const auto height = static_cast<std::size_t>(params.unit) * static_cast<std::size_t>(params.index);
  RawTree raw;
  if (params.profile == Profile::Caterpillar) {
    if (2 * height + 1 > cap)
      throw Error(ErrorCode::SizeCapExceeded, "caterpillar of height " + std::to_string(height));
    const std::size_t width = std::to_string(height).size();
    auto spine = [&](std::size_t i) { return prefix + "b" + pad(i, width); };
    auto leaf = [&](std::size_t i) { return prefix + "l" + pad(i, width); };
    raw.root = spine(0);
    raw.spine.push_back(spine(0));
    for (std::size_t i = 0; i < height; ++i) {
      raw.parent.emplace(spine(i + 1), spine(i));
      raw.parent.emplace(leaf(i), spine(i));
      raw.spine.push_back(spine(i + 1));
    }
  } else {
    if (height >= 20 || (std::size_t{2} << height) - 1 > cap)
      throw Error(ErrorCode::SizeCapExceeded, "complete binary tree of height " +
                                                  std::to_string(height));
    raw.root = prefix + "n";
    std::vector<std::string> level{""};
    raw.spine.push_back(raw.root);
    for (std::size_t d = 0; d < height; ++d) {
      std::vector<std::string> next;
      for (const auto &path : level)
        for (char bit : {'0', '1'}) {
          raw.parent.emplace(prefix + "n" + path + bit, prefix + "n" + path);
          next.push_back(path + bit);
        }
      raw.spine.push_back(prefix + "n" + std::string(d + 1, '0'));
      level = std::move(next);
    }
  }
  return raw;
}

} // namespace

FiniteTree make_upsilon(const UpsilonParams &params, std::size_t cap) {
  RawTree raw = raw_upsilon(params, "", cap);
  std::map<NodeId, std::string> labels{{raw.root, std::to_string(params.index)}};
  return FiniteTree::build(raw.root, raw.parent, std::move(labels), std::move(raw.spine));
}

FiniteTree make_upsilon_family(const std::set<int> &indices, int unit, Profile profile,
                               std::size_t cap) {
  if (indices.empty())
    throw Error(ErrorCode::ParameterViolation, "index set must be nonempty");
  std::map<NodeId, NodeId> parent;
  std::map<NodeId, std::string> labels{{"0", "0"}};
  std::size_t total = 1;
  for (int g : indices) {
    if (g < 1)
      throw Error(ErrorCode::ParameterViolation, "indices must be positive");
    RawTree raw = raw_upsilon({unit, g, profile}, "g" + std::to_string(g) + ".", cap);
    total += raw.parent.size() + 1;
    if (total > cap)
      throw Error(ErrorCode::SizeCapExceeded, "family tree exceeds " + std::to_string(cap));
    parent.emplace(raw.root, "0");
    parent.insert(raw.parent.begin(), raw.parent.end());
    labels.emplace(raw.root, std::to_string(g));
  }
  return FiniteTree::build("0", parent, std::move(labels));
}

TreeStats tree_stats(const FiniteTree &t) {
  TreeStats st;
  for (Index x = 0; x < t.size(); ++x) {
    const std::size_t d = t.depth(x);
    if (st.level_sizes.size() <= d)
      st.level_sizes.resize(d + 1, 0);
    ++st.level_sizes[d];
    st.height = std::max(st.height, d);
    const std::size_t kids = t.children(x).size();
    if (kids == 1)
      st.ever_branching = false;
  }
  st.max_branch_length = st.height;
  return st;
}

std::vector<Block> family_blocks(const FiniteTree &family) {
  std::vector<Block> out;
  for (Index c : family.children(family.root())) {
    const std::string lab = family.label(c);
    Block b;
    try {
      std::size_t used = 0;
      b.index = std::stoi(lab, &used);
      if (used != lab.size())
        throw std::invalid_argument(lab);
    } catch (const std::exception &) {
      throw Error(ErrorCode::InvalidInput,
                  "root child '" + family.id(c) + "' has no integer index label");
    }
    b.root = c;
    b.nodes = family.descendants(c);
    out.push_back(std::move(b));
  }
  std::sort(out.begin(), out.end(), [](const Block &a, const Block &b) { return a.index < b.index; });
  return out;
}

FamilyVerdict is_in_family_F(const NodeSet &s, const FiniteTree &family,
                             const std::set<int> &indices, int delta, int unit) {
  if (!family.is_subtree(s))
    throw Error(ErrorCode::NotASubtree, "candidate is not a rooted subtree of the family tree");
  FamilyVerdict v;
  for (const Block &b : family_blocks(family)) {
    if (!indices.count(b.index))
      continue;
    const NodeSet inside = b.nodes & s;
    if (b.index <= delta) {
      if (inside != b.nodes) {
        const Index miss = (b.nodes - s).find_first();
        v.member = false;
        v.reasons.push_back("full_block: block " + std::to_string(b.index) +
                            " misses node '" + family.id(miss) + "'");
      }
      continue;
    }
    if (inside.none())
      continue;
    const std::size_t levels = static_cast<std::size_t>(unit) * static_cast<std::size_t>(delta + 1);
    const std::size_t base = family.depth(b.root);
    for (Index x = b.nodes.find_first(); x != Bits::npos; x = b.nodes.find_next(x)) {
      if (family.depth(x) - base < levels && !s.test(x)) {
        v.member = false;
        v.reasons.push_back("prefix_levels: block " + std::to_string(b.index) +
                            " touched but misses node '" + family.id(x) + "' at level " +
                            std::to_string(family.depth(x) - base));
        break;
      }
    }
  }
  return v;
}

NodeSet comparability_upset(const FiniteTree &t, const NodeSet &s, Index node) {
  t.id(node);
  if (s.size() != t.size())
    throw Error(ErrorCode::UnknownElement, "node set does not belong to this tree");
  return (t.ancestors(node) | t.descendants(node)) & s;
}

namespace {

// Every parent-closed extension of `base` inside `universe`, including
// branch first so the largest extension comes out first.
void extensions(const FiniteTree &t, const NodeSet &universe, NodeSet &current,
                std::deque<Index> pending, std::vector<NodeSet> &out, std::size_t cap) {
  if (pending.empty()) {
    if (out.size() >= cap)
      throw Error(ErrorCode::SizeCapExceeded, "more than " + std::to_string(cap) + " subtrees");
    out.push_back(current);
    return;
  }
  const Index x = pending.front();
  pending.pop_front();
  {
    std::deque<Index> with = pending;
    for (Index c : t.children(x))
      if (universe.test(c))
        with.push_back(c);
    current.set(x);
    extensions(t, universe, current, std::move(with), out, cap);
    current.reset(x);
  }
  extensions(t, universe, current, std::move(pending), out, cap);
}

std::vector<NodeSet> closed_extensions(const FiniteTree &t, const NodeSet &base,
                                       const NodeSet &universe, std::size_t cap) {
  std::deque<Index> pending;
  for (Index x = base.find_first(); x != Bits::npos; x = base.find_next(x))
    for (Index c : t.children(x))
      if (universe.test(c) && !base.test(c))
        pending.push_back(c);
  std::vector<NodeSet> out;
  NodeSet current = base;
  extensions(t, universe, current, std::move(pending), out, cap);
  return out;
}

} // namespace

std::vector<NodeSet> all_subtrees(const FiniteTree &t, std::size_t cap) {
  NodeSet base = t.empty_set();
  base.set(t.root());
  return closed_extensions(t, base, t.full_set(), cap);
}

std::vector<NodeSet> admissible_subtrees(const FiniteTree &family,
                                         const std::set<int> &indices, int delta, int unit,
                                         std::size_t cap) {
  // Per block, the admissible intersections with S; then their product.
  std::vector<std::vector<NodeSet>> options;
  NodeSet fixed = family.empty_set();
  fixed.set(family.root());
  for (const Block &b : family_blocks(family)) {
    if (!indices.count(b.index) || b.index <= delta) {
      // Blocks outside the index set are kept whole; low blocks must be.
      fixed |= b.nodes;
      continue;
    }
    const std::size_t levels = static_cast<std::size_t>(unit) * static_cast<std::size_t>(delta + 1);
    const std::size_t base_depth = family.depth(b.root);
    NodeSet prefix = family.empty_set();
    for (Index x = b.nodes.find_first(); x != Bits::npos; x = b.nodes.find_next(x))
      if (family.depth(x) - base_depth < levels)
        prefix.set(x);
    std::vector<NodeSet> block_opts = closed_extensions(family, prefix, b.nodes, cap);
    block_opts.push_back(family.empty_set());
    options.push_back(std::move(block_opts));
  }

  std::vector<NodeSet> out{fixed};
  for (const auto &opts : options) {
    std::vector<NodeSet> next;
    for (const NodeSet &partial : out)
      for (const NodeSet &o : opts) {
        if (next.size() >= cap)
          throw Error(ErrorCode::SizeCapExceeded,
                      "more than " + std::to_string(cap) + " admissible subtrees");
        next.push_back(partial | o);
      }
    out = std::move(next);
  }
  return out;
}

} // namespace fiberlab
