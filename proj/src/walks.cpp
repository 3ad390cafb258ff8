#include "fiberlab/walks.hpp"

#include <algorithm>
#include <functional>

#include "fiberlab/error.hpp"

namespace fiberlab {

std::vector<ElementId> Walk::ids() const {
  std::vector<ElementId> out;
  for (Index x : steps)
    out.push_back(carrier->id(x));
  return out;
}

namespace {

Index require_minimum(const Poset &p) {
  const auto least = p.minimum();
  if (!least)
    throw Error(ErrorCode::NoMinimum, "walks start at the minimum, and there is none");
  return *least;
}

bool covers(const Poset &p, Index lo, Index hi) {
  const auto &up = p.upper_covers(lo);
  return std::find(up.begin(), up.end(), hi) != up.end();
}

} // namespace

bool is_discrete_walk(const Poset &p, const std::vector<Index> &seq) {
  const Index least = require_minimum(p);
  if (seq.empty() || seq.front() != least)
    return false;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i)
    if (seq[i + 1] >= p.size() || !covers(p, seq[i], seq[i + 1]))
      return false;
  return true;
}

std::vector<Walk> enumerate_discrete_walks(const Carrier &p, std::size_t length,
                                           std::size_t cap) {
  const Index least = require_minimum(*p);
  std::vector<Walk> out;
  if (length == 0)
    return out;
  const auto longest = longest_path_from(*p);
  std::vector<Index> steps{least};
  std::function<void()> extend = [&] {
    if (steps.size() == length) {
      if (out.size() == cap)
        throw Error(ErrorCode::SizeCapExceeded,
                    "more than " + std::to_string(cap) + " walks of length " +
                        std::to_string(length));
      out.push_back({p, steps});
      return;
    }
    for (Index c : p->upper_covers(steps.back())) {
      if (steps.size() + longest[c] < length)
        continue;
      steps.push_back(c);
      extend();
      steps.pop_back();
    }
  };
  if (longest[least] >= length)
    extend();
  return out;
}

bool strongly_intersects(const Walk &a, const Walk &b) {
  if (a.carrier != b.carrier && !(*a.carrier == *b.carrier))
    throw Error(ErrorCode::CarrierMismatch, "walks live on different posets");
  if (a.length() < 3 || b.length() < 3)
    return false;
  return std::equal(a.steps.begin(), a.steps.begin() + 3, b.steps.begin());
}

std::optional<Walk> walk_through(const Carrier &p, Index target, std::size_t length) {
  const Index least = require_minimum(*p);
  const auto longest = longest_path_from(*p);
  const Bits &below = p->down(target);
  std::vector<Index> steps{least};
  std::optional<Walk> found;

  std::function<void()> descend = [&] {
    if (found || steps.size() > length)
      return;
    if (steps.back() == target) {
      if (steps.size() - 1 + longest[target] < length)
        return;
      Walk w{p, steps};
      while (w.steps.size() < length) {
        const Index cur = w.steps.back();
        for (Index c : p->upper_covers(cur))
          if (longest[c] + 1 == longest[cur]) {
            w.steps.push_back(c);
            break;
          }
      }
      found = std::move(w);
      return;
    }
    for (Index c : p->upper_covers(steps.back())) {
      if (!below.test(c))
        continue;
      steps.push_back(c);
      descend();
      steps.pop_back();
    }
  };
  descend();
  return found;
}

LiftedWalk lift_walk(const Walk &w) {
  if (!is_discrete_walk(*w.carrier, w.steps))
    throw Error(ErrorCode::NotADiscreteWalk, "input does not start at the minimum and move by covers");
  LiftedWalk out;
  for (Index x : w.steps)
    out.measures.push_back(RationalMeasure::dirac(w.carrier, x));
  out.certified = true;
  for (std::size_t i = 0; i + 1 < w.steps.size(); ++i) {
    out.steps.push_back(certify_linear_successor(w.steps[i], out.measures[i + 1]));
    const auto &v = out.steps.back();
    out.certified = out.certified && v.yes() && v.verified && v.successor == w.steps[i + 1];
  }
  return out;
}

bool certify_linear_walk(const std::vector<RationalMeasure> &measures) {
  if (measures.empty())
    return false;
  const Poset &p = measures.front().carrier();
  const auto least = p.minimum();
  if (!least || measures.front().dirac_point() != least)
    return false;
  for (std::size_t i = 0; i + 1 < measures.size(); ++i) {
    const auto from = measures[i].dirac_point();
    if (!from)
      return false;
    try {
      const auto v = certify_linear_successor(*from, measures[i + 1]);
      if (!v.yes() || !v.verified)
        return false;
    } catch (const Error &e) {
      if (e.code() == ErrorCode::NotAbove || e.code() == ErrorCode::CarrierMismatch)
        return false;
      throw;
    }
  }
  return true;
}

std::optional<std::vector<Index>> project_diracs(const std::vector<RationalMeasure> &measures) {
  std::vector<Index> out;
  for (const auto &m : measures) {
    const auto x = m.dirac_point();
    if (!x)
      return std::nullopt;
    out.push_back(*x);
  }
  return out;
}

DistinguishReport distinguish(const std::set<int> &a, const std::set<int> &b, int delta,
                              int unit, Profile profile, const DistinguishCaps &caps) {
  if (!a.count(delta) || b.count(delta))
    throw Error(ErrorCode::ParameterViolation,
                "delta " + std::to_string(delta) + " must lie in A and not in B");
  if (unit < 6)
    throw Error(ErrorCode::ParameterViolation, "unit must be at least 6");
  for (const auto *side : {&a, &b})
    for (int g : *side)
      if (g < 1)
        throw Error(ErrorCode::ParameterViolation, "indices must be positive");

  DistinguishReport report;
  report.a = a;
  report.b = b;
  report.delta = delta;
  report.unit = unit;
  report.profile = profile;
  report.b_vacuous = b.empty() || *b.rbegin() <= delta;

  const std::size_t short_length = static_cast<std::size_t>(unit) * static_cast<std::size_t>(delta);
  const std::size_t long_length = short_length + static_cast<std::size_t>(unit);
  bool a_all = true;
  bool b_all = true;

  for (const auto &[name, indices] : {std::pair{"A", &a}, std::pair{"B", &b}}) {
    const FiniteTree tree = make_upsilon_family(*indices, unit, profile, caps.tree_nodes);
    const auto subtrees = admissible_subtrees(tree, *indices, delta, unit, caps.subtrees);
    for (std::size_t k = 0; k < subtrees.size(); ++k) {
      const RPoset r = build_R(subtrees[k], tree);
      SubtreeVerdict v;
      v.side = name;
      v.subtree = "S" + std::to_string(k);
      for (Index x = 0; x < tree.size(); ++x)
        if (!subtrees[k].test(x))
          v.missing_nodes.push_back(tree.id(x));
      v.short_length = short_length;
      v.long_length = long_length;
      const auto short_walks = enumerate_discrete_walks(r.carrier, short_length, caps.walks);
      const auto long_walks = enumerate_discrete_walks(r.carrier, long_length, caps.walks);
      v.short_walks = short_walks.size();
      v.long_walks = long_walks.size();
      v.vacuous = short_walks.empty();
      for (const auto &w : short_walks) {
        const bool hit = std::any_of(long_walks.begin(), long_walks.end(),
                                     [&](const Walk &u) { return strongly_intersects(w, u); });
        if (!hit && w.length() >= 3) {
          v.verdict = true;
          v.witness_walk = w.ids();
          break;
        }
      }
      if (name == std::string("A"))
        a_all = a_all && v.verdict;
      else if (!v.vacuous)
        b_all = b_all && !v.verdict;
      report.results.push_back(std::move(v));
    }
  }
  report.a_holds = a_all;
  report.b_holds = b_all;
  return report;
}

} // namespace fiberlab
