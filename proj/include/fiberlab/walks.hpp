#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fiberlab/facts.hpp"
#include "fiberlab/measure.hpp"
#include "fiberlab/poset.hpp"
#include "fiberlab/rposet.hpp"
#include "fiberlab/tree.hpp"

namespace fiberlab {

inline constexpr std::size_t kDefaultWalkCap = std::size_t{1} << 20;

/// A finite walk: its length is the number of elements.
struct Walk {
  Carrier carrier;
  std::vector<Index> steps;

  std::size_t length() const { return steps.size(); }
  std::vector<ElementId> ids() const;
};

/// Starts at the minimum and moves along covers. Throws NoMinimum.
bool is_discrete_walk(const Poset &p, const std::vector<Index> &seq);

/// Every discrete walk with exactly `length` elements, depth first with
/// branches in index order. Throws NoMinimum, and SizeCapExceeded once more
/// than `cap` walks are found.
std::vector<Walk> enumerate_discrete_walks(const Carrier &p, std::size_t length,
                                           std::size_t cap = kDefaultWalkCap);

/// Both walks have at least three elements and agree on the first three.
/// Throws CarrierMismatch.
bool strongly_intersects(const Walk &a, const Walk &b);

/// Some discrete walk with exactly `length` elements containing `target`,
/// or nullopt. Throws NoMinimum.
std::optional<Walk> walk_through(const Carrier &p, Index target, std::size_t length);

struct LiftedWalk {
  std::vector<RationalMeasure> measures;
  std::vector<SuccessorVerdict> steps; // one per consecutive pair
  bool certified = false;
};

/// Dirac measures along a discrete walk, each step certified as a linear
/// successor. Throws NotADiscreteWalk.
LiftedWalk lift_walk(const Walk &w);

/// Whether a sequence of measures starts at the least measure and moves by
/// certified linear successors.
bool certify_linear_walk(const std::vector<RationalMeasure> &measures);

/// Points of a sequence of Dirac measures, or nullopt when some measure is
/// not a Dirac.
std::optional<std::vector<Index>> project_diracs(const std::vector<RationalMeasure> &measures);

struct SubtreeVerdict {
  std::string side;                  // "A" or "B"
  std::string subtree;               // "S<k>", k = position among admissible subtrees
  std::vector<NodeId> missing_nodes; // nodes of T outside S
  std::size_t short_length = 0;      // unit * delta
  std::size_t long_length = 0;       // unit * (delta + 1)
  std::size_t short_walks = 0;
  std::size_t long_walks = 0;
  std::vector<ElementId> witness_walk; // empty when no witness
  bool verdict = false;
  bool vacuous = false; // no walk of the short length exists
};

struct DistinguishReport {
  std::set<int> a;
  std::set<int> b;
  int delta = 0;
  int unit = 0;
  Profile profile = Profile::Caterpillar;
  std::vector<SubtreeVerdict> results;
  bool a_holds = false;     // verdict true for every admissible S on side A
  bool b_holds = false;     // verdict false for every non-vacuous S on side B
  bool b_vacuous = false;   // side B has no index above delta
};

struct DistinguishCaps {
  std::size_t subtrees = 4096;
  std::size_t walks = kDefaultWalkCap;
  std::size_t tree_nodes = kDefaultTreeCap;
};

/**
 * For each side C in {A, B}: over every admissible subtree S of the family
 * tree for C, decide whether some walk with unit * delta elements shares its
 * first three elements with no walk of unit * (delta + 1) elements.
 * Throws ParameterViolation unless delta is in A but not in B and unit >= 6.
 */
DistinguishReport distinguish(const std::set<int> &a, const std::set<int> &b, int delta,
                              int unit, Profile profile, const DistinguishCaps &caps = {});

} // namespace fiberlab
