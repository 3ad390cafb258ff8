#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fiberlab/measure.hpp"
#include "fiberlab/rposet.hpp"

namespace fiberlab {

enum class SuccessorKind {
  Successor,     // y = a[s] for an immediate successor s
  NonCoverMass,  // y charges some p > t that does not cover t
  TwoCovers,     // y charges two distinct covers of t
  BelowCover,    // y = λ a[s] + (1 - λ) a[t] with λ < 1, strictly below a[s]
};

std::string to_string(SuccessorKind kind);

struct SuccessorVerdict {
  SuccessorKind kind = SuccessorKind::Successor;
  std::optional<Index> successor;
  // Two incomparable measures below y, for NonCoverMass and TwoCovers.
  std::optional<std::pair<RationalMeasure, RationalMeasure>> witnesses;
  // a[s] for BelowCover: a larger element whose interval is still a chain.
  std::optional<RationalMeasure> dominator;
  bool verified = false; // every claim above was rechecked exactly

  bool yes() const { return kind == SuccessorKind::Successor; }
};

/**
 * Decides whether y is a linear successor of a[t] in the measure order.
 * Throws NotAbove unless a[t] < y.
 */
SuccessorVerdict certify_linear_successor(Index t, const RationalMeasure &y);

/**
 * For s covering t: the sampled measures z with a[t] < z <= λ a[s] + (1-λ) a[t]
 * are exactly the λ' a[s] + (1-λ') a[t], 0 < λ' <= λ. The sample is every
 * measure on {t, s} plus any two further elements with denominator <= D.
 * Throws InvalidInput unless s covers t and 0 < λ <= 1.
 */
bool interval_is_chain_check(const Carrier &p, Index t, Index s, const Rational &lambda,
                             std::int64_t max_denominator);

struct CounterWitness {
  RationalMeasure claim;  // an upper bound of the Diracs
  Index mass_point;       // u, charged by the claim and not the supremum
  Index bound;            // v, an upper bound with u not below v
};

struct SupVerdict {
  std::optional<Index> supremum;
  bool certified = false;           // a[sup] is least among sampled upper bounds
  std::size_t upper_bounds_sampled = 0;
  std::size_t counter_count = 0;    // sampled upper bounds refuted as suprema
  std::vector<CounterWitness> counter_witnesses; // the first few
  // Two incomparable upper bounds of the chain, when they exist.
  std::optional<std::pair<Index, Index>> incomparable_bounds;
  std::optional<CounterWitness> incomparable_probe; // for ½a[u] + ½a[v]
};

/**
 * Supremum of the Diracs of an increasing chain, checked against every
 * measure of support <= 4 and denominator <= D. Throws NotAChain.
 */
SupVerdict sup_diracs(const Carrier &p, const std::vector<Index> &chain,
                      std::int64_t max_denominator);

struct IngredientReport {
  std::size_t sample_size = 0;
  bool below_top_segment = true; // {v <= u_1} is exactly the segment {u_λ}
  bool segment_is_chain = true;
  bool dominates_segment = true; // v >= u_{1 - v(bottom)} for v above the minimum
  std::vector<std::string> violations;

  bool passed() const { return below_top_segment && segment_is_chain && dominates_segment; }
};

/**
 * With u_λ = λ a[r0] + (1 - λ) a[bottom], where r0 is the least element
 * above the bottom: checks on the bounded-denominator sample that the
 * measures below u_1 are exactly the u_λ, and that every other measure
 * dominates u_{1 - v(bottom)}. Throws ParameterViolation when the bottom
 * has more than one cover.
 */
IngredientReport irreducibility_ingredients(const Carrier &p, Index bottom,
                                            std::int64_t max_denominator);
IngredientReport irreducibility_ingredients(const RPoset &r, std::int64_t max_denominator);

} // namespace fiberlab
