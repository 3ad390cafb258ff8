#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fiberlab/facts.hpp"
#include "fiberlab/measure.hpp"

namespace fiberlab {

/// Every nonempty chain of p as an increasing index sequence, in DFS order.
/// Throws SizeCapExceeded beyond `cap` chains.
std::vector<std::vector<Index>> all_chains(const Poset &p, std::size_t cap = 1 << 16);

struct SuccessorSweep {
  std::size_t dirac_checks = 0;
  std::size_t refuted_samples = 0; // measures above a[t] answered with a witness pair
  std::size_t failures = 0;
  std::vector<std::string> failure_notes; // the first few
};

/**
 * For every element t: the Diracs certified as linear successors of a[t]
 * are exactly those at immediate successors; and every sampled measure
 * above a[t] (support <= 4, denominator <= D) gets a verified answer whose
 * kind matches its shape. At most `per_element` sampled measures are
 * checked per t (0 means all).
 */
SuccessorSweep sweep_linear_successors(const Carrier &p, std::int64_t max_denominator,
                                       std::size_t per_element = 0);

struct SupremumSweep {
  std::size_t chains = 0;
  std::size_t certified = 0;
  std::size_t with_incomparable_bounds = 0;
  std::size_t probes_refuted = 0;
  std::size_t failures = 0;
  std::vector<std::string> failure_notes;
};

/// sup_diracs over every nonempty chain of p.
SupremumSweep sweep_suprema(const Carrier &p, std::int64_t max_denominator,
                            std::size_t chain_cap = 1 << 16);

} // namespace fiberlab
