#include "fiberlab/suites.hpp"

#include <algorithm>
#include <functional>

#include "fiberlab/error.hpp"

namespace fiberlab {

std::vector<std::vector<Index>> all_chains(const Poset &p, std::size_t cap) {
  std::vector<std::vector<Index>> out;
  std::vector<Index> chain;
  std::function<void(Index)> grow = [&](Index x) {
    chain.push_back(x);
    if (out.size() == cap)
      throw Error(ErrorCode::SizeCapExceeded, "more than " + std::to_string(cap) + " chains");
    out.push_back(chain);
    const Bits &up = p.up(x);
    for (Index y = up.find_first(); y != Bits::npos; y = up.find_next(y))
      if (y != x)
        grow(y);
    chain.pop_back();
  };
  for (Index x = 0; x < p.size(); ++x)
    grow(x);
  return out;
}

namespace {

void note(std::vector<std::string> &notes, std::string text) {
  if (notes.size() < 8)
    notes.push_back(std::move(text));
}

} // namespace

SuccessorSweep sweep_linear_successors(const Carrier &p, std::int64_t max_denominator,
                                       std::size_t per_element) {
  SuccessorSweep sweep;
  const auto sample = sample_measures(p, 4, max_denominator);
  for (Index t = 0; t < p->size(); ++t) {
    const RationalMeasure at = RationalMeasure::dirac(p, t);
    std::vector<Index> certified;
    for (Index x = 0; x < p->size(); ++x) {
      if (x == t)
        continue;
      ++sweep.dirac_checks;
      try {
        const auto v = certify_linear_successor(t, RationalMeasure::dirac(p, x));
        if (!v.verified) {
          ++sweep.failures;
          note(sweep.failure_notes, "unverified answer for a[" + p->id(x) + "] over " + p->id(t));
        }
        if (v.yes())
          certified.push_back(x);
      } catch (const Error &e) {
        if (e.code() != ErrorCode::NotAbove)
          throw;
        if (p->leq(t, x)) {
          ++sweep.failures;
          note(sweep.failure_notes, "a[" + p->id(x) + "] wrongly reported not above");
        }
      }
    }
    if (certified != imsuc(*p, t)) {
      ++sweep.failures;
      note(sweep.failure_notes, "successor Diracs of " + p->id(t) + " differ from its covers");
    }

    std::size_t checked = 0;
    for (const auto &y : sample) {
      if (per_element && checked == per_element)
        break;
      if (y == at || !leq_upset(at, y))
        continue;
      ++checked;
      const auto v = certify_linear_successor(t, y);
      // Shape of y over t: the charged points other than t.
      std::vector<Index> charged;
      for (Index x : y.support())
        if (x != t)
          charged.push_back(x);
      const auto &covers = p->upper_covers(t);
      const bool on_covers = std::all_of(charged.begin(), charged.end(), [&](Index x) {
        return std::find(covers.begin(), covers.end(), x) != covers.end();
      });
      const bool segment = on_covers && charged.size() == 1;
      bool right_kind = segment ? (v.kind == SuccessorKind::Successor ||
                                   v.kind == SuccessorKind::BelowCover)
                                : v.witnesses.has_value();
      if (segment)
        right_kind = right_kind && v.yes() == (y.mass(charged.front()) == Rational(1));
      if (!segment)
        ++sweep.refuted_samples;
      if (!v.verified || !right_kind) {
        ++sweep.failures;
        note(sweep.failure_notes, "over " + p->id(t) + ": " + y.to_string());
      }
    }
  }
  return sweep;
}

SupremumSweep sweep_suprema(const Carrier &p, std::int64_t max_denominator,
                            std::size_t chain_cap) {
  SupremumSweep sweep;
  for (const auto &chain : all_chains(*p, chain_cap)) {
    ++sweep.chains;
    const auto v = sup_diracs(p, chain, max_denominator);
    bool ok = v.supremum.has_value() && v.certified && v.supremum == supremum(*p, chain);
    if (ok)
      ++sweep.certified;
    if (v.incomparable_bounds) {
      ++sweep.with_incomparable_bounds;
      if (v.incomparable_probe)
        ++sweep.probes_refuted;
      else
        ok = false;
    }
    if (!ok) {
      ++sweep.failures;
      std::string ids;
      for (Index x : chain)
        ids += (ids.empty() ? "" : "<") + p->id(x);
      note(sweep.failure_notes, "chain " + ids);
    }
  }
  return sweep;
}

} // namespace fiberlab
