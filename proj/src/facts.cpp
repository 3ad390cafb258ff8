#include "fiberlab/facts.hpp"

#include <algorithm>

#include "fiberlab/error.hpp"

namespace fiberlab {

std::string to_string(SuccessorKind kind) {
  switch (kind) {
  case SuccessorKind::Successor:
    return "successor";
  case SuccessorKind::NonCoverMass:
    return "non_cover_mass";
  case SuccessorKind::TwoCovers:
    return "two_covers";
  case SuccessorKind::BelowCover:
    return "below_cover";
  }
  return "?";
}

namespace {

bool incomparable_below(const RationalMeasure &z1, const RationalMeasure &z2,
                        const RationalMeasure &y) {
  return leq_upset(z1, y) && leq_upset(z2, y) && !leq_principal(z1, z2) &&
         !leq_principal(z2, z1);
}

bool contains(const std::vector<Index> &xs, Index x) {
  return std::find(xs.begin(), xs.end(), x) != xs.end();
}

} // namespace

SuccessorVerdict certify_linear_successor(Index t, const RationalMeasure &y) {
  const Carrier &carrier = y.carrier_ptr();
  const Poset &p = *carrier;
  const RationalMeasure at = RationalMeasure::dirac(carrier, t);
  if (y == at || !leq_upset(at, y))
    throw Error(ErrorCode::NotAbove, y.to_string() + " is not above a[" + p.id(t) + "]");

  // y >= a[t] forces y onto the up-set of t.
  std::vector<Index> charged;
  for (Index x : y.support())
    if (x != t)
      charged.push_back(x);
  const auto &covers = p.upper_covers(t);

  SuccessorVerdict v;
  auto far = std::find_if(charged.begin(), charged.end(),
                          [&](Index x) { return !contains(covers, x); });
  if (far != charged.end()) {
    const Index top = *far;
    const Rational lambda = y.mass(top);
    const Index mid = *std::find_if(covers.begin(), covers.end(),
                                    [&](Index c) { return p.less(c, top); });
    v.kind = SuccessorKind::NonCoverMass;
    v.witnesses.emplace(
        RationalMeasure::mix(lambda / 2, RationalMeasure::dirac(carrier, top), at),
        RationalMeasure::mix(lambda, RationalMeasure::dirac(carrier, mid), at));
    v.verified = incomparable_below(v.witnesses->first, v.witnesses->second, y);
    return v;
  }
  if (charged.size() >= 2) {
    const Index s1 = charged[0], s2 = charged[1];
    v.kind = SuccessorKind::TwoCovers;
    v.witnesses.emplace(
        RationalMeasure::mix(y.mass(s1), RationalMeasure::dirac(carrier, s1), at),
        RationalMeasure::mix(y.mass(s2), RationalMeasure::dirac(carrier, s2), at));
    v.verified = incomparable_below(v.witnesses->first, v.witnesses->second, y);
    return v;
  }
  const Index s = charged.front();
  const RationalMeasure as = RationalMeasure::dirac(carrier, s);
  if (y.mass(s) == Rational(1)) {
    v.kind = SuccessorKind::Successor;
    v.successor = s;
    v.verified = y == as && contains(imsuc(p, t), s);
    return v;
  }
  v.kind = SuccessorKind::BelowCover;
  v.dominator = as;
  v.verified = leq_upset(y, as) && !(y == as);
  return v;
}

bool interval_is_chain_check(const Carrier &p, Index t, Index s, const Rational &lambda,
                             std::int64_t max_denominator) {
  if (!contains(p->upper_covers(t), s))
    throw Error(ErrorCode::InvalidInput, p->id(s) + " does not cover " + p->id(t));
  if (lambda <= 0 || lambda > 1)
    throw Error(ErrorCode::InvalidInput, "weight outside (0,1]");
  const RationalMeasure at = RationalMeasure::dirac(p, t);
  const RationalMeasure y = RationalMeasure::mix(lambda, RationalMeasure::dirac(p, s), at);

  for (const auto &z : sample_measures(p, 4, max_denominator)) {
    std::size_t extra = 0;
    bool on_pair = true;
    for (Index x : z.support())
      if (x != t && x != s) {
        ++extra;
        on_pair = false;
      }
    if (extra > 2)
      continue;
    const bool inside = !(z == at) && leq_upset(at, z) && leq_upset(z, y);
    const bool on_segment = on_pair && z.mass(s) > 0 && z.mass(s) <= lambda;
    if (inside != on_segment)
      return false;
  }
  return true;
}

SupVerdict sup_diracs(const Carrier &p, const std::vector<Index> &chain,
                      std::int64_t max_denominator) {
  for (Index x : chain)
    p->id(x);
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    if (!p->less(chain[i], chain[i + 1]))
      throw Error(ErrorCode::NotAChain, "not strictly increasing at " + p->id(chain[i]));

  SupVerdict v;
  v.supremum = supremum(*p, chain);
  const Bits bounds = upper_bounds(*p, chain);
  std::vector<RationalMeasure> diracs;
  for (Index x : chain)
    diracs.push_back(RationalMeasure::dirac(p, x));
  auto is_upper = [&](const RationalMeasure &x) {
    return std::all_of(diracs.begin(), diracs.end(),
                       [&](const auto &d) { return leq_upset(d, x); });
  };
  // An upper bound a[w] of the Diracs that does not dominate x, with u
  // charged by x and u not below w.
  auto refute = [&](const RationalMeasure &x) -> std::optional<CounterWitness> {
    for (Index u : x.support()) {
      if (v.supremum && u == *v.supremum)
        continue;
      for (Index w = bounds.find_first(); w != Bits::npos; w = bounds.find_next(w)) {
        if (p->leq(u, w))
          continue;
        const RationalMeasure aw = RationalMeasure::dirac(p, w);
        if (is_upper(aw) && !leq_upset(x, aw))
          return CounterWitness{x, u, w};
      }
    }
    return std::nullopt;
  };

  bool ok = v.supremum.has_value();
  std::optional<RationalMeasure> least;
  if (v.supremum) {
    least = RationalMeasure::dirac(p, *v.supremum);
    ok = is_upper(*least);
  }

  for (Index u = bounds.find_first(); u != Bits::npos && !v.incomparable_bounds;
       u = bounds.find_next(u))
    for (Index w = bounds.find_next(u); w != Bits::npos; w = bounds.find_next(w))
      if (!p->comparable(u, w)) {
        v.incomparable_bounds.emplace(u, w);
        break;
      }
  if (v.incomparable_bounds) {
    const auto [u, w] = *v.incomparable_bounds;
    const RationalMeasure probe = RationalMeasure::mix(
        Rational(1, 2), RationalMeasure::dirac(p, u), RationalMeasure::dirac(p, w));
    v.incomparable_probe = refute(probe);
    ok = ok && v.incomparable_probe.has_value();
  }

  for (const auto &x : sample_measures(p, 4, max_denominator)) {
    if (!is_upper(x))
      continue;
    ++v.upper_bounds_sampled;
    for (Index u : x.support())
      ok = ok && bounds.test(u);
    if (least)
      ok = ok && leq_upset(*least, x);
    if (least && x == *least)
      continue;
    if (auto cw = refute(x)) {
      ++v.counter_count;
      if (v.counter_witnesses.size() < 4)
        v.counter_witnesses.push_back(std::move(*cw));
    } else {
      ok = false;
    }
  }
  v.certified = ok;
  return v;
}

IngredientReport irreducibility_ingredients(const Carrier &p, Index bottom,
                                            std::int64_t max_denominator) {
  if (p->minimum() != bottom)
    throw Error(ErrorCode::ParameterViolation, p->id(bottom) + " is not the minimum");
  const auto &covers = p->upper_covers(bottom);
  if (covers.size() != 1)
    throw Error(ErrorCode::ParameterViolation, "the minimum must have exactly one cover");
  const Index r0 = covers.front();
  const RationalMeasure low = RationalMeasure::dirac(p, bottom);
  const RationalMeasure u1 = RationalMeasure::dirac(p, r0);

  IngredientReport report;
  std::vector<RationalMeasure> segment;
  const auto sample = sample_measures(p, 4, max_denominator);
  report.sample_size = sample.size();
  for (const auto &v : sample) {
    const auto supp = v.support();
    const bool on_segment = std::all_of(supp.begin(), supp.end(),
                                        [&](Index x) { return x == bottom || x == r0; });
    if (leq_upset(v, u1) != on_segment) {
      report.below_top_segment = false;
      report.violations.push_back("below u_1 mismatch: " + v.to_string());
    }
    if (on_segment)
      segment.push_back(v);
    if (v == low)
      continue;
    const RationalMeasure u = RationalMeasure::mix(Rational(1) - v.mass(bottom), u1, low);
    if (!leq_upset(u, v)) {
      report.dominates_segment = false;
      report.violations.push_back("not above u_" + to_string(Rational(1) - v.mass(bottom)) +
                                  ": " + v.to_string());
    }
  }
  for (std::size_t i = 0; i < segment.size(); ++i)
    for (std::size_t j = i + 1; j < segment.size(); ++j)
      if (!leq_upset(segment[i], segment[j]) && !leq_upset(segment[j], segment[i])) {
        report.segment_is_chain = false;
        report.violations.push_back("incomparable: " + segment[i].to_string() + " and " +
                                    segment[j].to_string());
      }
  return report;
}

IngredientReport irreducibility_ingredients(const RPoset &r, std::int64_t max_denominator) {
  return irreducibility_ingredients(r.carrier, r.poset.bottom_index(), max_denominator);
}

} // namespace fiberlab
