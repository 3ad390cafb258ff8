#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fiberlab/poset.hpp"
#include "fiberlab/rational.hpp"

namespace fiberlab {

using Carrier = std::shared_ptr<const Poset>;

/**
 * Finitely supported probability measure on a finite poset, with exact
 * rational masses. Masses are stored densely (zero off the support); the
 * total is exactly one and no mass is negative.
 */
class RationalMeasure {
public:
  /// Throws InvalidMeasure on a wrong length, a negative mass, or a total
  /// other than one.
  RationalMeasure(Carrier carrier, std::vector<Rational> mass);

  static RationalMeasure dirac(Carrier carrier, Index point);
  static RationalMeasure from_ids(Carrier carrier, const std::map<ElementId, Rational> &mass);
  /// weight * a + (1 - weight) * b; throws CarrierMismatch.
  static RationalMeasure mix(const Rational &weight, const RationalMeasure &a,
                             const RationalMeasure &b);

  const Poset &carrier() const { return *carrier_; }
  const Carrier &carrier_ptr() const { return carrier_; }

  const Rational &mass(Index x) const { return mass_.at(x); }
  const std::vector<Rational> &masses() const { return mass_; }
  Rational of(const Bits &set) const;
  std::vector<Index> support() const;
  std::optional<Index> dirac_point() const;

  std::string to_string() const;

  friend bool operator==(const RationalMeasure &a, const RationalMeasure &b) {
    return a.mass_ == b.mass_ && (a.carrier_ == b.carrier_ || *a.carrier_ == *b.carrier_);
  }

private:
  Carrier carrier_;
  std::vector<Rational> mass_;
};

/// Throws CarrierMismatch unless both measures live on the same poset.
void require_same_carrier(const RationalMeasure &mu, const RationalMeasure &nu);

/**
 * mu(A) <= nu(A) for every upward-closed A. Only A ∩ (supp mu ∪ supp nu)
 * matters, and those traces are exactly the upsets of the subposet induced
 * on the joint support, so the scan runs over that subposet.
 */
bool leq_upset(const RationalMeasure &mu, const RationalMeasure &nu);

/// mu(↑t) <= nu(↑t) for every element t.
bool leq_principal(const RationalMeasure &mu, const RationalMeasure &nu);

/// Least t (by index) with mu(↑t) > nu(↑t), if any.
std::optional<Index> principal_witness(const RationalMeasure &mu, const RationalMeasure &nu);

/**
 * Every measure whose support has at most `max_support` points and whose
 * masses share a common denominator of at most `max_denominator`, each
 * exactly once, ordered by support (lexicographic index tuples) and then by
 * denominator and numerators.
 */
std::vector<RationalMeasure> sample_measures(const Carrier &carrier, std::size_t max_support,
                                             std::int64_t max_denominator);

} // namespace fiberlab
