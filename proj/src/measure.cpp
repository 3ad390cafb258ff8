#include "fiberlab/measure.hpp"

#include <functional>
#include <numeric>

#include "fiberlab/error.hpp"

namespace fiberlab {

RationalMeasure::RationalMeasure(Carrier carrier, std::vector<Rational> mass)
    : carrier_(std::move(carrier)), mass_(std::move(mass)) {
  if (!carrier_)
    throw Error(ErrorCode::InvalidMeasure, "missing carrier");
  if (mass_.size() != carrier_->size())
    throw Error(ErrorCode::InvalidMeasure, "mass vector does not match carrier size");
  Rational total(0);
  for (const auto &m : mass_) {
    if (m < 0)
      throw Error(ErrorCode::InvalidMeasure, "negative mass");
    total += m;
  }
  if (total != Rational(1))
    throw Error(ErrorCode::InvalidMeasure, "total mass " + fiberlab::to_string(total));
}

RationalMeasure RationalMeasure::dirac(Carrier carrier, Index point) {
  std::vector<Rational> mass(carrier->size(), Rational(0));
  carrier->id(point);
  mass[point] = 1;
  return {std::move(carrier), std::move(mass)};
}

RationalMeasure RationalMeasure::from_ids(Carrier carrier,
                                          const std::map<ElementId, Rational> &mass) {
  std::vector<Rational> dense(carrier->size(), Rational(0));
  for (const auto &[id, value] : mass) {
    if (value <= 0)
      throw Error(ErrorCode::InvalidMeasure, "stored mass at '" + id + "' is not positive");
    dense[carrier->index_of(id)] = value;
  }
  return {std::move(carrier), std::move(dense)};
}

RationalMeasure RationalMeasure::mix(const Rational &weight, const RationalMeasure &a,
                                     const RationalMeasure &b) {
  require_same_carrier(a, b);
  if (weight < 0 || weight > 1)
    throw Error(ErrorCode::InvalidMeasure, "mixing weight outside [0,1]");
  std::vector<Rational> mass(a.mass_.size());
  for (std::size_t i = 0; i < mass.size(); ++i)
    mass[i] = weight * a.mass_[i] + (Rational(1) - weight) * b.mass_[i];
  return {a.carrier_, std::move(mass)};
}

Rational RationalMeasure::of(const Bits &set) const {
  Rational total(0);
  for (Index x = set.find_first(); x != Bits::npos; x = set.find_next(x))
    total += mass_[x];
  return total;
}

std::vector<Index> RationalMeasure::support() const {
  std::vector<Index> out;
  for (Index x = 0; x < mass_.size(); ++x)
    if (mass_[x] != Rational(0))
      out.push_back(x);
  return out;
}

std::optional<Index> RationalMeasure::dirac_point() const {
  const auto supp = support();
  if (supp.size() == 1)
    return supp.front();
  return std::nullopt;
}

std::string RationalMeasure::to_string() const {
  std::string s;
  for (Index x : support()) {
    if (!s.empty())
      s += " + ";
    s += fiberlab::to_string(mass_[x]) + "*" + carrier_->id(x);
  }
  return s;
}

void require_same_carrier(const RationalMeasure &mu, const RationalMeasure &nu) {
  if (mu.carrier_ptr() != nu.carrier_ptr() && !(mu.carrier() == nu.carrier()))
    throw Error(ErrorCode::CarrierMismatch, "measures live on different posets");
}

bool leq_upset(const RationalMeasure &mu, const RationalMeasure &nu) {
  require_same_carrier(mu, nu);
  const Poset &p = mu.carrier();
  std::vector<Index> joint;
  for (Index x = 0; x < p.size(); ++x)
    if (mu.mass(x) != Rational(0) || nu.mass(x) != Rational(0))
      joint.push_back(x);
  const std::size_t k = joint.size();
  std::vector<Rational> diff(k);
  for (std::size_t i = 0; i < k; ++i)
    diff[i] = nu.mass(joint[i]) - mu.mass(joint[i]);

  if (k <= 20) {
    std::vector<std::uint32_t> strictly_above(k, 0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (i != j && p.leq(joint[i], joint[j]))
          strictly_above[i] |= 1U << j;
    for (std::uint32_t set = 1; set < (1U << k); ++set) {
      bool closed = true;
      Rational slack(0);
      for (std::size_t i = 0; i < k && closed; ++i)
        if ((set >> i) & 1U) {
          closed = (strictly_above[i] & ~set) == 0;
          slack += diff[i];
        }
      if (closed && slack < 0)
        return false;
    }
    return true;
  }

  Bits subset = p.empty_set();
  for (Index x : joint)
    subset.set(x);
  const Poset sub = p.induced(subset);
  for (const Bits &up : upsets(sub)) {
    Rational slack(0);
    for (Index i = up.find_first(); i != Bits::npos; i = up.find_next(i))
      slack += diff[i];
    if (slack < 0)
      return false;
  }
  return true;
}

std::optional<Index> principal_witness(const RationalMeasure &mu, const RationalMeasure &nu) {
  require_same_carrier(mu, nu);
  const Poset &p = mu.carrier();
  for (Index t = 0; t < p.size(); ++t)
    if (mu.of(p.up(t)) > nu.of(p.up(t)))
      return t;
  return std::nullopt;
}

bool leq_principal(const RationalMeasure &mu, const RationalMeasure &nu) {
  return !principal_witness(mu, nu).has_value();
}

std::vector<RationalMeasure> sample_measures(const Carrier &carrier, std::size_t max_support,
                                             std::int64_t max_denominator) {
  const std::size_t n = carrier->size();
  std::vector<RationalMeasure> out;
  std::vector<Index> subset;
  std::vector<std::int64_t> parts;

  // Compositions of d into subset.size() positive parts with gcd 1, so each
  // measure appears once, at its least common denominator.
  std::function<void(std::size_t, std::int64_t, std::int64_t, std::int64_t)> compose =
      [&](std::size_t i, std::int64_t remaining, std::int64_t d, std::int64_t g) {
        const std::size_t k = subset.size();
        if (i + 1 == k) {
          parts[i] = remaining;
          if (std::gcd(g, remaining) != 1)
            return;
          std::vector<Rational> mass(n, Rational(0));
          for (std::size_t j = 0; j < k; ++j)
            mass[subset[j]] = Rational(parts[j], d);
          out.emplace_back(carrier, std::move(mass));
          return;
        }
        for (std::int64_t a = 1; a <= remaining - static_cast<std::int64_t>(k - i - 1); ++a) {
          parts[i] = a;
          compose(i + 1, remaining - a, d, std::gcd(g, a));
        }
      };

  std::function<void(Index, std::size_t)> choose = [&](Index from, std::size_t size) {
    if (subset.size() == size) {
      parts.assign(size, 0);
      for (std::int64_t d = static_cast<std::int64_t>(size); d <= max_denominator; ++d)
        compose(0, d, d, 0);
      return;
    }
    for (Index x = from; x < n; ++x) {
      subset.push_back(x);
      choose(x + 1, size);
      subset.pop_back();
    }
  };
  for (std::size_t size = 1; size <= max_support && size <= n; ++size)
    choose(0, size);
  return out;
}

} // namespace fiberlab
