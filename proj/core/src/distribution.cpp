#include "csg/distribution.hpp"

#include <algorithm>

namespace csg {

Distribution Distribution::pure(int outcome) {
  Distribution d;
  d.entries_.emplace_back(outcome, Rational(1));
  return d;
}

Distribution Distribution::two_point_uniform(int a, int b) {
  if (a == b) return pure(a);
  return make({{a, Rational(1, 2)}, {b, Rational(1, 2)}});
}

Distribution Distribution::make_unchecked(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& x, const Entry& y) { return x.first < y.first; });
  Distribution d;
  for (auto& e : entries) {
    if (!d.entries_.empty() && d.entries_.back().first == e.first) {
      d.entries_.back().second += e.second;
    } else {
      d.entries_.push_back(std::move(e));
    }
  }
  std::erase_if(d.entries_, [](const Entry& e) { return e.second == Rational(0); });
  return d;
}

Distribution Distribution::make(std::vector<Entry> entries) {
  Distribution d = make_unchecked(std::move(entries));
  if (!d.is_valid()) throw DomainError("not a probability distribution (sum " + d.sum().str() + ")");
  return d;
}

Rational Distribution::prob(int outcome) const {
  const auto it = std::lower_bound(
      entries_.begin(), entries_.end(), outcome,
      [](const Entry& e, int id) { return e.first < id; });
  if (it != entries_.end() && it->first == outcome) return it->second;
  return Rational(0);
}

Rational Distribution::sum() const {
  Rational s;
  for (const auto& [id, p] : entries_) s += p;
  return s;
}

bool Distribution::is_valid() const {
  if (entries_.empty()) return false;
  for (const auto& [id, p] : entries_)
    if (p.sign() <= 0) return false;
  return sum() == Rational(1);
}

int Distribution::pure_outcome() const {
  if (!is_pure()) throw DomainError("distribution is not pure");
  return entries_[0].first;
}

Rational Distribution::patience() const {
  if (entries_.empty()) throw DomainError("patience of empty distribution");
  Rational min_p = entries_[0].second;
  for (const auto& [id, p] : entries_) min_p = min(min_p, p);
  if (min_p.sign() <= 0) throw DomainError("patience of distribution with non-positive mass");
  return Rational(1) / min_p;
}

Integer Distribution::roundedness() const {
  if (entries_.empty()) throw DomainError("roundedness of empty distribution");
  Integer r = 1;
  for (const auto& [id, p] : entries_) {
    Integer d = p.denominator();
    if (d > r) r = d;
  }
  return r;
}

Rational variation_distance(const Distribution& a, const Distribution& b) {
  Rational total;
  auto ia = a.entries().begin(), ib = b.entries().begin();
  while (ia != a.entries().end() || ib != b.entries().end()) {
    if (ib == b.entries().end() || (ia != a.entries().end() && ia->first < ib->first)) {
      total += ia->second.abs();
      ++ia;
    } else if (ia == a.entries().end() || ib->first < ia->first) {
      total += ib->second.abs();
      ++ib;
    } else {
      total += (ia->second - ib->second).abs();
      ++ia;
      ++ib;
    }
  }
  return total / Rational(2);
}

}  // namespace csg
