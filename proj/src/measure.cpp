#include "girylab/measure.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace girylab {

Dist Dist::dirac(std::uint64_t i) {
  Dist d;
  d.prefix_ = {{i, Rat(1)}};
  return d;
}

Dist Dist::from_weights(std::vector<Entry> pairs) {
  for (const auto& [i, w] : pairs) {
    if (w.is_negative()) raise(Errc::negative_weight, "weight at index " + std::to_string(i));
  }
  std::erase_if(pairs, [](const Entry& e) { return e.second.is_zero(); });
  std::sort(pairs.begin(), pairs.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (std::size_t k = 1; k < pairs.size(); ++k) {
    if (pairs[k].first == pairs[k - 1].first)
      raise(Errc::duplicate_index, "index " + std::to_string(pairs[k].first));
  }
  Rat mass(0);
  for (const auto& [i, w] : pairs) mass += w;
  if (mass != Rat(1)) raise(Errc::mass_not_one, "total mass " + mass.str());
  Dist d;
  d.prefix_ = std::move(pairs);
  return d;
}

Dist Dist::with_geometric_tail(std::vector<Entry> prefix, std::uint64_t start, const Rat& ratio) {
  if (!(ratio.is_positive() && ratio < Rat(1)))
    raise(Errc::bad_config, "tail ratio must lie in (0,1), got " + ratio.str());
  for (const auto& [i, w] : prefix) {
    if (w.is_negative()) raise(Errc::negative_weight, "weight at index " + std::to_string(i));
    if (i >= start)
      raise(Errc::bad_config, "prefix index " + std::to_string(i) + " overlaps tail start");
  }
  std::erase_if(prefix, [](const Entry& e) { return e.second.is_zero(); });
  std::sort(prefix.begin(), prefix.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (std::size_t k = 1; k < prefix.size(); ++k) {
    if (prefix[k].first == prefix[k - 1].first)
      raise(Errc::duplicate_index, "index " + std::to_string(prefix[k].first));
  }
  Rat mass(0);
  for (const auto& [i, w] : prefix) mass += w;
  if (!(mass < Rat(1)))
    raise(Errc::mass_not_one, "prefix mass " + mass.str() + " leaves no tail mass");
  Dist d;
  d.prefix_ = std::move(prefix);
  d.tail_ = GeometricTail{start, ratio, Rat(1) - mass};
  return d;
}

Rat Dist::prefix_mass() const {
  Rat mass(0);
  for (const auto& [i, w] : prefix_) mass += w;
  return mass;
}

Rat Dist::weight_at(std::uint64_t i) const {
  const auto it = std::lower_bound(
      prefix_.begin(), prefix_.end(), i,
      [](const Entry& e, std::uint64_t idx) { return e.first < idx; });
  if (it != prefix_.end() && it->first == i) return it->second;
  if (tail_ && i >= tail_->start) return tail_->weight_at(i);
  return Rat(0);
}

bool operator<(const Dist& a, const Dist& b) {
  const auto entry_less = [](const Dist::Entry& x, const Dist::Entry& y) {
    if (x.first != y.first) return x.first < y.first;
    if (x.second.num() != y.second.num()) return x.second.num() < y.second.num();
    return x.second.den() < y.second.den();
  };
  if (a.prefix_ != b.prefix_)
    return std::lexicographical_compare(a.prefix_.begin(), a.prefix_.end(), b.prefix_.begin(),
                                        b.prefix_.end(), entry_less);
  if (a.tail_.has_value() != b.tail_.has_value()) return !a.tail_.has_value();
  if (!a.tail_) return false;
  if (a.tail_->start != b.tail_->start) return a.tail_->start < b.tail_->start;
  return a.tail_->ratio < b.tail_->ratio;
}

namespace {

std::vector<std::uint64_t> sorted_unique(std::vector<std::uint64_t> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

}  // namespace

NatSet NatSet::of(std::vector<std::uint64_t> elems) {
  NatSet s;
  s.elems_ = sorted_unique(std::move(elems));
  return s;
}

NatSet NatSet::complement_of(std::vector<std::uint64_t> elems) {
  NatSet s;
  s.complement_ = true;
  s.elems_ = sorted_unique(std::move(elems));
  return s;
}

NatSet NatSet::below(std::uint64_t n) {
  std::vector<std::uint64_t> xs(n);
  for (std::uint64_t i = 0; i < n; ++i) xs[i] = i;
  return of(std::move(xs));
}

bool NatSet::contains(std::uint64_t i) const {
  const bool listed = std::binary_search(elems_.begin(), elems_.end(), i);
  return complement_ ? !listed : listed;
}

Rat ev(const NatSet& w, const Dist& p) {
  if (w.is_complement()) {
    return Rat(1) - ev(NatSet::of(w.elems()), p);
  }
  Rat sum(0);
  for (std::uint64_t i : w.elems()) sum += p.weight_at(i);
  return sum;
}

std::uint64_t min_support(const Dist& p, std::uint64_t cap) {
  if (!p.prefix().empty()) return p.prefix().front().first;
  // Prefix empty: the measure is tail-only. Walk the tail in index order
  // until a positive weight shows up; the cap bounds the walk.
  const auto& tail = p.tail();
  if (!tail) raise(Errc::mass_not_one, "empty distribution");
  for (std::uint64_t k = 0; k < cap; ++k) {
    if (tail->weight_at(tail->start + k).is_positive()) return tail->start + k;
  }
  raise(Errc::enumeration_cap_exceeded,
        "no positive weight within " + std::to_string(cap) + " tail indices");
}

NatMap NatMap::identity() {
  return NatMap{[](std::uint64_t i) { return std::optional<std::uint64_t>(i); }};
}

NatMap NatMap::constant(std::uint64_t k) {
  return NatMap{[k](std::uint64_t) { return std::optional<std::uint64_t>(k); }};
}

NatMap NatMap::total(std::function<std::uint64_t(std::uint64_t)> f) {
  return NatMap{[f = std::move(f)](std::uint64_t i) { return std::optional<std::uint64_t>(f(i)); }};
}

NatMap NatMap::from_table(std::vector<std::uint64_t> table) {
  return NatMap{[t = std::move(table)](std::uint64_t i) -> std::optional<std::uint64_t> {
    if (i >= t.size()) return std::nullopt;
    return t[i];
  }};
}

NatMap NatMap::swap_of(std::uint64_t a, std::uint64_t b) {
  return NatMap{[a, b](std::uint64_t i) -> std::optional<std::uint64_t> {
    if (i == a) return b;
    if (i == b) return a;
    return i;
  }};
}

Dist pushforward(const NatMap& f, const Dist& p) {
  if (!p.finite_support())
    raise(Errc::tail_unsupported, "pushforward of a tail-backed measure");
  std::map<std::uint64_t, Rat> acc;
  for (const auto& [i, w] : p.prefix()) {
    const auto j = f(i);
    if (!j) raise(Errc::partial_map, "map undefined at support point " + std::to_string(i));
    auto [it, fresh] = acc.emplace(*j, w);
    if (!fresh) it->second += w;
  }
  std::vector<Dist::Entry> entries(acc.begin(), acc.end());
  return Dist::from_weights(std::move(entries));
}

DistOverDist DistOverDist::from_pairs(std::vector<Entry> pairs) {
  for (const auto& [d, w] : pairs) {
    if (w.is_negative()) raise(Errc::negative_weight, "outer weight " + w.str());
  }
  std::erase_if(pairs, [](const Entry& e) { return e.second.is_zero(); });
  Rat mass(0);
  for (const auto& [d, w] : pairs) mass += w;
  if (mass != Rat(1)) raise(Errc::mass_not_one, "outer mass " + mass.str());
  DistOverDist q;
  q.outer_ = std::move(pairs);
  return q;
}

Dist join(const DistOverDist& q) {
  std::map<std::uint64_t, Rat> acc;
  for (const auto& [inner, w] : q.outer()) {
    if (!inner.finite_support())
      raise(Errc::tail_unsupported, "join over a tail-backed inner measure");
    for (const auto& [k, pk] : inner.prefix()) {
      auto [it, fresh] = acc.emplace(k, w * pk);
      if (!fresh) it->second += w * pk;
    }
  }
  std::vector<Dist::Entry> entries(acc.begin(), acc.end());
  return Dist::from_weights(std::move(entries));
}

DistFamily family_from(std::vector<Dist> dists) {
  return [ds = std::move(dists)](std::uint64_t j) -> std::optional<Dist> {
    if (j >= ds.size()) return std::nullopt;
    return ds[j];
  };
}

DistFamily constant_family(Dist d) {
  return [d = std::move(d)](std::uint64_t) -> std::optional<Dist> { return d; };
}

DistFamily dirac_family() {
  return [](std::uint64_t j) -> std::optional<Dist> { return Dist::dirac(j); };
}

Dist convex_combine(const Dist& p, const DistFamily& family) {
  if (!p.finite_support())
    raise(Errc::tail_unsupported, "convex combination over a tail-backed outer measure");
  std::vector<DistOverDist::Entry> outer;
  outer.reserve(p.prefix().size());
  for (const auto& [j, w] : p.prefix()) {
    auto d = family(j);
    if (!d) raise(Errc::partial_family, "family undefined at index " + std::to_string(j));
    outer.emplace_back(std::move(*d), w);
  }
  return join(DistOverDist::from_pairs(std::move(outer)));
}

std::vector<Rat> grid_weights(std::int64_t max_den) {
  std::set<std::pair<std::int64_t, std::int64_t>> seen;
  std::vector<Rat> out;
  for (std::int64_t d = 1; d <= max_den; ++d) {
    for (std::int64_t n = 1; n <= d; ++n) {
      Rat r(n, d);
      if (seen.insert({r.num(), r.den()}).second) out.push_back(r);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<Rat>> grid_weightings(std::size_t k, std::int64_t max_den) {
  const std::vector<Rat> ws = grid_weights(max_den);
  std::vector<std::vector<Rat>> out;
  std::vector<Rat> current;
  const std::function<void(std::size_t, Rat)> go = [&](std::size_t left, Rat remaining) {
    if (left == 0) {
      if (remaining.is_zero()) out.push_back(current);
      return;
    }
    for (const Rat& w : ws) {
      if (w > remaining) continue;
      current.push_back(w);
      go(left - 1, remaining - w);
      current.pop_back();
    }
  };
  go(k, Rat(1));
  return out;
}

std::vector<Dist> grid_dists(std::uint64_t max_index, std::int64_t max_den) {
  std::vector<Dist> out;
  const std::uint64_t n = max_index + 1;
  for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n); ++mask) {
    std::vector<std::uint64_t> support;
    for (std::uint64_t i = 0; i < n; ++i) {
      if (mask & (std::uint64_t(1) << i)) support.push_back(i);
    }
    for (const auto& weighting : grid_weightings(support.size(), max_den)) {
      std::vector<Dist::Entry> entries;
      entries.reserve(support.size());
      for (std::size_t k = 0; k < support.size(); ++k) entries.emplace_back(support[k], weighting[k]);
      out.push_back(Dist::from_weights(std::move(entries)));
    }
  }
  return out;
}

Dist random_dist(std::mt19937_64& rng, std::uint64_t max_index, std::size_t max_support) {
  const std::size_t size = 1 + rng() % max_support;
  std::vector<std::uint64_t> indices;
  while (indices.size() < size) {
    const std::uint64_t i = rng() % (max_index + 1);
    if (std::find(indices.begin(), indices.end(), i) == indices.end()) indices.push_back(i);
  }
  std::sort(indices.begin(), indices.end());
  // Integer parts over their own sum keeps denominators small and shared.
  std::vector<std::int64_t> parts(size);
  std::int64_t total = 0;
  for (auto& part : parts) {
    part = 1 + static_cast<std::int64_t>(rng() % 8);
    total += part;
  }
  std::vector<Dist::Entry> entries;
  entries.reserve(size);
  for (std::size_t k = 0; k < size; ++k) entries.emplace_back(indices[k], Rat(parts[k], total));
  return Dist::from_weights(std::move(entries));
}

DistOverDist random_dist_over_dist(std::mt19937_64& rng, std::size_t max_outer) {
  const std::size_t size = 1 + rng() % max_outer;
  std::vector<std::int64_t> parts(size);
  std::int64_t total = 0;
  for (auto& part : parts) {
    part = 1 + static_cast<std::int64_t>(rng() % 8);
    total += part;
  }
  std::vector<DistOverDist::Entry> outer;
  outer.reserve(size);
  for (std::size_t k = 0; k < size; ++k) outer.emplace_back(random_dist(rng), Rat(parts[k], total));
  return DistOverDist::from_pairs(std::move(outer));
}

}  // namespace girylab
