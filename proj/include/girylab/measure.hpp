#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "girylab/rat.hpp"

namespace girylab {

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

/// Descriptor for the infinite part of a countably supported measure.
///
/// All indices i >= start carry weight  mass * (1 - ratio) * ratio^(i - start),
/// where mass is the total weight not accounted for by the finite prefix.
/// The mass beyond any enumerated tail prefix of length k is therefore exactly
/// mass * ratio^k, which is the certified bound the representation needs.
struct GeometricTail {
  std::uint64_t start = 0;
  Rat ratio;  // in (0, 1)
  Rat mass;   // total tail mass, > 0

  Rat weight_at(std::uint64_t i) const {
    return mass * (Rat(1) - ratio) * Rat::pow(ratio, i - start);
  }

  friend bool operator==(const GeometricTail& a, const GeometricTail& b) {
    return a.start == b.start && a.ratio == b.ratio && a.mass == b.mass;
  }
};

/// A probability measure on the naturals with exact rational weights.
///
/// Canonical form: indices strictly increasing, every stored weight strictly
/// positive, and either the weights sum exactly to one (finite support) or a
/// geometric tail accounts for the remaining mass. Equality is structural.
class Dist {
public:
  using Entry = std::pair<std::uint64_t, Rat>;

  Dist() : prefix_{{0, Rat(1)}} {}

  static Dist dirac(std::uint64_t i);

  /// Drops zero weights, sorts by index and validates that the total mass is
  /// exactly one. Raises DuplicateIndex / NegativeWeight / MassNotOne.
  static Dist from_weights(std::vector<Entry> pairs);

  /// Finite prefix (all indices < start) plus a geometric tail carrying the
  /// remaining mass. Raises MassNotOne when the prefix already reaches mass 1.
  static Dist with_geometric_tail(std::vector<Entry> prefix, std::uint64_t start, const Rat& ratio);

  const std::vector<Entry>& prefix() const { return prefix_; }
  const std::optional<GeometricTail>& tail() const { return tail_; }
  bool finite_support() const { return !tail_.has_value(); }

  Rat prefix_mass() const;
  Rat weight_at(std::uint64_t i) const;

  friend bool operator==(const Dist& a, const Dist& b) {
    return a.prefix_ == b.prefix_ && a.tail_ == b.tail_;
  }
  friend bool operator!=(const Dist& a, const Dist& b) { return !(a == b); }

  /// Canonical ordering used wherever distributions key a sorted container.
  friend bool operator<(const Dist& a, const Dist& b);

private:
  std::vector<Entry> prefix_;
  std::optional<GeometricTail> tail_;
};

/// A measurable subset of the naturals, restricted to the finitely
/// describable shapes: a finite set or the complement of one. Every set the
/// evaluation maps need (singletons, lower sets, the whole space) fits.
class NatSet {
public:
  static NatSet of(std::vector<std::uint64_t> elems);
  static NatSet complement_of(std::vector<std::uint64_t> elems);
  static NatSet all() { return complement_of({}); }
  static NatSet below(std::uint64_t n);  // {0, 1, ..., n-1}

  bool is_complement() const { return complement_; }
  const std::vector<std::uint64_t>& elems() const { return elems_; }
  bool contains(std::uint64_t i) const;

private:
  bool complement_ = false;
  std::vector<std::uint64_t> elems_;  // sorted, unique
};

/// ev_W(p) = sum of the weights p assigns to W, exact. Complemented sets are
/// evaluated as 1 - ev(complement).
Rat ev(const NatSet& w, const Dist& p);

/// Least index with strictly positive weight. Tail-backed measures are
/// enumerated in index order, never past `cap` indices into the tail.
std::uint64_t min_support(const Dist& p, std::uint64_t cap = kDefaultEnumerationCap);

/// Descriptor of a (possibly partial) map between index sets.
struct NatMap {
  std::function<std::optional<std::uint64_t>(std::uint64_t)> fn;

  std::optional<std::uint64_t> operator()(std::uint64_t i) const { return fn(i); }

  static NatMap identity();
  static NatMap constant(std::uint64_t k);
  static NatMap total(std::function<std::uint64_t(std::uint64_t)> f);
  static NatMap from_table(std::vector<std::uint64_t> table);  // partial outside the table
  static NatMap swap_of(std::uint64_t a, std::uint64_t b);
};

/// Image measure of p under f, with collided weights summed exactly.
/// Raises PartialMap when f is undefined on a support point, and rejects
/// tail-backed inputs (the image of an infinite support is not enumerable).
Dist pushforward(const NatMap& f, const Dist& p);

/// A finitely supported measure over measures: an element of G(G(N)).
class DistOverDist {
public:
  using Entry = std::pair<Dist, Rat>;

  /// Drops zero outer weights, validates positivity and total mass one.
  static DistOverDist from_pairs(std::vector<Entry> pairs);

  const std::vector<Entry>& outer() const { return outer_; }

private:
  std::vector<Entry> outer_;
};

/// Monad multiplication: join(Q)(k) = sum_j outer_j * inner_j(k), exact.
/// Inner measures must be finitely supported (TailUnsupported otherwise).
Dist join(const DistOverDist& q);

using DistFamily = std::function<std::optional<Dist>(std::uint64_t)>;

DistFamily family_from(std::vector<Dist> dists);
DistFamily constant_family(Dist d);
DistFamily dirac_family();

/// sum_j p_j * family(j), computed exactly as the join of the evident
/// two-level measure. Raises PartialFamily when the family is undefined on a
/// support point of p.
Dist convex_combine(const Dist& p, const DistFamily& family);

// --- Small-instance generation -------------------------------------------
//
// The exhaustive weight grid: every positive rational with denominator at
// most `max_den` that is at most one. Suites and checkers share these.

std::vector<Rat> grid_weights(std::int64_t max_den);

/// All k-tuples of grid weights summing exactly to one.
std::vector<std::vector<Rat>> grid_weightings(std::size_t k, std::int64_t max_den);

/// Every distribution with support contained in {0..max_index} and weights
/// drawn from the grid.
std::vector<Dist> grid_dists(std::uint64_t max_index, std::int64_t max_den);

/// Seeded random distribution. Weights are small integers over a shared
/// denominator so that products across a few levels stay far from overflow.
Dist random_dist(std::mt19937_64& rng, std::uint64_t max_index = 9, std::size_t max_support = 6);

DistOverDist random_dist_over_dist(std::mt19937_64& rng, std::size_t max_outer = 4);

}  // namespace girylab
