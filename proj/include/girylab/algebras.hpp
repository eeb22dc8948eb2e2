#pragma once

#include <span>
#include <string>
#include <vector>

#include "girylab/scvx.hpp"

namespace girylab {

/// A finitely supported probability measure over an arbitrary carrier.
/// Entries are sorted in the canonical element order, merged by structural
/// equality, strictly positive, and sum exactly to one.
class CarrierDist {
public:
  using Entry = std::pair<Elem, Rat>;

  static CarrierDist dirac(Elem point);
  static CarrierDist from_pairs(std::vector<Entry> pairs);

  const std::vector<Entry>& entries() const { return entries_; }
  Rat weight_of(const Elem& point) const;

  friend bool operator==(const CarrierDist& a, const CarrierDist& b) {
    return a.entries_ == b.entries_;
  }

private:
  std::vector<Entry> entries_;
};

/// A finitely supported measure over carrier measures: one application of the
/// probability functor on top of CarrierDist.
class TwoLevelDist {
public:
  using Entry = std::pair<CarrierDist, Rat>;

  static TwoLevelDist from_pairs(std::vector<Entry> pairs);

  const std::vector<Entry>& outer() const { return outer_; }

private:
  std::vector<Entry> outer_;
};

/// A barycenter map packaged with its space: the action sends a finitely
/// supported measure on the carrier to a carrier point, satisfying the unit
/// and associativity laws and preserving countable affine sums.
struct Algebra {
  std::string name;
  Space space;
  std::function<Elem(const CarrierDist&)> action;
};

/// Built-in barycenter algebras by name: nat_min, n_min(k), two_min, two_max,
/// unit_interval, r_inf, coeq3, free. Raises UnknownAlgebra otherwise.
Algebra builtin_algebra(const std::string& name);

const std::vector<std::string>& builtin_algebra_names();

// Concrete barycenter maps.

/// Distributions on the naturals: the least positively weighted index.
std::uint64_t barycenter_nat_min(const Dist& p, std::uint64_t cap = kDefaultEnumerationCap);

/// Same map on the finite carrier {0..k-1}.
std::uint64_t barycenter_finite_min(std::uint64_t k, const CarrierDist& p);

/// The two structures on a pair of points: the min variant answers 1 only on
/// the full mass, the max variant on any positive mass.
std::uint64_t barycenter_two_min(const CarrierDist& p);
std::uint64_t barycenter_two_max(const CarrierDist& p);

/// Expectation on the unit interval, exact.
Rat barycenter_interval(const CarrierDist& p);

/// Expectation on the extended line; infinity is absorbing under positive
/// weight. No divergence can occur at finite support.
Elem barycenter_rinf(const CarrierDist& p);

/// The coequalizer barycenter: full mass on a point yields that point, any
/// proper mixture collapses to the interior point.
CoeqPoint barycenter_coeq3(const CarrierDist& p);

/// The free algebra on distributions over the naturals is the monad
/// multiplication itself.
Dist barycenter_free(const DistOverDist& q);

/// Converters between measures on natural-number carriers and plain
/// distributions.
Dist carrier_to_dist(const CarrierDist& p);
CarrierDist dist_to_carrier(const Dist& p);

struct LawOutcome {
  bool pass = true;
  std::string witness;
};

/// Unit law: the action collapses every sampled Dirac to its point.
LawOutcome check_unit_law(const Algebra& alg, std::span<const Elem> samples);

/// Associativity: acting after pushing the outer level through the action
/// agrees with acting after flattening the two levels. Both sides are
/// computed by independent code paths and compared exactly.
LawOutcome check_assoc_law(const Algebra& alg, const TwoLevelDist& q);

/// The two textbook routes through a two-level distribution on the naturals,
/// kept deliberately separate: flatten-then-minimize versus minimize the
/// pushforward of the support minima.
std::uint64_t nat_min_of_join(const DistOverDist& q);
std::uint64_t nat_min_of_supports(const DistOverDist& q);

struct Factorization {
  std::vector<std::uint64_t> phi;
  std::uint64_t verified_cases = 0;
};

/// Every affine map out of the distribution space into the min-structured
/// naturals, given by its Dirac table, factors through the barycenter as
/// table-after-minimum. Raises NotAffine when the table fails the subset-min
/// oracle; otherwise returns the table and verifies the factorization over
/// the exhaustive grid of distributions supported on the table's range.
Factorization factor_through_barycenter(const std::vector<std::uint64_t>& dirac_table,
                                        std::int64_t grid_den = 4);

/// phi(min support of p) == min support of the pushforward of p along phi.
LawOutcome check_phi_commutes(const std::vector<std::uint64_t>& phi, const Dist& p);

/// Pushing p along a permutation and minimizing equals the least phi-image
/// over the support. Raises NotPermutation on a non-bijective table.
LawOutcome check_permutation_min(const std::vector<std::uint64_t>& perm, const Dist& p);

}  // namespace girylab
