#pragma once

#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "girylab/measure.hpp"

namespace girylab {

/// The adjoined point of the extended line carrier.
struct Infinity {
  friend constexpr bool operator==(Infinity, Infinity) { return true; }
  friend constexpr bool operator!=(Infinity, Infinity) { return false; }
};

/// The three points of the coequalizer space: the two generators and the
/// single interior point every proper mixture collapses to.
enum class CoeqPoint { zero, mid, one };

/// A carrier element. Which alternatives are admissible depends on the space:
/// naturals for the min/max spaces, rationals for the unit interval, rationals
/// or infinity for the extended line, distributions for the simplex spaces.
using Elem = std::variant<std::uint64_t, Rat, Infinity, Dist, CoeqPoint>;

bool elem_less(const Elem& a, const Elem& b);
std::string to_string(const Elem& e);

enum class SpaceType { discrete, geometric, mixed };

enum class StructureKind { min_order, max_order, simplex, interval, extended_line, coequalizer };

/// A sequence of carrier elements: a finite table plus an optional default
/// rule covering all remaining indices.
class SeqMap {
public:
  struct IdentityRule {};                 // i -> the natural number i
  struct DiracRule {};                    // i -> the Dirac measure at i
  struct ConstantRule { Elem value; };    // i -> fixed element
  struct GeometricRule {                  // i -> coeff * growth^(i - from), as a rational
    Rat coeff;
    Rat growth;
    std::uint64_t from = 0;
  };
  using Rule = std::variant<std::monostate, IdentityRule, DiracRule, ConstantRule, GeometricRule>;

  SeqMap() = default;

  static SeqMap from_elems(std::vector<Elem> front);
  static SeqMap from_table(std::map<std::uint64_t, Elem> table);
  static SeqMap identity();
  static SeqMap dirac();
  static SeqMap constant(Elem value);
  static SeqMap geometric_values(const Rat& coeff, const Rat& growth, std::uint64_t from = 0);

  SeqMap with_entry(std::uint64_t i, Elem value) const;

  bool defined_at(std::uint64_t i) const;
  Elem at(std::uint64_t i) const;  // raises PartialSequence when undefined

  const std::map<std::uint64_t, Elem>& table() const { return table_; }
  const Rule& rule() const { return rule_; }

private:
  std::map<std::uint64_t, Elem> table_;
  Rule rule_;
};

/// A super convex space instance: a carrier description together with its
/// structure map for countable affine sums and the declared type tag. The
/// sample points feed the generated-case checkers.
struct Space {
  std::string name;
  SpaceType type_tag = SpaceType::discrete;
  StructureKind kind = StructureKind::min_order;
  std::function<bool(const Elem&)> contains;
  std::vector<Elem> samples;
  std::function<Elem(const Dist&, const SeqMap&)> structure;
};

/// Built-in instances by name: N_min, n_min(k), two_min, two_max, delta_n(k),
/// delta_N, unit_interval, r_inf, coeq3. Raises UnknownSpace otherwise.
Space builtin_space(const std::string& name);

/// Applies the space's structure map to (p, a). The sequence must be defined
/// on the support of p. Tail-backed p is accepted only where the structure
/// can resolve it exactly (order structures with eventually-constant or
/// identity sequences; the extended line with rule-backed sequences).
Elem affine_sum(const Space& space, const Dist& p, const SeqMap& a);

struct CheckResult {
  bool pass = true;
  std::string witness;
};

/// Axiom 1: the affine sum against a Dirac measure picks out the j-th element.
CheckResult check_axiom1(const Space& space, const SeqMap& a, std::uint64_t j);

/// Axiom 2: iterated sums agree with the sum against the combined measure.
CheckResult check_axiom2(const Space& space, const Dist& p, const DistFamily& q_family,
                         const SeqMap& a);

struct AffineMap {
  std::string name;
  Space source;
  Space target;
  std::function<Elem(const Elem&)> action;
};

/// The map out of delta_N determined by where the Dirac measures go.
AffineMap seq_to_affine(const SeqMap& a, const Space& target);

/// Composes a measure-valued transform with a sequence: b_i is the affine sum
/// of a against q(i). The composite map out of delta_N sends each Dirac to b_i.
SeqMap transform_compose(const DistFamily& q, const SeqMap& a, const Space& target,
                         std::uint64_t count);

struct AffineBudget {
  std::uint64_t max_index = 3;      // exhaustive core support lives in {0..max_index}
  std::int64_t max_den = 4;         // exhaustive core weight grid
  std::size_t samples_per_slot = 3; // element choices per support index in the core
  int random_cases = 200;
  std::uint64_t seed = 1;
};

/// Budgeted affineness checker: exhaustive small core plus seeded random
/// cases; returns the first counterexample found. For maps out of the
/// extended line the divergent-sum instances are exercised as well.
CheckResult is_affine(const AffineMap& m, const AffineBudget& budget = {});

/// i < j implies f(i) <= f(j), over the table.
bool monotone_oracle(std::span<const std::uint64_t> f);

/// f(min S) == min f(S) for every nonempty S within the table's index range.
/// This is the exact finite oracle for countable affineness of endomaps of
/// the min-structured naturals.
bool subset_min_preserving(std::span<const std::uint64_t> f);

struct NsReport {
  std::uint64_t n = 0;
  std::uint64_t functions = 0;
  std::uint64_t monotone = 0;
  std::uint64_t expected_monotone = 0;  // C(2n-1, n)
  std::uint64_t subset_min = 0;
  std::vector<std::string> discrepancies;
  bool pass() const {
    return discrepancies.empty() && monotone == expected_monotone && monotone == subset_min;
  }
};

/// Enumerates all n^n endofunctions of {0..n-1} and verifies that the
/// monotone ones are exactly the subset-min-preserving ones. Raises
/// BoundExceeded past the exhaustive bound.
NsReport affine_iff_monotone(std::uint64_t n, std::uint64_t bound = 5);

std::vector<std::vector<std::uint64_t>> all_monotone_tables(std::uint64_t n);
std::vector<std::vector<std::uint64_t>> all_permutation_tables(std::uint64_t n);

struct ClassifyBudget {
  int max_window = 3;            // interior probes over windows {0..1}, {0..2}, ...
  std::size_t sample_limit = 5;  // element choices per probe
  std::int64_t max_den = 4;
};

struct ClassifyReport {
  bool interior_constant = false;
  bool cancellative = false;
  SpaceType suggested = SpaceType::discrete;
  bool consistent = false;
  std::string detail;
};

/// Probes the declared type tag: discrete spaces must give interior-constant
/// sums; geometric spaces must exhibit a non-constant sum and cancellation;
/// mixed spaces fail both probes.
ClassifyReport classify_probe(const Space& space, const ClassifyBudget& budget = {});

struct DgReport {
  bool affine = false;
  bool constant = false;
  bool consistent = false;  // an affine-passing non-constant map is the counterexample
  std::string witness;
};

/// Affine maps from a discrete space to a geometric one can only be constant;
/// reports a counterexample if the budgeted suite finds an affine-passing
/// non-constant map.
DgReport dg_constancy_check(const AffineMap& m, const AffineBudget& budget = {});

/// The isomorphism between the 1-simplex and the unit interval:
/// (1-r) d0 + r d1 <-> r.
Elem iso_delta2_to_interval(const Elem& p);
Elem iso_interval_to_delta2(const Elem& r);
AffineMap iso_delta2_interval_map(bool forward);

/// The nonconstant map from the extended line onto the min-structured pair:
/// finite values to 1, infinity to 0.
Elem rinf_j(const Elem& x);
AffineMap rinf_j_map();

}  // namespace girylab
