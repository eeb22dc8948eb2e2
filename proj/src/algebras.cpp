#include "girylab/algebras.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace girylab {

namespace {

struct ElemLess {
  bool operator()(const Elem& a, const Elem& b) const { return elem_less(a, b); }
};

std::string describe(const CarrierDist& p) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [e, w] : p.entries()) {
    os << (first ? "" : ", ") << "(" << to_string(e) << ", " << w.str() << ")";
    first = false;
  }
  os << "}";
  return os.str();
}

}  // namespace

CarrierDist CarrierDist::dirac(Elem point) {
  CarrierDist d;
  d.entries_.emplace_back(std::move(point), Rat(1));
  return d;
}

CarrierDist CarrierDist::from_pairs(std::vector<Entry> pairs) {
  std::map<Elem, Rat, ElemLess> acc;
  Rat mass(0);
  for (auto& [e, w] : pairs) {
    if (w.is_negative()) raise(Errc::negative_weight, "weight " + w.str());
    if (w.is_zero()) continue;
    mass += w;
    auto [it, fresh] = acc.emplace(std::move(e), w);
    if (!fresh) it->second += w;
  }
  if (mass != Rat(1)) raise(Errc::mass_not_one, "total mass " + mass.str());
  CarrierDist d;
  d.entries_.assign(acc.begin(), acc.end());
  return d;
}

Rat CarrierDist::weight_of(const Elem& point) const {
  for (const auto& [e, w] : entries_) {
    if (e == point) return w;
  }
  return Rat(0);
}

TwoLevelDist TwoLevelDist::from_pairs(std::vector<Entry> pairs) {
  for (const auto& [d, w] : pairs) {
    if (w.is_negative()) raise(Errc::negative_weight, "outer weight " + w.str());
  }
  std::erase_if(pairs, [](const Entry& e) { return e.second.is_zero(); });
  Rat mass(0);
  for (const auto& [d, w] : pairs) mass += w;
  if (mass != Rat(1)) raise(Errc::mass_not_one, "outer mass " + mass.str());
  TwoLevelDist q;
  q.outer_ = std::move(pairs);
  return q;
}

Dist carrier_to_dist(const CarrierDist& p) {
  std::vector<Dist::Entry> entries;
  entries.reserve(p.entries().size());
  for (const auto& [e, w] : p.entries()) {
    const auto* n = std::get_if<std::uint64_t>(&e);
    if (n == nullptr) raise(Errc::out_of_carrier, to_string(e) + " is not a natural number");
    entries.emplace_back(*n, w);
  }
  return Dist::from_weights(std::move(entries));
}

CarrierDist dist_to_carrier(const Dist& p) {
  if (!p.finite_support())
    raise(Errc::tail_unsupported, "carrier measures are finitely supported");
  std::vector<CarrierDist::Entry> entries;
  entries.reserve(p.prefix().size());
  for (const auto& [i, w] : p.prefix()) entries.emplace_back(Elem(i), w);
  return CarrierDist::from_pairs(std::move(entries));
}

std::uint64_t barycenter_nat_min(const Dist& p, std::uint64_t cap) { return min_support(p, cap); }

std::uint64_t barycenter_finite_min(std::uint64_t k, const CarrierDist& p) {
  std::uint64_t best = k;
  for (const auto& [e, w] : p.entries()) {
    const auto* n = std::get_if<std::uint64_t>(&e);
    if (n == nullptr || *n >= k)
      raise(Errc::out_of_carrier, to_string(e) + " outside {0.." + std::to_string(k - 1) + "}");
    best = std::min(best, *n);
  }
  return best;
}

std::uint64_t barycenter_two_min(const CarrierDist& p) { return barycenter_finite_min(2, p); }

std::uint64_t barycenter_two_max(const CarrierDist& p) {
  std::uint64_t best = 0;
  for (const auto& [e, w] : p.entries()) {
    const auto* n = std::get_if<std::uint64_t>(&e);
    if (n == nullptr || *n >= 2) raise(Errc::out_of_carrier, to_string(e) + " outside {0, 1}");
    best = std::max(best, *n);
  }
  return best;
}

Rat barycenter_interval(const CarrierDist& p) {
  Rat acc(0);
  for (const auto& [e, w] : p.entries()) {
    const auto* x = std::get_if<Rat>(&e);
    if (x == nullptr || x->is_negative() || *x > Rat(1))
      raise(Errc::out_of_carrier, to_string(e) + " outside [0, 1]");
    acc += w * *x;
  }
  return acc;
}

Elem barycenter_rinf(const CarrierDist& p) {
  Rat acc(0);
  for (const auto& [e, w] : p.entries()) {
    if (std::holds_alternative<Infinity>(e)) return Elem(Infinity{});
    const auto* x = std::get_if<Rat>(&e);
    if (x == nullptr) raise(Errc::out_of_carrier, to_string(e) + " is not a point of the line");
    acc += w * *x;
  }
  return Elem(acc);
}

CoeqPoint barycenter_coeq3(const CarrierDist& p) {
  std::optional<CoeqPoint> single;
  for (const auto& [e, w] : p.entries()) {
    const auto* c = std::get_if<CoeqPoint>(&e);
    if (c == nullptr) raise(Errc::out_of_carrier, to_string(e) + " is not a coequalizer point");
    if (!single) single = *c;
    else if (*single != *c) return CoeqPoint::mid;
  }
  return *single;
}

Dist barycenter_free(const DistOverDist& q) { return join(q); }

namespace {

DistOverDist carrier_to_dist_over_dist(const CarrierDist& p) {
  std::vector<DistOverDist::Entry> outer;
  outer.reserve(p.entries().size());
  for (const auto& [e, w] : p.entries()) {
    const auto* d = std::get_if<Dist>(&e);
    if (d == nullptr) raise(Errc::out_of_carrier, to_string(e) + " is not a distribution");
    outer.emplace_back(*d, w);
  }
  return DistOverDist::from_pairs(std::move(outer));
}

}  // namespace

Algebra builtin_algebra(const std::string& name) {
  Algebra alg;
  alg.name = name;
  if (name == "nat_min") {
    alg.space = builtin_space("N_min");
    alg.action = [](const CarrierDist& p) { return Elem(min_support(carrier_to_dist(p))); };
  } else if (name == "two_min") {
    alg.space = builtin_space("two_min");
    alg.action = [](const CarrierDist& p) { return Elem(barycenter_two_min(p)); };
  } else if (name == "two_max") {
    alg.space = builtin_space("two_max");
    alg.action = [](const CarrierDist& p) { return Elem(barycenter_two_max(p)); };
  } else if (name.rfind("n_min(", 0) == 0) {
    alg.space = builtin_space(name);  // validates the parameter
    const std::uint64_t k = std::stoull(name.substr(6));
    alg.action = [k](const CarrierDist& p) { return Elem(barycenter_finite_min(k, p)); };
  } else if (name == "unit_interval") {
    alg.space = builtin_space("unit_interval");
    alg.action = [](const CarrierDist& p) { return Elem(barycenter_interval(p)); };
  } else if (name == "r_inf") {
    alg.space = builtin_space("r_inf");
    alg.action = [](const CarrierDist& p) { return barycenter_rinf(p); };
  } else if (name == "coeq3") {
    alg.space = builtin_space("coeq3");
    alg.action = [](const CarrierDist& p) { return Elem(barycenter_coeq3(p)); };
  } else if (name == "free") {
    alg.space = builtin_space("delta_N");
    alg.action = [](const CarrierDist& p) {
      return Elem(barycenter_free(carrier_to_dist_over_dist(p)));
    };
  } else {
    raise(Errc::unknown_algebra, name);
  }
  return alg;
}

const std::vector<std::string>& builtin_algebra_names() {
  static const std::vector<std::string> names = {
      "nat_min", "n_min(4)", "two_min", "two_max", "unit_interval", "r_inf", "coeq3", "free"};
  return names;
}

LawOutcome check_unit_law(const Algebra& alg, std::span<const Elem> samples) {
  for (const Elem& a : samples) {
    const Elem got = alg.action(CarrierDist::dirac(a));
    if (!(got == a)) {
      return {false, alg.name + ": action on dirac(" + to_string(a) + ") gave " + to_string(got)};
    }
  }
  return {};
}

LawOutcome check_assoc_law(const Algebra& alg, const TwoLevelDist& q) {
  // Left route: push the outer level through the action, then act.
  std::vector<CarrierDist::Entry> pushed;
  pushed.reserve(q.outer().size());
  for (const auto& [inner, w] : q.outer()) pushed.emplace_back(alg.action(inner), w);
  const Elem lhs = alg.action(CarrierDist::from_pairs(std::move(pushed)));

  // Right route: flatten the two levels, then act.
  std::map<Elem, Rat, ElemLess> flat;
  for (const auto& [inner, w] : q.outer()) {
    for (const auto& [e, v] : inner.entries()) {
      auto [it, fresh] = flat.emplace(e, w * v);
      if (!fresh) it->second += w * v;
    }
  }
  const Elem rhs =
      alg.action(CarrierDist::from_pairs({flat.begin(), flat.end()}));

  if (lhs == rhs) return {};
  std::ostringstream os;
  os << alg.name << ": action after G(action) gave " << to_string(lhs)
     << " but action after flattening gave " << to_string(rhs) << " on ";
  bool first = true;
  os << "{";
  for (const auto& [inner, w] : q.outer()) {
    os << (first ? "" : ", ") << "(" << describe(inner) << ", " << w.str() << ")";
    first = false;
  }
  os << "}";
  return {false, os.str()};
}

std::uint64_t nat_min_of_join(const DistOverDist& q) { return min_support(join(q)); }

std::uint64_t nat_min_of_supports(const DistOverDist& q) {
  // Mass carried onto each support minimum; the least index with positive
  // mass is the answer. Never touches join.
  std::map<std::uint64_t, Rat> mass;
  for (const auto& [inner, w] : q.outer()) {
    auto [it, fresh] = mass.emplace(min_support(inner), w);
    if (!fresh) it->second += w;
  }
  for (const auto& [i, m] : mass) {
    if (m.is_positive()) return i;
  }
  raise(Errc::mass_not_one, "empty two-level distribution");
}

Factorization factor_through_barycenter(const std::vector<std::uint64_t>& dirac_table,
                                        std::int64_t grid_den) {
  if (!subset_min_preserving(dirac_table))
    raise(Errc::not_affine, "dirac table fails the subset-min oracle");
  Factorization f;
  f.phi = dirac_table;
  if (dirac_table.empty()) return f;
  for (const Dist& p : grid_dists(dirac_table.size() - 1, grid_den)) {
    // The map's value: the affine sum of the table against p in the
    // min-structured naturals, i.e. the least table value over the support.
    std::uint64_t via_map = dirac_table[p.prefix().front().first];
    for (const auto& [i, w] : p.prefix()) via_map = std::min(via_map, dirac_table[i]);
    const std::uint64_t via_factor = dirac_table[min_support(p)];
    if (via_map != via_factor)
      raise(Errc::not_affine, "factorization mismatch at p = " + to_string(Elem(p)));
    ++f.verified_cases;
  }
  return f;
}

LawOutcome check_phi_commutes(const std::vector<std::uint64_t>& phi, const Dist& p) {
  const NatMap f = NatMap::from_table(phi);
  const std::uint64_t via_phi_first = [&] {
    const auto v = f(min_support(p));
    if (!v) raise(Errc::partial_map, "table does not cover the support minimum");
    return *v;
  }();
  const std::uint64_t via_push_first = min_support(pushforward(f, p));
  if (via_phi_first == via_push_first) return {};
  std::ostringstream os;
  os << "phi(min_support) = " << via_phi_first << " but min_support(pushforward) = "
     << via_push_first << " at p = " << to_string(Elem(p));
  return {false, os.str()};
}

LawOutcome check_permutation_min(const std::vector<std::uint64_t>& perm, const Dist& p) {
  std::vector<bool> hit(perm.size(), false);
  for (const std::uint64_t v : perm) {
    if (v >= perm.size() || hit[v]) raise(Errc::not_permutation, "table is not a bijection");
    hit[v] = true;
  }
  const std::uint64_t lhs = min_support(pushforward(NatMap::from_table(perm), p));
  std::optional<std::uint64_t> rhs;
  for (const auto& [i, w] : p.prefix()) {
    if (i >= perm.size()) raise(Errc::not_permutation, "support escapes the permuted range");
    rhs = rhs ? std::min(*rhs, perm[i]) : perm[i];
  }
  if (rhs && lhs == *rhs) return {};
  std::ostringstream os;
  os << "min_support(pushforward) = " << lhs << " but min of phi-images = "
     << (rhs ? std::to_string(*rhs) : "none") << " at p = " << to_string(Elem(p));
  return {false, os.str()};
}

}  // namespace girylab
