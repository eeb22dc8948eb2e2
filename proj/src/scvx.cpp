#include "girylab/scvx.hpp"

#include <algorithm>
#include <bit>
#include <optional>
#include <sstream>

namespace girylab {

bool elem_less(const Elem& a, const Elem& b) {
  if (a.index() != b.index()) return a.index() < b.index();
  switch (a.index()) {
    case 0: return std::get<0>(a) < std::get<0>(b);
    case 1: return std::get<1>(a) < std::get<1>(b);
    case 2: return false;  // a single infinity
    case 3: return std::get<3>(a) < std::get<3>(b);
    case 4: return static_cast<int>(std::get<4>(a)) < static_cast<int>(std::get<4>(b));
  }
  return false;
}

std::string to_string(const Elem& e) {
  struct Printer {
    std::string operator()(std::uint64_t n) const { return std::to_string(n); }
    std::string operator()(const Rat& r) const { return r.str(); }
    std::string operator()(Infinity) const { return "inf"; }
    std::string operator()(const Dist& d) const {
      std::ostringstream os;
      os << "{";
      bool first = true;
      for (const auto& [i, w] : d.prefix()) {
        os << (first ? "" : ", ") << "(" << i << ", " << w.str() << ")";
        first = false;
      }
      if (d.tail()) {
        os << (first ? "" : ", ") << "geometric(start=" << d.tail()->start
           << ", ratio=" << d.tail()->ratio.str() << ")";
      }
      os << "}";
      return os.str();
    }
    std::string operator()(CoeqPoint p) const {
      switch (p) {
        case CoeqPoint::zero: return "_0";
        case CoeqPoint::mid: return "_u";
        case CoeqPoint::one: return "_1";
      }
      return "_?";
    }
  };
  return std::visit(Printer{}, e);
}

// --- SeqMap ----------------------------------------------------------------

SeqMap SeqMap::from_elems(std::vector<Elem> front) {
  SeqMap m;
  for (std::size_t i = 0; i < front.size(); ++i) m.table_.emplace(i, std::move(front[i]));
  return m;
}

SeqMap SeqMap::from_table(std::map<std::uint64_t, Elem> table) {
  SeqMap m;
  m.table_ = std::move(table);
  return m;
}

SeqMap SeqMap::identity() {
  SeqMap m;
  m.rule_ = IdentityRule{};
  return m;
}

SeqMap SeqMap::dirac() {
  SeqMap m;
  m.rule_ = DiracRule{};
  return m;
}

SeqMap SeqMap::constant(Elem value) {
  SeqMap m;
  m.rule_ = ConstantRule{std::move(value)};
  return m;
}

SeqMap SeqMap::geometric_values(const Rat& coeff, const Rat& growth, std::uint64_t from) {
  SeqMap m;
  m.rule_ = GeometricRule{coeff, growth, from};
  return m;
}

SeqMap SeqMap::with_entry(std::uint64_t i, Elem value) const {
  SeqMap m = *this;
  m.table_[i] = std::move(value);
  return m;
}

bool SeqMap::defined_at(std::uint64_t i) const {
  return table_.count(i) > 0 || !std::holds_alternative<std::monostate>(rule_);
}

namespace {

Rat geometric_value_at(const SeqMap::GeometricRule& g, std::uint64_t i) {
  if (i >= g.from) return g.coeff * Rat::pow(g.growth, i - g.from);
  if (g.growth.is_zero())
    raise(Errc::division_by_zero, "geometric rule with zero growth below its base index");
  return g.coeff / Rat::pow(g.growth, g.from - i);
}

}  // namespace

Elem SeqMap::at(std::uint64_t i) const {
  if (const auto it = table_.find(i); it != table_.end()) return it->second;
  struct Eval {
    std::uint64_t i;
    Elem operator()(std::monostate) const {
      raise(Errc::partial_sequence, "sequence undefined at index " + std::to_string(i));
    }
    Elem operator()(const IdentityRule&) const { return Elem(i); }
    Elem operator()(const DiracRule&) const { return Elem(Dist::dirac(i)); }
    Elem operator()(const ConstantRule& c) const { return c.value; }
    Elem operator()(const GeometricRule& g) const { return Elem(geometric_value_at(g, i)); }
  };
  return std::visit(Eval{i}, rule_);
}

// --- structure maps ----------------------------------------------------------

namespace {

/// The carrier facts a structure closure needs; Space closures capture a copy.
struct CarrierView {
  std::string name;
  std::function<bool(const Elem&)> contains;
};

void require_carrier(const CarrierView& cv, const Elem& e) {
  if (!cv.contains(e))
    raise(Errc::out_of_carrier, to_string(e) + " is not a point of " + cv.name);
}

std::uint64_t nat_of(const CarrierView& cv, const Elem& e) {
  require_carrier(cv, e);
  return std::get<std::uint64_t>(e);
}

/// min / max structure over natural-number carriers.
Elem order_structure(const CarrierView& cv, const Dist& p, const SeqMap& a, bool take_max) {
  std::optional<std::uint64_t> best;
  const auto feed = [&](std::uint64_t v) {
    if (!best) best = v;
    else best = take_max ? std::max(*best, v) : std::min(*best, v);
  };
  for (const auto& [i, w] : p.prefix()) feed(nat_of(cv, a.at(i)));
  if (p.tail()) {
    const std::uint64_t start = p.tail()->start;
    // Finitely many table entries may override the rule inside the tail.
    for (const auto& [i, e] : a.table()) {
      if (i >= start) feed(nat_of(cv, e));
    }
    if (std::holds_alternative<std::monostate>(a.rule())) {
      raise(Errc::partial_sequence, "sequence undefined on the infinite tail");
    } else if (std::holds_alternative<SeqMap::IdentityRule>(a.rule())) {
      if (take_max) raise(Errc::out_of_carrier, "identity sequence is unbounded on the tail");
      // Values increase along the tail: the least non-overridden index wins.
      std::uint64_t i = start;
      while (a.table().count(i) > 0) ++i;
      feed(nat_of(cv, Elem(i)));
    } else if (const auto* c = std::get_if<SeqMap::ConstantRule>(&a.rule())) {
      feed(nat_of(cv, c->value));
    } else if (std::holds_alternative<SeqMap::DiracRule>(a.rule())) {
      require_carrier(cv, Elem(Dist::dirac(start)));
    } else if (const auto* g = std::get_if<SeqMap::GeometricRule>(&a.rule())) {
      require_carrier(cv, Elem(geometric_value_at(*g, start)));
    }
  }
  return Elem(*best);
}

Elem simplex_structure(const CarrierView& cv, const Dist& p, const SeqMap& a) {
  if (!p.finite_support())
    raise(Errc::tail_unsupported, "simplex affine sum over a tail-backed measure");
  std::vector<DistOverDist::Entry> outer;
  outer.reserve(p.prefix().size());
  for (const auto& [i, w] : p.prefix()) {
    Elem e = a.at(i);
    require_carrier(cv, e);
    outer.emplace_back(std::get<Dist>(e), w);
  }
  return Elem(join(DistOverDist::from_pairs(std::move(outer))));
}

Elem interval_structure(const CarrierView& cv, const Dist& p, const SeqMap& a) {
  if (!p.finite_support())
    raise(Errc::tail_unsupported, "interval affine sum over a tail-backed measure");
  Rat acc(0);
  for (const auto& [i, w] : p.prefix()) {
    Elem e = a.at(i);
    require_carrier(cv, e);
    acc += w * std::get<Rat>(e);
  }
  return Elem(acc);
}

/// Extended-line structure. A countable affine sum is infinity when a
/// positively weighted term is infinity or the partial sums fail to
/// converge. Tail-backed measures need a rule-backed sequence so that
/// convergence is decidable: geometric-against-geometric reduces to a ratio
/// test with an exact closed form on the convergent side.
Elem rinf_structure(const CarrierView& cv, const Dist& p, const SeqMap& a) {
  Rat acc(0);
  bool infinite = false;
  const auto feed = [&](const Rat& weight, const Elem& e) {
    require_carrier(cv, e);
    if (std::holds_alternative<Infinity>(e)) infinite = true;
    else acc += weight * std::get<Rat>(e);
  };
  for (const auto& [i, w] : p.prefix()) feed(w, a.at(i));
  if (p.tail()) {
    const GeometricTail& t = *p.tail();
    // Table overrides inside the tail replace the rule value pointwise; the
    // rule contribution for those indices is backed out below.
    for (const auto& [i, e] : a.table()) {
      if (i < t.start) continue;
      feed(t.weight_at(i), e);
      if (const auto* g = std::get_if<SeqMap::GeometricRule>(&a.rule())) {
        acc -= t.weight_at(i) * geometric_value_at(*g, i);
      } else if (const auto* c = std::get_if<SeqMap::ConstantRule>(&a.rule())) {
        if (!std::holds_alternative<Infinity>(c->value))
          acc -= t.weight_at(i) * std::get<Rat>(c->value);
      }
    }
    if (std::holds_alternative<std::monostate>(a.rule())) {
      raise(Errc::divergence_undecidable, "tail-backed sum needs a rule-backed sequence");
    } else if (std::holds_alternative<SeqMap::IdentityRule>(a.rule()) ||
               std::holds_alternative<SeqMap::DiracRule>(a.rule())) {
      raise(Errc::out_of_carrier, "sequence values are not points of the line");
    } else if (const auto* c = std::get_if<SeqMap::ConstantRule>(&a.rule())) {
      if (std::holds_alternative<Infinity>(c->value)) {
        infinite = true;
      } else {
        require_carrier(cv, c->value);
        acc += t.mass * std::get<Rat>(c->value);
      }
    } else if (const auto* g = std::get_if<SeqMap::GeometricRule>(&a.rule())) {
      if (!g->coeff.is_zero()) {
        const Rat step = t.ratio * g->growth;
        const Rat abs_step = step.is_negative() ? -step : step;
        if (abs_step >= Rat(1)) {
          infinite = true;  // terms do not vanish: the partial sums diverge
        } else {
          const Rat first = t.mass * (Rat(1) - t.ratio) * geometric_value_at(*g, t.start);
          acc += first / (Rat(1) - step);
        }
      }
    }
  }
  if (infinite) return Elem(Infinity{});
  return Elem(acc);
}

Elem coequalizer_structure(const CarrierView& cv, const Dist& p, const SeqMap& a) {
  if (!p.finite_support())
    raise(Errc::tail_unsupported, "coequalizer affine sum over a tail-backed measure");
  std::optional<CoeqPoint> single;
  bool mixed = false;
  for (const auto& [i, w] : p.prefix()) {
    Elem e = a.at(i);
    require_carrier(cv, e);
    const CoeqPoint v = std::get<CoeqPoint>(e);
    if (!single) single = v;
    else if (*single != v) mixed = true;
  }
  return Elem(mixed ? CoeqPoint::mid : *single);
}

std::optional<std::uint64_t> parse_param(const std::string& name, const std::string& prefix) {
  if (name.size() <= prefix.size() + 2 || name.compare(0, prefix.size(), prefix) != 0 ||
      name[prefix.size()] != '(' || name.back() != ')')
    return std::nullopt;
  std::uint64_t k = 0;
  for (std::size_t i = prefix.size() + 1; i + 1 < name.size(); ++i) {
    if (name[i] < '0' || name[i] > '9') return std::nullopt;
    k = k * 10 + (name[i] - '0');
  }
  return k;
}

Space make_order_space(std::string name, std::uint64_t bound, bool take_max) {
  Space sp;
  sp.name = std::move(name);
  sp.type_tag = SpaceType::discrete;
  sp.kind = take_max ? StructureKind::max_order : StructureKind::min_order;
  const bool unbounded = bound == 0;
  sp.contains = [bound, unbounded](const Elem& e) {
    const auto* n = std::get_if<std::uint64_t>(&e);
    return n != nullptr && (unbounded || *n < bound);
  };
  const std::uint64_t sample_count = unbounded ? 5 : std::min<std::uint64_t>(bound, 5);
  for (std::uint64_t i = 0; i < sample_count; ++i) sp.samples.emplace_back(i);
  if (unbounded) sp.samples.emplace_back(std::uint64_t{7});
  const CarrierView cv{sp.name, sp.contains};
  sp.structure = [cv, take_max](const Dist& p, const SeqMap& a) {
    return order_structure(cv, p, a, take_max);
  };
  return sp;
}

}  // namespace

Space builtin_space(const std::string& name) {
  if (name == "N_min") return make_order_space(name, 0, false);
  if (name == "two_min") return make_order_space(name, 2, false);
  if (name == "two_max") return make_order_space(name, 2, true);
  if (auto k = parse_param(name, "n_min")) {
    if (*k == 0) raise(Errc::unknown_space, name);
    return make_order_space(name, *k, false);
  }
  Space sp;
  if (name == "delta_N" || parse_param(name, "delta_n")) {
    const auto k = parse_param(name, "delta_n");
    if (k && *k == 0) raise(Errc::unknown_space, name);
    sp.name = name;
    sp.type_tag = SpaceType::geometric;
    sp.kind = StructureKind::simplex;
    const std::uint64_t bound = k ? *k : 0;
    sp.contains = [bound](const Elem& e) {
      const auto* d = std::get_if<Dist>(&e);
      if (d == nullptr) return false;
      if (bound == 0) return true;
      if (!d->finite_support()) return false;
      return d->prefix().empty() || d->prefix().back().first < bound;
    };
    const std::uint64_t dirac_count = bound == 0 ? 3 : std::min<std::uint64_t>(bound, 3);
    for (std::uint64_t i = 0; i < dirac_count; ++i) sp.samples.emplace_back(Dist::dirac(i));
    if (bound == 0 || bound >= 2) {
      sp.samples.emplace_back(Dist::from_weights({{0, Rat(1, 2)}, {1, Rat(1, 2)}}));
      sp.samples.emplace_back(Dist::from_weights({{0, Rat(1, 4)}, {1, Rat(3, 4)}}));
    }
    if (bound == 0) {
      sp.samples.emplace_back(Dist::from_weights({{0, Rat(1, 3)}, {2, Rat(2, 3)}}));
      sp.samples.emplace_back(Dist::from_weights({{1, Rat(1, 4)}, {3, Rat(3, 4)}}));
    }
    const CarrierView cv{sp.name, sp.contains};
    sp.structure = [cv](const Dist& p, const SeqMap& a) { return simplex_structure(cv, p, a); };
  } else if (name == "unit_interval") {
    sp.name = name;
    sp.type_tag = SpaceType::geometric;
    sp.kind = StructureKind::interval;
    sp.contains = [](const Elem& e) {
      const auto* r = std::get_if<Rat>(&e);
      return r != nullptr && !r->is_negative() && *r <= Rat(1);
    };
    for (const Rat& r : {Rat(0), Rat(1, 4), Rat(1, 3), Rat(1, 2), Rat(3, 4), Rat(1)})
      sp.samples.emplace_back(r);
    const CarrierView cv{sp.name, sp.contains};
    sp.structure = [cv](const Dist& p, const SeqMap& a) { return interval_structure(cv, p, a); };
  } else if (name == "r_inf") {
    sp.name = name;
    sp.type_tag = SpaceType::mixed;
    sp.kind = StructureKind::extended_line;
    sp.contains = [](const Elem& e) {
      return std::holds_alternative<Rat>(e) || std::holds_alternative<Infinity>(e);
    };
    sp.samples = {Elem(Rat(0)), Elem(Rat(1)), Elem(Infinity{}), Elem(Rat(-2)), Elem(Rat(5, 2))};
    const CarrierView cv{sp.name, sp.contains};
    sp.structure = [cv](const Dist& p, const SeqMap& a) { return rinf_structure(cv, p, a); };
  } else if (name == "coeq3") {
    sp.name = name;
    sp.type_tag = SpaceType::discrete;
    sp.kind = StructureKind::coequalizer;
    sp.contains = [](const Elem& e) { return std::holds_alternative<CoeqPoint>(e); };
    sp.samples = {Elem(CoeqPoint::zero), Elem(CoeqPoint::mid), Elem(CoeqPoint::one)};
    const CarrierView cv{sp.name, sp.contains};
    sp.structure = [cv](const Dist& p, const SeqMap& a) {
      return coequalizer_structure(cv, p, a);
    };
  } else {
    raise(Errc::unknown_space, name);
  }
  return sp;
}

Elem affine_sum(const Space& space, const Dist& p, const SeqMap& a) {
  for (const auto& [i, w] : p.prefix()) {
    if (!a.defined_at(i))
      raise(Errc::partial_sequence, "sequence undefined at support index " + std::to_string(i));
  }
  return space.structure(p, a);
}

CheckResult check_axiom1(const Space& space, const SeqMap& a, std::uint64_t j) {
  const Elem lhs = affine_sum(space, Dist::dirac(j), a);
  const Elem rhs = a.at(j);
  if (lhs == rhs) return {};
  return {false, space.name + ": sum against dirac(" + std::to_string(j) + ") gave " +
                     to_string(lhs) + ", expected " + to_string(rhs)};
}

CheckResult check_axiom2(const Space& space, const Dist& p, const DistFamily& q_family,
                         const SeqMap& a) {
  std::map<std::uint64_t, Elem> inner;
  for (const auto& [j, w] : p.prefix()) {
    auto qj = q_family(j);
    if (!qj) raise(Errc::partial_family, "family undefined at index " + std::to_string(j));
    inner.emplace(j, affine_sum(space, *qj, a));
  }
  const Elem lhs = affine_sum(space, p, SeqMap::from_table(std::move(inner)));
  const Elem rhs = affine_sum(space, convex_combine(p, q_family), a);
  if (lhs == rhs) return {};
  return {false, space.name + ": iterated sum " + to_string(lhs) + " != combined sum " +
                     to_string(rhs)};
}

AffineMap seq_to_affine(const SeqMap& a, const Space& target) {
  AffineMap m;
  m.name = "<seq into " + target.name + ">";
  m.source = builtin_space("delta_N");
  m.target = target;
  m.action = [a, target](const Elem& e) -> Elem {
    const auto* p = std::get_if<Dist>(&e);
    if (p == nullptr) raise(Errc::out_of_carrier, "expected a distribution");
    return affine_sum(target, *p, a);
  };
  return m;
}

SeqMap transform_compose(const DistFamily& q, const SeqMap& a, const Space& target,
                         std::uint64_t count) {
  std::map<std::uint64_t, Elem> values;
  for (std::uint64_t i = 0; i < count; ++i) {
    auto qi = q(i);
    if (!qi) raise(Errc::partial_family, "transform undefined at index " + std::to_string(i));
    values.emplace(i, affine_sum(target, *qi, a));
  }
  return SeqMap::from_table(std::move(values));
}

// --- affineness checking ------------------------------------------------------

namespace {

CheckResult check_affine_instance(const AffineMap& m, const Dist& p, const SeqMap& a) {
  const Elem lhs = m.action(affine_sum(m.source, p, a));
  std::map<std::uint64_t, Elem> mapped;
  for (const auto& [i, w] : p.prefix()) mapped.emplace(i, m.action(a.at(i)));
  const Elem rhs = affine_sum(m.target, p, SeqMap::from_table(std::move(mapped)));
  if (lhs == rhs) return {};
  std::ostringstream os;
  os << m.name << ": image of sum " << to_string(lhs) << " != sum of images " << to_string(rhs)
     << " at p = " << to_string(Elem(p));
  return {false, os.str()};
}

/// Divergent and absorbing instances over the extended line. The source sum
/// can realize infinity without any single term being infinite; on an order
/// structure the target side then combines the image of infinity with the
/// images of the terms.
CheckResult check_extended_instance(const AffineMap& m, const Dist& p, const SeqMap& a) {
  const Elem source_sum = affine_sum(m.source, p, a);
  const Elem lhs = m.action(source_sum);
  const bool take_max = m.target.kind == StructureKind::max_order;
  if (!take_max && m.target.kind != StructureKind::min_order) return {};  // outside the budget
  std::optional<std::uint64_t> best;
  const auto feed = [&](const Elem& e) {
    const auto* n = std::get_if<std::uint64_t>(&e);
    if (n == nullptr) raise(Errc::out_of_carrier, to_string(e));
    if (!best) best = *n;
    else best = take_max ? std::max(*best, *n) : std::min(*best, *n);
  };
  for (const auto& [i, w] : p.prefix()) feed(m.action(a.at(i)));
  if (p.tail()) {
    for (std::uint64_t k = 0; k < 4; ++k) feed(m.action(a.at(p.tail()->start + k)));
  }
  if (std::holds_alternative<Infinity>(source_sum)) feed(m.action(Elem(Infinity{})));
  if (lhs == Elem(*best)) return {};
  return {false, m.name + ": divergent instance maps to " + to_string(lhs) +
                     " but the combined images give " + to_string(Elem(*best))};
}

std::vector<std::pair<Dist, SeqMap>> extended_line_instances() {
  const Dist geo = Dist::with_geometric_tail({}, 0, Rat(1, 2));
  std::vector<std::pair<Dist, SeqMap>> out;
  out.emplace_back(geo, SeqMap::geometric_values(Rat(2), Rat(2)));  // diverges
  out.emplace_back(geo, SeqMap::geometric_values(Rat(1), Rat(3)));  // diverges
  out.emplace_back(geo, SeqMap::geometric_values(Rat(1), Rat(1)));  // converges to 1
  out.emplace_back(geo, SeqMap::constant(Elem(Rat(5, 2))));         // converges
  out.emplace_back(geo, SeqMap::constant(Elem(Infinity{})));        // absorbs
  return out;
}

}  // namespace

CheckResult is_affine(const AffineMap& m, const AffineBudget& budget) {
  if (m.source.samples.empty()) return {};
  const std::size_t choices = std::min(budget.samples_per_slot, m.source.samples.size());
  for (const Dist& p : grid_dists(budget.max_index, budget.max_den)) {
    const std::size_t slots = p.prefix().size();
    std::vector<std::size_t> pick(slots, 0);
    while (true) {
      std::map<std::uint64_t, Elem> table;
      for (std::size_t s = 0; s < slots; ++s)
        table.emplace(p.prefix()[s].first, m.source.samples[pick[s]]);
      if (auto r = check_affine_instance(m, p, SeqMap::from_table(std::move(table))); !r.pass)
        return r;
      std::size_t s = 0;
      for (; s < slots; ++s) {
        if (++pick[s] < choices) break;
        pick[s] = 0;
      }
      if (s == slots) break;
    }
  }
  std::mt19937_64 rng(budget.seed);
  for (int c = 0; c < budget.random_cases; ++c) {
    const Dist p = random_dist(rng, 7, 5);
    std::map<std::uint64_t, Elem> table;
    for (const auto& [i, w] : p.prefix())
      table.emplace(i, m.source.samples[rng() % m.source.samples.size()]);
    if (auto r = check_affine_instance(m, p, SeqMap::from_table(std::move(table))); !r.pass)
      return r;
  }
  if (m.source.kind == StructureKind::extended_line) {
    for (const auto& [p, a] : extended_line_instances()) {
      if (auto r = check_extended_instance(m, p, a); !r.pass) return r;
    }
  }
  return {};
}

bool monotone_oracle(std::span<const std::uint64_t> f) {
  for (std::size_t i = 1; i < f.size(); ++i) {
    if (f[i - 1] > f[i]) return false;
  }
  return true;
}

bool subset_min_preserving(std::span<const std::uint64_t> f) {
  const std::size_t n = f.size();
  if (n > 24) raise(Errc::bound_exceeded, "table of size " + std::to_string(n));
  for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n); ++mask) {
    const unsigned min_elem = std::countr_zero(mask);
    std::uint64_t image_min = f[min_elem];
    for (std::size_t i = min_elem + 1; i < n; ++i) {
      if (mask & (std::uint64_t(1) << i)) image_min = std::min(image_min, f[i]);
    }
    if (f[min_elem] != image_min) return false;
  }
  return true;
}

namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  detail::int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) acc = acc * (n - k + i) / i;
  return static_cast<std::uint64_t>(acc);
}

}  // namespace

NsReport affine_iff_monotone(std::uint64_t n, std::uint64_t bound) {
  if (n == 0 || n > bound)
    raise(Errc::bound_exceeded,
          "n = " + std::to_string(n) + " outside (0, " + std::to_string(bound) + "]");
  NsReport report;
  report.n = n;
  report.expected_monotone = binomial(2 * n - 1, n);
  std::vector<std::uint64_t> f(n, 0);
  while (true) {
    ++report.functions;
    const bool mono = monotone_oracle(f);
    const bool smp = subset_min_preserving(f);
    if (mono) ++report.monotone;
    if (smp) ++report.subset_min;
    if (mono != smp) {
      std::ostringstream os;
      os << "table (";
      for (std::size_t i = 0; i < n; ++i) os << (i ? "," : "") << f[i];
      os << ") monotone=" << mono << " subset_min=" << smp;
      report.discrepancies.push_back(os.str());
    }
    std::size_t s = 0;
    for (; s < n; ++s) {
      if (++f[s] < n) break;
      f[s] = 0;
    }
    if (s == n) break;
  }
  return report;
}

std::vector<std::vector<std::uint64_t>> all_monotone_tables(std::uint64_t n) {
  std::vector<std::vector<std::uint64_t>> out;
  std::vector<std::uint64_t> current;
  const std::function<void(std::uint64_t)> go = [&](std::uint64_t low) {
    if (current.size() == n) {
      out.push_back(current);
      return;
    }
    for (std::uint64_t v = low; v < n; ++v) {
      current.push_back(v);
      go(v);
      current.pop_back();
    }
  };
  go(0);
  return out;
}

std::vector<std::vector<std::uint64_t>> all_permutation_tables(std::uint64_t n) {
  std::vector<std::uint64_t> perm(n);
  for (std::uint64_t i = 0; i < n; ++i) perm[i] = i;
  std::vector<std::vector<std::uint64_t>> out;
  do {
    out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

ClassifyReport classify_probe(const Space& space, const ClassifyBudget& budget) {
  ClassifyReport report;
  const std::size_t nsamples = std::min(budget.sample_limit, space.samples.size());
  if (nsamples == 0) {
    report.interior_constant = true;
    report.cancellative = true;
    report.suggested = SpaceType::discrete;
    report.consistent = report.suggested == space.type_tag;
    return report;
  }

  // Interior constancy: for each fixed sequence over a fixed support window,
  // strictly positive weightings must all give the same value.
  report.interior_constant = true;
  for (int window = 2; window <= budget.max_window && report.interior_constant; ++window) {
    const auto weightings = grid_weightings(window, budget.max_den);
    std::vector<std::size_t> pick(window, 0);
    while (report.interior_constant) {
      std::vector<Elem> seq;
      for (int s = 0; s < window; ++s) seq.push_back(space.samples[pick[s]]);
      const SeqMap a = SeqMap::from_elems(seq);
      std::optional<Elem> first;
      for (const auto& ws : weightings) {
        std::vector<Dist::Entry> entries;
        for (int s = 0; s < window; ++s) entries.emplace_back(s, ws[s]);
        const Elem v = affine_sum(space, Dist::from_weights(std::move(entries)), a);
        if (!first) {
          first = v;
        } else if (!(*first == v)) {
          report.interior_constant = false;
          report.detail = "non-constant interior sum over a window of " + std::to_string(window);
          break;
        }
      }
      std::size_t s = 0;
      for (; s < std::size_t(window); ++s) {
        if (++pick[s] < nsamples) break;
        pick[s] = 0;
      }
      if (s == std::size_t(window)) break;
    }
  }

  // Cancellation: distinct first arguments must stay distinguishable after
  // mixing with any fixed second argument. Vector-space carriers cancel;
  // order structures and absorbing points do not.
  report.cancellative = true;
  const Dist half = Dist::from_weights({{0, Rat(1, 2)}, {1, Rat(1, 2)}});
  for (std::size_t x = 0; x < nsamples && report.cancellative; ++x) {
    for (std::size_t x2 = x + 1; x2 < nsamples && report.cancellative; ++x2) {
      for (std::size_t y = 0; y < nsamples; ++y) {
        const Elem left =
            affine_sum(space, half, SeqMap::from_elems({space.samples[x], space.samples[y]}));
        const Elem right =
            affine_sum(space, half, SeqMap::from_elems({space.samples[x2], space.samples[y]}));
        if (left == right) {
          report.cancellative = false;
          break;
        }
      }
    }
  }

  report.suggested = report.interior_constant
                         ? SpaceType::discrete
                         : (report.cancellative ? SpaceType::geometric : SpaceType::mixed);
  report.consistent = report.suggested == space.type_tag;
  return report;
}

DgReport dg_constancy_check(const AffineMap& m, const AffineBudget& budget) {
  DgReport report;
  const CheckResult affine = is_affine(m, budget);
  report.affine = affine.pass;
  report.constant = true;
  std::optional<Elem> first;
  for (const Elem& x : m.source.samples) {
    const Elem v = m.action(x);
    if (!first) {
      first = v;
    } else if (!(*first == v)) {
      report.constant = false;
      report.witness = m.name + " maps " + to_string(m.source.samples.front()) + " and " +
                       to_string(x) + " apart";
      break;
    }
  }
  report.consistent = !(report.affine && !report.constant);
  if (!report.affine) report.witness = affine.witness;
  return report;
}

Elem iso_delta2_to_interval(const Elem& p) {
  const auto* d = std::get_if<Dist>(&p);
  if (d == nullptr || !d->finite_support() ||
      (!d->prefix().empty() && d->prefix().back().first > 1))
    raise(Errc::out_of_carrier, "expected a distribution on {0, 1}");
  return Elem(d->weight_at(1));
}

Elem iso_interval_to_delta2(const Elem& r) {
  const auto* x = std::get_if<Rat>(&r);
  if (x == nullptr || x->is_negative() || *x > Rat(1))
    raise(Errc::out_of_carrier, "expected a rational in [0, 1]");
  return Elem(Dist::from_weights({{0, Rat(1) - *x}, {1, *x}}));
}

AffineMap iso_delta2_interval_map(bool forward) {
  AffineMap m;
  if (forward) {
    m.name = "delta_2 -> [0,1]";
    m.source = builtin_space("delta_n(2)");
    m.target = builtin_space("unit_interval");
    m.action = iso_delta2_to_interval;
  } else {
    m.name = "[0,1] -> delta_2";
    m.source = builtin_space("unit_interval");
    m.target = builtin_space("delta_n(2)");
    m.action = iso_interval_to_delta2;
  }
  return m;
}

Elem rinf_j(const Elem& x) {
  if (std::holds_alternative<Rat>(x)) return Elem(std::uint64_t{1});
  if (std::holds_alternative<Infinity>(x)) return Elem(std::uint64_t{0});
  raise(Errc::out_of_carrier, "expected a point of the extended line");
}

AffineMap rinf_j_map() {
  AffineMap m;
  m.name = "j: r_inf -> two_min";
  m.source = builtin_space("r_inf");
  m.target = builtin_space("two_min");
  m.action = rinf_j;
  return m;
}

}  // namespace girylab
