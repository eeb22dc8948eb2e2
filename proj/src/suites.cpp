#include "girylab/suites.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <sstream>

namespace girylab {

namespace {

class Timer {
public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

private:
  std::chrono::steady_clock::time_point start_;
};

void fail(LawReport& r, const std::string& law, const std::string& witness) {
  r.failures.push_back(Json{{"law", law}, {"witness", witness}});
}

void fail(LawReport& r, const std::string& law, const std::string& algebra,
          const std::string& witness) {
  r.failures.push_back(Json{{"law", law}, {"algebra", algebra}, {"witness", witness}});
}

void expect(LawReport& r, bool ok, const std::string& law, const std::string& witness) {
  ++r.cases;
  if (!ok) fail(r, law, witness);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
  // splitmix64 step so each suite draws an independent stream
  std::uint64_t z = seed + tag * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : s) h = (h ^ static_cast<unsigned char>(c)) * 0x100000001b3ULL;
  return h;
}

std::vector<Dist> strided(const std::vector<Dist>& pool, std::size_t target) {
  if (pool.size() <= target) return pool;
  std::vector<Dist> out;
  const std::size_t step = pool.size() / target;
  for (std::size_t i = 0; i < pool.size() && out.size() < target; i += step) out.push_back(pool[i]);
  return out;
}

/// Combinations with repetition of {0..pool-1}, size k, fed to fn.
void for_each_combo(std::size_t pool, std::size_t k,
                    const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> combo;
  const std::function<void(std::size_t)> go = [&](std::size_t low) {
    if (combo.size() == k) {
      fn(combo);
      return;
    }
    for (std::size_t i = low; i < pool; ++i) {
      combo.push_back(i);
      go(i);
      combo.pop_back();
    }
  };
  go(0);
}

/// The exhaustive grid of two-level measures over a pool: combinations with
/// repetition of pool entries up to max_size, crossed with every grid
/// weighting of matching size.
template <typename Fn>
void for_each_grid_two_level(std::size_t pool_size, std::size_t max_size, std::int64_t den,
                             Fn&& fn) {
  for (std::size_t k = 1; k <= max_size; ++k) {
    const auto weightings = grid_weightings(k, den);
    for_each_combo(pool_size, k, [&](const std::vector<std::size_t>& combo) {
      for (const auto& ws : weightings) fn(combo, ws);
    });
  }
}

std::vector<std::vector<Elem>> sample_tuples(const Space& sp, std::size_t width) {
  const std::size_t n = sp.samples.size();
  std::vector<std::vector<Elem>> out;
  if (n == 0) return out;
  for (std::size_t shift = 0; shift < std::min<std::size_t>(2, n); ++shift) {
    std::vector<Elem> tuple;
    for (std::size_t i = 0; i < width; ++i) tuple.push_back(sp.samples[(i + shift) % n]);
    out.push_back(std::move(tuple));
  }
  std::vector<Elem> reversed;
  for (std::size_t i = 0; i < width; ++i) reversed.push_back(sp.samples[(n - 1 - i % n) % n]);
  out.push_back(std::move(reversed));
  return out;
}

const std::vector<std::string>& scvx_space_names() {
  static const std::vector<std::string> names = {
      "N_min",   "n_min(4)",   "two_min",       "two_max", "delta_n(2)",
      "delta_n(3)", "delta_N", "unit_interval", "r_inf",   "coeq3"};
  return names;
}

LawReport merge_reports(std::string name, std::vector<LawReport> parts) {
  LawReport merged;
  merged.suite = std::move(name);
  for (auto& part : parts) {
    merged.cases += part.cases;
    merged.wall_ms += part.wall_ms;
    for (auto& f : part.failures) merged.failures.push_back(std::move(f));
  }
  return merged;
}

}  // namespace

void SuiteConfig::validate() const {
  if (grid_den < 1) raise(Errc::bad_config, "grid denominator bound must be positive");
  if (random_cases < 0) raise(Errc::bad_config, "random case count must be nonnegative");
  if (enumeration_cap == 0) raise(Errc::bad_config, "enumeration cap must be positive");
  if (ns_bound == 0 || ns_bound > 8)
    raise(Errc::bad_config, "exhaustive endofunction bound must lie in 1..8");
}

Json report_to_json(const LawReport& r) {
  return Json{{"suite", r.suite},
              {"cases", r.cases},
              {"failures", r.failures},
              {"wall_ms", r.wall_ms}};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "algebra-laws", "amplitude",  "monad-laws", "ns-equivalence",
      "permutation-min", "phi-commutes", "refinement", "scvx-axioms"};
  return names;
}

// --- monad laws ---------------------------------------------------------------

LawReport run_monad_laws(const SuiteConfig& cfg) {
  Timer timer;
  LawReport r;
  r.suite = "monad-laws";
  const auto grid = grid_dists(3, cfg.grid_den);
  std::mt19937_64 rng(mix_seed(cfg.seed, 1));

  std::vector<Dist> dists = grid;
  for (int i = 0; i < cfg.random_cases; ++i) dists.push_back(random_dist(rng));

  for (const Dist& p : dists) {
    expect(r, join(DistOverDist::from_pairs({{p, Rat(1)}})) == p, "join-unit-left",
           to_string(Elem(p)));
    expect(r, convex_combine(p, dirac_family()) == p, "join-unit-right", to_string(Elem(p)));
    expect(r, ev(NatSet::all(), p) == Rat(1), "normalization", to_string(Elem(p)));
    // additivity over a disjoint split of the support
    std::vector<std::uint64_t> evens, odds;
    for (std::size_t k = 0; k < p.prefix().size(); ++k)
      (k % 2 ? odds : evens).push_back(p.prefix()[k].first);
    std::vector<std::uint64_t> both = evens;
    both.insert(both.end(), odds.begin(), odds.end());
    expect(r,
           ev(NatSet::of(both), p) == ev(NatSet::of(evens), p) + ev(NatSet::of(odds), p),
           "ev-additivity", to_string(Elem(p)));
  }

  // pushforward functoriality on sampled maps
  const auto random_table = [&rng] {
    std::vector<std::uint64_t> t(10);
    for (auto& v : t) v = rng() % 10;
    return t;
  };
  for (int pair = 0; pair < 40; ++pair) {
    const auto ft = random_table();
    const auto gt = random_table();
    const NatMap f = NatMap::from_table(ft);
    const NatMap g = NatMap::from_table(gt);
    const NatMap gf = NatMap::total([&ft, &gt](std::uint64_t i) { return gt[ft[i % 10] % 10]; });
    const Dist* const candidates[2] = {&grid[pair % grid.size()],
                                       &dists[(pair * 7 + 3) % dists.size()]};
    for (const Dist* p : candidates) {
      expect(r, pushforward(gf, *p) == pushforward(g, pushforward(f, *p)),
             "pushforward-composition", to_string(Elem(*p)));
      expect(r, pushforward(NatMap::identity(), *p) == *p, "pushforward-identity",
             to_string(Elem(*p)));
    }
  }

  // convex_combine agrees with join of the assembled two-level measure
  for (std::size_t n = 0; n < dists.size(); ++n) {
    const Dist& p = grid[n % grid.size()];
    std::vector<Dist> family_dists;
    std::vector<DistOverDist::Entry> assembled;
    for (const auto& [j, w] : p.prefix()) {
      while (family_dists.size() <= j) family_dists.push_back(dists[(n + family_dists.size()) % dists.size()]);
      assembled.emplace_back(family_dists[j], w);
    }
    expect(r,
           convex_combine(p, family_from(family_dists)) ==
               join(DistOverDist::from_pairs(assembled)),
           "convex-join-agreement", to_string(Elem(p)));
  }

  // join associativity over a pinned three-level grid
  const std::vector<Dist> pool = strided(grid, 13);
  std::vector<DistOverDist> two_level;
  for_each_grid_two_level(pool.size(), 2, cfg.grid_den,
                          [&](const std::vector<std::size_t>& combo, const std::vector<Rat>& ws) {
                            std::vector<DistOverDist::Entry> outer;
                            for (std::size_t s = 0; s < combo.size(); ++s)
                              outer.emplace_back(pool[combo[s]], ws[s]);
                            two_level.push_back(DistOverDist::from_pairs(std::move(outer)));
                          });
  const auto check_assoc = [&r](const std::vector<std::pair<DistOverDist, Rat>>& three) {
    std::vector<DistOverDist::Entry> joined;       // G(join), then join
    std::vector<DistOverDist::Entry> flattened;    // multiplication, then join
    for (const auto& [t, w] : three) {
      joined.emplace_back(join(t), w);
      for (const auto& [d, v] : t.outer()) flattened.emplace_back(d, w * v);
    }
    expect(r,
           join(DistOverDist::from_pairs(joined)) == join(DistOverDist::from_pairs(flattened)),
           "join-associativity", std::to_string(three.size()) + " outer entries");
  };
  const std::vector<DistOverDist> tl_pool = [&] {
    std::vector<DistOverDist> out;
    const std::size_t step = std::max<std::size_t>(1, two_level.size() / 60);
    for (std::size_t i = 0; i < two_level.size(); i += step) out.push_back(two_level[i]);
    return out;
  }();
  for_each_grid_two_level(tl_pool.size(), 2, cfg.grid_den,
                          [&](const std::vector<std::size_t>& combo, const std::vector<Rat>& ws) {
                            std::vector<std::pair<DistOverDist, Rat>> three;
                            for (std::size_t s = 0; s < combo.size(); ++s)
                              three.emplace_back(tl_pool[combo[s]], ws[s]);
                            check_assoc(three);
                          });
  for (int i = 0; i < cfg.random_cases; ++i) {
    std::vector<std::pair<DistOverDist, Rat>> three;
    const std::size_t size = 1 + rng() % 3;
    std::vector<std::int64_t> parts(size);
    std::int64_t total = 0;
    for (auto& part : parts) {
      part = 1 + static_cast<std::int64_t>(rng() % 8);
      total += part;
    }
    for (std::size_t s = 0; s < size; ++s)
      three.emplace_back(random_dist_over_dist(rng), Rat(parts[s], total));
    check_assoc(three);
  }

  r.wall_ms = timer.ms();
  return r;
}

// --- the distinguished algebra on the naturals ---------------------------------

LawReport run_nat_min_algebra(const SuiteConfig& cfg) {
  Timer timer;
  LawReport r;
  r.suite = "nat-min-algebra";
  const Algebra alg = builtin_algebra("nat_min");

  for (std::uint64_t a = 0; a <= 20; ++a) {
    expect(r, min_support(Dist::dirac(a), cfg.enumeration_cap) == a, "unit", std::to_string(a));
    const Elem got = alg.action(CarrierDist::dirac(Elem(a)));
    expect(r, got == Elem(a), "unit-handle", std::to_string(a));
  }
  // a tail-backed unit-of-sorts: the least index of a purely geometric measure
  expect(r, min_support(Dist::with_geometric_tail({}, 4, Rat(1, 2)), cfg.enumeration_cap) == 4,
         "tail-min-support", "geometric tail from 4");

  const auto pool = grid_dists(3, cfg.grid_den);
  std::vector<CarrierDist> carrier_pool;
  carrier_pool.reserve(pool.size());
  for (const Dist& d : pool) carrier_pool.push_back(dist_to_carrier(d));
  for_each_grid_two_level(
      pool.size(), 4, cfg.grid_den,
      [&](const std::vector<std::size_t>& combo, const std::vector<Rat>& ws) {
        std::vector<DistOverDist::Entry> outer;
        std::vector<TwoLevelDist::Entry> carrier_outer;
        for (std::size_t s = 0; s < combo.size(); ++s) {
          outer.emplace_back(pool[combo[s]], ws[s]);
          carrier_outer.emplace_back(carrier_pool[combo[s]], ws[s]);
        }
        const DistOverDist q = DistOverDist::from_pairs(std::move(outer));
        const std::uint64_t via_join = nat_min_of_join(q);
        const std::uint64_t via_supports = nat_min_of_supports(q);
        expect(r, via_join == via_supports, "assoc-two-routes",
               "join route " + std::to_string(via_join) + " vs support route " +
                   std::to_string(via_supports));
        const auto generic = check_assoc_law(alg, TwoLevelDist::from_pairs(std::move(carrier_outer)));
        expect(r, generic.pass, "assoc-handle", generic.witness);
      });

  std::mt19937_64 rng(mix_seed(cfg.seed, 2));
  for (int i = 0; i < cfg.random_cases; ++i) {
    const DistOverDist q = random_dist_over_dist(rng);
    expect(r, nat_min_of_join(q) == nat_min_of_supports(q), "assoc-two-routes-random",
           "case " + std::to_string(i));
  }

  r.wall_ms = timer.ms();
  return r;
}

// --- monotone equivalence -------------------------------------------------------

LawReport run_ns_equivalence(const SuiteConfig& cfg) {
  Timer timer;
  LawReport r;
  r.suite = "ns-equivalence";
  for (std::uint64_t n = 1; n <= cfg.ns_bound; ++n) {
    const NsReport report = affine_iff_monotone(n, cfg.ns_bound);
    r.cases += report.functions;
    for (const std::string& d : report.discrepancies) fail(r, "monotone-iff-subset-min", d);
    ++r.cases;
    if (report.monotone != report.expected_monotone) {
      fail(r, "monotone-count",
           "n=" + std::to_string(n) + ": " + std::to_string(report.monotone) + " monotone maps, " +
               "binomial formula gives " + std::to_string(report.expected_monotone));
    }
  }
  r.wall_ms = timer.ms();
  return r;
}

// --- factorization through the barycenter ---------------------------------------

LawReport run_factorization(const SuiteConfig& cfg) {
  Timer timer;
  LawReport r;
  r.suite = "phi-commutes";

  for (std::uint64_t n = 1; n <= 5; ++n) {
    for (const auto& table : all_monotone_tables(n)) {
      ++r.cases;
      try {
        const Factorization f = factor_through_barycenter(table, cfg.grid_den);
        if (f.phi != table) {
          fail(r, "factorization", "recovered table differs from the dirac table");
        }
      } catch (const Error& e) {
        fail(r, "factorization", e.what());
      }
    }
  }

  const auto dists = grid_dists(4, cfg.grid_den);
  for (const auto& phi : all_monotone_tables(5)) {
    for (const Dist& p : dists) {
      const LawOutcome out = check_phi_commutes(phi, p);
      expect(r, out.pass, "phi-commutes", out.witness);
    }
  }

  r.wall_ms = timer.ms();
  return r;
}

// --- permutation identity --------------------------------------------------------

LawReport run_permutation_min(const SuiteConfig& cfg) {
  Timer timer;
  LawReport r;
  r.suite = "permutation-min";
  const auto dists = grid_dists(3, cfg.grid_den);
  for (const auto& perm : all_permutation_tables(4)) {
    for (const Dist& p : dists) {
      const LawOutcome out = check_permutation_min(perm, p);
      expect(r, out.pass, "permutation-min", out.witness);
    }
  }
  r.wall_ms = timer.ms();
  return r;
}

// --- built-in barycenter algebras -------------------------------------------------

namespace {

/// Carrier measures over a fixed list of points: every support subset of
/// size <= max_support crossed with the grid weightings.
std::vector<CarrierDist> carrier_grid(const std::vector<Elem>& points, std::size_t max_support,
                                      std::int64_t den) {
  std::vector<CarrierDist> out;
  const std::size_t n = points.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n); ++mask) {
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::uint64_t(1) << i)) support.push_back(i);
    }
    if (support.size() > max_support) continue;
    for (const auto& ws : grid_weightings(support.size(), den)) {
      std::vector<CarrierDist::Entry> entries;
      for (std::size_t s = 0; s < support.size(); ++s)
        entries.emplace_back(points[support[s]], ws[s]);
      out.push_back(CarrierDist::from_pairs(std::move(entries)));
    }
  }
  return out;
}

void run_algebra_suite(LawReport& r, const SuiteConfig& cfg, const Algebra& alg,
                       const std::vector<Elem>& unit_samples,
                       const std::vector<CarrierDist>& inner_pool, std::size_t max_outer) {
  const LawOutcome unit = check_unit_law(alg, unit_samples);
  expect(r, unit.pass, "unit", unit.witness.empty() ? alg.name : unit.witness);

  // The action must agree with the space's own structure map on finite
  // mixtures of carrier points; together with associativity this is the
  // affineness of the barycenter.
  for (const CarrierDist& p : inner_pool) {
    std::vector<Dist::Entry> index_weights;
    std::vector<Elem> points;
    for (std::size_t s = 0; s < p.entries().size(); ++s) {
      index_weights.emplace_back(s, p.entries()[s].second);
      points.push_back(p.entries()[s].first);
    }
    const Elem via_action = alg.action(p);
    const Elem via_structure =
        affine_sum(alg.space, Dist::from_weights(std::move(index_weights)),
                   SeqMap::from_elems(std::move(points)));
    ++r.cases;
    if (!(via_action == via_structure)) {
      fail(r, "action-matches-structure", alg.name,
           to_string(via_action) + " != " + to_string(via_structure));
    }
  }

  for_each_grid_two_level(
      inner_pool.size(), max_outer, cfg.grid_den,
      [&](const std::vector<std::size_t>& combo, const std::vector<Rat>& ws) {
        std::vector<TwoLevelDist::Entry> outer;
        for (std::size_t s = 0; s < combo.size(); ++s)
          outer.emplace_back(inner_pool[combo[s]], ws[s]);
        const LawOutcome out = check_assoc_law(alg, TwoLevelDist::from_pairs(std::move(outer)));
        ++r.cases;
        if (!out.pass) fail(r, "assoc", alg.name, out.witness);
      });

  std::mt19937_64 rng(mix_seed(cfg.seed, fnv1a(alg.name)));
  const int random_cases = std::min(cfg.random_cases, 500);
  for (int i = 0; i < random_cases; ++i) {
    const std::size_t size = 1 + rng() % 4;
    std::vector<std::int64_t> parts(size);
    std::int64_t total = 0;
    for (auto& part : parts) {
      part = 1 + static_cast<std::int64_t>(rng() % 8);
      total += part;
    }
    std::vector<TwoLevelDist::Entry> outer;
    for (std::size_t s = 0; s < size; ++s)
      outer.emplace_back(inner_pool[rng() % inner_pool.size()], Rat(parts[s], total));
    const LawOutcome out = check_assoc_law(alg, TwoLevelDist::from_pairs(std::move(outer)));
    ++r.cases;
    if (!out.pass) fail(r, "assoc-random", alg.name, out.witness);
  }
}

}  // namespace

LawReport run_builtin_algebras(const SuiteConfig& cfg) {
  Timer timer;
  LawReport r;
  r.suite = "builtin-algebras";

  {
    const Algebra alg = builtin_algebra("n_min(4)");
    run_algebra_suite(r, cfg, alg, alg.space.samples,
                      carrier_grid(alg.space.samples, 4, cfg.grid_den), 2);
  }
  for (const char* name : {"two_min", "two_max"}) {
    const Algebra alg = builtin_algebra(name);
    run_algebra_suite(r, cfg, alg, alg.space.samples,
                      carrier_grid(alg.space.samples, 2, cfg.grid_den), 4);
  }
  {
    const Algebra alg = builtin_algebra("unit_interval");
    const std::vector<Elem> points = {Elem(Rat(0)), Elem(Rat(1, 4)), Elem(Rat(1, 2)),
                                      Elem(Rat(3, 4)), Elem(Rat(1))};
    run_algebra_suite(r, cfg, alg, alg.space.samples, carrier_grid(points, 3, cfg.grid_den), 2);
  }
  {
    const Algebra alg = builtin_algebra("r_inf");
    const std::vector<Elem> points = {Elem(Rat(0)), Elem(Rat(1)), Elem(Rat(-2)), Elem(Rat(5, 2)),
                                      Elem(Infinity{})};
    run_algebra_suite(r, cfg, alg, alg.space.samples, carrier_grid(points, 3, cfg.grid_den), 2);
  }
  {
    const Algebra alg = builtin_algebra("coeq3");
    run_algebra_suite(r, cfg, alg, alg.space.samples,
                      carrier_grid(alg.space.samples, 3, cfg.grid_den), 3);
    // the displayed barycenter on the two generators
    const auto eps = [](const Rat& weight_on_one) {
      std::vector<CarrierDist::Entry> entries = {{Elem(CoeqPoint::zero), Rat(1) - weight_on_one},
                                                 {Elem(CoeqPoint::one), weight_on_one}};
      return barycenter_coeq3(CarrierDist::from_pairs(std::move(entries)));
    };
    expect(r, eps(Rat(0)) == CoeqPoint::zero, "coeq3-display", "r = 0");
    expect(r, eps(Rat(1)) == CoeqPoint::one, "coeq3-display", "r = 1");
    for (const Rat& w : grid_weights(cfg.grid_den)) {
      if (w == Rat(1)) continue;
      expect(r, eps(w) == CoeqPoint::mid, "coeq3-display", "r = " + w.str());
    }
  }
  {
    const Algebra alg = builtin_algebra("free");
    std::vector<Elem> points;
    for (const Dist& d : strided(grid_dists(3, cfg.grid_den), 8)) points.emplace_back(d);
    const auto inner = carrier_grid(points, 2, cfg.grid_den);
    std::vector<CarrierDist> inner_pool = inner;
    if (inner_pool.size() > 40) inner_pool.resize(40);
    run_algebra_suite(r, cfg, alg, points, inner_pool, 2);
    // the free action is the monad multiplication, pointwise
    for (const CarrierDist& p : inner_pool) {
      std::vector<DistOverDist::Entry> outer;
      for (const auto& [e, w] : p.entries()) outer.emplace_back(std::get<Dist>(e), w);
      expect(r, alg.action(p) == Elem(join(DistOverDist::from_pairs(std::move(outer)))),
             "free-is-join", alg.name);
    }
  }

  // swap conjugation ties the two structures on a pair of points together
  const auto sw = [](const Elem& e) {
    return Elem(std::uint64_t{1} - std::get<std::uint64_t>(e));
  };
  for (const CarrierDist& p :
       carrier_grid({Elem(std::uint64_t{0}), Elem(std::uint64_t{1})}, 2, cfg.grid_den)) {
    std::vector<CarrierDist::Entry> swapped;
    for (const auto& [e, w] : p.entries()) swapped.emplace_back(sw(e), w);
    const std::uint64_t via_max = barycenter_two_max(p);
    const std::uint64_t via_conj =
        1 - barycenter_two_min(CarrierDist::from_pairs(std::move(swapped)));
    expect(r, via_max == via_conj, "swap-conjugation",
           "max gave " + std::to_string(via_max) + ", conjugated min gave " +
               std::to_string(via_conj));
  }

  r.wall_ms = timer.ms();
  return r;
}

// --- super convex axioms ---------------------------------------------------------

LawReport run_scvx_core(const SuiteConfig& cfg) {
  Timer timer;
  LawReport r;
  r.suite = "scvx-axioms";
  std::mt19937_64 rng(mix_seed(cfg.seed, 3));
  const auto q_grid = grid_dists(3, cfg.grid_den);
  const auto p_grid = grid_dists(1, cfg.grid_den);

  for (const std::string& name : scvx_space_names()) {
    const Space sp = builtin_space(name);

    // Axiom 1 over sampled sequences and indices
    for (const auto& tuple : sample_tuples(sp, 6)) {
      const SeqMap a = SeqMap::from_elems(tuple);
      for (std::uint64_t j = 0; j < 6; ++j) {
        const CheckResult out = check_axiom1(sp, a, j);
        expect(r, out.pass, "axiom1", out.witness);
      }
    }

    // Axiom 2: exhaustive core with p supported on {0,1} and the full grid
    // of inner measures on {0..3}, under a handful of fixed sequences.
    const auto tuples = sample_tuples(sp, 4);
    for (const auto& tuple : tuples) {
      const SeqMap a = SeqMap::from_elems(tuple);
      for (const Dist& p : p_grid) {
        for (const Dist& q0 : q_grid) {
          for (const Dist& q1 : q_grid) {
            const CheckResult out = check_axiom2(sp, p, family_from({q0, q1}), a);
            expect(r, out.pass, "axiom2", out.witness);
          }
        }
      }
    }
    // randomized extension with wider supports
    for (int c = 0; c < cfg.random_cases; ++c) {
      const Dist p = random_dist(rng, 3, 4);
      std::vector<Dist> family;
      for (int j = 0; j < 4; ++j) family.push_back(random_dist(rng, 3, 4));
      const auto& tuple = tuples[c % tuples.size()];
      const CheckResult out = check_axiom2(sp, p, family_from(family), SeqMap::from_elems(tuple));
      expect(r, out.pass, "axiom2-random", out.witness);
    }

    // declared type tag must survive the probes
    const ClassifyReport cls = classify_probe(sp);
    expect(r, cls.consistent, "classify",
           name + " suggested tag differs from declaration (" + cls.detail + ")");

    // identity map is affine
    AffineMap ident;
    ident.name = "identity on " + name;
    ident.source = sp;
    ident.target = sp;
    ident.action = [](const Elem& e) { return e; };
    const CheckResult ia = is_affine(ident, {.random_cases = 50, .seed = cfg.seed + 2});
    expect(r, ia.pass, "identity-affine", ia.witness);
  }

  // the swap isomorphism between the two structures on a pair
  {
    AffineMap sw;
    sw.name = "sw: two_max -> two_min";
    sw.source = builtin_space("two_max");
    sw.target = builtin_space("two_min");
    sw.action = [](const Elem& e) {
      return Elem(std::uint64_t{1} - std::get<std::uint64_t>(e));
    };
    const CheckResult out = is_affine(sw, {.seed = cfg.seed + 3});
    expect(r, out.pass, "swap-affine", out.witness);
  }

  // inclusion of the pair into the naturals
  {
    AffineMap inc;
    inc.name = "two_min -> N_min";
    inc.source = builtin_space("two_min");
    inc.target = builtin_space("N_min");
    inc.action = [](const Elem& e) { return e; };
    const CheckResult out = is_affine(inc, {.seed = cfg.seed + 4});
    expect(r, out.pass, "inclusion-affine", out.witness);
  }

  // a parity map must fail the checker: this keeps the harness honest
  {
    AffineMap parity;
    parity.name = "parity on N_min";
    parity.source = builtin_space("N_min");
    parity.target = builtin_space("N_min");
    parity.action = [](const Elem& e) { return Elem(std::get<std::uint64_t>(e) % 2); };
    const CheckResult out = is_affine(parity, {.seed = cfg.seed + 5});
    expect(r, !out.pass, "parity-must-fail", "checker accepted a non-monotone endomap");
  }

  // the simplex-interval isomorphism round-trips and is affine both ways
  {
    const AffineMap fwd = iso_delta2_interval_map(true);
    const AffineMap bwd = iso_delta2_interval_map(false);
    const CheckResult fa = is_affine(fwd, {.seed = cfg.seed + 6});
    expect(r, fa.pass, "iso-affine-fwd", fa.witness);
    const CheckResult ba = is_affine(bwd, {.seed = cfg.seed + 7});
    expect(r, ba.pass, "iso-affine-bwd", ba.witness);
    for (const Rat& x : {Rat(0), Rat(1, 7), Rat(1), Rat(1, 3), Rat(3, 4)}) {
      expect(r, iso_delta2_to_interval(iso_interval_to_delta2(Elem(x))) == Elem(x),
             "iso-round-trip", x.str());
    }
    for (const Dist& p : grid_dists(1, cfg.grid_den)) {
      expect(r, iso_interval_to_delta2(iso_delta2_to_interval(Elem(p))) == Elem(p),
             "iso-round-trip", to_string(Elem(p)));
    }
  }

  // maps from discrete to geometric spaces can only be affine when constant
  for (const auto& [src_name, tgt_name] : std::vector<std::pair<std::string, std::string>>{
           {"two_min", "unit_interval"}, {"N_min", "delta_N"}}) {
    AffineMap constant;
    const Space tgt = builtin_space(tgt_name);
    constant.name = "constant " + src_name + " -> " + tgt_name;
    constant.source = builtin_space(src_name);
    constant.target = tgt;
    const Elem value = tgt.samples.front();
    constant.action = [value](const Elem&) { return value; };
    const DgReport dg = dg_constancy_check(constant, {.random_cases = 50, .seed = cfg.seed + 8});
    expect(r, dg.affine && dg.constant && dg.consistent, "dg-constancy", dg.witness);
  }
  {
    // the identity-style injection two_min -> [0,1] must be rejected as affine
    AffineMap inj;
    inj.name = "0/1 injection into [0,1]";
    inj.source = builtin_space("two_min");
    inj.target = builtin_space("unit_interval");
    inj.action = [](const Elem& e) { return Elem(Rat(std::int64_t(std::get<std::uint64_t>(e)))); };
    const DgReport dg = dg_constancy_check(inj, {.seed = cfg.seed + 9});
    expect(r, !dg.affine && dg.consistent, "dg-injection-must-fail", dg.witness);
  }

  // composing a measure-valued transform with a sequence
  {
    const Space interval = builtin_space("unit_interval");
    const DistFamily q = family_from({Dist::from_weights({{0, Rat(1, 2)}, {1, Rat(1, 2)}}),
                                      Dist::dirac(2), Dist::dirac(0),
                                      Dist::from_weights({{1, Rat(1, 4)}, {3, Rat(3, 4)}})});
    const SeqMap a = SeqMap::from_elems({Elem(Rat(0)), Elem(Rat(1)), Elem(Rat(1, 2)),
                                         Elem(Rat(1, 4))});
    const SeqMap b = transform_compose(q, a, interval, 4);
    const AffineMap via_q = seq_to_affine(SeqMap::from_elems({Elem(*q(0)), Elem(*q(1)),
                                                              Elem(*q(2)), Elem(*q(3))}),
                                          builtin_space("delta_N"));
    const AffineMap via_a = seq_to_affine(a, interval);
    for (std::uint64_t i = 0; i < 4; ++i) {
      const Elem composite = via_a.action(via_q.action(Elem(Dist::dirac(i))));
      expect(r, composite == b.at(i), "transform-compose",
             "index " + std::to_string(i) + ": " + to_string(composite) + " != " +
                 to_string(b.at(i)));
    }
    expect(r, b.at(0) == Elem(Rat(1, 2)), "transform-compose-value", to_string(b.at(0)));
  }

  // cancelling the barycenter: maps out of the naturals agreeing after the
  // barycenter agree outright
  {
    const auto tables = all_monotone_tables(4);
    for (std::size_t i = 0; i < tables.size(); ++i) {
      for (std::size_t j = i; j < tables.size(); ++j) {
        bool composites_agree = true;
        for (std::uint64_t d = 0; d < 4; ++d) {
          if (tables[i][min_support(Dist::dirac(d))] != tables[j][min_support(Dist::dirac(d))]) {
            composites_agree = false;
            break;
          }
        }
        expect(r, composites_agree == (tables[i] == tables[j]), "epi-cancellation",
               "tables " + std::to_string(i) + ", " + std::to_string(j));
      }
    }
  }

  r.wall_ms = timer.ms();
  return r;
}

// --- divergence semantics ---------------------------------------------------------

LawReport run_divergence(const SuiteConfig& cfg) {
  Timer timer;
  LawReport r;
  r.suite = "divergence";
  const Space rinf = builtin_space("r_inf");

  // the canonical divergent instance: geometric weights against doubling values
  const Dist geo = Dist::with_geometric_tail({}, 0, Rat(1, 2));
  const SeqMap doubling = SeqMap::geometric_values(Rat(2), Rat(2));
  const Elem sum = affine_sum(rinf, geo, doubling);
  expect(r, sum == Elem(Infinity{}), "divergent-sum", to_string(sum));

  // convergent tails evaluate exactly
  expect(r, affine_sum(rinf, geo, SeqMap::geometric_values(Rat(1), Rat(1))) == Elem(Rat(1)),
         "convergent-tail", "constant-1 values");
  // sum_k 2^-(k+1) * (3/2)^k = (1/2) / (1 - 3/4) = 2
  expect(r, affine_sum(rinf, geo, SeqMap::geometric_values(Rat(1), Rat(3, 2))) == Elem(Rat(2)),
         "convergent-tail", "ratio-3/2 values");

  // absorption under positive weight on infinity
  expect(r,
         affine_sum(rinf, Dist::from_weights({{0, Rat(1, 2)}, {1, Rat(1, 2)}}),
                    SeqMap::from_elems({Elem(Infinity{}), Elem(Rat(0))})) == Elem(Infinity{}),
         "absorbing-infinity", "");

  // the nonconstant map to the pair: values and affineness on the instance
  expect(r, rinf_j(Elem(Rat(5, 2))) == Elem(std::uint64_t{1}), "j-value", "finite point");
  expect(r, rinf_j(Elem(Infinity{})) == Elem(std::uint64_t{0}), "j-value", "infinity");
  const CheckResult ja = is_affine(rinf_j_map(), {.random_cases = 100, .seed = cfg.seed + 10});
  expect(r, ja.pass, "j-affine", ja.witness);
  expect(r, rinf_j(affine_sum(rinf, geo, doubling)) == Elem(std::uint64_t{0}),
         "j-of-divergent-sum", "");

  r.wall_ms = timer.ms();
  return r;
}

// --- refinement -------------------------------------------------------------------

std::vector<RefinementTree> scripted_trees(const SuiteConfig& cfg) {
  std::mt19937_64 rng(mix_seed(cfg.seed, 4));
  std::vector<RefinementTree> trees;
  for (std::size_t size = 1; size <= 8; ++size) {
    std::vector<std::string> points;
    for (std::size_t i = 0; i < size; ++i) points.push_back("p" + std::to_string(i));
    const std::size_t target_depth = std::min<std::size_t>(6, size);

    const auto build = [&](const std::function<std::pair<std::size_t, std::size_t>(
                               const std::vector<std::vector<std::string>>&)>& choose) {
      RefinementTree t = RefinementTree::trivial(points);
      while (t.depth() < target_depth) {
        std::vector<std::vector<std::string>> atoms;
        for (const auto mask : t.atoms(t.depth())) atoms.push_back(t.members(mask));
        const auto [atom, left_count] = choose(atoms);
        std::vector<std::string> left(atoms[atom].begin(), atoms[atom].begin() + left_count);
        std::vector<std::string> right(atoms[atom].begin() + left_count, atoms[atom].end());
        t = t.refine(atom, left, right);
      }
      return t;
    };

    // leftmost-first, balanced, and seeded random scripts
    trees.push_back(build([](const auto& atoms) -> std::pair<std::size_t, std::size_t> {
      for (std::size_t a = 0; a < atoms.size(); ++a) {
        if (atoms[a].size() >= 2) return {a, 1};
      }
      return {0, 1};
    }));
    trees.push_back(build([](const auto& atoms) -> std::pair<std::size_t, std::size_t> {
      std::size_t best = 0;
      for (std::size_t a = 0; a < atoms.size(); ++a) {
        if (atoms[a].size() > atoms[best].size()) best = a;
      }
      return {best, atoms[best].size() / 2};
    }));
    for (int rep = 0; rep < 5; ++rep) {
      trees.push_back(build([&rng](const auto& atoms) -> std::pair<std::size_t, std::size_t> {
        std::vector<std::size_t> splittable;
        for (std::size_t a = 0; a < atoms.size(); ++a) {
          if (atoms[a].size() >= 2) splittable.push_back(a);
        }
        const std::size_t atom = splittable[rng() % splittable.size()];
        return {atom, 1 + rng() % (atoms[atom].size() - 1)};
      }));
    }
  }
  return trees;
}

LawReport run_refinement(const SuiteConfig& cfg) {
  Timer timer;
  LawReport r;
  r.suite = "refinement";

  for (const RefinementTree& tree : scripted_trees(cfg)) {
    // atom counts grow by one per level, starting from the trivial partition
    for (std::size_t level = 1; level <= tree.depth(); ++level) {
      expect(r, tree.atom_count(level) == level, "atom-count",
             "level " + std::to_string(level) + " has " +
                 std::to_string(tree.atom_count(level)) + " atoms");
    }

    // the refinement square commutes at every level for every point
    for (std::size_t level = 1; level + 1 <= tree.depth(); ++level) {
      for (const std::string& point : tree.points()) {
        const CheckResult out = check_refinement_diagram(tree, level, point);
        expect(r, out.pass, "refinement-square", out.witness);
      }
      // each collapse table is monotone, as is any composite of them
      expect(r, monotone_oracle(tree.collapse(level)), "collapse-monotone",
             "level " + std::to_string(level));
    }
    if (tree.depth() >= 3) {
      std::vector<std::uint64_t> composite = tree.collapse(1);
      for (std::size_t level = 2; level + 1 <= tree.depth(); ++level) {
        const auto& next = tree.collapse(level);
        std::vector<std::uint64_t> composed(next.size());
        for (std::size_t k = 0; k < next.size(); ++k) composed[k] = composite[next[k]];
        composite = std::move(composed);
        expect(r, monotone_oracle(composite), "composite-collapse-monotone",
               "down to level 1 from " + std::to_string(level + 1));
      }
    }

    // fields: 2^n sets at n atoms, closed under complement and union
    RefinementTree::AtomMask full = 0;
    for (std::size_t i = 0; i < tree.points().size(); ++i) full |= RefinementTree::AtomMask(1) << i;
    for (std::size_t level = 1; level <= tree.depth(); ++level) {
      const auto field = field_of_level(tree, level);
      expect(r, field.size() == (std::size_t(1) << tree.atom_count(level)), "field-size",
             "level " + std::to_string(level) + " has " + std::to_string(field.size()) + " sets");
      bool closed = true;
      for (const auto u : field) {
        if (!std::binary_search(field.begin(), field.end(),
                                RefinementTree::AtomMask(full & ~u))) {
          closed = false;
        }
        for (const auto v : field) {
          if (!std::binary_search(field.begin(), field.end(), RefinementTree::AtomMask(u | v)))
            closed = false;
        }
      }
      expect(r, closed, "field-closure", "level " + std::to_string(level));
    }

    // every decreasing chain of atoms meets in the deepest atom
    for (std::size_t deepest = 0; deepest < tree.atom_count(tree.depth()); ++deepest) {
      std::vector<std::uint64_t> chain(tree.depth());
      chain[tree.depth() - 1] = deepest;
      for (std::size_t level = tree.depth() - 1; level >= 1; --level)
        chain[level - 1] = tree.collapse(level)[chain[level]];
      const auto members = chain_intersection(tree, chain);
      expect(r, !members.empty(), "chain-intersection",
             "chain ending at atom " + std::to_string(deepest));
      expect(r, members == tree.members(tree.atoms(tree.depth())[deepest]), "chain-is-deepest-atom",
             "chain ending at atom " + std::to_string(deepest));
    }
  }

  r.wall_ms = timer.ms();
  return r;
}

// --- amplitudes --------------------------------------------------------------------

std::vector<AmpDist> amplitude_grid() {
  const auto amp = [](std::initializer_list<AmpDist::Entry> entries) {
    return AmpDist::from_amplitudes(entries);
  };
  return {
      amp({{0, CRat(Rat(1))}}),
      amp({{3, CRat(Rat(1))}}),
      amp({{2, CRat(Rat(0), Rat(1))}}),
      amp({{0, CRat(Rat(3, 5))}, {1, CRat(Rat(4, 5))}}),
      amp({{0, CRat(Rat(3, 5))}, {1, CRat(Rat(0), Rat(4, 5))}}),
      amp({{0, CRat(Rat(4, 5))}, {2, CRat(Rat(-3, 5))}}),
      amp({{0, CRat(Rat(5, 13))}, {1, CRat(Rat(0), Rat(12, 13))}}),
      amp({{0, CRat(Rat(1, 3))}, {1, CRat(Rat(2, 3))}, {2, CRat(Rat(0), Rat(2, 3))}}),
      amp({{1, CRat(Rat(2, 7))}, {3, CRat(Rat(3, 7))}, {5, CRat(Rat(6, 7))}}),
      amp({{0, CRat(Rat(3, 5), Rat(4, 5)) * CRat(Rat(3, 5))},
           {4, CRat(Rat(4, 5)) * CRat(Rat(3, 5), Rat(-4, 5))}}),
  };
}

std::vector<CRat> unit_phase_grid() {
  return {CRat(Rat(1)),          CRat(Rat(-1)),
          CRat(Rat(0), Rat(1)),  CRat(Rat(0), Rat(-1)),
          CRat(Rat(3, 5), Rat(4, 5)), CRat(Rat(-4, 5), Rat(3, 5)),
          CRat(Rat(5, 13), Rat(-12, 13))};
}

LawReport run_amplitude(const SuiteConfig& cfg) {
  Timer timer;
  LawReport r;
  r.suite = "amplitude";
  const auto amps = amplitude_grid();
  const auto phases = unit_phase_grid();

  for (const AmpDist& a : amps) {
    // normalization was validated on construction; the l1 reduction is a
    // genuine distribution with the same least support
    const Dist l1 = l2_to_l1(a);
    expect(r, ev(NatSet::all(), l1) == Rat(1), "l1-normalization", "");
    expect(r, amp_min_support(a) == min_support(l1), "min-support-agreement", "");

    // phase invariance of the reduction, entrywise and globally
    for (const CRat& phase : phases) {
      for (std::size_t k = 0; k < a.entries().size(); ++k) {
        std::vector<AmpDist::Entry> rotated = a.entries();
        rotated[k].second = rotated[k].second * phase;
        expect(r, l2_to_l1(AmpDist::from_amplitudes(rotated)) == l1, "phase-invariance",
               "entry " + std::to_string(k) + " by " + phase.str());
      }
      std::vector<AmpDist::Entry> all_rotated = a.entries();
      for (auto& [i, z] : all_rotated) z = z * phase;
      expect(r, l2_to_l1(AmpDist::from_amplitudes(all_rotated)) == l1, "phase-invariance",
             "global phase " + phase.str());
    }
  }

  // the l2 evaluation rule factors through the l1 layer
  const std::vector<DistFamily> families = {
      dirac_family(),
      constant_family(Dist::from_weights({{0, Rat(1, 2)}, {1, Rat(1, 2)}})),
      [](std::uint64_t j) -> std::optional<Dist> {
        return Dist::from_weights({{j, Rat(3, 4)}, {j + 1, Rat(1, 4)}});
      },
  };
  const std::vector<NatSet> sets = {NatSet::of({}),     NatSet::of({0}),       NatSet::of({1}),
                                    NatSet::of({0, 1}), NatSet::of({5}),       NatSet::all(),
                                    NatSet::complement_of({0})};
  for (const AmpDist& a : amps) {
    for (std::size_t f = 0; f < families.size(); ++f) {
      for (const NatSet& u : sets) {
        const Rat direct = amp_combine(a, families[f], u);
        const Rat via_l1 = ev(u, convex_combine(l2_to_l1(a), families[f]));
        expect(r, direct == via_l1, "l2-factors-through-l1",
               "family " + std::to_string(f) + ": " + direct.str() + " != " + via_l1.str());
      }
    }
  }

  // the amplitude-weighted min structure obeys the axioms after reduction
  const Space nmin = builtin_space("N_min");
  std::mt19937_64 rng(mix_seed(cfg.seed, 5));
  for (const AmpDist& a : amps) {
    const Dist p = l2_to_l1(a);
    for (std::uint64_t j = 0; j < 3; ++j) {
      const CheckResult out = check_axiom1(nmin, SeqMap::identity(), j);
      expect(r, out.pass, "reduced-axiom1", out.witness);
    }
    std::vector<Dist> family;
    for (std::uint64_t j = 0; j <= (p.prefix().empty() ? 0 : p.prefix().back().first); ++j)
      family.push_back(random_dist(rng, 5, 3));
    const CheckResult out = check_axiom2(nmin, p, family_from(family), SeqMap::identity());
    expect(r, out.pass, "reduced-axiom2", out.witness);
  }

  r.wall_ms = timer.ms();
  return r;
}

// --- serialization round trips -------------------------------------------------------

LawReport run_roundtrip(const SuiteConfig& cfg) {
  Timer timer;
  LawReport r;
  r.suite = "round-trip";
  std::mt19937_64 rng(mix_seed(cfg.seed, 6));

  std::vector<Dist> dists = grid_dists(3, cfg.grid_den);
  for (int i = 0; i < 100; ++i) dists.push_back(random_dist(rng));
  dists.push_back(Dist::with_geometric_tail({}, 0, Rat(1, 2)));
  dists.push_back(Dist::with_geometric_tail({{0, Rat(1, 3)}, {2, Rat(1, 3)}}, 5, Rat(2, 3)));
  for (const Dist& d : dists) {
    const std::string once = dist_to_json(d).dump();
    const Dist reparsed = dist_from_json(parse_json_text(once));
    expect(r, reparsed == d && dist_to_json(reparsed).dump() == once, "dist-round-trip", once);
  }

  for (const AmpDist& a : amplitude_grid()) {
    const std::string once = amp_to_json(a).dump();
    const AmpDist reparsed = amp_from_json(parse_json_text(once));
    expect(r, reparsed == a && amp_to_json(reparsed).dump() == once, "amp-round-trip", once);
  }

  for (const RefinementTree& t : scripted_trees(cfg)) {
    const std::string once = tree_to_json(t).dump();
    const RefinementTree reparsed = tree_from_json(parse_json_text(once));
    const std::string twice = tree_to_json(reparsed).dump();
    bool same_atoms = reparsed.depth() == t.depth();
    for (std::size_t level = 1; same_atoms && level <= t.depth(); ++level)
      same_atoms = reparsed.atoms(level) == t.atoms(level);
    expect(r, twice == once && same_atoms, "tree-round-trip", once);
  }

  r.wall_ms = timer.ms();
  return r;
}

// --- dispatch ---------------------------------------------------------------------

LawReport run_suite(const std::string& name, const SuiteConfig& cfg) {
  cfg.validate();
  if (name == "monad-laws") return run_monad_laws(cfg);
  if (name == "algebra-laws")
    return merge_reports("algebra-laws", {run_nat_min_algebra(cfg), run_builtin_algebras(cfg)});
  if (name == "scvx-axioms")
    return merge_reports("scvx-axioms", {run_scvx_core(cfg), run_divergence(cfg)});
  if (name == "ns-equivalence") return run_ns_equivalence(cfg);
  if (name == "phi-commutes") return run_factorization(cfg);
  if (name == "permutation-min") return run_permutation_min(cfg);
  if (name == "refinement") return run_refinement(cfg);
  if (name == "amplitude") return run_amplitude(cfg);
  raise(Errc::unknown_suite, name);
}

std::vector<LawReport> run_suites(const std::vector<std::string>& names, const SuiteConfig& cfg) {
  std::vector<LawReport> reports;
  for (const std::string& name : names) reports.push_back(run_suite(name, cfg));
  std::sort(reports.begin(), reports.end(),
            [](const LawReport& a, const LawReport& b) { return a.suite < b.suite; });
  return reports;
}

}  // namespace girylab
