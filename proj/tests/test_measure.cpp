#include <doctest.h>

#include "girylab/measure.hpp"
#include "oracles.hpp"

using namespace girylab;

namespace {

Dist two_five() { return Dist::from_weights({{2, Rat(1, 2)}, {5, Rat(1, 2)}}); }

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::bad_config;
}

}  // namespace

TEST_CASE("dirac is a unit measure") {
  CHECK(Dist::dirac(0).prefix() == std::vector<Dist::Entry>{{0, Rat(1)}});
  CHECK(Dist::dirac(7).prefix() == std::vector<Dist::Entry>{{7, Rat(1)}});
  CHECK(ev(NatSet::of({7}), Dist::dirac(7)) == Rat(1));
}

TEST_CASE("from_weights validates and canonicalizes") {
  CHECK(Dist::from_weights({{5, Rat(1, 2)}, {2, Rat(1, 2)}}) == two_five());
  CHECK(Dist::from_weights({{4, Rat(0)}, {9, Rat(1)}}) == Dist::dirac(9));
  CHECK(code_of([] { Dist::from_weights({{0, Rat(1, 3)}, {1, Rat(1, 3)}}); }) ==
        Errc::mass_not_one);
  CHECK(code_of([] { Dist::from_weights({{0, Rat(1, 2)}, {0, Rat(1, 2)}}); }) ==
        Errc::duplicate_index);
  CHECK(code_of([] { Dist::from_weights({{0, Rat(-1, 2)}, {1, Rat(3, 2)}}); }) ==
        Errc::negative_weight);
}

TEST_CASE("evaluation maps") {
  CHECK(ev(NatSet::of({0, 1}), two_five()) == Rat(0));
  CHECK(ev(NatSet::below(5), two_five()) == Rat(1, 2));
  CHECK(ev(NatSet::all(), two_five()) == Rat(1));
  CHECK(ev(NatSet::complement_of({2}), two_five()) == Rat(1, 2));

  const Dist geo = Dist::with_geometric_tail({}, 0, Rat(1, 2));
  CHECK(geo.weight_at(0) == Rat(1, 2));
  CHECK(geo.weight_at(3) == Rat(1, 16));
  CHECK(ev(NatSet::below(4), geo) == Rat(15, 16));
  CHECK(ev(NatSet::complement_of({0}), geo) == Rat(1, 2));
}

TEST_CASE("ev additivity on disjoint sets") {
  const Dist p = Dist::from_weights({{0, Rat(1, 4)}, {3, Rat(1, 4)}, {7, Rat(1, 2)}});
  CHECK(ev(NatSet::of({0, 3}), p) + ev(NatSet::of({7, 9}), p) ==
        ev(NatSet::of({0, 3, 7, 9}), p));
}

TEST_CASE("min_support") {
  CHECK(min_support(two_five()) == 2);
  CHECK(min_support(Dist::dirac(9)) == 9);
  CHECK(min_support(Dist::from_weights({{3, Rat(1, 4)}, {4, Rat(3, 4)}})) == 3);
  CHECK(min_support(Dist::with_geometric_tail({}, 4, Rat(1, 2))) == 4);
  CHECK(min_support(Dist::with_geometric_tail({{1, Rat(1, 3)}}, 4, Rat(1, 2))) == 1);
}

TEST_CASE("pushforward") {
  const Dist p = Dist::from_weights({{0, Rat(1, 2)}, {1, Rat(1, 2)}});
  CHECK(pushforward(NatMap::total([](std::uint64_t i) { return i + 1; }), p) ==
        Dist::from_weights({{1, Rat(1, 2)}, {2, Rat(1, 2)}}));
  CHECK(pushforward(NatMap::constant(0), two_five()) == Dist::dirac(0));

  const Dist q = Dist::from_weights({{1, Rat(1, 3)}, {2, Rat(2, 3)}});
  const Dist swapped = pushforward(NatMap::swap_of(1, 3), q);
  CHECK(swapped == Dist::from_weights({{2, Rat(2, 3)}, {3, Rat(1, 3)}}));
  CHECK(swapped == oracles::oracle_pushforward({0, 3, 2, 1}, q));

  CHECK(code_of([&] { pushforward(NatMap::from_table({0}), q); }) == Errc::partial_map);
  CHECK(code_of([] {
          pushforward(NatMap::identity(), Dist::with_geometric_tail({}, 0, Rat(1, 2)));
        }) == Errc::tail_unsupported);
}

TEST_CASE("pushforward functoriality on sampled maps") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const Dist p = random_dist(rng, 7, 8);
    std::vector<std::uint64_t> ft(8), gt(8);
    for (auto& v : ft) v = rng() % 8;
    for (auto& v : gt) v = rng() % 8;
    const NatMap f = NatMap::from_table(ft);
    const NatMap g = NatMap::from_table(gt);
    const NatMap gf = NatMap::total([&](std::uint64_t i) { return gt[ft[i]]; });
    CHECK(pushforward(gf, p) == pushforward(g, pushforward(f, p)));
    CHECK(pushforward(NatMap::identity(), p) == p);
  }
}

TEST_CASE("join flattens exactly") {
  const DistOverDist q = DistOverDist::from_pairs(
      {{Dist::dirac(0), Rat(1, 2)},
       {Dist::from_weights({{1, Rat(1, 2)}, {2, Rat(1, 2)}}), Rat(1, 2)}});
  const Dist expected =
      Dist::from_weights({{0, Rat(1, 2)}, {1, Rat(1, 4)}, {2, Rat(1, 4)}});
  CHECK(join(q) == expected);
  CHECK(join(q) == oracles::oracle_join(q));

  const Dist p = two_five();
  CHECK(join(DistOverDist::from_pairs({{p, Rat(1)}})) == p);
  CHECK(join(DistOverDist::from_pairs({{Dist::dirac(3), Rat(1, 3)},
                                       {Dist::dirac(3), Rat(2, 3)}})) == Dist::dirac(3));
  CHECK(code_of([] {
          join(DistOverDist::from_pairs(
              {{Dist::with_geometric_tail({}, 0, Rat(1, 2)), Rat(1)}}));
        }) == Errc::tail_unsupported);
}

TEST_CASE("convex combination is join of the assembled measure") {
  const Dist p = Dist::from_weights({{0, Rat(1, 2)}, {1, Rat(1, 2)}});
  CHECK(convex_combine(Dist::dirac(4), constant_family(two_five())) == two_five());
  CHECK(convex_combine(p, dirac_family()) == p);

  const std::vector<Dist> family = {Dist::from_weights({{0, Rat(1, 2)}, {1, Rat(1, 2)}}),
                                    Dist::dirac(2)};
  const Dist combined = convex_combine(p, family_from(family));
  CHECK(combined == Dist::from_weights({{0, Rat(1, 4)}, {1, Rat(1, 4)}, {2, Rat(1, 2)}}));
  CHECK(combined == oracles::oracle_join(DistOverDist::from_pairs(
                        {{family[0], Rat(1, 2)}, {family[1], Rat(1, 2)}})));

  CHECK(code_of([&] { convex_combine(two_five(), family_from(family)); }) ==
        Errc::partial_family);
}

TEST_CASE("tail-backed construction validates") {
  CHECK(code_of([] { Dist::with_geometric_tail({{0, Rat(1)}}, 3, Rat(1, 2)); }) ==
        Errc::mass_not_one);
  CHECK(code_of([] { Dist::with_geometric_tail({}, 0, Rat(3, 2)); }) == Errc::bad_config);
  CHECK(code_of([] { Dist::with_geometric_tail({{5, Rat(1, 2)}}, 3, Rat(1, 2)); }) ==
        Errc::bad_config);
  // remaining mass certification: prefix + all tail weights telescope to one
  const Dist d = Dist::with_geometric_tail({{0, Rat(1, 2)}}, 2, Rat(1, 3));
  CHECK(d.tail()->mass == Rat(1, 2));
  Rat seen = d.prefix_mass();
  for (std::uint64_t i = 2; i < 12; ++i) seen += d.weight_at(i);
  CHECK(Rat(1) - seen == d.tail()->mass * Rat::pow(Rat(1, 3), 10));
}

TEST_CASE("grid generation") {
  const auto weights = grid_weights(4);
  CHECK(weights.size() == 6);  // 1/4, 1/3, 1/2, 2/3, 3/4, 1
  CHECK(std::count(weights.begin(), weights.end(), Rat(1, 2)) == 1);
  CHECK(grid_dists(3, 4).size() == 51);
  for (const Dist& d : grid_dists(3, 4)) CHECK(ev(NatSet::all(), d) == Rat(1));
  CHECK(grid_weightings(4, 4).size() == 1);  // only the uniform quadruple
}

TEST_CASE("random distributions are valid and deterministic") {
  std::mt19937_64 a(42), b(42);
  for (int i = 0; i < 20; ++i) {
    const Dist x = random_dist(a);
    CHECK(x == random_dist(b));
    CHECK(ev(NatSet::all(), x) == Rat(1));
  }
}
