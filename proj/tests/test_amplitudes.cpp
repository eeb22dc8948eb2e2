#include <doctest.h>

#include "girylab/amplitudes.hpp"

using namespace girylab;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::bad_config;
}

const CRat i_unit{Rat(0), Rat(1)};

}  // namespace

TEST_CASE("complex rational arithmetic") {
  CHECK((i_unit * i_unit) == CRat(Rat(-1)));
  CHECK(CRat(Rat(3, 5), Rat(4, 5)).norm_sq() == Rat(1));
  CHECK(CRat(Rat(3, 5), Rat(4, 5)).conj() == CRat(Rat(3, 5), Rat(-4, 5)));
  CHECK((CRat(Rat(1, 2)) + CRat(Rat(0), Rat(1, 2))) == CRat(Rat(1, 2), Rat(1, 2)));
}

TEST_CASE("l2 normalization is validated exactly") {
  const AmpDist ok = AmpDist::from_amplitudes({{0, CRat(Rat(3, 5))}, {1, i_unit * CRat(Rat(4, 5))}});
  CHECK(ok.entries().size() == 2);
  CHECK(AmpDist::from_amplitudes({{0, CRat(Rat(1))}}).entries().size() == 1);
  CHECK(code_of([] {
          AmpDist::from_amplitudes({{0, CRat(Rat(1, 2))}, {1, CRat(Rat(1, 2))}});
        }) == Errc::norm_not_one);
  CHECK(code_of([] {
          AmpDist::from_amplitudes({{0, CRat(Rat(3, 5))}, {0, CRat(Rat(4, 5))}});
        }) == Errc::duplicate_index);
  // zero amplitudes are dropped before validation
  const AmpDist dropped =
      AmpDist::from_amplitudes({{0, CRat(Rat(0))}, {4, CRat(Rat(1))}});
  CHECK(dropped.entries().size() == 1);
  CHECK(dropped.entries().front().first == 4);
}

TEST_CASE("l2 evaluation rule") {
  const AmpDist p = AmpDist::from_amplitudes({{0, CRat(Rat(3, 5))}, {1, CRat(Rat(4, 5))}});
  const DistFamily fam = dirac_family();
  CHECK(amp_combine(p, fam, NatSet::of({1})) == Rat(16, 25));
  CHECK(amp_combine(p, fam, NatSet::all()) == Rat(1));

  const AmpDist point = AmpDist::from_amplitudes({{0, CRat(Rat(1))}});
  const Dist target = Dist::from_weights({{3, Rat(1, 2)}, {4, Rat(1, 2)}});
  CHECK(amp_combine(point, constant_family(target), NatSet::of({3})) ==
        ev(NatSet::of({3}), target));
}

TEST_CASE("reduction to ordinary weights") {
  const AmpDist p = AmpDist::from_amplitudes({{0, CRat(Rat(3, 5))}, {1, i_unit * CRat(Rat(4, 5))}});
  CHECK(l2_to_l1(p) == Dist::from_weights({{0, Rat(9, 25)}, {1, Rat(16, 25)}}));
  CHECK(l2_to_l1(AmpDist::from_amplitudes({{7, CRat(Rat(1))}})) == Dist::dirac(7));

  // phase changes are invisible after reduction
  const AmpDist rotated =
      AmpDist::from_amplitudes({{0, i_unit * CRat(Rat(3, 5))}, {1, CRat(Rat(-4, 5))}});
  CHECK(l2_to_l1(rotated) == l2_to_l1(p));

  CHECK(amp_min_support(p) == 0);
  CHECK(amp_min_support(p) == min_support(l2_to_l1(p)));
  CHECK(amp_min_support(AmpDist::from_amplitudes({{2, i_unit}})) == 2);
  CHECK(amp_min_support(AmpDist::from_amplitudes(
            {{0, CRat(Rat(3, 5))}, {4, CRat(Rat(4, 5))}})) == 0);
}

TEST_CASE("l2 evaluation factors through the reduction") {
  const AmpDist p = AmpDist::from_amplitudes(
      {{0, CRat(Rat(1, 3))}, {1, CRat(Rat(2, 3))}, {2, i_unit * CRat(Rat(2, 3))}});
  const DistFamily fam = [](std::uint64_t j) -> std::optional<Dist> {
    return Dist::from_weights({{j, Rat(1, 2)}, {j + 2, Rat(1, 2)}});
  };
  for (const NatSet& u : {NatSet::of({0}), NatSet::of({2, 3}), NatSet::complement_of({1}),
                          NatSet::all(), NatSet::of({})}) {
    CHECK(amp_combine(p, fam, u) == ev(u, convex_combine(l2_to_l1(p), fam)));
  }
}
