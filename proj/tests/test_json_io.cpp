#include <doctest.h>

#include "girylab/json_io.hpp"

using namespace girylab;

TEST_CASE("distribution wire format") {
  const Dist d = Dist::from_weights({{2, Rat(1, 2)}, {5, Rat(1, 2)}});
  const Json j = dist_to_json(d);
  CHECK(j.dump() == R"({"weights":[[2,"1/2"],[5,"1/2"]]})");
  CHECK(dist_from_json(j) == d);

  const Dist tailed = Dist::with_geometric_tail({{1, Rat(1, 4)}}, 3, Rat(2, 3));
  const Json jt = dist_to_json(tailed);
  CHECK(jt["tail"]["kind"] == "geometric");
  CHECK(dist_from_json(jt) == tailed);
  CHECK(dist_to_json(dist_from_json(jt)).dump() == jt.dump());

  CHECK_THROWS_AS(dist_from_json(parse_json_text(R"({"weights":[[0,"0.5"]]})")), Error);
  CHECK_THROWS_AS(dist_from_json(parse_json_text(R"({"w":[]})")), Error);
  CHECK_THROWS_AS(parse_json_text("{nope"), Error);
}

TEST_CASE("amplitude wire format") {
  const AmpDist a =
      AmpDist::from_amplitudes({{0, CRat(Rat(3, 5))}, {1, CRat(Rat(0), Rat(4, 5))}});
  const Json j = amp_to_json(a);
  CHECK(j.dump() == R"({"amplitudes":[[0,"3/5","0"],[1,"0","4/5"]]})");
  CHECK(amp_from_json(j) == a);
}

TEST_CASE("tree wire format replays splits") {
  const RefinementTree t = RefinementTree::trivial({"a", "b", "c"})
                               .refine(0, {"a"}, {"b", "c"})
                               .refine(1, {"b"}, {"c"});
  const Json j = tree_to_json(t);
  const RefinementTree back = tree_from_json(j);
  CHECK(back.depth() == 3);
  CHECK(back.atom_index_of(3, "c") == 2);
  CHECK(tree_to_json(back).dump() == j.dump());
  CHECK_THROWS_AS(tree_from_json(parse_json_text(R"({"points": "abc"})")), Error);
}

TEST_CASE("element encodings") {
  CHECK(elem_from_json(Json(7)) == Elem(std::uint64_t{7}));
  CHECK(elem_from_json(Json("3/4")) == Elem(Rat(3, 4)));
  CHECK(elem_from_json(Json(-2)) == Elem(Rat(-2)));
  CHECK(elem_from_json(Json("inf")) == Elem(Infinity{}));
  CHECK(elem_from_json(Json("_u")) == Elem(CoeqPoint::mid));
  const Elem d = Elem(Dist::dirac(3));
  CHECK(elem_from_json(elem_to_json(d)) == d);
  CHECK(elem_to_json(Elem(Rat(1, 2))) == Json("1/2"));
}

TEST_CASE("sequence encodings") {
  const SeqMap ident = seqmap_from_json(parse_json_text(R"({"default": "identity"})"));
  CHECK(ident.at(5) == Elem(std::uint64_t{5}));
  const SeqMap with_override =
      seqmap_from_json(parse_json_text(R"({"0": "1/2", "default": "dirac"})"));
  CHECK(with_override.at(0) == Elem(Rat(1, 2)));
  CHECK(with_override.at(2) == Elem(Dist::dirac(2)));
  const SeqMap geo = seqmap_from_json(
      parse_json_text(R"({"default": {"rule": "geometric", "coeff": "2", "growth": "2"}})"));
  CHECK(geo.at(2) == Elem(Rat(8)));
  CHECK_THROWS_AS(seqmap_from_json(parse_json_text(R"({"default": "nosuch"})")), Error);
  CHECK_THROWS_AS(seqmap_from_json(parse_json_text(R"({"x": 1})")), Error);
}

TEST_CASE("set and map encodings") {
  CHECK(ev(natset_from_json(parse_json_text(R"({"elems": [0, 1]})")), Dist::dirac(1)) == Rat(1));
  CHECK(ev(natset_from_json(parse_json_text(R"({"complement_of": []})")), Dist::dirac(9)) ==
        Rat(1));
  const NatMap swap = natmap_from_json(parse_json_text(R"({"swap": [1, 3]})"));
  CHECK(*swap(1) == 3);
  const NatMap table = natmap_from_json(parse_json_text(R"({"table": [2, 2, 0]})"));
  CHECK(*table(0) == 2);
  CHECK_FALSE(table(9).has_value());
  CHECK_THROWS_AS(natmap_from_json(parse_json_text(R"({"x": 0})")), Error);
}

TEST_CASE("carrier distributions") {
  const CarrierDist p = CarrierDist::from_pairs(
      {{Elem(Rat(1, 2)), Rat(1, 2)}, {Elem(Rat(1)), Rat(1, 2)}});
  CHECK(carrier_dist_from_json(carrier_dist_to_json(p)) == p);
}
