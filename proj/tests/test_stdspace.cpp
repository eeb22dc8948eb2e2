#include <doctest.h>

#include "girylab/stdspace.hpp"
#include "oracles.hpp"

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

RefinementTree abc_tree() {
  return RefinementTree::trivial({"a", "b", "c"})
      .refine(0, {"a"}, {"b", "c"})
      .refine(1, {"b"}, {"c"});
}

}  // namespace

TEST_CASE("collapse formula") {
  CHECK(phi_formula(0, 2) == std::vector<std::uint64_t>{0, 0, 1});
  CHECK(phi_formula(2, 3) == std::vector<std::uint64_t>{0, 1, 2, 2});
  CHECK(phi_formula(1, 4) == std::vector<std::uint64_t>{0, 1, 1, 2, 3});
  CHECK(code_of([] { phi_formula(3, 3); }) == Errc::index_out_of_range);
  for (std::uint64_t n = 1; n <= 6; ++n) {
    for (std::uint64_t i = 0; i < n; ++i) CHECK(monotone_oracle(phi_formula(i, n)));
  }
  // composites of collapse tables stay monotone
  const auto outer = phi_formula(1, 3);
  const auto inner = phi_formula(2, 4);
  std::vector<std::uint64_t> composed(inner.size());
  for (std::size_t k = 0; k < inner.size(); ++k) composed[k] = outer[inner[k]];
  CHECK(monotone_oracle(composed));
}

TEST_CASE("refinement grows one atom at a time") {
  const RefinementTree t0 = RefinementTree::trivial({"a", "b", "c"});
  CHECK(t0.depth() == 1);
  CHECK(t0.atom_count(1) == 1);
  CHECK(field_of_level(t0, 1).size() == 2);  // the whole set and the empty set

  const RefinementTree t1 = t0.refine(0, {"a"}, {"b", "c"});
  CHECK(t1.atom_count(2) == 2);
  CHECK(field_of_level(t1, 2).size() == 4);

  const RefinementTree t2 = t1.refine(1, {"b"}, {"c"});
  CHECK(t2.atom_count(3) == 3);
  CHECK(field_of_level(t2, 3).size() == 8);
  CHECK(t2.atom_index_of(3, "a") == 0);
  CHECK(t2.atom_index_of(3, "b") == 1);
  CHECK(t2.atom_index_of(3, "c") == 2);

  CHECK(code_of([&] { t1.refine(1, {}, {"b", "c"}); }) == Errc::empty_part);
  CHECK(code_of([&] { t1.refine(1, {"b"}, {"b", "c"}); }) == Errc::not_a_partition);
  CHECK(code_of([&] { t1.refine(1, {"a"}, {"c"}); }) == Errc::not_a_partition);
  CHECK(code_of([&] { t1.refine(1, {"z"}, {"c"}); }) == Errc::unknown_point);
  CHECK(code_of([&] { t1.refine(7, {"b"}, {"c"}); }) == Errc::index_out_of_range);
  CHECK(code_of([] { RefinementTree::trivial({"a", "a"}); }) == Errc::not_a_partition);
}

TEST_CASE("refinement squares commute and corrupted tables are caught") {
  const RefinementTree t = abc_tree();
  for (std::size_t level = 1; level + 1 <= t.depth(); ++level) {
    for (const std::string& point : t.points()) {
      CHECK(check_refinement_diagram(t, level, point).pass);
    }
  }
  // a deliberately wrong table must be flagged
  const std::vector<std::uint64_t> corrupted = {1, 0, 1};
  bool caught = false;
  for (const std::string& point : t.points()) {
    if (!check_refinement_diagram(t, 1, point, corrupted).pass) caught = true;
  }
  CHECK(caught);
  CHECK(code_of([&] { check_refinement_diagram(t, 3, "a"); }) == Errc::index_out_of_range);
  CHECK(code_of([&] { check_refinement_diagram(t, 1, "zz"); }) == Errc::unknown_point);
}

TEST_CASE("chains of atoms intersect in the deepest atom") {
  const RefinementTree t = abc_tree();
  const std::vector<std::uint64_t> chain = {0, 1, 2};  // follow the point c
  const auto members = chain_intersection(t, chain);
  CHECK(members == std::vector<std::string>{"c"});
  CHECK(members == oracles::oracle_intersection({{"a", "b", "c"}, {"b", "c"}, {"c"}}));

  const RefinementTree trivial = RefinementTree::trivial({"x", "y"});
  CHECK(chain_intersection(trivial, std::vector<std::uint64_t>{0}) ==
        std::vector<std::string>{"x", "y"});

  const std::vector<std::uint64_t> broken = {0, 0, 2};  // atom 2 at level 3 is not inside atom 0
  CHECK(code_of([&] { chain_intersection(t, broken); }) == Errc::broken_chain);
}

TEST_CASE("fields are closed under complement and union") {
  const RefinementTree t = abc_tree();
  for (std::size_t level = 1; level <= t.depth(); ++level) {
    const auto field = field_of_level(t, level);
    CHECK(field.size() == (std::size_t(1) << t.atom_count(level)));
    RefinementTree::AtomMask full = 0;
    for (std::size_t i = 0; i < t.points().size(); ++i) full |= RefinementTree::AtomMask(1) << i;
    for (const auto u : field) {
      CHECK(std::binary_search(field.begin(), field.end(), RefinementTree::AtomMask(full & ~u)));
      for (const auto v : field)
        CHECK(std::binary_search(field.begin(), field.end(), RefinementTree::AtomMask(u | v)));
    }
  }
}
