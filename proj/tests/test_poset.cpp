#include <doctest.h>

#include "nets/poset.hpp"
#include "testutil.hpp"

using namespace nets;

namespace {

// Independent reachability oracle: Floyd-Warshall over the cover relation.
std::vector<std::vector<bool>> closure_oracle(
    int n, const std::vector<std::pair<int, int>>& covers) {
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) r[i][i] = true;
  for (auto [lo, hi] : covers) r[lo][hi] = true;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (r[i][k] && r[k][j]) r[i][j] = true;
  return r;
}

}  // namespace

TEST_CASE("order closure matches an independent oracle") {
  std::vector<std::pair<int, int>> covers{{0, 1}, {0, 2}, {1, 3}, {2, 3},
                                          {3, 4}, {5, 4}};
  Poset p({"a", "b", "c", "d", "e", "f"}, covers);
  auto oracle = closure_oracle(6, covers);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) CHECK(p.leq(i, j) == oracle[i][j]);
  CHECK(validate_poset(p).ok());
}

TEST_CASE("maximal and minimal elements") {
  Poset p = testutil::diamond_poset();
  CHECK(p.maximalElements() == std::vector<int>{3});
  CHECK(p.minimalElements() == std::vector<int>{0});
  CHECK(p.upSet(1) == std::vector<int>{1, 3});
}

TEST_CASE("validation flags cycles and redundant covers") {
  Poset cyc({"a", "b"}, {{0, 1}, {1, 0}});
  Report r = validate_poset(cyc);
  CHECK_FALSE(r.ok());
  CHECK(r.firstFailure()->name == "CycleDetected");

  Poset red({"a", "b", "c"}, {{0, 1}, {1, 2}, {0, 2}});
  Report r2 = validate_poset(red);
  CHECK_FALSE(r2.ok());
  CHECK(r2.firstFailure()->name == "RedundantCover");
}

TEST_CASE("upward directedness") {
  Poset d = testutil::diamond_poset();
  CHECK(is_upward_directed(d, {0, 1, 2, 3}));
  Poset v({"a", "b", "c"}, {{0, 1}, {0, 2}});
  CHECK_FALSE(is_upward_directed(v, {0, 1, 2}));
  CHECK(is_upward_directed(v, {0, 1}));
}

TEST_CASE("morphism validation and composition") {
  Poset d = testutil::diamond_poset();
  Poset chain({"0", "1", "2"}, {{0, 1}, {1, 2}});
  PosetMorphism f{d, chain, {0, 1, 1, 2}};
  CHECK(validate_morphism(f).ok());
  PosetMorphism bad{d, chain, {2, 1, 1, 0}};
  CHECK_FALSE(validate_morphism(bad).ok());
  PosetMorphism g{chain, chain, {0, 0, 1}};
  PosetMorphism gf = compose_morphisms(g, f);
  CHECK(gf.map == std::vector<int>{0, 0, 0, 1});
}

TEST_CASE("disjointness downward stability") {
  Poset p({"a", "b", "c"}, {{0, 2}, {1, 2}});
  Disjointness d{p, {}};
  d.relate(0, 1);
  CHECK(validate_disjointness(d).ok());
  Poset q({"a", "b", "c"}, {{0, 1}});
  Disjointness bad{q, {}};
  bad.relate(1, 2);  // a <= b but (a,c) missing
  CHECK_FALSE(validate_disjointness(bad).ok());
}

TEST_CASE("group action validation") {
  Poset d = testutil::diamond_poset();
  PosetMorphism id = identity_morphism(d);
  PosetMorphism swap{d, d, {0, 2, 1, 3}};
  GroupAction a{d, {id, swap}, {{0, 1}, {1, 0}}, 0, std::nullopt};
  CHECK(validate_action(a).ok());
  GroupAction badTable{d, {id, swap}, {{0, 1}, {1, 1}}, 0, std::nullopt};
  CHECK_FALSE(validate_action(badTable).ok());
}

TEST_CASE("cover paths enumeration") {
  Poset d = testutil::diamond_poset();
  auto paths = cover_paths(d, 0, 3);
  CHECK(paths.size() == 2);
  CHECK(cover_paths(d, 0, 0) ==
        std::vector<std::vector<int>>{{0}});
  CHECK(cover_paths(d, 1, 2).empty());
}
