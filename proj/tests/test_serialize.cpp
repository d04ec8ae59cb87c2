#include <doctest.h>

#include "nets/serialize.hpp"
#include "testutil.hpp"

using namespace nets;

TEST_CASE("poset json round trip and dot output") {
  Poset p = testutil::diamond_poset();
  Poset back = poset_from_json(poset_to_json(p));
  CHECK(back == p);
  std::string dot = poset_to_dot(p);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("[label=\"o\"]") != std::string::npos);
  CHECK(dot.find("n0 -> n1") != std::string::npos);
}

TEST_CASE("hom json round trip is exact") {
  std::mt19937 rng(107);
  FinDimAlgebra a = testutil::random_small_algebra(rng);
  StarHom f = testutil::random_mono(a, rng);
  StarHom back = hom_from_json(hom_to_json(f));
  CHECK(back.src == f.src);
  CHECK(back.tgt == f.tgt);
  CHECK(back.mult == f.mult);
  REQUIRE(back.conj.size() == f.conj.size());
  for (size_t t = 0; t < f.conj.size(); ++t)
    CHECK((back.conj[t] - f.conj[t]).norm() == 0.0);
}

TEST_CASE("net json round trip") {
  std::mt19937 rng(109);
  CylinderPoset cn = cylinder_poset(3);
  Net n = testutil::random_cylinder_net(cn, rng);
  Net back = net_from_json(net_to_json(n));
  CHECK(back.poset == n.poset);
  CHECK(back.fibre == n.fibre);
  REQUIRE(back.inc.size() == n.inc.size());
  for (const auto& [e, f] : n.inc) {
    REQUIRE(back.inc.count(e) == 1);
    CHECK(hom_distance(back.inc.at(e), f) == 0.0);
  }
  CHECK(validate_net(back).ok());
}

TEST_CASE("net system json round trip") {
  std::mt19937 rng(113);
  StarHom step;
  step.src = FinDimAlgebra{{2}};
  step.tgt = FinDimAlgebra{{4}};
  step.mult = Eigen::MatrixXi::Constant(1, 1, 2);
  step.conj = {random_unitary(4, rng)};
  NetSystem s = testutil::chain_system(testutil::diamond_poset(),
                                       {step.src, step.tgt}, {step});
  NetSystem back = system_from_json(system_to_json(s));
  CHECK(back.posets.index == s.posets.index);
  REQUIRE(back.posets.stages.size() == s.posets.stages.size());
  for (size_t a = 0; a < s.posets.stages.size(); ++a)
    CHECK(back.posets.stages[a] == s.posets.stages[a]);
  REQUIRE(back.posets.link.size() == s.posets.link.size());
  for (const auto& [e, f] : s.posets.link)
    CHECK(back.posets.link.at(e).map == f.map);
  REQUIRE(back.psi.size() == s.psi.size());
  for (const auto& [e, homs] : s.psi) {
    REQUIRE(back.psi.at(e).size() == homs.size());
    for (size_t o = 0; o < homs.size(); ++o)
      CHECK(hom_distance(back.psi.at(e)[o], homs[o]) == 0.0);
  }
  CHECK(validate_net_system(back).ok());
}

TEST_CASE("reports serialize with their checks") {
  Report r;
  r.add("alpha", true, 1e-14, 1e-12);
  r.add("beta", false, 0.5, 1e-12, "details");
  Json j = report_to_json(r);
  CHECK(j["ok"] == false);
  CHECK(j["checks"].size() == 2);
  CHECK(j["checks"][1]["name"] == "beta");
  CHECK(j["checks"][1]["pass"] == false);
}
