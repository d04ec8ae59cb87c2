#include <doctest.h>

#include "nets/limits.hpp"
#include "testutil.hpp"

using namespace nets;

namespace {

// Unital monomorphism M_d -> M_{c*d}, c diagonal copies conjugated by u.
StarHom copies_mono(int d, int c, std::mt19937& rng) {
  StarHom f;
  f.src = FinDimAlgebra{{d}};
  f.tgt = FinDimAlgebra{{c * d}};
  f.mult = Eigen::MatrixXi::Constant(1, 1, c);
  f.conj = {random_unitary(c * d, rng)};
  return f;
}

NetSystem doubling_chain(std::mt19937& rng, int stages = 3) {
  std::vector<FinDimAlgebra> alg;
  std::vector<StarHom> step;
  int d = 2;
  for (int a = 0; a < stages; ++a) {
    alg.push_back(FinDimAlgebra{{d}});
    if (a + 1 < stages) step.push_back(copies_mono(d, 2, rng));
    d *= 2;
  }
  return testutil::chain_system(testutil::diamond_poset(), alg, step);
}

}  // namespace

TEST_CASE("poset system validation and the colimit poset") {
  std::mt19937 rng(73);
  NetSystem s = doubling_chain(rng);
  REQUIRE(validate_poset_system(s.posets).ok());
  LimitPoset lp = limit_poset(s.posets);
  // Identity links collapse all stages onto one copy of the stage poset.
  CHECK(lp.K.size() == 4);
  for (size_t a = 0; a < lp.F.size(); ++a) {
    CHECK(validate_morphism(lp.F[a]).ok());
    for (int x = 0; x < 4; ++x)
      CHECK(lp.section[lp.F[a].map[x]].at(static_cast<int>(a)) == x);
  }
  // Order in K mirrors the stage order.
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y)
      CHECK(lp.K.leq(lp.F[0].map[x], lp.F[0].map[y]) ==
            s.posets.stages[0].leq(x, y));

  // Disagreeing link paths are rejected.
  PosetSystem bad;
  bad.index = testutil::diamond_poset();
  Poset two({"u", "v"}, {});
  bad.stages.assign(4, two);
  PosetMorphism id = identity_morphism(two);
  PosetMorphism swap{two, two, {1, 0}};
  bad.link.emplace(std::make_pair(0, 1), id);
  bad.link.emplace(std::make_pair(0, 2), swap);
  bad.link.emplace(std::make_pair(1, 3), id);
  bad.link.emplace(std::make_pair(2, 3), id);
  Report r = validate_poset_system(bad);
  CHECK_FALSE(r.ok());
  CHECK_THROWS_AS(limit_poset(bad), std::runtime_error);
}

TEST_CASE("net system validation and derived links") {
  std::mt19937 rng(79);
  NetSystem s = doubling_chain(rng);
  CHECK(validate_net_system(s).ok());
  // Derived psi across the chain is the composite of the steps.
  StarHom direct = derived_psi(s, 0, 2)[1];
  StarHom composed = compose_hom(s.psi.at({1, 2})[1], s.psi.at({0, 1})[1]);
  CHECK(hom_equal(direct, composed, 1e-13));
  // Breaking one psi against the stage inclusions is caught.
  NetSystem broken = s;
  broken.psi.at({0, 1})[2] =
      compose_hom(broken.psi.at({0, 1})[2],
                  ad_hom(broken.nets[0].fibre[2],
                         testutil::random_blockwise_unitary(
                             broken.nets[0].fibre[2], rng)));
  CHECK_FALSE(validate_net_system(broken).ok());
}

TEST_CASE("diamond-shaped index with coherent links") {
  std::mt19937 rng(83);
  NetSystem s;
  s.posets.index = testutil::diamond_poset();
  Poset pt({"*"}, {});
  s.posets.stages.assign(4, pt);
  for (auto [a, b] : s.posets.index.covers())
    s.posets.link.emplace(std::make_pair(a, b), identity_morphism(pt));
  FinDimAlgebra m2{{2}};
  StarHom step = copies_mono(2, 2, rng);
  for (int a = 0; a < 4; ++a) {
    FinDimAlgebra alg = (a == 3) ? step.tgt : m2;
    s.nets.push_back(Net{pt, {alg}, {}});
  }
  s.psi.emplace(std::make_pair(0, 1), std::vector<StarHom>{identity_hom(m2)});
  s.psi.emplace(std::make_pair(0, 2), std::vector<StarHom>{identity_hom(m2)});
  s.psi.emplace(std::make_pair(1, 3), std::vector<StarHom>{step});
  s.psi.emplace(std::make_pair(2, 3), std::vector<StarHom>{step});
  CHECK(validate_net_system(s).ok());
  LimitNet lim = limit_net(s);
  CHECK(lim.topStage == 3);
  CHECK(lim.net.fibre[0] == step.tgt);
  CHECK(hom_equal(lim.Psi[0][0], step, 1e-14));
}

TEST_CASE("limit net is the top stage") {
  std::mt19937 rng(89);
  NetSystem s = doubling_chain(rng);
  LimitNet lim = limit_net(s);
  CHECK(lim.topStage == 2);
  CHECK(validate_net(lim.net).ok());
  for (int o = 0; o < 4; ++o) {
    CHECK(lim.net.fibre[lim.lp.F[2].map[o]] == s.nets[2].fibre[o]);
    CHECK(hom_equal(lim.Psi[2][o], identity_hom(s.nets[2].fibre[o]), 1e-14));
    CHECK(hom_equal(lim.Psi[0][o], derived_psi(s, 0, 2)[o], 1e-14));
  }
}

TEST_CASE("norm profiles along the stages") {
  std::mt19937 rng(97);
  NetSystem s = doubling_chain(rng);
  AlgElement A = random_element(s.nets[0].fibre[1], rng);
  std::vector<int> stages;
  std::vector<double> prof = limit_norm_profile(s, 0, 1, A, &stages);
  CHECK(stages == std::vector<int>{0, 1, 2});
  // Monomorphic links preserve norms, so the profile is constant.
  for (double v : prof) CHECK(v == doctest::Approx(A.norm()).epsilon(1e-12));

  // A block-killing link makes the profile drop.
  StarHom kill;
  kill.src = FinDimAlgebra{{1, 1}};
  kill.tgt = FinDimAlgebra{{1}};
  kill.mult = Eigen::MatrixXi(1, 2);
  kill.mult << 1, 0;
  kill.conj = {Mat::Identity(1, 1)};
  NetSystem t = testutil::chain_system(
      testutil::diamond_poset(), {kill.src, kill.tgt}, {kill});
  REQUIRE(validate_net_system(t).ok());
  AlgElement B = alg_zero(kill.src);
  B.m[1](0, 0) = 1;
  std::vector<double> prof2 = limit_norm_profile(t, 0, 0, B);
  CHECK(prof2.size() == 2);
  CHECK(prof2[0] == doctest::Approx(1.0));
  CHECK(prof2[1] == doctest::Approx(0.0));
}

TEST_CASE("factorization through the limit") {
  std::mt19937 rng(101);
  NetSystem s = doubling_chain(rng);
  std::vector<std::vector<StarHom>> targets;
  for (int a = 0; a < 3; ++a) targets.push_back(derived_psi(s, a, 2));
  std::vector<StarHom> theta = factor_through_limit(s, targets);
  for (int o = 0; o < 4; ++o)
    CHECK(hom_equal(theta[o], identity_hom(s.nets[2].fibre[o]), 1e-14));
  // An incompatible family is rejected.
  targets[0][1] = compose_hom(
      targets[0][1], ad_hom(s.nets[0].fibre[1],
                            testutil::random_blockwise_unitary(
                                s.nets[0].fibre[1], rng)));
  CHECK_THROWS_AS(factor_through_limit(s, targets), std::runtime_error);
}

TEST_CASE("injectivity transfer with faithful stage witnesses") {
  std::mt19937 rng(103);
  NetSystem s = doubling_chain(rng);
  std::vector<SymbolicNetRep> witnesses;
  for (const Net& n : s.nets) witnesses.push_back(canonical_symbolic_rep(n));
  Report r = injectivity_transfer_check(s, witnesses, 40, 5);
  CHECK(r.ok());
  bool concluded = false;
  for (const auto& c : r.checks)
    if (c.name == "theta_isometric" && c.pass) concluded = true;
  CHECK(concluded);

  // Non-monomorphic links gate the conclusion instead of asserting it.
  StarHom kill;
  kill.src = FinDimAlgebra{{1, 1}};
  kill.tgt = FinDimAlgebra{{1}};
  kill.mult = Eigen::MatrixXi(1, 2);
  kill.mult << 1, 0;
  kill.conj = {Mat::Identity(1, 1)};
  NetSystem t = testutil::chain_system(
      testutil::diamond_poset(), {kill.src, kill.tgt}, {kill});
  std::vector<SymbolicNetRep> w2;
  for (const Net& n : t.nets) w2.push_back(canonical_symbolic_rep(n));
  Report r2 = injectivity_transfer_check(t, w2, 40, 5);
  CHECK_FALSE(r2.ok());
  bool gated = false;
  for (const auto& c : r2.checks)
    if (c.name == "links_monomorphic" && !c.pass) gated = true;
  CHECK(gated);
}
