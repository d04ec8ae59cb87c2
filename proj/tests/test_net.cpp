#include <doctest.h>

#include <algorithm>

#include "nets/net.hpp"
#include "testutil.hpp"

using namespace nets;

namespace {

Net constant_net(const Poset& p, const FinDimAlgebra& a) {
  Net n{p, std::vector<FinDimAlgebra>(p.size(), a), {}};
  for (auto [lo, hi] : p.covers())
    n.inc.emplace(std::make_pair(lo, hi), identity_hom(a));
  return n;
}

}  // namespace

TEST_CASE("constant net validates") {
  Net n = constant_net(testutil::diamond_poset(), FinDimAlgebra{{2}});
  CHECK(validate_net(n).ok());
  CHECK(is_bundle(n));
  CHECK(hom_equal(derived_inclusion(n, 0, 3), identity_hom(n.fibre[0]),
                  1e-14));
}

TEST_CASE("random cylinder nets satisfy the net relations") {
  std::mt19937 rng(41);
  for (int N : {3, 4}) {
    CylinderPoset cn = cylinder_poset(N);
    Net n = testutil::random_cylinder_net(cn, rng);
    Report r = validate_net(n);
    CHECK(r.ok());
    // Derived inclusions compose.
    int o = cn.index(2, 1), mid = cn.index(2, 2), top = cn.index(1, N);
    StarHom direct = derived_inclusion(n, o, top);
    StarHom stepped = compose_hom(derived_inclusion(n, mid, top),
                                  derived_inclusion(n, o, mid));
    CHECK(hom_equal(direct, stepped, 1e-12));
  }
}

TEST_CASE("broken cross inclusion is reported") {
  // Pick a seed whose minimal fibre is nonabelian, so an inner twist of one
  // inclusion genuinely changes the map.
  CylinderPoset cn = cylinder_poset(3);
  Net n;
  std::mt19937 rng;
  for (unsigned seed = 43;; ++seed) {
    rng.seed(seed);
    n = testutil::random_cylinder_net(cn, rng);
    int top = *std::max_element(n.fibre[cn.index(2, 1)].blocks.begin(),
                                n.fibre[cn.index(2, 1)].blocks.end());
    if (top >= 2) break;
  }
  // Twist one cross-column inclusion by a unitary outside the commutant.
  auto key = std::make_pair(cn.index(2, 1), cn.index(1, 2));
  StarHom& bad = n.inc.at(key);
  bad = compose_hom(bad,
                    ad_hom(n.fibre[key.first],
                           testutil::random_blockwise_unitary(
                               n.fibre[key.first], rng)));
  Report r = validate_net(n);
  CHECK_FALSE(r.ok());
  bool found = false;
  for (const auto& c : r.checks)
    if (c.name == "NetRelationViolated" && c.residual > 1e-6) found = true;
  CHECK(found);
}

TEST_CASE("holonomy of a planted bundle") {
  std::mt19937 rng(47);
  const int N = 4;
  CylinderPoset cn = cylinder_poset(N);
  FinDimAlgebra a{{2}};
  std::vector<std::vector<Mat>> colU;
  for (int i = 0; i < N; ++i)
    colU.push_back(testutil::random_blockwise_unitary(a, rng));
  Net bundle = testutil::planted_bundle(cn, a, colU);
  REQUIRE(validate_net(bundle).ok());
  REQUIRE(is_bundle(bundle));

  int base = cn.index(1, 1);
  auto pres = pi1_presentation(bundle.poset, base);
  auto gens = holonomy(bundle, base, pres);  // throws if relators fail

  // Oracle: walk the minimal row once around and compare against the word
  // evaluation of the same loop in the holonomy generators.
  // verts: (1,1),(N,1),(N-1,1),...,(2,1),(1,1); ups: (N,2),(N-1,2),...,(1,2)
  std::vector<int> verts;
  std::vector<int> ups;
  verts.push_back(cn.index(1, 1));
  for (int i = N; i >= 2; --i) {
    ups.push_back(cn.index(i, 2));
    verts.push_back(cn.index(i, 1));
  }
  ups.push_back(cn.index(1, 2));
  verts.push_back(cn.index(1, 1));
  EdgePath loop{bundle.poset, verts, ups};
  REQUIRE(loop.valid());

  StarHom direct = evaluate_loop(bundle, loop);
  Word w = path_word(pres, loop);
  StarHom viaGens = identity_hom(a);
  for (int l : w)
    viaGens = compose_hom(
        l > 0 ? gens[l - 1] : invert_iso(gens[-l - 1]), viaGens);
  CHECK(hom_distance(direct, viaGens) < 1e-12);

  // The loop holonomy is nontrivial (it conjugates by the column product).
  CHECK(hom_distance(direct, identity_hom(a)) > 1e-3);
}

TEST_CASE("state transport along holonomy") {
  std::mt19937 rng(53);
  const int N = 3;
  CylinderPoset cn = cylinder_poset(N);
  FinDimAlgebra a{{2}};
  std::vector<std::vector<Mat>> colU;
  for (int i = 0; i < N; ++i)
    colU.push_back(testutil::random_blockwise_unitary(a, rng));
  Net bundle = testutil::planted_bundle(cn, a, colU);
  // Trace state is invariant under every inner holonomy.
  State trace{a, {Mat::Identity(2, 2) / 2.0}};
  NetState s = state_from_holonomy(bundle, cn.index(1, 1), trace);
  CHECK(validate_net_state(s).ok());
  // A generic state is not holonomy invariant.
  State biased{a, {Mat::Zero(2, 2)}};
  biased.rho[0](0, 0) = 1;
  CHECK_THROWS_AS(state_from_holonomy(bundle, cn.index(1, 1), biased),
                  std::runtime_error);
  // Perturbing one fibre breaks coherence.
  s.omega[cn.index(2, 2)].rho[0](0, 0) += 0.1;
  CHECK_FALSE(validate_net_state(s).ok());
}

TEST_CASE("causality over disjoint regions") {
  // Commutative fibres commute everywhere.
  Poset p({"a", "b", "t"}, {{0, 2}, {1, 2}});
  Net comm = constant_net(p, FinDimAlgebra{{1, 1}});
  Disjointness d{p, {}};
  d.relate(0, 1);
  CHECK(check_causality(comm, d).ok());

  // Constant M_2 net with identity inclusions cannot be causal.
  Net m2 = constant_net(p, FinDimAlgebra{{2}});
  CHECK_FALSE(check_causality(m2, d).ok());

  // Tensor-split net: disjoint elements land on different legs.
  Net split{p, {FinDimAlgebra{{2}}, FinDimAlgebra{{2}}, FinDimAlgebra{{4}}},
            {}};
  StarHom left, right;
  left.src = right.src = FinDimAlgebra{{2}};
  left.tgt = right.tgt = FinDimAlgebra{{4}};
  left.mult = Eigen::MatrixXi::Constant(1, 1, 2);
  right.mult = Eigen::MatrixXi::Constant(1, 1, 2);
  left.conj = {Mat::Identity(4, 4)};
  // The plain diagonal layout diag(x,x) is 1 (x) x; the perfect shuffle
  // turns it into x (x) 1, so the two images sit on different tensor legs.
  Mat shuffle = Mat::Zero(4, 4);
  shuffle(0, 0) = shuffle(1, 2) = shuffle(2, 1) = shuffle(3, 3) = 1;
  right.conj = {shuffle};
  split.inc.emplace(std::make_pair(0, 2), left);
  split.inc.emplace(std::make_pair(1, 2), right);
  REQUIRE(validate_net(split).ok());
  CHECK(check_causality(split, d).ok());
}

TEST_CASE("covariant structure and invariant states") {
  const int N = 3;
  CylinderPoset cn = cylinder_poset(N);
  FinDimAlgebra a{{2}};
  Net n = constant_net(cn.poset, a);
  // Z_N rotation of the columns.
  std::vector<PosetMorphism> elems;
  std::vector<std::vector<int>> table(N, std::vector<int>(N));
  for (int g = 0; g < N; ++g) {
    std::vector<int> map(N * N);
    for (int i = 1; i <= N; ++i)
      for (int l = 1; l <= N; ++l)
        map[cn.index(i, l)] = cn.index((i - 1 + g) % N + 1, l);
    elems.push_back({cn.poset, cn.poset, std::move(map)});
    for (int h = 0; h < N; ++h) table[g][h] = (g + h) % N;
  }
  GroupAction act{cn.poset, elems, table, 0, std::nullopt};
  REQUIRE(validate_action(act).ok());
  CovariantNet cov{n, act,
                   std::vector<std::vector<StarHom>>(
                       N, std::vector<StarHom>(N * N, identity_hom(a)))};
  CHECK(validate_covariant(cov).ok());

  std::mt19937 rng(59);
  NetState s{n, std::vector<State>(N * N, testutil::random_state(a, rng))};
  REQUIRE(validate_net_state(s).ok());
  NetState avg = invariant_net_state(cov, s);
  CHECK(validate_net_state(avg).ok());
  for (int g = 0; g < N; ++g)
    for (int o = 0; o < N * N; ++o)
      CHECK(state_distance(pull_state(cov.alpha[g][o],
                                      avg.omega[act.act(g, o)]),
                           avg.omega[o]) < 1e-12);

  // Breaking one alpha is caught.
  cov.alpha[1][0].conj[0] *= Cplx(0, 1) * 1.1;
  CHECK_FALSE(validate_covariant(cov).ok());
}

TEST_CASE("numeric net representation validation") {
  std::mt19937 rng(61);
  Poset p = testutil::diamond_poset();
  FinDimAlgebra a{{2}};
  Net n = constant_net(p, a);
  NetRep rep{n, {}, {}};
  StarHom pi0;
  pi0.src = a;
  pi0.tgt = FinDimAlgebra{{2}};
  pi0.mult = Eigen::MatrixXi::Constant(1, 1, 1);
  pi0.conj = {random_unitary(2, rng)};
  rep.pi.assign(4, FinRep{pi0});
  for (auto [lo, hi] : p.covers())
    rep.U.emplace(std::make_pair(lo, hi), Mat::Identity(2, 2));
  CHECK(validate_rep(rep).ok());
  CHECK(is_faithful(rep));
  rep.U.at({0, 1}) = random_unitary(2, rng);
  CHECK_FALSE(validate_rep(rep).ok());
}
