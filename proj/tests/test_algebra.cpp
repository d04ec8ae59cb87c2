#include <doctest.h>

#include "nets/algebra.hpp"
#include "testutil.hpp"

using namespace nets;

TEST_CASE("element arithmetic and norm") {
  FinDimAlgebra a{{2, 1}};
  AlgElement id = alg_identity(a);
  CHECK(id.norm() == doctest::Approx(1.0));
  AlgElement e = matrix_unit(a, 0, 0, 1);
  CHECK((e * e).norm() == doctest::Approx(0.0));
  CHECK((e + e.adjoint()).norm() == doctest::Approx(1.0));
}

TEST_CASE("hom validation, composition, inversion") {
  std::mt19937 rng(11);
  FinDimAlgebra a = testutil::random_small_algebra(rng);
  StarHom f = testutil::random_mono(a, rng);
  CHECK(validate_hom(f).ok());
  CHECK(f.injective());
  CHECK(f.unital());
  StarHom g = testutil::random_mono(f.tgt, rng);
  StarHom gf = compose_hom(g, f);
  CHECK(validate_hom(gf).ok());
  // Structural composition equals pointwise composition.
  for (int s = 0; s < a.numBlocks(); ++s)
    for (int i = 0; i < a.blocks[s]; ++i)
      for (int j = 0; j < a.blocks[s]; ++j) {
        AlgElement e = matrix_unit(a, s, i, j);
        CHECK((gf(e) - g(f(e))).norm() < 1e-12);
      }
  // Inner automorphisms invert exactly.
  StarHom ad = ad_hom(a, testutil::random_blockwise_unitary(a, rng));
  StarHom adInv = invert_iso(ad);
  CHECK(hom_equal(compose_hom(adInv, ad), identity_hom(a), 1e-12));
}

TEST_CASE("intertwiner solving for finite reps") {
  std::mt19937 rng(5);
  FinDimAlgebra a{{2, 1}};
  // Two copies of block 0 and one of block 1, conjugated differently.
  StarHom h1;
  h1.src = a;
  h1.tgt = FinDimAlgebra{{5}};
  h1.mult = Eigen::MatrixXi(1, 2);
  h1.mult << 2, 1;
  h1.conj = {random_unitary(5, rng)};
  StarHom h2 = h1;
  h2.conj = {random_unitary(5, rng)};
  FinRep r1{h1}, r2{h2};
  Mat w = solve_intertwiner_fin(r1, r2);
  for (int s = 0; s < a.numBlocks(); ++s)
    for (int i = 0; i < a.blocks[s]; ++i)
      for (int j = 0; j < a.blocks[s]; ++j) {
        AlgElement e = matrix_unit(a, s, i, j);
        CHECK((w * r1(e) - r2(e) * w).norm() < 1e-10);
      }
  // Different multiplicities are rejected.
  StarHom h3;
  h3.src = a;
  h3.tgt = FinDimAlgebra{{5}};
  h3.mult = Eigen::MatrixXi(1, 2);
  h3.mult << 1, 3;
  h3.conj = {random_unitary(5, rng)};
  CHECK_THROWS_AS(solve_intertwiner_fin(r1, FinRep{h3}), std::runtime_error);
}

TEST_CASE("gns reproduces the state") {
  std::mt19937 rng(7);
  FinDimAlgebra a{{2, 2}};
  State omega = testutil::random_state(a, rng);
  REQUIRE(validate_state(omega).ok());
  GnsResult g = gns(omega);
  for (int trial = 0; trial < 5; ++trial) {
    AlgElement x = random_element(a, rng);
    Cplx viaRep = g.cyclic.dot(g.rep(x) * g.cyclic);
    CHECK(std::abs(viaRep - omega(x)) < 1e-10);
  }
}

TEST_CASE("pull_state is functorial") {
  std::mt19937 rng(13);
  FinDimAlgebra a = testutil::random_small_algebra(rng);
  StarHom f = testutil::random_mono(a, rng);
  State omega = testutil::random_state(f.tgt, rng);
  State pulled = pull_state(f, omega);
  for (int t = 0; t < 5; ++t) {
    AlgElement x = random_element(a, rng);
    CHECK(std::abs(pulled(x) - omega(f(x))) < 1e-10);
  }
}

TEST_CASE("invariant state under an inner automorphism") {
  std::mt19937 rng(23);
  FinDimAlgebra a{{3, 2}};
  StarHom alpha = ad_hom(a, testutil::random_blockwise_unitary(a, rng));
  State omega0 = testutil::random_state(a, rng);
  auto res = invariant_state(alpha, omega0, 1e-8);
  CHECK(res.converged);
  CHECK(res.residual <= 1e-8);
  CHECK(state_distance(pull_state(alpha, res.state), res.state) <= 1e-8);
  CHECK(validate_state(res.state, 1e-6).ok());
}

TEST_CASE("group averaging is exactly invariant") {
  std::mt19937 rng(29);
  FinDimAlgebra a{{2}};
  Mat u(2, 2);
  u << 0, 1, 1, 0;  // order two
  StarHom g = ad_hom(a, {u});
  std::vector<StarHom> group{identity_hom(a), g};
  State omega0 = testutil::random_state(a, rng);
  State avg = average_state_group(group, omega0);
  CHECK(state_distance(pull_state(g, avg), avg) < 1e-14);
  CHECK(validate_state(avg).ok());
  std::vector<StarHom> notGroup{g};  // no identity, not closed
  CHECK_THROWS_AS(average_state_group(notGroup, omega0), std::exception);
}
