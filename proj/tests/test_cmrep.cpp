#include <doctest.h>

#include "nets/cmrep.hpp"
#include "testutil.hpp"

using namespace nets;

namespace {

SparseVec basis_vec(const BasisIndex& b) { return SparseVec{{b, Cplx(1)}}; }

}  // namespace

TEST_CASE("canonical action is a homomorphism, identical on copies") {
  std::mt19937 rng(3);
  FinDimAlgebra a{{2, 3}};
  CMRep rep = cm_rep(a);
  AlgElement x = random_element(a, rng), y = random_element(a, rng);
  for (const BasisIndex& b : probe_indices(a, 3)) {
    SparseVec v = basis_vec(b);
    SparseVec xy = cm_apply(rep, x * y, v);
    SparseVec x_then_y = cm_apply(rep, x, cm_apply(rep, y, v));
    CHECK(vec_norm(vec_sub(xy, x_then_y)) < 1e-12);
  }
  // Copy independence: action on copy 0 and copy 17 agree entrywise.
  SparseVec v0 = cm_apply(rep, x, basis_vec({0, 1, 0}));
  SparseVec v17 = cm_apply(rep, x, basis_vec({0, 1, 17}));
  for (const auto& [k, val] : v0)
    CHECK(std::abs(val - v17.at({k.block, k.row, 17})) < 1e-15);
}

TEST_CASE("symbolic words are unitary with exact inverses") {
  std::mt19937 rng(9);
  FinDimAlgebra a = testutil::random_small_algebra(rng);
  StarHom f = testutil::random_mono(a, rng);
  RestrictedCMRep r = restrict_cm(cm_rep(f.tgt), f);
  for (const BasisIndex& b : probe_indices(f.tgt, 3)) {
    SparseVec v = basis_vec(b);
    SparseVec w = nets::apply(r.toCanonical, v);
    CHECK(vec_norm(w) == doctest::Approx(1.0).epsilon(1e-12));
    SparseVec back = nets::apply(r.toCanonical.inverse(), w);
    CHECK(vec_norm(vec_sub(back, v)) < 1e-12);
  }
}

TEST_CASE("restriction is carried onto the canonical representation") {
  std::mt19937 rng(17);
  FinDimAlgebra a = testutil::random_small_algebra(rng);
  StarHom f = testutil::random_mono(a, rng);
  RestrictedCMRep r = restrict_cm(cm_rep(f.tgt), f);
  CMRep can = cm_rep(a);
  AlgElement x = random_element(a, rng);
  for (const BasisIndex& b : probe_indices(f.tgt, 4)) {
    SparseVec v = basis_vec(b);
    // W pi(f(x)) v == can(x) W v
    SparseVec lhs = nets::apply(r.toCanonical, restricted_apply(r, x, v));
    SparseVec rhs = cm_apply(can, x, nets::apply(r.toCanonical, v));
    CHECK(vec_norm(vec_sub(lhs, rhs)) < 1e-12);
  }
}

TEST_CASE("solve_intertwiner_cm intertwines two restrictions") {
  std::mt19937 rng(21);
  FinDimAlgebra a = testutil::random_small_algebra(rng);
  StarHom f1 = testutil::random_mono(a, rng);
  StarHom f2 = testutil::random_mono(a, rng);
  RestrictedCMRep r1 = restrict_cm(cm_rep(f1.tgt), f1);
  RestrictedCMRep r2 = restrict_cm(cm_rep(f2.tgt), f2);
  SymbolicUnitary w = solve_intertwiner_cm(r1, r2);
  AlgElement x = random_element(a, rng);
  for (const BasisIndex& b : probe_indices(f1.tgt, 4)) {
    SparseVec v = basis_vec(b);
    SparseVec lhs = nets::apply(w, restricted_apply(r1, x, v));
    SparseVec rhs = restricted_apply(r2, x, nets::apply(w, v));
    CHECK(vec_norm(vec_sub(lhs, rhs)) < 1e-12);
  }
}

TEST_CASE("restrict_cm rejects non-monomorphisms") {
  // Projection onto the first block is unital but kills the second block.
  StarHom p;
  p.src = FinDimAlgebra{{1, 1}};
  p.tgt = FinDimAlgebra{{1}};
  p.mult = Eigen::MatrixXi(1, 2);
  p.mult << 1, 0;
  p.conj = {Mat::Identity(1, 1)};
  CHECK_THROWS(restrict_cm(cm_rep(p.tgt), p));
}
