#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <vector>

#include "nets/report.hpp"

namespace nets {

using Mat = Eigen::MatrixXcd;
using Cplx = std::complex<double>;

// Direct sum of full complex matrix blocks.
struct FinDimAlgebra {
  std::vector<int> blocks;

  int numBlocks() const { return static_cast<int>(blocks.size()); }
  int totalDim() const;       // sum of block sizes (Hilbert space dim)
  int linearDim() const;      // sum of squared block sizes

  bool operator==(const FinDimAlgebra& o) const { return blocks == o.blocks; }
};

struct AlgElement {
  FinDimAlgebra alg;
  std::vector<Mat> m;

  AlgElement adjoint() const;
  double norm() const;  // max block spectral norm

  AlgElement operator+(const AlgElement& o) const;
  AlgElement operator-(const AlgElement& o) const;
  AlgElement operator*(const AlgElement& o) const;
  AlgElement operator*(Cplx c) const;
};

AlgElement alg_zero(const FinDimAlgebra& a);
AlgElement alg_identity(const FinDimAlgebra& a);
// Matrix unit e_{ij} in block s, zero elsewhere.
AlgElement matrix_unit(const FinDimAlgebra& a, int s, int i, int j);
AlgElement random_element(const FinDimAlgebra& a, std::mt19937& rng);
Mat random_unitary(int n, std::mt19937& rng);

// Unital *-homomorphism in structural form: integer multiplicity matrix and
// one conjugating unitary per target block. On target block t the action is
//   phi(a)_t = conj[t] * diag(mult[t][0] copies of a_0, ...) * conj[t]^*,
// copies ordered by source block index.
struct StarHom {
  FinDimAlgebra src, tgt;
  Eigen::MatrixXi mult;        // numBlocks(tgt) x numBlocks(src)
  std::vector<Mat> conj;

  AlgElement operator()(const AlgElement& a) const;
  bool injective() const;      // every source block reaches some target block
  bool unital() const;         // row dimension sums match target blocks
};

struct State {
  FinDimAlgebra alg;
  std::vector<Mat> rho;        // density components, trace pairing

  Cplx operator()(const AlgElement& a) const;
};

// Representation on a single full matrix block.
struct FinRep {
  StarHom hom;                 // tgt must have exactly one block

  int dim() const { return hom.tgt.blocks.at(0); }
  Mat operator()(const AlgElement& a) const { return hom(a).m.at(0); }
};

StarHom identity_hom(const FinDimAlgebra& a);
// Inner automorphism Ad(u) of a, with u given blockwise.
StarHom ad_hom(const FinDimAlgebra& a, const std::vector<Mat>& u);

Report validate_hom(const StarHom& f);

StarHom compose_hom(const StarHom& g, const StarHom& f);
bool hom_equal(const StarHom& f, const StarHom& g, double tol);
double hom_distance(const StarHom& f, const StarHom& g);

// Inverse of a *-isomorphism (mult must be a permutation matrix).
StarHom invert_iso(const StarHom& f);

std::vector<int> multiplicity_vector(const FinRep& r);

// Unitary w with w r1(a) = r2(a) w; exists iff multiplicity vectors agree.
// Throws std::runtime_error("NotUnitarilyEquivalent") otherwise.
Mat solve_intertwiner_fin(const FinRep& r1, const FinRep& r2, double tol = 1e-10);

Report validate_state(const State& s, double tol = 1e-12);

struct GnsResult {
  FinRep rep;
  Eigen::VectorXcd cyclic;
};
GnsResult gns(const State& omega, double rankTol = 1e-12);

// Pullback of a density along a hom: (omega . phi) as a density on src.
State pull_state(const StarHom& phi, const State& omega);

double state_distance(const State& a, const State& b);  // trace-norm sum

struct InvariantStateResult {
  State state;
  double residual = 0;   // ||omega . alpha - omega||_1
  bool converged = false;
  long long iterations = 0;
};
// Cesaro averaging of omega0 under the dual of the automorphism alpha,
// accelerated by doubling so tight tolerances stay cheap.
InvariantStateResult invariant_state(const StarHom& alpha, const State& omega0,
                                     double tol = 1e-8, int maxDoublings = 48);

// Exact average over a finite group of automorphisms (closure is checked).
State average_state_group(const std::vector<StarHom>& group, const State& omega0);

}  // namespace nets
