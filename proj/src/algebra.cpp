#include "nets/algebra.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <stdexcept>

namespace nets {

int FinDimAlgebra::totalDim() const {
  int d = 0;
  for (int b : blocks) d += b;
  return d;
}

int FinDimAlgebra::linearDim() const {
  int d = 0;
  for (int b : blocks) d += b * b;
  return d;
}

AlgElement AlgElement::adjoint() const {
  AlgElement r{alg, {}};
  for (const auto& x : m) r.m.push_back(x.adjoint());
  return r;
}

double AlgElement::norm() const {
  double n = 0;
  for (const auto& x : m) {
    if (x.size() == 0) continue;
    Eigen::JacobiSVD<Mat> svd(x);
    n = std::max(n, svd.singularValues()(0));
  }
  return n;
}

AlgElement AlgElement::operator+(const AlgElement& o) const {
  AlgElement r{alg, {}};
  for (size_t i = 0; i < m.size(); ++i) r.m.push_back(m[i] + o.m[i]);
  return r;
}

AlgElement AlgElement::operator-(const AlgElement& o) const {
  AlgElement r{alg, {}};
  for (size_t i = 0; i < m.size(); ++i) r.m.push_back(m[i] - o.m[i]);
  return r;
}

AlgElement AlgElement::operator*(const AlgElement& o) const {
  AlgElement r{alg, {}};
  for (size_t i = 0; i < m.size(); ++i) r.m.push_back(m[i] * o.m[i]);
  return r;
}

AlgElement AlgElement::operator*(Cplx c) const {
  AlgElement r{alg, {}};
  for (const auto& x : m) r.m.push_back(x * c);
  return r;
}

AlgElement alg_zero(const FinDimAlgebra& a) {
  AlgElement r{a, {}};
  for (int b : a.blocks) r.m.push_back(Mat::Zero(b, b));
  return r;
}

AlgElement alg_identity(const FinDimAlgebra& a) {
  AlgElement r{a, {}};
  for (int b : a.blocks) r.m.push_back(Mat::Identity(b, b));
  return r;
}

AlgElement matrix_unit(const FinDimAlgebra& a, int s, int i, int j) {
  AlgElement r = alg_zero(a);
  r.m.at(s)(i, j) = 1.0;
  return r;
}

AlgElement random_element(const FinDimAlgebra& a, std::mt19937& rng) {
  std::normal_distribution<double> g;
  AlgElement r{a, {}};
  for (int b : a.blocks) {
    Mat x(b, b);
    for (int i = 0; i < b; ++i)
      for (int j = 0; j < b; ++j) x(i, j) = Cplx(g(rng), g(rng));
    r.m.push_back(std::move(x));
  }
  return r;
}

Mat random_unitary(int n, std::mt19937& rng) {
  std::normal_distribution<double> g;
  Mat x(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) x(i, j) = Cplx(g(rng), g(rng));
  Eigen::HouseholderQR<Mat> qr(x);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    Cplx d = r(i, i);
    if (std::abs(d) > 0) q.col(i) *= d / std::abs(d);
  }
  return q;
}

AlgElement StarHom::operator()(const AlgElement& a) const {
  AlgElement out{tgt, {}};
  for (int t = 0; t < tgt.numBlocks(); ++t) {
    const int nt = tgt.blocks[t];
    Mat d = Mat::Zero(nt, nt);
    int off = 0;
    for (int s = 0; s < src.numBlocks(); ++s) {
      const int ns = src.blocks[s];
      for (int q = 0; q < mult(t, s); ++q) {
        d.block(off, off, ns, ns) = a.m[s];
        off += ns;
      }
    }
    out.m.push_back(conj[t] * d * conj[t].adjoint());
  }
  return out;
}

bool StarHom::injective() const {
  for (int s = 0; s < src.numBlocks(); ++s) {
    bool hit = false;
    for (int t = 0; t < tgt.numBlocks(); ++t)
      if (mult(t, s) > 0) hit = true;
    if (!hit) return false;
  }
  return true;
}

bool StarHom::unital() const {
  for (int t = 0; t < tgt.numBlocks(); ++t) {
    int sum = 0;
    for (int s = 0; s < src.numBlocks(); ++s)
      sum += mult(t, s) * src.blocks[s];
    if (sum != tgt.blocks[t]) return false;
  }
  return true;
}

Cplx State::operator()(const AlgElement& a) const {
  Cplx v = 0;
  for (size_t s = 0; s < rho.size(); ++s) v += (rho[s] * a.m[s]).trace();
  return v;
}

StarHom identity_hom(const FinDimAlgebra& a) {
  StarHom h{a, a, Eigen::MatrixXi::Identity(a.numBlocks(), a.numBlocks()), {}};
  for (int b : a.blocks) h.conj.push_back(Mat::Identity(b, b));
  return h;
}

StarHom ad_hom(const FinDimAlgebra& a, const std::vector<Mat>& u) {
  StarHom h = identity_hom(a);
  h.conj = u;
  return h;
}

Report validate_hom(const StarHom& f) {
  Report r;
  bool dims = f.mult.rows() == f.tgt.numBlocks() &&
              f.mult.cols() == f.src.numBlocks() &&
              static_cast<int>(f.conj.size()) == f.tgt.numBlocks();
  r.add("dims", dims);
  if (!dims) return r;
  bool nonneg = true;
  for (int t = 0; t < f.mult.rows(); ++t)
    for (int s = 0; s < f.mult.cols(); ++s)
      if (f.mult(t, s) < 0) nonneg = false;
  r.add("mult_nonnegative", nonneg);
  r.add(f.unital() ? "unital" : "NotUnital", f.unital());
  double worst = 0;
  for (int t = 0; t < f.tgt.numBlocks(); ++t) {
    const Mat& u = f.conj[t];
    if (u.rows() != f.tgt.blocks[t] || u.cols() != f.tgt.blocks[t]) {
      r.add("conj_dims", false);
      return r;
    }
    worst = std::max(
        worst, (u * u.adjoint() - Mat::Identity(u.rows(), u.rows())).norm());
  }
  r.add("conj_unitary", worst <= 1e-10, worst, 1e-10);
  return r;
}

namespace {

// Row layout of the diagonal-copies arrangement of hom f inside target
// block t: a list of (source block, copy offset) segments.
struct Segment {
  int s;
  int offset;  // row offset within the target block
};

std::vector<Segment> layout(const StarHom& f, int t) {
  std::vector<Segment> out;
  int off = 0;
  for (int s = 0; s < f.src.numBlocks(); ++s)
    for (int q = 0; q < f.mult(t, s); ++q) {
      out.push_back({s, off});
      off += f.src.blocks[s];
    }
  return out;
}

}  // namespace

StarHom compose_hom(const StarHom& g, const StarHom& f) {
  if (!(f.tgt == g.src)) throw std::invalid_argument("compose_hom: Incomposable");
  StarHom h;
  h.src = f.src;
  h.tgt = g.tgt;
  h.mult = g.mult * f.mult;
  for (int u = 0; u < g.tgt.numBlocks(); ++u) {
    const int nu = g.tgt.blocks[u];
    // Inner unitaries: one copy of f.conj[t] per slot of t in g's layout.
    Mat inner = Mat::Zero(nu, nu);
    int off = 0;
    // Composite traversal order: (t, q_t, s, p) with segment rows.
    struct Instance {
      int s;
      int compOffset;
    };
    std::vector<Instance> instances;
    for (int t = 0; t < g.src.numBlocks(); ++t) {
      const int nt = g.src.blocks[t];
      for (int q = 0; q < g.mult(u, t); ++q) {
        inner.block(off, off, nt, nt) = f.conj[t];
        for (const Segment& seg : layout(f, t))
          instances.push_back({seg.s, off + seg.offset});
        off += nt;
      }
    }
    // Canonical order groups instances by source block.
    std::vector<int> canonBase(f.src.numBlocks() + 1, 0);
    {
      std::vector<int> count(f.src.numBlocks(), 0);
      for (const auto& ins : instances) count[ins.s]++;
      for (int s = 0; s < f.src.numBlocks(); ++s)
        canonBase[s + 1] = canonBase[s] + count[s] * f.src.blocks[s];
    }
    Mat perm = Mat::Zero(nu, nu);
    std::vector<int> placed(f.src.numBlocks(), 0);
    for (const auto& ins : instances) {
      const int ns = f.src.blocks[ins.s];
      int canonOffset = canonBase[ins.s] + placed[ins.s] * ns;
      placed[ins.s]++;
      for (int r = 0; r < ns; ++r)
        perm(ins.compOffset + r, canonOffset + r) = 1.0;
    }
    h.conj.push_back(g.conj[u] * inner * perm);
  }
  return h;
}

double hom_distance(const StarHom& f, const StarHom& g) {
  double worst = 0;
  for (int s = 0; s < f.src.numBlocks(); ++s)
    for (int i = 0; i < f.src.blocks[s]; ++i)
      for (int j = 0; j < f.src.blocks[s]; ++j) {
        AlgElement e = matrix_unit(f.src, s, i, j);
        worst = std::max(worst, (f(e) - g(e)).norm());
      }
  return worst;
}

bool hom_equal(const StarHom& f, const StarHom& g, double tol) {
  if (!(f.src == g.src) || !(f.tgt == g.tgt)) return false;
  return hom_distance(f, g) <= tol;
}

StarHom invert_iso(const StarHom& f) {
  const int k = f.src.numBlocks();
  if (f.tgt.numBlocks() != k)
    throw std::invalid_argument("invert_iso: not an isomorphism");
  // mult must be a permutation matrix matching block dimensions.
  std::vector<int> tgtOf(k, -1);
  for (int t = 0; t < k; ++t)
    for (int s = 0; s < k; ++s)
      if (f.mult(t, s) != 0) {
        if (f.mult(t, s) != 1 || tgtOf[s] >= 0 ||
            f.src.blocks[s] != f.tgt.blocks[t])
          throw std::invalid_argument("invert_iso: not an isomorphism");
        tgtOf[s] = t;
      }
  StarHom inv;
  inv.src = f.tgt;
  inv.tgt = f.src;
  inv.mult = Eigen::MatrixXi::Zero(k, k);
  inv.conj.resize(k);
  for (int s = 0; s < k; ++s) {
    if (tgtOf[s] < 0) throw std::invalid_argument("invert_iso: not surjective");
    inv.mult(s, tgtOf[s]) = 1;
    inv.conj[s] = f.conj[tgtOf[s]].adjoint();
  }
  return inv;
}

std::vector<int> multiplicity_vector(const FinRep& r) {
  std::vector<int> v(r.hom.src.numBlocks());
  for (int s = 0; s < r.hom.src.numBlocks(); ++s) v[s] = r.hom.mult(0, s);
  return v;
}

Mat solve_intertwiner_fin(const FinRep& r1, const FinRep& r2, double tol) {
  if (!(r1.hom.src == r2.hom.src))
    throw std::invalid_argument("solve_intertwiner_fin: different algebras");
  if (multiplicity_vector(r1) != multiplicity_vector(r2))
    throw std::runtime_error("NotUnitarilyEquivalent");
  Mat w = r2.hom.conj[0] * r1.hom.conj[0].adjoint();
  // Sanity: verify the intertwining relation on matrix units.
  double worst = 0;
  const auto& alg = r1.hom.src;
  for (int s = 0; s < alg.numBlocks(); ++s)
    for (int i = 0; i < alg.blocks[s]; ++i)
      for (int j = 0; j < alg.blocks[s]; ++j) {
        AlgElement e = matrix_unit(alg, s, i, j);
        worst = std::max(worst, (w * r1(e) - r2(e) * w).norm());
      }
  if (worst > tol)
    throw std::runtime_error("solve_intertwiner_fin: residual " +
                             std::to_string(worst));
  return w;
}

Report validate_state(const State& s, double tol) {
  Report r;
  double tr = 0;
  double minEig = 0, herm = 0;
  for (size_t b = 0; b < s.rho.size(); ++b) {
    const Mat& x = s.rho[b];
    herm = std::max(herm, (x - x.adjoint()).norm());
    Eigen::SelfAdjointEigenSolver<Mat> es(((x + x.adjoint()) / 2.0).eval());
    if (x.rows() > 0) minEig = std::min(minEig, es.eigenvalues().minCoeff());
    tr += x.real().trace();
  }
  r.add("hermitian", herm <= tol * 10, herm, tol * 10);
  r.add("positive", minEig >= -tol, -minEig, tol);
  r.add("normalized", std::abs(tr - 1.0) <= tol, std::abs(tr - 1.0), tol);
  return r;
}

GnsResult gns(const State& omega, double rankTol) {
  const auto& alg = omega.alg;
  std::vector<std::vector<double>> vals(alg.numBlocks());
  std::vector<Mat> vecs(alg.numBlocks());
  std::vector<int> ranks(alg.numBlocks(), 0);
  int dim = 0;
  for (int s = 0; s < alg.numBlocks(); ++s) {
    Mat h = (omega.rho[s] + omega.rho[s].adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    for (int i = es.eigenvalues().size() - 1; i >= 0; --i) {
      double l = es.eigenvalues()(i);
      if (l > rankTol) {
        vals[s].push_back(l);
        ranks[s]++;
      }
    }
    vecs[s] = es.eigenvectors();
    dim += ranks[s] * alg.blocks[s];
  }
  if (dim == 0) throw std::runtime_error("gns: zero state");
  // Canonical multiplicity form: for each block s, ranks[s] copies acting on
  // row coordinates; the copy index runs over the support eigenvectors.
  StarHom hom;
  hom.src = alg;
  hom.tgt = FinDimAlgebra{{dim}};
  hom.mult = Eigen::MatrixXi(1, alg.numBlocks());
  for (int s = 0; s < alg.numBlocks(); ++s) hom.mult(0, s) = ranks[s];
  hom.conj = {Mat::Identity(dim, dim)};
  Eigen::VectorXcd cyc = Eigen::VectorXcd::Zero(dim);
  int off = 0;
  for (int s = 0; s < alg.numBlocks(); ++s) {
    const int ns = alg.blocks[s];
    const int ncols = vecs[s].cols();
    for (int c = 0; c < ranks[s]; ++c) {
      // eigenvalues were collected from largest downwards
      Eigen::VectorXcd u = vecs[s].col(ncols - 1 - c);
      cyc.segment(off, ns) = std::sqrt(vals[s][c]) * u;
      off += ns;
    }
  }
  return {FinRep{std::move(hom)}, std::move(cyc)};
}

State pull_state(const StarHom& phi, const State& omega) {
  State out{phi.src, {}};
  for (int s = 0; s < phi.src.numBlocks(); ++s)
    out.rho.push_back(Mat::Zero(phi.src.blocks[s], phi.src.blocks[s]));
  for (int t = 0; t < phi.tgt.numBlocks(); ++t) {
    Mat r = phi.conj[t].adjoint() * omega.rho[t] * phi.conj[t];
    for (const Segment& seg : layout(phi, t))
      out.rho[seg.s] +=
          r.block(seg.offset, seg.offset, phi.src.blocks[seg.s],
                  phi.src.blocks[seg.s]);
  }
  return out;
}

double state_distance(const State& a, const State& b) {
  double d = 0;
  for (size_t s = 0; s < a.rho.size(); ++s) {
    Mat diff = a.rho[s] - b.rho[s];
    diff = (diff + diff.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Mat> es(diff);
    d += es.eigenvalues().cwiseAbs().sum();
  }
  return d;
}

namespace {

Eigen::VectorXcd state_to_vec(const State& s) {
  Eigen::VectorXcd v(s.alg.linearDim());
  int off = 0;
  for (const auto& m : s.rho) {
    for (int j = 0; j < m.cols(); ++j)
      for (int i = 0; i < m.rows(); ++i) v(off++) = m(i, j);
  }
  return v;
}

State vec_to_state(const FinDimAlgebra& alg, const Eigen::VectorXcd& v) {
  State s{alg, {}};
  int off = 0;
  for (int b : alg.blocks) {
    Mat m(b, b);
    for (int j = 0; j < b; ++j)
      for (int i = 0; i < b; ++i) m(i, j) = v(off++);
    s.rho.push_back(std::move(m));
  }
  return s;
}

// Matrix of the dual (predual) map of alpha on density coordinates.
Mat dual_matrix(const StarHom& alpha) {
  const int L = alpha.src.linearDim();
  if (alpha.tgt.linearDim() != L)
    throw std::invalid_argument("dual_matrix: not an endomorphism space");
  Mat d(L, L);
  for (int c = 0; c < L; ++c) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(L);
    e(c) = 1.0;
    State basis = vec_to_state(alpha.tgt, e);
    d.col(c) = state_to_vec(pull_state(alpha, basis));
  }
  return d;
}

}  // namespace

InvariantStateResult invariant_state(const StarHom& alpha, const State& omega0,
                                     double tol, int maxDoublings) {
  if (!(alpha.src == alpha.tgt))
    throw std::invalid_argument("invariant_state: alpha must be an endomorphism");
  Mat d = dual_matrix(alpha);
  const int L = alpha.src.linearDim();
  Mat avg = Mat::Identity(L, L);  // Cesaro averaging operator for M = 1
  Mat pow = d;                    // d^M
  Eigen::VectorXcd v0 = state_to_vec(omega0);
  InvariantStateResult res;
  long long m = 1;
  for (int k = 0; k <= maxDoublings; ++k) {
    Eigen::VectorXcd v = avg * v0;
    State cur = vec_to_state(alpha.src, v);
    // Hermitize; Cesaro averages of exact states stay states up to rounding.
    for (auto& x : cur.rho) x = (x + x.adjoint()).eval() / 2.0;
    State moved = pull_state(alpha, cur);
    double r = state_distance(moved, cur);
    if (r <= tol) {
      res.state = std::move(cur);
      res.residual = r;
      res.converged = true;
      res.iterations = m;
      return res;
    }
    res.state = std::move(cur);
    res.residual = r;
    res.iterations = m;
    if (k == maxDoublings) break;
    avg = ((avg + pow * avg) / 2.0).eval();
    pow = (pow * pow).eval();
    m *= 2;
  }
  return res;  // converged == false, best iterate attached
}

State average_state_group(const std::vector<StarHom>& group,
                          const State& omega0) {
  if (group.empty()) throw std::invalid_argument("NotAGroup: empty");
  // Closure check: composing any two members lands back in the set.
  for (const auto& g : group)
    for (const auto& h : group) {
      StarHom gh = compose_hom(g, h);
      bool found = false;
      for (const auto& k : group)
        if (hom_equal(gh, k, 1e-8)) {
          found = true;
          break;
        }
      if (!found) throw std::invalid_argument("NotAGroup: not closed");
    }
  State acc{omega0.alg, {}};
  for (int b : omega0.alg.blocks) acc.rho.push_back(Mat::Zero(b, b));
  for (const auto& g : group) {
    State pulled = pull_state(g, omega0);
    for (size_t s = 0; s < acc.rho.size(); ++s) acc.rho[s] += pulled.rho[s];
  }
  for (auto& m : acc.rho) m /= static_cast<double>(group.size());
  return acc;
}

}  // namespace nets
