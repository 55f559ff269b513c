#pragma once

#include "levilab/numeric.hpp"

namespace levilab {

// A complex semisimple Lie algebra given by its structure tensor in a fixed
// basis e_1, ..., e_n. ad[i] is the matrix of ad(e_i), so the structure
// constants are c_{ij}^k = ad[i](k, j). killing(i, j) = B(e_i, e_j) is
// computed as tr(ad(e_i) ad(e_j)).
struct LieAlgebra {
  int dim = 0;
  std::vector<std::string> labels;
  std::vector<MatrixXcd> ad;
  MatrixXcd killing;
};

// brackets[i][j] holds the coordinates of [e_i, e_j]. Antisymmetry and the
// Jacobi identity are validated; the Killing form must be nondegenerate.
LieAlgebra make_algebra(std::vector<std::string> labels,
                        const std::vector<std::vector<VectorXcd>>& brackets,
                        const Tolerances& tol = {});

VectorXcd bracket(const LieAlgebra& g, const VectorXcd& x, const VectorXcd& y);
MatrixXcd ad_of(const LieAlgebra& g, const VectorXcd& x);
cplx killing_form(const LieAlgebra& g, const VectorXcd& x, const VectorXcd& y);

// sl(n, C) for n = 2 or 3, basis: off-diagonal units E_ij in row-major order,
// then H_k = E_kk - E_{k+1,k+1}.
LieAlgebra build_sl(int n, const Tolerances& tol = {});

// The matrix realization behind build_sl, in basis order.
std::vector<MatrixXcd> sl_matrix_basis(int n);

// Coordinates of a traceless n x n matrix in the sl basis.
VectorXcd sl_coordinates(int n, const MatrixXcd& x);
MatrixXcd sl_matrix_of(int n, const VectorXcd& coords);

// Direct sum with labels prefixed g1:, g2:, ...
LieAlgebra direct_sum(const std::vector<LieAlgebra>& parts, const Tolerances& tol = {});

// A C-linear or C-antilinear involutive automorphism, stored as its action on
// the realification.
struct Involution {
  MatrixXd op;
  bool antilinear = false;
  std::string label;
};

// Validates involutivity, linearity type, and the automorphism property.
Involution make_involution(const LieAlgebra& g, const MatrixXd& op, std::string label,
                           const Tolerances& tol = {});

VectorXcd apply(const Involution& s, const VectorXcd& x);

// Involutions commuting with theta, the hermitian form <x,y> = -B(x, theta y),
// and the fixed-space bases everything downstream works with. Bases are
// realified column vectors, orthonormal for Re<,>.
struct RealFormSetup {
  LieAlgebra g;
  Involution theta, sigma1, sigma2;
  MatrixXd g1, g2, k1, p1, k2, p2;
  MatrixXcd gram;          // <e_i, e_j>, hermitian positive definite
  MatrixXcd gram_chol;     // lower Cholesky factor of gram
  MatrixXd gram_real;      // Re<,> on the realification
};

RealFormSetup make_setup(const LieAlgebra& g, const Involution& theta,
                         const Involution& sigma1, const Involution& sigma2,
                         const Tolerances& tol = {});

cplx hermitian_inner(const RealFormSetup& s, const VectorXcd& x, const VectorXcd& y);

// Fixed space of an involution as a Re<,>-orthonormal realified basis.
MatrixXd fixed_subspace(const RealFormSetup& s, const MatrixXd& op, const Tolerances& tol = {});

// Intersection helpers on realified bases, orthonormal for Re<,>.
MatrixXd meet(const RealFormSetup& s, const MatrixXd& u, const MatrixXd& v,
              const Tolerances& tol = {});

// k and p parts (theta = +1 / -1) of the span of a realified basis.
std::pair<MatrixXd, MatrixXd> cartan_decompose(const RealFormSetup& s, const MatrixXd& space,
                                               const Tolerances& tol = {});

}  // namespace levilab
