#pragma once

#include "levilab/types.hpp"

namespace levilab {

// Realification conventions. A complex vector x in C^n is stored as the real
// vector (Re x; Im x) in R^{2n}. Multiplication by i becomes the block matrix
// J = [[0, -I], [I, 0]]. A C-linear map M turns into [[Re M, -Im M],
// [Im M, Re M]]; a C-antilinear map x -> M conj(x) into [[Re M, Im M],
// [Im M, -Re M]]. Real 2n x 2n matrices compose freely, which is what makes
// mixed products like exp(-i ad nu) o sigma1 o exp(i ad nu) o sigma2 painless.

MatrixXd complex_structure(int n);

VectorXd realify(const VectorXcd& x);
VectorXcd complexify(const VectorXd& x);
MatrixXcd complexify_columns(const MatrixXd& basis);
MatrixXd realify_columns(const MatrixXcd& basis);

MatrixXd realify_clinear(const MatrixXcd& m);
MatrixXd realify_antilinear(const MatrixXcd& m);

bool is_clinear(const MatrixXd& op, double tol);
bool is_antilinear(const MatrixXd& op, double tol);

// Inverse of realify_clinear / realify_antilinear. Throws ValidationError if
// the operator does not have the claimed linearity type.
MatrixXcd clinear_part(const MatrixXd& op, double tol);
MatrixXcd antilinear_part(const MatrixXd& op, double tol);

VectorXcd apply_real_op(const MatrixXd& op, const VectorXcd& x);

// Matrix exponential, checked against ||exp(A) exp(-A) - I|| < residual_tol.
MatrixXd expm(const MatrixXd& a, double residual_tol);
MatrixXcd expm(const MatrixXcd& a, double residual_tol);

// Subspace helpers. Bases are matrices whose columns span the space; outputs
// are orthonormal in the standard (euclidean / hermitian) sense. rank_tol is
// relative to the largest singular value.
MatrixXd orthonormal_columns(const MatrixXd& a, double rank_tol);
MatrixXcd orthonormal_columns(const MatrixXcd& a, double rank_tol);
MatrixXd nullspace(const MatrixXd& a, double rank_tol);
MatrixXcd nullspace(const MatrixXcd& a, double rank_tol);
int rank_of(const MatrixXd& a, double rank_tol);

// Intersection of two column spans, orthonormal output.
MatrixXd intersect_spans(const MatrixXd& u, const MatrixXd& v, double rank_tol);

// Largest principal angle (radians) between equal-dimensional spans with
// orthonormal columns. Zero-dimensional spaces compare equal.
double max_principal_angle(const MatrixXcd& u, const MatrixXcd& v);

// Least squares coordinates of y in the column span of basis; residual_out
// receives ||basis * coords - y||.
VectorXcd span_coordinates(const MatrixXcd& basis, const VectorXcd& y,
                           double* residual_out = nullptr);

// Nonnegative least squares, Lawson-Hanson. Returns x >= 0 minimizing
// ||a x - b||.
VectorXd nnls(const MatrixXd& a, const VectorXd& b);

// Does the convex cone generated by the columns of gens equal the whole
// space? Decided by testing membership of +-e_k for every coordinate
// direction. On failure, farkas holds a functional with farkas . g_i <= tol
// for all generators and farkas . b > 0 for the missed direction b.
struct ConeSpanResult {
  bool full = false;
  VectorXd farkas;       // empty when full
  VectorXd missed;       // the direction that is not in the cone
  double worst_residual = 0.0;
};
ConeSpanResult cone_spans_everything(const MatrixXd& gens, double tol);

// Inertia (n_plus, n_minus, n_zero) of a hermitian matrix with eigenvalue
// threshold tol (absolute).
struct Inertia {
  int plus = 0;
  int minus = 0;
  int zero = 0;
  bool operator==(const Inertia&) const = default;
};
Inertia hermitian_inertia(const MatrixXcd& h, double tol);

}  // namespace levilab
