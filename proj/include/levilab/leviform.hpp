#pragma once

#include "levilab/orbit.hpp"

namespace levilab {

// Case dispatch for a quadratic block: reality of lambda crossed with the
// position of a on the unit circle. zero_other collects the (0, a != 1)
// spaces, which pair to zero because u_0 is abelian.
enum class BlockCase {
  real,
  imag_a1,
  imag_am1,
  imag_other,
  complex_a1,
  complex_am1,
  complex_other,
  zero_other,
};

const char* block_case_name(BlockCase c);

// One orbit of the slot involutions (lambda, a) -> (-lambda, 1/a) and
// (lambda, a) -> (sigma2 lambda, a). matrix(r, c) is the coefficient of the
// pairing value of slots r, c with respect to row_direction[r]; for every
// case except the complex ones all rows share transversal = row_direction[0].
struct LeviBlock {
  std::vector<int> index_set;            // weight indices in slot order
  MatrixXcd matrix;
  std::vector<VectorXcd> row_direction;  // c-basis coordinates per slot
  VectorXcd transversal;                 // = row_direction[0]
  BlockCase case_tag = BlockCase::real;
};

enum class ConeCase {
  noncompact_full,
  compact_nontrivial_a_full,
  hermitian_pointed,
  hermitian_outside_cmax_full,
  nonhermitian_full,
};

const char* cone_case_name(ConeCase c);

// Facts about the pair and the base point that the cone case prediction
// consumes. Produced by the domains module; kept as plain data here so the
// cone verdict does not depend on that module.
struct TrichotomyInput {
  bool sigma_equal = false;
  bool hermitian = false;
  bool compact_form = false;
  bool eta_in_cmax = false;
  bool eta_in_minus_cmax = false;
  // Columns are the (i t, a)-coefficient vectors of a positive system; filled
  // when every nonzero weight is noncompact, enabling the dual-chamber check.
  MatrixXd dual_chamber_rays;
};

struct ConeVerdict {
  bool full = false;
  bool pointed = false;
  ConeCase cone_case = ConeCase::noncompact_full;
  bool stein_obstruction = false;
  VectorXd farkas;   // supporting functional when the cone is not full
  bool reducible_warning = false;
};

struct LeviReport {
  OrbitProfile profile;
  std::vector<LeviBlock> blocks;
  double cross_block_residual = 0.0;
  bool hypersurface = false;      // dim c == 1
  MatrixXcd hypersurface_matrix;  // scalar form in a fixed normal direction
  Inertia hypersurface_inertia;
  std::vector<VectorXd> cone_generators;
  bool cone_decided = false;
  ConeVerdict cone;
};

// Levi form value of the representatives of weights i, j at z = exp(i eta):
// i/(a e^{-2 i lambda(eta)} - 1) [xi_i, sigma2 xi_j] when the combined pair
// (lambda_i + sigma2 lambda_j, a_i a_j) has multiplier 1 at eta, else zero.
// The raw variant returns the ambient value; levi_pairing expresses it in
// c-basis coordinates and refuses values outside c^C.
VectorXcd levi_pairing_raw(const WeightSystem& ws, const BasePoint& base,
                           int i, int j, const Tolerances& tol = {});
VectorXcd levi_pairing(const WeightSystem& ws, const BasePoint& base,
                       int i, int j, const Tolerances& tol = {});

// Closed-form Hermitian blocks of the quadratic Levi form at a strongly
// regular base point, one per slot orbit.
std::vector<LeviBlock> quadratic_blocks(const WeightSystem& ws,
                                        const BasePoint& base,
                                        const Tolerances& tol = {});

// Blocks plus the cross-block orthogonality check; when dim c = 1 also the
// assembled scalar Hermitian matrix and its inertia, oriented so that a = 1
// blocks are positive definite. Cone fields are left undecided.
LeviReport levi_matrix(const WeightSystem& ws, const BasePoint& base,
                       const Tolerances& tol = {});

// Levi cone generators in (i t, a) coordinates.
std::vector<VectorXd> cone_generators(const WeightSystem& ws,
                                      const BasePoint& base,
                                      const Tolerances& tol = {});

// Fullness by positive-spanning of the generators, pointedness by membership
// of the negated generators, and the case label predicted from the input
// facts. Prediction and measurement must agree unless the weight system is
// reducible, in which case the generator verdict wins and a warning is set.
ConeVerdict cone_verdict(const WeightSystem& ws, const BasePoint& base,
                         const TrichotomyInput& input,
                         const Tolerances& tol = {});

// levi_matrix plus generators plus verdict in one report.
LeviReport levi_report(const WeightSystem& ws, const BasePoint& base,
                       const TrichotomyInput& input,
                       const Tolerances& tol = {});

}  // namespace levilab
