#pragma once

#include <random>

#include "levilab/leviform.hpp"

namespace levilab {

// Extrinsic finite-difference oracle. The probe materializes actual group
// matrices: a point z in SL(2,C) together with an invariant defining function
// rho whose level set through z is the orbit hypersurface. This is the only
// place matrices of the group itself (rather than ad-operators) appear.
//
// Certified defining functions, J = diag(1,-1):
//   theta-theta  rho(z) = tr(z* z)
//   theta-s11    rho(z) = tr(z* z J)
//   s11-theta    rho(z) = tr(z* J z)
//   s11-s11      rho(z) = tr(J z* J z)
// Certification is by the sampled invariance test below; pairs without a
// certified rho (sl3, products) are exempt from extrinsic checking.
struct ExtrinsicProbe {
  int matrix_dim = 2;
  std::string defining_function;  // printable formula
  std::string pair;               // selects rho and the invariance groups
  MatrixXcd point;
  double step = 1e-4;
};

bool has_certified_probe(const std::string& pair);

// Probe at z = diag(e^{-s}, e^{s}) on the curated slice.
ExtrinsicProbe hypersurface_probe(const std::string& pair, double slice,
                                  double step = 1e-4);

double probe_value(const ExtrinsicProbe& probe, const MatrixXcd& z);

// max |rho(g1 z g2^{-1}) - rho(z)| over sampled (g1, g2) near the identity.
double invariance_residual(const ExtrinsicProbe& probe, int samples = 50,
                           std::uint64_t seed = default_seed());

// d rho at the probe point in the chart z exp(w1 E1 + w2 E2 + w3 E3).
VectorXcd probe_gradient(const ExtrinsicProbe& probe);

// Complex Hessian of rho in the exponential chart by central differences,
// Richardson-extrapolated once, restricted to the kernel of d rho (the
// complex tangent of the level set). Signs are reported so that the count
// matches the intrinsic convention up to the choice of normal direction.
Inertia extrinsic_levi_inertia(const ExtrinsicProbe& probe,
                               const Tolerances& tol = {});

// Reconstructs ad(c_k) and tau_n from the stored weight data as
// sum lambda(c_k) P and sum a P over <,>-orthogonal projectors P onto the
// weight spaces, and compares with the directly built operators.
struct AdjointCheck {
  bool spans = false;               // weight spaces span all of u^C
  std::vector<double> ad_residual;  // operator norm per c_basis column
  double taun_residual = 0.0;
  double c_block_residual = 0.0;    // restriction to the zero-weight space
  double worst = 0.0;
};

AdjointCheck adjoint_crosscheck(const WeightSystem& ws,
                                const Tolerances& tol = {});

// Strongly regular, not near-degenerate base point, drawn by rejection.
BasePoint random_regular_base(const WeightSystem& ws, std::mt19937_64& rng,
                              const Tolerances& tol = {});

// Max entrywise deviation between the pairing formula evaluated weight by
// weight and the assembled quadratic blocks. The blocks argument lets test
// fixtures tamper with one entry to confirm harness sensitivity.
double block_deviation(const WeightSystem& ws, const BasePoint& base,
                       const std::vector<LeviBlock>& blocks,
                       const Tolerances& tol = {});

double formula_equivalence(const WeightSystem& ws, const BasePoint& base,
                           const Tolerances& tol = {});

// Max deviation over `trials` random strongly regular base points.
double formula_equivalence_trials(const WeightSystem& ws, int trials,
                                  std::uint64_t seed,
                                  const Tolerances& tol = {});

}  // namespace levilab
