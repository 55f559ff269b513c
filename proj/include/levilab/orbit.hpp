#pragma once

#include "levilab/weights.hpp"

namespace levilab {

// Base point z = n exp(i eta). eta holds real coordinates with respect to
// the columns of the datum's c_basis.
struct BasePoint {
  VectorXd eta;
};

struct OrbitProfile {
  BasePoint base;
  std::vector<cplx> multiplier;      // a e^{-2 i lambda(eta)} per weight
  std::vector<int> lambda_tilde_z;   // indices with |multiplier - 1| below tolerance
  std::vector<int> complex_tangent_indices;  // the complementary nonzero indices
  int codim = 0;
  bool strongly_regular = false;
  bool near_degenerate = false;      // an excluded multiplier sits within 1e-5 of 1
  double nearest_offset = 0.0;       // min |multiplier - 1| over excluded weights
};

// Indices of the extended weights whose multiplier a e^{-2 i lambda(eta)}
// equals 1 within tol.membership.
std::vector<int> lambda_tilde(const WeightSystem& ws, const BasePoint& base,
                              const Tolerances& tol = {});

// Realified matrix of exp(-i ad eta) tau_n exp(-i ad eta).
MatrixXd tau_z_operator(const WeightSystem& ws, const BasePoint& base,
                        const Tolerances& tol = {});

// Fills the profile and asserts that the eigenvalue-1 space of tau_z agrees
// with the span of the lambda_tilde_z weight spaces.
OrbitProfile orbit_profile(const WeightSystem& ws, const BasePoint& base,
                           const Tolerances& tol = {});

}  // namespace levilab
