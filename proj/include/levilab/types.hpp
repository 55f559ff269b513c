#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace levilab {

using cplx = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

// Input or precondition problems. Mapped to exit code 2 by the CLI.
struct ValidationError : std::runtime_error {
  std::string code;
  ValidationError(std::string c, const std::string& what)
      : std::runtime_error(c + ": " + what), code(std::move(c)) {}
};

// Numerical degeneracy (ill-conditioned clusters, near-singular coefficients,
// unstable oracle steps). Mapped to exit code 3 by the CLI.
struct NumericalError : std::runtime_error {
  std::string code;
  NumericalError(std::string c, const std::string& what)
      : std::runtime_error(c + ": " + what), code(std::move(c)) {}
};

// Every threshold used anywhere in the library, with its default.
// Keys for overrides are the field names.
struct Tolerances {
  double jacobi = 1e-10;            // structure tensor Jacobi identity
  double automorphism = 1e-9;       // involutions respect brackets
  double involution = 1e-10;        // squares to identity, commutation with theta
  double eigen_residual = 1e-8;     // weight space eigen residuals
  double tau_unitary = 1e-9;        // tau_n unitarity wrt <,>
  double rank = 1e-8;               // relative SVD rank threshold
  double cluster = 1e-8;            // absolute eigenvalue clustering
  double membership = 1e-8;         // |a e^{-2 i lambda(eta)} - 1| test
  double near_degenerate = 1e-5;    // upper edge of the warning band
  double near_singular = 1e-10;     // coefficient abort threshold
  double block_hermitian = 1e-10;
  double equivalence = 1e-9;        // pairing formula vs block formulas
  double cross_block = 1e-9;
  double lp_margin = 1e-9;
  double inertia_eig = 1e-8;
  double oracle_inertia = 1e-4;     // eigenvalue threshold for the extrinsic Hessian
  double oracle_invariance = 1e-9;
  double regular_margin = 1e-6;
  double snap_a = 1e-8;             // snap tau eigenvalues to +-1
  double adjoint_residual = 1e-7;
  double principal_angle = 1e-7;
  double fixed_residual = 1e-8;     // c inside the two fixed spaces
  double tau_fixes_c = 1e-9;
  double expm_residual = 1e-10;
  double sigma_equal = 1e-10;       // sigma1 == sigma2 as operators

  void set(const std::string& key, double value);
  static std::vector<std::string> keys();
};

// 42 unless the environment variable LEVILAB_SEED overrides it.
std::uint64_t default_seed();

}  // namespace levilab
