#pragma once

#include "levilab/cartan.hpp"

namespace levilab {

enum class WeightReality { zero, real, imaginary, complex };

// One joint eigenspace of ad(c) and tau_n. lambda holds the eigenvalues on
// the c_basis columns, a the tau_n eigenvalue (snapped to +-1 when within
// tolerance). space columns are <,>-orthonormal; dimension is 1 whenever
// lambda != 0. coroot is eta_lambda = -[xi, theta xi], empty for lambda = 0.
struct ExtendedWeight {
  VectorXcd lambda;
  cplx a{1, 0};
  MatrixXcd space;
  WeightReality reality = WeightReality::zero;
  VectorXcd coroot;
  int dual = -1;        // index of (-lambda, a^{-1})
  int s2partner = -1;   // index of (conj lambda, a)
  int norm_sign = 0;    // sign in [xi, xi_dual] = sign * coroot, set by levi_basis
};

struct WeightSystem {
  RealFormSetup setup;
  CartanDatum datum;
  MatrixXd taun;        // realified tau_n
  MatrixXcd taun_c;     // its C-linear matrix
  std::vector<ExtendedWeight> weights;
  int zero_index = -1;  // the (0, 1) entry, whose space is c^C
  MatrixXcd cc_basis;   // complexified c_basis columns
  MatrixXcd ita_basis;  // columns i t_1, ..., i t_p, a_1, ..., a_q
  bool levi_basis_applied = false;
};

// The extended weight space decomposition of u^C with respect to ad(c) and
// tau_n, via sequential joint diagonalization of the commuting hermitian
// family i ad(t_k), ad(a_l), and the hermitian and antihermitian parts of
// tau_n, all in <,>-orthonormal coordinates.
WeightSystem extended_decomposition(const RealFormSetup& s, const CartanDatum& d,
                                    const Tolerances& tol = {});

// lambda(eta) for eta given by real coordinates in the c_basis.
cplx lambda_at(const ExtendedWeight& w, const VectorXd& eta);

// Real coordinates of a sigma2-real element of c^C (equivalently of an
// element of it + a) with respect to the basis (i t_k, a_l). Throws if v is
// not in that real span.
VectorXd ita_coordinates(const WeightSystem& ws, const VectorXcd& v,
                         const Tolerances& tol = {});

// Positive system induced by a regular functional on it + a.
struct PositiveSystem {
  VectorXd regular;          // coordinates wrt (i t_k, a_l)
  std::vector<int> sign;     // +1 / -1 per weight, 0 for zero weights
  double margin = 0.0;       // smallest normalized |lambda_hat|
  bool good_ordering = false;
};

// With no regular element supplied, draws seeded random rational combinations
// until the margin test passes.
PositiveSystem positive_system(const WeightSystem& ws,
                               const VectorXd* regular = nullptr,
                               std::uint64_t seed = default_seed(),
                               const Tolerances& tol = {});

// Tries to find an ordering in which every noncompact positive weight is
// larger than every compact one, weighting the center-of-k direction in t by
// 100. noncompact_flag: +1 noncompact, 0 compact, -1 not classified. Reports
// good_ordering = false after 50 failed draws.
PositiveSystem find_good_ordering(const WeightSystem& ws,
                                  const std::vector<int>& noncompact_flag,
                                  std::uint64_t seed = default_seed(),
                                  const Tolerances& tol = {});

// Rebuilds the weight space representatives so that sigma2 xi_{lambda,a} =
// xi_{sigma2 lambda, a} holds exactly and [xi_{lambda,a}, xi_{-lambda,1/a}] =
// +- eta_lambda with the sign recorded in norm_sign. Representatives are
// phase-fixed (largest coordinate real positive) before propagation.
void apply_levi_basis(WeightSystem& ws, const PositiveSystem& pos,
                      const Tolerances& tol = {});

// Coefficients of the real functional lambda_hat on it + a in the basis
// (i t_k, a_l): entries -Im lambda(t_k) followed by Re lambda(a_l). Throws
// when lambda(t_k) is not purely imaginary or lambda(a_l) is not real.
VectorXd lambda_ita_coefficients(const WeightSystem& ws, const ExtendedWeight& w,
                                 const Tolerances& tol = {});

// h, e, f with [h,e] = 2e, [h,f] = -2f, [e,f] = h, built from a nonzero
// weight: e = xi, f = -(2/lambda(eta_lambda)) theta xi, h = [e,f].
struct Sl2Triple {
  VectorXcd h, e, f;
};

Sl2Triple sl2_triple(const WeightSystem& ws, int index, const Tolerances& tol = {});

// Coroot-pairing graph connectivity over the nonzero weights.
bool is_irreducible(const WeightSystem& ws, const Tolerances& tol = {});

// max_m>=2 check: no weight matches (m lambda, a^m).
bool has_weight_multiples(const WeightSystem& ws, const Tolerances& tol = {});

int find_weight(const WeightSystem& ws, const VectorXcd& lambda, cplx a, double match_tol);

}  // namespace levilab
