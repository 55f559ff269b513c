#pragma once

#include "levilab/leviform.hpp"

namespace levilab {

// Z(k1) != 0 test. Only defined when sigma1 = sigma2; applicable reports
// whether that precondition held.
struct HermitianType {
  bool applicable = false;
  bool hermitian = false;
};

HermitianType hermitian_type(const RealFormSetup& s, const Tolerances& tol = {});

enum class WeightCompactness { compact, noncompact };

// Decides compactness of an imaginary (lambda, 1) weight through the real
// three-dimensional subalgebra spanned by xi + sigma2 xi, i(xi - sigma2 xi)
// and i eta_lambda: compact exactly when the Killing form is negative
// definite there.
WeightCompactness classify_weight_compactness(const WeightSystem& ws, int index,
                                              const Tolerances& tol = {});

struct CmaxResult {
  bool defined = false;        // compact datum and a good ordering was found
  bool inside = false;         // i lambda(eta) >= -1e-10 for noncompact positives
  bool interior = false;       // strict at margin 1e-8
  bool mirror_inside = false;  // same tests for -eta
  bool mirror_interior = false;
  PositiveSystem ordering;
  std::vector<int> noncompact_flag;  // +1 noncompact, 0 compact, -1 unclassified
};

CmaxResult cmax_membership(const WeightSystem& ws, const VectorXd& eta,
                           std::uint64_t seed = default_seed(),
                           const Tolerances& tol = {});

// Inertia of the scalar hypersurface Levi matrix with q = n_minus,
// cross-checked against the rank-one counting formulas.
struct Rank1Signature {
  Inertia inertia;
  int q = 0;
};

Rank1Signature rank1_signature(const WeightSystem& ws, const LeviReport& report,
                               std::uint64_t seed = default_seed(),
                               const Tolerances& tol = {});

// q-completeness count for compact data: the theorem form
// rk + #{(lambda,1) positive} + #{(lambda,-1) positive} + #{a != +-1 positive}
// and the variant appearing in its proof; disagreement is reported, not
// treated as an error.
struct QCount {
  int theorem_count = 0;
  int proof_count = 0;
  bool discrepancy = false;
};

QCount q_completeness_count(const WeightSystem& ws,
                            std::uint64_t seed = default_seed(),
                            const Tolerances& tol = {});

// Collects the facts the cone-case prediction needs.
TrichotomyInput trichotomy_input(const WeightSystem& ws, const VectorXd& eta,
                                 std::uint64_t seed = default_seed(),
                                 const Tolerances& tol = {});

// cone_verdict with the trichotomy input assembled here.
ConeVerdict cone_with_context(const WeightSystem& ws, const BasePoint& base,
                              std::uint64_t seed = default_seed(),
                              const Tolerances& tol = {});

struct DomainReport {
  bool rank1_defined = false;
  Rank1Signature rank1;
  bool cmax_defined = false;
  bool eta_in_cmax = false;
  bool eta_in_cmax_interior = false;
  bool q_defined = false;
  QCount q_complete;
  bool hermitian_applicable = false;
  bool hermitian = false;
  std::vector<int> compactness_flag;  // per weight, as in CmaxResult
};

DomainReport domain_report(const WeightSystem& ws, const BasePoint& base,
                           std::uint64_t seed = default_seed(),
                           const Tolerances& tol = {});

}  // namespace levilab
