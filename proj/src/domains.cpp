#include "levilab/domains.hpp"

#include <algorithm>
#include <cmath>

namespace levilab {

namespace {

const cplx kI{0.0, 1.0};

bool sigmas_equal(const RealFormSetup& s, const Tolerances& tol) {
  return (s.sigma1.op - s.sigma2.op).cwiseAbs().maxCoeff() < tol.sigma_equal;
}

bool a_is(cplx a, double target, const Tolerances& tol) {
  return std::abs(a - target) < tol.snap_a;
}

}  // namespace

HermitianType hermitian_type(const RealFormSetup& s, const Tolerances& tol) {
  HermitianType ht;
  if (!sigmas_equal(s, tol)) return ht;
  ht.applicable = true;

  const MatrixXd& k1 = s.k1;
  const int d = static_cast<int>(k1.cols());
  if (d == 0) return ht;
  MatrixXd stacked(2 * s.g.dim * d, d);
  for (int j = 0; j < d; ++j) {
    VectorXcd wj = complexify(k1.col(j));
    for (int c = 0; c < d; ++c)
      stacked.block(2 * s.g.dim * j, c, 2 * s.g.dim, 1) =
          realify(bracket(s.g, complexify(k1.col(c)), wj));
  }
  int centralizer_dim = d - rank_of(stacked, tol.rank);
  ht.hermitian = centralizer_dim >= 1;
  return ht;
}

WeightCompactness classify_weight_compactness(const WeightSystem& ws, int index,
                                              const Tolerances& tol) {
  const RealFormSetup& s = ws.setup;
  if (ws.datum.a_dim != 0)
    throw ValidationError("unsupported",
                          "weight compactness needs a compact datum");
  if (!sigmas_equal(s, tol))
    throw ValidationError("unsupported",
                          "weight compactness needs sigma1 = sigma2");
  if (index < 0 || index >= static_cast<int>(ws.weights.size()))
    throw ValidationError("invalid-argument", "weight index out of range");
  const ExtendedWeight& w = ws.weights[index];
  if (w.reality != WeightReality::imaginary || !a_is(w.a, 1.0, tol))
    throw ValidationError("unsupported",
                          "weight compactness is defined for imaginary (lambda, 1)");

  VectorXcd xi = w.space.col(0);
  VectorXcd s2xi = levilab::apply(s.sigma2, xi);
  std::vector<VectorXcd> span = {xi + s2xi, kI * (xi - s2xi), kI * w.coroot};
  MatrixXd gram(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      cplx b = killing_form(s.g, span[i], span[j]);
      if (std::abs(b.imag()) > tol.rank * std::max(1.0, std::abs(b)))
        throw NumericalError("indefinite-classification",
                             "Killing gram of s_lambda is not real");
      gram(i, j) = b.real();
    }
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(gram);
  double lo = es.eigenvalues().minCoeff();
  double hi = es.eigenvalues().maxCoeff();
  double thr = tol.rank * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
  if (hi < -thr) return WeightCompactness::compact;
  if (hi > thr) return WeightCompactness::noncompact;
  throw NumericalError("indefinite-classification",
                       "Killing form on s_lambda is numerically degenerate");
}

// The reflection attached to lambda is realized in K1 cap K2 exactly when
// that compact subalgebra meets the (+-lambda) weight spaces: together with t
// such an element generates the rotation flipping eta. This extends the
// Killing-sign test to weights with a != 1 and to distinct real forms.
bool reflection_in_compact_isotropy(const WeightSystem& ws, int index,
                                    const Tolerances& tol) {
  const RealFormSetup& s = ws.setup;
  const ExtendedWeight& wi = ws.weights[index];
  MatrixXd kk = meet(s, s.k1, s.k2, tol);
  if (kk.cols() == 0) return false;

  int cols = 0;
  for (const ExtendedWeight& w : ws.weights)
    if (w.reality != WeightReality::zero &&
        ((w.lambda - wi.lambda).norm() < tol.cluster ||
         (w.lambda + wi.lambda).norm() < tol.cluster))
      cols += 2 * static_cast<int>(w.space.cols());
  MatrixXd stack(2 * s.g.dim, cols);
  int at = 0;
  for (const ExtendedWeight& w : ws.weights) {
    if (w.reality == WeightReality::zero ||
        ((w.lambda - wi.lambda).norm() >= tol.cluster &&
         (w.lambda + wi.lambda).norm() >= tol.cluster))
      continue;
    for (int c = 0; c < w.space.cols(); ++c) {
      stack.col(at++) = realify(VectorXcd(w.space.col(c)));
      stack.col(at++) = realify(VectorXcd(kI * w.space.col(c)));
    }
  }
  return intersect_spans(kk, stack, tol.rank).cols() > 0;
}

CmaxResult cmax_membership(const WeightSystem& ws, const VectorXd& eta,
                           std::uint64_t seed, const Tolerances& tol) {
  CmaxResult res;
  const int nw = static_cast<int>(ws.weights.size());
  res.noncompact_flag.assign(nw, -1);
  if (ws.datum.a_dim != 0) return res;

  bool se = sigmas_equal(ws.setup, tol);
  for (int i = 0; i < nw; ++i) {
    const ExtendedWeight& w = ws.weights[i];
    if (w.reality != WeightReality::imaginary) continue;
    if (se && a_is(w.a, 1.0, tol))
      res.noncompact_flag[i] =
          classify_weight_compactness(ws, i, tol) == WeightCompactness::noncompact
              ? 1
              : 0;
    else
      res.noncompact_flag[i] = reflection_in_compact_isotropy(ws, i, tol) ? 0 : 1;
  }

  res.ordering = find_good_ordering(ws, res.noncompact_flag, seed, tol);
  res.defined = res.ordering.good_ordering;
  if (!res.defined) return res;

  res.inside = res.interior = true;
  res.mirror_inside = res.mirror_interior = true;
  for (int i = 0; i < nw; ++i) {
    if (res.noncompact_flag[i] != 1 || res.ordering.sign[i] != 1) continue;
    double val = (kI * lambda_at(ws.weights[i], eta)).real();
    res.inside = res.inside && val >= -1e-10;
    res.interior = res.interior && val >= 1e-8;
    res.mirror_inside = res.mirror_inside && -val >= -1e-10;
    res.mirror_interior = res.mirror_interior && -val >= 1e-8;
  }
  return res;
}

Rank1Signature rank1_signature(const WeightSystem& ws, const LeviReport& report,
                               std::uint64_t seed, const Tolerances& tol) {
  if (ws.datum.rank() != 1 || !report.hypersurface ||
      report.profile.codim != 1)
    throw ValidationError("unsupported",
                          "signature count needs a rank-one hypersurface orbit");
  Rank1Signature sig;
  sig.inertia = report.hypersurface_inertia;
  sig.q = sig.inertia.minus;

  PositiveSystem pos = positive_system(ws, nullptr, seed, tol);
  int expected = 0;
  if (ws.datum.a_dim > 0) {
    for (size_t i = 0; i < ws.weights.size(); ++i)
      if (pos.sign[i] == 1) ++expected;
  } else {
    for (size_t i = 0; i < ws.weights.size(); ++i) {
      const ExtendedWeight& w = ws.weights[i];
      if (w.reality == WeightReality::zero || pos.sign[i] != 1) continue;
      if (a_is(w.a, -1.0, tol))
        ++expected;
      else if (!a_is(w.a, 1.0, tol))
        ++expected;
    }
  }
  if (sig.q != expected)
    throw NumericalError("signature-mismatch",
                         "measured n_minus disagrees with the counting formula");
  return sig;
}

QCount q_completeness_count(const WeightSystem& ws, std::uint64_t seed,
                            const Tolerances& tol) {
  if (ws.datum.a_dim != 0)
    throw ValidationError("not-applicable",
                          "q-completeness count needs a compact datum");
  PositiveSystem pos = positive_system(ws, nullptr, seed, tol);

  int pos_a1 = 0, pos_am1 = 0, pos_other = 0, all_a1 = 0, all_other = 0;
  for (size_t i = 0; i < ws.weights.size(); ++i) {
    const ExtendedWeight& w = ws.weights[i];
    if (w.reality == WeightReality::zero) continue;
    bool a1 = a_is(w.a, 1.0, tol);
    bool am1 = a_is(w.a, -1.0, tol);
    if (a1) ++all_a1;
    if (!a1 && !am1) ++all_other;
    if (pos.sign[i] != 1) continue;
    if (a1)
      ++pos_a1;
    else if (am1)
      ++pos_am1;
    else
      ++pos_other;
  }

  QCount q;
  q.theorem_count = ws.datum.rank() + pos_a1 + pos_am1 + pos_other;
  q.proof_count = ws.datum.t_dim + all_a1 + pos_am1 + all_other;
  q.discrepancy = q.theorem_count != q.proof_count;
  return q;
}

TrichotomyInput trichotomy_input(const WeightSystem& ws, const VectorXd& eta,
                                 std::uint64_t seed, const Tolerances& tol) {
  TrichotomyInput in;
  in.sigma_equal = sigmas_equal(ws.setup, tol);
  HermitianType ht = hermitian_type(ws.setup, tol);
  in.hermitian = ht.applicable && ht.hermitian;
  in.compact_form = ws.setup.p1.cols() == 0;

  CmaxResult cm = cmax_membership(ws, eta, seed, tol);
  in.eta_in_cmax = cm.defined && cm.inside;
  in.eta_in_minus_cmax = cm.defined && cm.mirror_inside;

  if (cm.defined) {
    bool all_noncompact = true;
    std::vector<int> positives;
    for (size_t i = 0; i < ws.weights.size(); ++i) {
      const ExtendedWeight& w = ws.weights[i];
      if (w.reality == WeightReality::zero) continue;
      if (cm.noncompact_flag[i] != 1) all_noncompact = false;
      if (cm.ordering.sign[i] == 1) positives.push_back(static_cast<int>(i));
    }
    if (all_noncompact && !positives.empty()) {
      MatrixXd rays(ws.datum.rank(), static_cast<int>(positives.size()));
      for (size_t k = 0; k < positives.size(); ++k)
        rays.col(static_cast<int>(k)) =
            lambda_ita_coefficients(ws, ws.weights[positives[k]], tol);
      // In the mirror chamber the cone is dual to the opposite ordering.
      if (!cm.inside && cm.mirror_inside) rays = -rays;
      in.dual_chamber_rays = rays;
    }
  }
  return in;
}

ConeVerdict cone_with_context(const WeightSystem& ws, const BasePoint& base,
                              std::uint64_t seed, const Tolerances& tol) {
  return cone_verdict(ws, base, trichotomy_input(ws, base.eta, seed, tol), tol);
}

DomainReport domain_report(const WeightSystem& ws, const BasePoint& base,
                           std::uint64_t seed, const Tolerances& tol) {
  DomainReport rep;
  HermitianType ht = hermitian_type(ws.setup, tol);
  rep.hermitian_applicable = ht.applicable;
  rep.hermitian = ht.hermitian;

  CmaxResult cm = cmax_membership(ws, base.eta, seed, tol);
  rep.cmax_defined = cm.defined;
  rep.eta_in_cmax = cm.defined && cm.inside;
  rep.eta_in_cmax_interior = cm.defined && cm.interior;
  rep.compactness_flag = cm.noncompact_flag;

  if (ws.datum.a_dim == 0 && cm.defined) {
    rep.q_complete = q_completeness_count(ws, seed, tol);
    rep.q_defined = true;
  }

  if (ws.datum.rank() == 1) {
    OrbitProfile p = orbit_profile(ws, base, tol);
    if (p.strongly_regular && p.codim == 1) {
      LeviReport lr = levi_matrix(ws, base, tol);
      rep.rank1 = rank1_signature(ws, lr, seed, tol);
      rep.rank1_defined = true;
    }
  }
  return rep;
}

}  // namespace levilab
