#include "levilab/leviform.hpp"

#include <algorithm>
#include <cmath>

namespace levilab {

namespace {

const cplx kI{0.0, 1.0};

cplx multiplier_at(const ExtendedWeight& w, const VectorXd& eta) {
  return w.a * std::exp(cplx(0.0, -2.0) * lambda_at(w, eta));
}

bool contains(const std::vector<int>& v, int i) {
  return std::find(v.begin(), v.end(), i) != v.end();
}

VectorXcd coroot_coords(const WeightSystem& ws, int i) {
  return span_coordinates(ws.cc_basis, ws.weights[i].coroot);
}

void guard_multiplier(cplx m, const Tolerances& tol) {
  if (std::abs(m - 1.0) < tol.near_singular)
    throw NumericalError("near-singular",
                         "|a e^{-2 i lambda(eta)} - 1| below tolerance");
}

// Blocks from a profile that is already known to be strongly regular.
std::vector<LeviBlock> blocks_impl(const WeightSystem& ws,
                                   const OrbitProfile& profile,
                                   const Tolerances& tol) {
  const VectorXd& eta = profile.base.eta;
  const int nw = static_cast<int>(ws.weights.size());
  std::vector<char> seen(nw, 0);
  for (int i : profile.lambda_tilde_z) seen[i] = 1;

  auto mult = [&](int k) {
    cplx m = multiplier_at(ws.weights[k], eta);
    guard_multiplier(m, tol);
    return m;
  };

  std::vector<LeviBlock> out;
  for (int i = 0; i < nw; ++i) {
    if (seen[i]) continue;
    const ExtendedWeight& w = ws.weights[i];
    LeviBlock b;

    if (w.reality == WeightReality::zero) {
      b.case_tag = BlockCase::zero_other;
      b.index_set = {i};
      seen[i] = 1;
      if (w.dual != i && !seen[w.dual]) {
        b.index_set.push_back(w.dual);
        seen[w.dual] = 1;
      }
      int cols = 0;
      for (int k : b.index_set) cols += static_cast<int>(ws.weights[k].space.cols());
      b.matrix = MatrixXcd::Zero(cols, cols);
      b.row_direction.assign(cols, VectorXcd::Zero(ws.cc_basis.cols()));
      b.transversal = VectorXcd::Zero(ws.cc_basis.cols());
      // u_0 is abelian, so every pairing inside the block must vanish.
      for (int p : b.index_set)
        for (int q : b.index_set) {
          cplx m = mult(p);
          const MatrixXcd& sp = ws.weights[p].space;
          const MatrixXcd& sq = ws.weights[q].space;
          for (int cp = 0; cp < sp.cols(); ++cp)
            for (int cq = 0; cq < sq.cols(); ++cq) {
              VectorXcd val = (kI / (m - 1.0)) *
                  bracket(ws.setup.g, sp.col(cp),
                          levilab::apply(ws.setup.sigma2, sq.col(cq)));
              if (val.cwiseAbs().maxCoeff() > tol.cross_block)
                throw NumericalError("block-hermitian",
                                     "zero-weight spaces produced a nonzero pairing");
            }
        }
      out.push_back(std::move(b));
      continue;
    }

    if (w.reality == WeightReality::real) {
      b.case_tag = BlockCase::real;
      int d = w.dual;
      b.index_set = {i, d};
      seen[i] = seen[d] = 1;
      cplx m0 = mult(i), m1 = mult(d);
      double s = static_cast<double>(w.norm_sign);
      b.matrix = MatrixXcd::Zero(2, 2);
      b.matrix(0, 1) = kI * s / (m0 - 1.0);
      b.matrix(1, 0) = -kI * s / (m1 - 1.0);
      b.transversal = coroot_coords(ws, i);
      b.row_direction = {b.transversal, b.transversal};
    } else if (w.reality == WeightReality::imaginary) {
      bool a1 = std::abs(w.a - 1.0) < tol.snap_a;
      bool am1 = std::abs(w.a + 1.0) < tol.snap_a;
      if (a1 || am1) {
        b.case_tag = a1 ? BlockCase::imag_a1 : BlockCase::imag_am1;
        int d = w.dual;
        b.index_set = {i, d};
        seen[i] = seen[d] = 1;
        cplx m0 = mult(i), m1 = mult(d);
        double beta = static_cast<double>(w.norm_sign);
        b.matrix = MatrixXcd::Zero(2, 2);
        b.matrix(0, 0) = 1.0 / (m0 - 1.0);
        b.matrix(1, 1) = -1.0 / (m1 - 1.0);
        b.transversal = kI * beta * coroot_coords(ws, i);
        b.row_direction = {b.transversal, b.transversal};
      } else {
        b.case_tag = BlockCase::imag_other;
        int d = w.dual;
        int sd = ws.weights[d].s2partner;
        int si = w.s2partner;
        b.index_set = {i, d, sd, si};
        for (int k : b.index_set) seen[k] = 1;
        cplx m0 = mult(i), m1 = mult(d), m2 = mult(sd), m3 = mult(si);
        double s0 = static_cast<double>(w.norm_sign);
        double s2 = static_cast<double>(ws.weights[sd].norm_sign);
        b.matrix = MatrixXcd::Zero(4, 4);
        b.matrix(0, 2) = 1.0 / (m0 - 1.0);
        b.matrix(2, 0) = s0 * s2 / (m2 - 1.0);
        b.matrix(1, 3) = -1.0 / (m1 - 1.0);
        b.matrix(3, 1) = -s0 * s2 / (m3 - 1.0);
        b.transversal = kI * s0 * coroot_coords(ws, i);
        b.row_direction = {b.transversal, b.transversal, b.transversal,
                           b.transversal};
      }
    } else {
      bool a1 = std::abs(w.a - 1.0) < tol.snap_a;
      bool am1 = std::abs(w.a + 1.0) < tol.snap_a;
      b.case_tag = a1 ? BlockCase::complex_a1
                      : (am1 ? BlockCase::complex_am1 : BlockCase::complex_other);
      int p = w.s2partner;
      int d = w.dual;
      int q = ws.weights[d].s2partner;
      b.index_set = {i, p, d, q};
      for (int k : b.index_set) seen[k] = 1;
      cplx m0 = mult(i), m1 = mult(p), m2 = mult(d), m3 = mult(q);
      double s0 = static_cast<double>(w.norm_sign);
      double s1 = static_cast<double>(ws.weights[p].norm_sign);
      VectorXcd ti = coroot_coords(ws, i);
      VectorXcd tp = coroot_coords(ws, p);
      b.matrix = MatrixXcd::Zero(4, 4);
      b.matrix(0, 3) = kI * s0 / (m0 - 1.0);
      b.matrix(1, 2) = kI * s1 / (m1 - 1.0);
      b.matrix(2, 1) = -kI * s0 / (m2 - 1.0);
      b.matrix(3, 0) = -kI * s1 / (m3 - 1.0);
      b.transversal = ti;
      b.row_direction = {ti, tp, ti, tp};
    }

    double herm = (b.matrix - b.matrix.adjoint()).cwiseAbs().maxCoeff();
    if (herm > tol.block_hermitian)
      throw NumericalError("block-hermitian", "quadratic block is not Hermitian");
    out.push_back(std::move(b));
  }
  return out;
}

// Real coordinates of an element of c = t + a on the c_basis columns. The
// identification (eta_t, eta_a) -> (i eta_t, eta_a) carries them to it + a
// coordinates, in which the Killing form is the standard inner product and
// coroot coordinates agree with the lambda coefficient vectors.
VectorXd slice_coordinates(const WeightSystem& ws, const VectorXcd& x,
                           const Tolerances& tol) {
  double resid = 0.0;
  VectorXcd c = span_coordinates(ws.cc_basis, x, &resid);
  double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
  if (resid > tol.cross_block * scale)
    throw NumericalError("outside-center", "cone generator is not in c^C");
  double im = c.size() == 0 ? 0.0 : c.imag().cwiseAbs().maxCoeff();
  if (im > tol.cross_block * std::max(1.0, c.cwiseAbs().maxCoeff()))
    throw NumericalError("outside-center", "cone generator is not in t + a");
  return c.real();
}

OrbitProfile regular_profile(const WeightSystem& ws, const BasePoint& base,
                             const Tolerances& tol) {
  if (!ws.levi_basis_applied)
    throw ValidationError("invalid-argument", "levi basis not installed");
  OrbitProfile p = orbit_profile(ws, base, tol);
  if (!p.strongly_regular)
    throw ValidationError("unsupported",
                          "quadratic form requires a strongly regular base point");
  return p;
}

double sign_of(double x) { return x >= 0.0 ? 1.0 : -1.0; }

}  // namespace

const char* block_case_name(BlockCase c) {
  switch (c) {
    case BlockCase::real: return "real";
    case BlockCase::imag_a1: return "imag_a1";
    case BlockCase::imag_am1: return "imag_am1";
    case BlockCase::imag_other: return "imag_other";
    case BlockCase::complex_a1: return "complex_a1";
    case BlockCase::complex_am1: return "complex_am1";
    case BlockCase::complex_other: return "complex_other";
    case BlockCase::zero_other: return "zero_other";
  }
  return "?";
}

const char* cone_case_name(ConeCase c) {
  switch (c) {
    case ConeCase::noncompact_full: return "noncompact_full";
    case ConeCase::compact_nontrivial_a_full: return "compact_nontrivial_a_full";
    case ConeCase::hermitian_pointed: return "hermitian_pointed";
    case ConeCase::hermitian_outside_cmax_full: return "hermitian_outside_cmax_full";
    case ConeCase::nonhermitian_full: return "nonhermitian_full";
  }
  return "?";
}

VectorXcd levi_pairing_raw(const WeightSystem& ws, const BasePoint& base,
                           int i, int j, const Tolerances& tol) {
  if (!ws.levi_basis_applied)
    throw ValidationError("invalid-argument", "levi basis not installed");
  const int nw = static_cast<int>(ws.weights.size());
  if (i < 0 || i >= nw || j < 0 || j >= nw)
    throw ValidationError("invalid-argument", "weight index out of range");
  std::vector<int> lt = lambda_tilde(ws, base, tol);
  if (contains(lt, i) || contains(lt, j))
    throw ValidationError("not-complex-tangent",
                          "pairing slots must lie outside lambda_tilde(z)");
  const ExtendedWeight& wi = ws.weights[i];
  const ExtendedWeight& wj = ws.weights[j];
  VectorXcd nu = wi.lambda + wj.lambda.conjugate();
  cplx ab = wi.a * wj.a;
  int k = find_weight(ws, nu, ab, tol.cluster);
  if (k < 0 || !contains(lt, k))
    return VectorXcd::Zero(ws.setup.g.dim);
  cplx m = multiplier_at(wi, base.eta);
  guard_multiplier(m, tol);
  VectorXcd s2xj = levilab::apply(ws.setup.sigma2, wj.space.col(0));
  return (kI / (m - 1.0)) * bracket(ws.setup.g, wi.space.col(0), s2xj);
}

VectorXcd levi_pairing(const WeightSystem& ws, const BasePoint& base,
                       int i, int j, const Tolerances& tol) {
  VectorXcd v = levi_pairing_raw(ws, base, i, j, tol);
  double resid = 0.0;
  VectorXcd c = span_coordinates(ws.cc_basis, v, &resid);
  double scale = std::max(1.0, v.cwiseAbs().maxCoeff());
  if (resid > tol.cross_block * scale)
    throw ValidationError("outside-center",
                          "pairing value does not lie in the center c^C");
  return c;
}

std::vector<LeviBlock> quadratic_blocks(const WeightSystem& ws,
                                        const BasePoint& base,
                                        const Tolerances& tol) {
  OrbitProfile p = regular_profile(ws, base, tol);
  return blocks_impl(ws, p, tol);
}

LeviReport levi_matrix(const WeightSystem& ws, const BasePoint& base,
                       const Tolerances& tol) {
  LeviReport rep;
  rep.profile = regular_profile(ws, base, tol);
  rep.blocks = blocks_impl(ws, rep.profile, tol);

  double worst = 0.0;
  for (size_t bi = 0; bi < rep.blocks.size(); ++bi)
    for (size_t bj = 0; bj < rep.blocks.size(); ++bj) {
      if (bi == bj) continue;
      for (int a : rep.blocks[bi].index_set)
        for (int b : rep.blocks[bj].index_set) {
          VectorXcd v = levi_pairing(ws, base, a, b, tol);
          if (v.size() > 0)
            worst = std::max(worst, v.cwiseAbs().maxCoeff());
        }
    }
  rep.cross_block_residual = worst;
  if (worst > tol.cross_block)
    throw NumericalError("block-orthogonality",
                         "distinct quadratic blocks are not Levi-orthogonal");

  const int r = ws.datum.rank();
  if (r != 1) return rep;
  rep.hypersurface = true;

  // Common normal direction: a = 1 blocks evaluated at the base point are
  // positive definite with respect to it. Without such a block the leading
  // transversal is sign-normalized through its (i t, a) coordinates.
  VectorXcd dvec;
  bool have_a1 = false;
  for (const LeviBlock& b : rep.blocks) {
    if (b.case_tag != BlockCase::imag_a1) continue;
    double y = lambda_at(ws.weights[b.index_set[0]], base.eta).imag();
    if (std::abs(y) < tol.near_singular)
      throw NumericalError("non-regular",
                           "imaginary (lambda, 1) weight with lambda(eta) = 0");
    VectorXcd cand = sign_of(y) * b.transversal;
    if (!have_a1) {
      dvec = cand;
      have_a1 = true;
    } else {
      cplx ratio = cand(0) / dvec(0);
      if (ratio.real() <= 0.0 ||
          std::abs(ratio.imag()) > tol.cross_block * std::abs(ratio))
        throw NumericalError("transversal-mismatch",
                             "a = 1 blocks disagree on the normal orientation");
    }
  }
  if (!have_a1) {
    for (const LeviBlock& b : rep.blocks)
      if (b.case_tag != BlockCase::zero_other) {
        dvec = b.transversal;
        for (int k = 0; k < dvec.size(); ++k) {
          cplx e = dvec(k);
          if (std::abs(e) > 1e-12) {
            double lead = std::abs(e.real()) >= std::abs(e.imag())
                              ? e.real() : e.imag();
            if (lead < 0) dvec = -dvec;
            break;
          }
        }
        break;
      }
  }

  int total = 0;
  for (const LeviBlock& b : rep.blocks) total += static_cast<int>(b.matrix.rows());
  MatrixXcd scalar = MatrixXcd::Zero(total, total);
  int at = 0;
  for (const LeviBlock& b : rep.blocks) {
    int sz = static_cast<int>(b.matrix.rows());
    if (b.case_tag != BlockCase::zero_other) {
      cplx t = b.transversal(0) / dvec(0);
      if (std::abs(t.imag()) > tol.cross_block * std::max(1.0, std::abs(t)))
        throw NumericalError("transversal-mismatch",
                             "block transversal is not a real multiple of the normal");
      scalar.block(at, at, sz, sz) = b.matrix * t.real();
    }
    at += sz;
  }
  rep.hypersurface_matrix = scalar;
  rep.hypersurface_inertia = hermitian_inertia(scalar, tol.inertia_eig);
  return rep;
}

std::vector<VectorXd> cone_generators(const WeightSystem& ws,
                                      const BasePoint& base,
                                      const Tolerances& tol) {
  OrbitProfile p = regular_profile(ws, base, tol);
  std::vector<LeviBlock> blocks = blocks_impl(ws, p, tol);

  std::vector<VectorXd> gens;
  auto push = [&](const VectorXcd& ambient) {
    VectorXd g = slice_coordinates(ws, ambient, tol);
    if (g.norm() > 1e-12) gens.push_back(g);
  };
  auto push_pm = [&](const VectorXcd& ambient) {
    push(ambient);
    push(-ambient);
  };

  for (const LeviBlock& b : blocks) {
    const ExtendedWeight& w0 = ws.weights[b.index_set.empty() ? 0 : b.index_set[0]];
    switch (b.case_tag) {
      case BlockCase::real:
        push_pm(w0.coroot);
        break;
      case BlockCase::imag_a1: {
        double y = lambda_at(w0, base.eta).imag();
        if (std::abs(y) < tol.near_singular)
          throw NumericalError("non-regular",
                               "imaginary (lambda, 1) weight with lambda(eta) = 0");
        push(sign_of(y) * kI * static_cast<double>(w0.norm_sign) * w0.coroot);
        break;
      }
      case BlockCase::imag_am1:
        push_pm(kI * static_cast<double>(w0.norm_sign) * w0.coroot);
        break;
      case BlockCase::imag_other:
        push_pm(kI * w0.coroot);
        break;
      case BlockCase::complex_a1:
      case BlockCase::complex_am1:
      case BlockCase::complex_other: {
        const ExtendedWeight& wp = ws.weights[w0.s2partner];
        push_pm(0.5 * (w0.coroot + wp.coroot));
        push_pm(cplx(0.0, -0.5) * (w0.coroot - wp.coroot));
        break;
      }
      case BlockCase::zero_other:
        break;
    }
  }
  return gens;
}

ConeVerdict cone_verdict(const WeightSystem& ws, const BasePoint& base,
                         const TrichotomyInput& input, const Tolerances& tol) {
  std::vector<VectorXd> gens = cone_generators(ws, base, tol);
  const int r = ws.datum.rank();
  ConeVerdict v;

  ConeSpanResult span;
  if (!gens.empty()) {
    MatrixXd g(r, static_cast<int>(gens.size()));
    for (size_t k = 0; k < gens.size(); ++k) g.col(static_cast<int>(k)) = gens[k];
    span = cone_spans_everything(g, tol.lp_margin);
    v.full = span.full;
    if (!span.full) {
      v.farkas = span.farkas;
      bool pointed = true;
      for (size_t k = 0; k < gens.size() && pointed; ++k) {
        VectorXd x = nnls(g, -gens[k]);
        double resid = (g * x + gens[k]).norm();
        if (resid < tol.lp_margin * std::max(1.0, gens[k].norm())) pointed = false;
      }
      v.pointed = pointed;
    }
  } else {
    v.pointed = true;
  }

  bool nontrivial_a = false;
  for (const ExtendedWeight& w : ws.weights)
    if (w.reality != WeightReality::zero && std::abs(w.a - 1.0) > tol.snap_a)
      nontrivial_a = true;

  ConeCase pred;
  if (ws.datum.a_dim > 0) {
    pred = ConeCase::noncompact_full;
  } else if (nontrivial_a) {
    pred = ConeCase::compact_nontrivial_a_full;
  } else {
    if (!input.sigma_equal)
      throw NumericalError("sigma-mismatch",
                           "compact datum with all a = 1 forces sigma1 = sigma2");
    if (input.hermitian || input.compact_form) {
      pred = (input.eta_in_cmax || input.eta_in_minus_cmax)
                 ? ConeCase::hermitian_pointed
                 : ConeCase::hermitian_outside_cmax_full;
    } else {
      pred = ConeCase::nonhermitian_full;
    }
  }
  v.cone_case = pred;

  bool reducible = !is_irreducible(ws, tol);
  v.reducible_warning = reducible;
  bool pred_full = pred != ConeCase::hermitian_pointed;
  if (!reducible) {
    bool consistent = pred_full ? v.full : (v.pointed && !v.full);
    if (!consistent)
      throw NumericalError("inconclusive-verdict",
                           "generator test disagrees with the case prediction");
    if (pred == ConeCase::hermitian_pointed && input.dual_chamber_rays.cols() > 0) {
      for (const VectorXd& gvec : gens) {
        VectorXd x = nnls(input.dual_chamber_rays, gvec);
        double resid = (input.dual_chamber_rays * x - gvec).norm();
        if (resid > tol.membership * std::max(1.0, gvec.norm()))
          throw NumericalError("dual-chamber-containment",
                               "pointed cone generator escapes the dual chamber");
      }
    }
  }
  v.stein_obstruction = v.full;
  return v;
}

LeviReport levi_report(const WeightSystem& ws, const BasePoint& base,
                       const TrichotomyInput& input, const Tolerances& tol) {
  LeviReport rep = levi_matrix(ws, base, tol);
  rep.cone_generators = cone_generators(ws, base, tol);
  rep.cone = cone_verdict(ws, base, input, tol);
  rep.cone_decided = true;
  return rep;
}

}  // namespace levilab
