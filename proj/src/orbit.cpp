#include "levilab/orbit.hpp"

#include <limits>

namespace levilab {

namespace {

void check_base(const WeightSystem& ws, const BasePoint& base) {
  if (base.eta.size() != ws.datum.rank())
    throw ValidationError("dimension-mismatch",
                          "eta length must equal the rank of the datum");
}

std::vector<cplx> multipliers(const WeightSystem& ws, const BasePoint& base) {
  std::vector<cplx> m;
  m.reserve(ws.weights.size());
  for (const auto& w : ws.weights)
    m.push_back(w.a * std::exp(cplx(0, -2) * lambda_at(w, base.eta)));
  return m;
}

MatrixXcd tau_z_matrix(const WeightSystem& ws, const BasePoint& base,
                       const Tolerances& tol) {
  VectorXcd eta = complexify(ws.datum.c_basis * base.eta);
  MatrixXcd e = expm(MatrixXcd(cplx(0, -1) * ad_of(ws.setup.g, eta)), tol.expm_residual);
  return e * ws.taun_c * e;
}

}  // namespace

std::vector<int> lambda_tilde(const WeightSystem& ws, const BasePoint& base,
                              const Tolerances& tol) {
  check_base(ws, base);
  std::vector<int> out;
  auto m = multipliers(ws, base);
  for (size_t i = 0; i < m.size(); ++i)
    if (std::abs(m[i] - 1.0) < tol.membership) out.push_back(static_cast<int>(i));
  return out;
}

MatrixXd tau_z_operator(const WeightSystem& ws, const BasePoint& base,
                        const Tolerances& tol) {
  check_base(ws, base);
  return realify_clinear(tau_z_matrix(ws, base, tol));
}

OrbitProfile orbit_profile(const WeightSystem& ws, const BasePoint& base,
                           const Tolerances& tol) {
  check_base(ws, base);
  OrbitProfile p;
  p.base = base;
  p.multiplier = multipliers(ws, base);
  p.nearest_offset = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < p.multiplier.size(); ++i) {
    double off = std::abs(p.multiplier[i] - 1.0);
    if (off < tol.membership) {
      p.lambda_tilde_z.push_back(static_cast<int>(i));
    } else {
      if (ws.weights[i].reality != WeightReality::zero)
        p.complex_tangent_indices.push_back(static_cast<int>(i));
      p.nearest_offset = std::min(p.nearest_offset, off);
    }
  }
  p.near_degenerate = p.nearest_offset < tol.near_degenerate;

  bool has_zero = false;
  for (int i : p.lambda_tilde_z) has_zero = has_zero || i == ws.zero_index;
  if (!has_zero)
    throw NumericalError("membership-violation", "(0,1) must belong to lambda_tilde");
  for (int i : p.lambda_tilde_z) {
    int d = ws.weights[i].dual;
    if (std::abs(p.multiplier[d] - 1.0) >= tol.membership)
      throw NumericalError("membership-violation",
                           "lambda_tilde is not closed under (lambda,a) -> (-lambda,1/a)");
  }

  const int r = ws.datum.rank();
  p.codim = r + static_cast<int>(p.lambda_tilde_z.size()) - 1;
  p.strongly_regular = p.lambda_tilde_z.size() == 1;

  // Fixed-space cross-check: Fix(tau_z) against the lambda_tilde span.
  MatrixXcd tauz = tau_z_matrix(ws, base, tol);
  MatrixXcd id = MatrixXcd::Identity(tauz.rows(), tauz.cols());
  // the fixed-space cut must agree with the membership band: a weight with
  // |multiplier - 1| = d contributes a singular value d to tau_z - id
  double cut = std::max(tol.fixed_residual, tol.membership / 2.0);
  MatrixXcd fix = nullspace(MatrixXcd(tauz - id), cut);
  int expected = r;
  for (int i : p.lambda_tilde_z)
    if (i != ws.zero_index) expected += static_cast<int>(ws.weights[i].space.cols());
  if (fix.cols() != expected)
    throw NumericalError("fixed-space-mismatch",
                         "dim Fix(tau_z) differs from the lambda_tilde span");
  MatrixXcd span(tauz.rows(), expected);
  int at = 0;
  for (int i : p.lambda_tilde_z) {
    const auto& sp = ws.weights[i].space;
    span.block(0, at, span.rows(), sp.cols()) = sp;
    at += static_cast<int>(sp.cols());
  }
  if (max_principal_angle(fix, orthonormal_columns(span, tol.rank)) > tol.principal_angle)
    throw NumericalError("fixed-space-mismatch",
                         "Fix(tau_z) does not match the lambda_tilde span");
  return p;
}

}  // namespace levilab
