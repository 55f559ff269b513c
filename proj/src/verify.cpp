#include "levilab/verify.hpp"

#include <array>
#include <cmath>

#include <Eigen/SVD>

namespace levilab {

namespace {

const cplx kI{0.0, 1.0};

MatrixXcd jmat() {
  MatrixXcd j = MatrixXcd::Zero(2, 2);
  j(0, 0) = 1.0;
  j(1, 1) = -1.0;
  return j;
}

// Chart basis at the probe point: z exp(w1 E1 + w2 E2 + w3 E3).
std::array<MatrixXcd, 3> chart_basis() {
  MatrixXcd h = MatrixXcd::Zero(2, 2), e = MatrixXcd::Zero(2, 2),
            f = MatrixXcd::Zero(2, 2);
  h(0, 0) = 1.0;
  h(1, 1) = -1.0;
  e(0, 1) = 1.0;
  f(1, 0) = 1.0;
  return {h, e, f};
}

// A group element near the identity of SU(2) (factor "theta") or SU(1,1)
// (factor "s11"): exp of [[i alpha, beta], [-+ conj beta, -i alpha]].
MatrixXcd sample_factor(const std::string& which, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-0.25, 0.25);
  double alpha = u(rng);
  cplx beta{u(rng), u(rng)};
  MatrixXcd x = MatrixXcd::Zero(2, 2);
  x(0, 0) = kI * alpha;
  x(1, 1) = -kI * alpha;
  x(0, 1) = beta;
  x(1, 0) = which == "s11" ? std::conj(beta) : -std::conj(beta);
  return expm(x, 1e-10);
}

std::pair<std::string, std::string> split_pair(const std::string& pair) {
  auto dash = pair.find('-');
  if (dash == std::string::npos)
    throw ValidationError("invalid-argument", "pair name must be first-second");
  return {pair.substr(0, dash), pair.substr(dash + 1)};
}

using Vector6d = Eigen::Matrix<double, 6, 1>;
using Matrix6d = Eigen::Matrix<double, 6, 6>;

double chart_value(const ExtrinsicProbe& p, const Vector6d& u) {
  static const std::array<MatrixXcd, 3> basis = chart_basis();
  MatrixXcd w = MatrixXcd::Zero(2, 2);
  for (int k = 0; k < 3; ++k) w += cplx(u(2 * k), u(2 * k + 1)) * basis[k];
  return probe_value(p, p.point * expm(w, 1e-10));
}

// Central differences for the gradient and full symmetric Hessian of the
// chart function of six real variables.
void chart_derivatives(const ExtrinsicProbe& p, double h, Vector6d& grad,
                       Matrix6d& hess) {
  const double f0 = chart_value(p, Vector6d::Zero());
  std::array<double, 6> fp, fm;
  for (int u = 0; u < 6; ++u) {
    Vector6d x = Vector6d::Zero();
    x(u) = h;
    fp[u] = chart_value(p, x);
    x(u) = -h;
    fm[u] = chart_value(p, x);
    grad(u) = (fp[u] - fm[u]) / (2.0 * h);
    hess(u, u) = (fp[u] - 2.0 * f0 + fm[u]) / (h * h);
  }
  for (int u = 0; u < 6; ++u)
    for (int v = u + 1; v < 6; ++v) {
      Vector6d x = Vector6d::Zero();
      x(u) = h;
      x(v) = h;
      double fpp = chart_value(p, x);
      x(v) = -h;
      double fpm = chart_value(p, x);
      x(u) = -h;
      x(v) = h;
      double fmp = chart_value(p, x);
      x(v) = -h;
      double fmm = chart_value(p, x);
      hess(u, v) = hess(v, u) = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
    }
}

VectorXcd complex_gradient(const Vector6d& grad) {
  VectorXcd g(3);
  for (int j = 0; j < 3; ++j)
    g(j) = 0.5 * cplx(grad(2 * j), -grad(2 * j + 1));
  return g;
}

// d^2 rho / dw_j dbar(w_k) from the real Hessian.
MatrixXcd complex_hessian(const Matrix6d& hess) {
  MatrixXcd l(3, 3);
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k)
      l(j, k) = 0.25 * cplx(hess(2 * j, 2 * k) + hess(2 * j + 1, 2 * k + 1),
                            hess(2 * j, 2 * k + 1) - hess(2 * j + 1, 2 * k));
  return l;
}

double operator_norm(const MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

}  // namespace

bool has_certified_probe(const std::string& pair) {
  return pair == "theta-theta" || pair == "theta-s11" || pair == "s11-theta" ||
         pair == "s11-s11";
}

ExtrinsicProbe hypersurface_probe(const std::string& pair, double slice,
                                  double step) {
  if (!has_certified_probe(pair))
    throw ValidationError("unsupported",
                          "no certified defining function for pair " + pair);
  ExtrinsicProbe p;
  p.matrix_dim = 2;
  p.pair = pair;
  if (pair == "theta-theta") p.defining_function = "tr(z* z)";
  if (pair == "theta-s11") p.defining_function = "tr(z* z J)";
  if (pair == "s11-theta") p.defining_function = "tr(z* J z)";
  if (pair == "s11-s11") p.defining_function = "tr(J z* J z)";
  p.point = MatrixXcd::Zero(2, 2);
  p.point(0, 0) = std::exp(-slice);
  p.point(1, 1) = std::exp(slice);
  p.step = step;
  double resid = invariance_residual(p);
  if (resid > 1e-9)
    throw ValidationError("not-invariant",
                          "defining function failed the sampled invariance test");
  if (probe_gradient(p).norm() < 1e-8)
    throw NumericalError("singular-point",
                         "defining function has vanishing gradient on the slice");
  return p;
}

double probe_value(const ExtrinsicProbe& probe, const MatrixXcd& z) {
  static const MatrixXcd j = jmat();
  if (probe.pair == "theta-theta") return (z.adjoint() * z).trace().real();
  if (probe.pair == "theta-s11") return (z.adjoint() * z * j).trace().real();
  if (probe.pair == "s11-theta") return (z.adjoint() * j * z).trace().real();
  if (probe.pair == "s11-s11") return (j * z.adjoint() * j * z).trace().real();
  throw ValidationError("unsupported", "unknown probe pair " + probe.pair);
}

double invariance_residual(const ExtrinsicProbe& probe, int samples,
                           std::uint64_t seed) {
  auto [first, second] = split_pair(probe.pair);
  std::mt19937_64 rng(seed);
  const double base = probe_value(probe, probe.point);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    MatrixXcd g1 = sample_factor(first, rng);
    MatrixXcd g2 = sample_factor(second, rng);
    double moved = probe_value(probe, g1 * probe.point * g2.inverse());
    worst = std::max(worst, std::abs(moved - base));
  }
  return worst;
}

VectorXcd probe_gradient(const ExtrinsicProbe& probe) {
  Vector6d g1, g2;
  Matrix6d h1, h2;
  chart_derivatives(probe, probe.step, g1, h1);
  chart_derivatives(probe, probe.step / 2.0, g2, h2);
  Vector6d g = (4.0 * g2 - g1) / 3.0;
  return complex_gradient(g);
}

Inertia extrinsic_levi_inertia(const ExtrinsicProbe& probe,
                               const Tolerances& tol) {
  Vector6d g1, g2;
  Matrix6d h1, h2;
  chart_derivatives(probe, probe.step, g1, h1);
  chart_derivatives(probe, probe.step / 2.0, g2, h2);
  VectorXcd grad = complex_gradient((4.0 * g2 - g1) / 3.0);
  if (grad.norm() < 1e-8)
    throw NumericalError("singular-point",
                         "gradient of the defining function vanishes");

  MatrixXcd row(1, 3);
  row.row(0) = grad.transpose();
  MatrixXcd tangent = nullspace(row, tol.rank);
  auto restricted = [&](const Matrix6d& h) {
    MatrixXcd l = tangent.adjoint() * complex_hessian(h) * tangent;
    MatrixXcd sym = 0.5 * (l + l.adjoint());
    return hermitian_inertia(sym, tol.oracle_inertia);
  };

  Inertia coarse = restricted(h1);
  Inertia fine = restricted(h2);
  if (!(coarse == fine))
    throw NumericalError("unstable-oracle",
                         "inertia changed under finite-difference step halving");
  Matrix6d hr = (4.0 * h2 - h1) / 3.0;
  return restricted(hr);
}

AdjointCheck adjoint_crosscheck(const WeightSystem& ws, const Tolerances& tol) {
  const LieAlgebra& g = ws.setup.g;
  const MatrixXcd gbar = ws.setup.gram.conjugate();
  const int n = g.dim;
  const int r = ws.datum.rank();

  // <,>-orthogonal projector onto each weight space.
  std::vector<MatrixXcd> proj;
  int total = 0;
  for (const ExtendedWeight& w : ws.weights) {
    MatrixXcd q = w.space;
    MatrixXcd m = q.adjoint() * gbar * q;
    Eigen::LLT<MatrixXcd> llt(m);
    if (llt.info() != Eigen::Success)
      throw NumericalError("indefinite-classification",
                           "weight space Gram matrix is not positive definite");
    MatrixXcd u = llt.matrixU();
    q = q * u.inverse();
    proj.push_back(q * q.adjoint() * gbar);
    total += static_cast<int>(w.space.cols());
  }

  AdjointCheck out;
  out.spans = total == n;

  std::vector<MatrixXcd> recon(r, MatrixXcd::Zero(n, n));
  MatrixXcd recon_tau = MatrixXcd::Zero(n, n);
  for (size_t wi = 0; wi < ws.weights.size(); ++wi) {
    for (int k = 0; k < r; ++k)
      recon[k] += ws.weights[wi].lambda(k) * proj[wi];
    recon_tau += ws.weights[wi].a * proj[wi];
  }

  double worst = 0.0;
  for (int k = 0; k < r; ++k) {
    MatrixXcd adk = ad_of(g, complexify(ws.datum.c_basis.col(k)));
    MatrixXcd diff = recon[k] - adk;
    if (out.spans) {
      double res = operator_norm(diff);
      out.ad_residual.push_back(res);
      worst = std::max(worst, res);
    }
    if (ws.zero_index >= 0) {
      double cres = operator_norm(diff * ws.weights[ws.zero_index].space);
      out.c_block_residual = std::max(out.c_block_residual, cres);
    }
  }
  if (out.spans) {
    out.taun_residual = operator_norm(recon_tau - ws.taun_c);
    worst = std::max(worst, out.taun_residual);
  }
  out.worst = std::max(worst, out.c_block_residual);
  return out;
}

BasePoint random_regular_base(const WeightSystem& ws, std::mt19937_64& rng,
                              const Tolerances& tol) {
  std::normal_distribution<double> n01(0.0, 1.0);
  const int r = ws.datum.rank();
  for (int attempt = 0; attempt < 300; ++attempt) {
    VectorXd eta(r);
    for (int k = 0; k < r; ++k) eta(k) = 0.8 * n01(rng);
    BasePoint base{eta};
    OrbitProfile p = orbit_profile(ws, base, tol);
    if (p.strongly_regular && !p.near_degenerate) return base;
  }
  throw NumericalError("no-regular-point",
                       "rejection sampling found no strongly regular eta");
}

double block_deviation(const WeightSystem& ws, const BasePoint& base,
                       const std::vector<LeviBlock>& blocks,
                       const Tolerances& tol) {
  double worst = 0.0;
  for (const LeviBlock& b : blocks) {
    if (b.case_tag == BlockCase::zero_other) continue;
    const int sz = static_cast<int>(b.index_set.size());
    for (int r = 0; r < sz; ++r)
      for (int c = 0; c < sz; ++c) {
        VectorXcd measured =
            levi_pairing(ws, base, b.index_set[r], b.index_set[c], tol);
        VectorXcd expected = b.matrix(r, c) * b.row_direction[r];
        worst = std::max(worst, (measured - expected).cwiseAbs().maxCoeff());
      }
  }
  return worst;
}

double formula_equivalence(const WeightSystem& ws, const BasePoint& base,
                           const Tolerances& tol) {
  return block_deviation(ws, base, quadratic_blocks(ws, base, tol), tol);
}

double formula_equivalence_trials(const WeightSystem& ws, int trials,
                                  std::uint64_t seed, const Tolerances& tol) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    BasePoint base = random_regular_base(ws, rng, tol);
    worst = std::max(worst, formula_equivalence(ws, base, tol));
  }
  return worst;
}

}  // namespace levilab
