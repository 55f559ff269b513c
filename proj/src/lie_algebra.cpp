#include "levilab/lie_algebra.hpp"

namespace levilab {

namespace {

// Orthonormalize columns of u against the Re<,> gram matrix.
MatrixXd gram_orthonormalize(const MatrixXd& gram_real, const MatrixXd& u) {
  if (u.cols() == 0) return u;
  MatrixXd c = u.transpose() * gram_real * u;
  Eigen::LLT<MatrixXd> llt(c);
  if (llt.info() != Eigen::Success)
    throw NumericalError("ill-conditioned-decomposition",
                         "subspace basis too degenerate to orthonormalize");
  MatrixXd l = llt.matrixL();
  return l.triangularView<Eigen::Lower>()
      .transpose()
      .solve<Eigen::OnTheRight>(u);
}

}  // namespace

LieAlgebra make_algebra(std::vector<std::string> labels,
                        const std::vector<std::vector<VectorXcd>>& brackets,
                        const Tolerances& tol) {
  LieAlgebra g;
  g.dim = static_cast<int>(labels.size());
  g.labels = std::move(labels);
  const int n = g.dim;
  if (static_cast<int>(brackets.size()) != n)
    throw ValidationError("dimension-mismatch", "bracket table rows != dim");
  for (const auto& row : brackets)
    if (static_cast<int>(row.size()) != n)
      throw ValidationError("dimension-mismatch", "bracket table cols != dim");

  double scale = 1.0;
  for (const auto& row : brackets)
    for (const auto& v : row)
      if (v.size()) scale = std::max(scale, v.cwiseAbs().maxCoeff());

  for (int i = 0; i < n; ++i) {
    MatrixXcd a(n, n);
    for (int j = 0; j < n; ++j) {
      if (brackets[i][j].size() != n)
        throw ValidationError("dimension-mismatch", "bracket vector has wrong length");
      a.col(j) = brackets[i][j];
    }
    g.ad.push_back(std::move(a));
  }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double r = (brackets[i][j] + brackets[j][i]).cwiseAbs().maxCoeff();
      if (r > tol.jacobi * scale)
        throw ValidationError("invalid-argument", "structure tensor is not antisymmetric");
    }

  // Jacobi in operator form: ad([e_i, e_j]) = [ad e_i, ad e_j].
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      MatrixXcd lhs = MatrixXcd::Zero(n, n);
      for (int k = 0; k < n; ++k) lhs += brackets[i][j](k) * g.ad[k];
      MatrixXcd rhs = g.ad[i] * g.ad[j] - g.ad[j] * g.ad[i];
      double r = (lhs - rhs).cwiseAbs().maxCoeff();
      if (r > tol.jacobi * scale * scale * std::max(1.0, static_cast<double>(n)))
        throw ValidationError("jacobi-violation",
                              "structure tensor fails the Jacobi identity");
    }

  g.killing.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      cplx b = (g.ad[i] * g.ad[j]).trace();
      g.killing(i, j) = b;
      g.killing(j, i) = b;
    }

  Eigen::JacobiSVD<MatrixXcd> svd(g.killing);
  double smin = svd.singularValues()(n - 1);
  double smax = svd.singularValues()(0);
  if (!(smin > tol.rank * std::max(smax, 1.0)))
    throw ValidationError("non-semisimple", "Killing form is degenerate");
  return g;
}

VectorXcd bracket(const LieAlgebra& g, const VectorXcd& x, const VectorXcd& y) {
  if (x.size() != g.dim || y.size() != g.dim)
    throw ValidationError("dimension-mismatch", "bracket operands");
  VectorXcd out = VectorXcd::Zero(g.dim);
  for (int i = 0; i < g.dim; ++i)
    if (x(i) != cplx(0, 0)) out += x(i) * (g.ad[i] * y);
  return out;
}

MatrixXcd ad_of(const LieAlgebra& g, const VectorXcd& x) {
  MatrixXcd out = MatrixXcd::Zero(g.dim, g.dim);
  for (int i = 0; i < g.dim; ++i)
    if (x(i) != cplx(0, 0)) out += x(i) * g.ad[i];
  return out;
}

cplx killing_form(const LieAlgebra& g, const VectorXcd& x, const VectorXcd& y) {
  return x.transpose() * g.killing * y;
}

std::vector<MatrixXcd> sl_matrix_basis(int n) {
  if (n != 2 && n != 3)
    throw ValidationError("invalid-argument", "sl basis only built for n = 2, 3");
  std::vector<MatrixXcd> basis;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) {
        MatrixXcd e = MatrixXcd::Zero(n, n);
        e(i, j) = 1;
        basis.push_back(e);
      }
  for (int k = 0; k + 1 < n; ++k) {
    MatrixXcd h = MatrixXcd::Zero(n, n);
    h(k, k) = 1;
    h(k + 1, k + 1) = -1;
    basis.push_back(h);
  }
  return basis;
}

VectorXcd sl_coordinates(int n, const MatrixXcd& x) {
  if (std::abs(x.trace()) > 1e-10 * std::max(1.0, x.cwiseAbs().maxCoeff()))
    throw ValidationError("invalid-argument", "matrix is not traceless");
  VectorXcd c(n * n - 1);
  int idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) c(idx++) = x(i, j);
  cplx partial = 0;
  for (int k = 0; k + 1 < n; ++k) {
    partial += x(k, k);
    c(idx++) = partial;
  }
  return c;
}

MatrixXcd sl_matrix_of(int n, const VectorXcd& coords) {
  auto basis = sl_matrix_basis(n);
  if (coords.size() != static_cast<Eigen::Index>(basis.size()))
    throw ValidationError("dimension-mismatch", "sl coordinate vector");
  MatrixXcd x = MatrixXcd::Zero(n, n);
  for (size_t i = 0; i < basis.size(); ++i) x += coords(i) * basis[i];
  return x;
}

LieAlgebra build_sl(int n, const Tolerances& tol) {
  auto basis = sl_matrix_basis(n);
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j)
        labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
  for (int k = 0; k + 1 < n; ++k) labels.push_back("H" + std::to_string(k + 1));

  const int dim = n * n - 1;
  std::vector<std::vector<VectorXcd>> br(dim, std::vector<VectorXcd>(dim));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      br[i][j] = sl_coordinates(n, basis[i] * basis[j] - basis[j] * basis[i]);
  return make_algebra(std::move(labels), br, tol);
}

LieAlgebra direct_sum(const std::vector<LieAlgebra>& parts, const Tolerances& tol) {
  if (parts.empty()) throw ValidationError("invalid-argument", "empty direct sum");
  int dim = 0;
  for (const auto& p : parts) dim += p.dim;
  std::vector<std::string> labels;
  for (size_t p = 0; p < parts.size(); ++p)
    for (const auto& l : parts[p].labels)
      labels.push_back("g" + std::to_string(p + 1) + ":" + l);

  std::vector<std::vector<VectorXcd>> br(dim, std::vector<VectorXcd>(dim, VectorXcd::Zero(dim)));
  int off = 0;
  for (const auto& p : parts) {
    for (int i = 0; i < p.dim; ++i)
      for (int j = 0; j < p.dim; ++j) {
        VectorXcd v = VectorXcd::Zero(dim);
        v.segment(off, p.dim) = p.ad[i].col(j);
        br[off + i][off + j] = std::move(v);
      }
    off += p.dim;
  }
  return make_algebra(std::move(labels), br, tol);
}

Involution make_involution(const LieAlgebra& g, const MatrixXd& op, std::string label,
                           const Tolerances& tol) {
  const int n = g.dim;
  if (op.rows() != 2 * n || op.cols() != 2 * n)
    throw ValidationError("dimension-mismatch", "involution operator must be 2 dim x 2 dim");
  double sq = (op * op - MatrixXd::Identity(2 * n, 2 * n)).cwiseAbs().maxCoeff();
  if (sq > tol.involution)
    throw ValidationError("not-an-involution", label + " does not square to the identity");

  Involution s;
  s.op = op;
  s.label = std::move(label);
  if (is_clinear(op, tol.involution))
    s.antilinear = false;
  else if (is_antilinear(op, tol.involution))
    s.antilinear = true;
  else
    throw ValidationError("invalid-argument",
                          s.label + " is neither C-linear nor C-antilinear");

  double scale = 1.0;
  for (const auto& a : g.ad) scale = std::max(scale, a.cwiseAbs().maxCoeff());
  for (int i = 0; i < n; ++i) {
    VectorXcd fi = apply_real_op(op, VectorXcd::Unit(n, i));
    for (int j = i + 1; j < n; ++j) {
      VectorXcd fj = apply_real_op(op, VectorXcd::Unit(n, j));
      VectorXcd lhs = apply_real_op(op, g.ad[i].col(j));
      VectorXcd rhs = bracket(g, fi, fj);
      if ((lhs - rhs).cwiseAbs().maxCoeff() > tol.automorphism * scale)
        throw ValidationError("not-automorphism", s.label + " does not respect brackets");
    }
  }
  return s;
}

VectorXcd apply(const Involution& s, const VectorXcd& x) {
  return apply_real_op(s.op, x);
}

RealFormSetup make_setup(const LieAlgebra& g, const Involution& theta,
                         const Involution& sigma1, const Involution& sigma2,
                         const Tolerances& tol) {
  const int n = g.dim;
  if (!theta.antilinear || !sigma1.antilinear || !sigma2.antilinear)
    throw ValidationError("invalid-argument",
                          "theta, sigma1, sigma2 must all be antiholomorphic");
  for (const Involution* s : {&sigma1, &sigma2}) {
    double r = (s->op * theta.op - theta.op * s->op).cwiseAbs().maxCoeff();
    if (r > tol.involution)
      throw ValidationError("not-commuting", s->label + " does not commute with theta");
  }

  RealFormSetup setup;
  setup.g = g;
  setup.theta = theta;
  setup.sigma1 = sigma1;
  setup.sigma2 = sigma2;

  // <x, y> = -B(x, theta y); theta(e_j) = M_theta e_j for the antilinear part.
  MatrixXcd mtheta = antilinear_part(theta.op, tol.involution);
  setup.gram = -(g.killing * mtheta);
  double herm = (setup.gram - setup.gram.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol.automorphism * std::max(1.0, setup.gram.cwiseAbs().maxCoeff()))
    throw ValidationError("invalid-argument", "-B(x, theta y) is not hermitian");
  Eigen::LLT<MatrixXcd> llt(setup.gram);
  if (llt.info() != Eigen::Success)
    throw ValidationError("invalid-argument",
                          "theta is not a Cartan involution: form not positive definite");
  setup.gram_chol = llt.matrixL();

  MatrixXd gr = setup.gram.real();
  MatrixXd gi = setup.gram.imag();
  setup.gram_real.resize(2 * n, 2 * n);
  setup.gram_real << gr, gi, -gi, gr;

  setup.g1 = fixed_subspace(setup, sigma1.op, tol);
  setup.g2 = fixed_subspace(setup, sigma2.op, tol);
  if (setup.g1.cols() != n || setup.g2.cols() != n)
    throw ValidationError("invalid-argument", "fixed space of sigma has wrong dimension");
  auto kp1 = cartan_decompose(setup, setup.g1, tol);
  auto kp2 = cartan_decompose(setup, setup.g2, tol);
  setup.k1 = kp1.first;
  setup.p1 = kp1.second;
  setup.k2 = kp2.first;
  setup.p2 = kp2.second;
  return setup;
}

cplx hermitian_inner(const RealFormSetup& s, const VectorXcd& x, const VectorXcd& y) {
  return x.transpose() * s.gram * y.conjugate();
}

MatrixXd fixed_subspace(const RealFormSetup& s, const MatrixXd& op, const Tolerances& tol) {
  const int n2 = static_cast<int>(op.rows());
  double sq = (op * op - MatrixXd::Identity(n2, n2)).cwiseAbs().maxCoeff();
  if (sq > tol.involution)
    throw ValidationError("not-an-involution", "fixed_subspace needs an involutive operator");
  MatrixXd proj = 0.5 * (op + MatrixXd::Identity(n2, n2));
  MatrixXd basis = orthonormal_columns(proj, tol.rank);
  return gram_orthonormalize(s.gram_real, basis);
}

MatrixXd meet(const RealFormSetup& s, const MatrixXd& u, const MatrixXd& v,
              const Tolerances& tol) {
  MatrixXd inter = intersect_spans(u, v, tol.rank);
  return gram_orthonormalize(s.gram_real, inter);
}

std::pair<MatrixXd, MatrixXd> cartan_decompose(const RealFormSetup& s, const MatrixXd& space,
                                               const Tolerances& tol) {
  MatrixXd kfix = fixed_subspace(s, s.theta.op, tol);
  MatrixXd pfix = fixed_subspace(s, MatrixXd(-s.theta.op), tol);
  MatrixXd k = meet(s, space, kfix, tol);
  MatrixXd p = meet(s, space, pfix, tol);
  if (k.cols() + p.cols() != space.cols())
    throw ValidationError("invalid-argument", "space is not theta stable");
  return {k, p};
}

}  // namespace levilab
