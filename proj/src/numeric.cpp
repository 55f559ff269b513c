#include "levilab/numeric.hpp"

#include <cstdlib>
#include <unsupported/Eigen/MatrixFunctions>

namespace levilab {

void Tolerances::set(const std::string& key, double value) {
  if (!(value > 0.0))
    throw ValidationError("invalid-argument", "tolerance must be positive: " + key);
  struct Entry {
    const char* name;
    double Tolerances::*field;
  };
  static const Entry table[] = {
      {"jacobi", &Tolerances::jacobi},
      {"automorphism", &Tolerances::automorphism},
      {"involution", &Tolerances::involution},
      {"eigen_residual", &Tolerances::eigen_residual},
      {"tau_unitary", &Tolerances::tau_unitary},
      {"rank", &Tolerances::rank},
      {"cluster", &Tolerances::cluster},
      {"membership", &Tolerances::membership},
      {"near_degenerate", &Tolerances::near_degenerate},
      {"near_singular", &Tolerances::near_singular},
      {"block_hermitian", &Tolerances::block_hermitian},
      {"equivalence", &Tolerances::equivalence},
      {"cross_block", &Tolerances::cross_block},
      {"lp_margin", &Tolerances::lp_margin},
      {"inertia_eig", &Tolerances::inertia_eig},
      {"oracle_inertia", &Tolerances::oracle_inertia},
      {"oracle_invariance", &Tolerances::oracle_invariance},
      {"regular_margin", &Tolerances::regular_margin},
      {"snap_a", &Tolerances::snap_a},
      {"adjoint_residual", &Tolerances::adjoint_residual},
      {"principal_angle", &Tolerances::principal_angle},
      {"fixed_residual", &Tolerances::fixed_residual},
      {"tau_fixes_c", &Tolerances::tau_fixes_c},
      {"expm_residual", &Tolerances::expm_residual},
      {"sigma_equal", &Tolerances::sigma_equal},
  };
  for (const auto& e : table) {
    if (key == e.name) {
      this->*(e.field) = value;
      return;
    }
  }
  throw ValidationError("invalid-argument", "unknown tolerance key: " + key);
}

std::vector<std::string> Tolerances::keys() {
  return {"jacobi",          "automorphism",   "involution",    "eigen_residual",
          "tau_unitary",     "rank",           "cluster",       "membership",
          "near_degenerate", "near_singular",  "block_hermitian", "equivalence",
          "cross_block",     "lp_margin",      "inertia_eig",   "oracle_inertia",
          "oracle_invariance", "regular_margin", "snap_a",      "adjoint_residual",
          "principal_angle", "fixed_residual", "tau_fixes_c",   "expm_residual",
          "sigma_equal"};
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("LEVILAB_SEED")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0') return static_cast<std::uint64_t>(v);
  }
  return 42;
}

MatrixXd complex_structure(int n) {
  MatrixXd j = MatrixXd::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = -MatrixXd::Identity(n, n);
  j.bottomLeftCorner(n, n) = MatrixXd::Identity(n, n);
  return j;
}

VectorXd realify(const VectorXcd& x) {
  VectorXd r(2 * x.size());
  r.head(x.size()) = x.real();
  r.tail(x.size()) = x.imag();
  return r;
}

VectorXcd complexify(const VectorXd& x) {
  const auto n = x.size() / 2;
  if (x.size() != 2 * n)
    throw ValidationError("dimension-mismatch", "realified vector has odd length");
  VectorXcd c(n);
  c.real() = x.head(n);
  c.imag() = x.tail(n);
  return c;
}

MatrixXcd complexify_columns(const MatrixXd& basis) {
  const auto n = basis.rows() / 2;
  MatrixXcd out(n, basis.cols());
  for (Eigen::Index j = 0; j < basis.cols(); ++j) out.col(j) = complexify(basis.col(j));
  return out;
}

MatrixXd realify_columns(const MatrixXcd& basis) {
  MatrixXd out(2 * basis.rows(), basis.cols());
  for (Eigen::Index j = 0; j < basis.cols(); ++j) out.col(j) = realify(basis.col(j));
  return out;
}

MatrixXd realify_clinear(const MatrixXcd& m) {
  const auto n = m.rows();
  MatrixXd r(2 * n, 2 * n);
  r.topLeftCorner(n, n) = m.real();
  r.topRightCorner(n, n) = -m.imag();
  r.bottomLeftCorner(n, n) = m.imag();
  r.bottomRightCorner(n, n) = m.real();
  return r;
}

MatrixXd realify_antilinear(const MatrixXcd& m) {
  const auto n = m.rows();
  MatrixXd r(2 * n, 2 * n);
  r.topLeftCorner(n, n) = m.real();
  r.topRightCorner(n, n) = m.imag();
  r.bottomLeftCorner(n, n) = m.imag();
  r.bottomRightCorner(n, n) = -m.real();
  return r;
}

bool is_clinear(const MatrixXd& op, double tol) {
  const auto n = op.rows() / 2;
  MatrixXd j = complex_structure(static_cast<int>(n));
  return (op * j - j * op).cwiseAbs().maxCoeff() < tol;
}

bool is_antilinear(const MatrixXd& op, double tol) {
  const auto n = op.rows() / 2;
  MatrixXd j = complex_structure(static_cast<int>(n));
  return (op * j + j * op).cwiseAbs().maxCoeff() < tol;
}

MatrixXcd clinear_part(const MatrixXd& op, double tol) {
  if (!is_clinear(op, tol))
    throw ValidationError("invalid-argument", "operator is not C-linear");
  const auto n = op.rows() / 2;
  MatrixXcd m(n, n);
  m.real() = 0.5 * (op.topLeftCorner(n, n) + op.bottomRightCorner(n, n));
  m.imag() = 0.5 * (op.bottomLeftCorner(n, n) - op.topRightCorner(n, n));
  return m;
}

MatrixXcd antilinear_part(const MatrixXd& op, double tol) {
  if (!is_antilinear(op, tol))
    throw ValidationError("invalid-argument", "operator is not C-antilinear");
  const auto n = op.rows() / 2;
  MatrixXcd m(n, n);
  m.real() = 0.5 * (op.topLeftCorner(n, n) - op.bottomRightCorner(n, n));
  m.imag() = 0.5 * (op.bottomLeftCorner(n, n) + op.topRightCorner(n, n));
  return m;
}

VectorXcd apply_real_op(const MatrixXd& op, const VectorXcd& x) {
  return complexify(op * realify(x));
}

namespace {
template <typename Mat>
Mat expm_checked(const Mat& a, double residual_tol) {
  Mat e = a.exp();
  Mat einv = (-a).exp();
  double resid = (e * einv - Mat::Identity(a.rows(), a.cols())).cwiseAbs().maxCoeff();
  if (!(resid < residual_tol))
    throw NumericalError("ill-conditioned-decomposition",
                         "matrix exponential residual " + std::to_string(resid));
  return e;
}
}  // namespace

MatrixXd expm(const MatrixXd& a, double residual_tol) {
  return expm_checked(a, residual_tol);
}
MatrixXcd expm(const MatrixXcd& a, double residual_tol) {
  return expm_checked(a, residual_tol);
}

namespace {
template <typename Mat>
Mat orthonormal_impl(const Mat& a, double rank_tol) {
  if (a.cols() == 0) return Mat(a.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU);
  double top = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  int r = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > rank_tol * std::max(top, 1.0)) ++r;
  return svd.matrixU().leftCols(r);
}

template <typename Mat>
Mat nullspace_impl(const Mat& a, double rank_tol) {
  if (a.cols() == 0) return Mat(0, 0);
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
  double top = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  int r = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > rank_tol * std::max(top, 1.0)) ++r;
  return svd.matrixV().rightCols(a.cols() - r);
}
}  // namespace

MatrixXd orthonormal_columns(const MatrixXd& a, double rank_tol) {
  return orthonormal_impl(a, rank_tol);
}
MatrixXcd orthonormal_columns(const MatrixXcd& a, double rank_tol) {
  return orthonormal_impl(a, rank_tol);
}
MatrixXd nullspace(const MatrixXd& a, double rank_tol) {
  return nullspace_impl(a, rank_tol);
}
MatrixXcd nullspace(const MatrixXcd& a, double rank_tol) {
  return nullspace_impl(a, rank_tol);
}

int rank_of(const MatrixXd& a, double rank_tol) {
  if (a.cols() == 0 || a.rows() == 0) return 0;
  Eigen::JacobiSVD<MatrixXd> svd(a);
  double top = svd.singularValues()(0);
  int r = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > rank_tol * std::max(top, 1.0)) ++r;
  return r;
}

MatrixXd intersect_spans(const MatrixXd& u, const MatrixXd& v, double rank_tol) {
  if (u.cols() == 0 || v.cols() == 0) return MatrixXd(u.rows(), 0);
  MatrixXd stacked(u.rows(), u.cols() + v.cols());
  stacked << u, -v;
  MatrixXd ns = nullspace(stacked, rank_tol);
  if (ns.cols() == 0) return MatrixXd(u.rows(), 0);
  MatrixXd inter = u * ns.topRows(u.cols());
  return orthonormal_columns(inter, rank_tol);
}

double max_principal_angle(const MatrixXcd& u, const MatrixXcd& v) {
  if (u.cols() != v.cols())
    throw ValidationError("dimension-mismatch", "principal angles need equal dimensions");
  if (u.cols() == 0) return 0.0;
  Eigen::JacobiSVD<MatrixXcd> svd(u.adjoint() * v);
  double smallest = svd.singularValues()(svd.singularValues().size() - 1);
  smallest = std::clamp(smallest, -1.0, 1.0);
  return std::acos(smallest);
}

VectorXcd span_coordinates(const MatrixXcd& basis, const VectorXcd& y, double* residual_out) {
  VectorXcd coords = basis.colPivHouseholderQr().solve(y);
  if (residual_out) *residual_out = (basis * coords - y).norm();
  return coords;
}

VectorXd nnls(const MatrixXd& a, const VectorXd& b) {
  // Lawson-Hanson active set method.
  const Eigen::Index n = a.cols();
  VectorXd x = VectorXd::Zero(n);
  std::vector<bool> passive(n, false);
  VectorXd w = a.transpose() * (b - a * x);
  const double tol = 1e-12 * std::max(1.0, b.norm());
  for (int outer = 0; outer < 10 * static_cast<int>(n) + 20; ++outer) {
    int best = -1;
    double best_w = tol;
    for (Eigen::Index i = 0; i < n; ++i)
      if (!passive[i] && w(i) > best_w) {
        best_w = w(i);
        best = static_cast<int>(i);
      }
    if (best < 0) break;
    passive[best] = true;
    for (int inner = 0; inner < 10 * static_cast<int>(n) + 20; ++inner) {
      std::vector<int> idx;
      for (Eigen::Index i = 0; i < n; ++i)
        if (passive[i]) idx.push_back(static_cast<int>(i));
      MatrixXd ap(a.rows(), idx.size());
      for (size_t k = 0; k < idx.size(); ++k) ap.col(k) = a.col(idx[k]);
      VectorXd z = ap.colPivHouseholderQr().solve(b);
      bool feasible = true;
      for (Eigen::Index k = 0; k < z.size(); ++k)
        if (z(k) <= 0) feasible = false;
      if (feasible) {
        x.setZero();
        for (size_t k = 0; k < idx.size(); ++k) x(idx[k]) = z(k);
        break;
      }
      double alpha = 1.0;
      for (size_t k = 0; k < idx.size(); ++k)
        if (z(k) <= 0) {
          double xi = x(idx[k]);
          if (xi - z(k) > 0) alpha = std::min(alpha, xi / (xi - z(k)));
        }
      for (size_t k = 0; k < idx.size(); ++k) {
        double xi = x(idx[k]);
        x(idx[k]) = xi + alpha * (z(k) - xi);
        if (x(idx[k]) <= tol) {
          x(idx[k]) = 0.0;
          passive[idx[k]] = false;
        }
      }
    }
    w = a.transpose() * (b - a * x);
  }
  return x;
}

ConeSpanResult cone_spans_everything(const MatrixXd& gens, double tol) {
  ConeSpanResult result;
  const Eigen::Index d = gens.rows();
  if (d == 0) {
    result.full = true;
    return result;
  }
  double scale = std::max(1.0, gens.cwiseAbs().maxCoeff());
  for (Eigen::Index k = 0; k < d; ++k) {
    for (double sign : {1.0, -1.0}) {
      VectorXd b = VectorXd::Zero(d);
      b(k) = sign;
      VectorXd mu = gens.cols() ? nnls(gens / scale, b) : VectorXd();
      VectorXd resid = gens.cols() ? VectorXd(b - (gens / scale) * mu) : b;
      double rn = resid.norm();
      result.worst_residual = std::max(result.worst_residual, rn);
      if (rn > tol) {
        // At the NNLS optimum, gens^T resid <= 0 componentwise and
        // resid . b = |resid|^2 > 0, so resid separates b from the cone.
        result.full = false;
        result.farkas = resid / rn;
        result.missed = b;
        return result;
      }
    }
  }
  result.full = true;
  return result;
}

Inertia hermitian_inertia(const MatrixXcd& h, double tol) {
  Inertia out;
  if (h.rows() == 0) return out;
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    double v = es.eigenvalues()(i);
    if (v > tol)
      ++out.plus;
    else if (v < -tol)
      ++out.minus;
    else
      ++out.zero;
  }
  return out;
}

}  // namespace levilab
