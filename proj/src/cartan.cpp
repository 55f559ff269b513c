#include "levilab/cartan.hpp"

#include <random>

namespace levilab {

namespace {

MatrixXd gram_orthonormalize(const RealFormSetup& s, const MatrixXd& u) {
  if (u.cols() == 0) return u;
  MatrixXd c = u.transpose() * s.gram_real * u;
  Eigen::LLT<MatrixXd> llt(c);
  if (llt.info() != Eigen::Success)
    throw NumericalError("ill-conditioned-decomposition", "degenerate subspace basis");
  MatrixXd l = llt.matrixL();
  return l.triangularView<Eigen::Lower>().transpose().solve<Eigen::OnTheRight>(u);
}

VectorXd random_combination(const MatrixXd& space, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  VectorXd coeff(space.cols());
  for (Eigen::Index i = 0; i < coeff.size(); ++i) coeff(i) = normal(rng);
  VectorXd v = space * coeff;
  double n = v.norm();
  return n > 0 ? VectorXd(v / n) : v;
}

}  // namespace

bool is_abelian(const RealFormSetup& s, const MatrixXd& space, double tol) {
  MatrixXcd cols = complexify_columns(space);
  for (Eigen::Index i = 0; i < cols.cols(); ++i)
    for (Eigen::Index j = i + 1; j < cols.cols(); ++j)
      if (bracket(s.g, cols.col(i), cols.col(j)).cwiseAbs().maxCoeff() > tol) return false;
  return true;
}

MatrixXd centralizer_in(const RealFormSetup& s, const MatrixXd& space,
                        const MatrixXd& elems, const Tolerances& tol) {
  if (space.cols() == 0 || elems.cols() == 0) return space;
  // Stack the realified maps v -> [e_j, v] applied to the space basis.
  MatrixXd stacked(2 * s.g.dim * elems.cols(), space.cols());
  for (Eigen::Index j = 0; j < elems.cols(); ++j) {
    MatrixXd ad_real = realify_clinear(ad_of(s.g, complexify(elems.col(j))));
    stacked.middleRows(2 * s.g.dim * j, 2 * s.g.dim) = ad_real * space;
  }
  MatrixXd coeffs = nullspace(stacked, tol.rank);
  if (coeffs.cols() == 0) return MatrixXd(space.rows(), 0);
  return gram_orthonormalize(s, MatrixXd(space * coeffs));
}

MatrixXd maximal_abelian_in(const RealFormSetup& s, const MatrixXd& space,
                            std::uint64_t seed, const Tolerances& tol) {
  std::mt19937_64 rng(seed);
  MatrixXd current = space;
  const int guard = 4 * static_cast<int>(space.cols()) + 8;
  for (int step = 0; step < guard; ++step) {
    if (current.cols() == 0 || is_abelian(s, current, tol.automorphism)) break;
    VectorXd xi = random_combination(current, rng);
    MatrixXd elem(space.rows(), 1);
    elem.col(0) = xi;
    MatrixXd next = centralizer_in(s, current, elem, tol);
    if (next.cols() < current.cols()) current = next;
  }
  if (!is_abelian(s, current, tol.automorphism))
    throw NumericalError("ill-conditioned-decomposition",
                         "centralizer refinement did not reach an abelian space");
  // Maximality: nothing else in the ambient space centralizes all of it.
  MatrixXd z = centralizer_in(s, space, current, tol);
  if (z.cols() != current.cols())
    throw NumericalError("ill-conditioned-decomposition",
                         "refined abelian space is not maximal; retry another seed");
  return current;
}

FundamentalSpaces fundamental_spaces(const RealFormSetup& s, std::uint64_t seed,
                                     const Tolerances& tol) {
  FundamentalSpaces out;
  MatrixXd p12 = meet(s, s.p1, s.p2, tol);
  out.a0 = p12.cols() ? maximal_abelian_in(s, p12, seed, tol) : MatrixXd(s.p1.rows(), 0);
  MatrixXd k12 = meet(s, s.k1, s.k2, tol);
  MatrixXd zk = out.a0.cols() ? centralizer_in(s, k12, out.a0, tol) : k12;
  out.t0 = zk.cols() ? maximal_abelian_in(s, zk, seed + 1, tol) : MatrixXd(s.k1.rows(), 0);
  return out;
}

MatrixXd tau_n_operator(const RealFormSetup& s, const VectorXd& nu, const Tolerances& tol) {
  const int n = s.g.dim;
  if (nu.size() != 2 * n)
    throw ValidationError("dimension-mismatch", "nu must be a realified algebra vector");
  MatrixXcd ad_nu = ad_of(s.g, complexify(nu));
  MatrixXd e_plus = realify_clinear(expm(MatrixXcd(cplx(0, 1) * ad_nu), tol.expm_residual));
  MatrixXd e_minus = realify_clinear(expm(MatrixXcd(cplx(0, -1) * ad_nu), tol.expm_residual));
  return e_minus * s.sigma1.op * e_plus * s.sigma2.op;
}

CartanDatum make_datum(const RealFormSetup& s, const VectorXd& nu,
                       const MatrixXd& c_candidate, const Tolerances& tol) {
  if (c_candidate.cols() == 0)
    throw ValidationError("invalid-argument", "empty Cartan candidate");
  MatrixXd c = gram_orthonormalize(s, orthonormal_columns(c_candidate, tol.rank));
  if (c.cols() != c_candidate.cols())
    throw ValidationError("invalid-argument", "Cartan candidate is rank deficient");
  if (!is_abelian(s, c, tol.automorphism))
    throw ValidationError("invalid-argument", "Cartan candidate is not abelian");

  // Membership in the two fixed spaces.
  MatrixXd taun = tau_n_operator(s, nu, tol);
  for (Eigen::Index j = 0; j < c.cols(); ++j) {
    double r2 = (s.sigma2.op * c.col(j) - c.col(j)).norm();
    if (r2 > tol.fixed_residual)
      throw ValidationError("invalid-argument", "c is not fixed by sigma2");
    // Fix(tau_n) contains c iff c sits in Ad(n^{-1}) g1 as well.
    double r1 = (taun * c.col(j) - c.col(j)).norm();
    if (r1 > tol.fixed_residual)
      throw ValidationError("invalid-argument",
                            "c is not fixed by Ad(n^{-1}) sigma1 Ad(n) sigma2");
  }

  CartanDatum d;
  d.nu = nu;
  auto kp = cartan_decompose(s, c, tol);  // throws if not theta stable
  d.t_dim = static_cast<int>(kp.first.cols());
  d.a_dim = static_cast<int>(kp.second.cols());
  d.c_basis.resize(c.rows(), c.cols());
  d.c_basis << kp.first, kp.second;

  // Cartan property: c centralizes itself inside Fix(tau_n). tau_n is an
  // automorphism but need not be involutive, so take the 1-eigenspace.
  MatrixXd fix_taun = nullspace(
      MatrixXd(taun - MatrixXd::Identity(taun.rows(), taun.cols())), tol.rank);
  MatrixXd z = centralizer_in(s, fix_taun, d.c_basis, tol);
  if (z.cols() != 2 * c.cols())
    throw ValidationError("invalid-argument",
                          "candidate is not self-centralizing in the isotropy algebra");
  return d;
}

CartanDatum fundamental_datum(const RealFormSetup& s, std::uint64_t seed,
                              const Tolerances& tol) {
  FundamentalSpaces f = fundamental_spaces(s, seed, tol);
  const int r = static_cast<int>(f.a0.cols() + f.t0.cols());
  if (r == 0)
    throw ValidationError("invalid-argument", "fundamental Cartan is zero dimensional");
  MatrixXd c(s.g1.rows(), r);
  c << f.t0, f.a0;
  return make_datum(s, VectorXd::Zero(2 * s.g.dim), c, tol);
}

}  // namespace levilab
