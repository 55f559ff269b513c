#include "levilab/weights.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace levilab {

namespace {

struct Primed {
  MatrixXcd lt;      // L^T, upper triangular
  MatrixXcd to(const MatrixXcd& op) const {
    MatrixXcd x = lt * op;
    return lt.triangularView<Eigen::Upper>().solve<Eigen::OnTheRight>(x);
  }
  MatrixXcd back_columns(const MatrixXcd& cols) const {
    return lt.triangularView<Eigen::Upper>().solve(cols);
  }
};

Primed make_primed(const RealFormSetup& s) {
  return Primed{s.gram_chol.transpose()};
}

double op_scale(const MatrixXcd& m) { return std::max(1.0, m.cwiseAbs().maxCoeff()); }

// Split sorted eigenvalues into groups separated by more than tol; complain
// if two groups are closer than 10 tol.
std::vector<std::pair<int, int>> cluster_ranges(const VectorXd& vals, double tol) {
  std::vector<std::pair<int, int>> ranges;
  int start = 0;
  for (int i = 1; i <= vals.size(); ++i) {
    if (i == vals.size() || vals(i) - vals(i - 1) > tol) {
      ranges.emplace_back(start, i);
      start = i;
    }
  }
  for (size_t r = 1; r < ranges.size(); ++r) {
    double gap = vals(ranges[r].first) - vals(ranges[r - 1].second - 1);
    if (gap < 10 * tol)
      throw NumericalError("ill-conditioned-decomposition",
                           "eigenvalue clusters closer than 10x the clustering tolerance");
  }
  return ranges;
}

cplx cluster_eigenvalue(const MatrixXcd& op, const MatrixXcd& q, double resid_tol,
                        const char* what) {
  MatrixXcd m = q.adjoint() * op * q;
  cplx v = m.trace() / static_cast<double>(m.rows());
  double resid = (op * q - v * q).cwiseAbs().maxCoeff();
  if (resid > resid_tol * op_scale(op))
    throw NumericalError("ill-conditioned-decomposition",
                         std::string("eigen residual too large for ") + what);
  return v;
}

void phase_fix(VectorXcd& v) {
  Eigen::Index idx = 0;
  v.cwiseAbs().maxCoeff(&idx);
  cplx c = v(idx);
  if (std::abs(c) > 0) v *= std::conj(c) / std::abs(c);
}

// For sigma2-real vectors only sign flips keep realness.
void sign_fix(VectorXcd& v) {
  Eigen::Index idx = 0;
  v.cwiseAbs().maxCoeff(&idx);
  cplx c = v(idx);
  if (std::abs(c.real()) > 1e-12) {
    if (c.real() < 0) v = -v;
  } else if (c.imag() < 0) {
    v = -v;
  }
}

VectorXd rational_vector(Eigen::Index n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-12, 12);
  VectorXd v(n);
  bool nonzero = false;
  for (Eigen::Index i = 0; i < n; ++i) {
    v(i) = num(rng) / 7.0;
    if (v(i) != 0.0) nonzero = true;
  }
  if (!nonzero && n > 0) v(0) = 1.0 / 7.0;
  return v;
}

}  // namespace

// lambda_hat coefficients: lambda evaluated on (i t_k, a_l), always real.
VectorXd lambda_ita_coefficients(const WeightSystem& ws, const ExtendedWeight& w,
                                 const Tolerances& tol) {
  const int p = ws.datum.t_dim, q = ws.datum.a_dim;
  VectorXd coef(p + q);
  for (int k = 0; k < p; ++k) {
    if (std::abs(w.lambda(k).real()) > 100 * tol.cluster)
      throw NumericalError("ill-conditioned-decomposition",
                           "weight value on t is not purely imaginary");
    coef(k) = -w.lambda(k).imag();
  }
  for (int l = 0; l < q; ++l) {
    if (std::abs(w.lambda(p + l).imag()) > 100 * tol.cluster)
      throw NumericalError("ill-conditioned-decomposition",
                           "weight value on a is not real");
    coef(p + l) = w.lambda(p + l).real();
  }
  return coef;
}

cplx lambda_at(const ExtendedWeight& w, const VectorXd& eta) {
  if (eta.size() != w.lambda.size())
    throw ValidationError("dimension-mismatch", "eta coordinates vs weight length");
  cplx out = 0;
  for (Eigen::Index k = 0; k < eta.size(); ++k) out += eta(k) * w.lambda(k);
  return out;
}

int find_weight(const WeightSystem& ws, const VectorXcd& lambda, cplx a, double match_tol) {
  for (size_t i = 0; i < ws.weights.size(); ++i) {
    const auto& w = ws.weights[i];
    if ((w.lambda - lambda).cwiseAbs().maxCoeff() < match_tol &&
        std::abs(w.a - a) < match_tol)
      return static_cast<int>(i);
  }
  return -1;
}

WeightSystem extended_decomposition(const RealFormSetup& s, const CartanDatum& d,
                                    const Tolerances& tol) {
  WeightSystem ws;
  ws.setup = s;
  ws.datum = d;
  const int n = s.g.dim;
  const int p = d.t_dim, q = d.a_dim, r = p + q;

  ws.taun = tau_n_operator(s, d.nu, tol);
  for (Eigen::Index j = 0; j < d.c_basis.cols(); ++j) {
    double resid = (ws.taun * d.c_basis.col(j) - d.c_basis.col(j)).norm();
    if (resid > tol.tau_fixes_c)
      throw ValidationError("invalid-argument", "tau_n does not fix c pointwise");
  }
  ws.taun_c = clinear_part(ws.taun, tol.tau_unitary);

  ws.cc_basis = complexify_columns(d.c_basis);
  ws.ita_basis.resize(n, r);
  for (int k = 0; k < p; ++k) ws.ita_basis.col(k) = cplx(0, 1) * ws.cc_basis.col(k);
  for (int l = 0; l < q; ++l) ws.ita_basis.col(p + l) = ws.cc_basis.col(p + l);

  Primed pr = make_primed(s);

  MatrixXcd tau_p = pr.to(ws.taun_c);
  double unit = (tau_p.adjoint() * tau_p - MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (unit > tol.tau_unitary)
    throw ValidationError("invalid-argument", "tau_n is not unitary for <,>");

  std::vector<MatrixXcd> herm_ops;
  std::vector<MatrixXcd> eigen_ops;  // operators whose eigenvalues we record
  for (int k = 0; k < p; ++k) {
    MatrixXcd ad_c = ad_of(s.g, ws.cc_basis.col(k));
    eigen_ops.push_back(pr.to(ad_c));
    herm_ops.push_back(cplx(0, 1) * eigen_ops.back());
  }
  for (int l = 0; l < q; ++l) {
    MatrixXcd ad_c = ad_of(s.g, ws.cc_basis.col(p + l));
    eigen_ops.push_back(pr.to(ad_c));
    herm_ops.push_back(eigen_ops.back());
  }
  herm_ops.push_back(0.5 * (tau_p + tau_p.adjoint()));
  herm_ops.push_back((tau_p - tau_p.adjoint()) / cplx(0, 2));

  for (auto& h : herm_ops) {
    double asym = (h - h.adjoint()).cwiseAbs().maxCoeff();
    if (asym > 1e3 * tol.tau_unitary * op_scale(h))
      throw ValidationError("invalid-argument",
                            "operator family is not hermitian in <,> coordinates");
    h = 0.5 * (h + h.adjoint());
  }

  std::vector<MatrixXcd> clusters{MatrixXcd::Identity(n, n)};
  for (const auto& h : herm_ops) {
    std::vector<MatrixXcd> next;
    for (const auto& basis : clusters) {
      MatrixXcd m = basis.adjoint() * h * basis;
      double invariance = (h * basis - basis * m).cwiseAbs().maxCoeff();
      if (invariance > 100 * tol.eigen_residual * op_scale(h))
        throw NumericalError("ill-conditioned-decomposition",
                             "cluster space drifts under a later operator");
      m = 0.5 * (m + m.adjoint());
      Eigen::SelfAdjointEigenSolver<MatrixXcd> es(m);
      auto ranges = cluster_ranges(es.eigenvalues(), tol.cluster);
      for (auto [b, e] : ranges)
        next.push_back(basis * es.eigenvectors().middleCols(b, e - b));
    }
    clusters = std::move(next);
  }

  int total = 0;
  for (const auto& c : clusters) total += static_cast<int>(c.cols());
  if (total != n)
    throw NumericalError("ill-conditioned-decomposition", "weight spaces do not fill u^C");

  MatrixXcd mtheta = antilinear_part(s.theta.op, tol.involution);

  for (const auto& qbasis : clusters) {
    ExtendedWeight w;
    w.lambda.resize(r);
    for (int k = 0; k < p; ++k) {
      cplx mu = cluster_eigenvalue(MatrixXcd(cplx(0, 1) * eigen_ops[k]), qbasis,
                                   tol.eigen_residual, "i ad(t)");
      w.lambda(k) = cplx(0, -1) * mu;  // ad(t) eigenvalue, purely imaginary
    }
    for (int l = 0; l < q; ++l)
      w.lambda(p + l) = cluster_eigenvalue(eigen_ops[p + l], qbasis,
                                           tol.eigen_residual, "ad(a)");
    cplx a = cluster_eigenvalue(tau_p, qbasis, tol.eigen_residual, "tau_n");
    if (std::abs(std::abs(a) - 1.0) > 100 * tol.eigen_residual)
      throw NumericalError("ill-conditioned-decomposition",
                           "tau_n eigenvalue is not unimodular");
    a /= std::abs(a);
    if (std::abs(a - cplx(1, 0)) < tol.snap_a) a = cplx(1, 0);
    if (std::abs(a + cplx(1, 0)) < tol.snap_a) a = cplx(-1, 0);
    w.a = a;

    MatrixXcd space = pr.back_columns(qbasis);
    // Columns already <,>-orthonormal; fix phases for determinism.
    for (Eigen::Index j = 0; j < space.cols(); ++j) {
      VectorXcd v = space.col(j);
      phase_fix(v);
      space.col(j) = v;
    }
    w.space = space;

    bool lam_zero = w.lambda.cwiseAbs().maxCoeff() < 10 * tol.cluster;
    bool t_zero = p == 0 || w.lambda.head(p).cwiseAbs().maxCoeff() < 10 * tol.cluster;
    bool a_zero = q == 0 || w.lambda.tail(q).cwiseAbs().maxCoeff() < 10 * tol.cluster;
    if (lam_zero)
      w.reality = WeightReality::zero;
    else if (t_zero)
      w.reality = WeightReality::real;
    else if (a_zero)
      w.reality = WeightReality::imaginary;
    else
      w.reality = WeightReality::complex;

    if (!lam_zero) {
      if (space.cols() != 1)
        throw ValidationError("invalid-argument",
                              "nonzero weight space has dimension > 1");
      VectorXcd xi = space.col(0);
      VectorXcd theta_xi = mtheta * xi.conjugate();
      w.coroot = -bracket(s.g, xi, theta_xi);
      for (int k = 0; k < r; ++k) {
        cplx b = killing_form(s.g, w.coroot, ws.cc_basis.col(k));
        if (std::abs(b - w.lambda(k)) > 1e3 * tol.eigen_residual)
          throw NumericalError("ill-conditioned-decomposition",
                               "coroot does not reproduce the weight");
      }
    }
    ws.weights.push_back(std::move(w));
  }

  auto key = [&](const ExtendedWeight& w) {
    std::vector<double> k;
    for (Eigen::Index i = 0; i < w.lambda.size(); ++i) {
      k.push_back(std::round(w.lambda(i).real() * 1e6) / 1e6);
      k.push_back(std::round(w.lambda(i).imag() * 1e6) / 1e6);
    }
    k.push_back(std::round(w.a.real() * 1e6) / 1e6);
    k.push_back(std::round(w.a.imag() * 1e6) / 1e6);
    return k;
  };
  std::sort(ws.weights.begin(), ws.weights.end(),
            [&](const ExtendedWeight& x, const ExtendedWeight& y) { return key(x) < key(y); });

  const double match = 3 * tol.cluster;
  ws.zero_index = find_weight(ws, VectorXcd::Zero(r), cplx(1, 0), match);
  if (ws.zero_index < 0)
    throw ValidationError("invalid-argument", "missing zero weight space");
  {
    ExtendedWeight& z = ws.weights[ws.zero_index];
    if (z.space.cols() != r)
      throw ValidationError("invalid-argument",
                            "zero weight space does not match the rank of c");
    double angle = max_principal_angle(orthonormal_columns(z.space, tol.rank),
                                       orthonormal_columns(ws.cc_basis, tol.rank));
    if (angle > tol.principal_angle)
      throw ValidationError("invalid-argument", "the (0,1) space is not c^C");
    z.space = ws.cc_basis;  // canonical, sigma2-real representative
  }

  for (size_t i = 0; i < ws.weights.size(); ++i) {
    auto& w = ws.weights[i];
    w.dual = find_weight(ws, VectorXcd(-w.lambda), std::conj(w.a), match);
    w.s2partner = find_weight(ws, VectorXcd(w.lambda.conjugate()), w.a, match);
    if (w.dual < 0 || w.s2partner < 0)
      throw NumericalError("ill-conditioned-decomposition",
                           "weight set is not closed under theta / sigma2");
  }

  if (has_weight_multiples(ws, tol))
    throw ValidationError("invalid-argument", "unexpected weight multiple (m lambda, a^m)");
  return ws;
}

VectorXd ita_coordinates(const WeightSystem& ws, const VectorXcd& v, const Tolerances& tol) {
  double resid = 0;
  VectorXcd coords = span_coordinates(ws.ita_basis, v, &resid);
  double scale = std::max(1.0, v.cwiseAbs().maxCoeff());
  if (resid > 1e3 * tol.eigen_residual * scale)
    throw ValidationError("invalid-argument", "element is not in c^C");
  if (coords.imag().cwiseAbs().maxCoeff() > 1e3 * tol.eigen_residual * scale)
    throw ValidationError("invalid-argument", "element is not sigma2-real in it+a");
  return coords.real();
}

Sl2Triple sl2_triple(const WeightSystem& ws, int index, const Tolerances& tol) {
  if (index < 0 || index >= static_cast<int>(ws.weights.size()))
    throw ValidationError("invalid-argument", "weight index out of range");
  const auto& w = ws.weights[index];
  if (w.reality == WeightReality::zero)
    throw ValidationError("invalid-argument", "sl2 triple needs a nonzero weight");
  VectorXcd coords = span_coordinates(ws.cc_basis, w.coroot);
  cplx lam_eta = coords.cwiseProduct(w.lambda).sum();
  if (std::abs(lam_eta) < tol.near_singular)
    throw NumericalError("degenerate-weight", "lambda(eta_lambda) vanishes");
  Sl2Triple t;
  t.e = w.space.col(0);
  t.f = (-2.0 / lam_eta) * levilab::apply(ws.setup.theta, t.e);
  t.h = (2.0 / lam_eta) * w.coroot;
  const auto& g = ws.setup.g;
  double resid = (bracket(g, t.h, t.e) - 2.0 * t.e).cwiseAbs().maxCoeff();
  resid = std::max(resid, (bracket(g, t.h, t.f) + 2.0 * t.f).cwiseAbs().maxCoeff());
  resid = std::max(resid, (bracket(g, t.e, t.f) - t.h).cwiseAbs().maxCoeff());
  double scale = std::max(1.0, t.h.cwiseAbs().maxCoeff());
  if (resid > 1e3 * tol.eigen_residual * scale)
    throw NumericalError("sl2-relations", "triple relations fail the residual test");
  return t;
}

PositiveSystem positive_system(const WeightSystem& ws, const VectorXd* regular,
                               std::uint64_t seed, const Tolerances& tol) {
  const int r = ws.datum.rank();
  std::vector<VectorXd> coefs;
  for (const auto& w : ws.weights) coefs.push_back(lambda_ita_coefficients(ws, w, tol));

  auto evaluate = [&](const VectorXd& reg, PositiveSystem& out) {
    out.regular = reg;
    out.sign.assign(ws.weights.size(), 0);
    out.margin = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < ws.weights.size(); ++i) {
      if (ws.weights[i].reality == WeightReality::zero) continue;
      double hat = coefs[i].dot(reg);
      double norm = coefs[i].norm() * std::max(reg.norm(), 1e-300);
      out.margin = std::min(out.margin, std::abs(hat) / norm);
      out.sign[i] = hat > 0 ? 1 : -1;
    }
    if (out.margin == std::numeric_limits<double>::infinity()) out.margin = 1.0;
    return out.margin > tol.regular_margin;
  };

  PositiveSystem out;
  if (regular) {
    if (regular->size() != r)
      throw ValidationError("dimension-mismatch", "regular element coordinates");
    if (!evaluate(*regular, out))
      throw ValidationError("degenerate-regular-element",
                            "supplied regular element is too close to a wall");
    return out;
  }
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 50; ++attempt)
    if (evaluate(rational_vector(r, rng), out)) return out;
  throw NumericalError("degenerate-regular-element",
                       "no regular element found in 50 draws");
}

PositiveSystem find_good_ordering(const WeightSystem& ws,
                                  const std::vector<int>& noncompact_flag,
                                  std::uint64_t seed, const Tolerances& tol) {
  if (noncompact_flag.size() != ws.weights.size())
    throw ValidationError("dimension-mismatch", "noncompact flag vector");
  const int r = ws.datum.rank();
  const int p = ws.datum.t_dim;
  std::vector<VectorXd> coefs;
  for (const auto& w : ws.weights) coefs.push_back(lambda_ita_coefficients(ws, w, tol));

  // Direction of the center of k1 meet k2 inside t, in (i t_k) coordinates.
  std::vector<VectorXd> center_dirs;
  if (p > 0) {
    MatrixXd k12 = meet(ws.setup, ws.setup.k1, ws.setup.k2, tol);
    MatrixXd z = centralizer_in(ws.setup, ws.datum.t_basis(), k12, tol);
    for (Eigen::Index j = 0; j < z.cols(); ++j) {
      VectorXd w = VectorXd::Zero(r);
      for (int k = 0; k < p; ++k)
        w(k) = ws.datum.t_basis().col(k).transpose() * ws.setup.gram_real * z.col(j);
      if (w.norm() == 0) continue;
      w /= w.norm();
      // orient by convention so the induced chamber does not depend on the
      // sign ambiguity of the centralizer basis
      int lead = 0;
      w.cwiseAbs().maxCoeff(&lead);
      if (w(lead) < 0) w = -w;
      center_dirs.push_back(w);
    }
  }

  std::mt19937_64 rng(seed);
  auto check_good = [&](const PositiveSystem& ps) {
    double min_nc = std::numeric_limits<double>::infinity();
    double max_c = -std::numeric_limits<double>::infinity();
    bool has_nc = false, has_c = false;
    for (size_t i = 0; i < ws.weights.size(); ++i) {
      if (ps.sign[i] != 1) continue;
      double hat = coefs[i].dot(ps.regular);
      if (noncompact_flag[i] == 1) {
        has_nc = true;
        min_nc = std::min(min_nc, hat);
      } else if (noncompact_flag[i] == 0) {
        has_c = true;
        max_c = std::max(max_c, hat);
      }
    }
    return !has_nc || !has_c || min_nc > max_c;
  };

  PositiveSystem best;
  bool have_any = false;
  for (int attempt = 0; attempt < 50; ++attempt) {
    VectorXd reg = rational_vector(r, rng);
    if (!center_dirs.empty()) {
      std::uniform_int_distribution<int> pick(0, static_cast<int>(center_dirs.size()) - 1);
      reg += 100.0 * center_dirs[pick(rng)];
    }
    PositiveSystem ps;
    ps.regular = reg;
    ps.sign.assign(ws.weights.size(), 0);
    ps.margin = std::numeric_limits<double>::infinity();
    bool regular_ok = true;
    for (size_t i = 0; i < ws.weights.size(); ++i) {
      if (ws.weights[i].reality == WeightReality::zero) continue;
      double hat = coefs[i].dot(reg);
      double norm = coefs[i].norm() * std::max(reg.norm(), 1e-300);
      ps.margin = std::min(ps.margin, std::abs(hat) / norm);
      ps.sign[i] = hat > 0 ? 1 : -1;
    }
    if (ps.margin == std::numeric_limits<double>::infinity()) ps.margin = 1.0;
    regular_ok = ps.margin > tol.regular_margin;
    if (!regular_ok) continue;
    if (!have_any) {
      best = ps;
      have_any = true;
    }
    if (check_good(ps)) {
      ps.good_ordering = true;
      return ps;
    }
  }
  if (!have_any)
    throw NumericalError("degenerate-regular-element",
                         "no regular element found in 50 draws");
  best.good_ordering = false;
  return best;
}

namespace {

double herm_norm(const WeightSystem& ws, const VectorXcd& v) {
  return std::sqrt(std::abs(hermitian_inner(ws.setup, v, v)));
}

VectorXcd sigma2_of(const WeightSystem& ws, const VectorXcd& v) {
  return levilab::apply(ws.setup.sigma2, v);
}

VectorXcd theta_of(const WeightSystem& ws, const VectorXcd& v) {
  return levilab::apply(ws.setup.theta, v);
}

// sigma2-real unit representative of a 1-dim space spanned by xi.
VectorXcd realize_sigma2(const WeightSystem& ws, const VectorXcd& xi) {
  VectorXcd v = xi + sigma2_of(ws, xi);
  if (herm_norm(ws, v) < 0.5) v = cplx(0, 1) * (xi - sigma2_of(ws, xi));
  VectorXcd out = v / herm_norm(ws, v);
  sign_fix(out);
  return out;
}

}  // namespace

void apply_levi_basis(WeightSystem& ws, const PositiveSystem& pos, const Tolerances& tol) {
  const auto& g = ws.setup.g;
  const size_t m = ws.weights.size();
  if (pos.sign.size() != m)
    throw ValidationError("dimension-mismatch", "positive system does not match weights");
  std::vector<bool> done(m, false);

  auto set_space = [&](int idx, const VectorXcd& v) {
    ws.weights[idx].space = v / herm_norm(ws, v);
    done[idx] = true;
  };

  // Zero weights first: (0,1) is c^C already; (0,a) spaces get sigma2-real
  // bases, with the (0, conj a) partner carried over by -theta.
  for (size_t i = 0; i < m; ++i) {
    auto& w = ws.weights[i];
    if (w.reality != WeightReality::zero || done[i]) continue;
    if (static_cast<int>(i) == ws.zero_index) {
      done[i] = true;
      continue;
    }
    // sigma2 restricted to the space as an antilinear coordinate map.
    MatrixXcd q = w.space;
    const auto d = q.cols();
    MatrixXcd s(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
      double resid = 0;
      s.col(j) = span_coordinates(q, sigma2_of(ws, q.col(j)), &resid);
      if (resid > 1e3 * tol.eigen_residual)
        throw NumericalError("ill-conditioned-decomposition",
                             "sigma2 does not preserve a zero weight space");
    }
    MatrixXd fixed = nullspace(
        MatrixXd(realify_antilinear(s) - MatrixXd::Identity(2 * d, 2 * d)), tol.rank);
    if (fixed.cols() != d)
      throw NumericalError("ill-conditioned-decomposition",
                           "zero weight space has no full sigma2-real form");
    MatrixXcd x = complexify_columns(fixed);
    // Coordinates are standard-orthonormalizable; combinations stay real.
    Eigen::LLT<MatrixXcd> llt(MatrixXcd(x.adjoint() * x));
    MatrixXcd l = llt.matrixL();
    x = l.triangularView<Eigen::Lower>().transpose().solve<Eigen::OnTheRight>(x);
    MatrixXcd basis = q * x;
    for (Eigen::Index j = 0; j < basis.cols(); ++j) {
      VectorXcd v = basis.col(j);
      sign_fix(v);
      basis.col(j) = v;
    }
    ws.weights[i].space = basis;
    done[i] = true;
    int dual = w.dual;
    if (dual != static_cast<int>(i) && !done[dual]) {
      MatrixXcd dual_basis(basis.rows(), basis.cols());
      for (Eigen::Index j = 0; j < basis.cols(); ++j)
        dual_basis.col(j) = -theta_of(ws, basis.col(j));
      ws.weights[dual].space = dual_basis;
      done[dual] = true;
    }
  }

  for (size_t i0 = 0; i0 < m; ++i0) {
    if (done[i0] || ws.weights[i0].reality == WeightReality::zero) continue;
    // Pick the positive representative of this orbit that sorts first.
    int i = -1;
    int orbit[4] = {static_cast<int>(i0), ws.weights[i0].dual, ws.weights[i0].s2partner,
                    ws.weights[ws.weights[i0].dual].s2partner};
    for (int c : orbit)
      if (!done[c] && pos.sign[c] == 1 && (i < 0 || c < i)) i = c;
    if (i < 0)
      throw NumericalError("ill-conditioned-decomposition",
                           "orbit without a positive member");

    ExtendedWeight& w = ws.weights[i];
    const int id = w.dual, is2 = w.s2partner;
    const int is2d = ws.weights[id].s2partner;

    if (w.reality == WeightReality::real) {
      // sigma2 fixes the index; theta pairs it with the dual.
      VectorXcd xi = realize_sigma2(ws, w.space.col(0));
      set_space(i, xi);
      set_space(id, -theta_of(ws, xi));
      ws.weights[i].norm_sign = ws.weights[id].norm_sign = 1;
    } else if (w.reality == WeightReality::imaginary && is2 == id) {
      // a = +-1: sigma2 carries i to its dual; the pairing sign is intrinsic.
      VectorXcd xi = w.space.col(0);
      phase_fix(xi);
      set_space(i, xi);
      set_space(id, sigma2_of(ws, xi));
      cplx b = killing_form(g, ws.weights[i].space.col(0), ws.weights[id].space.col(0));
      if (std::abs(std::abs(b.real()) - 1.0) > 1e-6 || std::abs(b.imag()) > 1e-6)
        throw NumericalError("ill-conditioned-decomposition",
                             "imaginary pairing is not +-1");
      int sign = b.real() > 0 ? 1 : -1;
      ws.weights[i].norm_sign = ws.weights[id].norm_sign = sign;
    } else {
      // Four distinct indices: i, sigma2 partner, dual, sigma2 of dual.
      VectorXcd xi = w.space.col(0);
      phase_fix(xi);
      set_space(i, xi);
      set_space(is2, sigma2_of(ws, xi));
      set_space(id, -theta_of(ws, xi));
      set_space(is2d, sigma2_of(ws, -theta_of(ws, xi)));
      ws.weights[i].norm_sign = ws.weights[id].norm_sign = 1;
      ws.weights[is2].norm_sign = ws.weights[is2d].norm_sign = 1;
    }
  }

  // Refresh coroots from the final representatives and check the pairing.
  for (auto& w : ws.weights) {
    if (w.reality == WeightReality::zero) continue;
    VectorXcd xi = w.space.col(0);
    w.coroot = -bracket(g, xi, theta_of(ws, xi));
  }
  for (size_t i = 0; i < m; ++i) {
    auto& w = ws.weights[i];
    if (w.reality == WeightReality::zero) continue;
    VectorXcd br = bracket(g, w.space.col(0), ws.weights[w.dual].space.col(0));
    VectorXcd expect = double(w.norm_sign) * w.coroot;
    if ((br - expect).cwiseAbs().maxCoeff() > 1e3 * tol.eigen_residual)
      throw NumericalError("ill-conditioned-decomposition",
                           "normalized pairing [xi, xi_dual] != sign * coroot");
    double s2resid =
        (sigma2_of(ws, w.space.col(0)) - ws.weights[w.s2partner].space.col(0)).norm();
    if (s2resid > 1e3 * tol.eigen_residual)
      throw NumericalError("ill-conditioned-decomposition",
                           "sigma2 compatibility of the Levi basis failed");
  }
  ws.levi_basis_applied = true;
}

bool is_irreducible(const WeightSystem& ws, const Tolerances& tol) {
  std::vector<int> idx;
  for (size_t i = 0; i < ws.weights.size(); ++i)
    if (ws.weights[i].reality != WeightReality::zero) idx.push_back(static_cast<int>(i));
  if (idx.empty()) return true;
  const size_t nn = idx.size();
  std::vector<std::vector<int>> adj(nn);
  std::vector<double> len(nn);
  for (size_t a = 0; a < nn; ++a)
    len[a] = std::abs(killing_form(ws.setup.g, ws.weights[idx[a]].coroot,
                                   ws.weights[idx[a]].coroot));
  for (size_t a = 0; a < nn; ++a)
    for (size_t b = a + 1; b < nn; ++b) {
      cplx pairing = killing_form(ws.setup.g, ws.weights[idx[a]].coroot,
                                  ws.weights[idx[b]].coroot);
      if (std::abs(pairing) > tol.rank * std::sqrt(len[a] * len[b])) {
        adj[a].push_back(static_cast<int>(b));
        adj[b].push_back(static_cast<int>(a));
      }
    }
  std::vector<bool> seen(nn, false);
  std::vector<int> stack{0};
  seen[0] = true;
  size_t count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u : adj[v])
      if (!seen[u]) {
        seen[u] = true;
        ++count;
        stack.push_back(u);
      }
  }
  return count == nn;
}

bool has_weight_multiples(const WeightSystem& ws, const Tolerances& tol) {
  const double match = 3 * tol.cluster;
  for (const auto& w : ws.weights) {
    if (w.reality == WeightReality::zero) continue;
    for (int mm = 2; mm <= 3; ++mm) {
      cplx am = std::pow(w.a, mm);
      int j = find_weight(ws, VectorXcd(double(mm) * w.lambda), am, match);
      if (j >= 0 && ws.weights[j].reality != WeightReality::zero) return true;
    }
  }
  return false;
}

}  // namespace levilab
