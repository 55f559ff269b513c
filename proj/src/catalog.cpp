#include "levilab/catalog.hpp"

namespace levilab {

namespace {

int base_n(const std::string& base) {
  if (base == "sl2") return 2;
  if (base == "sl3") return 3;
  throw ValidationError("invalid-argument", "unknown base algebra: " + base);
}

// Antilinear component maps as coordinate matrices: phi(x) = M conj(x).
MatrixXcd component_matrix(const std::string& map_name, int n) {
  auto basis = sl_matrix_basis(n);
  const int d = n * n - 1;
  MatrixXcd m(d, d);
  for (int i = 0; i < d; ++i)
    m.col(i) = sl_coordinates(n, base_involution_matrix_map(map_name, n, basis[i]));
  return m;
}

// Product involution with per-component antilinear maps and a source
// permutation: phi(x)_i = f_i(x_{perm(i)}).
Involution product_involution(const LieAlgebra& g, int n, int k,
                              const std::vector<std::string>& maps,
                              const std::vector<int>& perm, std::string label,
                              const Tolerances& tol) {
  const int d = n * n - 1;
  MatrixXcd m = MatrixXcd::Zero(g.dim, g.dim);
  for (int i = 0; i < k; ++i)
    m.block(i * d, perm[i] * d, d, d) = component_matrix(maps[i], n);
  return make_involution(g, realify_antilinear(m), std::move(label), tol);
}

std::pair<std::string, std::string> pair_maps(const CaseSpec& spec) {
  if (spec.base == "sl3") {
    if (spec.pair != "std")
      throw ValidationError("invalid-argument", "sl3 supports only the pair 'std'");
    return {"conj", "i21"};
  }
  std::string p = spec.pair;
  if (p.rfind("untwisted-", 0) == 0) {
    std::string s = p.substr(10);
    if (s != "s11" && s != "theta")
      throw ValidationError("invalid-argument", "bad involution name: " + s);
    return {s, "theta"};
  }
  auto dash = p.find('-');
  if (dash == std::string::npos)
    throw ValidationError("invalid-argument", "bad pair name: " + spec.pair);
  std::string first = p.substr(0, dash);
  std::string second = p.substr(dash + 1);
  for (const std::string& x : {first, second})
    if (x != "s11" && x != "theta")
      throw ValidationError("invalid-argument", "bad involution name: " + x);
  return {first, second};
}

}  // namespace

MatrixXcd base_involution_matrix_map(const std::string& name, int n, const MatrixXcd& x) {
  if (name == "theta") return -x.conjugate().transpose();
  if (name == "conj") return x.conjugate();
  if (name == "s11") {
    if (n != 2) throw ValidationError("invalid-argument", "s11 lives on sl2");
    MatrixXcd j = MatrixXcd::Zero(2, 2);
    j(0, 0) = 1;
    j(1, 1) = -1;
    return -j * x.conjugate().transpose() * j;
  }
  if (name == "i21") {
    if (n != 3) throw ValidationError("invalid-argument", "i21 lives on sl3");
    MatrixXcd i21 = MatrixXcd::Identity(3, 3);
    i21(2, 2) = -1;
    return -i21 * x.conjugate().transpose() * i21;
  }
  throw ValidationError("invalid-argument", "unknown involution map: " + name);
}

CaseSpec parse_case_name(const std::string& name) {
  CaseSpec spec;
  auto c1 = name.find(':');
  auto c2 = name.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw ValidationError("invalid-argument", "case name must be base:pair:k=N");
  spec.base = name.substr(0, c1);
  spec.pair = name.substr(c1 + 1, c2 - c1 - 1);
  std::string ks = name.substr(c2 + 1);
  if (ks.rfind("k=", 0) != 0)
    throw ValidationError("invalid-argument", "case name must end with k=N");
  try {
    spec.k = std::stoi(ks.substr(2));
  } catch (const std::exception&) {
    throw ValidationError("invalid-argument", "bad k in case name: " + ks);
  }
  return spec;
}

std::string case_name(const CaseSpec& spec) {
  return spec.base + ":" + spec.pair + ":k=" + std::to_string(spec.k);
}

CatalogCase build_case(const CaseSpec& spec, const Tolerances& tol) {
  const int n = base_n(spec.base);
  if (spec.k < 1) throw ValidationError("invalid-argument", "k must be at least 1");
  const int k = spec.k;

  LieAlgebra base = build_sl(n, tol);
  LieAlgebra g = k == 1 ? base : direct_sum(std::vector<LieAlgebra>(k, base), tol);

  auto [s_map, t_map] = pair_maps(spec);
  bool untwisted = spec.pair.rfind("untwisted-", 0) == 0;
  if (untwisted && k < 2)
    throw ValidationError("invalid-argument", "untwisted products need k >= 2");

  std::vector<std::string> m1(k, "theta"), m2(k, "theta");
  std::vector<int> p1(k), p2(k);
  for (int i = 0; i < k; ++i) p1[i] = p2[i] = i;

  if (untwisted) {
    for (int i = 0; i < k; ++i) m1[i] = s_map;
  } else if (k % 2 == 1) {
    // sigma1: s on component 1, theta swapping {2j, 2j+1} (1-based).
    m1[0] = s_map;
    for (int j = 1; 2 * j < k; ++j) {
      p1[2 * j - 1] = 2 * j;
      p1[2 * j] = 2 * j - 1;
    }
    // sigma2: theta swapping {2j-1, 2j}, t on the last component.
    for (int j = 1; 2 * j < k; ++j) {
      p2[2 * j - 2] = 2 * j - 1;
      p2[2 * j - 1] = 2 * j - 2;
    }
    m2[k - 1] = t_map;
  } else {
    m1[0] = s_map;
    for (int j = 1; 2 * j < k; ++j) {
      p1[2 * j - 1] = 2 * j;
      p1[2 * j] = 2 * j - 1;
    }
    m1[k - 1] = t_map;
    for (int j = 1; 2 * j <= k; ++j) {
      p2[2 * j - 2] = 2 * j - 1;
      p2[2 * j - 1] = 2 * j - 2;
    }
  }

  std::vector<std::string> th(k, "theta");
  std::vector<int> ident(k);
  for (int i = 0; i < k; ++i) ident[i] = i;

  Involution theta = product_involution(g, n, k, th, ident, "theta", tol);
  Involution sigma1 = product_involution(g, n, k, m1, p1, "sigma1", tol);
  Involution sigma2 = product_involution(g, n, k, m2, p2, "sigma2", tol);

  CatalogCase out;
  out.spec = spec;
  out.name = case_name(spec);
  out.setup = make_setup(g, theta, sigma1, sigma2, tol);
  return out;
}

CatalogCase build_case(const std::string& name, const Tolerances& tol) {
  return build_case(parse_case_name(name), tol);
}

std::vector<std::string> catalog_names() {
  return {
      "sl2:s11-s11:k=1",  "sl2:s11-theta:k=1", "sl2:theta-s11:k=1",
      "sl2:theta-theta:k=1", "sl3:std:k=1",    "sl2:s11-s11:k=2",
      "sl2:s11-theta:k=2", "sl2:theta-theta:k=2", "sl2:untwisted-s11:k=2",
      "sl2:s11-theta:k=3",
  };
}

std::vector<std::pair<std::string, CartanDatum>> standard_cartan_menu(
    const CatalogCase& c, std::uint64_t seed, const Tolerances& tol) {
  std::vector<std::pair<std::string, CartanDatum>> menu;
  menu.emplace_back("fundamental", fundamental_datum(c.setup, seed, tol));

  if (c.spec.base == "sl2" && c.spec.k == 1 && c.spec.pair == "s11-s11") {
    // The compact Cartan of su(1,1): span of diag(i, -i) = i H.
    const int dim = c.setup.g.dim;
    VectorXcd ih = VectorXcd::Zero(dim);
    ih(2) = cplx(0, 1);
    MatrixXd cb(2 * dim, 1);
    cb.col(0) = realify(ih);
    menu.emplace_back("compact", make_datum(c.setup, VectorXd::Zero(2 * dim), cb, tol));
  }
  return menu;
}

}  // namespace levilab
