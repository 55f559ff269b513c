#pragma once

#include "levilab/cartan.hpp"
#include "levilab/lie_algebra.hpp"

namespace levilab {

// A case is a k-fold product of sl(2,C) or sl(3,C) with the product
// involutions built from a pair (s, t) of commuting antiholomorphic
// involutions of the base algebra:
//
//   odd k:   sigma1 = (s(x1), th(x3), th(x2), ..., th(xk), th(x_{k-1}))
//            sigma2 = (th(x2), th(x1), ..., th(x_{k-1}), th(x_{k-2}), t(xk))
//   even k:  sigma1 = (s(x1), th(x3), th(x2), ..., th(x_{k-1}), th(x_{k-2}), t(xk))
//            sigma2 = (th(x2), th(x1), ..., th(xk), th(x_{k-1}))
//
// where th is the compact involution X -> -conj(X)^T. For sl2, s and t range
// over {s11, theta} with s11(X) = -J conj(X)^T J, J = diag(1,-1). For sl3 the
// pair is fixed: s = entrywise conjugation (fixing sl(3,R)) and
// t = -I21 conj(X)^T I21 with I21 = diag(1,1,-1) (fixing su(2,1)).
//
// "untwisted" builds sigma1 = (s,...,s), sigma2 = (th,...,th) componentwise
// with no swapping; those products decompose and serve as reducibility
// counterexamples.

struct CaseSpec {
  std::string base = "sl2";   // sl2 | sl3
  int k = 1;
  std::string pair = "s11-theta";  // s11-s11 | s11-theta | theta-s11 | theta-theta
                                   // | std (sl3) | untwisted-s11 | untwisted-theta
};

struct CatalogCase {
  std::string name;
  CaseSpec spec;
  RealFormSetup setup;
};

// Name scheme: base:pair:k=N, e.g. "sl2:s11-theta:k=1".
CaseSpec parse_case_name(const std::string& name);
std::string case_name(const CaseSpec& spec);

CatalogCase build_case(const CaseSpec& spec, const Tolerances& tol = {});
CatalogCase build_case(const std::string& name, const Tolerances& tol = {});

// The cases every test ships with.
std::vector<std::string> catalog_names();

// Cartan data available for a case: always ("fundamental", ...), plus curated
// extras such as the compact datum of sl2:s11-s11:k=1.
std::vector<std::pair<std::string, CartanDatum>> standard_cartan_menu(
    const CatalogCase& c, std::uint64_t seed, const Tolerances& tol = {});

// Matrix-level involution of the base algebra, used by the catalog and by the
// extrinsic checks: name in {theta, s11, conj, i21}.
MatrixXcd base_involution_matrix_map(const std::string& name, int n, const MatrixXcd& x);

}  // namespace levilab
