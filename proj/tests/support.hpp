#pragma once

#include <map>
#include <string>
#include <vector>

#include "levilab/catalog.hpp"
#include "levilab/verify.hpp"

namespace levitest {

using namespace levilab;

// Fixed seed so results do not depend on LEVILAB_SEED being set in the
// environment that runs the suite.
constexpr std::uint64_t kSeed = 42;

// A decomposed catalog case with the normalized weight basis installed.
// Cached per binary; building one is cheap but most files touch every case
// several times.
struct Fixture {
  CatalogCase cc;
  CartanDatum datum;
  WeightSystem ws;
  PositiveSystem pos;
};

inline const Fixture& fixture(const std::string& name, int menu_index = 0) {
  static std::map<std::string, Fixture> cache;
  std::string key = name + "#" + std::to_string(menu_index);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  Fixture f;
  f.cc = build_case(name);
  auto menu = standard_cartan_menu(f.cc, kSeed);
  f.datum = menu.at(static_cast<size_t>(menu_index)).second;
  f.ws = extended_decomposition(f.cc.setup, f.datum);
  f.pos = positive_system(f.ws, nullptr, kSeed);
  apply_levi_basis(f.ws, f.pos);
  return cache.emplace(key, std::move(f)).first->second;
}

inline std::vector<int> nonzero_weights(const WeightSystem& ws) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(ws.weights.size()); ++i)
    if (ws.weights[i].reality != WeightReality::zero) out.push_back(i);
  return out;
}

// Relative least-squares residual of y against the column span of basis.
inline double span_residual(const MatrixXcd& basis, const VectorXcd& y) {
  double r = 0.0;
  span_coordinates(basis, y, &r);
  double n = y.norm();
  return n > 0 ? r / n : r;
}

// Worst Jacobi defect of the structure tensor over all basis triples,
// measured through the ad matrices.
inline double jacobi_residual(const LieAlgebra& g) {
  double worst = 0.0;
  for (int i = 0; i < g.dim; ++i)
    for (int j = 0; j < g.dim; ++j) {
      VectorXcd eij = g.ad[i].col(j);  // [e_i, e_j]
      MatrixXcd defect = g.ad[i] * g.ad[j] - g.ad[j] * g.ad[i] - ad_of(g, eij);
      worst = std::max(worst, defect.cwiseAbs().maxCoeff());
    }
  return worst;
}

// Worst automorphism defect of an involution over all basis pairs.
inline double automorphism_residual(const LieAlgebra& g, const Involution& s) {
  double worst = 0.0;
  for (int i = 0; i < g.dim; ++i) {
    VectorXcd si = levilab::apply(s, VectorXcd::Unit(g.dim, i));
    for (int j = 0; j < g.dim; ++j) {
      VectorXcd sj = levilab::apply(s, VectorXcd::Unit(g.dim, j));
      VectorXcd lhs = levilab::apply(s, g.ad[i].col(j));
      worst = std::max(worst, (lhs - bracket(g, si, sj)).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

inline double commutation_residual(const Involution& a, const Involution& b) {
  return (a.op * b.op - b.op * a.op).cwiseAbs().maxCoeff();
}

}  // namespace levitest
