#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "support.hpp"

using namespace levilab;
using levitest::fixture;

namespace {

VectorXcd random_vec(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  VectorXcd x(n);
  for (int i = 0; i < n; ++i) x(i) = cplx(n01(rng), n01(rng));
  return x;
}

std::vector<std::vector<VectorXcd>> sl2_bracket_table() {
  std::vector<MatrixXcd> basis = sl_matrix_basis(2);
  std::vector<std::vector<VectorXcd>> b(3, std::vector<VectorXcd>(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      b[i][j] = sl_coordinates(2, basis[i] * basis[j] - basis[j] * basis[i]);
  return b;
}

}  // namespace

TEST_CASE("sl2 structure constants and Killing values") {
  LieAlgebra g = build_sl(2);
  REQUIRE(g.dim == 3);
  REQUIRE(g.labels.size() == 3);
  // basis order E12, E21, H with B(X,Y) = 4 tr(XY)
  CHECK(g.killing(2, 2).real() == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(g.killing(0, 1).real() == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(std::abs(g.killing(0, 0)) < 1e-12);
  // [E12, E21] = H
  VectorXcd h = bracket(g, VectorXcd::Unit(3, 0), VectorXcd::Unit(3, 1));
  CHECK((h - VectorXcd::Unit(3, 2)).norm() < 1e-12);
}

TEST_CASE("sl3 Killing values on the Cartan part") {
  LieAlgebra g = build_sl(3);
  REQUIRE(g.dim == 8);
  // B(X,Y) = 6 tr(XY); H1, H2 sit in the last two slots
  CHECK(g.killing(6, 6).real() == doctest::Approx(12.0).epsilon(1e-12));
  CHECK(g.killing(6, 7).real() == doctest::Approx(-6.0).epsilon(1e-12));
  CHECK(g.killing(0, 2).real() == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("sl coordinates and matrix realization are inverse") {
  std::mt19937_64 rng(11);
  for (int n : {2, 3}) {
    int d = n * n - 1;
    VectorXcd c = random_vec(d, rng);
    CHECK((sl_coordinates(n, sl_matrix_of(n, c)) - c).norm() < 1e-13);
    // matrix bracket agrees with the structure tensor
    LieAlgebra g = build_sl(n);
    VectorXcd x = random_vec(d, rng), y = random_vec(d, rng);
    MatrixXcd mx = sl_matrix_of(n, x), my = sl_matrix_of(n, y);
    VectorXcd via_matrices = sl_coordinates(n, mx * my - my * mx);
    CHECK((bracket(g, x, y) - via_matrices).norm() < 1e-12);
  }
}

TEST_CASE("ad, bracket, and the Killing form fit together") {
  LieAlgebra g = build_sl(3);
  std::mt19937_64 rng(12);
  VectorXcd x = random_vec(8, rng), y = random_vec(8, rng), z = random_vec(8, rng);
  CHECK((ad_of(g, x) * y - bracket(g, x, y)).norm() < 1e-12);
  // symmetry and C-bilinearity
  CHECK(std::abs(killing_form(g, x, y) - killing_form(g, y, x)) < 1e-10);
  CHECK(std::abs(killing_form(g, cplx(0, 1) * x, y) -
                 cplx(0, 1) * killing_form(g, x, y)) < 1e-10);
  // invariance B([x,y],z) + B(y,[x,z]) = 0
  cplx inv = killing_form(g, bracket(g, x, y), z) +
             killing_form(g, y, bracket(g, x, z));
  CHECK(std::abs(inv) < 1e-9 * (1 + x.norm() * y.norm() * z.norm()));
}

TEST_CASE("make_algebra rejects corrupted structure tensors") {
  auto table = sl2_bracket_table();
  auto bad = table;
  bad[0][1](0) += 0.1;  // breaks antisymmetry against bad[1][0]
  CHECK_THROWS_AS(make_algebra({"a", "b", "c"}, bad, {}), ValidationError);
  auto bad2 = table;
  bad2[0][1](0) += 0.1;
  bad2[1][0](0) -= 0.1;  // antisymmetric but no longer Jacobi
  CHECK_THROWS_AS(make_algebra({"a", "b", "c"}, bad2, {}), ValidationError);
  CHECK_NOTHROW(make_algebra({"a", "b", "c"}, table, {}));
}

TEST_CASE("direct sums have vanishing cross brackets and prefixed labels") {
  LieAlgebra s = build_sl(2);
  LieAlgebra g = direct_sum({s, s});
  REQUIRE(g.dim == 6);
  CHECK(g.labels[0].rfind("g1:", 0) == 0);
  CHECK(g.labels[3].rfind("g2:", 0) == 0);
  for (int i = 0; i < 3; ++i)
    for (int j = 3; j < 6; ++j)
      CHECK(bracket(g, VectorXcd::Unit(6, i), VectorXcd::Unit(6, j)).norm() <
            1e-14);
  // within a factor the sl2 constants survive
  VectorXcd h = bracket(g, VectorXcd::Unit(6, 3), VectorXcd::Unit(6, 4));
  CHECK((h - VectorXcd::Unit(6, 5)).norm() < 1e-12);
}

TEST_CASE("case involutions are antilinear involutive automorphisms") {
  const RealFormSetup& s = fixture("sl2:theta-theta:k=1").cc.setup;
  for (const Involution* inv : {&s.theta, &s.sigma1, &s.sigma2}) {
    CHECK(inv->antilinear);
    CHECK((inv->op * inv->op - MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() <
          1e-12);
  }
  std::mt19937_64 rng(13);
  VectorXcd x = random_vec(3, rng), y = random_vec(3, rng);
  VectorXcd lhs = levilab::apply(s.theta, bracket(s.g, x, y));
  VectorXcd rhs = bracket(s.g, levilab::apply(s.theta, x), levilab::apply(s.theta, y));
  CHECK((lhs - rhs).norm() < 1e-12);
}

TEST_CASE("make_involution rejects random antilinear maps") {
  LieAlgebra g = build_sl(2);
  std::mt19937_64 rng(14);
  MatrixXcd m(3, 3);
  for (int i = 0; i < 3; ++i) m.row(i) = random_vec(3, rng).transpose();
  CHECK_THROWS_AS(make_involution(g, realify_antilinear(m), "junk", {}),
                  ValidationError);
}

TEST_CASE("setup carries positive definite metrics and fixed spaces") {
  const RealFormSetup& s = fixture("sl2:s11-s11:k=1").cc.setup;
  REQUIRE(s.g1.cols() == 3);  // su(1,1)
  REQUIRE(s.g2.cols() == 3);
  CHECK(s.k1.cols() == 1);
  CHECK(s.p1.cols() == 2);
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(s.gram);
  CHECK(es.eigenvalues().minCoeff() > 0.0);
  CHECK((s.gram - s.gram.adjoint()).norm() < 1e-12);
  CHECK((s.gram_real - s.gram_real.transpose()).norm() < 1e-12);
  std::mt19937_64 rng(15);
  VectorXcd x = random_vec(3, rng);
  cplx n = hermitian_inner(s, x, x);
  CHECK(n.real() > 0.0);
  CHECK(std::abs(n.imag()) < 1e-12);
}

TEST_CASE("fixed_subspace returns pointwise fixed orthonormal columns") {
  const RealFormSetup& s = fixture("sl2:theta-theta:k=1").cc.setup;
  MatrixXd fix = fixed_subspace(s, s.theta.op, {});
  REQUIRE(fix.cols() == 3);  // su(2)
  for (int c = 0; c < fix.cols(); ++c)
    CHECK((s.theta.op * fix.col(c) - fix.col(c)).norm() < 1e-10);
  CHECK(meet(s, s.k1, s.k2, {}).cols() == 3);  // k1 = k2 = su(2)
}

TEST_CASE("cartan_decompose splits a real form along theta") {
  const RealFormSetup& s = fixture("sl2:s11-s11:k=1").cc.setup;
  auto [k, p] = cartan_decompose(s, s.g1, {});
  CHECK(k.cols() == 1);
  CHECK(p.cols() == 2);
  for (int c = 0; c < k.cols(); ++c)
    CHECK((s.theta.op * k.col(c) - k.col(c)).norm() < 1e-10);
  for (int c = 0; c < p.cols(); ++c)
    CHECK((s.theta.op * p.col(c) + p.col(c)).norm() < 1e-10);
}
