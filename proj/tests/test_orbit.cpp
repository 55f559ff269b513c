#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "levilab/orbit.hpp"
#include "support.hpp"

using namespace levilab;
using levitest::fixture;
using levitest::nonzero_weights;

TEST_CASE("multipliers follow the weights and tau_z acts by them") {
  for (const char* name : {"sl2:s11-s11:k=1", "sl2:theta-s11:k=1",
                           "sl2:s11-theta:k=2", "sl3:std:k=1"}) {
    CAPTURE(name);
    const levitest::Fixture& f = fixture(name);
    VectorXd eta = VectorXd::Zero(f.ws.datum.rank());
    eta(0) = 0.3;
    BasePoint base{eta};
    OrbitProfile p = orbit_profile(f.ws, base);
    REQUIRE(p.multiplier.size() == f.ws.weights.size());
    MatrixXd tz = tau_z_operator(f.ws, base);
    for (size_t i = 0; i < f.ws.weights.size(); ++i) {
      const ExtendedWeight& w = f.ws.weights[i];
      cplx expected = w.a * std::exp(cplx(0, -2) * lambda_at(w, eta));
      CHECK(std::abs(p.multiplier[i] - expected) < 1e-10);
      for (int c = 0; c < w.space.cols(); ++c) {
        VectorXcd xi = w.space.col(c);
        CHECK((apply_real_op(tz, xi) - p.multiplier[i] * xi).norm() < 1e-7);
      }
    }
    // membership list matches the multiplier test
    for (size_t i = 0; i < f.ws.weights.size(); ++i) {
      bool member = std::abs(p.multiplier[i] - cplx(1, 0)) <= 1e-8;
      bool listed = std::find(p.lambda_tilde_z.begin(), p.lambda_tilde_z.end(),
                              static_cast<int>(i)) != p.lambda_tilde_z.end();
      CHECK(member == listed);
    }
    // complex tangent indices are the nonzero complement
    for (int i : nonzero_weights(f.ws)) {
      bool in_tangent =
          std::find(p.complex_tangent_indices.begin(),
                    p.complex_tangent_indices.end(), i) !=
          p.complex_tangent_indices.end();
      bool in_tilde = std::find(p.lambda_tilde_z.begin(), p.lambda_tilde_z.end(),
                                i) != p.lambda_tilde_z.end();
      CHECK(in_tangent == !in_tilde);
    }
    CHECK(p.codim ==
          f.ws.datum.rank() + static_cast<int>(p.lambda_tilde_z.size()) - 1);
  }
}

TEST_CASE("eta zero degenerates the noncompact orbit to codimension three") {
  const levitest::Fixture& f = fixture("sl2:s11-s11:k=1");
  OrbitProfile p = orbit_profile(f.ws, BasePoint{VectorXd::Zero(1)});
  CHECK(p.codim == 3);
  CHECK(!p.strongly_regular);
  CHECK(p.lambda_tilde_z.size() == f.ws.weights.size());
}

TEST_CASE("hypersurface case stays codimension one at random base points") {
  const levitest::Fixture& f = fixture("sl2:theta-s11:k=1");
  std::mt19937_64 rng(20260825);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    VectorXd eta(1);
    eta(0) = u(rng);
    OrbitProfile p = orbit_profile(f.ws, BasePoint{eta});
    CAPTURE(eta(0));
    CHECK(p.codim == 1);
    CHECK(p.strongly_regular);
  }
}

TEST_CASE("a period of the multiplier re-enters the degenerate stratum") {
  const levitest::Fixture& f = fixture("sl2:s11-s11:k=1");
  int i = nonzero_weights(f.ws)[0];
  double l0 = f.ws.weights[i].lambda(0).real();
  REQUIRE(std::abs(l0) > 1e-6);
  REQUIRE(std::abs(f.ws.weights[i].lambda(0).imag()) < 1e-10);

  // lambda(eta) = pi gives multiplier e^{-2 pi i} = 1 for +-lambda
  VectorXd eta(1);
  eta(0) = M_PI / l0;
  OrbitProfile p = orbit_profile(f.ws, BasePoint{eta});
  CHECK(p.codim == 3);
  CHECK(!p.strongly_regular);

  // just short of the period: regular but flagged as nearly degenerate
  eta(0) = (M_PI - 2e-6) / l0;
  OrbitProfile q = orbit_profile(f.ws, BasePoint{eta});
  CHECK(q.codim == 1);
  CHECK(q.strongly_regular);
  CHECK(q.near_degenerate);
  CHECK(q.nearest_offset > 1e-8);
  CHECK(q.nearest_offset < 1e-5);
}

TEST_CASE("profiles validate the base point length") {
  const levitest::Fixture& f = fixture("sl2:s11-s11:k=1");
  CHECK_THROWS_AS(orbit_profile(f.ws, BasePoint{VectorXd::Zero(2)}),
                  ValidationError);
}

TEST_CASE("rank two product carries codimension two at regular points") {
  const levitest::Fixture& f = fixture("sl2:untwisted-s11:k=2");
  VectorXd eta(2);
  eta << 0.3, 0.2;
  OrbitProfile p = orbit_profile(f.ws, BasePoint{eta});
  CHECK(p.codim == 2);
  CHECK(p.strongly_regular);
}
