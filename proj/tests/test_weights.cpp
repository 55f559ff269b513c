#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace levilab;
using levitest::fixture;
using levitest::kSeed;
using levitest::nonzero_weights;
using levitest::span_residual;

TEST_CASE("weight spaces tile the algebra and carry the eigen data") {
  for (const std::string& name : catalog_names()) {
    CAPTURE(name);
    const levitest::Fixture& f = fixture(name);
    const WeightSystem& ws = f.ws;
    const LieAlgebra& g = f.cc.setup.g;

    int total = 0;
    for (const ExtendedWeight& w : ws.weights) total += w.space.cols();
    CHECK(total == g.dim);
    REQUIRE(ws.zero_index >= 0);
    CHECK(ws.weights[ws.zero_index].space.cols() == ws.datum.rank());
    CHECK(ws.cc_basis.cols() == ws.datum.rank());

    for (const ExtendedWeight& w : ws.weights) {
      CAPTURE(w.lambda.transpose());
      CHECK(std::abs(std::abs(w.a) - 1.0) < 1e-9);
      for (int c = 0; c < w.space.cols(); ++c) {
        VectorXcd xi = w.space.col(c);
        for (int k = 0; k < ws.datum.rank(); ++k) {
          VectorXcd ck = complexify(VectorXd(ws.datum.c_basis.col(k)));
          CHECK((bracket(g, ck, xi) - w.lambda(k) * xi).norm() < 1e-7);
        }
        CHECK((apply_real_op(ws.taun, xi) - w.a * xi).norm() < 1e-7);
      }
    }
  }
}

TEST_CASE("dual and sigma2 partner indexing is involutive and consistent") {
  for (const std::string& name : catalog_names()) {
    CAPTURE(name);
    const WeightSystem& ws = fixture(name).ws;
    for (size_t i = 0; i < ws.weights.size(); ++i) {
      const ExtendedWeight& w = ws.weights[i];
      REQUIRE(w.dual >= 0);
      REQUIRE(w.s2partner >= 0);
      const ExtendedWeight& d = ws.weights[w.dual];
      CHECK(d.dual == static_cast<int>(i));
      CHECK((d.lambda + w.lambda).norm() < 1e-8);
      CHECK(std::abs(d.a * w.a - cplx(1, 0)) < 1e-8);
      const ExtendedWeight& p = ws.weights[w.s2partner];
      CHECK(p.s2partner == static_cast<int>(i));
      CHECK((p.lambda - w.lambda.conjugate()).norm() < 1e-8);
      CHECK(std::abs(p.a - w.a) < 1e-8);
    }
  }
}

TEST_CASE("theta maps each weight space onto the dual one") {
  for (const std::string& name : catalog_names()) {
    CAPTURE(name);
    const levitest::Fixture& f = fixture(name);
    for (const ExtendedWeight& w : f.ws.weights) {
      const ExtendedWeight& d = f.ws.weights[w.dual];
      for (int c = 0; c < w.space.cols(); ++c) {
        VectorXcd tx = levilab::apply(f.cc.setup.theta, VectorXcd(w.space.col(c)));
        CHECK(span_residual(d.space, tx) < 1e-8);
      }
    }
  }
}

TEST_CASE("the Killing form pairs only dual weight spaces") {
  for (const std::string& name : catalog_names()) {
    CAPTURE(name);
    const levitest::Fixture& f = fixture(name);
    const LieAlgebra& g = f.cc.setup.g;
    const auto& w = f.ws.weights;
    for (size_t i = 0; i < w.size(); ++i)
      for (size_t j = 0; j < w.size(); ++j)
        for (int ci = 0; ci < w[i].space.cols(); ++ci)
          for (int cj = 0; cj < w[j].space.cols(); ++cj) {
            cplx b = killing_form(g, VectorXcd(w[i].space.col(ci)),
                                  VectorXcd(w[j].space.col(cj)));
            if (w[i].dual != static_cast<int>(j)) {
              CAPTURE(i);
              CAPTURE(j);
              CHECK(std::abs(b) < 1e-8);
            }
          }
    // the pairing with the dual is nondegenerate on every nonzero weight
    for (int i : nonzero_weights(f.ws)) {
      cplx b = killing_form(g, VectorXcd(w[i].space.col(0)),
                            VectorXcd(w[w[i].dual].space.col(0)));
      CHECK(std::abs(b) > 0.05);
    }
  }
}

TEST_CASE("coroots represent the weight through the Killing form") {
  for (const std::string& name : catalog_names()) {
    CAPTURE(name);
    const levitest::Fixture& f = fixture(name);
    const LieAlgebra& g = f.cc.setup.g;
    std::vector<int> nz = nonzero_weights(f.ws);
    for (int i : nz) {
      const ExtendedWeight& w = f.ws.weights[i];
      VectorXcd xi = w.space.col(0);
      VectorXcd eta = -bracket(g, xi, levilab::apply(f.cc.setup.theta, xi));
      REQUIRE(w.coroot.size() == g.dim);
      CHECK((eta - w.coroot).norm() < 1e-8);
      for (int k = 0; k < f.ws.datum.rank(); ++k) {
        VectorXcd ck = complexify(VectorXd(f.ws.datum.c_basis.col(k)));
        CHECK(std::abs(killing_form(g, eta, ck) - w.lambda(k)) < 1e-8);
      }
    }
    // the coroot depends on lambda only, not on the circle factor
    for (size_t x = 0; x < nz.size(); ++x)
      for (size_t y = x + 1; y < nz.size(); ++y) {
        const ExtendedWeight& wx = f.ws.weights[nz[x]];
        const ExtendedWeight& wy = f.ws.weights[nz[y]];
        if ((wx.lambda - wy.lambda).norm() < 1e-8)
          CHECK((wx.coroot - wy.coroot).norm() < 1e-8);
      }
  }
}

TEST_CASE("brackets into the dual space are multiples of the coroot") {
  for (const std::string& name : catalog_names()) {
    CAPTURE(name);
    const levitest::Fixture& f = fixture(name);
    const LieAlgebra& g = f.cc.setup.g;
    for (int i : nonzero_weights(f.ws)) {
      const ExtendedWeight& w = f.ws.weights[i];
      VectorXcd xi = w.space.col(0);
      VectorXcd dual = f.ws.weights[w.dual].space.col(0);
      for (cplx scale : {cplx(1, 0), cplx(-0.4, 2.7)}) {
        VectorXcd lhs = bracket(g, xi, VectorXcd(scale * dual));
        VectorXcd rhs = killing_form(g, xi, VectorXcd(scale * dual)) * w.coroot;
        CHECK((lhs - rhs).norm() < 1e-8 * (1.0 + std::abs(scale)));
      }
    }
  }
}

TEST_CASE("normalized representatives respect sigma2 and the sign contract") {
  for (const std::string& name : catalog_names()) {
    CAPTURE(name);
    const levitest::Fixture& f = fixture(name);
    const LieAlgebra& g = f.cc.setup.g;
    CHECK(f.ws.levi_basis_applied);
    for (int i : nonzero_weights(f.ws)) {
      const ExtendedWeight& w = f.ws.weights[i];
      const ExtendedWeight& p = f.ws.weights[w.s2partner];
      VectorXcd sx = levilab::apply(f.cc.setup.sigma2, VectorXcd(w.space.col(0)));
      CHECK((sx - p.space.col(0)).norm() < 1e-8);
      REQUIRE((w.norm_sign == 1 || w.norm_sign == -1));
      VectorXcd br = bracket(g, VectorXcd(w.space.col(0)),
                             VectorXcd(f.ws.weights[w.dual].space.col(0)));
      CHECK((br - double(w.norm_sign) * w.coroot).norm() < 1e-8);
    }
  }
}

TEST_CASE("nonzero weight spaces are lines with honest sl2 triples") {
  for (const std::string& name : catalog_names()) {
    CAPTURE(name);
    const levitest::Fixture& f = fixture(name);
    const LieAlgebra& g = f.cc.setup.g;
    CHECK(!has_weight_multiples(f.ws));
    for (int i : nonzero_weights(f.ws)) {
      CHECK(f.ws.weights[i].space.cols() == 1);
      Sl2Triple t = sl2_triple(f.ws, i);
      double scale = 1.0 + t.h.norm() + t.e.norm() + t.f.norm();
      CHECK((bracket(g, t.h, t.e) - 2.0 * t.e).norm() < 1e-8 * scale);
      CHECK((bracket(g, t.h, t.f) + 2.0 * t.f).norm() < 1e-8 * scale);
      CHECK((bracket(g, t.e, t.f) - t.h).norm() < 1e-8 * scale);
    }
  }
}

TEST_CASE("irreducibility detects the untwisted product") {
  for (const std::string& name : catalog_names()) {
    CAPTURE(name);
    bool expect = name.find("untwisted") == std::string::npos;
    CHECK(is_irreducible(fixture(name).ws) == expect);
  }
}

TEST_CASE("positive systems are antisymmetric with positive margin") {
  for (const std::string& name : catalog_names()) {
    CAPTURE(name);
    const levitest::Fixture& f = fixture(name);
    const PositiveSystem& pos = f.pos;
    CHECK(pos.margin > 0.0);
    REQUIRE(pos.sign.size() == f.ws.weights.size());
    for (size_t i = 0; i < f.ws.weights.size(); ++i) {
      const ExtendedWeight& w = f.ws.weights[i];
      if (w.reality == WeightReality::zero) {
        CHECK(pos.sign[i] == 0);
      } else {
        CHECK((pos.sign[i] == 1 || pos.sign[i] == -1));
        CHECK(pos.sign[w.dual] == -pos.sign[i]);
      }
    }
    // a supplied regular element reproduces its own ordering
    PositiveSystem again = positive_system(f.ws, &pos.regular, kSeed);
    CHECK(again.sign == pos.sign);
  }
}

TEST_CASE("functional coefficients match the stored eigenvalues") {
  for (const char* name : {"sl2:s11-s11:k=1", "sl2:theta-s11:k=1",
                           "sl2:s11-theta:k=3", "sl3:std:k=1"}) {
    CAPTURE(name);
    const levitest::Fixture& f = fixture(name);
    for (int i : nonzero_weights(f.ws)) {
      const ExtendedWeight& w = f.ws.weights[i];
      VectorXd v = lambda_ita_coefficients(f.ws, w);
      REQUIRE(v.size() == f.ws.datum.rank());
      for (int k = 0; k < f.ws.datum.t_dim; ++k) {
        CHECK(std::abs(w.lambda(k).real()) < 1e-8);
        CHECK(v(k) == doctest::Approx(-w.lambda(k).imag()).epsilon(1e-10));
      }
      for (int l = 0; l < f.ws.datum.a_dim; ++l) {
        int k = f.ws.datum.t_dim + l;
        CHECK(std::abs(w.lambda(k).imag()) < 1e-8);
        CHECK(v(k) == doctest::Approx(w.lambda(k).real()).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("ita coordinates invert the basis and reject outside vectors") {
  const levitest::Fixture& f = fixture("sl2:theta-s11:k=1");
  REQUIRE(f.ws.datum.t_dim == 1);
  VectorXcd it = cplx(0, 1) * complexify(VectorXd(f.ws.datum.c_basis.col(0)));
  VectorXd coords = ita_coordinates(f.ws, it);
  REQUIRE(coords.size() == 1);
  CHECK(coords(0) == doctest::Approx(1.0).epsilon(1e-10));
  // t itself is not in the real span of (i t, a)
  VectorXcd t = complexify(VectorXd(f.ws.datum.c_basis.col(0)));
  CHECK_THROWS(ita_coordinates(f.ws, t));

  const levitest::Fixture& fa = fixture("sl2:s11-s11:k=1");
  REQUIRE(fa.ws.datum.a_dim == 1);
  VectorXcd a = complexify(VectorXd(fa.ws.datum.c_basis.col(0)));
  VectorXd ca = ita_coordinates(fa.ws, a);
  CHECK(ca(0) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("find_weight locates entries and reports absences") {
  const WeightSystem& ws = fixture("sl2:s11-theta:k=1").ws;
  for (size_t i = 0; i < ws.weights.size(); ++i) {
    const ExtendedWeight& w = ws.weights[i];
    CHECK(find_weight(ws, w.lambda, w.a, 1e-8) == static_cast<int>(i));
  }
  VectorXcd bogus = VectorXcd::Constant(ws.datum.rank(), cplx(0.1234, 0));
  CHECK(find_weight(ws, bogus, cplx(1, 0), 1e-8) == -1);
}

TEST_CASE("lambda_at evaluates the weight on real coordinates") {
  const WeightSystem& ws = fixture("sl2:s11-s11:k=2").ws;
  for (int i : nonzero_weights(ws)) {
    const ExtendedWeight& w = ws.weights[i];
    VectorXd eta = VectorXd::Zero(ws.datum.rank());
    eta(0) = 0.7;
    CHECK(std::abs(lambda_at(w, eta) - 0.7 * w.lambda(0)) < 1e-12);
  }
}
