#include <cmath>

#include "doctest.h"
#include "ermakov/errors.hpp"
#include "ermakov/mechanics.hpp"

using namespace ermakov;

TEST_SUITE_BEGIN("mechanics");

TEST_CASE("euler_lagrange recovers textbook acceleration fields") {
  SUBCASE("radial: L = (rho_dot^2 - rho^-2)/2 gives rho_ddot = rho^-3") {
    SymbolTable tab;
    Symbol t = tab.time();
    Jet rho = tab.jet("rho");
    Expr l = 0.5 * (pow(Expr(rho.vel), 2) - pow(Expr(rho.coord), -2));
    auto omega = euler_lagrange(l, t, {rho});
    REQUIRE(omega.size() == 1);
    CHECK(structurally_equal(omega[0], pow(Expr(rho.coord), -3)));
  }

  SUBCASE("polar with angular potential") {
    SymbolTable tab;
    Symbol t = tab.time();
    Jet rho = tab.jet("rho");
    Jet theta = tab.jet("theta");
    Expr r(rho.coord);
    Expr rd(rho.vel);
    Expr th(theta.coord);
    Expr thd(theta.vel);
    Expr v = 2.0 + sin(th);
    Expr l = 0.5 * (pow(rd, 2) + pow(r, 2) * pow(thd, 2) - v * pow(r, -2));
    auto omega = euler_lagrange(l, t, {rho, theta});
    REQUIRE(omega.size() == 2);
    CHECK(structurally_equal(omega[0], r * pow(thd, 2) + v * pow(r, -3)));
    // derived angular equation: theta_ddot = -2 rho_dot theta_dot / rho - V'/(2 rho^4)
    CHECK(structurally_equal(omega[1], -2.0 * rd * thd / r - 0.5 * cos(th) * pow(r, -4)));
  }

  SUBCASE("free particle accelerations are structurally zero") {
    SymbolTable tab;
    Symbol t = tab.time();
    Jet x = tab.jet("x");
    Jet y = tab.jet("y");
    Expr l = 0.5 * (pow(Expr(x.vel), 2) + pow(Expr(y.vel), 2));
    auto omega = euler_lagrange(l, t, {x, y});
    CHECK(omega[0].is_zero());
    CHECK(omega[1].is_zero());
  }

  SUBCASE("degenerate kinetic term is rejected") {
    SymbolTable tab;
    Symbol t = tab.time();
    Jet x = tab.jet("x");
    Jet y = tab.jet("y");
    Expr l = 0.5 * pow(Expr(x.vel) - Expr(y.vel), 2);
    CHECK_THROWS_AS(euler_lagrange(l, t, {x, y}), SingularMassMatrix);
  }

  SUBCASE("2x2 coupled kinetic block inverts symbolically") {
    SymbolTable tab;
    Symbol t = tab.time();
    Jet x = tab.jet("X");
    Jet y = tab.jet("y");
    Symbol alpha = tab.parameter("alpha");
    Expr a(alpha);
    Expr l = 0.5 * (pow(Expr(x.vel), 2) + 2.0 * a * Expr(x.vel) * Expr(y.vel) +
                    (1.0 + pow(a, 2)) * pow(Expr(y.vel), 2)) -
             0.5 * pow(Expr(x.coord), -2);
    auto omega = euler_lagrange(l, t, {x, y});
    // decoupled check by sampling: X_ddot = (1+alpha^2) X^-3, y_ddot = -alpha X^-3
    Binding b(tab);
    b.set(x.coord, 1.5);
    b.set(alpha, 0.7);
    b.set(x.vel, 0.3);
    b.set(y.vel, -0.2);
    const double x3 = std::pow(1.5, -3.0);
    CHECK(evaluate(omega[0], b) == doctest::Approx((1.0 + 0.49) * x3).epsilon(1e-12));
    CHECK(evaluate(omega[1], b) == doctest::Approx(-0.7 * x3).epsilon(1e-12));
  }
}

TEST_CASE("hamiltonian flips the potential sign") {
  SymbolTable tab;
  tab.time();
  Jet rho = tab.jet("rho");
  Jet theta = tab.jet("theta");
  Expr r(rho.coord);
  Expr rd(rho.vel);
  Expr th(theta.coord);
  Expr thd(theta.vel);

  SUBCASE("radial") {
    Expr l = 0.5 * (pow(rd, 2) - pow(r, -2));
    CHECK(structurally_equal(hamiltonian_of(l, {rho}), 0.5 * (pow(rd, 2) + pow(r, -2))));
  }
  SUBCASE("polar with potential") {
    Expr v = 2.0 + sin(th);
    Expr l = 0.5 * (pow(rd, 2) + pow(r, 2) * pow(thd, 2) - v * pow(r, -2));
    Expr h = 0.5 * (pow(rd, 2) + pow(r, 2) * pow(thd, 2) + v * pow(r, -2));
    CHECK(structurally_equal(hamiltonian_of(l, {rho, theta}), h));
  }
  SUBCASE("free particle is its own hamiltonian") {
    SymbolTable tab2;
    tab2.time();
    Jet x = tab2.jet("x");
    Expr l = 0.5 * pow(Expr(x.vel), 2);
    CHECK(structurally_equal(hamiltonian_of(l, {x}), l));
  }
}

TEST_CASE("kinetic pullback through charts") {
  SUBCASE("2D polar") {
    CoordinateChart c = polar_chart();
    Expr r(c.chart_jets[0].coord);
    Expr rd(c.chart_jets[0].vel);
    Expr thd(c.chart_jets[1].vel);
    CHECK(structurally_equal(pullback_kinetic(c), pow(rd, 2) + pow(r, 2) * pow(thd, 2)));
  }

  SUBCASE("3D nested chart gives the cos^2(theta) phi_dot^2 form") {
    CoordinateChart c = nd_chart(3);
    Expr r(c.chart_jets[0].coord);
    Expr rd(c.chart_jets[0].vel);
    Expr th(c.chart_jets[1].coord);
    Expr thd(c.chart_jets[1].vel);
    Expr phd(c.chart_jets[2].vel);
    Expr expected = pow(rd, 2) + pow(r, 2) * pow(thd, 2) + pow(r, 2) * pow(cos(th), 2) * pow(phd, 2);
    CHECK(structurally_equal(pullback_kinetic(c), expected));
  }

  SUBCASE("4D nested chart") {
    CoordinateChart c = nd_chart(4);
    Expr r(c.chart_jets[0].coord);
    Expr rd(c.chart_jets[0].vel);
    Expr t1(c.chart_jets[1].coord);
    Expr t1d(c.chart_jets[1].vel);
    Expr t2(c.chart_jets[2].coord);
    Expr t2d(c.chart_jets[2].vel);
    Expr t3d(c.chart_jets[3].vel);
    Expr expected =
        pow(rd, 2) + pow(r, 2) * (pow(t1d, 2) +
                                  pow(cos(t1), 2) * (pow(t2d, 2) + pow(cos(t2), 2) * pow(t3d, 2)));
    // expand both sides to the same canonical form by multiplying out
    SampleDomain dom;
    dom.set(c.chart_jets[0].coord, 0.5, 2.0);
    for (int k = 1; k < 4; ++k) dom.set(c.chart_jets[static_cast<std::size_t>(k)].coord, -1.2, 1.2);
    for (const auto& jet : c.chart_jets) dom.set(jet.vel, -1.0, 1.0);
    auto verdict = equal_on_samples(pullback_kinetic(c), expected, c.table, dom, 200, 1e-12);
    CHECK(verdict.equal);
  }

  SUBCASE("identity chart kinetic is the plain sum of squares") {
    CoordinateChart c;
    c.time = c.table.time();
    for (int i = 1; i <= 3; ++i) {
      Jet j = c.table.jet("q" + std::to_string(i));
      c.chart_jets.push_back(j);
      Jet xj = c.table.jet("x" + std::to_string(i));
      c.cartesian_jets.push_back(xj);
      c.map.push_back(Expr(j.coord));
    }
    Expr expected = pow(Expr(c.chart_jets[0].vel), 2) + pow(Expr(c.chart_jets[1].vel), 2) +
                    pow(Expr(c.chart_jets[2].vel), 2);
    CHECK(structurally_equal(pullback_kinetic(c), expected));
  }
}

TEST_CASE("nd_chart maps, guards and inverse") {
  CoordinateChart c = nd_chart(3);
  Binding b(c.table);

  SUBCASE("axis point") {
    b.set("rho", 2.0);
    b.set("theta", M_PI / 2.0);
    b.set("phi", 0.0);
    CHECK(evaluate(c.map[0], b) == doctest::Approx(2.0));
    CHECK(evaluate(c.map[1], b) == doctest::Approx(0.0));
    CHECK(evaluate(c.map[2], b) == doctest::Approx(0.0));
  }

  SUBCASE("generic point") {
    b.set("rho", 1.0);
    b.set("theta", M_PI / 4.0);
    b.set("phi", M_PI / 3.0);
    CHECK(evaluate(c.map[0], b) == doctest::Approx(0.70711).epsilon(1e-4));
    CHECK(evaluate(c.map[1], b) == doctest::Approx(0.61237).epsilon(1e-4));
    CHECK(evaluate(c.map[2], b) == doctest::Approx(0.35355).epsilon(1e-4));
  }

  SUBCASE("inverse round-trip on the guarded branch") {
    for (int n : {2, 3, 4, 5}) {
      CoordinateChart chart = nd_chart(n);
      SplitMix64 rng(7u);
      for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> q;
        q.push_back(rng.uniform(0.5, 2.0));
        for (int k = 1; k < n; ++k) q.push_back(rng.uniform(-1.2, 1.2));
        Binding bb(chart.table);
        for (int k = 0; k < n; ++k) bb.set(chart.chart_jets[static_cast<std::size_t>(k)].coord, q[static_cast<std::size_t>(k)]);
        std::vector<double> xs;
        for (const auto& comp : chart.map) xs.push_back(evaluate(comp, bb));
        auto back = chart.inverse(xs);
        for (int k = 0; k < n; ++k) {
          CHECK(back[static_cast<std::size_t>(k)] ==
                doctest::Approx(q[static_cast<std::size_t>(k)]).epsilon(1e-12));
        }
      }
    }
  }

  SUBCASE("jacobian is nonsingular on the guarded interior") {
    SampleDomain dom;
    dom.set(c.chart_jets[0].coord, 0.5, 2.0);
    dom.set(c.chart_jets[1].coord, -1.2, 1.2);
    dom.set(c.chart_jets[2].coord, -1.2, 1.2);
    CHECK_NOTHROW(validate_chart(c, dom));
  }
}

TEST_CASE("derived system invariants") {
  SymbolTable tab;
  Symbol t = tab.time();
  Jet rho = tab.jet("rho");
  Jet theta = tab.jet("theta");
  Expr r(rho.coord);
  Expr rd(rho.vel);
  Expr th(theta.coord);
  Expr thd(theta.vel);
  Expr v = 2.0 + sin(th);
  Expr l = 0.5 * (pow(rd, 2) + pow(r, 2) * pow(thd, 2) - v * pow(r, -2));
  LagrangianSystem sys = make_system(tab, t, {rho, theta}, l);

  SUBCASE("mass matrix is symmetric and positive definite on samples") {
    CHECK(structurally_equal(sys.mass_matrix[0][1], sys.mass_matrix[1][0]));
    SplitMix64 rng(3u);
    for (int i = 0; i < 50; ++i) {
      Binding b(tab);
      b.set(rho.coord, rng.uniform(0.5, 2.0));
      b.set(theta.coord, rng.uniform(-1.2, 1.2));
      const double m00 = evaluate(sys.mass_matrix[0][0], b);
      const double m01 = evaluate(sys.mass_matrix[0][1], b);
      const double m11 = evaluate(sys.mass_matrix[1][1], b);
      CHECK(m00 > 0.0);
      CHECK(m00 * m11 - m01 * m01 > 0.0);
    }
  }

  SUBCASE("M Omega matches the force terms on samples") {
    SampleDomain dom;
    dom.set(rho.coord, 0.5, 2.0).set(theta.coord, -1.2, 1.2);
    dom.set(rho.vel, -1.0, 1.0).set(theta.vel, -1.0, 1.0);
    for (std::size_t i = 0; i < 2; ++i) {
      Expr lhs = sum({sys.mass_matrix[i][0] * sys.accelerations[0],
                      sys.mass_matrix[i][1] * sys.accelerations[1]});
      auto verdict = equal_on_samples(lhs, sys.force_terms[i], tab, dom, 200, 1e-10);
      CHECK(verdict.equal);
    }
  }

  SUBCASE("guards pick up the inverse-power bases of L") {
    REQUIRE(!sys.guards.empty());
    CHECK(structurally_equal(sys.guards[0], r));
  }
}

TEST_CASE("chart consistency: cartesian L pulls back to the polar L") {
  CoordinateChart chart = polar_chart();
  SymbolTable tab = chart.table;
  Symbol v0 = tab.parameter("V0");
  Expr x(chart.cartesian_jets[0].coord);
  Expr xd(chart.cartesian_jets[0].vel);
  Expr yd(chart.cartesian_jets[1].vel);
  // L_B in cartesian coordinates
  Expr cart_l = 0.5 * (pow(xd, 2) + pow(yd, 2) - Expr(v0) * pow(x, -2));
  Expr pulled = pullback_expr(chart, cart_l);

  Expr r(chart.chart_jets[0].coord);
  Expr rd(chart.chart_jets[0].vel);
  Expr th(chart.chart_jets[1].coord);
  Expr thd(chart.chart_jets[1].vel);
  Expr polar_l = 0.5 * (pow(rd, 2) + pow(r, 2) * pow(thd, 2) -
                        Expr(v0) * pow(cos(th), -2) * pow(r, -2));

  SampleDomain dom;
  dom.set(r.symbol(), 0.5, 2.0).set(th.symbol(), -1.2, 1.2);
  dom.set(rd.symbol(), -1.0, 1.0).set(thd.symbol(), -1.0, 1.0);
  dom.set(v0, 0.5, 2.0);
  auto verdict = equal_on_samples(pulled, polar_l, tab, dom, 300, 1e-10);
  CHECK(verdict.equal);
}

TEST_SUITE_END();
