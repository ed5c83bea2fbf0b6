#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ermakov/expr.hpp"
#include "ermakov/linalg.hpp"
#include "ermakov/sampling.hpp"

namespace ermakov {

// Map from chart coordinates (radial + angles, or anything else) into
// Cartesian coordinates living in the same symbol table.
struct CoordinateChart {
  SymbolTable table;
  Symbol time;
  std::vector<Jet> chart_jets;
  std::vector<Jet> cartesian_jets;
  std::vector<Expr> map;     // cartesian_i = map_i(chart coords)
  std::vector<Expr> guards;  // signed expressions kept >= guard floor (rho, cos(theta_k), ...)
  std::function<std::vector<double>(std::span<const double>)> inverse;

  [[nodiscard]] int dimension() const { return static_cast<int>(map.size()); }
};

// 2D polar chart (x, y) = (rho cos(theta), rho sin(theta)).
CoordinateChart polar_chart();

// Nested angular chart: x1 = rho sin(t1), xk = rho cos(t1)..cos(t_{k-1}) sin(tk),
// xn = rho cos(t1)..cos(t_{n-1}). Angles named theta/phi for n = 3, theta1..
// otherwise. Inverse is valid on the guard-respecting branch cos(tk) > 0.
CoordinateChart nd_chart(int n);

// Cartesian kinetic form pulled back through the chart: sum over k of
// (Dt map_k)^2 expanded by the chain rule in chart velocities.
Expr pullback_kinetic(const CoordinateChart& chart);

// Rewrites an expression in cartesian (t, x, xdot) into chart variables by
// substituting the chart map and its velocity pushforward.
Expr pullback_expr(const CoordinateChart& chart, const Expr& cartesian_expr);

// Samples the chart map's Jacobian determinant; throws if it degenerates on
// the guarded interior.
void validate_chart(const CoordinateChart& chart, const SampleDomain& domain, int samples = 100,
                    std::uint64_t seed = kDefaultSeed);

struct PhaseState {
  double t = 0.0;
  std::vector<double> q;
  std::vector<double> v;
};

// Lagrangian with everything derived from it: mass matrix, momenta,
// Hamiltonian and the acceleration field q_ddot = Omega(t, q, v).
struct LagrangianSystem {
  SymbolTable table;
  Symbol time;
  std::vector<Jet> jets;
  Expr lagrangian;

  std::vector<std::vector<Expr>> mass_matrix;  // d^2 L / dv_i dv_j
  std::vector<Expr> momenta;                   // dL/dv_i
  Expr hamiltonian;                            // sum v_i dL/dv_i - L
  std::vector<Expr> accelerations;             // symbolic Omega_i; empty if unavailable
  std::vector<Expr> force_terms;               // rhs b_i of M Omega = b
  std::vector<Expr> guards;                    // from chart + inverse-power bases of L
  std::optional<CoordinateChart> chart;
  std::optional<Symbol> radial;  // set for Ermakov-type radial systems

  [[nodiscard]] int dimension() const { return static_cast<int>(jets.size()); }
  [[nodiscard]] bool has_symbolic_accelerations() const { return !accelerations.empty(); }

  // Numeric accelerations at a state; params bind any leftover parameters.
  std::vector<double> accel_at(const PhaseState& s, const Binding& params) const;
  Binding bind_state(const PhaseState& s, const Binding& params) const;
};

// Euler-Lagrange accelerations. Mass-matrix inversion is symbolic for
// diagonal and 2x2-block structures; anything denser keeps M and b symbolic
// and solves numerically per evaluation point. Throws SingularMassMatrix when
// the kinetic term is structurally degenerate.
std::vector<Expr> euler_lagrange(const Expr& lagrangian, const Symbol& time,
                                 const std::vector<Jet>& jets);

Expr hamiltonian_of(const Expr& lagrangian, const std::vector<Jet>& jets);

LagrangianSystem make_system(const SymbolTable& table, const Symbol& time,
                             const std::vector<Jet>& jets, const Expr& lagrangian,
                             std::optional<CoordinateChart> chart = std::nullopt);

// Total time derivative of expr with accelerations substituted on-shell.
Expr on_shell_derivative(const Expr& e, const LagrangianSystem& system);

// Signed guard expressions: bases of inverse powers occurring in e.
std::vector<Expr> inverse_power_bases(const Expr& e);

}  // namespace ermakov
