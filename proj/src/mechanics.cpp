#include "ermakov/mechanics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ermakov/errors.hpp"

namespace ermakov {

CoordinateChart polar_chart() {
  CoordinateChart c;
  c.time = c.table.time();
  Jet rho = c.table.jet("rho");
  Jet theta = c.table.jet("theta");
  Jet x = c.table.jet("x");
  Jet y = c.table.jet("y");
  c.chart_jets = {rho, theta};
  c.cartesian_jets = {x, y};
  c.map = {Expr(rho.coord) * cos(Expr(theta.coord)), Expr(rho.coord) * sin(Expr(theta.coord))};
  c.guards = {Expr(rho.coord)};
  c.inverse = [](std::span<const double> xs) {
    return std::vector<double>{std::hypot(xs[0], xs[1]), std::atan2(xs[1], xs[0])};
  };
  return c;
}

CoordinateChart nd_chart(int n) {
  if (n < 2) throw Error("nd_chart requires n >= 2");
  CoordinateChart c;
  c.time = c.table.time();
  Jet rho = c.table.jet("rho");
  c.chart_jets.push_back(rho);
  std::vector<Jet> angles;
  for (int k = 1; k < n; ++k) {
    std::string name;
    if (n == 3) {
      name = (k == 1) ? "theta" : "phi";
    } else if (n == 2) {
      name = "theta";
    } else {
      name = "theta" + std::to_string(k);
    }
    angles.push_back(c.table.jet(name));
    c.chart_jets.push_back(angles.back());
  }
  for (int k = 1; k <= n; ++k) {
    c.cartesian_jets.push_back(c.table.jet("x" + std::to_string(k)));
  }

  c.guards = {Expr(rho.coord)};
  for (int k = 0; k + 2 < n; ++k) c.guards.push_back(cos(Expr(angles[static_cast<std::size_t>(k)].coord)));

  for (int k = 1; k <= n; ++k) {
    std::vector<Expr> factors{Expr(rho.coord)};
    for (int j = 1; j < k; ++j) factors.push_back(cos(Expr(angles[static_cast<std::size_t>(j - 1)].coord)));
    if (k < n) factors.push_back(sin(Expr(angles[static_cast<std::size_t>(k - 1)].coord)));
    c.map.push_back(product(std::move(factors)));
  }

  c.inverse = [n](std::span<const double> xs) {
    double norm_sq = 0.0;
    for (double x : xs) norm_sq += x * x;
    std::vector<double> q(static_cast<std::size_t>(n), 0.0);
    q[0] = std::sqrt(norm_sq);
    double residual = q[0];  // rho cos(t1)..cos(t_{k-1})
    for (int k = 1; k <= n - 2; ++k) {
      const double s = xs[static_cast<std::size_t>(k - 1)] / residual;
      q[static_cast<std::size_t>(k)] = std::asin(s);
      residual *= std::cos(q[static_cast<std::size_t>(k)]);
    }
    q[static_cast<std::size_t>(n - 1)] =
        std::atan2(xs[static_cast<std::size_t>(n - 2)], xs[static_cast<std::size_t>(n - 1)]);
    return q;
  };
  return c;
}

Expr pullback_kinetic(const CoordinateChart& chart) {
  std::vector<Expr> terms;
  terms.reserve(chart.map.size());
  for (const auto& component : chart.map) {
    Expr dt = total_derivative(component, chart.time, chart.chart_jets);
    terms.push_back(pow(dt, 2));
  }
  return sum(std::move(terms));
}

Expr pullback_expr(const CoordinateChart& chart, const Expr& cartesian_expr) {
  std::vector<std::pair<Symbol, Expr>> replacements;
  for (std::size_t i = 0; i < chart.cartesian_jets.size(); ++i) {
    const Expr& component = chart.map[i];
    replacements.emplace_back(chart.cartesian_jets[i].coord, component);
    replacements.emplace_back(chart.cartesian_jets[i].vel,
                              total_derivative(component, chart.time, chart.chart_jets));
  }
  return substitute(cartesian_expr, replacements);
}

void validate_chart(const CoordinateChart& chart, const SampleDomain& domain, int samples,
                    std::uint64_t seed) {
  const int n = chart.dimension();
  std::vector<std::vector<Expr>> jacobian(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      jacobian[static_cast<std::size_t>(i)].push_back(
          differentiate(chart.map[static_cast<std::size_t>(i)], chart.chart_jets[static_cast<std::size_t>(j)].coord));
    }
  }
  SplitMix64 rng(seed);
  for (int s = 0; s < samples; ++s) {
    Binding b(chart.table);
    for (const auto& jet : chart.chart_jets) {
      auto iv = domain.get(jet.coord);
      if (!iv) throw Error("chart validation domain missing '" + jet.coord.name() + "'");
      b.set(jet.coord, rng.uniform(iv->lo, iv->hi));
    }
    Matrix m(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            evaluate(jacobian[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], b);
      }
    }
    if (std::fabs(determinant(m)) < 1e-8) {
      throw Error("chart Jacobian is numerically singular at a sampled interior point");
    }
  }
}

std::vector<Expr> inverse_power_bases(const Expr& e) {
  std::vector<Expr> bases;
  auto visit = [&](auto&& self, const Expr& node) -> void {
    if (node.kind() == ExprKind::Power) {
      if (node.exponent().num < 0 && !node.base().is_constant()) {
        bool seen = false;
        for (const auto& b : bases) {
          if (structurally_equal(b, node.base())) {
            seen = true;
            break;
          }
        }
        if (!seen) bases.push_back(node.base());
      }
      self(self, node.base());
      return;
    }
    if (node.kind() == ExprKind::Constant || node.kind() == ExprKind::Variable) return;
    for (const auto& k : node.children()) self(self, k);
  };
  visit(visit, e);
  return bases;
}

namespace {

// Connected components of the off-diagonal sparsity pattern of M.
std::vector<std::vector<int>> coupling_blocks(const std::vector<std::vector<Expr>>& m) {
  const int n = static_cast<int>(m.size());
  std::vector<int> component(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<int>> blocks;
  for (int i = 0; i < n; ++i) {
    if (component[static_cast<std::size_t>(i)] >= 0) continue;
    std::vector<int> stack{i};
    std::vector<int> block;
    component[static_cast<std::size_t>(i)] = static_cast<int>(blocks.size());
    while (!stack.empty()) {
      const int a = stack.back();
      stack.pop_back();
      block.push_back(a);
      for (int b = 0; b < n; ++b) {
        if (b == a || component[static_cast<std::size_t>(b)] >= 0) continue;
        if (!m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)].is_zero()) {
          component[static_cast<std::size_t>(b)] = static_cast<int>(blocks.size());
          stack.push_back(b);
        }
      }
    }
    std::sort(block.begin(), block.end());
    blocks.push_back(std::move(block));
  }
  return blocks;
}

struct Derived {
  std::vector<std::vector<Expr>> mass;
  std::vector<Expr> forces;
  std::vector<Expr> accelerations;  // empty if symbolic inversion unavailable
};

Derived derive_equations(const Expr& lagrangian, const Symbol& time, const std::vector<Jet>& jets) {
  const std::size_t n = jets.size();
  Derived d;
  d.mass.assign(n, std::vector<Expr>(n, Expr::constant(0.0)));
  std::vector<Expr> dl_dv(n);
  for (std::size_t i = 0; i < n; ++i) dl_dv[i] = differentiate(lagrangian, jets[i].vel);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) d.mass[i][j] = differentiate(dl_dv[i], jets[j].vel);
  }

  // b_i = dL/dq_i - sum_j (d2L/dv_i dq_j) v_j - d2L/dv_i dt
  d.forces.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Expr> terms;
    terms.push_back(differentiate(lagrangian, jets[i].coord));
    for (std::size_t j = 0; j < n; ++j) {
      terms.push_back(-(differentiate(dl_dv[i], jets[j].coord) * Expr(jets[j].vel)));
    }
    terms.push_back(-differentiate(dl_dv[i], time));
    d.forces[i] = sum(std::move(terms));
  }

  std::vector<Expr> omega(n, Expr::constant(0.0));
  bool symbolic_ok = true;
  for (const auto& block : coupling_blocks(d.mass)) {
    if (block.size() == 1) {
      const auto i = static_cast<std::size_t>(block[0]);
      if (d.mass[i][i].is_zero()) {
        throw SingularMassMatrix("kinetic term is degenerate in coordinate '" +
                                 jets[i].coord.name() + "'");
      }
      omega[i] = d.forces[i] * pow(d.mass[i][i], Rational(-1));
    } else if (block.size() == 2) {
      const auto i = static_cast<std::size_t>(block[0]);
      const auto j = static_cast<std::size_t>(block[1]);
      Expr det = d.mass[i][i] * d.mass[j][j] - d.mass[i][j] * d.mass[i][j];
      if (det.is_zero()) {
        throw SingularMassMatrix("2x2 kinetic block for '" + jets[i].coord.name() + "', '" +
                                 jets[j].coord.name() + "' has zero determinant");
      }
      Expr inv_det = pow(det, Rational(-1));
      omega[i] = (d.mass[j][j] * d.forces[i] - d.mass[i][j] * d.forces[j]) * inv_det;
      omega[j] = (d.mass[i][i] * d.forces[j] - d.mass[i][j] * d.forces[i]) * inv_det;
    } else {
      symbolic_ok = false;  // dense coupling: numeric solve per evaluation point
    }
  }
  if (symbolic_ok) d.accelerations = std::move(omega);
  return d;
}

}  // namespace

std::vector<Expr> euler_lagrange(const Expr& lagrangian, const Symbol& time,
                                 const std::vector<Jet>& jets) {
  Derived d = derive_equations(lagrangian, time, jets);
  if (d.accelerations.empty()) {
    throw SingularMassMatrix(
        "mass matrix is not diagonal/2x2-block; no closed-form accelerations");
  }
  return d.accelerations;
}

Expr hamiltonian_of(const Expr& lagrangian, const std::vector<Jet>& jets) {
  std::vector<Expr> terms;
  for (const auto& jet : jets) terms.push_back(Expr(jet.vel) * differentiate(lagrangian, jet.vel));
  terms.push_back(-lagrangian);
  return sum(std::move(terms));
}

LagrangianSystem make_system(const SymbolTable& table, const Symbol& time,
                             const std::vector<Jet>& jets, const Expr& lagrangian,
                             std::optional<CoordinateChart> chart) {
  LagrangianSystem sys;
  sys.table = table;
  sys.time = time;
  sys.jets = jets;
  sys.lagrangian = lagrangian;
  Derived d = derive_equations(lagrangian, time, jets);
  sys.mass_matrix = std::move(d.mass);
  sys.force_terms = std::move(d.forces);
  sys.accelerations = std::move(d.accelerations);
  for (const auto& jet : jets) sys.momenta.push_back(differentiate(lagrangian, jet.vel));
  sys.hamiltonian = hamiltonian_of(lagrangian, jets);
  if (chart) sys.guards = chart->guards;
  for (const auto& base : inverse_power_bases(lagrangian)) {
    if (contains_role(base, SymbolRole::Coordinate)) sys.guards.push_back(base);
  }
  sys.chart = std::move(chart);
  return sys;
}

Binding LagrangianSystem::bind_state(const PhaseState& s, const Binding& params) const {
  Binding b = params;
  b.set(time, s.t);
  for (std::size_t i = 0; i < jets.size(); ++i) {
    b.set(jets[i].coord, s.q[i]);
    b.set(jets[i].vel, s.v[i]);
  }
  return b;
}

std::vector<double> LagrangianSystem::accel_at(const PhaseState& s, const Binding& params) const {
  Binding b = bind_state(s, params);
  const std::size_t n = jets.size();
  std::vector<double> a(n, 0.0);
  if (has_symbolic_accelerations()) {
    for (std::size_t i = 0; i < n; ++i) a[i] = evaluate(accelerations[i], b);
    return a;
  }
  Matrix m(n, std::vector<double>(n, 0.0));
  std::vector<double> rhs(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    rhs[i] = evaluate(force_terms[i], b);
    for (std::size_t j = 0; j < n; ++j) m[i][j] = evaluate(mass_matrix[i][j], b);
  }
  if (!lu_solve(std::move(m), std::move(rhs), a)) {
    throw SingularMassMatrix("mass matrix is numerically singular at the evaluation point");
  }
  return a;
}

Expr on_shell_derivative(const Expr& e, const LagrangianSystem& system) {
  if (!system.has_symbolic_accelerations()) {
    throw Error("on-shell derivative requires symbolic accelerations");
  }
  Expr dt = total_derivative(e, system.time, system.jets);
  std::vector<std::pair<Symbol, Expr>> repl;
  for (std::size_t i = 0; i < system.jets.size(); ++i) {
    repl.emplace_back(system.jets[i].accel, system.accelerations[i]);
  }
  return substitute(dt, repl);
}

}  // namespace ermakov
