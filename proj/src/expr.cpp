#include "ermakov/expr.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>

#include "ermakov/errors.hpp"

namespace ermakov {

namespace {

int kind_rank(ExprKind k) {
  switch (k) {
    case ExprKind::Constant: return 0;
    case ExprKind::Variable: return 1;
    case ExprKind::Power: return 2;
    case ExprKind::Product: return 3;
    case ExprKind::Sum: return 4;
    case ExprKind::Sin: return 5;
    case ExprKind::Cos: return 6;
  }
  return 7;
}

const Expr& one_expr() {
  static const Expr one = Expr::constant(1.0);
  return one;
}

}  // namespace

Expr make_node(detail::ExprNode&& n) {
  return Expr(std::make_shared<const detail::ExprNode>(std::move(n)));
}

Expr::Expr() : Expr(0.0) {}
Expr::Expr(double v) { *this = constant(v); }
Expr::Expr(const Symbol& s) { *this = variable(s); }

Expr Expr::constant(double v) {
  detail::ExprNode n;
  n.kind = ExprKind::Constant;
  n.value = v;
  return make_node(std::move(n));
}

Expr Expr::variable(const Symbol& s) {
  detail::ExprNode n;
  n.kind = ExprKind::Variable;
  n.symbol = s;
  return make_node(std::move(n));
}

int compare(const Expr& a, const Expr& b) {
  if (a.raw() == b.raw()) return 0;
  const int ra = kind_rank(a.kind());
  const int rb = kind_rank(b.kind());
  if (ra != rb) return ra < rb ? -1 : 1;
  switch (a.kind()) {
    case ExprKind::Constant: {
      if (a.constant_value() < b.constant_value()) return -1;
      if (a.constant_value() > b.constant_value()) return 1;
      return 0;
    }
    case ExprKind::Variable: {
      const int c = a.symbol().name().compare(b.symbol().name());
      return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    case ExprKind::Power: {
      const int c = compare(a.base(), b.base());
      if (c != 0) return c;
      const Rational& x = a.exponent();
      const Rational& y = b.exponent();
      if (x == y) return 0;
      return x < y ? -1 : 1;
    }
    case ExprKind::Sum:
    case ExprKind::Product: {
      const auto& ka = a.children();
      const auto& kb = b.children();
      const std::size_t m = std::min(ka.size(), kb.size());
      for (std::size_t i = 0; i < m; ++i) {
        const int c = compare(ka[i], kb[i]);
        if (c != 0) return c;
      }
      if (ka.size() == kb.size()) return 0;
      return ka.size() < kb.size() ? -1 : 1;
    }
    case ExprKind::Sin:
    case ExprKind::Cos:
      return compare(a.children()[0], b.children()[0]);
  }
  return 0;
}

// --- builders ---------------------------------------------------------------

namespace {

// Splits a canonical term into (numeric coefficient, symbolic key).
std::pair<double, Expr> split_coefficient(const Expr& term) {
  if (term.kind() == ExprKind::Constant) return {term.constant_value(), one_expr()};
  if (term.kind() == ExprKind::Product) {
    const auto& kids = term.children();
    if (kids.front().kind() == ExprKind::Constant) {
      const double c = kids.front().constant_value();
      if (kids.size() == 2) return {c, kids[1]};
      detail::ExprNode n;
      n.kind = ExprKind::Product;
      n.children.assign(kids.begin() + 1, kids.end());
      return {c, make_node(std::move(n))};
    }
  }
  return {1.0, term};
}

// Splits a canonical factor into (base, exponent).
std::pair<Expr, Rational> split_power(const Expr& factor) {
  if (factor.kind() == ExprKind::Power) return {factor.base(), factor.exponent()};
  return {factor, Rational(1)};
}

Expr rebuild_term(double coeff, const Expr& key) {
  if (coeff == 0.0) return Expr::constant(0.0);
  if (key.is_one()) return Expr::constant(coeff);
  if (coeff == 1.0) return key;
  std::vector<Expr> factors;
  factors.push_back(Expr::constant(coeff));
  if (key.kind() == ExprKind::Product) {
    for (const auto& k : key.children()) factors.push_back(k);
  } else {
    factors.push_back(key);
  }
  detail::ExprNode n;
  n.kind = ExprKind::Product;
  n.children = std::move(factors);  // constant is smallest, order preserved
  return make_node(std::move(n));
}

}  // namespace

Expr sum(std::vector<Expr> terms) {
  double constant_acc = 0.0;
  std::map<Expr, double, ExprLess> by_key;
  std::vector<Expr> stack(terms.rbegin(), terms.rend());
  while (!stack.empty()) {
    Expr t = stack.back();
    stack.pop_back();
    if (t.kind() == ExprKind::Sum) {
      for (auto it = t.children().rbegin(); it != t.children().rend(); ++it) stack.push_back(*it);
      continue;
    }
    if (t.kind() == ExprKind::Constant) {
      constant_acc += t.constant_value();
      continue;
    }
    auto [c, key] = split_coefficient(t);
    by_key[key] += c;
  }

  std::vector<Expr> out;
  if (constant_acc != 0.0) out.push_back(Expr::constant(constant_acc));
  for (const auto& [key, c] : by_key) {
    if (c == 0.0) continue;
    out.push_back(rebuild_term(c, key));
  }
  if (out.empty()) return Expr::constant(0.0);
  if (out.size() == 1) return out.front();
  std::sort(out.begin(), out.end(), ExprLess{});
  detail::ExprNode n;
  n.kind = ExprKind::Sum;
  n.children = std::move(out);
  return make_node(std::move(n));
}

Expr product(std::vector<Expr> factors) {
  double constant_acc = 1.0;
  std::map<Expr, Rational, ExprLess> by_base;
  std::vector<Expr> stack(factors.rbegin(), factors.rend());
  while (!stack.empty()) {
    Expr f = stack.back();
    stack.pop_back();
    if (f.kind() == ExprKind::Product) {
      for (auto it = f.children().rbegin(); it != f.children().rend(); ++it) stack.push_back(*it);
      continue;
    }
    if (f.kind() == ExprKind::Constant) {
      constant_acc *= f.constant_value();
      continue;
    }
    auto [base, exp] = split_power(f);
    auto it = by_base.find(base);
    if (it == by_base.end()) {
      by_base.emplace(base, exp);
    } else {
      it->second = it->second + exp;
    }
  }
  if (constant_acc == 0.0) return Expr::constant(0.0);

  std::vector<Expr> out;
  for (const auto& [base, exp] : by_base) {
    if (exp.is_zero()) continue;
    Expr rebuilt = pow(base, exp);
    if (rebuilt.kind() == ExprKind::Constant) {
      constant_acc *= rebuilt.constant_value();
    } else {
      out.push_back(rebuilt);
    }
  }
  if (constant_acc == 0.0) return Expr::constant(0.0);
  if (out.empty()) return Expr::constant(constant_acc);
  std::sort(out.begin(), out.end(), ExprLess{});
  if (constant_acc != 1.0) out.insert(out.begin(), Expr::constant(constant_acc));
  if (out.size() == 1) return out.front();
  detail::ExprNode n;
  n.kind = ExprKind::Product;
  n.children = std::move(out);
  return make_node(std::move(n));
}

Expr pow(const Expr& base, const Rational& r) {
  if (r.is_zero()) return Expr::constant(1.0);
  if (r.is_one()) return base;
  if (base.kind() == ExprKind::Constant) {
    const double v = base.constant_value();
    if (v > 0.0 || (r.is_integer() && v != 0.0)) {
      const double folded = r.is_integer() ? std::pow(v, static_cast<double>(r.num))
                                           : std::pow(v, r.to_double());
      if (std::isfinite(folded)) return Expr::constant(folded);
    }
    // 0 or negative base with awkward exponent: keep symbolic, evaluation
    // reports the domain violation with the subtree.
  }
  if (base.kind() == ExprKind::Power && r.is_integer()) {
    return pow(base.base(), base.exponent() * r);
  }
  if (base.kind() == ExprKind::Product && r.is_integer()) {
    std::vector<Expr> factors;
    factors.reserve(base.children().size());
    for (const auto& k : base.children()) factors.push_back(pow(k, r));
    return product(std::move(factors));
  }
  detail::ExprNode n;
  n.kind = ExprKind::Power;
  n.exponent = r;
  n.children = {base};
  return make_node(std::move(n));
}

Expr pow(const Expr& base, std::int64_t k) { return pow(base, Rational(k)); }

Expr sin(const Expr& x) {
  if (x.kind() == ExprKind::Constant) return Expr::constant(std::sin(x.constant_value()));
  detail::ExprNode n;
  n.kind = ExprKind::Sin;
  n.children = {x};
  return make_node(std::move(n));
}

Expr cos(const Expr& x) {
  if (x.kind() == ExprKind::Constant) return Expr::constant(std::cos(x.constant_value()));
  detail::ExprNode n;
  n.kind = ExprKind::Cos;
  n.children = {x};
  return make_node(std::move(n));
}

Expr operator+(const Expr& a, const Expr& b) { return sum({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return sum({a, product({Expr::constant(-1.0), b})}); }
Expr operator-(const Expr& a) { return product({Expr::constant(-1.0), a}); }
Expr operator*(const Expr& a, const Expr& b) { return product({a, b}); }
Expr operator/(const Expr& a, const Expr& b) { return product({a, pow(b, Rational(-1))}); }

// --- evaluation --------------------------------------------------------------

double evaluate(const Expr& e, const Binding& b) {
  switch (e.kind()) {
    case ExprKind::Constant:
      return e.constant_value();
    case ExprKind::Variable:
      return b.get(e.symbol());
    case ExprKind::Sum: {
      double acc = 0.0;
      for (const auto& k : e.children()) acc += evaluate(k, b);
      return acc;
    }
    case ExprKind::Product: {
      double acc = 1.0;
      for (const auto& k : e.children()) acc *= evaluate(k, b);
      return acc;
    }
    case ExprKind::Power: {
      const double base = evaluate(e.base(), b);
      const Rational& r = e.exponent();
      if (r.is_integer()) {
        if (base == 0.0 && r.num < 0) throw DomainViolation("zero base with negative exponent", to_string(e));
        return std::pow(base, static_cast<double>(r.num));
      }
      if (base < 0.0) throw DomainViolation("negative base with non-integer exponent", to_string(e));
      if (base == 0.0 && r.num < 0) throw DomainViolation("zero base with negative exponent", to_string(e));
      return std::pow(base, r.to_double());
    }
    case ExprKind::Sin:
      return std::sin(evaluate(e.children()[0], b));
    case ExprKind::Cos:
      return std::cos(evaluate(e.children()[0], b));
  }
  throw Error("unreachable expression kind");
}

// --- differentiation ---------------------------------------------------------

Expr differentiate(const Expr& e, const Symbol& s) {
  switch (e.kind()) {
    case ExprKind::Constant:
      return Expr::constant(0.0);
    case ExprKind::Variable:
      return e.symbol() == s ? Expr::constant(1.0) : Expr::constant(0.0);
    case ExprKind::Sum: {
      std::vector<Expr> terms;
      terms.reserve(e.children().size());
      for (const auto& k : e.children()) terms.push_back(differentiate(k, s));
      return sum(std::move(terms));
    }
    case ExprKind::Product: {
      std::vector<Expr> terms;
      const auto& kids = e.children();
      for (std::size_t i = 0; i < kids.size(); ++i) {
        Expr d = differentiate(kids[i], s);
        if (d.is_zero()) continue;
        std::vector<Expr> factors;
        factors.reserve(kids.size());
        for (std::size_t j = 0; j < kids.size(); ++j) factors.push_back(i == j ? d : kids[j]);
        terms.push_back(product(std::move(factors)));
      }
      return sum(std::move(terms));
    }
    case ExprKind::Power: {
      Expr db = differentiate(e.base(), s);
      if (db.is_zero()) return Expr::constant(0.0);
      const Rational& r = e.exponent();
      return product({Expr::constant(r.to_double()), pow(e.base(), r - Rational(1)), db});
    }
    case ExprKind::Sin: {
      Expr d = differentiate(e.children()[0], s);
      if (d.is_zero()) return Expr::constant(0.0);
      return product({cos(e.children()[0]), d});
    }
    case ExprKind::Cos: {
      Expr d = differentiate(e.children()[0], s);
      if (d.is_zero()) return Expr::constant(0.0);
      return product({Expr::constant(-1.0), sin(e.children()[0]), d});
    }
  }
  throw Error("unreachable expression kind");
}

Expr total_derivative(const Expr& e, const Symbol& time, const std::vector<Jet>& jets) {
  if (contains_role(e, SymbolRole::Acceleration)) {
    throw JetOverflow("total derivative of an expression that already contains accelerations");
  }
  std::vector<Expr> terms;
  terms.push_back(differentiate(e, time));
  for (const auto& jet : jets) {
    terms.push_back(Expr(jet.vel) * differentiate(e, jet.coord));
    terms.push_back(Expr(jet.accel) * differentiate(e, jet.vel));
  }
  return sum(std::move(terms));
}

Expr substitute(const Expr& e, const std::vector<std::pair<Symbol, Expr>>& replacements) {
  switch (e.kind()) {
    case ExprKind::Constant:
      return e;
    case ExprKind::Variable: {
      for (const auto& [s, r] : replacements) {
        if (e.symbol() == s) return r;
      }
      return e;
    }
    case ExprKind::Sum: {
      std::vector<Expr> kids;
      kids.reserve(e.children().size());
      for (const auto& k : e.children()) kids.push_back(substitute(k, replacements));
      return sum(std::move(kids));
    }
    case ExprKind::Product: {
      std::vector<Expr> kids;
      kids.reserve(e.children().size());
      for (const auto& k : e.children()) kids.push_back(substitute(k, replacements));
      return product(std::move(kids));
    }
    case ExprKind::Power:
      return pow(substitute(e.base(), replacements), e.exponent());
    case ExprKind::Sin:
      return sin(substitute(e.children()[0], replacements));
    case ExprKind::Cos:
      return cos(substitute(e.children()[0], replacements));
  }
  throw Error("unreachable expression kind");
}

void collect_symbols(const Expr& e, std::set<int>& ids) {
  switch (e.kind()) {
    case ExprKind::Constant:
      return;
    case ExprKind::Variable:
      ids.insert(e.symbol().id());
      return;
    default:
      for (const auto& k : e.children()) collect_symbols(k, ids);
  }
}

std::vector<Symbol> free_symbols(const Expr& e, const SymbolTable& table) {
  std::set<int> ids;
  collect_symbols(e, ids);
  std::vector<Symbol> out;
  out.reserve(ids.size());
  for (int id : ids) out.push_back(table.by_id(id));
  return out;
}

bool depends_on(const Expr& e, const Symbol& s) {
  switch (e.kind()) {
    case ExprKind::Constant:
      return false;
    case ExprKind::Variable:
      return e.symbol() == s;
    default:
      for (const auto& k : e.children()) {
        if (depends_on(k, s)) return true;
      }
      return false;
  }
}

bool contains_role(const Expr& e, SymbolRole role) {
  switch (e.kind()) {
    case ExprKind::Constant:
      return false;
    case ExprKind::Variable:
      return e.symbol().role() == role;
    default:
      for (const auto& k : e.children()) {
        if (contains_role(k, role)) return true;
      }
      return false;
  }
}

// --- printing ----------------------------------------------------------------

std::string format_double(double v) {
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

namespace {

bool needs_parens_in_product(const Expr& e) {
  return e.kind() == ExprKind::Sum || (e.kind() == ExprKind::Constant && e.constant_value() < 0.0);
}

std::string print_expr(const Expr& e);

std::string print_power(const Expr& e) {
  const Expr& b = e.base();
  std::string base_str = print_expr(b);
  if (b.kind() != ExprKind::Variable && b.kind() != ExprKind::Sin && b.kind() != ExprKind::Cos &&
      !(b.kind() == ExprKind::Constant && b.constant_value() >= 0.0)) {
    base_str = "(" + base_str + ")";
  }
  const Rational& r = e.exponent();
  if (r.is_integer() && r.num >= 0) return base_str + "^" + std::to_string(r.num);
  return base_str + "^(" + r.str() + ")";
}

std::string print_product(const Expr& e) {
  std::string out;
  bool first = true;
  for (const auto& k : e.children()) {
    std::string piece = print_expr(k);
    if (needs_parens_in_product(k)) piece = "(" + piece + ")";
    if (!first) out += "*";
    out += piece;
    first = false;
  }
  return out;
}

std::string print_expr(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Constant:
      return format_double(e.constant_value());
    case ExprKind::Variable:
      return e.symbol().name();
    case ExprKind::Power:
      return print_power(e);
    case ExprKind::Product:
      return print_product(e);
    case ExprKind::Sum: {
      std::string out;
      bool first = true;
      for (const auto& k : e.children()) {
        auto [c, key] = split_coefficient(k);
        if (!first) {
          out += (c < 0.0) ? " - " : " + ";
        } else if (c < 0.0) {
          out += "-";
        }
        Expr shown = first ? k : rebuild_term(c < 0.0 ? -c : c, key);
        if (first && c < 0.0) shown = rebuild_term(-c, key);
        std::string piece = print_expr(shown);
        if (needs_parens_in_product(shown) && shown.kind() != ExprKind::Sum) piece = "(" + piece + ")";
        out += piece;
        first = false;
      }
      return out;
    }
    case ExprKind::Sin:
      return "sin(" + print_expr(e.children()[0]) + ")";
    case ExprKind::Cos:
      return "cos(" + print_expr(e.children()[0]) + ")";
  }
  return "?";
}

}  // namespace

std::string to_string(const Expr& e) { return print_expr(e); }

}  // namespace ermakov
