#pragma once

#include <initializer_list>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "ermakov/rational.hpp"
#include "ermakov/symbols.hpp"

namespace ermakov {

enum class ExprKind { Constant, Variable, Power, Product, Sum, Sin, Cos };

class Expr;

namespace detail {
struct ExprNode {
  ExprKind kind = ExprKind::Constant;
  double value = 0.0;           // Constant
  Symbol symbol;                // Variable
  Rational exponent;            // Power
  std::vector<Expr> children;   // Power: {base}; Sum/Product: terms/factors; Sin/Cos: {arg}
};
}  // namespace detail

// Immutable expression tree over {constant, symbol, sum, product, rational
// power, sin, cos}. Builders canonicalize: sums and products are flattened,
// constants folded, like terms collected and children kept in a fixed total
// order, so structurally equal formulas compare equal.
class Expr {
 public:
  Expr();  // zero
  Expr(double v);  // NOLINT implicit: constants read naturally in formulas
  Expr(int v) : Expr(static_cast<double>(v)) {}  // NOLINT
  Expr(const Symbol& s);  // NOLINT

  static Expr constant(double v);
  static Expr variable(const Symbol& s);

  [[nodiscard]] ExprKind kind() const { return node_->kind; }
  [[nodiscard]] double constant_value() const { return node_->value; }
  [[nodiscard]] const Symbol& symbol() const { return node_->symbol; }
  [[nodiscard]] const Rational& exponent() const { return node_->exponent; }
  [[nodiscard]] const std::vector<Expr>& children() const { return node_->children; }
  [[nodiscard]] const Expr& base() const { return node_->children.front(); }

  [[nodiscard]] bool is_constant() const { return node_->kind == ExprKind::Constant; }
  [[nodiscard]] bool is_zero() const { return is_constant() && node_->value == 0.0; }
  [[nodiscard]] bool is_one() const { return is_constant() && node_->value == 1.0; }

  [[nodiscard]] const detail::ExprNode* raw() const { return node_.get(); }

 private:
  friend Expr make_node(detail::ExprNode&& n);
  explicit Expr(std::shared_ptr<const detail::ExprNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::ExprNode> node_;
};

// Canonicalizing builders.
Expr sum(std::vector<Expr> terms);
Expr product(std::vector<Expr> factors);
Expr pow(const Expr& base, const Rational& r);
Expr pow(const Expr& base, std::int64_t k);
Expr sin(const Expr& x);
Expr cos(const Expr& x);

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);

// Total order used for canonical child ordering; 0 iff structurally equal.
int compare(const Expr& a, const Expr& b);
inline bool structurally_equal(const Expr& a, const Expr& b) { return compare(a, b) == 0; }
struct ExprLess {
  bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};

// Exact recursive evaluation in double precision.
double evaluate(const Expr& e, const Binding& b);

// Partial derivative treating all symbols as independent.
Expr differentiate(const Expr& e, const Symbol& s);

// d/dt along the jet: de/dt + sum v_i de/dq_i + sum a_i de/dv_i, acceleration
// symbols left symbolic. Throws JetOverflow if e already contains accelerations.
Expr total_derivative(const Expr& e, const Symbol& time, const std::vector<Jet>& jets);

Expr substitute(const Expr& e, const std::vector<std::pair<Symbol, Expr>>& replacements);

void collect_symbols(const Expr& e, std::set<int>& ids);
std::vector<Symbol> free_symbols(const Expr& e, const SymbolTable& table);
bool depends_on(const Expr& e, const Symbol& s);
bool contains_role(const Expr& e, SymbolRole role);

std::string to_string(const Expr& e);
std::string format_double(double v);  // shortest round-trip decimal

}  // namespace ermakov
