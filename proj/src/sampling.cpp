#include "ermakov/sampling.hpp"

#include <cmath>
#include <cstdlib>
#include <set>

#include "ermakov/errors.hpp"

namespace ermakov {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("ERMAKOV_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return static_cast<std::uint64_t>(v);
  }
  return kDefaultSeed;
}

bool guard_satisfied(const Expr& e, const Binding& b, double guard) {
  switch (e.kind()) {
    case ExprKind::Constant:
    case ExprKind::Variable:
      return true;
    case ExprKind::Power: {
      if (!guard_satisfied(e.base(), b, guard)) return false;
      const Rational& r = e.exponent();
      double base = 0.0;
      try {
        base = evaluate(e.base(), b);
      } catch (const Error&) {
        return false;
      }
      if (r.num < 0 && std::fabs(base) < guard) return false;
      if (!r.is_integer() && base < 0.0) return false;
      return true;
    }
    default:
      for (const auto& k : e.children()) {
        if (!guard_satisfied(k, b, guard)) return false;
      }
      return true;
  }
}

namespace {

struct Sampler {
  Sampler(const SymbolTable& table, const SampleDomain& domain, const std::set<int>& ids,
          std::uint64_t seed)
      : table(table), rng(seed) {
    for (int id : ids) {
      Symbol s = table.by_id(id);
      auto iv = domain.get(s);
      if (!iv) throw Error("sampling domain missing interval for symbol '" + s.name() + "'");
      symbols.push_back(s);
      intervals.push_back(*iv);
    }
  }

  Binding draw() {
    Binding b(table);
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      b.set(symbols[i], rng.uniform(intervals[i].lo, intervals[i].hi));
    }
    return b;
  }

  const SymbolTable& table;
  SplitMix64 rng;
  std::vector<Symbol> symbols;
  std::vector<Interval> intervals;
};

}  // namespace

IdentityVerdict equal_on_samples(const Expr& e1, const Expr& e2, const SymbolTable& table,
                                 const SampleDomain& domain, int n, double tol, double guard,
                                 std::uint64_t seed) {
  std::set<int> ids;
  collect_symbols(e1, ids);
  collect_symbols(e2, ids);
  Sampler sampler(table, domain, ids, seed);

  IdentityVerdict verdict;
  verdict.seed = seed;
  const long max_draws = 100L * std::max(n, 1);
  for (long draw = 0; draw < max_draws && verdict.samples_used < n; ++draw) {
    Binding b = sampler.draw();
    if (!guard_satisfied(e1, b, guard) || !guard_satisfied(e2, b, guard)) {
      ++verdict.samples_rejected;
      continue;
    }
    double v1 = 0.0;
    double v2 = 0.0;
    try {
      v1 = evaluate(e1, b);
      v2 = evaluate(e2, b);
    } catch (const DomainViolation&) {
      ++verdict.samples_rejected;
      continue;
    }
    ++verdict.samples_used;
    const double dev = std::fabs(v1 - v2);
    if (dev >= verdict.max_abs_deviation) {
      verdict.max_abs_deviation = dev;
      verdict.worst_point = b.items();
      verdict.lhs_at_worst = v1;
      verdict.rhs_at_worst = v2;
    }
  }
  if (verdict.samples_used < n) {
    throw InsufficientSamples("guard rejected too many samples: accepted " +
                              std::to_string(verdict.samples_used) + " of " + std::to_string(n) +
                              " requested");
  }
  verdict.equal = verdict.max_abs_deviation <= tol;
  return verdict;
}

double sample_max_abs(const Expr& e, const SymbolTable& table, const SampleDomain& domain, int n,
                      double guard, std::uint64_t seed, Binding* argmax) {
  std::set<int> ids;
  collect_symbols(e, ids);
  Sampler sampler(table, domain, ids, seed);

  double max_abs = 0.0;
  int used = 0;
  bool any = false;
  const long max_draws = 100L * std::max(n, 1);
  for (long draw = 0; draw < max_draws && used < n; ++draw) {
    Binding b = sampler.draw();
    if (!guard_satisfied(e, b, guard)) continue;
    double v = 0.0;
    try {
      v = evaluate(e, b);
    } catch (const DomainViolation&) {
      continue;
    }
    ++used;
    if (!any || std::fabs(v) >= max_abs) {
      max_abs = std::fabs(v);
      any = true;
      if (argmax != nullptr) *argmax = b;
    }
  }
  if (used < n) {
    throw InsufficientSamples("guard rejected too many samples while bounding |expr|");
  }
  return max_abs;
}

}  // namespace ermakov
