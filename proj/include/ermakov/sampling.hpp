#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ermakov/expr.hpp"

namespace ermakov {

inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr double kDefaultGuard = 1e-3;

// Returns the process-wide default seed, honoring ERMAKOV_SEED when set.
std::uint64_t default_seed();

// 64-bit splittable mix generator; deterministic and cheap to fork.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

// Per-symbol sampling intervals keyed by symbol id.
class SampleDomain {
 public:
  SampleDomain& set(const Symbol& s, double lo, double hi) {
    intervals_[s.id()] = {lo, hi};
    return *this;
  }
  [[nodiscard]] std::optional<Interval> get(const Symbol& s) const {
    auto it = intervals_.find(s.id());
    if (it == intervals_.end()) return std::nullopt;
    return it->second;
  }
  [[nodiscard]] const std::map<int, Interval>& intervals() const { return intervals_; }

 private:
  std::map<int, Interval> intervals_;
};

struct IdentityVerdict {
  bool equal = false;
  double max_abs_deviation = 0.0;
  int samples_used = 0;
  int samples_rejected = 0;
  std::uint64_t seed = 0;
  // worst observed point, for counterexample reporting
  std::vector<std::pair<std::string, double>> worst_point;
  double lhs_at_worst = 0.0;
  double rhs_at_worst = 0.0;
};

// Seeded sampled identity test: draws guard-respecting points from the
// per-symbol domain and compares |e1 - e2| against tol. Reproducible for a
// fixed seed. Throws InsufficientSamples when rejection leaves fewer than n
// accepted points after 100*n draws.
IdentityVerdict equal_on_samples(const Expr& e1, const Expr& e2, const SymbolTable& table,
                                 const SampleDomain& domain, int n, double tol,
                                 double guard = kDefaultGuard, std::uint64_t seed = kDefaultSeed);

// Sampled max |e| over the domain; same guard/rejection rules. Worst point is
// written to argmax when provided.
double sample_max_abs(const Expr& e, const SymbolTable& table, const SampleDomain& domain, int n,
                      double guard = kDefaultGuard, std::uint64_t seed = kDefaultSeed,
                      Binding* argmax = nullptr);

// True when every inverse-power base in e stays at least `guard` in magnitude
// (and non-negative for fractional exponents) at the bound point.
bool guard_satisfied(const Expr& e, const Binding& b, double guard);

}  // namespace ermakov
