#include <cmath>

#include "doctest.h"
#include "ermakov/errors.hpp"
#include "ermakov/sampling.hpp"

using namespace ermakov;

namespace {

struct TrigPair {
  SymbolTable tab;
  Symbol theta = tab.jet("theta").coord;
  Symbol phi = tab.jet("phi").coord;

  // 8 / (cos(2phi-2theta) + cos(2phi+2theta) + 2cos(2theta) - 2cos(2phi) + 6)
  Expr vf_original() {
    Expr two_th = 2.0 * Expr(theta);
    Expr two_ph = 2.0 * Expr(phi);
    return 8.0 / (cos(two_ph - two_th) + cos(two_ph + two_th) + 2.0 * cos(two_th) -
                  2.0 * cos(two_ph) + 6.0);
  }
  Expr vf_corrected() {
    return 1.0 / (1.0 - pow(cos(Expr(phi)), 2) * pow(sin(Expr(theta)), 2));
  }
  Expr vf_printed() {
    return 1.0 / (pow(cos(Expr(phi)), 2) * pow(sin(Expr(theta)), 2) - 1.0);
  }

  SampleDomain domain() {
    SampleDomain d;
    d.set(theta, -1.3, 1.3).set(phi, -1.3, 1.3);
    return d;
  }
};

}  // namespace

TEST_SUITE_BEGIN("sampling");

TEST_CASE("trig identity accepted, sign-flipped candidate refuted") {
  TrigPair p;

  auto ok = equal_on_samples(p.vf_original(), p.vf_corrected(), p.tab, p.domain(), 1000, 1e-12);
  CHECK(ok.equal);
  CHECK(ok.max_abs_deviation <= 1e-12);
  CHECK(ok.samples_used == 1000);

  auto bad = equal_on_samples(p.vf_original(), p.vf_printed(), p.tab, p.domain(), 1000, 1e-12);
  CHECK_FALSE(bad.equal);
  CHECK(bad.max_abs_deviation >= 1.0);
}

TEST_CASE("identical expressions have zero deviation") {
  SymbolTable tab;
  Symbol x = tab.jet("x").coord;
  SampleDomain d;
  d.set(x, -5.0, 5.0);
  auto v = equal_on_samples(Expr(x), Expr(x), tab, d, 10, 0.0);
  CHECK(v.equal);
  CHECK(v.max_abs_deviation == 0.0);
  CHECK(v.samples_used == 10);
  CHECK(v.samples_rejected == 0);
}

TEST_CASE("verdicts are bit-identical for a fixed seed") {
  TrigPair p;
  auto a = equal_on_samples(p.vf_original(), p.vf_corrected(), p.tab, p.domain(), 500, 1e-12,
                            kDefaultGuard, 1234);
  auto b = equal_on_samples(p.vf_original(), p.vf_corrected(), p.tab, p.domain(), 500, 1e-12,
                            kDefaultGuard, 1234);
  CHECK(a.max_abs_deviation == b.max_abs_deviation);
  CHECK(a.samples_used == b.samples_used);
  CHECK(a.samples_rejected == b.samples_rejected);
  CHECK(a.seed == b.seed);
}

TEST_CASE("guard rejects near-singular denominators") {
  SymbolTable tab;
  Symbol x = tab.jet("x").coord;
  SampleDomain d;
  d.set(x, -1.0, 1.0);
  // 1/x over a domain straddling zero: some samples must be rejected, and the
  // accepted ones keep |x| >= guard.
  auto v = equal_on_samples(1.0 / Expr(x), 1.0 / Expr(x), tab, d, 200, 1e-12, 0.5);
  CHECK(v.equal);
  CHECK(v.samples_rejected > 0);

  // impossible guard: every draw rejected
  CHECK_THROWS_AS(
      equal_on_samples(1.0 / Expr(x), 1.0 / Expr(x), tab, d, 100, 1e-12, 10.0),
      InsufficientSamples);
}

TEST_SUITE_END();
