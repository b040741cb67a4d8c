#include <doctest.h>

#include <algorithm>
#include <random>

#include "macscope/measuring.hpp"
#include "macscope/semiring.hpp"

using namespace macscope;

namespace {

Monomial mono(const Rat& c, std::vector<Rat> dims) {
  return Monomial(c, DimVec(std::move(dims)));
}

// Coefficients {0, 1/2, 1, 2, 3}, dimensions Bottom plus {-1,0,1,2}^2.
std::vector<Monomial> reference_sample() {
  std::vector<Monomial> sample{Monomial::zero()};
  std::vector<Rat> coeffs{Rat(1, 2), Rat(1), Rat(2), Rat(3)};
  std::vector<Rat> dims{Rat(-1), Rat(0), Rat(1), Rat(2)};
  for (const auto& c : coeffs)
    for (const auto& d1 : dims)
      for (const auto& d2 : dims) sample.push_back(mono(c, {d1, d2}));
  return sample;
}

}  // namespace

TEST_CASE("max-plus addition") {
  LimitRegime regime(2);
  CHECK(mono_add(mono(2, {1, 0}), mono(3, {1, 0}), regime) == mono(5, {1, 0}));
  LimitRegime one(1);
  CHECK(mono_add(mono(1, {1}), mono(1, {3}), one) == mono(1, {3}));
  Monomial x = mono(Rat(7, 2), {2, 1});
  CHECK(mono_add(x, Monomial::zero(), regime) == x);
  CHECK(mono_add(Monomial::zero(), x, regime) == x);
}

TEST_CASE("monomial multiplication") {
  CHECK(mono_mul(mono(2, {1, 0}), mono(3, {0, 2})) == mono(6, {1, 2}));
  Monomial x = mono(Rat(5, 3), {1, -1});
  CHECK(mono_mul(x, Monomial::one(2)) == x);
  CHECK(mono_mul(x, Monomial::zero()).is_zero());
  CHECK(mono_mul(Monomial::zero(), x).is_zero());
}

TEST_CASE("lexicographic comparison, dimension first") {
  LimitRegime one(1);
  CHECK(mono_cmp(mono(5, {1}), mono(1, {2}), one) == std::strong_ordering::less);
  Monomial x = mono(2, {1});
  CHECK(mono_cmp(x, x, one) == std::strong_ordering::equal);
  CHECK(mono_cmp(Monomial::zero(), mono(Rat(1, 100), {-5}), one) ==
        std::strong_ordering::less);
}

TEST_CASE("regime picks the fast variable first") {
  // Variable 0 slow, variable 1 fast: Z_0^10 below Z_1^1.
  LimitRegime regime(std::vector<std::size_t>{0, 1});
  CHECK(mono_cmp(mono(1, {10, 0}), mono(1, {0, 1}), regime) ==
        std::strong_ordering::less);
  // The same dominance numerically: |F| = p fixed, |V| = p^n eventually wins.
  for (Int p : {Int(2), Int(3)}) {
    Int f_pow = ipow(p, 10);
    bool dominated = false;
    for (unsigned n = 1; n <= 12; ++n)
      if (ipow(p, n) > f_pow) dominated = true;
    CHECK(dominated);
  }
  CHECK_THROWS_AS(LimitRegime(std::vector<std::size_t>{0, 0}),
                  std::invalid_argument);
}

TEST_CASE("dimension map") {
  CHECK(dim(Monomial::zero()).is_bottom());
  CHECK(dim(mono(3, {2, 1})) == DimVec({Rat(2), Rat(1)}));
  Monomial x = mono(2, {1, 0});
  Monomial y = mono(Rat(1, 2), {0, 2});
  CHECK(dim(mono_mul(x, y)) == dim(x).plus(dim(y)));
  // Monotone: x <= y implies dim(x) <= dim(y).
  LimitRegime regime(2);
  auto sample = reference_sample();
  for (const auto& a : sample)
    for (const auto& b : sample)
      if (mono_cmp(a, b, regime) != std::strong_ordering::greater)
        CHECK(dim(a).compare(dim(b), regime) != std::strong_ordering::greater);
}

TEST_CASE("equal magnitude is bounded multiple, both ways") {
  LimitRegime one(1);
  Monomial a = mono(2, {1});
  Monomial b = mono(7, {1});
  CHECK(magnitude_eq(a, b));
  // The defining witness: 2Z <= 7Z <= 4 * 2Z.
  auto ops = monomial_ops(one);
  CHECK(ops.cmp(a, b) != std::strong_ordering::greater);
  CHECK(ops.cmp(b, ops.nat_scale(4, a)) != std::strong_ordering::greater);
  CHECK(!magnitude_eq(mono(1, {1}), mono(1, {2})));
  CHECK(magnitude_eq(Monomial::zero(), Monomial::zero()));
  CHECK(!magnitude_eq(Monomial::zero(), a));
}

TEST_CASE("approx equality is exact equality of dim and coeff") {
  CHECK(approx_eq(mono(2, {1}), mono(2, {1})));
  CHECK(!approx_eq(mono(2, {1}), mono(3, {1})));  // q = 5/4 separates
  CHECK(!approx_eq(mono(2, {1}), mono(2, {2})));
  // Refines ~ on the sample; both are equivalence relations.
  auto sample = reference_sample();
  for (const auto& a : sample) {
    CHECK(magnitude_eq(a, a));
    CHECK(approx_eq(a, a));
    for (const auto& b : sample) {
      if (approx_eq(a, b)) CHECK(magnitude_eq(a, b));
      CHECK(magnitude_eq(a, b) == magnitude_eq(b, a));
    }
  }
}

TEST_CASE("magnitude classes are order-convex") {
  LimitRegime regime(2);
  auto sample = reference_sample();
  std::sort(sample.begin(), sample.end(),
            [&](const Monomial& a, const Monomial& b) {
              return mono_cmp(a, b, regime) == std::strong_ordering::less;
            });
  for (std::size_t i = 0; i < sample.size(); ++i)
    for (std::size_t j = i + 1; j < sample.size(); ++j)
      if (magnitude_eq(sample[i], sample[j]))
        for (std::size_t k = i; k <= j; ++k)
          CHECK(magnitude_eq(sample[i], sample[k]));
}

TEST_CASE("relative measure rho") {
  CHECK(rho(mono(2, {1}), mono(6, {1})) == RhoValue{false, Rat(3)});
  CHECK(rho(mono(1, {2}), mono(1, {1})) == RhoValue{false, Rat(0)});
  CHECK(rho(mono(1, {1}), mono(1, {2})).infinite);
  CHECK(rho(mono(2, {1}), Monomial::zero()) == RhoValue{false, Rat(0)});
  CHECK_THROWS_AS(rho(Monomial::zero(), mono(1, {1})), std::domain_error);
}

TEST_CASE("divisible hull operations") {
  LimitRegime one(1);
  auto ops = monomial_ops(one);
  Monomial x = mono(3, {1});
  HullElement<Monomial> half{Rat(1, 2), x};
  CHECK(hull_eq(hull_add(half, half, ops), HullElement<Monomial>{Rat(1), x},
                ops));
  Monomial y = mono(2, {2});
  CHECK(hull_eq(hull_mul(HullElement<Monomial>{Rat(1), x},
                         HullElement<Monomial>{Rat(1), y}, ops),
                HullElement<Monomial>{Rat(1), mono_mul(x, y)}, ops));
  CHECK(hull_cmp(HullElement<Monomial>{Rat(1, 3), mono(6, {1})},
                 HullElement<Monomial>{Rat(1, 2), mono(4, {1})},
                 ops) == std::strong_ordering::equal);
}

TEST_CASE("hull embedding preserves structure") {
  LimitRegime regime(2);
  auto ops = monomial_ops(regime);
  auto embed = [](const Monomial& m) {
    return HullElement<Monomial>{Rat(1), m};
  };
  auto sample = reference_sample();
  std::vector<Rat> scalars{Rat(1, 2), Rat(2, 3), Rat(3)};
  for (std::size_t i = 0; i < sample.size(); i += 7) {
    for (std::size_t j = 0; j < sample.size(); j += 5) {
      const auto& x = sample[i];
      const auto& y = sample[j];
      CHECK(hull_eq(hull_add(embed(x), embed(y), ops), embed(ops.add(x, y)),
                    ops));
      CHECK(hull_eq(hull_mul(embed(x), embed(y), ops), embed(ops.mul(x, y)),
                    ops));
      CHECK(hull_cmp(embed(x), embed(y), ops) == ops.cmp(x, y));
      for (const auto& q : scalars) {
        HullElement<Monomial> qxy{q, ops.add(x, y)};
        HullElement<Monomial> qx{q, x};
        HullElement<Monomial> qy{q, y};
        CHECK(hull_eq(qxy, hull_add(qx, qy, ops), ops));
      }
    }
  }
}

TEST_CASE("axiom suite passes on the reference sample") {
  auto report = axiom_suite(reference_sample(), 4, LimitRegime(2));
  CHECK(report.ok());
  CHECK(report.checked > 500000);
}

TEST_CASE("axiom suite on the two-point sample") {
  std::vector<Monomial> sample{Monomial::zero(), Monomial::one(2)};
  auto report = axiom_suite(sample, 4, LimitRegime(2));
  CHECK(report.ok());
}

TEST_CASE("corrupted addition is caught by (MS)") {
  LimitRegime regime(2);
  auto ops = monomial_ops(regime);
  // Idempotent max instead of coefficient sums.
  ops.add = [regime](const Monomial& x, const Monomial& y) {
    return mono_cmp(x, y, regime) == std::strong_ordering::less ? y : x;
  };
  std::vector<Monomial> sample{Monomial::zero(), Monomial::one(2),
                               mono(2, {0, 0}), mono(3, {0, 0}),
                               mono(1, {1, 0})};
  auto report = axiom_suite(sample, 4, ops);
  CHECK(!report.ok());
  bool ms_violated = false;
  for (const auto& v : report.violations)
    if (v.axiom == "MS") ms_violated = true;
  CHECK(ms_violated);
}

TEST_CASE("leading monomial is a semiring homomorphism") {
  std::mt19937 rng(20240817);
  std::uniform_int_distribution<int> pick_vars(1, 3);
  std::uniform_int_distribution<int> pick_terms(1, 5);
  std::uniform_int_distribution<int> pick_exp(0, 3);
  std::uniform_int_distribution<int> pick_coeff(1, 9);

  for (int trial = 0; trial < 200; ++trial) {
    int k = pick_vars(rng);
    std::vector<std::string> vars;
    for (int i = 0; i < k; ++i) vars.push_back("v" + std::to_string(i));
    auto random_poly = [&]() {
      MeasuringFunction p(vars);
      int terms = pick_terms(rng);
      for (int t = 0; t < terms; ++t) {
        std::vector<Rat> e;
        for (int i = 0; i < k; ++i) e.push_back(Rat(pick_exp(rng)));
        p.add_term(e, Rat(pick_coeff(rng)));
      }
      return p;
    };
    MeasuringFunction p = random_poly();
    MeasuringFunction q = random_poly();
    LimitRegime regime(static_cast<std::size_t>(k));
    Monomial lp = leading_monomial(p, regime);
    Monomial lq = leading_monomial(q, regime);
    CHECK(leading_monomial(p + q, regime) == mono_add(lp, lq, regime));
    CHECK(leading_monomial(p * q, regime) == mono_mul(lp, lq));
  }
}

TEST_CASE("ratio to the leading term tends to one") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> pick_terms(2, 6);
  std::uniform_int_distribution<int> pick_exp(0, 3);
  std::uniform_int_distribution<int> pick_coeff(1, 5);
  std::vector<std::string> vars{"s", "f"};
  LimitRegime regime(2);  // s slow, f fast

  for (int trial = 0; trial < 20; ++trial) {
    MeasuringFunction p(vars);
    int terms = pick_terms(rng);
    for (int t = 0; t < terms; ++t)
      p.add_term({Rat(pick_exp(rng)), Rat(pick_exp(rng))},
                 Rat(pick_coeff(rng)));
    if (p.is_zero()) continue;
    Monomial lt = leading_monomial(p, regime);
    Rat last_gap;
    for (int step : {6, 8, 10, 12, 14}) {
      // Points respecting the regime: the fast variable outgrows every
      // power of the slow one.
      Rat slow = Rat(ipow(Int(2), step));
      Rat fast = Rat(ipow(Int(2), step * step));
      Rat value = *p.eval({slow, fast});
      Rat lt_value = lt.coeff();
      lt_value *= *rat_pow(slow, lt.dim().entries()[0]);
      lt_value *= *rat_pow(fast, lt.dim().entries()[1]);
      Rat gap = value / lt_value - 1;
      if (gap < 0) gap = -gap;
      last_gap = gap;
    }
    CHECK(last_gap < Rat(1, 100));
  }
}

TEST_CASE("monomial text form round-trips") {
  for (const auto& m : reference_sample()) {
    auto parsed = Monomial::parse(m.to_string());
    REQUIRE(parsed);
    CHECK(*parsed == m);
  }
  auto z = Monomial::parse("0");
  REQUIRE(z);
  CHECK(z->is_zero());
  auto half = Monomial::parse("1/2 Z^(-1,2)");
  REQUIRE(half);
  CHECK(*half == mono(Rat(1, 2), {-1, 2}));
  CHECK(!Monomial::parse("Z^(1)"));
  CHECK(!Monomial::parse("-1 Z^(1)"));
}
