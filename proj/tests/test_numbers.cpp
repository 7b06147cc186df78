#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "condan/numbers.hpp"
#include "condan/rng.hpp"

using namespace condan;

TEST_CASE("per-atom arithmetic") {
  Algebra a(2);
  Cond one = Cond::one(a);
  CondReal x(one, {1, 2});
  CondReal y(one, {3, 4});
  CondReal sum = arith(x, y, ArithOp::Add);
  CHECK(sum.at(0) == 4);
  CHECK(sum.at(1) == 6);
  CondReal z(one, {-3, 5});
  CondReal az = cond_abs(z);
  CHECK(az.at(0) == 3);
  CHECK(az.at(1) == 5);
  CondReal mx = arith(CondReal(one, {1, 5}), CondReal(one, {3, 2}), ArithOp::Max);
  CHECK(mx.at(0) == 3);
  CHECK(mx.at(1) == 5);

  CondReal off(Cond::from_atoms(a, {0}), {1});
  CHECK_THROWS_AS(arith(x, off, ArithOp::Add), Error);
}

TEST_CASE("conditional comparison returns the exact conditions") {
  Algebra a(2);
  Cond one = Cond::one(a);
  CompareResult c = compare(CondReal(one, {1, 5}), CondReal(one, {2, 3}));
  CHECK(c.leq_condition == Cond::from_atoms(a, {0}));
  CHECK_FALSE(c.leq);

  CondReal x(one, {1.5, -2});
  CompareResult cx = compare(x, x);
  CHECK(cx.leq);
  CHECK(cx.lt_condition.is_zero());

  CompareResult clt = compare(CondReal(one, {0, 0}), CondReal(one, {1, 1}));
  CHECK(clt.lt);
}

TEST_CASE("conditional inverse") {
  Algebra a(2);
  Cond one = Cond::one(a);
  CondReal r(one, {2, 0});
  CondReal inv = cond_inverse(r);
  CHECK(inv.at(0) == 0.5);
  CHECK(inv.at(1) == 0.0);

  CondReal ones = CondReal::constant(one, 1.0);
  CHECK(cond_inverse(ones) == ones);

  CondReal q(one, {-4, 0.5});
  CondReal iq = cond_inverse(q);
  CHECK(iq.at(0) == -0.25);
  CHECK(iq.at(1) == 2.0);

  // r * r^-1 is the indicator of the support
  Rng rng(2);
  for (int i = 0; i < 200; ++i) {
    CondReal v = CondReal::from_atom_fn(
        one, [&](int) { return rng.coin(0.3) ? 0.0 : rng.uniform(-50.0, 50.0); });
    CondReal prod = arith(v, cond_inverse(v), ArithOp::Mul);
    for (int t : one.atom_list()) {
      double expect = v.at(t) != 0.0 ? 1.0 : 0.0;
      CHECK(std::fabs(prod.at(t) - expect) < 1e-12);
    }
  }
}

TEST_CASE("sup/inf of a stable family, against the concatenation enumeration") {
  Algebra a(2);
  Cond one = Cond::one(a);
  StableSet<double> hull = stable_hull<double>({CondReal(one, {1, 5}), CondReal(one, {3, 2})});
  SupInf si = sup_inf(hull);
  CHECK(si.sup == CondReal(one, {3, 5}));
  CHECK(si.inf == CondReal(one, {1, 2}));
  // least upper bound over the whole enumeration
  for (const auto& e : hull.enumerate()) CHECK(compare(e, si.sup).leq);

  StableSet<double> single = stable_hull<double>({CondReal(one, {4, -1})});
  SupInf ss = sup_inf(single);
  CHECK(ss.sup == ss.inf);

  StableSet<double> prod(one, {{0, 1}, {-1, 0}});
  CHECK(sup_inf(prod).sup == CondReal(one, {1, 0}));
}

TEST_CASE("conditionally indexed partial sums") {
  Algebra a(2);
  Cond one = Cond::one(a);
  std::vector<CondReal> seq;
  for (int k = 1; k <= 10; ++k) seq.push_back(CondReal::constant(one, double(k)));
  CondNat n(CondValue<std::int64_t>(one, {2, 3}));
  CondReal s = partial_sum(seq, n);
  CHECK(s.at(0) == 3.0);   // 1+2
  CHECK(s.at(1) == 6.0);   // 1+2+3

  CondNat unit = CondNat::constant(one, 1);
  CHECK(partial_sum(seq, unit) == seq[0]);

  std::vector<CondReal> pow2;
  for (int k = 1; k <= 10; ++k) pow2.push_back(CondReal::constant(one, std::ldexp(1.0, -k)));
  CondNat ten = CondNat::constant(one, 10);
  CondReal s2 = partial_sum(pow2, ten);
  double expect = 1.0 - std::ldexp(1.0, -10);  // geometric partial-sum oracle
  CHECK(s2.at(0) == doctest::Approx(expect).epsilon(1e-14));
  CHECK(s2.at(1) == doctest::Approx(expect).epsilon(1e-14));

  CondNat big = CondNat::constant(one, 11);
  CHECK_THROWS_AS(partial_sum(pow2, big), Error);
}

TEST_CASE("truncated series demand a certified tail") {
  Algebra a(2);
  Cond one = Cond::one(a);
  std::vector<CondReal> quarter;
  const int kcut = 40;
  for (int k = 1; k <= kcut; ++k)
    quarter.push_back(CondReal::constant(one, std::pow(0.25, k)));
  CHECK_THROWS_AS(series_limit(quarter, kcut, std::nullopt), Error);

  CondReal tail = CondReal::constant(one, std::pow(0.25, kcut + 1) / 0.75);
  SeriesValue sv = series_limit(quarter, kcut, tail);
  // geometric series oracle: 1/4 / (1 - 1/4) = 1/3, with tail below 4^-40
  for (int t : one.atom_list()) {
    CHECK(std::fabs(sv.value.at(t) - 1.0 / 3.0) <= sv.tail_bound.at(t) + 1e-15);
    CHECK(sv.tail_bound.at(t) < std::pow(4.0, -39));
  }

  std::vector<CondReal> zeros(8, CondReal::constant(one, 0.0));
  SeriesValue s0 = series_limit(zeros, 8, CondReal::constant(one, 0.0));
  CHECK(s0.value == CondReal::constant(one, 0.0));

  std::vector<CondReal> halves;
  for (int k = 1; k <= kcut; ++k) halves.push_back(CondReal::constant(one, std::ldexp(1.0, -k)));
  SeriesValue sh = series_limit(halves, kcut, CondReal::constant(one, std::ldexp(1.0, -kcut)));
  CHECK(sh.value.at(0) == doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("conditional Cauchy-Schwarz evaluation") {
  Algebra a(2);
  Cond one = Cond::one(a);
  const int kcut = 40;

  // proportional geometric streams attain equality: both sides 1/9
  std::vector<CondReal> g;
  for (int k = 1; k <= kcut; ++k) g.push_back(CondReal::constant(one, std::ldexp(1.0, -k)));
  CondReal tail2 = CondReal::constant(one, std::pow(0.25, kcut + 1) / 0.75);
  CauchySchwarzResult eq = cauchy_schwarz_eval(g, g, tail2, tail2, 1e-12);
  CHECK(eq.holds);
  CHECK(eq.lhs.at(0) == doctest::Approx(1.0 / 9.0).epsilon(1e-12));
  CHECK(eq.rhs.at(0) == doctest::Approx(1.0 / 9.0).epsilon(1e-12));

  // orthogonal unit streams
  std::vector<CondReal> ea(4, CondReal::constant(one, 0.0));
  std::vector<CondReal> eb(4, CondReal::constant(one, 0.0));
  ea[0] = CondReal::constant(one, 1.0);
  eb[1] = CondReal::constant(one, 1.0);
  CondReal zero_tail = CondReal::constant(one, 0.0);
  CauchySchwarzResult orth = cauchy_schwarz_eval(ea, eb, zero_tail, zero_tail, 1e-12);
  CHECK(orth.holds);
  CHECK(orth.lhs.at(0) == 0.0);
  CHECK(orth.rhs.at(0) == 1.0);

  // random finite-support streams hold via the direct finite-sum oracle
  Rng rng(17);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<CondReal> ra, rb;
    for (int k = 0; k < 12; ++k) {
      ra.push_back(CondReal::from_atom_fn(one, [&](int) { return rng.uniform(-2.0, 2.0); }));
      rb.push_back(CondReal::from_atom_fn(one, [&](int) { return rng.uniform(-2.0, 2.0); }));
    }
    CauchySchwarzResult r = cauchy_schwarz_eval(ra, rb, zero_tail, zero_tail, 1e-12);
    CHECK(r.holds);
    for (int t : one.atom_list()) {
      double sab = 0, saa = 0, sbb = 0;
      for (int k = 0; k < 12; ++k) {
        sab += ra[k].at(t) * rb[k].at(t);
        saa += ra[k].at(t) * ra[k].at(t);
        sbb += rb[k].at(t) * rb[k].at(t);
      }
      CHECK(r.lhs.at(t) == doctest::Approx(sab * sab).epsilon(1e-12));
      CHECK(r.rhs.at(t) == doctest::Approx(saa * sbb).epsilon(1e-12));
    }
  }

  CHECK_THROWS_AS(cauchy_schwarz_eval(g, g, std::nullopt, tail2, 1e-12), Error);
}

TEST_CASE("conditional naturals start at one and order per atom") {
  Algebra a(2);
  Cond one = Cond::one(a);
  CHECK_THROWS_AS(CondNat(CondValue<std::int64_t>(one, {0, 1})), Error);
  CondNat n1(CondValue<std::int64_t>(one, {1, 2}));
  CondNat n2(CondValue<std::int64_t>(one, {2, 3}));
  CondNat n3(CondValue<std::int64_t>(one, {2, 2}));
  CHECK(n1.lt(n2));
  CHECK_FALSE(n1.lt(n3));  // not strict on every atom
}
