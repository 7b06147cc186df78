#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "condan/linear.hpp"
#include "condan/rng.hpp"

using namespace condan;

namespace {

SymmetricBody box_body(const Algebra& a, int dim, double c = 1.0) {
  std::vector<HBody> bodies;
  for (int t = 0; t < a.atoms(); ++t) {
    (void)t;
    HBody h;
    for (int i = 0; i < dim; ++i) {
      std::vector<double> e(static_cast<std::size_t>(dim), 0.0);
      e[static_cast<std::size_t>(i)] = 1.0;
      h.faces.push_back(Halfspace{std::move(e), c});
    }
    bodies.push_back(std::move(h));
  }
  return SymmetricBody(Cond::one(a), std::move(bodies));
}

CondLinearMap diag_map(const Algebra& a, std::vector<double> diag, NormKind kind) {
  int d = static_cast<int>(diag.size());
  std::vector<Mat> mats;
  for (int t = 0; t < a.atoms(); ++t) {
    (void)t;
    Mat m(d, d);
    for (int i = 0; i < d; ++i) m.at(i, i) = diag[static_cast<std::size_t>(i)];
    mats.push_back(std::move(m));
  }
  return CondLinearMap(Cond::one(a), std::move(mats), CondNorm::lp(kind), CondNorm::lp(kind));
}

}  // namespace

TEST_CASE("gauge of an axis-aligned body") {
  Algebra a(1);
  Cond one = Cond::one(a);
  HBody h;
  h.faces.push_back(Halfspace{{1.0, 0.0}, 1.0});
  h.faces.push_back(Halfspace{{0.0, 1.0}, 2.0});
  SymmetricBody c(one, {h});
  CondVector x(one, {{3.0, 2.0}});
  CHECK(gauge(c, x).at(0) == doctest::Approx(3.0));
  CHECK(gauge(c, CondVector::zero(one, 2)).at(0) == 0.0);
  CHECK_THROWS_AS(gauge(c, CondVector::zero(one, 3)), Error);  // dimension mismatch

  // homogeneity with a conditional scalar
  Algebra a2(2);
  Cond one2 = Cond::one(a2);
  SymmetricBody c2(one2, {h, h});
  CondVector x2(one2, {{3.0, 2.0}, {1.0, 4.0}});
  CondReal r(one2, {-2.0, 0.5});
  CondReal lhs = gauge(c2, cv_scale(x2, r));
  CondReal rhs = arith(cond_abs(r), gauge(c2, x2), ArithOp::Mul);
  for (int t : one2.atom_list()) CHECK(lhs.at(t) == doctest::Approx(rhs.at(t)).epsilon(1e-12));
}

TEST_CASE("support-function combination of grid bodies") {
  Algebra a(1);
  Cond one = Cond::one(a);
  // shared grid: basis plus the diagonal
  std::vector<std::vector<double>> grid = {{1.0, 0.0}, {0.0, 1.0}, {std::sqrt(0.5), std::sqrt(0.5)}};
  HBody kbox, ball;
  for (const auto& u : grid) {
    kbox.faces.push_back(Halfspace{u, 0.0});   // offsets set below
    ball.faces.push_back(Halfspace{u, 1.0});   // l2 ball sampled on the grid: h(u) = |u| = 1
  }
  kbox.faces[0].c = 1.0;
  kbox.faces[1].c = 1.0;
  kbox.faces[2].c = std::sqrt(2.0);  // box support along the diagonal
  SymmetricBody kb(one, {kbox});
  SymmetricBody bb(one, {ball});

  SymmetricBody comb = minkowski_combine(2.0, kb, 0.5, bb);
  CHECK(comb.at(0).faces[0].c == doctest::Approx(2.5));  // 2*h_K(e1) + 0.5*h_B(e1)

  // identity and doubling through support addition
  SymmetricBody same = minkowski_combine(1.0, kb, 0.0, bb);
  SymmetricBody canon = grid_canonicalize(kb);
  CHECK(same == canon);
  SymmetricBody twice = minkowski_combine(1.0, kb, 1.0, kb);
  SymmetricBody scaled = grid_canonicalize(scale_body(2.0, kb));
  for (std::size_t j = 0; j < grid.size(); ++j)
    CHECK(twice.at(0).faces[j].c == doctest::Approx(scaled.at(0).faces[j].c).epsilon(1e-12));

  HBody other = kbox;
  other.faces.pop_back();
  SymmetricBody mismatched(one, {other});
  CHECK_THROWS_AS(minkowski_combine(1.0, kb, 1.0, mismatched), Error);
}

TEST_CASE("body inclusion per atom") {
  Algebra a(1);
  SymmetricBody small = box_body(a, 2, 1.0);
  SymmetricBody big = box_body(a, 2, 2.0);
  CHECK(body_inclusion(small, big) == Cond::one(a));
  CHECK(body_inclusion(big, small) == Cond::zero(a));

  Algebra a2(2);
  Cond one2 = Cond::one(a2);
  HBody unit, dbl;
  for (int i = 0; i < 2; ++i) {
    std::vector<double> e(2, 0.0);
    e[static_cast<std::size_t>(i)] = 1.0;
    unit.faces.push_back(Halfspace{e, 1.0});
    dbl.faces.push_back(Halfspace{e, 2.0});
  }
  SymmetricBody mixed_a(one2, {unit, dbl});
  SymmetricBody mixed_b(one2, {dbl, unit});
  CHECK(body_inclusion(mixed_a, mixed_b) == Cond::from_atoms(a2, {0}));
}

TEST_CASE("operator norms: analytic formulas") {
  Algebra a(2);
  for (NormKind kind : {NormKind::L1, NormKind::L2, NormKind::Linf}) {
    CondLinearMap id = diag_map(a, {1.0, 1.0, 1.0}, kind);
    CondReal n = operator_norm(id);
    for (int t : Cond::one(a).atom_list()) CHECK(n.at(t) == doctest::Approx(1.0).epsilon(1e-9));
  }
  CondLinearMap d35 = diag_map(a, {3.0, 5.0}, NormKind::L2);
  CondReal n35 = operator_norm(d35);
  for (int t : Cond::one(a).atom_list()) CHECK(n35.at(t) == doctest::Approx(5.0).epsilon(1e-9));

  // concatenation invariance
  CondLinearMap d12 = diag_map(a, {1.0, 2.0}, NormKind::L2);
  std::vector<Mat> mixed = {d35.at(0), d12.at(1)};
  CondLinearMap mixed_map(Cond::one(a), mixed, CondNorm::lp(NormKind::L2),
                          CondNorm::lp(NormKind::L2));
  CondReal nm = operator_norm(mixed_map);
  CHECK(nm.at(0) == operator_norm(d35).at(0));
  CHECK(nm.at(1) == operator_norm(d12).at(1));

  CondLinearMap bad = diag_map(a, {1.0}, NormKind::L1);
  CondLinearMap bad2(bad.on(), bad.per_atom(), CondNorm::lp(NormKind::L1),
                     CondNorm::lp(NormKind::L2));
  CHECK_THROWS_AS(operator_norm(bad2), Error);
}

TEST_CASE("map application commutes with concatenation") {
  Algebra a(3);
  Cond one = Cond::one(a);
  Rng rng(14);
  std::vector<Mat> mats;
  for (int t = 0; t < 3; ++t) {
    (void)t;
    Mat m(2, 2);
    for (double& v : m.a) v = rng.uniform(-2.0, 2.0);
    mats.push_back(std::move(m));
  }
  CondLinearMap tmap(one, mats, CondNorm::lp(NormKind::L2), CondNorm::lp(NormKind::L2));
  for (int rep = 0; rep < 40; ++rep) {
    auto rand_vec = [&] {
      return CondVector::from_atom_fn(one, [&](int) {
        return std::vector<double>{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
      });
    };
    CondVector x = rand_vec(), y = rand_vec();
    Cond b(rng.next_u64() & Cond::full_mask(3), 3);
    CondVector glued = CondVector::from_atom_fn(one, [&](int t) {
      return b.contains_atom(t) ? x.at(t) : y.at(t);
    });
    CondVector lhs = apply(tmap, glued);
    CondVector tx = apply(tmap, x), ty = apply(tmap, y);
    for (int t : one.atom_list())
      CHECK(lhs.at(t) == (b.contains_atom(t) ? tx.at(t) : ty.at(t)));
  }
}

TEST_CASE("sampled operator norm is a lower bound") {
  Algebra a(1);
  CondLinearMap d35 = diag_map(a, {3.0, 5.0}, NormKind::L2);
  CondReal lower = sampled_operator_norm(d35, 200, 7);
  CHECK(lower.at(0) <= 5.0 + 1e-12);
  CHECK(lower.at(0) > 3.0);  // samples find directions beyond the smallest axis
}

TEST_CASE("norming functionals attain the norm with unit dual norm") {
  Algebra a(1);
  Cond one = Cond::one(a);
  CondVector x(one, {{3.0, 4.0}});
  CondLinearMap f2 = norming_functional(x, NormKind::L2);
  CHECK(f2.at(0).at(0, 0) == doctest::Approx(0.6));
  CHECK(f2.at(0).at(0, 1) == doctest::Approx(0.8));
  CHECK(apply_functional(f2, x).at(0) == doctest::Approx(5.0));

  CondVector zero = CondVector::zero(one, 2);
  CondLinearMap fz = norming_functional(zero, NormKind::L2);
  CHECK(apply_functional(fz, zero).at(0) == 0.0);
  CHECK(fz.at(0).at(0, 0) == 0.0);

  CondVector y(one, {{-2.0, 1.0}});
  CondLinearMap finf = norming_functional(y, NormKind::Linf);
  CHECK(finf.at(0).at(0, 0) == -1.0);  // smallest max-coordinate index, signed
  CHECK(finf.at(0).at(0, 1) == 0.0);
  CHECK(apply_functional(finf, y).at(0) == doctest::Approx(2.0));

  // ties break toward the smallest index
  CondVector tie(one, {{1.0, -1.0}});
  CondLinearMap ftie = norming_functional(tie, NormKind::Linf);
  CHECK(ftie.at(0).at(0, 0) == 1.0);
  CHECK(ftie.at(0).at(0, 1) == 0.0);
}

TEST_CASE("embedding check realizes the norm through the dual ball") {
  Algebra a(1);
  Cond one = Cond::one(a);
  CondVector x(one, {{3.0, 4.0}});
  EmbeddingCheck e2 = embedding_check(x, NormKind::L2, 64, 5);
  CHECK(e2.sup_over_dual_ball.at(0) == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(e2.isometry_gap.at(0) < 1e-9);

  EmbeddingCheck ez = embedding_check(CondVector::zero(one, 2), NormKind::L2, 16, 5);
  CHECK(ez.sup_over_dual_ball.at(0) == 0.0);
  CHECK(ez.isometry_gap.at(0) == 0.0);

  CondVector ones(one, {{1.0, 1.0}});
  EmbeddingCheck e1 = embedding_check(ones, NormKind::L1, 64, 5);
  CHECK(e1.sup_over_dual_ball.at(0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(e1.isometry_gap.at(0) < 1e-9);
}

TEST_CASE("half-norming functionals cover subspace directions") {
  Algebra a(1);
  Cond one = Cond::one(a);
  // span{e1} in R^2: the net is {+-e1}
  CondVector e1(one, {{1.0, 0.0}});
  auto funcs = half_norming_set({e1});
  CondVector y(one, {{2.0, 0.0}});
  double best = 0.0;
  for (const auto& f : funcs) best = std::max(best, std::fabs(apply_functional(f, y).at(0)));
  CHECK(best == doctest::Approx(2.0));
  CHECK(best >= 0.5 * 2.0 - 1e-9);

  // full plane, random survey
  CondVector e2v(one, {{0.0, 1.0}});
  auto funcs2 = half_norming_set({e1, e2v});
  Rng rng(3);
  for (int rep = 0; rep < 300; ++rep) {
    CondVector yr(one, {{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)}});
    double b2 = 0.0;
    for (const auto& f : funcs2) b2 = std::max(b2, std::fabs(apply_functional(f, yr).at(0)));
    double n = vec_norm2(yr.at(0));
    CHECK(b2 >= 0.5 * n - 1e-9);
  }

  // the zero vector satisfies the inequality trivially
  CondVector z = CondVector::zero(one, 2);
  for (const auto& f : funcs2) CHECK(std::fabs(apply_functional(f, z).at(0)) == 0.0);
}

TEST_CASE("equivalence constants of a basis on the l1 sphere") {
  Algebra a(1);
  Cond one = Cond::one(a);
  CondVector e1(one, {{1.0, 0.0}});
  CondVector e2(one, {{0.0, 1.0}});
  EquivalenceConstants eq = equivalence_constants({e1, e2}, CondNorm::lp(NormKind::L2), 1e-4);
  CHECK(std::fabs(eq.r_low.at(0) - std::sqrt(0.5)) < 1e-3);
  CHECK(std::fabs(eq.r_high.at(0) - 1.0) < 1e-6);
  // r_low is a certified lower bound: never above the true minimum
  CHECK(eq.r_low.at(0) <= std::sqrt(0.5) + 1e-12);

  EquivalenceConstants eq2 = equivalence_constants(
      {e1, CondVector(one, {{0.0, 2.0}})}, CondNorm::lp(NormKind::L2), 1e-4);
  CHECK(std::fabs(eq2.r_high.at(0) - 2.0) < 1e-6);

  CondVector dep(one, {{2.0, 0.0}});
  CHECK_THROWS_AS(equivalence_constants({e1, dep}, CondNorm::lp(NormKind::L2), 1e-4), Error);
}

TEST_CASE("square-summable direct sums and their duality") {
  Algebra a(1);
  Cond one = Cond::one(a);
  // two one-dimensional components
  std::vector<NormKind> comps = {NormKind::L2, NormKind::L2};
  CondVector c1(one, {{3.0}});
  CondVector c2(one, {{4.0}});
  CondVector f1(one, {{1.0}});
  CondVector f0(one, {{0.0}});
  DirectSumResult ds = direct_sum_l2(comps, {c1, c2}, {f1, f0});
  CHECK(ds.norm2.at(0) == doctest::Approx(5.0));
  CHECK(ds.pairing.at(0) == doctest::Approx(3.0));
  CHECK(ds.dual_norm2.at(0) == doctest::Approx(1.0));
  CHECK(ds.attained_op_norm.at(0) == doctest::Approx(1.0));
  CHECK(ds.pairing_norm_gap.at(0) < 1e-12);

  DirectSumResult dz = direct_sum_l2(comps, {c1, c2}, {f0, f0});
  CHECK(dz.pairing.at(0) == 0.0);
  CHECK(dz.pairing_norm_gap.at(0) == 0.0);

  CHECK_THROWS_AS(direct_sum_l2(comps, {c1, c2}, {f1, f0}, true, std::nullopt), Error);
}

TEST_CASE("renorming pipeline on the one-dimensional reference instance") {
  Algebra a(2);
  Cond one = Cond::one(a);
  HBody interval;
  interval.faces.push_back(Halfspace{{1.0}, 1.0});
  SymmetricBody k_body(one, {interval, interval});
  SymmetricBody unit(one, {interval, interval});
  CondVector x(one, {{1.0}, {1.0}});
  RenormResult rr = renorm_sequence(k_body, unit, x, 40, 1e-6);

  for (int t : one.atom_list()) {
    // gauge(B_n, 1) = 1 / (2^n + 2^-n)
    for (int n = 1; n <= 5; ++n) {
      double expect = 1.0 / (std::ldexp(1.0, n) + std::ldexp(1.0, -n));
      CHECK(rr.gauges[static_cast<std::size_t>(n - 1)].at(t) ==
            doctest::Approx(expect).epsilon(1e-12));
    }
    // frozen truncated-summation oracle values
    CHECK(rr.sum_of_squares.at(t) == doctest::Approx(0.235687212765).epsilon(1e-9));
    CHECK(rr.norm_c.at(t) == doctest::Approx(0.485476274153).epsilon(1e-9));
    CHECK(rr.tail_bound.at(t) < std::pow(4.0, -39));
    CHECK(rr.sum_bound_ok.contains_atom(t));  // 0.2357 <= 1/3
    CHECK(rr.lambda.at(t) == doctest::Approx(1.0));
  }

  CondVector zero = CondVector::zero(one, 1);
  RenormResult rz = renorm_sequence(k_body, unit, zero, 10, 1e-6);
  for (int t : one.atom_list()) CHECK(rz.norm_c.at(t) == 0.0);

  // unbounded generator rejected
  Algebra a1(1);
  HBody slab;
  slab.faces.push_back(Halfspace{{1.0, 0.0}, 1.0});
  SymmetricBody sl(Cond::one(a1), {slab});
  CHECK_THROWS_AS(renorm_sequence(sl, sl, CondVector::zero(Cond::one(a1), 2), 10, 1e-6), Error);
}
