#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "condan/conditional.hpp"
#include "condan/rng.hpp"

using namespace condan;

namespace {

// Definitional oracle: one step of "all concatenations along all partitions",
// realized as every atom-to-generator assignment, then deduplicated.
template <typename X>
std::vector<CondValue<X>> closure_oracle(const std::vector<CondValue<X>>& gens) {
  const Cond on = gens.front().on();
  std::vector<int> atoms = on.atom_list();
  std::vector<CondValue<X>> out;
  std::vector<std::size_t> idx(atoms.size(), 0);
  while (true) {
    std::vector<X> vals;
    for (std::size_t i = 0; i < atoms.size(); ++i) vals.push_back(gens[idx[i]].at(atoms[i]));
    out.emplace_back(on, std::move(vals));
    std::size_t i = 0;
    for (; i < idx.size(); ++i) {
      if (++idx[i] < gens.size()) break;
      idx[i] = 0;
    }
    if (i == idx.size()) break;
  }
  std::sort(out.begin(), out.end(),
            [](const CondValue<X>& a, const CondValue<X>& b) { return a.values() < b.values(); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

TEST_CASE("concatenation agrees with its fragments and is unique") {
  Algebra a(2);
  Cond one = Cond::one(a);
  CondValue<int> x1 = CondValue<int>::constant(one, 5);
  CondValue<int> x2 = CondValue<int>::constant(one, 7);
  Partition p(one, {Cond::from_atoms(a, {0}), Cond::from_atoms(a, {1})});
  CondValue<int> w = concatenate<int>({x1, x2}, p);
  CHECK(w.at(0) == 5);
  CHECK(w.at(1) == 7);

  // the unique element agreeing on the blocks is the concatenation
  CondValue<int> direct(one, {5, 7});
  CHECK(w == direct);

  // second block empty: first value unchanged
  Partition p2(one, {one, Cond::zero(a)});
  CHECK(concatenate<int>({x1, x2}, p2) == x1);

  // equal inputs: any partition returns them
  CHECK(concatenate<int>({x1, x1}, p) == x1);

  CHECK_THROWS_AS(concatenate<int>({x1}, p), Error);  // length mismatch
}

TEST_CASE("restriction truncates and validates") {
  Algebra a(2);
  Cond one = Cond::one(a);
  CondValue<int> x(one, {5, 7});
  CondValue<int> r = restrict(x, Cond::from_atoms(a, {0}));
  CHECK(r.on() == Cond::from_atoms(a, {0}));
  CHECK(r.at(0) == 5);
  CHECK(restrict(x, one) == x);
  CHECK(restrict(x, Cond::zero(a)).is_null());

  CondValue<int> y(Cond::from_atoms(a, {0}), {1});
  CHECK_THROWS_AS(restrict(y, one), Error);  // not below
}

TEST_CASE("consistency: agreement on b restricts to agreement below b") {
  Algebra a(3);
  Rng rng(5);
  Cond one = Cond::one(a);
  for (int i = 0; i < 50; ++i) {
    CondValue<int> x = CondValue<int>::from_atom_fn(one, [&](int) { return (int)rng.below(4); });
    CondValue<int> z = CondValue<int>::from_atom_fn(one, [&](int) { return (int)rng.below(4); });
    Cond b(rng.next_u64() & Cond::full_mask(3), 3);
    if (b.is_zero()) continue;
    CondValue<int> y = patch<int>({x.restrict_to(b), z.restrict_to(b.complement())});
    Cond sub(b.bits() & rng.next_u64(), 3);
    CHECK(x.restrict_to(sub) == y.restrict_to(sub));
  }
}

TEST_CASE("stable hull on the worked instances") {
  Algebra a(2);
  Cond one = Cond::one(a);
  CondValue<int> g1(one, {1, 5});
  CondValue<int> g2(one, {3, 2});
  StableSet<int> hull = stable_hull<int>({g1, g2});
  CHECK(hull.at(0) == std::vector<int>{1, 3});
  CHECK(hull.at(1) == std::vector<int>{2, 5});
  CHECK(hull.element_count() == 4);
  // exactly the four concatenations
  auto closure = closure_oracle<int>({g1, g2});
  auto members = hull.enumerate();
  std::sort(members.begin(), members.end(),
            [](const CondValue<int>& x, const CondValue<int>& y) { return x.values() < y.values(); });
  CHECK(members == closure);

  // single generator: the hull is the singleton
  StableSet<int> single = stable_hull<int>({g1});
  CHECK(single.element_count() == 1);
  CHECK(single.contains(g1));

  // a stable (product) family is its own hull
  StableSet<int> again = stable_hull(members);
  CHECK(again == hull);

  CHECK_THROWS_AS(stable_hull(std::vector<CondValue<int>>{}), Error);
  CondValue<int> off(Cond::from_atoms(a, {0}), {1});
  CHECK_THROWS_AS(stable_hull<int>({g1, off}), Error);
}

TEST_CASE("stable hull equals the definitional closure exhaustively at small scale") {
  // all generator pairs over a universe of 3 payloads with 2 atoms
  Algebra a(2);
  Cond one = Cond::one(a);
  std::vector<CondValue<int>> values;
  for (int v0 = 0; v0 < 3; ++v0)
    for (int v1 = 0; v1 < 3; ++v1) values.push_back(CondValue<int>(one, {v0, v1}));
  for (const auto& g1 : values)
    for (const auto& g2 : values) {
      StableSet<int> hull = stable_hull<int>({g1, g2});
      auto closure = closure_oracle<int>({g1, g2});
      auto members = hull.enumerate();
      std::sort(members.begin(), members.end(), [](const CondValue<int>& x, const CondValue<int>& y) {
        return x.values() < y.values();
      });
      REQUIRE(members == closure);
      REQUIRE(stable_hull(closure) == hull);  // idempotence
    }
}

TEST_CASE("set operations on the worked instances") {
  Algebra a1(1);
  Cond one1 = Cond::one(a1);
  StableSet<int> u(one1, {{1, 2, 3}});
  StableSet<int> f(one1, {{1}});
  StableSet<int> g(one1, {{2}});
  CHECK(set_intersection(f, g).is_null());
  CHECK(set_union(f, g) == StableSet<int>(one1, {{1, 2}}));
  CHECK(set_complement(u, std::optional<StableSet<int>>(u)).is_null());

  Algebra a2(2);
  Cond one2 = Cond::one(a2);
  StableSet<int> f2(one2, {{1}, {1, 2}});
  StableSet<int> g2(one2, {{2}, {2}});
  StableSet<int> meet = set_intersection(f2, g2);
  CHECK(meet.on() == Cond::from_atoms(a2, {1}));
  CHECK(meet.at(1) == std::vector<int>{2});

  CHECK_THROWS_AS(set_complement(f, std::optional<StableSet<int>>{}), Error);
}

TEST_CASE("set operations satisfy the Boolean laws on random instances") {
  Algebra a(3);
  Rng rng(12);
  Cond one = Cond::one(a);
  for (int rep = 0; rep < 300; ++rep) {
    auto random_set = [&](const StableSet<int>& universe) {
      std::vector<std::vector<int>> per_atom;
      Cond on = universe.on();
      for (int t : on.atom_list()) {
        std::vector<int> s;
        for (int v : universe.at(t))
          if (rng.coin(0.6)) s.push_back(v);
        if (s.empty()) s.push_back(universe.at(t).front());
        per_atom.push_back(std::move(s));
      }
      return StableSet<int>(on, std::move(per_atom));
    };
    std::vector<std::vector<int>> ua;
    for (int t = 0; t < 3; ++t) {
      std::vector<int> s;
      for (int v = 0; v < 5; ++v)
        if (rng.coin(0.7)) s.push_back(v);
      if (s.empty()) s.push_back(0);
      ua.push_back(std::move(s));
    }
    StableSet<int> u(one, std::move(ua));
    std::optional<StableSet<int>> uni = u;
    StableSet<int> f = random_set(u);
    StableSet<int> g = random_set(u);
    StableSet<int> h = random_set(u);
    CHECK(set_complement(set_union(f, g), uni) ==
          set_intersection(set_complement(f, uni), set_complement(g, uni)));
    CHECK(set_complement(set_intersection(f, g), uni) ==
          set_union(set_complement(f, uni), set_complement(g, uni)));
    CHECK(set_intersection(f, set_union(g, h)) ==
          set_union(set_intersection(f, g), set_intersection(f, h)));
    CHECK(set_union(f, f) == f);
    CHECK(set_union(f, set_complement(f, uni)) == u);
    CHECK(set_intersection(f, set_complement(f, uni)).is_null());
    CHECK(set_complement(set_complement(f, uni), uni) == f);
    CHECK(f.included_in(u));
    CHECK(StableSet<int>::null_set(a).included_in(f));
  }
}

TEST_CASE("support is the largest condition where the value differs from zero") {
  Algebra a(2);
  Cond one = Cond::one(a);
  CHECK(support(CondValue<int>(one, {2, 0}), 0) == Cond::from_atoms(a, {0}));
  CHECK(support(CondValue<int>::constant(one, 0), 0) == Cond::zero(a));
  CHECK(support(CondValue<int>(one, {4, 9}), 0) == one);
}
