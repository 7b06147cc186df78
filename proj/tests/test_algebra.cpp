#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "condan/algebra.hpp"
#include "condan/rng.hpp"

using namespace condan;

namespace {

std::vector<Cond> all_conditions(const Algebra& a) {
  std::vector<Cond> out;
  for (std::uint64_t bits = 0; bits <= Cond::full_mask(a.atoms()); ++bits)
    out.emplace_back(bits, a.atoms());
  return out;
}

}  // namespace

TEST_CASE("condition_ops on the worked instances") {
  Algebra a(3);
  Cond x = Cond::from_atoms(a, {0, 1});
  Cond y = Cond::from_atoms(a, {1, 2});
  ConditionOps ops = condition_ops(x, y);
  CHECK(ops.meet == Cond::from_atoms(a, {1}));
  CHECK(ops.join == Cond::one(a));
  CHECK(ops.complement_of_x == Cond::from_atoms(a, {2}));
  CHECK_FALSE(ops.leq);

  Cond zero = Cond::zero(a);
  CHECK(condition_ops(zero, y).meet == zero);
  CHECK(condition_ops(zero, y).leq);
  CHECK(Cond::one(a).complement() == zero);
}

TEST_CASE("lattice laws hold exhaustively for m <= 4") {
  for (int m = 1; m <= 4; ++m) {
    Algebra alg(m);
    auto conds = all_conditions(alg);
    for (const Cond& x : conds)
      for (const Cond& y : conds) {
        CHECK(x.meet(y) == y.meet(x));
        CHECK(x.join(y) == y.join(x));
        CHECK(x.meet(y).complement() == x.complement().join(y.complement()));
        CHECK(x.join(y).complement() == x.complement().meet(y.complement()));
        CHECK(x.complement().complement() == x);
        for (const Cond& z : conds) {
          CHECK(x.meet(y.join(z)) == x.meet(y).join(x.meet(z)));
          CHECK(x.join(y.meet(z)) == x.join(y).meet(x.join(z)));
          CHECK(x.meet(y).meet(z) == x.meet(y.meet(z)));
        }
      }
  }
}

TEST_CASE("lattice laws hold on random conditions for m = 16") {
  Algebra alg(16);
  Rng rng(3);
  for (int i = 0; i < 2000; ++i) {
    Cond x(rng.next_u64() & Cond::full_mask(16), 16);
    Cond y(rng.next_u64() & Cond::full_mask(16), 16);
    Cond z(rng.next_u64() & Cond::full_mask(16), 16);
    CHECK(x.meet(y.join(z)) == x.meet(y).join(x.meet(z)));
    CHECK(x.join(y).complement() == x.complement().meet(y.complement()));
    CHECK(x.complement().complement() == x);
  }
}

TEST_CASE("every condition is the join of its atoms") {
  Algebra alg(5);
  Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    Cond x(rng.next_u64() & Cond::full_mask(5), 5);
    Cond joined = Cond::zero(alg);
    for (int t : x.atom_list()) joined = joined.join(Cond::atom(alg, t));
    CHECK(joined == x);
  }
}

TEST_CASE("make_partition builds label preimages in canonical order") {
  Algebra a(3);
  Cond owner = Cond::one(a);
  Partition p = make_partition(owner, {{0, "A"}, {1, "A"}, {2, "B"}});
  REQUIRE(p.size() == 2);
  CHECK(p.blocks()[0] == Cond::from_atoms(a, {0, 1}));
  CHECK(p.blocks()[1] == Cond::from_atoms(a, {2}));

  Algebra a1(1);
  Partition single = make_partition(Cond::one(a1), {{0, "A"}});
  CHECK(single.size() == 1);

  Partition degenerate = make_partition(Cond::zero(a), {});
  CHECK(degenerate.size() == 0);
  CHECK(degenerate.owner() == Cond::zero(a));
}

TEST_CASE("make_partition rejects bad assignments") {
  Algebra a(3);
  Cond owner = Cond::from_atoms(a, {0, 1});
  CHECK_THROWS_AS(make_partition(owner, {{0, "A"}}), Error);                      // missing atom
  CHECK_THROWS_AS(make_partition(owner, {{0, "A"}, {1, "A"}, {2, "B"}}), Error);  // outside owner
  CHECK_THROWS_AS(make_partition(owner, {{0, "A"}, {0, "B"}, {1, "A"}}), Error);  // duplicate
}

TEST_CASE("refine_partitions is the common refinement") {
  Algebra a(3);
  Cond one = Cond::one(a);
  Partition p(one, {Cond::from_atoms(a, {0, 1}), Cond::from_atoms(a, {2})});
  Partition q(one, {Cond::from_atoms(a, {0}), Cond::from_atoms(a, {1, 2})});
  Partition r = refine_partitions(p, q);
  REQUIRE(r.size() == 3);
  CHECK(r.blocks()[0] == Cond::from_atoms(a, {0}));
  CHECK(r.blocks()[1] == Cond::from_atoms(a, {1}));
  CHECK(r.blocks()[2] == Cond::from_atoms(a, {2}));

  CHECK(refine_partitions(p, p) == p);

  Partition atoms(one, {Cond::from_atoms(a, {0}), Cond::from_atoms(a, {1}), Cond::from_atoms(a, {2})});
  Partition whole(one, {one});
  CHECK(refine_partitions(whole, atoms) == atoms);
}

TEST_CASE("refinement output blocks sit below blocks of both inputs") {
  Algebra a(6);
  Rng rng(9);
  for (int i = 0; i < 50; ++i) {
    auto random_partition = [&] {
      std::vector<std::pair<int, std::string>> assign;
      for (int t = 0; t < 6; ++t)
        assign.emplace_back(t, std::string(1, static_cast<char>('a' + rng.below(3))));
      return make_partition(Cond::one(a), assign);
    };
    Partition p = random_partition();
    Partition q = random_partition();
    Partition r = refine_partitions(p, q);
    for (const Cond& blk : r.blocks()) {
      bool below_p = false, below_q = false;
      for (const Cond& pb : p.blocks()) below_p |= blk.leq(pb);
      for (const Cond& qb : q.blocks()) below_q |= blk.leq(qb);
      CHECK(below_p);
      CHECK(below_q);
    }
  }
}

TEST_CASE("cross-algebra operations are rejected") {
  Algebra a2(2), a3(3);
  CHECK_THROWS_AS(Cond::one(a2).meet(Cond::one(a3)), Error);
  CHECK_THROWS_AS(Algebra(0), Error);
  CHECK_THROWS_AS(Algebra(65), Error);
}
