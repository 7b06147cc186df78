#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "condan/harness.hpp"
#include "condan/json_io.hpp"

using namespace condan;
using nlohmann::json;

TEST_CASE("conditions and partitions round-trip") {
  Algebra a(4);
  Cond c = Cond::from_atoms(a, {0, 2, 3});
  json j = io::to_json(c);
  CHECK(j == json::array({0, 2, 3}));
  CHECK(io::cond_from_json(j, 4) == c);

  Partition p(Cond::one(a), {Cond::from_atoms(a, {0, 1}), Cond::from_atoms(a, {2, 3})});
  Partition p2 = io::partition_from_json(io::to_json(p), 4);
  CHECK(p2 == p);
}

TEST_CASE("conditional values round-trip with string atom keys") {
  Algebra a(3);
  Cond on = Cond::from_atoms(a, {0, 2});
  CondReal v(on, {1.5, -2.25});
  json j = io::to_json(v);
  CHECK(j["on"] == json::array({0, 2}));
  CHECK(j["values"]["0"] == 1.5);
  CHECK(j["values"]["2"] == -2.25);
  CHECK(io::cond_real_from_json(j, 3) == v);

  CondNat n(CondValue<std::int64_t>(on, {4, 9}));
  CHECK(io::cond_nat_from_json(io::to_json(n), 3) == n);

  CondVector x(on, {{1.0, 2.0}, {3.0}});
  CHECK(io::cond_vector_from_json(io::to_json(x), 3) == x);

  StableSet<double> s(on, {{1.0, 2.0}, {0.5}});
  CHECK(io::stable_set_from_json(io::to_json(s), 3) == s);
}

TEST_CASE("randomized round-trip property across all serialized types") {
  Rng rng(6);
  for (int rep = 0; rep < 100; ++rep) {
    Algebra a(rng.uniform_int(1, 5));
    harness::SuiteConfig cfg;
    cfg.atoms = a.atoms();
    cfg.seed = rep;
    SymmetricBody body = harness::gen_body(a, rng, 1, 3, 2);
    CHECK(io::body_from_json(io::body_to_json(body), a.atoms()) == body);

    auto fam = harness::gen_operator_family(a, rng, 1, 3, NormKind::Linf);
    json mj = io::map_to_json(fam[0]);
    CondLinearMap back = io::map_from_json(mj, a.atoms());
    CHECK(back.on() == fam[0].on());
    CHECK(back.per_atom() == fam[0].per_atom());
    CHECK(back.domain().kind == NormKind::Linf);

    auto cover = harness::gen_closed_cover(a, 2, rng);
    for (const auto& cs : cover) {
      ClosedSet rt = io::closed_set_from_json(io::closed_set_to_json(cs), a.atoms());
      for (int t : cs.on().atom_list()) {
        for (int probe = 0; probe < 10; ++probe) {
          std::vector<double> p = {rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2)};
          CHECK(rt.contains(t, p) == cs.contains(t, p));
        }
      }
    }
  }
}

TEST_CASE("closed-set pieces carry their kind tags") {
  Algebra a(1);
  IntervalProductAtom ip;
  ip.bounds = {{-1.0, 0.5}};
  PolytopeAtom poly;
  poly.rows = {{{1.0}, 0.5}, {{-1.0}, 1.0}};
  ClosedSet s(Cond::one(a), {ClosedSetAtom{{ip, poly}}});
  json j = io::closed_set_to_json(s);
  CHECK(j["per_atom"]["0"]["kind"] == "finite_union");
  CHECK(j["per_atom"]["0"]["parts"][0]["kind"] == "interval_product");
  CHECK(j["per_atom"]["0"]["parts"][1]["kind"] == "hbody");
  ClosedSet rt = io::closed_set_from_json(j, 1);
  CHECK(rt.contains(0, {0.4}));
  CHECK(rt.contains(0, {-0.9}));   // in the polytope piece
  CHECK_FALSE(rt.contains(0, {0.9}));
}

TEST_CASE("describe renders the object per atom") {
  json doc = {{"type", "cond_real"},
              {"atoms", 2},
              {"on", json::array({0, 1})},
              {"values", {{"0", 2.0}, {"1", 0.0}}}};
  std::string out = io::describe_document(doc);
  CHECK(out.find("support: {0}") != std::string::npos);
  CHECK(out.find("atom 0: 2") != std::string::npos);

  json vec = {{"type", "cond_vector"},
              {"atoms", 1},
              {"on", json::array({0})},
              {"values", {{"0", json::array({3.0, 4.0})}}}};
  std::string vout = io::describe_document(vec);
  CHECK(vout.find("norm l2: 5") != std::string::npos);
  CHECK(vout.find("norm l1: 7") != std::string::npos);

  json body = {{"type", "body"},
               {"atoms", 1},
               {"on", json::array({0})},
               {"per_atom", {{"0", json::array({{{"u", json::array({1.0})}, {"c", 1.0}}})}}}};
  std::string bout = io::describe_document(body);
  CHECK(bout.find("bounded on: {0}") != std::string::npos);

  json unknown = {{"type", "nonsense"}, {"atoms", 1}};
  CHECK_THROWS_AS(io::describe_document(unknown), Error);
}

TEST_CASE("sequence descriptors: table and formula kinds") {
  json table = {{"kind", "table"},
                {"terms", json::array({{{"on", json::array({0})}, {"values", {{"0", json::array({1.0})}}}},
                                       {{"on", json::array({0})}, {"values", {{"0", json::array({2.0})}}}}})}};
  CondSequence ts = io::sequence_from_json(table, 1);
  CHECK(ts.term(1).at(0)[0] == 1.0);
  CHECK(ts.term(2).at(0)[0] == 2.0);
  CHECK(ts.term(5).at(0)[0] == 2.0);  // table repeats its last entry

  json formula = {{"kind", "formula"},
                  {"name", "geometric"},
                  {"ratio", 0.5},
                  {"base", {{"on", json::array({0})}, {"values", {{"0", json::array({8.0})}}}}}};
  CondSequence fs = io::sequence_from_json(formula, 1);
  CHECK(fs.term(1).at(0)[0] == doctest::Approx(4.0));
  CHECK(fs.term(3).at(0)[0] == doctest::Approx(1.0));

  json bad = {{"kind", "nosuch"}};
  CHECK_THROWS_AS(io::sequence_from_json(bad, 1), Error);

  json doc = table;
  doc["type"] = "sequence";
  doc["atoms"] = 1;
  std::string out = io::describe_document(doc);
  CHECK(out.find("term 1") != std::string::npos);
}

TEST_CASE("report json carries the published fields") {
  harness::SuiteConfig cfg;
  cfg.suite_name = "cauchy_schwarz";
  cfg.case_count = 3;
  harness::SuiteReport rep = harness::run_suite(cfg);
  json j = harness::report_to_json(rep);
  for (const char* key :
       {"suite", "config", "cases", "passed", "failed", "max_violation", "witnesses", "runtime_ms"})
    CHECK(j.contains(key));
  CHECK(j["cases"] == 3);
  CHECK(j["config"]["atoms"] == 2);
}
