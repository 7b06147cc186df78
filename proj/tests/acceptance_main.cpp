// Acceptance suite: one line per criterion, [PASS]/[FAIL], nonzero exit on
// any failure. Each criterion pins its tolerance and wall-clock budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "condan/harness.hpp"
#include "condan/json_io.hpp"

using namespace condan;
using harness::SuiteConfig;
using harness::SuiteReport;
using nlohmann::json;

namespace {

int g_failures = 0;
std::string g_cli_path;

using Clock = std::chrono::steady_clock;

void report(const std::string& name, bool ok, double seconds, double limit,
            const std::string& detail) {
  bool in_time = seconds < limit;
  if (!(ok && in_time)) ++g_failures;
  std::printf("[%s] %-34s %s(%.2fs < %.0fs)%s%s\n", ok && in_time ? "PASS" : "FAIL", name.c_str(),
              in_time ? "" : "OVERTIME ", seconds, limit, detail.empty() ? "" : " -- ",
              detail.c_str());
  std::fflush(stdout);
}

void criterion(const std::string& name, double time_limit,
               const std::function<bool(std::string&)>& body) {
  std::string detail;
  auto t0 = Clock::now();
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  report(name, ok, secs, time_limit, detail);
}

bool suite_passes(const SuiteConfig& cfg, std::string& detail) {
  SuiteReport rep = harness::run_suite(cfg);
  std::ostringstream os;
  os << rep.suite << ": " << rep.passed << "/" << rep.cases
     << " passed, max_violation=" << rep.max_violation;
  if (rep.failed > 0 && !rep.witnesses.empty())
    os << ", first witness: " << rep.witnesses.front().dump();
  detail = os.str();
  return rep.failed == 0;
}

SuiteConfig base_config(const std::string& suite, int atoms, int cases) {
  SuiteConfig cfg;
  cfg.suite_name = suite;
  cfg.atoms = atoms;
  cfg.seed = 42;
  cfg.case_count = cases;
  return cfg;
}

// ---- criterion 1: exhaustive stable-hull closure ---------------------------

template <typename X>
std::vector<CondValue<X>> definitional_closure(const std::vector<CondValue<X>>& gens) {
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

bool exhaustive_hull_equivalence(std::string& detail) {
  long long checked = 0;
  for (int m = 1; m <= 3; ++m) {
    Algebra alg(m);
    Cond one = Cond::one(alg);
    for (int u = 1; u <= 4; ++u) {
      // every conditional value over the payload universe {0..u-1}
      std::vector<CondValue<int>> values;
      int total = 1;
      for (int i = 0; i < m; ++i) total *= u;
      for (int code = 0; code < total; ++code) {
        int c = code;
        std::vector<int> vals;
        for (int i = 0; i < m; ++i) {
          vals.push_back(c % u);
          c /= u;
        }
        values.emplace_back(one, std::move(vals));
      }
      int n = static_cast<int>(values.size());
      std::string fail;
      auto test_set = [&](const std::vector<CondValue<int>>& gens) {
        StableSet<int> hull = stable_hull(gens);
        auto closure = definitional_closure(gens);
        auto members = hull.enumerate();
        std::sort(members.begin(), members.end(),
                  [](const CondValue<int>& a, const CondValue<int>& b) {
                    return a.values() < b.values();
                  });
        if (members != closure) {
          fail = "hull/closure mismatch at m=" + std::to_string(m) + " u=" + std::to_string(u);
          return false;
        }
        if (!(stable_hull(closure) == hull)) {
          fail = "closure not idempotent at m=" + std::to_string(m);
          return false;
        }
        ++checked;
        return true;
      };
      // every generator set of size 1..3
      for (int i = 0; i < n; ++i) {
        if (!test_set({values[static_cast<std::size_t>(i)]})) {
          detail = fail;
          return false;
        }
        for (int j = i + 1; j < n; ++j) {
          if (!test_set({values[static_cast<std::size_t>(i)], values[static_cast<std::size_t>(j)]})) {
            detail = fail;
            return false;
          }
          for (int k = j + 1; k < n; ++k) {
            if (!test_set({values[static_cast<std::size_t>(i)], values[static_cast<std::size_t>(j)],
                           values[static_cast<std::size_t>(k)]})) {
              detail = fail;
              return false;
            }
          }
        }
      }
    }
  }
  detail = std::to_string(checked) + " generator sets, zero mismatches";
  return true;
}

// ---- criterion 12 reference instance ---------------------------------------

bool equivalence_reference(std::string& detail) {
  Algebra a(1);
  Cond one = Cond::one(a);
  CondVector e1(one, {{1.0, 0.0}});
  CondVector e2(one, {{0.0, 1.0}});
  EquivalenceConstants eq = equivalence_constants({e1, e2}, CondNorm::lp(NormKind::L2), 1e-4);
  double rl = eq.r_low.at(0);
  double rh = eq.r_high.at(0);
  std::ostringstream os;
  os << "r_low=" << rl << " (ref 0.7071+-1e-3), r_high=" << rh << " (ref 1+-1e-6)";
  detail = os.str();
  return std::fabs(rl - 0.7071) <= 1e-3 && std::fabs(rh - 1.0) <= 1e-6;
}

// ---- criterion 13: end-to-end CLI ------------------------------------------

json strip_runtime_fields(json j) {
  if (j.is_object()) {
    j.erase("runtime_ms");
    for (auto& [key, value] : j.items()) value = strip_runtime_fields(value);
  } else if (j.is_array()) {
    for (auto& value : j) value = strip_runtime_fields(value);
  }
  return j;
}

bool end_to_end(std::string& detail) {
  if (g_cli_path.empty()) {
    detail = "no CLI path supplied";
    return false;
  }
  std::string r1 = "/tmp/condan_acceptance_1.json";
  std::string r2 = "/tmp/condan_acceptance_2.json";
  std::string cmd = g_cli_path + " run --suite all --atoms 3 --seed 42 --report ";
  int rc1 = std::system((cmd + r1 + " > /dev/null").c_str());
  if (rc1 != 0) {
    detail = "first run exited nonzero";
    return false;
  }
  int rc2 = std::system((cmd + r2 + " > /dev/null").c_str());
  if (rc2 != 0) {
    detail = "second run exited nonzero";
    return false;
  }
  std::ifstream f1(r1), f2(r2);
  json j1 = json::parse(f1), j2 = json::parse(f2);
  if (strip_runtime_fields(j1) != strip_runtime_fields(j2)) {
    detail = "reports differ beyond timing fields";
    return false;
  }

  // exit-code contract
  int rc_bad = std::system((g_cli_path + " run --suite nosuch >/dev/null 2>&1").c_str());
  if (WEXITSTATUS(rc_bad) != 2) {
    detail = "unknown suite should exit 2, got " + std::to_string(WEXITSTATUS(rc_bad));
    return false;
  }
  {
    std::ofstream bad("/tmp/condan_truncated.json");
    bad << "{\"type\": \"cond_real\", \"atoms\": 2, \"on\": [0, 1";
  }
  int rc_parse = std::system(
      (g_cli_path + " describe --input /tmp/condan_truncated.json >/dev/null 2>&1").c_str());
  if (WEXITSTATUS(rc_parse) != 2) {
    detail = "malformed input should exit 2, got " + std::to_string(WEXITSTATUS(rc_parse));
    return false;
  }
  {
    std::ofstream good("/tmp/condan_vec.json");
    good << R"({"type": "cond_vector", "atoms": 2, "on": [0, 1],)"
         << R"( "values": {"0": [3.0, 4.0], "1": [0.0, 0.0]}})";
  }
  int rc_desc = std::system(
      (g_cli_path + " describe --input /tmp/condan_vec.json --norm l2 >/dev/null").c_str());
  if (WEXITSTATUS(rc_desc) != 0) {
    detail = "describe of a valid document should exit 0";
    return false;
  }
  int rc_md = std::system((g_cli_path +
                           " run --suite cauchy_schwarz --cases 50 --seed 42"
                           " --report /tmp/condan_md.md --format markdown >/dev/null")
                              .c_str());
  std::ifstream md("/tmp/condan_md.md");
  std::string first_line;
  std::getline(md, first_line);
  if (WEXITSTATUS(rc_md) != 0 || first_line.find("| suite |") == std::string::npos) {
    detail = "markdown report missing or malformed";
    return false;
  }

  detail = "exit 0, rerun byte-identical modulo runtime_ms, exit-code contract holds";
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli_path = argv[1];

  criterion("stable-hull-oracle-equivalence", 5.0, exhaustive_hull_equivalence);

  criterion("power-set-boolean-laws", 2.0, [](std::string& d) {
    return suite_passes(base_config("core", 3, 1000), d);
  });

  criterion("gauge-functional-properties", 10.0, [](std::string& d) {
    SuiteConfig cfg = base_config("gauge", 3, 10000);
    cfg.max_dim = 3;  // bodies drawn with per-atom dimension up to 4
    return suite_passes(cfg, d);
  });

  criterion("cauchy-schwarz-inequality", 5.0, [](std::string& d) {
    return suite_passes(base_config("cauchy_schwarz", 2, 10000), d);
  });

  criterion("embedding-isometry-and-bidual", 5.0, [](std::string& d) {
    SuiteConfig cfg = base_config("embedding", 3, 1000);
    cfg.max_dim = 3;  // vectors up to dimension 5, bidual checks at <= 3
    return suite_passes(cfg, d);
  });

  criterion("baire-localization", 10.0, [](std::string& d) {
    SuiteConfig cfg = base_config("baire", 3, 100);
    cfg.max_dim = 2;
    return suite_passes(cfg, d);
  });

  criterion("uniform-boundedness", 5.0, [](std::string& d) {
    return suite_passes(base_config("ubp", 3, 100), d);
  });

  criterion("heine-borel-subcover-crosscheck", 5.0, [](std::string& d) {
    return suite_passes(base_config("heine_borel", 3, 100), d);
  });

  criterion("eberlein-smulian-equivalence", 15.0, [](std::string& d) {
    return suite_passes(base_config("eberlein_smulian", 3, 200), d);
  });

  criterion("l2-direct-sum-duality", 5.0, [](std::string& d) {
    return suite_passes(base_config("l2_duality", 3, 1000), d);
  });

  criterion("amir-lindenstrauss-pipeline", 10.0, [](std::string& d) {
    SuiteConfig cfg = base_config("amir_lindenstrauss", 3, 100);
    cfg.truncation = 20;
    return suite_passes(cfg, d);
  });

  criterion("equivalence-constants", 5.0, [](std::string& d) {
    std::string d1, d2;
    bool ref = equivalence_reference(d1);
    bool sweep = suite_passes(base_config("heine_borel", 3, 100), d2);
    d = d1 + "; " + d2;
    return ref && sweep;
  });

  criterion("end-to-end-cli", 60.0, end_to_end);

  if (g_failures == 0) {
    std::printf("all %d criteria passed\n", 13);
    return 0;
  }
  std::printf("%d criterion(s) failed\n", g_failures);
  return 1;
}
