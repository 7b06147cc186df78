#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "condan/harness.hpp"
#include "condan/json_io.hpp"

namespace {

using condan::harness::SuiteConfig;
using condan::harness::SuiteReport;
using nlohmann::json;

std::vector<std::string> split_suites(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& item : raw) {
    std::stringstream ss(item);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (!tok.empty()) out.push_back(tok);
    }
  }
  return out;
}

int cmd_run(const std::vector<std::string>& suites_raw, int atoms, std::uint64_t seed, double tol,
            int trunc, int cases, const std::string& report_path, const std::string& format) {
  std::vector<std::string> suites = split_suites(suites_raw);
  if (suites.empty()) suites.push_back("all");
  if (suites.size() == 1 && suites[0] == "all") suites = condan::harness::suite_names();
  for (const auto& s : suites) {
    if (!condan::harness::is_suite_name(s)) {
      std::cerr << "error: unknown suite '" << s << "'\nknown suites:";
      for (const auto& name : condan::harness::suite_names()) std::cerr << " " << name;
      std::cerr << "\n";
      return 2;
    }
  }
  if (atoms < 1 || tol <= 0.0 || trunc < 1 || cases < 0) {
    std::cerr << "error: need atoms >= 1, tol > 0, trunc >= 1, cases >= 0\n";
    return 2;
  }

  std::vector<SuiteReport> reports;
  bool all_passed = true;
  for (const auto& name : suites) {
    SuiteConfig cfg;
    cfg.suite_name = name;
    cfg.atoms = atoms;
    cfg.seed = seed;
    cfg.tolerance = tol;
    cfg.truncation = trunc;
    cfg.case_count = cases;
    SuiteReport rep = condan::harness::run_suite(cfg);
    all_passed &= rep.failed == 0;
    std::printf("%-20s cases %6d  passed %6d  failed %4d  max_violation %.3g  (%lld ms)\n",
                rep.suite.c_str(), rep.cases, rep.passed, rep.failed, rep.max_violation,
                static_cast<long long>(rep.runtime_ms));
    reports.push_back(std::move(rep));
  }

  if (!report_path.empty()) {
    std::ofstream out(report_path);
    if (!out) {
      std::cerr << "error: cannot write report to '" << report_path << "'\n";
      return 2;
    }
    if (format == "markdown") {
      out << condan::harness::report_to_markdown(reports);
    } else {
      json doc;
      doc["version"] = 1;
      doc["command"] = "run";
      doc["atoms"] = atoms;
      doc["seed"] = seed;
      doc["tol"] = tol;
      doc["trunc"] = trunc;
      doc["cases"] = cases;
      json arr = json::array();
      for (const auto& r : reports) arr.push_back(condan::harness::report_to_json(r));
      doc["reports"] = arr;
      out << doc.dump(2) << "\n";
    }
  }
  return all_passed ? 0 : 1;
}

int cmd_describe(const std::string& input, const std::vector<std::string>& norms) {
  std::ifstream in(input);
  if (!in) {
    std::cerr << "error: cannot open '" << input << "'\n";
    return 2;
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    std::cerr << "error: malformed input at byte " << e.byte << ": " << e.what() << "\n";
    return 2;
  }
  try {
    std::cout << condan::io::describe_document(doc);
    if (!norms.empty() && doc.value("type", "") == "cond_vector") {
      int atoms = doc.at("atoms").get<int>();
      condan::CondVector v = condan::io::cond_vector_from_json(doc, atoms);
      for (const auto& nk : norms) {
        condan::CondReal n =
            condan::norm_value(v, condan::CondNorm::lp(condan::io::norm_kind_from_name(nk)));
        std::cout << "requested norm " << nk << ":";
        for (int t : v.on().atom_list()) std::cout << " " << n.at(t);
        std::cout << "\n";
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conditional-analysis engine over finite Boolean algebras"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run verification suites and emit a report");
  std::vector<std::string> suites;
  int atoms = 2;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  int trunc = 40;
  int cases = 1000;
  std::string report_path;
  std::string format = "json";
  run->add_option("--suite", suites, "suite names (comma separated) or 'all'");
  run->add_option("--atoms", atoms, "number of atoms of the Boolean algebra");
  run->add_option("--seed", seed, "random seed");
  run->add_option("--tol", tol, "base tolerance");
  run->add_option("--trunc", trunc, "series truncation length");
  run->add_option("--cases", cases, "cases per suite");
  run->add_option("--report", report_path, "write the report to this path");
  run->add_option("--format", format, "report format: json or markdown")
      ->check(CLI::IsMember({"json", "markdown"}));

  auto* describe = app.add_subcommand("describe", "pretty-print a serialized conditional object");
  std::string input;
  std::vector<std::string> norms;
  describe->add_option("--input", input, "path to the JSON document")->required();
  describe->add_option("--norm", norms, "also evaluate these norms on vectors (l1,l2,linf)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run->parsed())
      return cmd_run(suites, atoms, seed, tol, trunc, cases, report_path, format);
    if (describe->parsed()) return cmd_describe(input, norms);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
