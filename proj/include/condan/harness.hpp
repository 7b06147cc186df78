#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "condan/analysis.hpp"
#include "condan/rng.hpp"

namespace condan::harness {

struct SuiteConfig {
  std::string suite_name;
  int atoms = 2;
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
  int truncation = 40;
  int case_count = 1000;
  int max_dim = 3;
  int threads = 0;  // 0 = auto (capped by CONDAN_THREADS)
};

struct SuiteReport {
  std::string suite;
  SuiteConfig config;
  int cases = 0;
  int passed = 0;
  int failed = 0;
  double max_violation = 0.0;
  std::vector<nlohmann::json> witnesses;  // one per failing case, case order
  std::int64_t runtime_ms = 0;
};

const std::vector<std::string>& suite_names();
bool is_suite_name(const std::string& name);

// Deterministic: identical configs produce identical reports apart from
// runtime_ms, regardless of thread count.
SuiteReport run_suite(const SuiteConfig& config);

nlohmann::json config_to_json(const SuiteConfig& c);
nlohmann::json report_to_json(const SuiteReport& r);
std::string report_to_markdown(const std::vector<SuiteReport>& reports);

// --- instance generators ----------------------------------------------------
// Fixed distributions; suites re-verify hypotheses before testing conclusions.

// Random symmetric H-body: per-atom dimension in [min_dim, max_dim], basis
// directions plus `extra_dirs` random ones, offsets in [0.4, 2.5].
SymmetricBody gen_body(const Algebra& alg, Rng& rng, int min_dim, int max_dim, int extra_dirs);

// Same but with non-spanning (slab) bodies on the given atoms.
SymmetricBody gen_body_with_slabs(const Algebra& alg, Rng& rng, int min_dim, int max_dim,
                                  int extra_dirs, const Cond& slab_atoms);

// Random point of the body: a convex combination of its vertices.
CondVector gen_point_in_body(const SymmetricBody& body, Rng& rng);

// A sequence conditionally convergent by construction inside the body.
CondSequence gen_convergent_sequence(const SymmetricBody& body, Rng& rng);

// Closed interval-product cover of the box [-1,1]^dim (per-atom cuts).
std::vector<ClosedSet> gen_closed_cover(const Algebra& alg, int dim, Rng& rng);

// Family of random maps with matching analytic norms.
std::vector<CondLinearMap> gen_operator_family(const Algebra& alg, Rng& rng, int count,
                                               int max_dim, NormKind kind);

// Points spanning the per-atom space (for totality checks).
std::vector<CondVector> gen_dense_points(const Algebra& alg, Rng& rng, int dim, int count);

// Serialized instance for external re-runs; kinds: body, sequence,
// operator_family, closed_cover, dense_points, l2_element, renorm_pair.
nlohmann::json generate_instance(const std::string& kind, const SuiteConfig& config, int case_idx);

}  // namespace condan::harness
