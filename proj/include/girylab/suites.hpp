#pragma once

#include <string>
#include <vector>

#include "girylab/json_io.hpp"

namespace girylab {

struct SuiteConfig {
  std::int64_t grid_den = 4;
  int random_cases = 1000;
  std::uint64_t seed = 0;
  std::uint64_t enumeration_cap = kDefaultEnumerationCap;
  std::uint64_t ns_bound = 5;

  void validate() const;  // raises BadConfig
};

struct LawReport {
  std::string suite;
  std::uint64_t cases = 0;
  std::vector<Json> failures;
  double wall_ms = 0.0;

  bool pass() const { return failures.empty(); }
};

Json report_to_json(const LawReport& r);

/// The suite names the command line accepts.
const std::vector<std::string>& suite_names();

/// Runs one named suite. Raises UnknownSuite.
LawReport run_suite(const std::string& name, const SuiteConfig& cfg);

/// Runs several suites and returns the reports sorted by suite name.
std::vector<LawReport> run_suites(const std::vector<std::string>& names, const SuiteConfig& cfg);

// Granular runners. The named suites above are assembled from these; the
// acceptance harness drives them one criterion at a time.

LawReport run_monad_laws(const SuiteConfig& cfg);
LawReport run_nat_min_algebra(const SuiteConfig& cfg);
LawReport run_ns_equivalence(const SuiteConfig& cfg);
LawReport run_factorization(const SuiteConfig& cfg);
LawReport run_permutation_min(const SuiteConfig& cfg);
LawReport run_builtin_algebras(const SuiteConfig& cfg);
LawReport run_scvx_core(const SuiteConfig& cfg);
LawReport run_divergence(const SuiteConfig& cfg);
LawReport run_refinement(const SuiteConfig& cfg);
LawReport run_amplitude(const SuiteConfig& cfg);
LawReport run_roundtrip(const SuiteConfig& cfg);

/// The deterministic seeded script set behind the refinement suite: trees of
/// every point-set size up to eight, refined to depth at most six.
std::vector<RefinementTree> scripted_trees(const SuiteConfig& cfg);

/// The amplitude families and unit phases the amplitude suite exercises.
std::vector<AmpDist> amplitude_grid();
std::vector<CRat> unit_phase_grid();

}  // namespace girylab
