#pragma once

// Randomized and fixture-based verification suites shared by the CLI
// `selftest` command and the acceptance binary.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "splice/linkcore.hpp"
#include "splice/spliceengine.hpp"

namespace splice::verify {

/// Seed of trial `index` under `root` (splitmix64 of root + index).
std::uint64_t trial_seed(std::uint64_t root, std::uint64_t index) noexcept;

enum class Execution { Serial, Parallel };

struct TrialFailure {
  std::size_t index = 0;
  std::string message;
};

struct SuiteResult {
  std::string name;
  std::size_t trials = 0;
  std::size_t passed = 0;
  std::size_t checks = 0;  // individual identities checked across all trials
  std::vector<TrialFailure> failures;
  double seconds = 0;
  std::string reproduce;  // command line that replays the suite

  bool ok() const noexcept { return trials > 0 && passed == trials; }
};

/// A trial returns the number of identities it checked, or throws / returns
/// a failure message.
struct TrialOutcome {
  std::size_t checks = 0;
  std::optional<std::string> failure;
};
using Trial = std::function<TrialOutcome(std::size_t index, std::uint64_t seed)>;

/// Runs trials 0..n-1 with per-trial seeds derived from `root`. Results do
/// not depend on the execution mode. Library errors raised by a trial count
/// as failures.
SuiteResult run_trials(const std::string& name, std::size_t n, std::uint64_t root, const Trial& trial,
                       Execution execution);

/// Random splice expression over catalog leaves with depth at most
/// `max_depth`. Evaluating it never raises a domain error.
engine::ExprPtr random_expression(std::mt19937_64& rng, const link::Catalog& catalog, std::size_t max_depth);

/// The catalog entries the suites quantify over: every named builtin plus a
/// fixed grid of the parametric torus family.
std::vector<link::LinkSpec> catalog_sample(const link::Catalog& catalog);

struct SuiteOptions {
  std::uint64_t seed = 0;
  std::size_t expressions = 120;
  std::size_t witnesses = 500;
  std::size_t complexes = 200;
  Execution execution = Execution::Parallel;
};

SuiteResult hopf_neutrality(const link::Catalog& catalog);
SuiteResult symmetry_suite(const link::Catalog& catalog, const SuiteOptions& opts);
SuiteResult torres_suite(const link::Catalog& catalog, const SuiteOptions& opts);
SuiteResult cable_oracle();
SuiteResult connected_sum_oracle(const link::Catalog& catalog);
SuiteResult exceptional_branch();
SuiteResult linking_suite(const link::Catalog& catalog, const SuiteOptions& opts);
SuiteResult torsion_multiplicativity(const SuiteOptions& opts);
SuiteResult torsion_choice_independence(const SuiteOptions& opts);
SuiteResult omega_sanity();

/// Every suite above in a fixed order.
std::vector<SuiteResult> run_all(const link::Catalog& catalog, const SuiteOptions& opts);
std::vector<std::string> suite_names();
/// Runs the suite with the given name; nullopt for an unknown name.
std::optional<SuiteResult> run_suite(const std::string& name, const link::Catalog& catalog,
                                     const SuiteOptions& opts);

}  // namespace splice::verify
