#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "splice/verify.hpp"

namespace {

using splice::verify::SuiteResult;

constexpr std::uint64_t kSeed = 0;
constexpr std::size_t kExpressions = 120;  // at least 100 required
constexpr std::size_t kMinExpressions = 100;
constexpr std::size_t kWitnesses = 500;
constexpr std::size_t kComplexes = 200;

struct Criterion {
  int number;
  std::string title;
  std::function<std::vector<SuiteResult>()> run;
  double limit_seconds;  // 0 for no time limit
  std::size_t min_trials = 0;
};

bool report(const Criterion& c) {
  const std::vector<SuiteResult> suites = c.run();
  bool ok = true;
  double seconds = 0;
  std::string detail;
  for (const auto& s : suites) {
    ok = ok && s.ok();
    seconds += s.seconds;
    if (!detail.empty()) detail += "; ";
    detail += s.name + " " + std::to_string(s.passed) + "/" + std::to_string(s.trials) + " trials, " +
              std::to_string(s.checks) + " checks";
    if (c.min_trials > 0 && s.trials < c.min_trials) ok = false;
  }
  const bool in_time = c.limit_seconds <= 0 || seconds < c.limit_seconds;
  ok = ok && in_time;
  std::string limit = c.limit_seconds > 0 ? " < " + std::to_string(static_cast<int>(c.limit_seconds)) + " s" : "";
  std::printf("[%s] criterion %d %s: %s; %.3f s%s\n", ok ? "PASS" : "FAIL", c.number, c.title.c_str(),
              detail.c_str(), seconds, limit.c_str());
  for (const auto& s : suites) {
    for (std::size_t i = 0; i < s.failures.size() && i < 5; ++i)
      std::printf("    trial %zu: %s\n", s.failures[i].index, s.failures[i].message.c_str());
    if (!s.ok()) std::printf("    reproduce: %s\n", s.reproduce.c_str());
  }
  std::fflush(stdout);
  return ok;
}

}  // namespace

int main() {
  namespace v = splice::verify;
  const auto catalog = splice::link::builtin_catalog();
  v::SuiteOptions opts;
  opts.seed = kSeed;
  opts.expressions = kExpressions;
  opts.witnesses = kWitnesses;
  opts.complexes = kComplexes;

  std::printf("acceptance suite, seed %llu\n", static_cast<unsigned long long>(kSeed));
  const std::vector<Criterion> criteria = {
      {1, "Hopf neutrality", [&] { return std::vector{v::hopf_neutrality(catalog)}; }, 1},
      {2, "symmetry of random splice expressions", [&] { return std::vector{v::symmetry_suite(catalog, opts)}; }, 10,
       kMinExpressions},
      {3, "Torres cross-check", [&] { return std::vector{v::torres_suite(catalog, opts)}; }, 10, kMinExpressions},
      {4, "cabling closed forms", [] { return std::vector{v::cable_oracle()}; }, 30},
      {5, "connected-sum closed form", [&] { return std::vector{v::connected_sum_oracle(catalog)}; }, 10},
      {6, "exceptional splice branch", [] { return std::vector{v::exceptional_branch()}; }, 0},
      {7, "linking numbers of splices", [&] { return std::vector{v::linking_suite(catalog, opts)}; }, 0,
       kMinExpressions},
      {8, "torsion multiplicativity and choice independence",
       [&] { return std::vector{v::torsion_multiplicativity(opts), v::torsion_choice_independence(opts)}; }, 60},
      {9, "reduced Conway function values", [] { return std::vector{v::omega_sanity()}; }, 1},
  };
  int failed = 0;
  for (const auto& c : criteria) failed += report(c) ? 0 : 1;
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
