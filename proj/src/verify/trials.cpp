#include <chrono>
#include <exception>

#include "splice/errors.hpp"
#include "splice/verify.hpp"

namespace splice::verify {

std::uint64_t trial_seed(std::uint64_t root, std::uint64_t index) noexcept {
  std::uint64_t z = root + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

TrialOutcome guarded(const Trial& trial, std::size_t index, std::uint64_t seed) {
  try {
    return trial(index, seed);
  } catch (const Error& e) {
    return {0, std::string(e.name()) + ": " + e.what()};
  } catch (const std::exception& e) {
    return {0, std::string("unexpected exception: ") + e.what()};
  }
}

}  // namespace

SuiteResult run_trials(const std::string& name, std::size_t n, std::uint64_t root, const Trial& trial,
                       Execution execution) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<TrialOutcome> outcomes(n);
  if (execution == Execution::Parallel) {
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      const auto index = static_cast<std::size_t>(i);
      outcomes[index] = guarded(trial, index, trial_seed(root, index));
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) outcomes[i] = guarded(trial, i, trial_seed(root, i));
  }

  SuiteResult out;
  out.name = name;
  out.trials = n;
  for (std::size_t i = 0; i < n; ++i) {
    out.checks += outcomes[i].checks;
    if (outcomes[i].failure)
      out.failures.push_back({i, *outcomes[i].failure});
    else
      ++out.passed;
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace splice::verify
