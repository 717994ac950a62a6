#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lagcfg::acceptance {

struct Options {
  int n_max = 6;           // caps the range of n used by every criterion
  int trials = 0;          // samples per (criterion, n); 0 keeps each criterion's full count
  std::uint64_t seed = 1;  // every criterion draws from its own split of this seed
  int jobs = 1;            // criteria evaluated concurrently
};

struct Result {
  int id = 0;
  std::string title;
  bool pass = false;
  long checks = 0;
  long failures = 0;
  std::string detail;  // first failure, or a short summary
  double seconds = 0.0;
};

constexpr int kCriteria = 11;

Result run_criterion(int id, const Options& opts);
// Results ordered by id regardless of jobs.
std::vector<Result> run_all(const Options& opts, const std::vector<int>& ids = {});

}  // namespace lagcfg::acceptance
