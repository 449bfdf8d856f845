#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dilato/pairs.hpp"
#include "dilato/types.hpp"

namespace dilato {

/// One named assertion: value compared against a pinned bound. Most checks
/// require value <= bound; threshold checks (e.g. innerness, deliberate
/// failure margins) set require_at_most = false and demand value >= bound.
struct CheckLine {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool require_at_most = true;
  bool pass = false;
  std::string note;
};

struct SuiteReport {
  std::string suite;
  int instances = 0;
  int skipped = 0;
  std::vector<CheckLine> checks;
  std::vector<std::string> skip_reasons;

  bool passed() const {
    for (const CheckLine& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

struct VerifyOptions {
  int count = 200;         // sweep size; theorem-specific suites use count/2
  Index dim_max = 6;
  std::uint64_t seed = 1;
  Index degree = 16;       // default Hardy degree bound
  int threads = 0;         // 0 = hardware concurrency (capped)
  const CommutingPair* fixed_pair = nullptr;  // verify one given instance
};

/// The i-th instance of the default sweep: dims cycle 1..dim_max and the two
/// generation schemes alternate.
CommutingPair sweep_instance(const VerifyOptions& opt, int i);

SuiteReport run_schaffer_suite(const VerifyOptions& opt);
SuiteReport run_douglas_suite(const VerifyOptions& opt);
SuiteReport run_bcl_suite(const VerifyOptions& opt);
SuiteReport run_uniqueness_suite(const VerifyOptions& opt);
SuiteReport run_model_suite(const VerifyOptions& opt);
SuiteReport run_scalar_regression(const VerifyOptions& opt);

/// suite in {schaffer, douglas, bcl, uniqueness, model, all}.
std::vector<SuiteReport> run_suites(const std::string& suite, const VerifyOptions& opt);

}  // namespace dilato
