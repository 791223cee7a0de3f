#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "core/dataset.hpp"

namespace gerbecalc {

inline constexpr const char* kEngineVersion = "gerbecalc 1.0.0";

struct ReportRecord {
  std::string suite;
  std::string tag;
  std::string site;      // first violating instance, empty when none
  std::string verdict;   // pass | fail | vacuous
  std::string residual;  // serialized residual, empty when none
};

struct Report {
  std::string suite_sel;
  EngineContext ec;
  std::uint64_t seed = 0;
  int nsets = 0;
  std::vector<ReportRecord> records;
  int pass = 0, fail = 0, vacuous = 0;

  bool ok() const { return fail == 0; }
  std::string text() const;
  std::string json_text() const;
};

// suite: group | torsor | gerbe | triple | rho | equivalence | cm | all.
// jobs <= 0 picks the hardware concurrency; results are jobs-independent.
// throws std::invalid_argument for unknown suites or when an explicitly
// selected suite lacks its dataset sections ("all" skips absent sections)
Report run_check(const Dataset& ds, const std::string& suite, int jobs);

// mode: trivial | coboundary | abelian | torsor; deterministic in (mode, seed,
// context); derived fields are left out (cmd_derive fills them)
Dataset run_generate(const std::string& mode, const EngineContext& ec, std::uint64_t seed);

Dataset run_derive(Dataset ds);     // fills the gerbe section's nu/delta/omega
Dataset run_normalize(Dataset ds);  // rewrites the crossed_module section in normal form

}  // namespace gerbecalc
