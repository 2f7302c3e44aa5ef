#pragma once
//
// Reproduction harness: builds built-in configs and sweeps, compares them
// with the expected parameters and reports one row per check.
//

#include <string>
#include <vector>

#include "geolrc/config.hpp"

namespace geolrc {

inline constexpr const char* kPass = "PASS";
inline constexpr const char* kFail = "FAIL";
inline constexpr const char* kDocumented = "DISCREPANCY-DOCUMENTED";

struct ReproRow {
  std::string id;
  std::string status;
  std::string expected;
  std::string computed;
  std::string detail;
};

/// Ids accepted by reproduce(): every ex* config plus the sweeps table1,
/// table2, ex5.1-table2, ex5.3-table2, ex3.3-curve and comparison.
std::vector<std::string> reproduce_ids();

/// Runs one id or "all".  Throws ConfigError for unknown ids.
std::vector<ReproRow> reproduce(const std::string& id);

/// Checks one parsed config against its [expect] block.
ReproRow check_config(const Config& cfg, const std::string& id);

std::string format_rows(const std::vector<ReproRow>& rows);

/// 0 when no row failed, 3 otherwise.
int reproduce_exit_code(const std::vector<ReproRow>& rows);

}  // namespace geolrc
