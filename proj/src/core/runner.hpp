#ifndef CPVDW_RUNNER_HPP
#define CPVDW_RUNNER_HPP

#include <string>

#include "config.hpp"

namespace cpvdw {

inline constexpr const char *kToolName = "cpvdw";
inline constexpr const char *kToolVersion = "0.1.0";

// Result of executing a configured problem.  `csv` is the tabular output,
// `sidecar` a JSON provenance record (columns, units, tolerances, config
// echo).  Nothing is written to disk here; callers own file IO.  On
// failure csv/sidecar are empty and error_name/error_message identify the
// cause.  Exit codes: 0 success, 2 configuration or argument errors,
// 3 numerical/domain errors, 1 everything else.
struct RunOutput {
  std::string csv;
  std::string sidecar;
  bool ok = false;
  int exit_code = 1;
  std::string error_name;
  std::string error_message;
  std::string summary;
};

RunOutput run(const RunConfig &cfg);

// "<problem>.csv" unless the config named a path.
std::string default_output_path(const RunConfig &cfg);

int exit_code_for(const std::exception &e);

} // namespace cpvdw

#endif
