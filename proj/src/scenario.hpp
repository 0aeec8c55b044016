#pragma once
// Scenario files: a JSON description of one ring, named module
// presentations, and a task list. Validation errors carry JSON-pointer
// paths; execution produces a RunReport.

#include "report.hpp"

#include <cstdint>
#include <string>

namespace ptc {

// Driver-level defaults a scenario can override per task.
struct RunOptions {
  unsigned max_e = 3;
  std::uint64_t max_q = 0;  // 0: p^max_e
  unsigned pool_size = 16;
  std::uint64_t seed = 0;
};

// The largest Frobenius level any task may request.
inline constexpr unsigned kMaxLevelCap = 4;

// Largest usable level given a level bound E and a power bound Q (0 means
// Q = p^E). Throws InvalidArgument when E exceeds the cap or Q < p; `where`
// prefixes the message.
unsigned effective_level(std::uint32_t p, unsigned E, std::uint64_t Q,
                         const std::string& where);

RunReport run_scenario_text(const std::string& json_text,
                            const RunOptions& opt = {});
RunReport run_scenario_file(const std::string& path,
                            const RunOptions& opt = {});

}  // namespace ptc
