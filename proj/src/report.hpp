#pragma once
// Machine-readable run reports: JSON serialization for verdicts and their
// embedded facts, a text rendering, and the exit-code policy.

#include "base_change.hpp"
#include "koszul.hpp"
#include "phantom.hpp"
#include "tight_closure.hpp"

#include "json.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace ptc {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "ptc";
inline constexpr const char* kToolVersion = "0.1.0";

ordered_json to_json(const Fact& f);
ordered_json to_json(const Assumption& a);
ordered_json to_json(const ClosureVerdict& v);
ordered_json to_json(const PhantomRegVerdict& v);
ordered_json to_json(const DepthReport& r);
ordered_json to_json(const HomologyVerdict& v);
ordered_json to_json(const KoszulCrosscheck& c);
ordered_json to_json(const FormulaReport& r);
ordered_json to_json(const ColonFlatnessReport& r);
ordered_json to_json(const AssChainReport& r);
ordered_json to_json(const CmfiReport& r);

// One executed task. `data` holds the full structured payload including
// every certificate fact; `verdict` is the one-word summary the text
// rendering and the exit-code policy read.
struct TaskResult {
  std::string name;
  std::string kind;
  std::string verdict;
  ordered_json data;
  std::vector<Assumption> assumptions;
  bool bounded = false;   // some bound was exhausted (inconclusive)
  bool mismatch = false;  // a claimed expectation was refuted
  std::int64_t wall_ms = 0;
};

struct RunReport {
  std::uint64_t seed = 0;
  ordered_json params;  // bounds and input parameters, for reproduction
  std::vector<TaskResult> tasks;
  std::string error;  // nonempty: input error, nothing was run
};

ordered_json report_to_json(const RunReport& rep);
std::string report_to_text(const RunReport& rep);

// 0 everything certified; 1 some expectation refuted; 2 some task
// inconclusive at its bounds; 3 input error.
int report_exit_code(const RunReport& rep);

// Runs fn, records wall time, converts a thrown Error into a mismatch-style
// failure entry so one bad task does not lose the rest of the report.
TaskResult run_task(const std::string& name, const std::string& kind,
                    const std::function<void(TaskResult&)>& fn);

}  // namespace ptc
