#pragma once
// Canned verification runs: the two counterexample families, the flat
// base-change formula demo, and the invariant probe suites. Each builds its
// rings and expectations internally and reports mismatches like a scenario
// run would.

#include "scenario.hpp"

namespace ptc {

struct BuiltinParams {
  unsigned n = 2;        // counterexample1 family size (>= 2)
  std::uint32_t p = 0;   // characteristic; 0 picks the builtin's default
  unsigned max_e = 3;
  std::uint64_t max_q = 0;  // 0: p^max_e
  unsigned pool_size = 16;
  std::uint64_t seed = 0;
};

std::vector<std::string> builtin_names();
RunReport run_builtin(const std::string& name, const BuiltinParams& par = {});

}  // namespace ptc
