#include "builtin.hpp"
#include "report.hpp"
#include <cstdio>
#include <cstring>
using namespace ptc;
int main(int argc, char** argv) {
  setbuf(stdout, nullptr);
  BuiltinParams par;
  bool js = false;
  const char* name = argc > 1 ? argv[1] : "counterexample2";
  for (int i = 2; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--json")) { js = true; continue; }
    if (i + 1 < argc && !std::strcmp(argv[i], "-p")) par.p = std::atoi(argv[++i]);
    else if (i + 1 < argc && !std::strcmp(argv[i], "-n")) par.n = std::atoi(argv[++i]);
  }
  const RunReport rep = run_builtin(name, par);
  if (js) std::printf("%s\n", report_to_json(rep).dump(1).c_str());
  else std::printf("%s", report_to_text(rep).c_str());
  std::printf("exit=%d\n", report_exit_code(rep));
  return report_exit_code(rep);
}
