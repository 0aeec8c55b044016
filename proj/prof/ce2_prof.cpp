#include "tight_closure.hpp"
#include "phantom.hpp"
#include <chrono>
#include <cstdio>
using namespace ptc;
static double ms(std::chrono::steady_clock::time_point a) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - a).count();
}
int main() {
  const std::uint32_t p = 7;
  const RingPtr P = RingSignature::make(p, {"x", "y", "u", "v"});
  const Polynomial g = parse_poly("x^3*y^3 + u^3 + v^3", P);
  const QRingPtr R = QuotientRing::make(P, Ideal(P, {g}));
  TestElementAssumption te{parse_poly("u^2", P), 0, "jacobian-hypersurface"};
  const TCEnv env = make_env(R, {Ideal(P, {g})}, te, 3);
  const PresentedModule M = PresentedModule::cyclic(
      R, Ideal(P, {parse_poly("u", P), parse_poly("v", P), parse_poly("x^3", P)}));
  for (const char* a : {"x", "u", "v", "y"}) {
    auto t0 = std::chrono::steady_clock::now();
    const auto v = phantom_regular(env, parse_poly(a, P), M);
    std::printf("%s: %s e=%u witness=%s  [%.0f ms]\n", a, to_string(v.tag).c_str(),
                v.e, v.witness.empty() ? "-" : format_vec(v.witness).c_str(), ms(t0));
    std::fflush(stdout);
  }
  return 0;
}
