// scratch: exercise the grading detection + truncated membership directly
#include "../src/module.cpp"
#include <cstdio>
using namespace ptc;
int main() {
  setbuf(stdout, nullptr);
  const RingPtr P = RingSignature::make(7, {"x", "y", "u", "v"});
  const Polynomial g = parse_poly("x^3*y^3 + u^3 + v^3", P);
  auto row = [&](const char* s) { return VecPoly{parse_poly(s, P)}; };
  std::vector<VecPoly> rows{row("u"), row("v"), row("x^3"), VecPoly{g}};
  auto w = homogeneous_weights(4, rows);
  std::printf("weights:");
  for (auto x : w) std::printf(" %llu", (unsigned long long)x);
  std::printf("\n");

  const QRingPtr R = QuotientRing::make(P, Ideal(P, {g}));
  const PresentedModule F = PresentedModule::free_module(R, 1);
  Submodule B(F, {row("u^343"), row("v^343"), row("x^1029")});
  std::printf("contains x^686: %d\n", (int)B.contains(row("x^686")));
  std::printf("contains u^2*x^686: %d\n", (int)B.contains(row("u^2*x^686")));
  std::printf("contains u^343*y: %d\n", (int)B.contains(row("u^343*y")));
  std::printf("contains x^1026*y^3*u^3: %d\n",
              (int)B.contains(row("x^1026*y^3*u^3")));
  return 0;
}
