#include "frobenius.hpp"

namespace ptc {

PresentedModule frobenius_module(const PresentedModule& M, unsigned e) {
  return PresentedModule::make(M.ring(), M.rank(),
                               bracket_gens(M.relations(), e),
                               M.pair_budget());
}

VecPoly frobenius_vec(const VecPoly& v, unsigned e) {
  VecPoly out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out[i] = frobenius_pow(v[i], e);
  return out;
}

std::vector<VecPoly> bracket_gens(const std::vector<VecPoly>& gens,
                                  unsigned e) {
  std::vector<VecPoly> out;
  out.reserve(gens.size());
  for (const auto& g : gens) out.push_back(frobenius_vec(g, e));
  return out;
}

Submodule bracket_submodule(const Submodule& N, unsigned e) {
  return Submodule(frobenius_module(N.ambient(), e),
                   bracket_gens(N.gens(), e));
}

}  // namespace ptc
