#pragma once
// Flat graded extensions R -> S with controlled Cohen-Macaulay fibers:
// adjoined polynomial variables, or a hypersurface fiber certified F-pure by
// Fedder's criterion. Probes for the depth formula under such extensions.

#include "groebner.hpp"
#include "module.hpp"
#include "phantom.hpp"
#include "ring.hpp"
#include "tight_closure.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ptc {

enum class ExtensionKind { Polynomial, HypersurfaceFiber };
std::string to_string(ExtensionKind k);

// S = P'/J' where P' adds fiber variables to the base presentation and J'
// is the transported base ideal plus the (fiber-only) relation. S is free
// as a base module by construction, hence flat.
struct FlatExtension {
  QRingPtr base;
  QRingPtr total;
  ExtensionKind kind = ExtensionKind::Polynomial;
  std::vector<std::string> fiber_vars;
  std::string fiber_relation;  // relation text in fiber variables, or empty
  int fiber_depth = 0;
  // A maximal regular sequence of the fiber, exhibited at construction by
  // exact colon vanishing (the variables themselves for the polynomial
  // kind) and transported to the total ring.
  std::vector<Polynomial> fiber_sequence;
};

// Fedder: F_p[tbar]/(g) is F-pure iff g^{p-1} avoids (t_1^p, .., t_k^p).
// g lives in the fiber-only polynomial ring; F-pure implies F-injective.
bool fedder_fpure_check(const Polynomial& g);

// Adjoin k fresh variables ("t", or "t1".."tk" when k > 1); k = 0 is the
// identity-shaped extension.
FlatExtension extend_ring_polynomial(const QRingPtr& R, unsigned k);
// Adjoin named variables with a single fiber relation; refused unless the
// Fedder check certifies the fiber F-pure.
FlatExtension extend_ring_hypersurface(const QRingPtr& R,
                                       const std::vector<std::string>& tvars,
                                       const std::string& relation_text);

// Name-preserving transports along base -> total (base variables come
// first in the total signature).
Polynomial extend_poly(const FlatExtension& X, const Polynomial& f);
VecPoly extend_vec(const FlatExtension& X, const VecPoly& v);
Ideal extend_ideal(const FlatExtension& X, const Ideal& I);
PresentedModule tensor_extend(const FlatExtension& X, const PresentedModule& M);

// Environment over the total ring. Minimal prime candidates default to the
// transported base primes (polynomial kind only; a hypersurface fiber
// changes the prime structure and needs explicit candidates). The base's
// test element transports to phi(c) with the same q0.
TCEnv extend_env(const FlatExtension& X, const TCEnv& base_env,
                 const std::vector<Ideal>& total_prime_candidates = {});

// The exhibited fiber sequence stays exactly regular on tensor_extend(M):
// each successive colon vanishes identically.
bool fiber_sequence_exact(const FlatExtension& X, const PresentedModule& M);

enum class FormulaVerdict { EqualCertified, EqualBounded, Mismatch };
std::string to_string(FormulaVerdict v);

// ppd over the base plus the fiber depth against ppd of the extended module.
struct FormulaReport {
  DepthReport base_depth;
  DepthReport total_depth;
  int fiber_depth = 0;
  int lhs = 0;  // base lower bound + fiber depth
  int rhs = 0;  // total lower bound
  FormulaVerdict verdict = FormulaVerdict::Mismatch;
  bool fiber_exact = false;     // fiber variables exactly regular on S x M
  bool transfer_ok = false;     // base sequence + fiber vars pass over S
  std::vector<PhantomRegVerdict> transfer_verdicts;
  std::string detail;
  std::vector<Assumption> assumptions;
};
FormulaReport verify_base_change_formula(const TCEnv& base_env,
                                         const PresentedModule& M,
                                         const FlatExtension& X,
                                         const TCEnv& total_env,
                                         const PoolConfig& base_pool = {},
                                         const PoolConfig& total_pool = {});

// Both sides of 0 :_{F^e_S(M')} phi(a)^q = S x (0 :_{F^e_R(M)} a^q) as
// reduced module bases inside F^e_S(M').
struct ColonFlatnessReport {
  bool equal = false;
  unsigned e = 0;
  std::vector<VecPoly> lhs;  // reduced basis, extension side
  std::vector<VecPoly> rhs;  // reduced basis, transported side
};
ColonFlatnessReport colon_flatness_probe(const PresentedModule& M,
                                         const FlatExtension& X,
                                         const Polynomial& a, unsigned e);

// If u is certified outside 0^*_N over the base and b is nonzero in
// S/(m, zbar)S, then b*u should stay outside 0^* of (S/zbar) x N. A
// certified In is a theorem violation and aborts; otherwise the report
// carries the Out certificate or the exhausted bound.
struct CmfiReport {
  Containment tag = Containment::Unknown;  // Out or Unknown
  ClosureVerdict base_out;                 // u's certificate over the base
  ClosureVerdict total;                    // b*u's verdict over the total ring
  std::vector<Assumption> assumptions;
};
CmfiReport cmfi_probe(const FlatExtension& X, const TCEnv& base_env,
                      const PresentedModule& N, const VecPoly& u,
                      const std::vector<Polynomial>& zs, const Polynomial& b,
                      const TCEnv& total_env);

}  // namespace ptc
