#pragma once
// Bounded tight-closure membership with machine-checkable certificates.
// Verdicts are three-valued. In via Member/FrobeniusClosure is unconditional;
// Out verdicts list the assumptions they depend on (weak test element,
// asserted primality, standard reduction facts). An empty assumption list
// means unconditional.

#include "frobenius.hpp"
#include "groebner.hpp"
#include "module.hpp"
#include "ring.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ptc {

enum class Containment { In, Out, Unknown };
std::string to_string(Containment c);

enum class ClosureRule {
  Member,
  FrobeniusClosure,
  RegularColonRule,
  MinimalPrimeReduction,
  TestElementScan,
  BoundedScan,
};
std::string to_string(ClosureRule r);

struct RingDesc {
  std::uint32_t p = 0;
  std::vector<std::string> vars;
  std::string order;
};
RingDesc describe_ring(const RingSignature& sig);

// A self-contained, recomputable claim. `rows` is the complete divisor set
// (submodule generators plus every module relation); nothing outside the fact
// is needed to recheck it.
//   nf-zero     the element reduces to zero against a basis of `rows`
//   nf-nonzero  it does not
//   colon-zero  { v : element[0] * v in span(rows) } is contained in span(rows)
struct Fact {
  std::string claim;
  RingDesc ring;
  std::size_t rank = 1;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> element;
  std::string note;
};

struct Assumption {
  std::string kind;  // "weak-test-element" | "asserted-prime" | "standard-fact" | "avoidance"
  std::string detail;
};
void merge_assumptions(std::vector<Assumption>& into,
                       const std::vector<Assumption>& more);

struct TestElementAssumption {
  Polynomial c;
  unsigned e0 = 0;         // q0 = p^e0
  std::string provenance;  // "regular-ring" | "jacobian-hypersurface" | "user-assumed"
};

struct ClosureVerdict {
  Containment tag = Containment::Unknown;
  ClosureRule rule = ClosureRule::BoundedScan;
  unsigned e = 0;             // witness level, q = p^e
  std::uint64_t q = 0;        // witness power for In(FC)/Out
  std::uint64_t bound_q = 0;  // exhausted bound for Unknown
  std::string detail;
  std::vector<Fact> facts;
  std::vector<Assumption> assumptions;
};

// Lazy cache of F^e(M) and N^{[p^e]} per level e.
class FrobeniusLadder {
public:
  FrobeniusLadder(PresentedModule M, std::vector<VecPoly> ngens);
  const PresentedModule& base() const { return M_; }
  const std::vector<VecPoly>& ngens() const { return ngens_; }
  const PresentedModule& module_at(unsigned e);
  const Submodule& submodule_at(unsigned e);

private:
  PresentedModule M_;
  std::vector<VecPoly> ngens_;
  std::vector<PresentedModule> modules_;
  std::vector<Submodule> subs_;
};

// Shared environment for closure questions over one ring: certified minimal
// primes of the defining ideal, the optional weak test element, the level
// bound (Q = p^max_e).
struct TCEnv {
  QRingPtr ring;
  CertifiedMinimalPrimes primes;
  std::optional<TestElementAssumption> test_element;
  unsigned max_e = 3;
};

// Certifies `prime_candidates` as the minimal primes (auto {(0)} for a
// polynomial ring when the list is empty) and validates the test element.
TCEnv make_env(QRingPtr ring, std::vector<Ideal> prime_candidates,
               std::optional<TestElementAssumption> test_element,
               unsigned max_e = 3);

// c avoids every certified minimal prime (the paper's R°).
bool in_ring_circ(const CertifiedMinimalPrimes& primes, const Polynomial& c);
// The defining ideal's reduced basis is affine-linear, so R is (isomorphic
// to) a polynomial ring and N^* = N holds on the nose.
bool certifiably_regular(const QuotientRing& R);
std::string format_ideal(const Ideal& I);

// Assumptions contributed by the asserted primes in the list.
std::vector<Assumption> primality_assumptions(const CertifiedMinimalPrimes& p);

// The environment ring and the module's ring must present the same quotient.
void require_env_module(const TCEnv& env, const PresentedModule& M);

// Rule order: Member, FrobeniusClosure (e <= max_e), RegularColonRule,
// MinimalPrimeReduction (rank-1 ideal case, Out only), test-element scan
// (e0..max_e), else Unknown(p^max_e).
ClosureVerdict tc_membership(const TCEnv& env, FrobeniusLadder& ladder,
                             const VecPoly& z);
ClosureVerdict tc_membership(const TCEnv& env, const PresentedModule& M,
                             const std::vector<VecPoly>& ngens,
                             const VecPoly& z);
// Runs the redundant scan after an In verdict and aborts on a lattice
// conflict (internal-consistency invariant).
ClosureVerdict tc_membership_checked(const TCEnv& env, FrobeniusLadder& ladder,
                                     const VecPoly& z);

struct FCAnswer {
  bool yes = false;
  unsigned e = 0;     // valid when yes
  std::uint64_t q = 0;  // p^e when yes, exhausted bound otherwise
  std::optional<Fact> fact;
};
FCAnswer frobenius_closure_membership(FrobeniusLadder& ladder, const VecPoly& z,
                                      unsigned max_e);

struct CandidateVerdict {
  VecPoly candidate;
  ClosureVerdict verdict;
};
struct ZeroClosureApprox {
  std::vector<VecPoly> inner;            // certified inside 0^*_M
  std::vector<CandidateVerdict> outer;   // every candidate with its verdict
};
// Candidate pool: variable annihilator generators, basis-vector classes, and
// caller extras, deduplicated by normal form.
ZeroClosureApprox tc_zero_submodule_approx(const TCEnv& env,
                                           const PresentedModule& M,
                                           const std::vector<VecPoly>& extra = {});

// Fact builders shared by the calculus layers.
Fact nf_fact(bool zero, const PresentedModule& ambient,
             const std::vector<VecPoly>& subgens, const VecPoly& element,
             std::string note);
Fact colon_zero_fact(const PresentedModule& ambient, const Polynomial& f,
                     std::string note);

}  // namespace ptc
