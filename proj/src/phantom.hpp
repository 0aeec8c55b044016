#pragma once
// Phantom regular elements and sequences, phantom depth (bounded greedy
// search with a deterministic candidate pool), minheight, phantom
// zerodivisor witnesses, and the associated-prime chain probe.

#include "frobenius.hpp"
#include "groebner.hpp"
#include "module.hpp"
#include "ring.hpp"
#include "tight_closure.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ptc {

enum class PhantomTag { CertifiedZerodivisor, NotRefuted };
std::string to_string(PhantomTag t);

// Sub-state of NotRefuted: how strong the per-level evidence is.
//   ExactRegular         every colon (0 : x^q) was literally zero
//   CertifiedContainment every colon generator got an In certificate
//   HasUnknowns          at least one generator stayed Unknown at the bound
enum class PhantomEvidence { ExactRegular, CertifiedContainment, HasUnknowns };
std::string to_string(PhantomEvidence e);

struct PhantomRegVerdict {
  PhantomTag tag = PhantomTag::NotRefuted;
  PhantomEvidence evidence = PhantomEvidence::HasUnknowns;
  // CertifiedZerodivisor payload: x^{p^e} * witness = 0 in F^e(M) and the
  // witness carries an Out certificate against 0^*_{F^e(M)}.
  unsigned e = 0;
  VecPoly witness;
  std::optional<ClosureVerdict> out_certificate;
  // NotRefuted payload: the exhausted bounds.
  unsigned bound_e = 0;
  std::uint64_t bound_q = 0;
  std::vector<Fact> facts;
  std::vector<Assumption> assumptions;
};

// Is x phantom M-regular at bounded level? Preconditions: x lies in the
// maximal ideal (no constant term after reduction) and xM != M.
PhantomRegVerdict phantom_regular(const TCEnv& env, const Polynomial& x,
                                  const PresentedModule& M);

// Folds quotient_module and phantom_regular along xs; stops after the first
// CertifiedZerodivisor (the returned list may be shorter than xs).
std::vector<PhantomRegVerdict> phantom_sequence_check(
    const TCEnv& env, const std::vector<Polynomial>& xs,
    const PresentedModule& M);

// Candidate pool: variables, supplied elements, two-variable +/-1 forms,
// then seeded random linear forms until pool_size entries exist. Entries are
// reduced, made monic and deduplicated; anything with a constant term drops.
struct PoolConfig {
  std::vector<Polynomial> supplied;
  unsigned pool_size = 16;
  std::uint64_t seed = 0;
};
std::vector<Polynomial> depth_candidate_pool(const QRingPtr& R,
                                             const PoolConfig& cfg);

enum class TailStatus { CertifiedDepthZero, Bounded };
std::string to_string(TailStatus t);

struct DepthStep {
  Polynomial x;
  PhantomEvidence evidence;
};

struct DepthReport {
  std::vector<DepthStep> sequence;
  int lower_bound = 0;  // always sequence.size()
  TailStatus tail = TailStatus::Bounded;
  // The final pass's refutations when the tail is certified (one per pool
  // candidate); evidence that no candidate extends the sequence.
  std::vector<PhantomRegVerdict> tail_refutations;
  std::vector<Assumption> assumptions;
};

// Greedy bounded phantom-depth search. Fails on the zero module.
DepthReport phantom_depth(const TCEnv& env, const PresentedModule& M,
                          const PoolConfig& cfg = {});

// min over the certified minimal primes p_j of dim(poly ring / p_j). The
// primes must be certified for R's defining ideal.
int minheight(const QuotientRing& R, const CertifiedMinimalPrimes& primes);

struct ZerodivisorWitness {
  unsigned e = 0;
  VecPoly z;                  // class in F^e(M)
  ClosureVerdict product_in;  // x*z In 0^*_{F^e(M)}
  ClosureVerdict witness_out; // z Out of 0^*_{F^e(M)}
};
// Searches e <= max_e and z among colon candidates for a certified phantom
// zerodivisor witness: x*z inside the closure of zero, z certified outside.
std::optional<ZerodivisorWitness> phantom_zerodivisor_witness(
    const TCEnv& env, const Polynomial& x, const PresentedModule& M);

struct ContainmentCheck {
  std::string generator;
  bool holds = false;
};
struct AssChainReport {
  Ideal K;   // (inner 0^*_M : z), an ideal of the ambient polynomial ring
  Ideal K1;  // (inner 0^*_{F^1(M)} : z^p)
  std::vector<ContainmentCheck> bracket_in_K1;  // K^{[p]} subset of K1?
  std::vector<ContainmentCheck> K1_in_K;        // K1 subset of K?
  bool ok = false;
  std::vector<Assumption> assumptions;
};
// Sandwich probe for the chain Ass G^e subset Ass G^{e+1}: requires z to
// carry an Out certificate against 0^*_M.
AssChainReport ass_chain_probe(const TCEnv& env, const PresentedModule& M,
                               const VecPoly& z);

}  // namespace ptc
