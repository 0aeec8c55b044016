#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "groebner.hpp"
#include "module.hpp"
#include "phantom.hpp"
#include "ring.hpp"
#include "tight_closure.hpp"

using namespace ptc;

namespace {

Polynomial pp(const std::string& s, const RingPtr& R) { return parse_poly(s, R); }

VecPoly vp(const std::vector<std::string>& comps, const RingPtr& R) {
  VecPoly v;
  for (const auto& s : comps) v.push_back(pp(s, R));
  return v;
}

std::vector<Polynomial> pl(const std::vector<std::string>& ss, const RingPtr& R) {
  std::vector<Polynomial> out;
  for (const auto& s : ss) out.push_back(pp(s, R));
  return out;
}

// B = F_3[y1,y2]/(y1^2, y1*y2) with its single minimal prime (y1)
struct NilPlane {
  RingPtr P = RingSignature::make(3, {"y1", "y2"});
  QRingPtr B = QuotientRing::make(P, Ideal(P, pl({"y1^2", "y1*y2"}, P)));
  TCEnv env = make_env(B, {Ideal(P, pl({"y1"}, P))}, std::nullopt);
};

}  // namespace

TEST_CASE("phantom regularity on the nilpotent plane") {
  NilPlane W;
  const PresentedModule M = PresentedModule::free_module(W.B, 1);

  // (0 : y2^q) = (y1) at every level, and y1 has a frobenius-closure In
  const PhantomRegVerdict vy2 = phantom_regular(W.env, pp("y2", W.P), M);
  CHECK(vy2.tag == PhantomTag::NotRefuted);
  CHECK(vy2.evidence == PhantomEvidence::CertifiedContainment);
  CHECK(vy2.bound_q == 27);

  // (0 : y1) = (y1, y2) and y2 is certified outside 0^*
  const PhantomRegVerdict vy1 = phantom_regular(W.env, pp("y1", W.P), M);
  CHECK(vy1.tag == PhantomTag::CertifiedZerodivisor);
  CHECK(vy1.e == 0);
  CHECK(vy1.witness == vp({"y2"}, W.P));
  REQUIRE(vy1.out_certificate.has_value());
  CHECK(vy1.out_certificate->rule == ClosureRule::MinimalPrimeReduction);
  REQUIRE(!vy1.facts.empty());
  CHECK(vy1.facts[0].claim == "nf-zero");  // x^q * witness = 0
}

TEST_CASE("nilpotent line is refuted at level one") {
  const RingPtr P = RingSignature::make(3, {"y1"});
  const QRingPtr R = QuotientRing::make(P, Ideal(P, pl({"y1^2"}, P)));
  const TCEnv env = make_env(R, {Ideal(P, pl({"y1"}, P))}, std::nullopt);
  const PresentedModule M = PresentedModule::free_module(R, 1);

  // e=0: (0 : y1) = (y1), all In; e=1: y1^3 = 0, so (0 : y1^3) = (1) and the
  // class of 1 is refuted through the minimal prime
  const PhantomRegVerdict v = phantom_regular(env, pp("y1", P), M);
  CHECK(v.tag == PhantomTag::CertifiedZerodivisor);
  CHECK(v.e == 1);
  CHECK(v.witness == vp({"1"}, P));
}

TEST_CASE("regular elements have exact colons") {
  const RingPtr P = RingSignature::make(5, {"x", "y"});
  const QRingPtr S = QuotientRing::make(P, Ideal(P, pl({"x^2 + 4*y^3"}, P)));
  const TCEnv env =
      make_env(S, {Ideal(P, pl({"x^2 + 4*y^3"}, P))}, std::nullopt);
  const PresentedModule M = PresentedModule::free_module(S, 1);

  for (const std::string name : {"x", "y"}) {
    const PhantomRegVerdict v = phantom_regular(env, pp(name, P), M);
    CHECK(v.tag == PhantomTag::NotRefuted);
    CHECK(v.evidence == PhantomEvidence::ExactRegular);
  }
}

TEST_CASE("phantom_regular preconditions") {
  NilPlane W;
  const PresentedModule M = PresentedModule::free_module(W.B, 1);

  try {
    phantom_regular(W.env, pp("y1^2 + 1", W.P), M);  // reduces to 1
    FAIL("unit element must throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::Precondition);
  }

  const PresentedModule Z =
      PresentedModule::cyclic(W.B, Ideal(W.P, pl({"1"}, W.P)));
  try {
    phantom_regular(W.env, pp("y2", W.P), Z);  // zero module: xM = M
    FAIL("zero module must throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::Precondition);
  }
}

TEST_CASE("sequence checks fold quotients") {
  // (x, t) is a genuine regular sequence on F_5[x,y,t]/(x^2 + 4*y^3)
  const RingPtr P3 = RingSignature::make(5, {"x", "y", "t"});
  const Ideal J3(P3, pl({"x^2 + 4*y^3"}, P3));
  const QRingPtr S3 = QuotientRing::make(P3, J3);
  const TCEnv env3 = make_env(S3, {J3}, std::nullopt);
  const PresentedModule M3 = PresentedModule::free_module(S3, 1);
  const auto seq =
      phantom_sequence_check(env3, pl({"x", "t"}, P3), M3);
  REQUIRE(seq.size() == 2);
  CHECK(seq[0].tag == PhantomTag::NotRefuted);
  CHECK(seq[0].evidence == PhantomEvidence::ExactRegular);
  CHECK(seq[1].tag == PhantomTag::NotRefuted);
  CHECK(seq[1].evidence == PhantomEvidence::ExactRegular);

  // (y2, y1) on B: y2 passes, then y1 on B/(y2) = F_3[y1]/(y1^2) is refuted
  NilPlane W;
  const PresentedModule MB = PresentedModule::free_module(W.B, 1);
  const auto seq2 = phantom_sequence_check(W.env, pl({"y2", "y1"}, W.P), MB);
  REQUIRE(seq2.size() == 2);
  CHECK(seq2[0].tag == PhantomTag::NotRefuted);
  CHECK(seq2[1].tag == PhantomTag::CertifiedZerodivisor);
  CHECK(seq2[1].e == 1);

  // stopping: a refutation in the middle truncates the list
  const auto seq3 =
      phantom_sequence_check(W.env, pl({"y1", "y2", "y2"}, W.P), MB);
  CHECK(seq3.size() == 1);
  CHECK(seq3[0].tag == PhantomTag::CertifiedZerodivisor);

  CHECK(phantom_sequence_check(W.env, {}, MB).empty());
}

TEST_CASE("candidate pool is deterministic and normalized") {
  NilPlane W;
  const PoolConfig cfg{{}, 16, 7};
  const auto pool = depth_candidate_pool(W.B, cfg);
  // over F_3 in two variables only four monic maximal-ideal forms exist
  REQUIRE(pool.size() == 4);
  CHECK(pool[0] == pp("y1", W.P));
  CHECK(pool[1] == pp("y2", W.P));
  CHECK(pool[2] == pp("y1 + y2", W.P));
  CHECK(pool[3] == pp("y1 + 2*y2", W.P));
  CHECK(depth_candidate_pool(W.B, cfg) == pool);

  // supplied elements are reduced and deduplicated
  const PoolConfig cfg2{pl({"y2 + y1^2", "2*y2"}, W.P), 16, 0};
  const auto pool2 = depth_candidate_pool(W.B, cfg2);
  CHECK(pool2.size() == 4);  // both supplied entries collapse into y2
}

TEST_CASE("phantom depth of the nilpotent plane is one, certified") {
  NilPlane W;
  const PresentedModule M = PresentedModule::free_module(W.B, 1);
  const DepthReport rep = phantom_depth(W.env, M);
  CHECK(rep.lower_bound == 1);
  REQUIRE(rep.sequence.size() == 1);
  CHECK(rep.sequence[0].x == pp("y2", W.P));
  CHECK(rep.sequence[0].evidence == PhantomEvidence::CertifiedContainment);
  CHECK(rep.tail == TailStatus::CertifiedDepthZero);
  CHECK(!rep.tail_refutations.empty());
  bool has_avoidance = false;
  for (const auto& a : rep.assumptions)
    if (a.kind == "avoidance") has_avoidance = true;
  CHECK(has_avoidance);
}

TEST_CASE("glued line: depth zero over the big ring, certified") {
  // R = F_3[y1,y2,z]/(y1z, y2z), M = R/(z - y1): every maximal-ideal form is
  // a certified phantom zerodivisor (witness z at level 1, or earlier)
  const RingPtr P = RingSignature::make(3, {"y1", "y2", "z"});
  const QRingPtr R = QuotientRing::make(P, Ideal(P, pl({"y1*z", "y2*z"}, P)));
  const TCEnv env = make_env(
      R, {Ideal(P, pl({"z"}, P)), Ideal(P, pl({"y1", "y2"}, P))}, std::nullopt);
  const PresentedModule M =
      PresentedModule::cyclic(R, Ideal(P, pl({"z + 2*y1"}, P)));

  const DepthReport rep = phantom_depth(env, M);
  CHECK(rep.lower_bound == 0);
  CHECK(rep.sequence.empty());
  CHECK(rep.tail == TailStatus::CertifiedDepthZero);
  // one refutation per pool candidate
  CHECK(rep.tail_refutations.size() ==
        depth_candidate_pool(R, PoolConfig{}).size());
}

TEST_CASE("glued line: depth n-1 over the small ring") {
  // R/I itself is F_3[y1,y2,z]/(z - y1 + glue) with minimal prime (y1, z);
  // phantom depth 1 = n-1 for n = 2
  const RingPtr P = RingSignature::make(3, {"y1", "y2", "z"});
  const Ideal I(P, pl({"z + 2*y1", "y1*z", "y2*z"}, P));
  const QRingPtr Rq = QuotientRing::make(P, I);
  const TCEnv env = make_env(Rq, {Ideal(P, pl({"y1", "z"}, P))}, std::nullopt);
  const PresentedModule M = PresentedModule::free_module(Rq, 1);

  const DepthReport rep = phantom_depth(env, M);
  CHECK(rep.lower_bound == 1);
  CHECK(rep.tail == TailStatus::CertifiedDepthZero);
  REQUIRE(rep.sequence.size() == 1);
  CHECK(rep.sequence[0].x == pp("y2", P));
}

TEST_CASE("phantom depth rejects the zero module") {
  NilPlane W;
  const PresentedModule Z =
      PresentedModule::cyclic(W.B, Ideal(W.P, pl({"1"}, W.P)));
  try {
    phantom_depth(W.env, Z);
    FAIL("zero module must throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::Precondition);
  }
}

TEST_CASE("minheight") {
  // glued line over the big ring: min(dim P/(z), dim P/(y1,y2)) = min(2,1)
  const RingPtr P = RingSignature::make(3, {"y1", "y2", "z"});
  const Ideal J(P, pl({"y1*z", "y2*z"}, P));
  const QRingPtr R = QuotientRing::make(P, J);
  const auto primes = CertifiedMinimalPrimes::certify(
      J, {Ideal(P, pl({"z"}, P)), Ideal(P, pl({"y1", "y2"}, P))});
  CHECK(minheight(*R, primes) == 1);

  // quotient by I: single minimal prime (y1, z), dimension 1 = n-1
  const Ideal I(P, pl({"z + 2*y1", "y1*z", "y2*z"}, P));
  const QRingPtr Rq = QuotientRing::make(P, I);
  const auto primesI =
      CertifiedMinimalPrimes::certify(I, {Ideal(P, pl({"y1", "z"}, P))});
  CHECK(minheight(*Rq, primesI) == 1);

  // a domain's minheight is its dimension
  const RingPtr P2 = RingSignature::make(5, {"x", "y"});
  const Ideal J2(P2, pl({"x^2 + 4*y^3"}, P2));
  CHECK(minheight(*QuotientRing::make(P2, J2),
                  CertifiedMinimalPrimes::certify(J2, {J2})) == 1);

  // polynomial ring: dimension = number of variables
  const Ideal Z2(P2, {});
  CHECK(minheight(*QuotientRing::poly_ring(P2),
                  CertifiedMinimalPrimes::certify(Z2, {Z2})) == 2);

  // primes certified for a different ideal are rejected
  try {
    minheight(*R, primesI);
    FAIL("mismatched certification must throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::Precondition);
  }
}

TEST_CASE("zerodivisor witnesses") {
  NilPlane W;
  const PresentedModule M = PresentedModule::free_module(W.B, 1);

  // y1 is a phantom zerodivisor witnessed by y2 at level 0
  const auto w = phantom_zerodivisor_witness(W.env, pp("y1", W.P), M);
  REQUIRE(w.has_value());
  CHECK(w->e == 0);
  CHECK(w->z == vp({"y2"}, W.P));
  CHECK(w->product_in.tag == Containment::In);
  CHECK(w->witness_out.tag == Containment::Out);

  // a regular element on a domain has no torsion to witness with
  const RingPtr P2 = RingSignature::make(5, {"x", "y"});
  const Ideal J2(P2, pl({"x^2 + 4*y^3"}, P2));
  const QRingPtr S = QuotientRing::make(P2, J2);
  const TCEnv env2 = make_env(S, {J2}, std::nullopt);
  CHECK_FALSE(phantom_zerodivisor_witness(env2, pp("x", P2),
                                          PresentedModule::free_module(S, 1))
                  .has_value());

  // agreement with phantom_regular on the nilpotent line
  const RingPtr P1 = RingSignature::make(3, {"y1"});
  const QRingPtr R1 = QuotientRing::make(P1, Ideal(P1, pl({"y1^2"}, P1)));
  const TCEnv env1 = make_env(R1, {Ideal(P1, pl({"y1"}, P1))}, std::nullopt);
  const PresentedModule M1 = PresentedModule::free_module(R1, 1);
  const PhantomRegVerdict pr = phantom_regular(env1, pp("y1", P1), M1);
  REQUIRE(pr.tag == PhantomTag::CertifiedZerodivisor);
  const auto w1 = phantom_zerodivisor_witness(env1, pp("y1", P1), M1);
  REQUIRE(w1.has_value());
  CHECK(w1->e == pr.e);
  CHECK(w1->z == pr.witness);
}

TEST_CASE("ass chain probe") {
  // free module over a polynomial ring, z = 1: both colons are zero
  const RingPtr P = RingSignature::make(3, {"x", "y"});
  const QRingPtr R = QuotientRing::poly_ring(P);
  const TCEnv env = make_env(R, {}, std::nullopt);
  const PresentedModule M = PresentedModule::free_module(R, 1);
  const AssChainReport rep = ass_chain_probe(env, M, vp({"1"}, P));
  CHECK(rep.ok);
  CHECK(rep.K.is_zero());
  CHECK(rep.K1.is_zero());

  // B with z = y2: K = K' = (y1), the sandwich holds on generators
  NilPlane W;
  const PresentedModule MB = PresentedModule::free_module(W.B, 1);
  const AssChainReport rb = ass_chain_probe(W.env, MB, vp({"y2"}, W.P));
  CHECK(rb.ok);
  CHECK(same_ideal(rb.K, Ideal(W.P, pl({"y1"}, W.P))));
  CHECK(same_ideal(rb.K1, Ideal(W.P, pl({"y1"}, W.P))));
  for (const auto& c : rb.bracket_in_K1) CHECK(c.holds);
  for (const auto& c : rb.K1_in_K) CHECK(c.holds);

  // an element already inside 0^* is rejected
  try {
    ass_chain_probe(W.env, MB, vp({"y1"}, W.P));
    FAIL("In element must throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::Precondition);
  }

  // crossing line probes: linear forms with Out certificates never violate
  const RingPtr PX = RingSignature::make(3, {"x", "y"});
  const Ideal JX(PX, pl({"x*y"}, PX));
  const QRingPtr RX = QuotientRing::make(PX, JX);
  const TCEnv envX = make_env(
      RX, {Ideal(PX, pl({"x"}, PX)), Ideal(PX, pl({"y"}, PX))}, std::nullopt);
  const PresentedModule MX = PresentedModule::free_module(RX, 1);
  for (const std::string form : {"x", "y", "x + y", "x + 2*y", "2*x + y"}) {
    const AssChainReport r = ass_chain_probe(envX, MX, vp({form}, PX));
    CHECK(r.ok);
  }
}

TEST_CASE("verdict monotonicity in the level bound") {
  // a zerodivisor certified at max_e = 1 stays certified at max_e = 3
  const RingPtr P = RingSignature::make(3, {"y1"});
  const QRingPtr R = QuotientRing::make(P, Ideal(P, pl({"y1^2"}, P)));
  const PresentedModule M = PresentedModule::free_module(R, 1);
  for (unsigned max_e : {1u, 2u, 3u}) {
    const TCEnv env =
        make_env(R, {Ideal(P, pl({"y1"}, P))}, std::nullopt, max_e);
    const PhantomRegVerdict v = phantom_regular(env, pp("y1", P), M);
    CHECK(v.tag == PhantomTag::CertifiedZerodivisor);
    CHECK(v.e == 1);
  }
}
