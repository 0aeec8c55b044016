#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "frobenius.hpp"
#include "groebner.hpp"
#include "module.hpp"
#include "ring.hpp"

using namespace ptc;

namespace {
Polynomial pp(const std::string& s, const RingPtr& R) { return parse_poly(s, R); }
VecPoly vp(const std::vector<std::string>& comps, const RingPtr& R) {
  VecPoly v;
  for (const auto& s : comps) v.push_back(pp(s, R));
  return v;
}
}  // namespace

TEST_CASE("explicit rows are powered, defining rows are not") {
  const RingPtr P = RingSignature::make(3, {"y1", "y2", "z"});
  const QRingPtr R =
      QuotientRing::make(P, Ideal(P, {pp("y1*z", P), pp("y2*z", P)}));
  const PresentedModule M =
      PresentedModule::cyclic(R, Ideal(P, {pp("z - y1", P)}));
  const PresentedModule F1 = frobenius_module(M, 1);
  REQUIRE(F1.relations().size() == 1);
  CHECK(F1.relations()[0] == vp({"z^3 + 2*y1^3"}, P));
  // the defining rows enter unpowered
  CHECK(is_zero_in(F1, vp({"y1*z"}, P)));
  CHECK(is_zero_in(F1, vp({"y2*z"}, P)));
  CHECK_FALSE(is_zero_in(F1, vp({"z - y1"}, P)));  // only its cube is a relation
  CHECK(is_zero_in(F1, vp({"z^3 - y1^3"}, P)));
  CHECK(F1.rank() == M.rank());
  CHECK(F1.ring() == M.ring());
}

TEST_CASE("composition of Frobenius twists") {
  const RingPtr P = RingSignature::make(3, {"x", "y"});
  const QRingPtr R = QuotientRing::make(P, Ideal(P, {pp("x*y", P)}));
  const PresentedModule M =
      PresentedModule::make(R, 2, {vp({"x^2 + y", "x"}, P), vp({"0", "y"}, P)});
  const PresentedModule two_steps = frobenius_module(frobenius_module(M, 1), 1);
  const PresentedModule one_step = frobenius_module(M, 2);
  CHECK(two_steps.relations() == one_step.relations());
  CHECK(frobenius_module(M, 0).relations() == M.relations());
}

TEST_CASE("F^e(R/I) is R/I^[q] as a P-module") {
  const RingPtr P = RingSignature::make(3, {"y1", "y2", "z"});
  const std::vector<Polynomial> jgens = {pp("y1*z", P), pp("y2*z", P)};
  const QRingPtr R = QuotientRing::make(P, Ideal(P, jgens));
  const Ideal I(P, {pp("z - y1", P)});
  for (unsigned e : {1u, 2u}) {
    const PresentedModule FeM = frobenius_module(PresentedModule::cyclic(R, I), e);
    std::vector<Polynomial> gens;
    for (const auto& g : I.gens()) gens.push_back(frobenius_pow(g, e));
    gens.insert(gens.end(), jgens.begin(), jgens.end());
    const Ideal direct(P, gens);
    for (const std::string probe :
         {"z^3 - y1^3", "z^9 - y1^9", "z", "y1*z", "z^3*y2", "y1^3 + z^3",
          "z^2", "y2^2", "z^3 - y1^3 + y2*z"}) {
      const Polynomial f = pp(probe, P);
      CHECK(is_zero_in(FeM, VecPoly{f}) == ideal_contains(direct, f));
    }
  }
}

TEST_CASE("right exactness: F^e(M/N) = F^e(M)/N^[q]") {
  const RingPtr P = RingSignature::make(5, {"x", "y"});
  const QRingPtr R = QuotientRing::make(P, Ideal(P, {pp("x*y", P)}));
  const PresentedModule M =
      PresentedModule::make(R, 2, {vp({"x^2", "y"}, P)});
  const std::vector<VecPoly> ngens = {vp({"y^2", "x + y"}, P)};
  for (unsigned e : {1u, 2u}) {
    const PresentedModule lhs = frobenius_module(quotient_module(M, ngens), e);
    const PresentedModule rhs =
        quotient_module(frobenius_module(M, e), bracket_gens(ngens, e));
    CHECK(lhs.relations() == rhs.relations());
    // and they agree as membership tests
    for (const auto& probe :
         {vp({"x^10", "y^5"}, P), vp({"x", "0"}, P), vp({"0", "x^5 + y^5"}, P)})
      CHECK(is_zero_in(lhs, probe) == is_zero_in(rhs, probe));
  }
}

TEST_CASE("the Frobenius map on elements is well defined") {
  // v and v + (combination of relations) must push to the same class; this is
  // exactly where powering the defining rows would go wrong.
  const RingPtr P = RingSignature::make(3, {"x", "y"});
  const QRingPtr R = QuotientRing::make(P, Ideal(P, {pp("x*y", P)}));
  const PresentedModule M =
      PresentedModule::cyclic(R, Ideal(P, {pp("x^2 + y", P)}));
  const VecPoly v = vp({"x + y"}, P);
  DetRng rng(7);
  auto rnd = [&] {
    std::vector<Term> ts;
    for (int t = 0; t < 2; ++t)
      ts.push_back(Term{Monomial({static_cast<std::uint32_t>(rng.below(2)),
                                  static_cast<std::uint32_t>(rng.below(2))}),
                        static_cast<std::uint32_t>(1 + rng.below(2))});
    return Polynomial::make(P, ts);
  };
  for (unsigned e : {1u, 2u}) {
    const PresentedModule FeM = frobenius_module(M, e);
    for (int trial = 0; trial < 6; ++trial) {
      const VecPoly w = vec_add(
          v, vec_add(vec_scale(rnd(), vp({"x^2 + y"}, P)),
                     vec_scale(rnd(), vp({"x*y"}, P))));
      REQUIRE(equal_in(M, v, w));
      CHECK(equal_in(FeM, frobenius_vec(v, e), frobenius_vec(w, e)));
    }
  }
}

TEST_CASE("frobenius on vectors and bracket submodules") {
  const RingPtr P = RingSignature::make(3, {"x", "y", "z"});
  CHECK(frobenius_vec(vp({"x + y", "z"}, P), 1) == vp({"x^3 + y^3", "z^3"}, P));
  CHECK(frobenius_vec(vp({"x + y", "z"}, P), 0) == vp({"x + y", "z"}, P));

  const QRingPtr R = QuotientRing::poly_ring(P);
  const PresentedModule M = PresentedModule::free_module(R, 2);
  const Submodule N(M, {vp({"x", "0"}, P), vp({"0", "y"}, P)});
  const Submodule Nq = bracket_submodule(N, 1);
  CHECK(Nq.gens() ==
        std::vector<VecPoly>{vp({"x^3", "0"}, P), vp({"0", "y^3"}, P)});
  CHECK(Nq.contains(vp({"x^3", "0"}, P)));
  CHECK(Nq.contains(vp({"x^4", "x*y^3"}, P)));
  CHECK_FALSE(Nq.contains(vp({"x", "0"}, P)));
  CHECK_FALSE(Nq.contains(vp({"x^2", "0"}, P)));
}

TEST_CASE("exponent overflow is caught") {
  const RingPtr P = RingSignature::make(3, {"x"});
  const QRingPtr R = QuotientRing::poly_ring(P);
  const PresentedModule M = PresentedModule::cyclic(R, Ideal(P, {pp("x^2", P)}));
  try {
    frobenius_module(M, 30);
    FAIL("expected overflow");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::Overflow);
  }
}
