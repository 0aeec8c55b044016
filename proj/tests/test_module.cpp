#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <string>
#include <vector>

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

// Test-local module division oracle (restart-scan control flow, independent
// of module_reduce).
VecPoly oracle_mdivide(VecPoly f, const std::vector<VecPoly>& basis,
                       const RingPtr& R) {
  const std::uint32_t p = R->characteristic();
  VecPoly rem = vec_zero(R, f.size());
  while (!vec_is_zero(f)) {
    const std::size_t pos = vec_lead_pos(f);
    const Term lt = f[pos].lead();
    bool cancelled = false;
    for (const auto& g : basis) {
      if (vec_lead_pos(g) != pos) continue;
      const Term& gl = g[pos].lead();
      if (!gl.mono.divides(lt.mono)) continue;
      const std::uint64_t c = static_cast<std::uint64_t>(lt.coeff) *
                              mod_inverse(gl.coeff, p) % p;
      f = vec_sub(f, vec_mul_term(g, Term{lt.mono.divided_by(gl.mono),
                                          static_cast<std::uint32_t>(c)}));
      cancelled = true;
      break;
    }
    if (!cancelled) {
      const Polynomial t = Polynomial::monomial(R, lt.mono, lt.coeff);
      rem[pos] = add(rem[pos], t);
      f[pos] = sub(f[pos], t);
    }
  }
  return rem;
}

void audit_module_gb(const std::vector<VecPoly>& gb,
                     const std::vector<VecPoly>& gens, const RingPtr& R) {
  for (std::size_t i = 0; i < gb.size(); ++i)
    for (std::size_t j = i + 1; j < gb.size(); ++j) {
      const std::size_t pi = vec_lead_pos(gb[i]), pj = vec_lead_pos(gb[j]);
      if (pi != pj) continue;
      const Term &a = gb[i][pi].lead(), &b = gb[j][pj].lead();
      const Monomial l = Monomial::lcm(a.mono, b.mono);
      const VecPoly s =
          vec_sub(vec_mul_term(gb[i], Term{l.divided_by(a.mono),
                                           mod_inverse(a.coeff,
                                                       R->characteristic())}),
                  vec_mul_term(gb[j], Term{l.divided_by(b.mono),
                                           mod_inverse(b.coeff,
                                                       R->characteristic())}));
      CHECK(vec_is_zero(oracle_mdivide(s, gb, R)));
    }
  for (const auto& g : gens) CHECK(vec_is_zero(oracle_mdivide(g, gb, R)));
  for (std::size_t i = 0; i < gb.size(); ++i) {
    const std::size_t pi = vec_lead_pos(gb[i]);
    CHECK(gb[i][pi].lead().coeff == 1);
    for (std::size_t j = 0; j < gb.size(); ++j) {
      if (i == j) continue;
      const std::size_t pj = vec_lead_pos(gb[j]);
      for (const auto& t : gb[i][pj].terms())
        CHECK_FALSE(gb[j][pj].lead().mono.divides(t.mono));
    }
  }
}

}  // namespace

TEST_CASE("vector helpers") {
  const RingPtr R = RingSignature::make(5, {"x", "y"});
  const VecPoly a = vp({"x", "y"}, R);
  const VecPoly b = vp({"y", "x"}, R);
  CHECK(vec_add(a, b) == vp({"x + y", "x + y"}, R));
  CHECK(vec_is_zero(vec_sub(a, a)));
  CHECK(vec_scale(pp("2*x", R), b) == vp({"2*x*y", "2*x^2"}, R));
  CHECK(vec_lead_pos(vp({"0", "y"}, R)) == 1);
  CHECK(vec_lead_pos(vec_zero(R, 2)) == vec_npos);
  CHECK(format_vec(a) == "(x, y)");
  CHECK(vec_monic(vp({"0", "3*y^2 + x"}, R)) == vp({"0", "y^2 + 2*x"}, R));
  CHECK_THROWS_AS(vec_add(a, vec_zero(R, 3)), Error);
}

TEST_CASE("position-over-term order") {
  const RingPtr R = RingSignature::make(5, {"x", "y"});
  const Monomial x({1, 0}), y({0, 1}), x3({3, 0});
  CHECK(module_term_compare(0, x, 1, x3, *R) > 0);  // e0 block dominates
  CHECK(module_term_compare(1, x3, 0, x, *R) < 0);
  CHECK(module_term_compare(1, x, 1, y, *R) > 0);  // ring order inside a slot
  CHECK(module_term_compare(0, x, 0, x, *R) == 0);
}

TEST_CASE("rank-1 module Groebner agrees with ideal Groebner") {
  const RingPtr R = RingSignature::make(7, {"x", "y"}, TermOrder::Lex);
  const std::vector<VecPoly> gens = {vp({"x^2 + y"}, R), vp({"x*y"}, R)};
  const auto mgb = module_buchberger(R, 1, gens);
  const Ideal I(R, {pp("x^2 + y", R), pp("x*y", R)});
  REQUIRE(mgb.size() == I.groebner_basis().size());
  for (std::size_t i = 0; i < mgb.size(); ++i)
    CHECK(mgb[i][0] == I.groebner_basis()[i]);
}

TEST_CASE("rank-2 Groebner basis by hand") {
  // gens (x,y), (y,x): the only S-pair gives (0, y^2 - x^2); no pair remains
  // (lead positions differ), and nothing reduces. Monic form of the new row
  // is (0, x^2 + 4y^2).
  const RingPtr R = RingSignature::make(5, {"x", "y"});
  const std::vector<VecPoly> gens = {vp({"x", "y"}, R), vp({"y", "x"}, R)};
  const auto gb = module_buchberger(R, 2, gens);
  REQUIRE(gb.size() == 3);
  CHECK(gb[0] == vp({"0", "x^2 + 4*y^2"}, R));
  CHECK(gb[1] == vp({"y", "x"}, R));
  CHECK(gb[2] == vp({"x", "y"}, R));
  audit_module_gb(gb, gens, R);
}

TEST_CASE("random module bases pass the oracle audit") {
  const RingPtr R = RingSignature::make(3, {"x", "y"});
  DetRng rng(42);
  auto rnd_poly = [&] {
    std::vector<Term> ts;
    const int nterms = static_cast<int>(rng.below(3));
    for (int t = 0; t < nterms; ++t)
      ts.push_back(Term{Monomial({static_cast<std::uint32_t>(rng.below(3)),
                                  static_cast<std::uint32_t>(rng.below(3))}),
                        static_cast<std::uint32_t>(1 + rng.below(2))});
    return Polynomial::make(R, ts);
  };
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<VecPoly> gens;
    const int ngens = 2 + static_cast<int>(rng.below(2));
    for (int g = 0; g < ngens; ++g) gens.push_back(VecPoly{rnd_poly(), rnd_poly()});
    audit_module_gb(module_buchberger(R, 2, gens), gens, R);
  }
}

TEST_CASE("modules over a quotient ring see the defining ideal") {
  const RingPtr P = RingSignature::make(3, {"y1", "y2", "z"});
  const QRingPtr R = QuotientRing::make(P, Ideal(P, {pp("y1*z", P), pp("y2*z", P)}));
  const PresentedModule M = PresentedModule::free_module(R, 2);
  CHECK(is_zero_in(M, vp({"y1*z", "0"}, P)));
  CHECK(is_zero_in(M, vp({"2*y2*z", "y1*z + y2*z"}, P)));
  CHECK_FALSE(is_zero_in(M, vp({"y1", "0"}, P)));
  CHECK_FALSE(is_zero_in(M, vp({"0", "z"}, P)));

  // R/(z - y1) collapses to F_3[y1,y2]/(y1^2, y1 y2)
  const PresentedModule M2 =
      PresentedModule::cyclic(R, Ideal(P, {pp("z - y1", P)}));
  CHECK(is_zero_in(M2, vp({"z^2"}, P)));
  CHECK(is_zero_in(M2, vp({"z*y2"}, P)));
  CHECK(is_zero_in(M2, vp({"y1*y2"}, P)));
  CHECK_FALSE(is_zero_in(M2, vp({"y1"}, P)));
  CHECK_FALSE(is_zero_in(M2, vp({"y2^2"}, P)));
  CHECK(equal_in(M2, vp({"z"}, P), vp({"y1"}, P)));
}

TEST_CASE("syzygies") {
  const RingPtr P = RingSignature::make(5, {"x", "y"});
  // Koszul syzygy of (x, y) in the free rank-1 module
  const auto syz = syzygies_mod(P, 1, {vp({"x"}, P), vp({"y"}, P)}, {});
  REQUIRE(syz.size() == 1);
  CHECK(syz[0] == vp({"y", "4*x"}, P));  // y*x - x*y = 0
  // every syzygy really is one
  for (const auto& a : syz)
    CHECK(vec_is_zero(vec_add(vec_scale(a[0], vp({"x"}, P)),
                              vec_scale(a[1], vp({"y"}, P)))));

  // with relations: a*x in (xy) iff a in (y)
  const auto syz2 = syzygies_mod(P, 1, {vp({"x"}, P)}, {vp({"x*y"}, P)});
  REQUIRE(syz2.size() == 1);
  CHECK(syz2[0] == vp({"y"}, P));

  CHECK(syzygies_mod(P, 1, {}, {vp({"x"}, P)}).empty());
}

TEST_CASE("colon submodules") {
  const RingPtr P = RingSignature::make(5, {"x", "y"});
  const QRingPtr R = QuotientRing::poly_ring(P);
  const PresentedModule M = PresentedModule::cyclic(R, Ideal(P, {pp("x^2", P)}));
  const auto c1 = colon_submodule_gens(M, {}, pp("x", P));
  REQUIRE(c1.size() == 1);
  CHECK(c1[0] == vp({"x"}, P));  // (0 : x) in P/(x^2) is (x)
  const auto c2 = colon_submodule_gens(M, {}, pp("x^2", P));
  REQUIRE(c2.size() == 1);
  CHECK(c2[0] == vp({"1"}, P));  // x^2 kills everything

  const RingPtr P2 = RingSignature::make(3, {"x", "y"});
  const QRingPtr R2 = QuotientRing::make(P2, Ideal(P2, {pp("x*y", P2)}));
  const PresentedModule M2 = PresentedModule::free_module(R2, 1);
  const auto c3 = colon_submodule_gens(M2, {}, pp("x", P2));
  REQUIRE(c3.size() == 1);
  CHECK(c3[0] == vp({"y"}, P2));  // (0 : x) = (y) in F_3[x,y]/(xy)

  // (N : x) with N = (x)M in P/(x^2): everything
  const auto c4 = colon_submodule_gens(M, {vp({"x"}, P)}, pp("x", P));
  REQUIRE(c4.size() == 1);
  CHECK(c4[0] == vp({"1"}, P));
  CHECK_THROWS_AS(colon_submodule_gens(M, {}, pp("0", P)), Error);
}

TEST_CASE("annihilators") {
  const RingPtr P = RingSignature::make(5, {"x", "y"});
  const QRingPtr R = QuotientRing::poly_ring(P);
  const PresentedModule M =
      PresentedModule::cyclic(R, Ideal(P, {pp("x^2", P), pp("x*y", P)}));
  CHECK(same_ideal(annihilator_ideal(M, vp({"x"}, P)),
                   Ideal(P, {pp("x", P), pp("y", P)})));
  CHECK(same_ideal(annihilator_ideal(M, vp({"1"}, P)),
                   Ideal(P, {pp("x^2", P), pp("x*y", P)})));
  // the annihilator contains the defining ideal automatically
  const QRingPtr R2 = QuotientRing::make(P, Ideal(P, {pp("x*y", P)}));
  const PresentedModule M2 = PresentedModule::free_module(R2, 1);
  CHECK(same_ideal(annihilator_ideal(M2, vp({"x"}, P)),
                   Ideal(P, {pp("y", P)})));
  CHECK(same_ideal(annihilator_ideal(M2, vp({"1"}, P)),
                   Ideal(P, {pp("x*y", P)})));
}

TEST_CASE("submodule membership") {
  const RingPtr P = RingSignature::make(7, {"x", "y"});
  const QRingPtr R = QuotientRing::make(P, Ideal(P, {pp("x*y", P)}));
  const PresentedModule M = PresentedModule::free_module(R, 2);
  const Submodule N(M, {vp({"x", "y"}, P)});
  CHECK(N.contains(vp({"x^2", "x*y"}, P)));   // x * generator
  CHECK(N.contains(vp({"x^2", "0"}, P)));     // xy is zero in R
  CHECK(N.contains(vp({"x*y", "y^2"}, P)));   // y * generator
  CHECK_FALSE(N.contains(vp({"x", "0"}, P)));
  CHECK_FALSE(N.contains(vp({"y", "x"}, P)));
  CHECK(N.contains(vec_zero(P, 2)));
}

TEST_CASE("quotients and the zero test") {
  const RingPtr P = RingSignature::make(3, {"x"});
  const QRingPtr R = QuotientRing::poly_ring(P);
  const PresentedModule M = PresentedModule::free_module(R, 2);
  CHECK_FALSE(is_zero_module(M));
  const PresentedModule Q1 =
      quotient_module(M, {vp({"1", "0"}, P), vp({"0", "1"}, P)});
  CHECK(is_zero_module(Q1));
  const PresentedModule Q2 =
      quotient_module(M, {vp({"x", "0"}, P), vp({"0", "1"}, P)});
  CHECK_FALSE(is_zero_module(Q2));
  CHECK(is_zero_in(Q2, vp({"x", "0"}, P)));
  CHECK(is_zero_in(Q2, vp({"2*x", "x^2 + 1"}, P)));
  CHECK_FALSE(is_zero_in(Q2, vp({"1", "0"}, P)));
  // quotient by everything including units
  CHECK(is_zero_module(quotient_module(M, {vp({"1", "x"}, P), vp({"0", "1"}, P)})));
}

TEST_CASE("caching is shared across copies") {
  const RingPtr P = RingSignature::make(3, {"x", "y"});
  const QRingPtr R = QuotientRing::make(P, Ideal(P, {pp("x*y", P)}));
  const PresentedModule M =
      PresentedModule::make(R, 2, {vp({"x", "y"}, P)});
  const PresentedModule copy = M;
  CHECK(&M.relation_gb() == &copy.relation_gb());
  CHECK(M.all_relations().size() == 3);  // one explicit + xy on each slot
}

TEST_CASE("rank validation") {
  const RingPtr P = RingSignature::make(3, {"x"});
  const QRingPtr R = QuotientRing::poly_ring(P);
  CHECK_THROWS_AS(PresentedModule::make(R, 2, {vp({"x"}, P)}), Error);
  const PresentedModule M = PresentedModule::free_module(R, 2);
  CHECK_THROWS_AS(module_nf(M, vp({"x"}, P)), Error);
  CHECK_THROWS_AS(QuotientRing::make(P, Ideal(P, {pp("1", P)})), Error);
}
