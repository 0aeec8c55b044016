#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <string>
#include <vector>

#include "groebner.hpp"
#include "ring.hpp"

using namespace ptc;

namespace {

Polynomial pp(const std::string& s, const RingPtr& R) { return parse_poly(s, R); }

std::vector<Polynomial> pl(const std::vector<std::string>& ss, const RingPtr& R) {
  std::vector<Polynomial> out;
  for (const auto& s : ss) out.push_back(pp(s, R));
  return out;
}

// Test-local division oracle, written independently of reduce_by/normal_form:
// different control flow (restart scan after each cancellation, explicit
// remainder accumulator polynomial).
Polynomial oracle_divide(Polynomial f, const std::vector<Polynomial>& basis) {
  const RingPtr R = f.ring();
  const std::uint32_t p = R->characteristic();
  Polynomial rem(R);
  while (!f.is_zero()) {
    bool cancelled = false;
    for (const auto& g : basis) {
      if (g.is_zero() || !g.lead().mono.divides(f.lead().mono)) continue;
      const std::uint64_t c = static_cast<std::uint64_t>(f.lead().coeff) *
                              mod_inverse(g.lead().coeff, p) % p;
      f = sub(f, mul_term(g, Term{f.lead().mono.divided_by(g.lead().mono),
                                  static_cast<std::uint32_t>(c)}));
      cancelled = true;
      break;
    }
    if (!cancelled) {
      rem = add(rem, Polynomial::monomial(R, f.lead().mono, f.lead().coeff));
      f = sub(f, Polynomial::monomial(R, f.lead().mono, f.lead().coeff));
    }
  }
  return rem;
}

Polynomial oracle_spoly(const Polynomial& f, const Polynomial& g) {
  const RingPtr R = f.ring();
  const std::uint32_t p = R->characteristic();
  const Monomial l = Monomial::lcm(f.lead().mono, g.lead().mono);
  const Polynomial a =
      mul_term(f, Term{l.divided_by(f.lead().mono),
                       mod_inverse(f.lead().coeff, p)});
  const Polynomial b =
      mul_term(g, Term{l.divided_by(g.lead().mono),
                       mod_inverse(g.lead().coeff, p)});
  return sub(a, b);
}

// Full Buchberger-criterion audit of a claimed reduced GB, via the oracle:
// every S-polynomial reduces to zero, every original generator reduces to
// zero, and the basis is monic, inter-reduced, and sorted ascending.
void audit_reduced_gb(const std::vector<Polynomial>& gb,
                      const std::vector<Polynomial>& gens,
                      const RingPtr& R) {
  for (std::size_t i = 0; i < gb.size(); ++i)
    for (std::size_t j = i + 1; j < gb.size(); ++j)
      CHECK(oracle_divide(oracle_spoly(gb[i], gb[j]), gb).is_zero());
  for (const auto& g : gens) CHECK(oracle_divide(g, gb).is_zero());
  for (std::size_t i = 0; i < gb.size(); ++i) {
    CHECK(gb[i].lead().coeff == 1);
    if (i + 1 < gb.size())
      CHECK(compare(gb[i].lead().mono, gb[i + 1].lead().mono, *R) < 0);
    for (std::size_t j = 0; j < gb.size(); ++j) {
      if (i == j) continue;
      for (const auto& t : gb[i].terms())
        CHECK_FALSE(gb[j].lead().mono.divides(t.mono));
    }
  }
}

}  // namespace

TEST_CASE("lex basis of (x^2+y, xy)") {
  // By hand: S(x^2+y, xy) = y(x^2+y) - x(xy) = y^2, and all further
  // S-polynomials reduce to zero; converse containment
  // y^2 = y(x^2+y) - x(xy).
  const RingPtr R = RingSignature::make(7, {"x", "y"}, TermOrder::Lex);
  const Ideal I(R, pl({"x^2 + y", "x*y"}, R));
  const auto& gb = I.groebner_basis();
  CHECK(gb == pl({"y^2", "x*y", "x^2 + y"}, R));
  audit_reduced_gb(gb, I.gens(), R);
}

TEST_CASE("grevlex basis of (x^3 - 2xy, x^2y - 2y^2 + x)") {
  // Worked by hand: S(f1,f2) = -x^2, then f1 - x*x^2 = -2xy,
  // f2 - y*x^2 = -2y^2 + x; remaining S-pairs reduce to zero, and the big
  // generators' leads x^3, x^2y are multiples of x^2, so the reduced basis is
  // {x^2, xy, y^2 - (1/2)x} with 1/2 = 4 in F_7, i.e. y^2 + 3x.
  const RingPtr R = RingSignature::make(7, {"x", "y"});
  const Ideal I(R, pl({"x^3 - 2*x*y", "x^2*y - 2*y^2 + x"}, R));
  const auto& gb = I.groebner_basis();
  CHECK(gb == pl({"y^2 + 3*x", "x*y", "x^2"}, R));
  audit_reduced_gb(gb, I.gens(), R);
}

TEST_CASE("normal forms and membership") {
  const RingPtr R = RingSignature::make(7, {"x", "y"});
  const Ideal I(R, pl({"x^3 - 2*x*y", "x^2*y - 2*y^2 + x"}, R));
  CHECK(ideal_contains(I, pp("x^2", R)));
  CHECK(ideal_contains(I, pp("3*x*y + 5*x^2", R)));
  CHECK_FALSE(ideal_contains(I, pp("x", R)));
  CHECK(normal_form(pp("y^2", R), I) == pp("4*x", R));  // y^2 = (y^2+3x) + 4x
  CHECK(normal_form(pp("0", R), I).is_zero());
  // normal form is a ring map on representatives: NF(f)=NF(g) iff f-g in I
  const Polynomial f = pp("y^2 + x*y + 1", R);
  const Polynomial g = add(f, pp("x^2*y - 2*y^2 + x", R));
  CHECK(normal_form(f, I) == normal_form(g, I));
}

TEST_CASE("membership agrees across monomial orders") {
  const std::vector<std::string> gens = {"x^3 - 2*x*y", "x^2*y - 2*y^2 + x"};
  const RingPtr Rg = RingSignature::make(7, {"x", "y"}, TermOrder::Grevlex);
  const RingPtr Rl = RingSignature::make(7, {"x", "y"}, TermOrder::Lex);
  const RingPtr Rd = RingSignature::make(7, {"x", "y"}, TermOrder::Grlex);
  const Ideal Ig(Rg, pl(gens, Rg)), Il(Rl, pl(gens, Rl)), Id(Rd, pl(gens, Rd));
  DetRng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Term> ts;
    for (int t = 0; t < 3; ++t)
      ts.push_back(Term{Monomial({static_cast<std::uint32_t>(rng.below(4)),
                                  static_cast<std::uint32_t>(rng.below(4))}),
                        static_cast<std::uint32_t>(1 + rng.below(6))});
    const Polynomial f = Polynomial::make(Rg, ts);
    const bool in_g = ideal_contains(Ig, f);
    CHECK(in_g == ideal_contains(Il, transport(f, Rl)));
    CHECK(in_g == ideal_contains(Id, transport(f, Rd)));
  }
}

TEST_CASE("random ideals pass the oracle audit") {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const RingPtr R = RingSignature::make(p, {"x", "y", "z"});
    DetRng rng(1000 + p);
    for (int trial = 0; trial < 4; ++trial) {
      std::vector<Polynomial> gens;
      const int ngens = 2 + static_cast<int>(rng.below(2));
      for (int g = 0; g < ngens; ++g) {
        std::vector<Term> ts;
        const int nterms = 1 + static_cast<int>(rng.below(3));
        for (int t = 0; t < nterms; ++t)
          ts.push_back(
              Term{Monomial({static_cast<std::uint32_t>(rng.below(3)),
                             static_cast<std::uint32_t>(rng.below(3)),
                             static_cast<std::uint32_t>(rng.below(2))}),
                   static_cast<std::uint32_t>(1 + rng.below(p - 1))});
        gens.push_back(Polynomial::make(R, ts));
      }
      const Ideal I(R, gens);
      audit_reduced_gb(I.groebner_basis(), I.gens(), R);
    }
  }
}

TEST_CASE("groebner determinism and caching") {
  const RingPtr R = RingSignature::make(3, {"y1", "y2", "z"});
  const Ideal I(R, pl({"y1*z", "y2*z"}, R));
  CHECK_FALSE(I.gb_computed());
  const auto gb1 = I.groebner_basis();
  CHECK(I.gb_computed());
  const Ideal J(R, pl({"y1*z", "y2*z"}, R));
  CHECK(gb1 == J.groebner_basis());
  const Ideal copy = I;  // shares the cache
  CHECK(copy.gb_computed());
}

TEST_CASE("colon ideals") {
  const RingPtr R = RingSignature::make(3, {"y1", "y2", "z"});
  const Ideal I(R, pl({"y1*z", "y2*z"}, R));
  // (y1 z, y2 z) = z * (y1, y2) with z a nonzerodivisor, so (I : z) = (y1, y2)
  CHECK(same_ideal(colon_ideal(I, pp("z", R)), Ideal(R, pl({"y1", "y2"}, R))));
  // (I : y1) = (z): g*y1 in z(y1,y2) forces z | g
  CHECK(same_ideal(colon_ideal(I, pp("y1", R)), Ideal(R, pl({"z"}, R))));
  // colon by a unit returns I itself
  CHECK(same_ideal(colon_ideal(I, pp("2", R)), I));
  // ((x) : x) = (1)
  const RingPtr R2 = RingSignature::make(5, {"x", "y"});
  CHECK(is_unit_ideal(colon_ideal(Ideal(R2, pl({"x"}, R2)), pp("x", R2))));
  // ((0) : f) = (0) in a domain
  CHECK(colon_ideal(Ideal(R, {}), pp("z", R)).is_zero());
  CHECK_THROWS_AS(colon_ideal(I, pp("0", R)), Error);
}

TEST_CASE("intersections") {
  const RingPtr R = RingSignature::make(3, {"y1", "y2", "z"});
  const Ideal Z(R, pl({"z"}, R));
  const Ideal Y(R, pl({"y1", "y2"}, R));
  CHECK(same_ideal(intersect_ideals(Z, Y), Ideal(R, pl({"y1*z", "y2*z"}, R))));

  const RingPtr S = RingSignature::make(5, {"x", "y", "z"});
  // (x) cap (y) = (xy); (x,y) cap (y,z) = (y, xz)
  CHECK(same_ideal(intersect_ideals(Ideal(S, pl({"x"}, S)), Ideal(S, pl({"y"}, S))),
                   Ideal(S, pl({"x*y"}, S))));
  CHECK(same_ideal(intersect_ideals(Ideal(S, pl({"x", "y"}, S)),
                                    Ideal(S, pl({"y", "z"}, S))),
                   Ideal(S, pl({"y", "x*z"}, S))));
  CHECK(intersect_ideals(Ideal(S, {}), Ideal(S, pl({"x"}, S))).is_zero());
}

TEST_CASE("bracket powers") {
  const RingPtr R = RingSignature::make(3, {"y1", "y2", "z"});
  const Ideal I(R, pl({"y1*z", "y2*z", "y1 + y2"}, R));
  const Ideal I3 = bracket_power_ideal(I, 1);
  CHECK(I3.gens() == pl({"y1^3*z^3", "y2^3*z^3", "y1^3 + y2^3"}, R));
  CHECK(bracket_power_ideal(I, 0).gens() == I.gens());

  // cross-check against the colon: (I^[q] : f^q) = (I : f)^[q] holds in a
  // polynomial ring (Frobenius is flat); both sides go through independent
  // colon computations here.
  DetRng rng(77);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<Term> ts;
    for (int t = 0; t < 2; ++t)
      ts.push_back(Term{Monomial({static_cast<std::uint32_t>(rng.below(2)),
                                  static_cast<std::uint32_t>(rng.below(2)),
                                  static_cast<std::uint32_t>(rng.below(2))}),
                        static_cast<std::uint32_t>(1 + rng.below(2))});
    const Polynomial f = Polynomial::make(R, ts);
    if (f.is_zero()) continue;
    const Ideal lhs = colon_ideal(bracket_power_ideal(I, 1), frobenius_pow(f, 1));
    const Ideal rhs = bracket_power_ideal(colon_ideal(I, f), 1);
    CHECK(same_ideal(lhs, rhs));
  }
}

TEST_CASE("radical membership") {
  const RingPtr R = RingSignature::make(7, {"x", "y"});
  const Ideal I(R, pl({"x^2", "x*y"}, R));  // radical is (x)
  CHECK(radical_membership(pp("x", R), I));
  CHECK_FALSE(ideal_contains(I, pp("x", R)));
  CHECK_FALSE(radical_membership(pp("y", R), I));
  CHECK_FALSE(radical_membership(pp("x + y", R), I));
  CHECK(radical_membership(pp("x^2 + x*y", R), I));
  CHECK(radical_membership(pp("0", R), I));

  const Ideal cube(R, pl({"x^3 + 3*x^2*y + 3*x*y^2 + y^3"}, R));  // ((x+y)^3)
  CHECK(radical_membership(pp("x + y", R), cube));
  CHECK_FALSE(radical_membership(pp("x", R), cube));
  CHECK_FALSE(radical_membership(pp("x", R), Ideal(R, {})));
}

TEST_CASE("krull dimension") {
  const RingPtr R = RingSignature::make(3, {"y1", "y2", "z"});
  CHECK(krull_dimension(Ideal(R, {})) == 3);
  // V(y1 z, y2 z) = V(z) U V(y1,y2): components of dim 2 and 1
  CHECK(krull_dimension(Ideal(R, pl({"y1*z", "y2*z"}, R))) == 2);
  CHECK(krull_dimension(Ideal(R, pl({"y1", "y2", "z"}, R))) == 0);

  const RingPtr R2 = RingSignature::make(7, {"x", "y"});
  CHECK(krull_dimension(Ideal(R2, pl({"x^2 + y"}, R2))) == 1);
  CHECK_THROWS_AS(krull_dimension(Ideal(R2, pl({"x", "y", "1"}, R2))), Error);

  const RingPtr R4 = RingSignature::make(7, {"x", "y", "u", "v"});
  CHECK(krull_dimension(Ideal(R4, pl({"x^3*y^3 + u^3 + v^3"}, R4))) == 3);

  // order-independence
  const RingPtr Rl = RingSignature::make(3, {"y1", "y2", "z"}, TermOrder::Lex);
  CHECK(krull_dimension(Ideal(Rl, pl({"y1*z", "y2*z"}, Rl))) == 2);
}

TEST_CASE("exact division") {
  const RingPtr R = RingSignature::make(7, {"x", "y"});
  CHECK(exact_divide(pp("x^2 - y^2", R), pp("x + y", R)) == pp("x - y", R));
  CHECK(exact_divide(pp("0", R), pp("x + y", R)).is_zero());
  CHECK(exact_divide(pp("3*x^2*y", R), pp("5*x*y", R)) == pp("2*x", R));
  CHECK_THROWS_AS(exact_divide(pp("x^2 + y", R), pp("x", R)), Error);
  CHECK_THROWS_AS(exact_divide(pp("x", R), pp("0", R)), Error);
}

TEST_CASE("pair budget") {
  const RingPtr R = RingSignature::make(7, {"x", "y"});
  try {
    const Ideal I(R, pl({"x^2 + y", "x*y"}, R), 0);
    I.groebner_basis();
    FAIL("budget of zero must throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::Budget);
  }
  // a single generator needs no pairs at all
  const Ideal single(R, pl({"x^2 + y"}, R), 0);
  CHECK(single.groebner_basis().size() == 1);
}

TEST_CASE("certified minimal primes") {
  const RingPtr R = RingSignature::make(3, {"y1", "y2", "z"});
  const Ideal I(R, pl({"y1*z", "y2*z"}, R));
  const Ideal Pz(R, pl({"z"}, R));
  const Ideal Py(R, pl({"y1", "y2"}, R));

  const auto cmp = CertifiedMinimalPrimes::certify(I, {Pz, Py});
  REQUIRE(cmp.primes().size() == 2);
  CHECK(cmp.primes()[0].flag == PrimalityFlag::Structural);
  CHECK(cmp.primes()[1].flag == PrimalityFlag::Structural);
  CHECK_FALSE(cmp.has_asserted());

  // missing component: intersection (z) escapes the radical
  CHECK_THROWS_AS(CertifiedMinimalPrimes::certify(I, {Pz}), Error);
  // candidate not containing the ideal
  CHECK_THROWS_AS(CertifiedMinimalPrimes::certify(I, {Pz, Ideal(R, pl({"y1"}, R))}),
                  Error);
  // redundant component: (y1,y2) inside (y1,y2,z)
  CHECK_THROWS_AS(
      CertifiedMinimalPrimes::certify(I, {Pz, Py, Ideal(R, pl({"y1", "y2", "z"}, R))}),
      Error);
  CHECK_THROWS_AS(CertifiedMinimalPrimes::certify(I, {}), Error);

  // a non-linear hypersurface can only be asserted prime
  const RingPtr R4 = RingSignature::make(7, {"x", "y", "u", "v"});
  const Ideal H(R4, pl({"x^3*y^3 + u^3 + v^3"}, R4));
  const auto cmp2 = CertifiedMinimalPrimes::certify(H, {H});
  CHECK(cmp2.primes()[0].flag == PrimalityFlag::Asserted);
  CHECK(cmp2.has_asserted());

  // the zero ideal of the polynomial ring is structurally prime
  const auto cmp3 = CertifiedMinimalPrimes::certify(Ideal(R, {}), {Ideal(R, {})});
  CHECK(cmp3.primes()[0].flag == PrimalityFlag::Structural);
}
