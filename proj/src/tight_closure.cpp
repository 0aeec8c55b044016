#include "tight_closure.hpp"

#include <algorithm>
#include <utility>

namespace ptc {

std::string to_string(Containment c) {
  switch (c) {
    case Containment::In: return "In";
    case Containment::Out: return "Out";
    case Containment::Unknown: return "Unknown";
  }
  return "?";
}

std::string to_string(ClosureRule r) {
  switch (r) {
    case ClosureRule::Member: return "Member";
    case ClosureRule::FrobeniusClosure: return "FrobeniusClosure";
    case ClosureRule::RegularColonRule: return "RegularColonRule";
    case ClosureRule::MinimalPrimeReduction: return "MinimalPrimeReduction";
    case ClosureRule::TestElementScan: return "TestElementScan";
    case ClosureRule::BoundedScan: return "BoundedScan";
  }
  return "?";
}

RingDesc describe_ring(const RingSignature& sig) {
  return RingDesc{sig.characteristic(), sig.vars(), to_string(sig.order())};
}

void merge_assumptions(std::vector<Assumption>& into,
                       const std::vector<Assumption>& more) {
  for (const auto& a : more) {
    bool seen = false;
    for (const auto& b : into)
      if (a.kind == b.kind && a.detail == b.detail) {
        seen = true;
        break;
      }
    if (!seen) into.push_back(a);
  }
}

std::string format_ideal(const Ideal& I) {
  const auto& gb = I.groebner_basis();
  if (gb.empty()) return "(0)";
  std::string out = "(";
  for (std::size_t i = 0; i < gb.size(); ++i) {
    if (i) out += ", ";
    out += format_poly(gb[i]);
  }
  return out + ")";
}

bool in_ring_circ(const CertifiedMinimalPrimes& primes, const Polynomial& c) {
  if (c.is_zero()) return false;
  for (const auto& cp : primes.primes())
    if (ideal_contains(cp.prime, c)) return false;
  return true;
}

bool certifiably_regular(const QuotientRing& R) {
  for (const auto& g : R.defining().groebner_basis())
    for (const auto& t : g.terms())
      if (t.mono.degree() > 1) return false;
  return true;
}

std::vector<Assumption> primality_assumptions(const CertifiedMinimalPrimes& p) {
  std::vector<Assumption> out;
  for (const auto& cp : p.primes())
    if (cp.flag == PrimalityFlag::Asserted)
      out.push_back(Assumption{
          "asserted-prime",
          "primality of " + format_ideal(cp.prime) + " is asserted, not certified"});
  return out;
}

Fact nf_fact(bool zero, const PresentedModule& ambient,
             const std::vector<VecPoly>& subgens, const VecPoly& element,
             std::string note) {
  Fact f;
  f.claim = zero ? "nf-zero" : "nf-nonzero";
  f.ring = describe_ring(*ambient.ring()->poly());
  f.rank = ambient.rank();
  auto push_row = [&](const VecPoly& v) {
    std::vector<std::string> row;
    for (const auto& c : v) row.push_back(format_poly(c));
    f.rows.push_back(std::move(row));
  };
  for (const auto& g : subgens) push_row(g);
  for (const auto& g : ambient.all_relations()) push_row(g);
  for (const auto& c : element) f.element.push_back(format_poly(c));
  f.note = std::move(note);
  return f;
}

Fact colon_zero_fact(const PresentedModule& ambient, const Polynomial& f,
                     std::string note) {
  Fact out;
  out.claim = "colon-zero";
  out.ring = describe_ring(*ambient.ring()->poly());
  out.rank = ambient.rank();
  for (const auto& g : ambient.all_relations()) {
    std::vector<std::string> row;
    for (const auto& c : g) row.push_back(format_poly(c));
    out.rows.push_back(std::move(row));
  }
  out.element.push_back(format_poly(f));
  out.note = std::move(note);
  return out;
}

FrobeniusLadder::FrobeniusLadder(PresentedModule M, std::vector<VecPoly> ngens)
    : M_(std::move(M)), ngens_(std::move(ngens)) {
  for (const auto& g : ngens_)
    if (g.size() != M_.rank())
      fail(Errc::SignatureMismatch, "submodule generator rank mismatch");
  // A rank-1 module with explicit relations poses the same closure question
  // as an ideal: z in N^*_{R/I} iff z in (N + I)^*_R, and the bracket-power
  // membership tests coincide term for term (explicit rows are powered in
  // both pictures). Normalizing keeps the prime-reduction rule applicable.
  if (M_.rank() == 1 && !M_.relations().empty()) {
    for (const auto& r : M_.relations()) ngens_.push_back(r);
    M_ = PresentedModule::free_module(M_.ring(), 1, M_.pair_budget());
  }
}

const PresentedModule& FrobeniusLadder::module_at(unsigned e) {
  while (modules_.size() <= e) {
    const unsigned lvl = static_cast<unsigned>(modules_.size());
    modules_.push_back(lvl == 0 ? M_ : frobenius_module(M_, lvl));
  }
  return modules_[e];
}

const Submodule& FrobeniusLadder::submodule_at(unsigned e) {
  module_at(e);
  while (subs_.size() <= e) {
    const unsigned lvl = static_cast<unsigned>(subs_.size());
    subs_.push_back(Submodule(modules_[lvl], bracket_gens(ngens_, lvl)));
  }
  return subs_[e];
}

TCEnv make_env(QRingPtr ring, std::vector<Ideal> prime_candidates,
               std::optional<TestElementAssumption> test_element,
               unsigned max_e) {
  if (!ring) fail(Errc::InvalidArgument, "environment needs a ring");
  if (prime_candidates.empty()) {
    if (!ring->is_polynomial())
      fail(Errc::Precondition,
           "minimal prime candidates are required for a proper quotient ring");
    prime_candidates.push_back(Ideal(ring->poly(), {}));
  }
  TCEnv env;
  env.primes = CertifiedMinimalPrimes::certify(ring->defining(), prime_candidates);
  env.ring = std::move(ring);
  env.test_element = std::move(test_element);
  env.max_e = max_e;
  if (env.test_element) {
    require_same_ring(env.ring->poly(), env.test_element->c.ring());
    if (!in_ring_circ(env.primes, env.test_element->c))
      fail(Errc::Precondition,
           "test element lies in a certified minimal prime");
  }
  return env;
}

void require_env_module(const TCEnv& env, const PresentedModule& M) {
  require_same_ring(env.ring->poly(), M.ring()->poly());
  if (!same_ideal(env.ring->defining(), M.ring()->defining()))
    fail(Errc::Precondition, "environment ring does not match the module ring");
}

namespace {

Assumption test_element_assumption(const TestElementAssumption& te,
                                   std::uint32_t p) {
  return Assumption{"weak-test-element",
                    "c = " + format_poly(te.c) + ", q0 = " +
                        std::to_string(q_power(p, te.e0)) + ", provenance " +
                        te.provenance};
}

}  // namespace

ClosureVerdict tc_membership(const TCEnv& env, FrobeniusLadder& ladder,
                             const VecPoly& z) {
  const PresentedModule& M = ladder.base();
  require_env_module(env, M);
  if (z.size() != M.rank())
    fail(Errc::SignatureMismatch, "element rank mismatch");
  const std::uint32_t p = env.ring->poly()->characteristic();
  if (env.test_element && !in_ring_circ(env.primes, env.test_element->c))
    fail(Errc::Precondition, "test element lies in a certified minimal prime");

  if (ladder.submodule_at(0).contains(z)) {
    ClosureVerdict v;
    v.tag = Containment::In;
    v.rule = ClosureRule::Member;
    v.e = 0;
    v.q = 1;
    v.detail = "element lies in the submodule";
    v.facts.push_back(nf_fact(true, ladder.module_at(0), ladder.ngens(), z,
                              "membership at level e=0"));
    return v;
  }

  for (unsigned e = 1; e <= env.max_e; ++e) {
    const VecPoly zq = frobenius_vec(z, e);
    if (ladder.submodule_at(e).contains(zq)) {
      ClosureVerdict v;
      v.tag = Containment::In;
      v.rule = ClosureRule::FrobeniusClosure;
      v.e = e;
      v.q = q_power(p, e);
      v.detail = "z^q lies in the bracket power at q = " + std::to_string(v.q);
      v.facts.push_back(nf_fact(true, ladder.module_at(e),
                                ladder.submodule_at(e).gens(), zq,
                                "frobenius closure at q=" + std::to_string(v.q)));
      return v;
    }
  }

  if (certifiably_regular(*env.ring)) {
    ClosureVerdict v;
    v.tag = Containment::Out;
    v.rule = ClosureRule::RegularColonRule;
    v.e = 0;
    v.q = 1;
    v.detail =
        "the ring is a polynomial ring (affine-linear defining relations), "
        "where tight closure adds nothing";
    v.facts.push_back(nf_fact(false, ladder.module_at(0), ladder.ngens(), z,
                              "regular ring, membership fails at e=0"));
    return v;
  }

  if (M.rank() == 1 && M.relations().empty()) {
    for (const auto& cp : env.primes.primes()) {
      if (same_ideal(cp.prime, env.ring->defining())) continue;
      const QRingPtr Rq = QuotientRing::make(env.ring->poly(), cp.prime);
      TCEnv sub;
      sub.ring = Rq;
      sub.primes = CertifiedMinimalPrimes::certify(cp.prime, {cp.prime});
      sub.max_e = env.max_e;
      FrobeniusLadder sublad(
          PresentedModule::free_module(Rq, 1, M.pair_budget()),
          ladder.ngens());
      const ClosureVerdict inner = tc_membership(sub, sublad, z);
      if (inner.tag != Containment::Out) continue;
      ClosureVerdict v;
      v.tag = Containment::Out;
      v.rule = ClosureRule::MinimalPrimeReduction;
      v.e = inner.e;
      v.q = inner.q;
      v.detail = "image fails closure membership modulo the minimal prime " +
                 format_ideal(cp.prime);
      v.facts = inner.facts;
      v.assumptions.push_back(Assumption{
          "standard-fact",
          "tight closure maps into tight closure modulo every minimal prime"});
      if (cp.flag == PrimalityFlag::Asserted)
        v.assumptions.push_back(Assumption{
            "asserted-prime", "primality of " + format_ideal(cp.prime) +
                                  " is asserted, not certified"});
      merge_assumptions(v.assumptions, inner.assumptions);
      return v;
    }
  }

  if (env.test_element) {
    const TestElementAssumption& te = *env.test_element;
    for (unsigned e = te.e0; e <= env.max_e; ++e) {
      const VecPoly czq = vec_scale(te.c, frobenius_vec(z, e));
      if (!ladder.submodule_at(e).contains(czq)) {
        ClosureVerdict v;
        v.tag = Containment::Out;
        v.rule = ClosureRule::TestElementScan;
        v.e = e;
        v.q = q_power(p, e);
        v.detail = "c*z^q escapes the bracket power at q = " +
                   std::to_string(v.q);
        v.facts.push_back(nf_fact(false, ladder.module_at(e),
                                  ladder.submodule_at(e).gens(), czq,
                                  "q=" + std::to_string(v.q) +
                                      ", c=" + format_poly(te.c)));
        v.assumptions.push_back(test_element_assumption(te, p));
        merge_assumptions(v.assumptions, primality_assumptions(env.primes));
        return v;
      }
    }
  }

  ClosureVerdict v;
  v.tag = Containment::Unknown;
  v.rule = ClosureRule::BoundedScan;
  v.bound_q = q_power(p, env.max_e);
  v.detail = env.test_element
                 ? "every scanned level kept c*z^q inside the bracket power"
                 : "no test element available; bounded checks exhausted";
  return v;
}

ClosureVerdict tc_membership(const TCEnv& env, const PresentedModule& M,
                             const std::vector<VecPoly>& ngens,
                             const VecPoly& z) {
  FrobeniusLadder ladder(M, ngens);
  return tc_membership(env, ladder, z);
}

ClosureVerdict tc_membership_checked(const TCEnv& env, FrobeniusLadder& ladder,
                                     const VecPoly& z) {
  const ClosureVerdict v = tc_membership(env, ladder, z);
  if (v.tag == Containment::In && env.test_element) {
    const TestElementAssumption& te = *env.test_element;
    const std::uint32_t p = env.ring->poly()->characteristic();
    for (unsigned e = te.e0; e <= env.max_e; ++e) {
      if (q_power(p, e) < v.q) continue;  // scan failures below q are allowed
      const VecPoly czq = vec_scale(te.c, frobenius_vec(z, e));
      if (!ladder.submodule_at(e).contains(czq))
        fail(Errc::Internal,
             "closure lattice conflict: In and Out for the same query");
    }
  }
  return v;
}

FCAnswer frobenius_closure_membership(FrobeniusLadder& ladder, const VecPoly& z,
                                      unsigned max_e) {
  const std::uint32_t p =
      ladder.base().ring()->poly()->characteristic();
  for (unsigned e = 0; e <= max_e; ++e) {
    const VecPoly zq = frobenius_vec(z, e);
    if (ladder.submodule_at(e).contains(zq)) {
      FCAnswer a;
      a.yes = true;
      a.e = e;
      a.q = q_power(p, e);
      a.fact = nf_fact(true, ladder.module_at(e), ladder.submodule_at(e).gens(),
                       zq, "frobenius closure at q=" + std::to_string(a.q));
      return a;
    }
  }
  FCAnswer a;
  a.q = q_power(p, max_e);
  return a;
}

ZeroClosureApprox tc_zero_submodule_approx(const TCEnv& env,
                                           const PresentedModule& M,
                                           const std::vector<VecPoly>& extra) {
  require_env_module(env, M);
  const RingPtr& P = M.ring()->poly();
  std::vector<VecPoly> pool;
  auto push = [&](const VecPoly& v) {
    VecPoly nf = module_nf(M, v);
    if (vec_is_zero(nf)) return;
    for (const auto& w : pool)
      if (w == nf) return;
    pool.push_back(std::move(nf));
  };
  for (std::size_t j = 0; j < P->nvars(); ++j)
    for (const auto& g :
         colon_submodule_gens(M, {}, Polynomial::variable(P, j)))
      push(g);
  for (std::size_t i = 0; i < M.rank(); ++i) push(vec_basis(P, M.rank(), i));
  for (const auto& v : extra) push(v);

  ZeroClosureApprox out;
  FrobeniusLadder ladder(M, {});
  for (const auto& w : pool) {
    ClosureVerdict v = tc_membership(env, ladder, w);
    if (v.tag == Containment::In) out.inner.push_back(w);
    out.outer.push_back(CandidateVerdict{w, std::move(v)});
  }
  return out;
}

}  // namespace ptc
