#include "phantom.hpp"

#include <algorithm>
#include <utility>

namespace ptc {

std::string to_string(PhantomTag t) {
  switch (t) {
    case PhantomTag::CertifiedZerodivisor: return "CertifiedZerodivisor";
    case PhantomTag::NotRefuted: return "NotRefuted";
  }
  return "?";
}

std::string to_string(PhantomEvidence e) {
  switch (e) {
    case PhantomEvidence::ExactRegular: return "exact-regular";
    case PhantomEvidence::CertifiedContainment: return "certified-containment";
    case PhantomEvidence::HasUnknowns: return "has-unknowns";
  }
  return "?";
}

std::string to_string(TailStatus t) {
  switch (t) {
    case TailStatus::CertifiedDepthZero: return "certified-depth-0";
    case TailStatus::Bounded: return "bounded";
  }
  return "?";
}

namespace {

bool has_constant_term(const Polynomial& f) {
  for (const auto& t : f.terms())
    if (t.mono.is_one()) return true;
  return false;
}

std::vector<VecPoly> scaled_basis_rows(const Polynomial& x,
                                       const PresentedModule& M) {
  const RingPtr& P = M.ring()->poly();
  std::vector<VecPoly> rows;
  for (std::size_t i = 0; i < M.rank(); ++i)
    rows.push_back(vec_scale(x, vec_basis(P, M.rank(), i)));
  return rows;
}

}  // namespace

PhantomRegVerdict phantom_regular(const TCEnv& env, const Polynomial& x,
                                  const PresentedModule& M) {
  require_env_module(env, M);
  require_same_ring(env.ring->poly(), x.ring());
  const Polynomial xr = env.ring->nf(x);
  if (has_constant_term(xr))
    fail(Errc::Precondition, "element is not in the maximal ideal");
  if (is_zero_module(quotient_module(M, scaled_basis_rows(x, M))))
    fail(Errc::Precondition, "xM = M: element acts as a unit on the module");

  const std::uint32_t p = env.ring->poly()->characteristic();
  PhantomRegVerdict out;
  bool any_gen = false;
  bool any_unknown = false;
  for (unsigned e = 0; e <= env.max_e; ++e) {
    const PresentedModule Fe = frobenius_module(M, e);
    const Polynomial xq = frobenius_pow(x, e);
    const std::vector<VecPoly> gens = colon_submodule_gens(Fe, {}, xq);
    if (gens.empty()) continue;
    FrobeniusLadder ladder(Fe, {});
    for (const auto& g : gens) {
      any_gen = true;
      const ClosureVerdict v = tc_membership(env, ladder, g);
      if (v.tag == Containment::Out) {
        out.tag = PhantomTag::CertifiedZerodivisor;
        out.e = e;
        out.witness = g;
        out.facts.push_back(
            nf_fact(true, Fe, {}, vec_scale(xq, g),
                    "x^q * witness vanishes at q=" + std::to_string(q_power(p, e))));
        for (const auto& f : v.facts) out.facts.push_back(f);
        out.assumptions = v.assumptions;
        out.out_certificate = v;
        return out;
      }
      if (v.tag == Containment::Unknown) any_unknown = true;
    }
  }
  out.tag = PhantomTag::NotRefuted;
  out.evidence = !any_gen ? PhantomEvidence::ExactRegular
                          : (any_unknown ? PhantomEvidence::HasUnknowns
                                         : PhantomEvidence::CertifiedContainment);
  out.bound_e = env.max_e;
  out.bound_q = q_power(p, env.max_e);
  return out;
}

std::vector<PhantomRegVerdict> phantom_sequence_check(
    const TCEnv& env, const std::vector<Polynomial>& xs,
    const PresentedModule& M) {
  std::vector<PhantomRegVerdict> out;
  PresentedModule cur = M;
  for (const auto& x : xs) {
    PhantomRegVerdict v = phantom_regular(env, x, cur);
    const bool stop = v.tag == PhantomTag::CertifiedZerodivisor;
    out.push_back(std::move(v));
    if (stop) break;
    cur = quotient_module(cur, scaled_basis_rows(x, cur));
  }
  return out;
}

std::vector<Polynomial> depth_candidate_pool(const QRingPtr& R,
                                             const PoolConfig& cfg) {
  const RingPtr& P = R->poly();
  const std::uint32_t p = P->characteristic();
  const std::size_t n = P->nvars();
  std::vector<Polynomial> pool;
  auto push = [&](const Polynomial& f) {
    Polynomial nf = R->nf(f);
    if (nf.is_zero() || has_constant_term(nf)) return;
    nf = monic(nf);
    for (const auto& g : pool)
      if (g == nf) return;
    pool.push_back(std::move(nf));
  };
  for (std::size_t j = 0; j < n; ++j) push(Polynomial::variable(P, j));
  for (const auto& s : cfg.supplied) push(s);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Polynomial xi = Polynomial::variable(P, i);
      const Polynomial xj = Polynomial::variable(P, j);
      push(add(xi, xj));
      push(add(xi, scale(xj, p - 1)));
    }
  DetRng rng(cfg.seed);
  unsigned attempts = 0;
  const unsigned max_attempts = 8 * cfg.pool_size + 32;
  while (pool.size() < cfg.pool_size && attempts < max_attempts) {
    ++attempts;
    Polynomial f = Polynomial::constant(P, 0);
    for (std::size_t j = 0; j < n; ++j) {
      const std::uint64_t c = rng.below(p);
      if (c) f = add(f, scale(Polynomial::variable(P, j),
                              static_cast<std::uint32_t>(c)));
    }
    push(f);
  }
  return pool;
}

DepthReport phantom_depth(const TCEnv& env, const PresentedModule& M,
                          const PoolConfig& cfg) {
  require_env_module(env, M);
  if (is_zero_module(M))
    fail(Errc::Precondition, "phantom depth of the zero module");
  const std::vector<Polynomial> pool = depth_candidate_pool(env.ring, cfg);
  if (pool.empty()) fail(Errc::Precondition, "empty candidate pool");

  DepthReport rep;
  rep.assumptions.push_back(Assumption{
      "avoidance",
      "the graded model is assumed to satisfy avoidance for minimal primes"});
  PresentedModule cur = M;
  const std::size_t cap = env.ring->poly()->nvars();
  while (true) {
    bool extended = false;
    bool all_certified = true;
    std::vector<PhantomRegVerdict> refutations;
    for (const auto& cand : pool) {
      PhantomRegVerdict v;
      try {
        v = phantom_regular(env, cand, cur);
      } catch (const Error&) {
        all_certified = false;  // candidate inapplicable, tail not certified
        continue;
      }
      if (v.tag == PhantomTag::NotRefuted) {
        // only evidence-backed candidates extend the sequence: an
        // inconclusive scan does not establish phantom regularity and must
        // not inflate the lower bound
        if (v.evidence == PhantomEvidence::HasUnknowns) {
          all_certified = false;
          continue;
        }
        rep.sequence.push_back(DepthStep{cand, v.evidence});
        cur = quotient_module(cur, scaled_basis_rows(cand, cur));
        extended = true;
        break;
      }
      merge_assumptions(rep.assumptions, v.assumptions);
      refutations.push_back(std::move(v));
    }
    if (!extended) {
      rep.tail = all_certified ? TailStatus::CertifiedDepthZero
                               : TailStatus::Bounded;
      rep.tail_refutations = std::move(refutations);
      break;
    }
    if (rep.sequence.size() > cap) {  // defensive: cannot exceed nvars honestly
      rep.tail = TailStatus::Bounded;
      break;
    }
  }
  rep.lower_bound = static_cast<int>(rep.sequence.size());
  return rep;
}

int minheight(const QuotientRing& R, const CertifiedMinimalPrimes& primes) {
  if (!same_ideal(primes.ideal(), R.defining()))
    fail(Errc::Precondition,
         "minimal primes are not certified for this ring's defining ideal");
  int best = -1;
  for (const auto& cp : primes.primes()) {
    const int d = static_cast<int>(krull_dimension(cp.prime));
    if (best < 0 || d < best) best = d;
  }
  return best;
}

std::optional<ZerodivisorWitness> phantom_zerodivisor_witness(
    const TCEnv& env, const Polynomial& x, const PresentedModule& M) {
  require_env_module(env, M);
  const Polynomial xr = env.ring->nf(x);
  for (unsigned e = 0; e <= env.max_e; ++e) {
    const PresentedModule Fe = frobenius_module(M, e);
    const Polynomial xq = frobenius_pow(x, e);
    std::vector<VecPoly> candidates = colon_submodule_gens(Fe, {}, xr);
    for (auto& g : colon_submodule_gens(Fe, {}, xq)) {
      bool seen = false;
      for (const auto& h : candidates)
        if (h == g) {
          seen = true;
          break;
        }
      if (!seen) candidates.push_back(std::move(g));
    }
    if (candidates.empty()) continue;
    FrobeniusLadder ladder(Fe, {});
    for (const auto& z : candidates) {
      const ClosureVerdict in_v =
          tc_membership(env, ladder, module_nf(Fe, vec_scale(xr, z)));
      if (in_v.tag != Containment::In) continue;
      const ClosureVerdict out_v = tc_membership(env, ladder, z);
      if (out_v.tag == Containment::Out)
        return ZerodivisorWitness{e, z, in_v, out_v};
    }
  }
  return std::nullopt;
}

AssChainReport ass_chain_probe(const TCEnv& env, const PresentedModule& M,
                               const VecPoly& z) {
  require_env_module(env, M);
  FrobeniusLadder lz(M, {});
  const ClosureVerdict zv = tc_membership(env, lz, z);
  if (zv.tag != Containment::Out)
    fail(Errc::Precondition, "z lacks an Out certificate against 0^*");

  const ZeroClosureApprox a0 = tc_zero_submodule_approx(env, M);
  const PresentedModule F1 = frobenius_module(M, 1);
  const ZeroClosureApprox a1 = tc_zero_submodule_approx(env, F1);

  AssChainReport rep;
  rep.K = colon_ideal_of_element(M, a0.inner, z);
  rep.K1 = colon_ideal_of_element(F1, a1.inner, frobenius_vec(z, 1));
  rep.assumptions = zv.assumptions;

  const Ideal Kp = bracket_power_ideal(rep.K, 1);
  bool ok = true;
  for (const auto& g : Kp.groebner_basis()) {
    const bool holds = ideal_contains(rep.K1, g);
    ok = ok && holds;
    rep.bracket_in_K1.push_back({format_poly(g), holds});
  }
  for (const auto& g : rep.K1.groebner_basis()) {
    const bool holds = ideal_contains(rep.K, g);
    ok = ok && holds;
    rep.K1_in_K.push_back({format_poly(g), holds});
  }
  rep.ok = ok;
  return rep;
}

}  // namespace ptc
