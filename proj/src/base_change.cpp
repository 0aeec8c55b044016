#include "base_change.hpp"

#include "frobenius.hpp"

#include <algorithm>
#include <set>

namespace ptc {

namespace {

bool name_taken(const RingPtr& P, const std::string& name) {
  return P->var_index(name).has_value();
}

void require_matching_ring(const QRingPtr& a, const QRingPtr& b,
                           const std::string& what) {
  require_same_ring(a->poly(), b->poly());
  if (!same_ideal(a->defining(), b->defining()))
    fail(Errc::Precondition, what + ": presented quotients differ");
}

// Total signature = base variables then fiber variables, same order/char.
RingPtr total_signature(const RingPtr& base,
                        const std::vector<std::string>& fiber_vars) {
  std::vector<std::string> vars = base->vars();
  for (const auto& v : fiber_vars) vars.push_back(v);
  return RingSignature::make(base->characteristic(), std::move(vars),
                             base->order());
}

std::vector<VecPoly> scaled_basis(const Polynomial& f,
                                  const PresentedModule& M) {
  std::vector<VecPoly> rows;
  const RingPtr& P = M.ring()->poly();
  for (std::size_t i = 0; i < M.rank(); ++i)
    rows.push_back(vec_scale(f, vec_basis(P, M.rank(), i)));
  return rows;
}

// Greedy exact-regular-sequence search over the fiber ring; the fiber is a
// Cohen-Macaulay hypersurface, so a sequence of the full expected length
// must turn up or the extension is refused.
std::vector<Polynomial> exhibit_fiber_sequence(const QRingPtr& F,
                                               int fiber_depth) {
  std::vector<Polynomial> seq;
  if (fiber_depth <= 0) return seq;
  const std::vector<Polynomial> pool = depth_candidate_pool(F, {});
  PresentedModule cur = PresentedModule::free_module(F, 1);
  while (static_cast<int>(seq.size()) < fiber_depth) {
    bool extended = false;
    for (const auto& cand : pool) {
      bool used = false;
      for (const auto& s : seq)
        if (s == cand) used = true;
      if (used) continue;
      if (!colon_submodule_gens(cur, {}, cand).empty()) continue;
      cur = quotient_module(cur, scaled_basis(cand, cur));
      seq.push_back(cand);
      extended = true;
      break;
    }
    if (!extended)
      fail(Errc::Certification,
           "could not exhibit a fiber regular sequence of the expected "
           "length");
  }
  return seq;
}

FlatExtension finish_extension(const QRingPtr& R, ExtensionKind kind,
                               std::vector<std::string> fiber_vars,
                               const std::string& relation_text,
                               int fiber_depth) {
  const RingPtr Pt = total_signature(R->poly(), fiber_vars);
  std::vector<Polynomial> jgens;
  for (const auto& g : R->defining().gens()) jgens.push_back(transport(g, Pt));
  if (!relation_text.empty()) jgens.push_back(parse_poly(relation_text, Pt));

  FlatExtension X;
  X.base = R;
  X.total = QuotientRing::make(Pt, Ideal(Pt, std::move(jgens),
                                         R->defining().pair_budget()));
  X.kind = kind;
  X.fiber_vars = std::move(fiber_vars);
  X.fiber_relation = relation_text;
  X.fiber_depth = fiber_depth;
  if (kind == ExtensionKind::Polynomial) {
    for (const auto& name : X.fiber_vars)
      X.fiber_sequence.push_back(
          Polynomial::variable(Pt, *Pt->var_index(name)));
  } else {
    const RingPtr Pf = RingSignature::make(
        Pt->characteristic(), X.fiber_vars, Pt->order());
    const QRingPtr F =
        QuotientRing::make(Pf, Ideal(Pf, {parse_poly(relation_text, Pf)}));
    for (const auto& z : exhibit_fiber_sequence(F, fiber_depth))
      X.fiber_sequence.push_back(transport(z, Pt));
  }
  return X;
}

}  // namespace

std::string to_string(ExtensionKind k) {
  switch (k) {
    case ExtensionKind::Polynomial: return "polynomial";
    case ExtensionKind::HypersurfaceFiber: return "hypersurface-fiber";
  }
  return "?";
}

bool fedder_fpure_check(const Polynomial& g) {
  const RingPtr& P = g.ring();
  if (g.is_zero()) fail(Errc::Precondition, "fedder: zero relation");
  if (g.is_constant()) fail(Errc::Precondition, "fedder: unit relation");
  const std::uint32_t p = P->characteristic();
  std::vector<Polynomial> bracket;
  for (std::size_t j = 0; j < P->nvars(); ++j)
    bracket.push_back(pow(Polynomial::variable(P, j), p));
  return !ideal_contains(Ideal(P, std::move(bracket)), pow(g, p - 1));
}

FlatExtension extend_ring_polynomial(const QRingPtr& R, unsigned k) {
  std::vector<std::string> names;
  for (unsigned i = 1; i <= k; ++i) {
    std::string name = (k == 1) ? "t" : "t" + std::to_string(i);
    if (name_taken(R->poly(), name))
      fail(Errc::InvalidArgument,
           "extension variable '" + name + "' collides with a base variable");
    names.push_back(std::move(name));
  }
  return finish_extension(R, ExtensionKind::Polynomial, std::move(names), "",
                          static_cast<int>(k));
}

FlatExtension extend_ring_hypersurface(const QRingPtr& R,
                                       const std::vector<std::string>& tvars,
                                       const std::string& relation_text) {
  if (tvars.empty())
    fail(Errc::InvalidArgument, "hypersurface fiber needs variables");
  std::set<std::string> seen;
  for (const auto& v : tvars) {
    if (name_taken(R->poly(), v))
      fail(Errc::InvalidArgument,
           "fiber variable '" + v + "' collides with a base variable");
    if (!seen.insert(v).second)
      fail(Errc::InvalidArgument, "duplicate fiber variable '" + v + "'");
  }

  // parse in the full signature, then insist the support is fiber-only
  const RingPtr Pt = total_signature(R->poly(), tvars);
  const Polynomial g_total = parse_poly(relation_text, Pt);
  const std::size_t nbase = R->poly()->nvars();
  for (const auto& t : g_total.terms())
    for (std::size_t j = 0; j < nbase; ++j)
      if (t.mono[j] != 0)
        fail(Errc::InvalidArgument,
             "fiber relation mentions base variable '" +
                 R->poly()->vars()[j] + "'");

  const RingPtr Pf =
      RingSignature::make(R->poly()->characteristic(), tvars,
                          R->poly()->order());
  const Polynomial g_fiber = parse_poly(relation_text, Pf);
  if (!fedder_fpure_check(g_fiber))
    fail(Errc::Certification,
         "fiber relation fails the Fedder F-purity check; the extension is "
         "not certifiably F-injective");
  return finish_extension(R, ExtensionKind::HypersurfaceFiber, tvars,
                          relation_text,
                          static_cast<int>(tvars.size()) - 1);
}

Polynomial extend_poly(const FlatExtension& X, const Polynomial& f) {
  require_same_ring(f.ring(), X.base->poly());
  return transport(f, X.total->poly());
}

VecPoly extend_vec(const FlatExtension& X, const VecPoly& v) {
  VecPoly out;
  for (const auto& f : v) out.push_back(extend_poly(X, f));
  return out;
}

Ideal extend_ideal(const FlatExtension& X, const Ideal& I) {
  std::vector<Polynomial> gens;
  for (const auto& g : I.gens()) gens.push_back(extend_poly(X, g));
  return Ideal(X.total->poly(), std::move(gens), I.pair_budget());
}

PresentedModule tensor_extend(const FlatExtension& X,
                              const PresentedModule& M) {
  require_same_ring(M.ring()->poly(), X.base->poly());
  if (!same_ideal(M.ring()->defining(), X.base->defining()))
    fail(Errc::Precondition, "module is not presented over the base ring");
  std::vector<VecPoly> rels;
  for (const auto& r : M.relations()) rels.push_back(extend_vec(X, r));
  return PresentedModule::make(X.total, M.rank(), std::move(rels),
                               M.pair_budget());
}

TCEnv extend_env(const FlatExtension& X, const TCEnv& base_env,
                 const std::vector<Ideal>& total_prime_candidates) {
  require_matching_ring(X.base, base_env.ring, "extend_env");
  std::vector<Ideal> candidates = total_prime_candidates;
  if (candidates.empty()) {
    if (X.kind == ExtensionKind::HypersurfaceFiber)
      fail(Errc::Precondition,
           "a hypersurface fiber changes the minimal primes; supply "
           "candidates explicitly");
    for (const auto& cp : base_env.primes.primes())
      candidates.push_back(extend_ideal(X, cp.prime));
  }
  std::optional<TestElementAssumption> te;
  if (base_env.test_element.has_value())
    te = TestElementAssumption{extend_poly(X, base_env.test_element->c),
                               base_env.test_element->e0,
                               base_env.test_element->provenance};
  return make_env(X.total, std::move(candidates), std::move(te),
                  base_env.max_e);
}

bool fiber_sequence_exact(const FlatExtension& X, const PresentedModule& M) {
  PresentedModule cur = tensor_extend(X, M);
  for (const auto& z : X.fiber_sequence) {
    if (!colon_submodule_gens(cur, {}, z).empty()) return false;
    cur = quotient_module(cur, scaled_basis(z, cur));
  }
  return true;
}

std::string to_string(FormulaVerdict v) {
  switch (v) {
    case FormulaVerdict::EqualCertified: return "EQUAL-CERTIFIED";
    case FormulaVerdict::EqualBounded: return "EQUAL-BOUNDED";
    case FormulaVerdict::Mismatch: return "MISMATCH";
  }
  return "?";
}

FormulaReport verify_base_change_formula(const TCEnv& base_env,
                                         const PresentedModule& M,
                                         const FlatExtension& X,
                                         const TCEnv& total_env,
                                         const PoolConfig& base_pool,
                                         const PoolConfig& total_pool) {
  require_env_module(base_env, M);
  require_matching_ring(X.base, base_env.ring, "formula base");
  require_matching_ring(X.total, total_env.ring, "formula total");

  FormulaReport rep;
  const PresentedModule Mt = tensor_extend(X, M);
  rep.base_depth = phantom_depth(base_env, M, base_pool);
  rep.total_depth = phantom_depth(total_env, Mt, total_pool);
  rep.fiber_depth = X.fiber_depth;
  rep.lhs = rep.base_depth.lower_bound + X.fiber_depth;
  rep.rhs = rep.total_depth.lower_bound;

  const bool certified =
      rep.base_depth.tail == TailStatus::CertifiedDepthZero &&
      rep.total_depth.tail == TailStatus::CertifiedDepthZero;
  rep.verdict = (rep.lhs == rep.rhs)
                    ? (certified ? FormulaVerdict::EqualCertified
                                 : FormulaVerdict::EqualBounded)
                    : FormulaVerdict::Mismatch;

  rep.fiber_exact = fiber_sequence_exact(X, M);
  std::vector<Polynomial> carried;
  for (const auto& step : rep.base_depth.sequence)
    carried.push_back(extend_poly(X, step.x));
  for (const auto& z : X.fiber_sequence) carried.push_back(z);
  rep.transfer_ok = true;
  if (!carried.empty()) {
    rep.transfer_verdicts = phantom_sequence_check(total_env, carried, Mt);
    if (rep.transfer_verdicts.size() < carried.size()) rep.transfer_ok = false;
    for (const auto& v : rep.transfer_verdicts) {
      merge_assumptions(rep.assumptions, v.assumptions);
      if (v.tag == PhantomTag::CertifiedZerodivisor) rep.transfer_ok = false;
    }
  }

  merge_assumptions(rep.assumptions, rep.base_depth.assumptions);
  merge_assumptions(rep.assumptions, rep.total_depth.assumptions);
  if (base_env.test_element.has_value())
    merge_assumptions(
        rep.assumptions,
        {Assumption{"shared-test-element",
                    "phi(c) with the base's q0 is assumed to stay a weak "
                    "test element for the extension"}});

  rep.detail = "base ppd >= " + std::to_string(rep.base_depth.lower_bound) +
               " (" + to_string(rep.base_depth.tail) + ") + fiber " +
               std::to_string(X.fiber_depth) + " = " + std::to_string(rep.lhs) +
               "; total ppd >= " + std::to_string(rep.total_depth.lower_bound) +
               " (" + to_string(rep.total_depth.tail) + ")";
  return rep;
}

ColonFlatnessReport colon_flatness_probe(const PresentedModule& M,
                                         const FlatExtension& X,
                                         const Polynomial& a, unsigned e) {
  require_same_ring(a.ring(), X.base->poly());
  const Polynomial an = X.base->nf(a);
  if (an.is_zero()) fail(Errc::Precondition, "colon probe: a is zero");
  if (!an.is_zero() && an.terms().back().mono.degree() == 0)
    fail(Errc::Precondition, "colon probe: a is outside the maximal ideal");

  const Polynomial aq = frobenius_pow(an, e);
  const PresentedModule Mt = tensor_extend(X, M);
  const PresentedModule FeS = frobenius_module(Mt, e);
  const PresentedModule FeR = frobenius_module(M, e);

  ColonFlatnessReport rep;
  rep.e = e;
  const Submodule lhs(FeS, colon_submodule_gens(FeS, {}, extend_poly(X, aq)));
  std::vector<VecPoly> rhs_gens;
  for (const auto& g : colon_submodule_gens(FeR, {}, aq))
    rhs_gens.push_back(extend_vec(X, g));
  const Submodule rhs(FeS, std::move(rhs_gens));
  rep.lhs = lhs.gb();
  rep.rhs = rhs.gb();
  rep.equal = rep.lhs == rep.rhs;
  return rep;
}

CmfiReport cmfi_probe(const FlatExtension& X, const TCEnv& base_env,
                      const PresentedModule& N, const VecPoly& u,
                      const std::vector<Polynomial>& zs, const Polynomial& b,
                      const TCEnv& total_env) {
  require_env_module(base_env, N);
  require_matching_ring(X.base, base_env.ring, "cmfi base");
  require_matching_ring(X.total, total_env.ring, "cmfi total");
  const RingPtr& Pt = X.total->poly();

  CmfiReport rep;
  // the lemma needs a shared weak test element: phi(c) for a declared base
  // element, or the trivial one when the total ring is regular. Without one
  // a certified containment below would not mean anything is violated.
  if (!base_env.test_element.has_value() &&
      !X.total->defining().gens().empty())
    fail(Errc::Precondition,
         "cmfi probe: no shared weak test element (none declared on the base "
         "and the extension is not regular)");
  rep.base_out = tc_membership(base_env, N, {}, u);
  if (rep.base_out.tag != Containment::Out)
    fail(Errc::Precondition,
         "cmfi probe: u lacks an Out-certificate against 0^* over the base");

  // b must survive in S/(m, zbar)S
  require_same_ring(b.ring(), Pt);
  std::vector<Polynomial> mz;
  for (std::size_t j = 0; j < X.base->poly()->nvars(); ++j)
    mz.push_back(Polynomial::variable(Pt, j));
  for (const auto& z : zs) {
    require_same_ring(z.ring(), Pt);
    mz.push_back(z);
  }
  for (const auto& g : X.total->defining().gens()) mz.push_back(g);
  if (normal_form(b, Ideal(Pt, std::move(mz))).is_zero())
    fail(Errc::Precondition, "cmfi probe: b vanishes in S/(m, zbar)S");

  PresentedModule T = tensor_extend(X, N);
  for (const auto& z : zs) T = quotient_module(T, scaled_basis(z, T));
  const VecPoly bu = vec_scale(b, extend_vec(X, u));
  rep.total = tc_membership(total_env, T, {}, bu);
  if (rep.total.tag == Containment::In)
    fail(Errc::Internal,
         "cmfi violation: b*u certified inside 0^* of the extended module; "
         "the engine or a recorded test-element assumption is wrong");
  rep.tag = rep.total.tag;
  merge_assumptions(rep.assumptions, rep.base_out.assumptions);
  merge_assumptions(rep.assumptions, rep.total.assumptions);
  if (base_env.test_element.has_value())
    merge_assumptions(
        rep.assumptions,
        {Assumption{"shared-test-element",
                    "phi(c) with the base's q0 is assumed to stay a weak "
                    "test element for the extension"}});
  return rep;
}

}  // namespace ptc
