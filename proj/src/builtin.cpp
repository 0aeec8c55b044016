#include "builtin.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace ptc {
namespace {

[[noreturn]] void bad(const std::string& msg) {
  throw Error(Errc::InvalidArgument, msg);
}

bool small_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Polynomial pp(const std::string& s, const RingPtr& P) {
  return parse_poly(s, P);
}

std::vector<Polynomial> pl(const std::vector<std::string>& ss,
                           const RingPtr& P) {
  std::vector<Polynomial> out;
  out.reserve(ss.size());
  for (const auto& s : ss) out.push_back(parse_poly(s, P));
  return out;
}

std::string pad2(std::size_t i) {
  return (i < 10 ? "0" : "") + std::to_string(i);
}

// --- shared task builders ----------------------------------------------------

void push_depth(RunReport& rep, const std::string& name, const TCEnv& env,
                const PresentedModule& M, const PoolConfig& pool,
                std::size_t expect_lb) {
  rep.tasks.push_back(run_task(name, "phantom_depth", [&](TaskResult& t) {
    const DepthReport r = phantom_depth(env, M, pool);
    t.verdict = "depth>=" + std::to_string(r.lower_bound);
    t.bounded = r.tail == TailStatus::Bounded;
    t.assumptions = r.assumptions;
    t.data = to_json(r);
    if (static_cast<std::size_t>(r.lower_bound) != expect_lb) {
      t.mismatch = true;
      t.data["expected_lower_bound"] = expect_lb;
    }
    if (r.tail != TailStatus::CertifiedDepthZero) {
      t.mismatch = true;
      t.data["expected_tail"] = "certified-depth-0";
    }
  }));
}

void push_minheight(RunReport& rep, const std::string& name, const TCEnv& env,
                    const QRingPtr& R, int expect) {
  rep.tasks.push_back(run_task(name, "minheight", [&](TaskResult& t) {
    const int h = minheight(*R, env.primes);
    t.verdict = std::to_string(h);
    t.assumptions = primality_assumptions(env.primes);
    t.data = ordered_json{{"minheight", h}};
    if (h != expect) {
      t.mismatch = true;
      t.data["expected"] = expect;
    }
  }));
}

void push_phantom_reg(RunReport& rep, const std::string& name,
                      const TCEnv& env, const Polynomial& x,
                      const PresentedModule& M, PhantomTag expect_tag,
                      const char* expect_evidence) {
  rep.tasks.push_back(run_task(name, "phantom_regular", [&](TaskResult& t) {
    const PhantomRegVerdict v = phantom_regular(env, x, M);
    t.verdict = to_string(v.tag);
    t.bounded = v.tag == PhantomTag::NotRefuted &&
                v.evidence == PhantomEvidence::HasUnknowns;
    t.assumptions = v.assumptions;
    t.data = to_json(v);
    if (v.tag != expect_tag) {
      t.mismatch = true;
      t.data["expected"] = to_string(expect_tag);
    }
    if (expect_evidence && to_string(v.evidence) != expect_evidence) {
      t.mismatch = true;
      t.data["expected_evidence"] = expect_evidence;
    }
  }));
}

void push_koszul(RunReport& rep, const std::string& name,
                 const std::vector<Polynomial>& xs, const PresentedModule& M,
                 const TCEnv& env, bool expect_seq_refuted,
                 bool expect_h1_refuted) {
  rep.tasks.push_back(run_task(name, "koszul_crosscheck", [&](TaskResult& t) {
    const KoszulCrosscheck c = koszul_criterion_crosscheck(xs, M, env);
    t.verdict = c.consistent ? "consistent" : "inconsistent";
    t.assumptions = c.assumptions;
    t.data = to_json(c);
    t.mismatch = !c.consistent;
    if (c.seq_refuted != expect_seq_refuted) {
      t.mismatch = true;
      t.data["expected_seq_refuted"] = expect_seq_refuted;
    }
    if (c.h1_refuted != expect_h1_refuted) {
      t.mismatch = true;
      t.data["expected_h1_refuted"] = expect_h1_refuted;
    }
  }));
}

// --- counterexample1: coordinate axes glued along a hyperplane ---------------
// R = k[y1..yn, z]/(y1 z, .., yn z). The cyclic module R/(z - y1) has no
// phantom-regular elements over R, while over the collapsed quotient ring
// the surviving sequence y2..yn gives depth n-1; both minheights match.

void ce1(RunReport& rep, const BuiltinParams& par) {
  const std::uint32_t p = par.p ? par.p : 3;
  if (!small_prime(p)) bad("counterexample1: p must be prime");
  if (par.n < 2 || par.n > 6) bad("counterexample1: n must lie in [2, 6]");
  const unsigned max_e = effective_level(p, par.max_e, par.max_q, "bounds");
  rep.params = ordered_json{{"builtin", "counterexample1"}, {"n", par.n},
                            {"p", p},         {"max_e", max_e},
                            {"max_q", par.max_q}, {"pool_size", par.pool_size},
                            {"seed", par.seed}};

  std::vector<std::string> ys;
  for (unsigned i = 1; i <= par.n; ++i) ys.push_back("y" + std::to_string(i));
  std::vector<std::string> vars = ys;
  vars.push_back("z");
  const RingPtr P = RingSignature::make(p, vars);

  std::vector<Polynomial> J;
  for (const auto& y : ys) J.push_back(pp(y + "*z", P));
  const QRingPtr R = QuotientRing::make(P, Ideal(P, J));
  const Polynomial x = pp("z - y1", P);

  const std::vector<Ideal> primesR = {Ideal(P, {pp("z", P)}),
                                      Ideal(P, pl(ys, P))};
  const TCEnv envR = make_env(R, primesR, std::nullopt, max_e);
  PoolConfig pool;
  pool.pool_size = par.pool_size;
  pool.seed = par.seed;

  const PresentedModule RmodI = PresentedModule::cyclic(R, Ideal(P, {x}));
  push_depth(rep, "phantom depth of R/(z-y1) over R", envR, RmodI, pool, 0);

  auto rels2 = J;
  rels2.push_back(x);
  const QRingPtr R2 = QuotientRing::make(P, Ideal(P, rels2));
  const std::vector<Ideal> primes2 = {Ideal(P, pl({"y1", "z"}, P))};
  const TCEnv env2 = make_env(R2, primes2, std::nullopt, max_e);
  push_depth(rep, "phantom depth of the quotient ring over itself", env2,
             PresentedModule::free_module(R2, 1), pool, par.n - 1);

  push_minheight(rep, "minheight of the maximal ideal", envR, R, 1);
  push_minheight(rep, "minheight of the maximal ideal of the quotient", env2,
                 R2, static_cast<int>(par.n) - 1);

  push_koszul(rep, "koszul crosscheck of [y2] on R/(z-y1) over R",
              {pp("y2", P)}, RmodI, envR, true, true);
  std::vector<Polynomial> tailseq;
  for (std::size_t i = 1; i < ys.size(); ++i) tailseq.push_back(pp(ys[i], P));
  push_koszul(rep, "koszul crosscheck of the surviving sequence, quotient side",
              tailseq, PresentedModule::free_module(R2, 1), env2, false,
              false);
}

// --- counterexample2: a cubic hypersurface where the maximal ideal sits in
// Ass of a tight closure. R = k[x,y,u,v]/(x^3 y^3 + u^3 + v^3), I = (u,v,x^3);
// every maximal-ideal generator is a phantom zerodivisor on R/I over R, yet
// over the quotient ring itself y stays exactly regular.

void socle_replay(TaskResult& t, const RingPtr& P, const QRingPtr& R,
                  const Polynomial& c, std::uint32_t p, unsigned max_e) {
  const PresentedModule F = PresentedModule::free_module(R, 1);
  const Polynomial xg = pp("x", P), yg = pp("y", P);

  std::vector<std::uint64_t> qs;
  std::vector<std::vector<VecPoly>> rows;
  std::vector<Submodule> brackets;
  std::uint64_t q = 1;
  for (unsigned e = 0; e <= max_e; ++e) {
    qs.push_back(q);
    std::vector<VecPoly> rw = {{pow(pp("u", P), q)},
                               {pow(pp("v", P), q)},
                               {pow(pp("x", P), 3 * q)}};
    rows.push_back(rw);
    brackets.emplace_back(F, rw);
    q *= p;
  }
  const std::vector<Polynomial> mgens = pl({"x", "y", "u", "v"}, P);
  const Polynomial c2 = mul(c, c);

  // monomial candidates x^i y^j by total degree, x-heavy first
  std::optional<Polynomial> witness;
  std::uint64_t violating_q = 0;
  std::size_t violating_level = 0;
  for (unsigned d = 1; d <= 6 && !witness; ++d) {
    for (int i = static_cast<int>(d); i >= 0 && !witness; --i) {
      const unsigned j = d - static_cast<unsigned>(i);
      const Polynomial zc =
          mul(pow(xg, static_cast<std::uint64_t>(i)), pow(yg, j));
      if (brackets[0].contains({zc})) continue;  // already inside the ideal
      bool all_in = true;
      for (std::size_t lv = 0; lv < qs.size() && all_in; ++lv) {
        const Polynomial zq = pow(zc, qs[lv]);
        for (const auto& a : mgens) {
          if (!brackets[lv].contains({mul(c, mul(pow(a, qs[lv]), zq))})) {
            all_in = false;
            break;
          }
        }
      }
      if (!all_in) continue;
      std::uint64_t vq = 0;
      std::size_t vl = 0;
      for (std::size_t lv = 0; lv < qs.size(); ++lv) {
        if (!brackets[lv].contains({mul(c2, pow(zc, qs[lv]))})) {
          vq = qs[lv];
          vl = lv;
          break;
        }
      }
      if (vq == 0) continue;
      witness = zc;
      violating_q = vq;
      violating_level = vl;
    }
  }

  if (!witness) {
    t.verdict = "no-witness";
    t.mismatch = true;
    t.data = ordered_json{{"error", "no socle witness within the degree bound"}};
    return;
  }

  // freeze the replay facts for the found witness
  std::vector<Fact> facts;
  facts.push_back(nf_fact(false, F, rows[0], {*witness},
                          "the witness stays outside the ideal"));
  for (std::size_t lv = 0; lv < qs.size(); ++lv) {
    const Polynomial zq = pow(*witness, qs[lv]);
    for (const auto& a : mgens)
      facts.push_back(
          nf_fact(true, F, rows[lv], {mul(c, mul(pow(a, qs[lv]), zq))},
                  "scan product for " + format_poly(a) + " at q = " +
                      std::to_string(qs[lv])));
  }
  facts.push_back(nf_fact(false, F, rows[violating_level],
                          {mul(c2, pow(*witness, violating_q))},
                          "the squared multiplier escapes at q = " +
                              std::to_string(violating_q)));

  t.verdict = "witness-found";
  t.assumptions = {{"weak-test-element",
                    "reading the scan products as closure membership uses the "
                    "declared test element"}};
  ordered_json jf = ordered_json::array();
  for (const auto& f : facts) jf.push_back(to_json(f));
  t.data = ordered_json{{"witness", format_poly(*witness)},
                        {"violating_q", violating_q},
                        {"facts", std::move(jf)}};
}

void ce2(RunReport& rep, const BuiltinParams& par) {
  const std::uint32_t p = par.p ? par.p : 7;
  if (!small_prime(p)) bad("counterexample2: p must be prime");
  if (p == 3) bad("counterexample2: p = 3 is excluded (the cubic degenerates)");
  const unsigned max_e = effective_level(p, par.max_e, par.max_q, "bounds");
  rep.params = ordered_json{{"builtin", "counterexample2"},
                            {"p", p},
                            {"max_e", max_e},
                            {"max_q", par.max_q},
                            {"pool_size", par.pool_size},
                            {"seed", par.seed}};

  const RingPtr P = RingSignature::make(p, {"x", "y", "u", "v"});
  const Polynomial g = pp("x^3*y^3 + u^3 + v^3", P);
  const QRingPtr R = QuotientRing::make(P, Ideal(P, {g}));
  TestElementAssumption te;
  te.c = pp("u^2", P);
  te.e0 = 0;
  te.provenance = "jacobian-hypersurface";
  const TCEnv envR = make_env(R, {Ideal(P, {g})}, te, max_e);

  const std::vector<Polynomial> Igens = pl({"u", "v", "x^3"}, P);

  // the cubic lies in the monomial ideal, so the quotient ring presents
  // with monomial relations alone
  rep.tasks.push_back(run_task("the cubic lies in the monomial ideal", "fact",
                               [&](TaskResult& t) {
    const QRingPtr Pq = QuotientRing::poly_ring(P);
    const PresentedModule Ff = PresentedModule::free_module(Pq, 1);
    std::vector<VecPoly> rw;
    for (const auto& f : Igens) rw.push_back({f});
    const Submodule S(Ff, rw);
    const bool in = S.contains({g});
    t.verdict = in ? "contained" : "not-contained";
    t.mismatch = !in;
    const Fact f =
        nf_fact(in, Ff, rw, {g}, "the defining cubic against the ideal");
    t.data = ordered_json{{"facts", ordered_json::array({to_json(f)})}};
  }));

  const QRingPtr RI = QuotientRing::make(P, Ideal(P, Igens));
  const TCEnv envRI =
      make_env(RI, {Ideal(P, pl({"u", "v", "x"}, P))}, std::nullopt, max_e);
  push_minheight(rep, "minheight of the maximal ideal of the quotient", envRI,
                 RI, 1);

  const PresentedModule M = PresentedModule::cyclic(R, Ideal(P, Igens));
  for (const std::string a : {"x", "y", "u", "v"})
    push_phantom_reg(rep, "phantom zerodivisor: " + a + " on the quotient module",
                     envR, pp(a, P), M, PhantomTag::CertifiedZerodivisor,
                     nullptr);

  push_phantom_reg(rep, "exact regularity of y over the quotient ring", envRI,
                   pp("y", P), PresentedModule::free_module(RI, 1),
                   PhantomTag::NotRefuted, "exact-regular");

  rep.tasks.push_back(
      run_task("socle witness replay", "socle_replay", [&](TaskResult& t) {
        socle_replay(t, P, R, te.c, p, max_e);
        if (t.verdict == "witness-found" &&
            t.data["witness"] != format_poly(pp("x^2*y", P))) {
          t.mismatch = true;
          t.data["expected_witness"] = format_poly(pp("x^2*y", P));
        }
      }));
}

// --- basechange-demo: the depth formula on two flat extensions ---------------

void formula_task(RunReport& rep, const std::string& name, const TCEnv& env,
                  const PresentedModule& M, const FlatExtension& X,
                  const TCEnv& envT, const PoolConfig& pool, int expect_lhs) {
  rep.tasks.push_back(run_task(name, "base_change_formula", [&](TaskResult& t) {
    const FormulaReport r = verify_base_change_formula(env, M, X, envT, pool, pool);
    t.verdict = to_string(r.verdict);
    t.bounded = r.verdict == FormulaVerdict::EqualBounded;
    t.assumptions = r.assumptions;
    t.data = to_json(r);
    if (r.verdict != FormulaVerdict::EqualCertified) {
      t.mismatch = true;
      t.data["expected"] = to_string(FormulaVerdict::EqualCertified);
    }
    if (r.lhs != expect_lhs) {
      t.mismatch = true;
      t.data["expected_lhs"] = expect_lhs;
    }
  }));
}

void basechange_demo(RunReport& rep, const BuiltinParams& par) {
  rep.params = ordered_json{{"builtin", "basechange-demo"},
                            {"max_e", par.max_e},
                            {"max_q", par.max_q},
                            {"pool_size", par.pool_size},
                            {"seed", par.seed}};
  PoolConfig pool;
  pool.pool_size = par.pool_size;
  pool.seed = par.seed;

  {
    // cuspidal base, one polynomial fiber variable
    const unsigned max_e = effective_level(5, par.max_e, par.max_q, "bounds");
    const RingPtr P = RingSignature::make(5, {"x", "y"});
    const Polynomial f = pp("x^2 + 4*y^3", P);
    const QRingPtr R = QuotientRing::make(P, Ideal(P, {f}));
    TestElementAssumption te;
    te.c = pp("x", P);
    te.e0 = 0;
    te.provenance = "jacobian-hypersurface";
    const TCEnv env = make_env(R, {Ideal(P, {f})}, te, max_e);
    const FlatExtension X = extend_ring_polynomial(R, 1);
    const TCEnv envT = extend_env(X, env);
    formula_task(rep, "formula: cusp base, polynomial fiber", env,
                 PresentedModule::free_module(R, 1), X, envT, pool, 2);
  }
  {
    // regular base, hypersurface fiber with two branches
    const unsigned max_e = effective_level(3, par.max_e, par.max_q, "bounds");
    const RingPtr P = RingSignature::make(3, {"x"});
    const QRingPtr R = QuotientRing::poly_ring(P);
    const TCEnv env = make_env(R, {}, std::nullopt, max_e);
    const FlatExtension X = extend_ring_hypersurface(R, {"t1", "t2"}, "t1*t2");
    const RingPtr PT = X.total->poly();
    const TCEnv envT = extend_env(
        X, env, {Ideal(PT, {pp("t1", PT)}), Ideal(PT, {pp("t2", PT)})});
    formula_task(rep, "formula: regular base, hypersurface fiber", env,
                 PresentedModule::free_module(R, 1), X, envT, pool, 2);
  }
}

// --- lemma-probes: invariant suites for the sandwich and flatness claims -----

void lemma_probes(RunReport& rep, const BuiltinParams& par) {
  const unsigned max_e = effective_level(3, par.max_e, par.max_q, "bounds");
  rep.params = ordered_json{{"builtin", "lemma-probes"},
                            {"max_e", max_e},
                            {"max_q", par.max_q},
                            {"pool_size", par.pool_size},
                            {"seed", par.seed}};

  const RingPtr P = RingSignature::make(3, {"x", "y"});
  const QRingPtr R = QuotientRing::make(P, Ideal(P, {pp("x*y", P)}));
  const TCEnv env = make_env(
      R, {Ideal(P, {pp("x", P)}), Ideal(P, {pp("y", P)})}, std::nullopt,
      max_e);
  const QRingPtr Rp = QuotientRing::poly_ring(P);
  const TCEnv envp = make_env(Rp, {}, std::nullopt, max_e);

  std::size_t nprobe = 0;
  auto chain_task = [&](const TCEnv& e, const PresentedModule& M,
                        const VecPoly& z, const std::string& desc) {
    rep.tasks.push_back(run_task("ass-chain #" + pad2(++nprobe), "ass_chain",
                                 [&](TaskResult& t) {
                                   const AssChainReport r =
                                       ass_chain_probe(e, M, z);
                                   t.verdict = r.ok ? "ok" : "violated";
                                   t.mismatch = !r.ok;
                                   t.assumptions = r.assumptions;
                                   t.data = to_json(r);
                                   t.data["instance"] = desc;
                                 }));
  };

  const PresentedModule Fxy = PresentedModule::free_module(R, 1);
  for (const std::string zs :
       {"1", "x", "y", "x + y", "x + 2*y", "x^2", "y^2", "x + y^2",
        "x^2 + y", "1 + x"})
    chain_task(env, Fxy, {pp(zs, P)}, "free module over the axes, z = " + zs);
  chain_task(envp, PresentedModule::cyclic(Rp, Ideal(P, {pp("x^2", P)})),
             {pp("x", P)}, "torsion quotient by x^2, z = x");
  chain_task(envp, PresentedModule::cyclic(Rp, Ideal(P, {pp("x^3", P)})),
             {pp("x^2", P)}, "torsion quotient by x^3, z = x^2");

  // colon flatness under one adjoined fiber variable
  const FlatExtension X = extend_ring_polynomial(R, 1);
  const std::vector<Polynomial> mods =
      pl({"x", "y", "x + y", "x^2", "y^2 + x", "x + 2*y"}, P);
  const std::vector<Polynomial> elems = pl({"x", "y", "x + y", "x + 2*y"}, P);
  DetRng rng(par.seed + 11);
  std::size_t nflat = 0;
  auto flat_task = [&](const PresentedModule& M, const FlatExtension& XX,
                       const Polynomial& a, unsigned e,
                       const std::string& desc) {
    rep.tasks.push_back(run_task("colon-flatness #" + pad2(++nflat),
                                 "colon_flatness", [&](TaskResult& t) {
                                   const ColonFlatnessReport r =
                                       colon_flatness_probe(M, XX, a, e);
                                   t.verdict = r.equal ? "equal" : "unequal";
                                   t.mismatch = !r.equal;
                                   t.data = to_json(r);
                                   t.data["instance"] = desc;
                                 }));
  };
  for (int i = 0; i < 10; ++i) {
    const Polynomial rel = mods[rng.below(mods.size())];
    const Polynomial a = elems[rng.below(elems.size())];
    const unsigned e = static_cast<unsigned>(rng.below(2));
    flat_task(PresentedModule::cyclic(R, Ideal(P, {rel})), X, a, e,
              "cyclic by " + format_poly(rel) + ", a = " + format_poly(a) +
                  ", e = " + std::to_string(e));
  }
  {
    const RingPtr P3 = RingSignature::make(3, {"y1", "y2", "z"});
    const QRingPtr R3 =
        QuotientRing::make(P3, Ideal(P3, pl({"y1*z", "y2*z"}, P3)));
    const FlatExtension X3 = extend_ring_polynomial(R3, 1);
    flat_task(PresentedModule::cyclic(R3, Ideal(P3, {pp("z + 2*y1", P3)})),
              X3, pp("y1", P3), 1,
              "axes ring modulo the diagonal, a = y1, e = 1");
  }
}

}  // namespace

std::vector<std::string> builtin_names() {
  return {"counterexample1", "counterexample2", "basechange-demo",
          "lemma-probes"};
}

RunReport run_builtin(const std::string& name, const BuiltinParams& par) {
  RunReport rep;
  rep.seed = par.seed;
  try {
    if (par.pool_size == 0 || par.pool_size > 256)
      bad("pool_size must lie in [1, 256]");
    if (name == "counterexample1")
      ce1(rep, par);
    else if (name == "counterexample2")
      ce2(rep, par);
    else if (name == "basechange-demo")
      basechange_demo(rep, par);
    else if (name == "lemma-probes")
      lemma_probes(rep, par);
    else
      bad("unknown builtin \"" + name + "\" (expected one of: counterexample1, "
          "counterexample2, basechange-demo, lemma-probes)");
  } catch (const Error& e) {
    rep.error = e.what();
    rep.tasks.clear();
  }
  return rep;
}

}  // namespace ptc
