#include "scenario.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace ptc {
namespace {

// Validation failures carry the JSON-pointer path of the offending value.
[[noreturn]] void vfail(const std::string& ptr, const std::string& msg,
                        Errc code = Errc::Parse) {
  throw Error(code, ptr + ": " + msg);
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// --- typed accessors --------------------------------------------------------

const ordered_json& need(const ordered_json& obj, const std::string& ptr,
                         const std::string& key) {
  auto it = obj.find(key);
  if (it == obj.end()) vfail(ptr + "/" + key, "required key is missing");
  return *it;
}

const ordered_json* opt_key(const ordered_json& obj, const std::string& key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

const ordered_json& as_object(const ordered_json& j, const std::string& ptr) {
  if (!j.is_object()) vfail(ptr, "expected an object");
  return j;
}

const ordered_json& as_array(const ordered_json& j, const std::string& ptr) {
  if (!j.is_array()) vfail(ptr, "expected an array");
  return j;
}

std::string as_string(const ordered_json& j, const std::string& ptr) {
  if (!j.is_string()) vfail(ptr, "expected a string");
  return j.get<std::string>();
}

std::uint64_t as_uint(const ordered_json& j, const std::string& ptr,
                      std::uint64_t lo, std::uint64_t hi) {
  if (!j.is_number_unsigned())
    vfail(ptr, "expected a non-negative integer");
  const auto v = j.get<std::uint64_t>();
  if (v < lo || v > hi)
    vfail(ptr, "value " + std::to_string(v) + " outside [" +
                   std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return v;
}

bool as_bool(const ordered_json& j, const std::string& ptr) {
  if (!j.is_boolean()) vfail(ptr, "expected true or false");
  return j.get<bool>();
}

void reject_unknown_keys(const ordered_json& obj, const std::string& ptr,
                         const std::set<std::string>& known) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!known.count(it.key()))
      vfail(ptr + "/" + it.key(), "unknown key");
}

// --- element parsing --------------------------------------------------------

Polynomial parse_poly_at(const std::string& text, const RingPtr& P,
                         const std::string& ptr) {
  try {
    return parse_poly(text, P);
  } catch (const Error& e) {
    std::string msg = "bad polynomial \"" + text + "\": " + e.what();
    if (e.offset()) msg += " (offset " + std::to_string(*e.offset()) + ")";
    vfail(ptr, msg);
  }
}

std::vector<Polynomial> parse_poly_list(const ordered_json& arr,
                                        const RingPtr& P,
                                        const std::string& ptr) {
  as_array(arr, ptr);
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < arr.size(); ++i)
    out.push_back(parse_poly_at(
        as_string(arr[i], ptr + "/" + std::to_string(i)), P,
        ptr + "/" + std::to_string(i)));
  return out;
}

// A module element: array of entry strings of length rank, or a bare string
// when the rank is 1.
VecPoly parse_vec_at(const ordered_json& j, const RingPtr& P, std::size_t rank,
                     const std::string& ptr) {
  if (j.is_string()) {
    if (rank != 1)
      vfail(ptr, "a bare string only works for rank-1 modules (rank is " +
                     std::to_string(rank) + ")");
    return {parse_poly_at(j.get<std::string>(), P, ptr)};
  }
  as_array(j, ptr);
  if (j.size() != rank)
    vfail(ptr, "expected " + std::to_string(rank) + " entries, got " +
                   std::to_string(j.size()));
  VecPoly v;
  for (std::size_t i = 0; i < j.size(); ++i)
    v.push_back(parse_poly_at(as_string(j[i], ptr + "/" + std::to_string(i)),
                              P, ptr + "/" + std::to_string(i)));
  return v;
}

std::vector<VecPoly> parse_vec_list(const ordered_json& arr, const RingPtr& P,
                                    std::size_t rank, const std::string& ptr) {
  as_array(arr, ptr);
  std::vector<VecPoly> out;
  for (std::size_t i = 0; i < arr.size(); ++i)
    out.push_back(parse_vec_at(arr[i], P, rank, ptr + "/" + std::to_string(i)));
  return out;
}

std::vector<Ideal> parse_ideal_list(const ordered_json& arr, const RingPtr& P,
                                    const std::string& ptr) {
  as_array(arr, ptr);
  std::vector<Ideal> out;
  for (std::size_t i = 0; i < arr.size(); ++i)
    out.emplace_back(P,
                     parse_poly_list(arr[i], P, ptr + "/" + std::to_string(i)));
  return out;
}

struct ModuleSpec {
  std::size_t rank = 1;
  std::vector<VecPoly> rows;
};

struct Plan {
  std::string name;
  std::string kind;
  std::function<void(TaskResult&)> fn;
};

}  // namespace

// Effective Frobenius level: E clamped by Q (largest e with p^e <= Q).
unsigned effective_level(std::uint32_t p, unsigned E, std::uint64_t Q,
                         const std::string& ptr) {
  if (E > kMaxLevelCap)
    vfail(ptr, "level bound " + std::to_string(E) + " exceeds the cap " +
                   std::to_string(kMaxLevelCap),
          Errc::InvalidArgument);
  if (Q == 0) return E;
  if (Q < p)
    vfail(ptr, "power bound " + std::to_string(Q) + " is below p = " +
                   std::to_string(p),
          Errc::InvalidArgument);
  unsigned e = 0;
  std::uint64_t q = 1;
  while (e < E && q <= Q / p) {
    q *= p;
    ++e;
  }
  return e;
}

namespace {

// Attach an expectation check: a violated `expect` flips the mismatch flag
// and records both sides.
void check_expect(TaskResult& t, const std::optional<std::string>& expect,
                  const std::string& actual) {
  if (!expect || *expect == actual) return;
  t.mismatch = true;
  t.data["expected"] = *expect;
  t.data["actual"] = actual;
}

void check_expect_int(TaskResult& t, const std::optional<std::int64_t>& expect,
                      std::int64_t actual, const char* what) {
  if (!expect || *expect == actual) return;
  t.mismatch = true;
  t.data[std::string("expected_") + what] = *expect;
  t.data[std::string("actual_") + what] = actual;
}

bool verdict_bounded(const ClosureVerdict& v) {
  return v.tag == Containment::Unknown;
}

bool verdict_bounded(const PhantomRegVerdict& v) {
  return v.tag == PhantomTag::NotRefuted &&
         v.evidence == PhantomEvidence::HasUnknowns;
}

bool crosscheck_bounded(const KoszulCrosscheck& c) {
  for (const auto& v : c.sequence_verdicts)
    if (verdict_bounded(v)) return true;
  for (const auto& lvl : c.levels)
    for (const auto& h : lvl.hj)
      if (h.tag == HomologyPhantomness::Unknown) return true;
  return false;
}

}  // namespace

RunReport run_scenario_text(const std::string& json_text,
                            const RunOptions& opt) {
  RunReport rep;
  rep.seed = opt.seed;
  std::vector<Plan> plans;
  try {
    if (opt.max_e > kMaxLevelCap)
      throw Error(Errc::InvalidArgument,
                  "max_e option exceeds the level cap " +
                      std::to_string(kMaxLevelCap));

    ordered_json doc;
    try {
      doc = ordered_json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
      vfail("/", std::string("not valid JSON: ") + e.what());
    }
    as_object(doc, "/");
    reject_unknown_keys(doc, "", {"ring", "minimal_primes", "test_element",
                                  "modules", "tasks", "bounds", "seed"});

    // ring
    const auto& jring = as_object(need(doc, "", "ring"), "/ring");
    reject_unknown_keys(jring, "/ring", {"p", "vars", "relations", "order"});
    const auto p = static_cast<std::uint32_t>(
        as_uint(need(jring, "/ring", "p"), "/ring/p", 2, (1u << 20)));
    if (!is_prime_u64(p)) vfail("/ring/p", "p must be prime");
    const auto& jvars = as_array(need(jring, "/ring", "vars"), "/ring/vars");
    if (jvars.empty()) vfail("/ring/vars", "need at least one variable");
    std::vector<std::string> vars;
    for (std::size_t i = 0; i < jvars.size(); ++i)
      vars.push_back(
          as_string(jvars[i], "/ring/vars/" + std::to_string(i)));
    {
      std::set<std::string> seen(vars.begin(), vars.end());
      if (seen.size() != vars.size())
        vfail("/ring/vars", "variable names repeat");
    }
    TermOrder order = TermOrder::Grevlex;
    if (const auto* jo = opt_key(jring, "order")) {
      const auto s = as_string(*jo, "/ring/order");
      if (s == "grevlex")
        order = TermOrder::Grevlex;
      else if (s == "grlex")
        order = TermOrder::Grlex;
      else if (s == "lex")
        order = TermOrder::Lex;
      else
        vfail("/ring/order", "expected grevlex, grlex or lex");
    }
    RingPtr P;
    try {
      P = RingSignature::make(p, vars, order);
    } catch (const Error& e) {
      vfail("/ring/vars", e.what());
    }
    std::vector<Polynomial> base_rels;
    if (const auto* jr = opt_key(jring, "relations"))
      base_rels = parse_poly_list(*jr, P, "/ring/relations");
    QRingPtr R = base_rels.empty()
                     ? QuotientRing::poly_ring(P)
                     : QuotientRing::make(P, Ideal(P, base_rels));

    // file-level bounds / seed
    RunOptions eff = opt;
    if (const auto* js = opt_key(doc, "seed"))
      eff.seed = as_uint(*js, "/seed", 0, UINT64_MAX);
    unsigned file_E = eff.max_e;
    std::uint64_t file_Q = eff.max_q;
    if (const auto* jb = opt_key(doc, "bounds")) {
      as_object(*jb, "/bounds");
      reject_unknown_keys(*jb, "/bounds", {"E", "Q", "pool"});
      if (const auto* je = opt_key(*jb, "E"))
        file_E = static_cast<unsigned>(as_uint(*je, "/bounds/E", 0, 64));
      if (const auto* jq = opt_key(*jb, "Q"))
        file_Q = as_uint(*jq, "/bounds/Q", 1, UINT64_MAX);
      if (const auto* jp = opt_key(*jb, "pool"))
        eff.pool_size =
            static_cast<unsigned>(as_uint(*jp, "/bounds/pool", 1, 256));
    }
    effective_level(p, file_E, file_Q, "/bounds");  // cap check up front
    rep.seed = eff.seed;

    // minimal primes / test element (file level)
    std::vector<Ideal> file_primes;
    if (const auto* jp = opt_key(doc, "minimal_primes"))
      file_primes = parse_ideal_list(*jp, P, "/minimal_primes");
    std::optional<TestElementAssumption> te;
    if (const auto* jt = opt_key(doc, "test_element")) {
      const auto& o = as_object(*jt, "/test_element");
      reject_unknown_keys(o, "/test_element", {"c", "q0", "provenance"});
      TestElementAssumption a;
      a.c = parse_poly_at(as_string(need(o, "/test_element", "c"),
                                    "/test_element/c"),
                          P, "/test_element/c");
      std::uint64_t q0 = 1;
      if (const auto* jq = opt_key(o, "q0"))
        q0 = as_uint(*jq, "/test_element/q0", 1, UINT64_MAX);
      unsigned e0 = 0;
      for (std::uint64_t q = 1; q < q0; ++e0) {
        if (q > q0 / p) vfail("/test_element/q0", "q0 must be a power of p");
        q *= p;
        if (q == q0) {
          ++e0;
          break;
        }
      }
      a.e0 = e0;
      a.provenance = "user-assumed";
      if (const auto* jp2 = opt_key(o, "provenance")) {
        a.provenance = as_string(*jp2, "/test_element/provenance");
        if (a.provenance.empty())
          vfail("/test_element/provenance", "must not be empty");
      }
      te = a;
    }

    // modules
    std::map<std::string, ModuleSpec> specs;
    if (const auto* jm = opt_key(doc, "modules")) {
      const auto& o = as_object(*jm, "/modules");
      for (auto it = o.begin(); it != o.end(); ++it) {
        const std::string mp = "/modules/" + it.key();
        const auto& jo = as_object(it.value(), mp);
        reject_unknown_keys(jo, mp, {"rank", "relations"});
        ModuleSpec spec;
        spec.rank = as_uint(need(jo, mp, "rank"), mp + "/rank", 1, 64);
        if (const auto* jr = opt_key(jo, "relations"))
          spec.rows = parse_vec_list(*jr, P, spec.rank, mp + "/relations");
        specs.emplace(it.key(), spec);
      }
    }

    // tasks: validate and certify everything before running anything.
    const auto& jtasks = as_array(need(doc, "", "tasks"), "/tasks");
    static const std::set<std::string> kKinds = {
        "tc_membership", "phantom_regular", "phantom_depth",
        "minheight",     "koszul_crosscheck", "ass_chain"};

    for (std::size_t i = 0; i < jtasks.size(); ++i) {
      const std::string tp = "/tasks/" + std::to_string(i);
      const auto& jt = as_object(jtasks[i], tp);
      const auto kind = as_string(need(jt, tp, "kind"), tp + "/kind");
      if (!kKinds.count(kind))
        vfail(tp + "/kind", "unknown task kind \"" + kind + "\"");
      reject_unknown_keys(
          jt, tp,
          {"kind", "name", "bounds", "quotient", "minimal_primes", "module",
           "ngens", "z", "x", "xs", "pool", "pool_size", "expect",
           "expect_evidence", "expect_lower_bound", "expect_tail",
           "expect_seq_refuted", "expect_h1_refuted"});

      std::string name = kind + "#" + std::to_string(i);
      if (const auto* jn = opt_key(jt, "name"))
        name = as_string(*jn, tp + "/name");

      // per-task ring: base relations plus an optional extra quotient
      QRingPtr Rt = R;
      if (const auto* jq = opt_key(jt, "quotient")) {
        auto extra = parse_poly_list(*jq, P, tp + "/quotient");
        if (extra.empty()) vfail(tp + "/quotient", "must not be empty");
        auto rels = base_rels;
        rels.insert(rels.end(), extra.begin(), extra.end());
        try {
          Rt = QuotientRing::make(P, Ideal(P, rels));
        } catch (const Error& e) {
          vfail(tp + "/quotient", e.what(), e.code());
        }
      }

      // per-task bounds
      unsigned E = file_E;
      std::uint64_t Q = file_Q;
      if (const auto* jb = opt_key(jt, "bounds")) {
        const auto& o = as_object(*jb, tp + "/bounds");
        reject_unknown_keys(o, tp + "/bounds", {"E", "Q"});
        if (const auto* je = opt_key(o, "E"))
          E = static_cast<unsigned>(as_uint(*je, tp + "/bounds/E", 0, 64));
        if (const auto* jq = opt_key(o, "Q"))
          Q = as_uint(*jq, tp + "/bounds/Q", 1, UINT64_MAX);
      }
      const unsigned max_e = effective_level(p, E, Q, tp + "/bounds");

      // per-task minimal primes, certified now so bad input is an input
      // error (exit 3), not a failed task.
      std::vector<Ideal> primes = file_primes;
      if (const auto* jp2 = opt_key(jt, "minimal_primes"))
        primes = parse_ideal_list(*jp2, P, tp + "/minimal_primes");
      TCEnv env;
      try {
        env = make_env(Rt, primes, te, max_e);
      } catch (const Error& e) {
        vfail(tp, std::string("environment rejected: ") + e.what(),
              e.code());
      }

      auto module_at = [&](const char* key) -> PresentedModule {
        const auto nm =
            as_string(need(jt, tp, key), tp + "/" + key);
        auto it = specs.find(nm);
        if (it == specs.end())
          vfail(tp + "/" + key, "module \"" + nm + "\" is not declared");
        return PresentedModule::make(Rt, it->second.rank, it->second.rows);
      };
      auto opt_expect = [&](const char* key) -> std::optional<std::string> {
        if (const auto* je = opt_key(jt, key))
          return as_string(*je, tp + "/" + std::string(key));
        return std::nullopt;
      };

      if (kind == "tc_membership") {
        auto M = module_at("module");
        auto ngens = parse_vec_list(need(jt, tp, "ngens"), P, M.rank(),
                                    tp + "/ngens");
        auto z = parse_vec_at(need(jt, tp, "z"), P, M.rank(), tp + "/z");
        auto expect = opt_expect("expect");
        if (expect && *expect != "In" && *expect != "Out" &&
            *expect != "Unknown")
          vfail(tp + "/expect", "expected In, Out or Unknown");
        plans.push_back({name, kind, [env, M, ngens, z, expect](TaskResult& t) {
                           auto v = tc_membership(env, M, ngens, z);
                           t.verdict = to_string(v.tag);
                           t.bounded = verdict_bounded(v);
                           t.assumptions = v.assumptions;
                           t.data = to_json(v);
                           check_expect(t, expect, t.verdict);
                         }});
      } else if (kind == "phantom_regular") {
        auto M = module_at("module");
        auto x = parse_poly_at(as_string(need(jt, tp, "x"), tp + "/x"), P,
                               tp + "/x");
        auto expect = opt_expect("expect");
        if (expect && *expect != "CertifiedZerodivisor" &&
            *expect != "NotRefuted")
          vfail(tp + "/expect",
                "expected CertifiedZerodivisor or NotRefuted");
        auto expect_ev = opt_expect("expect_evidence");
        plans.push_back(
            {name, kind, [env, M, x, expect, expect_ev](TaskResult& t) {
               auto v = phantom_regular(env, x, M);
               t.verdict = to_string(v.tag);
               t.bounded = verdict_bounded(v);
               t.assumptions = v.assumptions;
               t.data = to_json(v);
               check_expect(t, expect, t.verdict);
               check_expect(t, expect_ev, to_string(v.evidence));
             }});
      } else if (kind == "phantom_depth") {
        auto M = module_at("module");
        PoolConfig cfg;
        cfg.pool_size = eff.pool_size;
        cfg.seed = eff.seed;
        if (const auto* jp2 = opt_key(jt, "pool"))
          cfg.supplied = parse_poly_list(*jp2, P, tp + "/pool");
        if (const auto* js = opt_key(jt, "pool_size"))
          cfg.pool_size = static_cast<unsigned>(
              as_uint(*js, tp + "/pool_size", 1, 256));
        std::optional<std::int64_t> expect_lb;
        if (const auto* je = opt_key(jt, "expect_lower_bound"))
          expect_lb = static_cast<std::int64_t>(
              as_uint(*je, tp + "/expect_lower_bound", 0, 1u << 20));
        auto expect_tail = opt_expect("expect_tail");
        if (expect_tail && *expect_tail != "certified-depth-0" &&
            *expect_tail != "bounded")
          vfail(tp + "/expect_tail",
                "expected certified-depth-0 or bounded");
        plans.push_back(
            {name, kind, [env, M, cfg, expect_lb, expect_tail](TaskResult& t) {
               auto r = phantom_depth(env, M, cfg);
               t.verdict = "depth>=" + std::to_string(r.lower_bound);
               t.bounded = r.tail == TailStatus::Bounded;
               t.assumptions = r.assumptions;
               t.data = to_json(r);
               check_expect_int(t, expect_lb,
                                static_cast<std::int64_t>(r.lower_bound),
                                "lower_bound");
               check_expect(t, expect_tail, to_string(r.tail));
             }});
      } else if (kind == "minheight") {
        std::optional<std::int64_t> expect_h;
        if (const auto* je = opt_key(jt, "expect"))
          expect_h = static_cast<std::int64_t>(
              as_uint(*je, tp + "/expect", 0, 1u << 20));
        plans.push_back({name, kind, [env, Rt, expect_h](TaskResult& t) {
                           const int h = minheight(*Rt, env.primes);
                           t.verdict = std::to_string(h);
                           t.assumptions = primality_assumptions(env.primes);
                           t.data = ordered_json{{"minheight", h}};
                           check_expect_int(t, expect_h, h, "minheight");
                         }});
      } else if (kind == "koszul_crosscheck") {
        auto M = module_at("module");
        auto xs = parse_poly_list(need(jt, tp, "xs"), P, tp + "/xs");
        if (xs.empty()) vfail(tp + "/xs", "must not be empty");
        std::optional<bool> expect_seq, expect_h1;
        if (const auto* je = opt_key(jt, "expect_seq_refuted"))
          expect_seq = as_bool(*je, tp + "/expect_seq_refuted");
        if (const auto* je = opt_key(jt, "expect_h1_refuted"))
          expect_h1 = as_bool(*je, tp + "/expect_h1_refuted");
        plans.push_back(
            {name, kind, [env, M, xs, expect_seq, expect_h1](TaskResult& t) {
               auto c = koszul_criterion_crosscheck(xs, M, env);
               t.verdict = c.consistent ? "consistent" : "inconsistent";
               t.bounded = crosscheck_bounded(c);
               t.assumptions = c.assumptions;
               t.data = to_json(c);
               t.mismatch = t.mismatch || !c.consistent;
               if (expect_seq && *expect_seq != c.seq_refuted) {
                 t.mismatch = true;
                 t.data["expected_seq_refuted"] = *expect_seq;
               }
               if (expect_h1 && *expect_h1 != c.h1_refuted) {
                 t.mismatch = true;
                 t.data["expected_h1_refuted"] = *expect_h1;
               }
             }});
      } else {  // ass_chain
        auto M = module_at("module");
        auto z = parse_vec_at(need(jt, tp, "z"), P, M.rank(), tp + "/z");
        plans.push_back({name, kind, [env, M, z](TaskResult& t) {
                           auto r = ass_chain_probe(env, M, z);
                           t.verdict = r.ok ? "ok" : "violated";
                           t.mismatch = !r.ok;
                           t.assumptions = r.assumptions;
                           t.data = to_json(r);
                         }});
      }
    }

    rep.params = ordered_json{{"p", p},
                              {"vars", vars},
                              {"order", to_string(order)},
                              {"max_e", file_E},
                              {"max_q", file_Q},
                              {"pool_size", eff.pool_size},
                              {"seed", eff.seed}};
  } catch (const Error& e) {
    rep.error = e.what();
    rep.tasks.clear();
    return rep;
  }

  for (const auto& plan : plans)
    rep.tasks.push_back(run_task(plan.name, plan.kind, plan.fn));
  return rep;
}

RunReport run_scenario_file(const std::string& path, const RunOptions& opt) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    RunReport rep;
    rep.seed = opt.seed;
    rep.error = path + ": cannot open file";
    return rep;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return run_scenario_text(ss.str(), opt);
}

}  // namespace ptc
