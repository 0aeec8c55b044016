#include "report.hpp"

#include <chrono>
#include <sstream>

namespace ptc {

namespace {

ordered_json strings(const std::vector<std::string>& v) {
  ordered_json a = ordered_json::array();
  for (const auto& s : v) a.push_back(s);
  return a;
}

ordered_json vec_json(const VecPoly& v) {
  ordered_json a = ordered_json::array();
  for (const auto& f : v) a.push_back(format_poly(f));
  return a;
}

ordered_json vecs_json(const std::vector<VecPoly>& vs) {
  ordered_json a = ordered_json::array();
  for (const auto& v : vs) a.push_back(vec_json(v));
  return a;
}

ordered_json assumptions_json(const std::vector<Assumption>& as) {
  ordered_json a = ordered_json::array();
  for (const auto& x : as) a.push_back(to_json(x));
  return a;
}

ordered_json facts_json(const std::vector<Fact>& fs) {
  ordered_json a = ordered_json::array();
  for (const auto& f : fs) a.push_back(to_json(f));
  return a;
}

}  // namespace

ordered_json to_json(const Fact& f) {
  ordered_json j;
  j["claim"] = f.claim;
  j["ring"] = {{"p", f.ring.p}, {"vars", strings(f.ring.vars)},
               {"order", f.ring.order}};
  j["rank"] = f.rank;
  ordered_json rows = ordered_json::array();
  for (const auto& r : f.rows) rows.push_back(strings(r));
  j["rows"] = rows;
  j["element"] = strings(f.element);
  if (!f.note.empty()) j["note"] = f.note;
  return j;
}

ordered_json to_json(const Assumption& a) {
  return ordered_json{{"kind", a.kind}, {"detail", a.detail}};
}

ordered_json to_json(const ClosureVerdict& v) {
  ordered_json j;
  j["tag"] = to_string(v.tag);
  j["rule"] = to_string(v.rule);
  j["e"] = v.e;
  j["q"] = v.q;
  if (v.bound_q) j["bound_q"] = v.bound_q;
  if (!v.detail.empty()) j["detail"] = v.detail;
  j["facts"] = facts_json(v.facts);
  j["assumptions"] = assumptions_json(v.assumptions);
  return j;
}

ordered_json to_json(const PhantomRegVerdict& v) {
  ordered_json j;
  j["tag"] = to_string(v.tag);
  j["evidence"] = to_string(v.evidence);
  if (v.tag == PhantomTag::CertifiedZerodivisor) {
    j["e"] = v.e;
    j["witness"] = vec_json(v.witness);
    if (v.out_certificate) j["out_certificate"] = to_json(*v.out_certificate);
  } else {
    j["bound_e"] = v.bound_e;
    j["bound_q"] = v.bound_q;
  }
  j["facts"] = facts_json(v.facts);
  j["assumptions"] = assumptions_json(v.assumptions);
  return j;
}

ordered_json to_json(const DepthReport& r) {
  ordered_json seq = ordered_json::array();
  for (const auto& s : r.sequence)
    seq.push_back(ordered_json{{"x", format_poly(s.x)},
                               {"evidence", to_string(s.evidence)}});
  ordered_json refs = ordered_json::array();
  for (const auto& v : r.tail_refutations) refs.push_back(to_json(v));
  ordered_json j;
  j["sequence"] = seq;
  j["lower_bound"] = r.lower_bound;
  j["tail"] = to_string(r.tail);
  j["tail_refutations"] = refs;
  j["assumptions"] = assumptions_json(r.assumptions);
  return j;
}

ordered_json to_json(const HomologyVerdict& v) {
  ordered_json cy = ordered_json::array();
  for (const auto& c : v.cycles)
    cy.push_back(ordered_json{{"cycle", vec_json(c.candidate)},
                              {"verdict", to_json(c.verdict)}});
  return ordered_json{{"tag", to_string(v.tag)},
                      {"cycles", cy},
                      {"assumptions", assumptions_json(v.assumptions)}};
}

ordered_json to_json(const KoszulCrosscheck& c) {
  ordered_json seq = ordered_json::array();
  for (const auto& v : c.sequence_verdicts) seq.push_back(to_json(v));
  ordered_json lv = ordered_json::array();
  for (const auto& L : c.levels) {
    ordered_json hj = ordered_json::array();
    for (const auto& h : L.hj) hj.push_back(to_json(h));
    lv.push_back(ordered_json{{"e", L.e}, {"h", hj}});
  }
  ordered_json j;
  j["sequence_verdicts"] = seq;
  j["seq_refuted"] = c.seq_refuted;
  j["levels"] = lv;
  j["h1_refuted"] = c.h1_refuted;
  j["consistent"] = c.consistent;
  j["detail"] = c.detail;
  j["assumptions"] = assumptions_json(c.assumptions);
  return j;
}

ordered_json to_json(const FormulaReport& r) {
  ordered_json tv = ordered_json::array();
  for (const auto& v : r.transfer_verdicts) tv.push_back(to_json(v));
  ordered_json j;
  j["base_depth"] = to_json(r.base_depth);
  j["total_depth"] = to_json(r.total_depth);
  j["fiber_depth"] = r.fiber_depth;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["verdict"] = to_string(r.verdict);
  j["fiber_exact"] = r.fiber_exact;
  j["transfer_ok"] = r.transfer_ok;
  j["transfer_verdicts"] = tv;
  j["detail"] = r.detail;
  j["assumptions"] = assumptions_json(r.assumptions);
  return j;
}

ordered_json to_json(const ColonFlatnessReport& r) {
  return ordered_json{{"equal", r.equal},
                      {"e", r.e},
                      {"lhs", vecs_json(r.lhs)},
                      {"rhs", vecs_json(r.rhs)}};
}

ordered_json to_json(const AssChainReport& r) {
  auto checks = [](const std::vector<ContainmentCheck>& cs) {
    ordered_json a = ordered_json::array();
    for (const auto& c : cs)
      a.push_back(ordered_json{{"generator", c.generator}, {"holds", c.holds}});
    return a;
  };
  ordered_json j;
  j["K"] = strings([&] {
    std::vector<std::string> g;
    for (const auto& f : r.K.gens()) g.push_back(format_poly(f));
    return g;
  }());
  j["K1"] = strings([&] {
    std::vector<std::string> g;
    for (const auto& f : r.K1.gens()) g.push_back(format_poly(f));
    return g;
  }());
  j["bracket_in_K1"] = checks(r.bracket_in_K1);
  j["K1_in_K"] = checks(r.K1_in_K);
  j["ok"] = r.ok;
  j["assumptions"] = assumptions_json(r.assumptions);
  return j;
}

ordered_json to_json(const CmfiReport& r) {
  ordered_json j;
  j["tag"] = to_string(r.tag);
  j["base_out"] = to_json(r.base_out);
  j["total"] = to_json(r.total);
  j["assumptions"] = assumptions_json(r.assumptions);
  return j;
}

ordered_json report_to_json(const RunReport& rep) {
  ordered_json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["seed"] = rep.seed;
  j["params"] = rep.params.is_null() ? ordered_json::object() : rep.params;
  if (!rep.error.empty()) {
    j["error"] = rep.error;
    j["tasks"] = ordered_json::array();
    j["exit_code"] = 3;
    return j;
  }
  ordered_json tasks = ordered_json::array();
  for (const auto& t : rep.tasks) {
    ordered_json tj;
    tj["name"] = t.name;
    tj["kind"] = t.kind;
    tj["verdict"] = t.verdict;
    tj["bounded"] = t.bounded;
    tj["mismatch"] = t.mismatch;
    tj["assumptions"] = assumptions_json(t.assumptions);
    tj["data"] = t.data.is_null() ? ordered_json::object() : t.data;
    tj["wall_ms"] = t.wall_ms;
    tasks.push_back(std::move(tj));
  }
  j["tasks"] = tasks;
  j["exit_code"] = report_exit_code(rep);
  return j;
}

std::string report_to_text(const RunReport& rep) {
  std::ostringstream os;
  os << kToolName << " " << kToolVersion << "  seed=" << rep.seed << "\n";
  if (!rep.error.empty()) {
    os << "error: " << rep.error << "\n";
    return os.str();
  }
  std::size_t i = 0;
  for (const auto& t : rep.tasks) {
    os << "[" << ++i << "] " << t.name << ": " << t.verdict;
    if (t.mismatch) os << "  MISMATCH";
    else if (t.bounded) os << "  (bounded)";
    if (!t.assumptions.empty()) {
      os << "  assumes{";
      for (std::size_t k = 0; k < t.assumptions.size(); ++k)
        os << (k ? "," : "") << t.assumptions[k].kind;
      os << "}";
    }
    os << "  " << t.wall_ms << "ms\n";
  }
  os << "exit: " << report_exit_code(rep) << "\n";
  return os.str();
}

int report_exit_code(const RunReport& rep) {
  if (!rep.error.empty()) return 3;
  bool bounded = false;
  for (const auto& t : rep.tasks) {
    if (t.mismatch) return 1;
    bounded = bounded || t.bounded;
  }
  return bounded ? 2 : 0;
}

TaskResult run_task(const std::string& name, const std::string& kind,
                    const std::function<void(TaskResult&)>& fn) {
  TaskResult t;
  t.name = name;
  t.kind = kind;
  const auto start = std::chrono::steady_clock::now();
  try {
    fn(t);
  } catch (const Error& e) {
    if (e.code() == Errc::Budget) {
      // ran out of pair/level budget: inconclusive, not wrong
      t.verdict = "budget-exhausted";
      t.bounded = true;
    } else {
      t.verdict = "error";
      t.mismatch = true;
    }
    t.data = ordered_json{{"error", e.what()}};
  }
  t.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
  return t;
}

}  // namespace ptc
