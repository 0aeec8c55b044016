#include "module.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <numeric>
#include <utility>

namespace ptc {

VecPoly vec_zero(const RingPtr& R, std::size_t rank) {
  return VecPoly(rank, Polynomial(R));
}

VecPoly vec_basis(const RingPtr& R, std::size_t rank, std::size_t i) {
  if (i >= rank) fail(Errc::InvalidArgument, "basis index out of range");
  VecPoly v = vec_zero(R, rank);
  v[i] = Polynomial::constant(R, 1);
  return v;
}

bool vec_is_zero(const VecPoly& v) {
  for (const auto& f : v)
    if (!f.is_zero()) return false;
  return true;
}

static void require_same_rank(const VecPoly& a, const VecPoly& b) {
  if (a.size() != b.size())
    fail(Errc::SignatureMismatch, "module ranks differ");
}

VecPoly vec_add(const VecPoly& a, const VecPoly& b) {
  require_same_rank(a, b);
  VecPoly out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = add(a[i], b[i]);
  return out;
}

VecPoly vec_sub(const VecPoly& a, const VecPoly& b) {
  require_same_rank(a, b);
  VecPoly out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = sub(a[i], b[i]);
  return out;
}

VecPoly vec_scale(const Polynomial& f, const VecPoly& v) {
  VecPoly out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = mul(f, v[i]);
  return out;
}

VecPoly vec_mul_term(const VecPoly& v, const Term& t) {
  VecPoly out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out[i] = v[i].is_zero() ? v[i] : mul_term(v[i], t);
  return out;
}

std::size_t vec_lead_pos(const VecPoly& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) return i;
  return vec_npos;
}

VecPoly vec_monic(const VecPoly& v) {
  const std::size_t pos = vec_lead_pos(v);
  if (pos == vec_npos) return v;
  const RingPtr& R = v[pos].ring();
  const std::uint32_t inv =
      mod_inverse(v[pos].lead().coeff, R->characteristic());
  VecPoly out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = scale(v[i], inv);
  return out;
}

std::string format_vec(const VecPoly& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_poly(v[i]);
  }
  return out + ")";
}

VecPoly transport_vec(const VecPoly& v, const RingPtr& target) {
  VecPoly out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = transport(v[i], target);
  return out;
}

QRingPtr QuotientRing::make(RingPtr poly, Ideal defining) {
  if (!poly) fail(Errc::InvalidArgument, "quotient ring needs a ring");
  if (defining.explicit_empty()) defining = Ideal(poly, {});
  require_same_ring(poly, defining.ring());
  if (is_unit_ideal(defining))
    fail(Errc::InvalidArgument, "defining ideal is the unit ideal");
  return QRingPtr(new QuotientRing(std::move(poly), std::move(defining)));
}

QRingPtr QuotientRing::poly_ring(RingPtr poly) {
  Ideal zero(poly, {});
  return make(std::move(poly), std::move(zero));
}

Polynomial QuotientRing::nf(const Polynomial& f) const {
  return normal_form(f, defining_);
}

int module_term_compare(std::size_t pos_a, const Monomial& a, std::size_t pos_b,
                        const Monomial& b, const RingSignature& sig) {
  if (pos_a != pos_b) return pos_a < pos_b ? 1 : -1;
  return compare(a, b, sig);
}

namespace {

struct MLead {
  std::size_t pos;
  const Term* term;
};

MLead mlead(const VecPoly& v) {
  const std::size_t pos = vec_lead_pos(v);
  return MLead{pos, pos == vec_npos ? nullptr : &v[pos].lead()};
}

std::uint64_t vec_sugar(const VecPoly& v) {
  std::uint64_t d = 0;
  for (const auto& f : v) d = std::max(d, f.degree());
  return d;
}

std::uint64_t mono_wdeg(const Monomial& m, const std::vector<std::uint64_t>& w) {
  std::uint64_t d = 0;
  for (std::size_t i = 0; i < w.size(); ++i) d += w[i] * m[i];
  return d;
}

std::uint64_t vec_wdeg(const VecPoly& v, const std::vector<std::uint64_t>& w) {
  std::uint64_t d = 0;
  for (const auto& f : v)
    for (const auto& t : f.terms()) d = std::max(d, mono_wdeg(t.mono, w));
  return d;
}

void primitive_row(std::vector<std::int64_t>& r) {
  std::int64_t g = 0;
  for (const auto x : r) g = std::gcd(g, x < 0 ? -x : x);
  if (g > 1)
    for (auto& x : r) x /= g;
}

// A strictly positive grading that makes every row homogeneous, or empty when
// the bounded search finds none. Exponent differences within a row are the
// linear constraints; we take a nullspace basis and nudge a combination of it
// into the positive orthant.
std::vector<std::uint64_t> homogeneous_weights(std::size_t n,
                                               const std::vector<VecPoly>& rows) {
  std::vector<std::vector<std::int64_t>> eqs;
  for (const auto& v : rows) {
    const Term* base = nullptr;
    for (const auto& f : v)
      for (const auto& t : f.terms()) {
        if (!base) {
          base = &t;
          continue;
        }
        std::vector<std::int64_t> d(n, 0);
        bool nz = false;
        for (std::size_t i = 0; i < n; ++i) {
          d[i] = static_cast<std::int64_t>(t.mono[i]) -
                 static_cast<std::int64_t>(base->mono[i]);
          nz = nz || d[i] != 0;
        }
        if (nz) eqs.push_back(std::move(d));
      }
  }
  const auto solves = [&](const std::vector<std::int64_t>& w) {
    for (const auto& eq : eqs) {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < n; ++i) s += eq[i] * w[i];
      if (s != 0) return false;
    }
    return true;
  };
  if (eqs.empty()) return std::vector<std::uint64_t>(n, 1);

  // fraction-free Gauss-Jordan; entries stay tiny after each gcd pass
  constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::vector<std::size_t> pivot_row(n, npos);
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < eqs.size(); ++c) {
    std::size_t k = r;
    while (k < eqs.size() && eqs[k][c] == 0) ++k;
    if (k == eqs.size()) continue;
    std::swap(eqs[r], eqs[k]);
    primitive_row(eqs[r]);
    for (std::size_t k2 = 0; k2 < eqs.size(); ++k2) {
      if (k2 == r || eqs[k2][c] == 0) continue;
      const __int128 a = eqs[r][c], b = eqs[k2][c];
      for (std::size_t j = 0; j < n; ++j) {
        const __int128 x = a * eqs[k2][j] - b * eqs[r][j];
        eqs[k2][j] = static_cast<std::int64_t>(x);
      }
      primitive_row(eqs[k2]);
    }
    pivot_row[c] = r;
    ++r;
  }

  std::vector<std::vector<std::int64_t>> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (pivot_row[f] != npos) continue;
    std::int64_t scale = 1;
    for (std::size_t c = 0; c < n; ++c)
      if (pivot_row[c] != npos)
        scale = std::lcm(scale, std::abs(eqs[pivot_row[c]][c]));
    std::vector<std::int64_t> b(n, 0);
    b[f] = scale;
    for (std::size_t c = 0; c < n; ++c)
      if (pivot_row[c] != npos)
        b[c] = -eqs[pivot_row[c]][f] * (scale / eqs[pivot_row[c]][c]);
    primitive_row(b);
    std::int64_t sum = 0;
    for (const auto x : b) sum += x;
    bool flip = sum < 0;
    if (sum == 0)
      for (const auto x : b) {
        if (x == 0) continue;
        flip = x < 0;
        break;
      }
    if (flip)
      for (auto& x : b) x = -x;
    basis.push_back(std::move(b));
  }
  if (basis.empty()) return {};

  const auto positive = [](const std::vector<std::int64_t>& c) {
    for (const auto x : c)
      if (x <= 0) return false;
    return true;
  };
  const std::size_t k = basis.size();
  std::vector<std::int64_t> w(n, 0);
  for (const auto& b : basis)
    for (std::size_t i = 0; i < n; ++i) w[i] += b[i];
  if (!positive(w) && k <= 4) {
    // small integer combinations cover every grading seen in practice; the
    // caller just loses the shortcut when this gives up
    w.assign(n, 0);
    std::vector<int> c(k, 0);
    for (;;) {
      std::size_t i = 0;
      while (i < k && ++c[i] > 3) c[i++] = -2;
      if (i == k) break;
      std::vector<std::int64_t> cand(n, 0);
      for (std::size_t j = 0; j < k; ++j)
        for (std::size_t t = 0; t < n; ++t) cand[t] += c[j] * basis[j][t];
      if (positive(cand)) {
        w = std::move(cand);
        break;
      }
    }
  }
  if (!positive(w) || !solves(w)) return {};
  std::vector<std::uint64_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<std::uint64_t>(w[i]);
  return out;
}

// Full division; when `sugars` given, raises `sugar_io` along the way.
VecPoly module_reduce_general(VecPoly cur, const std::vector<VecPoly>& basis,
                              const RingPtr& ring,
                              const std::vector<std::uint64_t>* sugars,
                              std::uint64_t* sugar_io) {
  const std::uint32_t p = ring->characteristic();
  VecPoly rem = vec_zero(ring, cur.size());
  for (;;) {
    const MLead lt = mlead(cur);
    if (lt.pos == vec_npos) break;
    bool hit = false;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const MLead gl = mlead(basis[k]);
      if (gl.pos != lt.pos || !gl.term->mono.divides(lt.term->mono)) continue;
      const std::uint64_t c = static_cast<std::uint64_t>(lt.term->coeff) *
                              mod_inverse(gl.term->coeff, p) % p;
      const Term t{lt.term->mono.divided_by(gl.term->mono),
                   static_cast<std::uint32_t>(c)};
      cur = vec_sub(cur, vec_mul_term(basis[k], t));
      if (sugars && sugar_io)
        *sugar_io = std::max(*sugar_io, (*sugars)[k] + t.mono.degree());
      hit = true;
      break;
    }
    if (!hit) {
      rem[lt.pos] =
          add(rem[lt.pos], Polynomial::monomial(ring, lt.term->mono,
                                                lt.term->coeff));
      const auto& ts = cur[lt.pos].terms();
      cur[lt.pos] =
          Polynomial::make(ring, std::vector<Term>(ts.begin() + 1, ts.end()));
    }
  }
  return rem;
}

std::vector<VecPoly> module_reduce_basis(const RingPtr& ring,
                                         std::vector<VecPoly> basis) {
  std::erase_if(basis, vec_is_zero);
  auto lead_less = [&](const VecPoly& a, const VecPoly& b) {
    const MLead la = mlead(a), lb = mlead(b);
    return module_term_compare(la.pos, la.term->mono, lb.pos, lb.term->mono,
                               *ring) < 0;
  };
  std::sort(basis.begin(), basis.end(), lead_less);
  std::vector<VecPoly> minimal;
  for (const auto& g : basis) {
    const MLead lg = mlead(g);
    bool redundant = false;
    for (const auto& h : minimal) {
      const MLead lh = mlead(h);
      if (lh.pos == lg.pos && lh.term->mono.divides(lg.term->mono)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) minimal.push_back(g);
  }
  std::vector<VecPoly> out;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<VecPoly> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    out.push_back(vec_monic(
        module_reduce_general(minimal[i], others, ring, nullptr, nullptr)));
  }
  std::sort(out.begin(), out.end(), lead_less);
  return out;
}

// When `wt` is given every row must be wt-homogeneous; pairs whose lcm sits
// above `wcap` are dropped, which leaves a basis that is still complete for
// dividing elements of weighted degree <= wcap.
std::vector<VecPoly> module_buchberger_impl(const RingPtr& P, std::size_t rank,
                                            std::vector<VecPoly> gens,
                                            std::size_t budget,
                                            const std::vector<std::uint64_t>* wt,
                                            std::uint64_t wcap) {
  std::vector<VecPoly> basis;
  std::vector<std::uint64_t> sugar;
  for (auto& v : gens) {
    if (v.size() != rank)
      fail(Errc::SignatureMismatch, "generator rank mismatch");
    for (const auto& f : v)
      if (!f.is_zero()) require_same_ring(P, f.ring());
    if (vec_is_zero(v)) continue;
    sugar.push_back(vec_sugar(v));
    basis.push_back(vec_monic(std::move(v)));
  }
  if (basis.empty()) return {};

  struct MPair {
    std::uint64_t sugar = 0;
    Monomial lcm;
    std::size_t pos = 0;
    std::size_t i = 0, j = 0;
  };
  std::vector<MPair> pairs;
  // Gebauer-Moeller update: prune the queue as each element arrives so chains
  // of similar leads do not explode into quadratically many null reductions.
  auto gm_update = [&](std::size_t jn) {
    const MLead ln = mlead(basis[jn]);
    std::erase_if(pairs, [&](const MPair& pr) {
      if (pr.pos != ln.pos || !ln.term->mono.divides(pr.lcm)) return false;
      const MLead li = mlead(basis[pr.i]), lj = mlead(basis[pr.j]);
      if (Monomial::lcm(li.term->mono, ln.term->mono) == pr.lcm) return false;
      if (Monomial::lcm(lj.term->mono, ln.term->mono) == pr.lcm) return false;
      return true;
    });
    struct Cand {
      Monomial lcm;
      std::size_t i = 0;
      bool coprime = false;
    };
    std::vector<Cand> cands;
    for (std::size_t i = 0; i < jn; ++i) {
      const MLead li = mlead(basis[i]);
      if (li.pos != ln.pos) continue;
      Monomial l = Monomial::lcm(li.term->mono, ln.term->mono);
      // dropping a pair above the cap is safe: any basis element dividing its
      // lcm keeps the chain-criterion pairs below the cap as well
      if (wt && mono_wdeg(l, *wt) > wcap) continue;
      // the coprimality shortcut is only valid in the ideal case
      cands.push_back(Cand{std::move(l), i,
                           rank == 1 && li.term->mono.coprime(ln.term->mono)});
    }
    std::vector<bool> drop(cands.size(), false);
    for (std::size_t a = 0; a < cands.size(); ++a)
      for (std::size_t b = 0; b < cands.size() && !drop[a]; ++b)
        if (a != b && cands[b].lcm != cands[a].lcm &&
            cands[b].lcm.divides(cands[a].lcm))
          drop[a] = true;
    for (std::size_t a = 0; a < cands.size(); ++a) {
      if (drop[a]) continue;
      bool coprime = cands[a].coprime;
      std::size_t keep = a;
      for (std::size_t b = a + 1; b < cands.size(); ++b) {
        if (drop[b] || cands[b].lcm != cands[a].lcm) continue;
        drop[b] = true;
        coprime = coprime || cands[b].coprime;
      }
      if (coprime) {
        drop[keep] = true;
        continue;
      }
      const MLead li = mlead(basis[cands[keep].i]);
      const std::uint64_t s =
          std::max(sugar[cands[keep].i] - li.term->mono.degree(),
                   sugar[jn] - ln.term->mono.degree()) +
          cands[keep].lcm.degree();
      pairs.push_back(MPair{s, cands[keep].lcm, ln.pos, cands[keep].i, jn});
    }
  };
  for (std::size_t j = 1; j < basis.size(); ++j) gm_update(j);

  std::size_t processed = 0;
  while (!pairs.empty()) {
    auto best = pairs.begin();
    for (auto it = std::next(pairs.begin()); it != pairs.end(); ++it) {
      const MPair &a = *it, &b = *best;
      bool less = false;
      if (a.sugar != b.sugar)
        less = a.sugar < b.sugar;
      else if (a.lcm.degree() != b.lcm.degree())
        less = a.lcm.degree() < b.lcm.degree();
      else if (a.pos != b.pos)
        less = a.pos > b.pos;  // lower POT rank first
      else if (int c = compare(a.lcm, b.lcm, *P); c != 0)
        less = c < 0;
      else if (a.i != b.i)
        less = a.i < b.i;
      else
        less = a.j < b.j;
      if (less) best = it;
    }
    MPair pr = std::move(*best);
    pairs.erase(best);
    if (++processed > budget)
      fail(Errc::Budget, "module Groebner pair budget exceeded");

    // No coprimality shortcut here: it is not valid for module S-pairs.
    const MLead li = mlead(basis[pr.i]), lj = mlead(basis[pr.j]);
    const Term ti{pr.lcm.divided_by(li.term->mono), 1};
    const Term tj{pr.lcm.divided_by(lj.term->mono), 1};
    VecPoly s = vec_sub(vec_mul_term(basis[pr.i], ti),
                        vec_mul_term(basis[pr.j], tj));
    std::uint64_t ssugar = std::max(sugar[pr.i] + ti.mono.degree(),
                                    sugar[pr.j] + tj.mono.degree());
    VecPoly r = module_reduce_general(std::move(s), basis, P, &sugar, &ssugar);
    if (vec_is_zero(r)) continue;
    basis.push_back(vec_monic(std::move(r)));
    sugar.push_back(ssugar);
    gm_update(basis.size() - 1);
  }
  return module_reduce_basis(P, std::move(basis));
}

}  // namespace

VecPoly module_reduce(const VecPoly& v, const std::vector<VecPoly>& basis) {
  const std::size_t pos = vec_lead_pos(v);
  if (pos == vec_npos) return v;
  return module_reduce_general(v, basis, v[pos].ring(), nullptr, nullptr);
}

std::vector<VecPoly> module_buchberger(const RingPtr& P, std::size_t rank,
                                       std::vector<VecPoly> gens,
                                       std::size_t budget) {
  return module_buchberger_impl(P, rank, std::move(gens), budget, nullptr, 0);
}

struct PresentedModule::Data {
  QRingPtr ring;
  std::size_t rank = 0;
  std::vector<VecPoly> relations;
  std::size_t budget = kDefaultPairBudget;
  mutable std::once_flag all_once;
  mutable std::vector<VecPoly> all;
  mutable std::once_flag gb_once;
  mutable std::vector<VecPoly> gb;
};

PresentedModule PresentedModule::make(QRingPtr ring, std::size_t rank,
                                      std::vector<VecPoly> relations,
                                      std::size_t budget) {
  if (!ring) fail(Errc::InvalidArgument, "module needs a ring");
  auto data = std::make_shared<Data>();
  data->ring = std::move(ring);
  data->rank = rank;
  data->budget = budget;
  const RingPtr& P = data->ring->poly();
  for (auto& r : relations) {
    if (r.size() != rank)
      fail(Errc::SignatureMismatch, "relation rank mismatch");
    for (const auto& f : r)
      if (!f.is_zero()) require_same_ring(P, f.ring());
    if (vec_is_zero(r)) continue;
    data->relations.push_back(std::move(r));
  }
  PresentedModule M;
  M.data_ = std::move(data);
  return M;
}

PresentedModule PresentedModule::free_module(QRingPtr ring, std::size_t rank,
                                             std::size_t budget) {
  return make(std::move(ring), rank, {}, budget);
}

PresentedModule PresentedModule::cyclic(QRingPtr ring, const Ideal& I,
                                        std::size_t budget) {
  require_same_ring(ring->poly(), I.ring());
  std::vector<VecPoly> rels;
  for (const auto& g : I.gens()) rels.push_back(VecPoly{g});
  return make(std::move(ring), 1, std::move(rels), budget);
}

const QRingPtr& PresentedModule::ring() const {
  if (!data_) fail(Errc::InvalidArgument, "module is empty-initialized");
  return data_->ring;
}

std::size_t PresentedModule::rank() const {
  if (!data_) fail(Errc::InvalidArgument, "module is empty-initialized");
  return data_->rank;
}

const std::vector<VecPoly>& PresentedModule::relations() const {
  if (!data_) fail(Errc::InvalidArgument, "module is empty-initialized");
  return data_->relations;
}

const std::vector<VecPoly>& PresentedModule::all_relations() const {
  if (!data_) fail(Errc::InvalidArgument, "module is empty-initialized");
  std::call_once(data_->all_once, [this] {
    data_->all = data_->relations;
    const RingPtr& P = data_->ring->poly();
    for (const auto& g : data_->ring->defining().groebner_basis())
      for (std::size_t i = 0; i < data_->rank; ++i) {
        VecPoly row = vec_zero(P, data_->rank);
        row[i] = g;
        data_->all.push_back(std::move(row));
      }
  });
  return data_->all;
}

const std::vector<VecPoly>& PresentedModule::relation_gb() const {
  if (!data_) fail(Errc::InvalidArgument, "module is empty-initialized");
  std::call_once(data_->gb_once, [this] {
    data_->gb = module_buchberger(data_->ring->poly(), data_->rank,
                                  all_relations(), data_->budget);
  });
  return data_->gb;
}

std::size_t PresentedModule::pair_budget() const {
  return data_ ? data_->budget : kDefaultPairBudget;
}

VecPoly module_nf(const PresentedModule& M, const VecPoly& v) {
  if (v.size() != M.rank())
    fail(Errc::SignatureMismatch, "element rank mismatch");
  return module_reduce(v, M.relation_gb());
}

bool is_zero_in(const PresentedModule& M, const VecPoly& v) {
  return vec_is_zero(module_nf(M, v));
}

bool equal_in(const PresentedModule& M, const VecPoly& a, const VecPoly& b) {
  return is_zero_in(M, vec_sub(a, b));
}

bool is_zero_module(const PresentedModule& M) {
  const RingPtr& P = M.ring()->poly();
  for (std::size_t i = 0; i < M.rank(); ++i)
    if (!is_zero_in(M, vec_basis(P, M.rank(), i))) return false;
  return true;
}

struct Submodule::Data {
  PresentedModule ambient;
  std::vector<VecPoly> gens;
  mutable std::once_flag gb_once;
  mutable std::vector<VecPoly> gb;
  mutable bool gb_ready = false;
  mutable std::once_flag grading_once;
  mutable std::vector<std::uint64_t> grading;  // empty: no positive grading
  mutable bool trunc_ready = false;
  mutable std::uint64_t trunc_deg = 0;
  mutable std::vector<VecPoly> trunc_gb;

  std::vector<VecPoly> rows() const {
    std::vector<VecPoly> out = gens;
    const auto& rels = ambient.all_relations();
    out.insert(out.end(), rels.begin(), rels.end());
    return out;
  }
};

Submodule::Submodule(PresentedModule ambient, std::vector<VecPoly> gens) {
  auto data = std::make_shared<Data>();
  const std::size_t rank = ambient.rank();
  const RingPtr& P = ambient.ring()->poly();
  for (auto& g : gens) {
    if (g.size() != rank)
      fail(Errc::SignatureMismatch, "submodule generator rank mismatch");
    for (const auto& f : g)
      if (!f.is_zero()) require_same_ring(P, f.ring());
    if (vec_is_zero(g)) continue;
    data->gens.push_back(std::move(g));
  }
  data->ambient = std::move(ambient);
  data_ = std::move(data);
}

const PresentedModule& Submodule::ambient() const {
  if (!data_) fail(Errc::InvalidArgument, "submodule is empty-initialized");
  return data_->ambient;
}

const std::vector<VecPoly>& Submodule::gens() const {
  if (!data_) fail(Errc::InvalidArgument, "submodule is empty-initialized");
  return data_->gens;
}

const std::vector<VecPoly>& Submodule::gb() const {
  if (!data_) fail(Errc::InvalidArgument, "submodule is empty-initialized");
  std::call_once(data_->gb_once, [this] {
    data_->gb = module_buchberger(data_->ambient.ring()->poly(),
                                  data_->ambient.rank(), data_->rows(),
                                  data_->ambient.pair_budget());
    data_->gb_ready = true;
  });
  return data_->gb;
}

bool Submodule::contains(const VecPoly& v) const {
  if (v.size() != ambient().rank())
    fail(Errc::SignatureMismatch, "element rank mismatch");
  if (vec_is_zero(v)) return true;
  if (!data_->gb_ready) {
    std::call_once(data_->grading_once, [this] {
      data_->grading = homogeneous_weights(
          data_->ambient.ring()->poly()->nvars(), data_->rows());
    });
    // Graded generators let membership get by with the basis truncated at the
    // query's weighted degree; bracket powers stay cheap to probe this way.
    if (!data_->grading.empty()) {
      const std::uint64_t d = vec_wdeg(v, data_->grading);
      if (!data_->trunc_ready || d > data_->trunc_deg) {
        data_->trunc_gb = module_buchberger_impl(
            data_->ambient.ring()->poly(), data_->ambient.rank(),
            data_->rows(), data_->ambient.pair_budget(), &data_->grading, d);
        data_->trunc_deg = d;
        data_->trunc_ready = true;
      }
      return vec_is_zero(module_reduce(v, data_->trunc_gb));
    }
  }
  return vec_is_zero(module_reduce(v, gb()));
}

std::vector<VecPoly> syzygies_mod(const RingPtr& P, std::size_t rank,
                                  const std::vector<VecPoly>& vs,
                                  const std::vector<VecPoly>& rels,
                                  std::size_t budget) {
  const std::size_t s = vs.size();
  if (s == 0) return {};
  const std::size_t block = rank + s;
  std::vector<VecPoly> gens;
  for (std::size_t j = 0; j < s; ++j) {
    if (vs[j].size() != rank)
      fail(Errc::SignatureMismatch, "syzygy input rank mismatch");
    VecPoly g = vs[j];
    g.resize(block, Polynomial(P));
    g[rank + j] = Polynomial::constant(P, 1);
    gens.push_back(std::move(g));
  }
  for (const auto& w : rels) {
    if (w.size() != rank)
      fail(Errc::SignatureMismatch, "syzygy relation rank mismatch");
    VecPoly g = w;
    g.resize(block, Polynomial(P));
    gens.push_back(std::move(g));
  }
  std::vector<VecPoly> out;
  for (const auto& g : module_buchberger(P, block, std::move(gens), budget)) {
    if (vec_lead_pos(g) < rank) continue;  // touches the leading block
    out.push_back(VecPoly(g.begin() + static_cast<std::ptrdiff_t>(rank),
                          g.end()));
  }
  return out;
}

std::vector<VecPoly> colon_submodule_gens(const PresentedModule& M,
                                          const std::vector<VecPoly>& ngens,
                                          const Polynomial& f) {
  const RingPtr& P = M.ring()->poly();
  require_same_ring(P, f.ring());
  if (f.is_zero()) fail(Errc::InvalidArgument, "colon by zero");
  const std::size_t r = M.rank();
  std::vector<VecPoly> vs;
  for (std::size_t i = 0; i < r; ++i)
    vs.push_back(vec_scale(f, vec_basis(P, r, i)));
  std::vector<VecPoly> rels = ngens;
  const auto& mr = M.all_relations();
  rels.insert(rels.end(), mr.begin(), mr.end());
  std::vector<VecPoly> out;
  for (const auto& a : syzygies_mod(P, r, vs, rels, M.pair_budget())) {
    VecPoly nf = module_nf(M, a);
    if (!vec_is_zero(nf)) out.push_back(std::move(nf));
  }
  // smallest generators first: callers probe these one by one and cheap
  // certificates tend to live in low degree
  const RingSignature& sig = *P;
  std::stable_sort(out.begin(), out.end(),
                   [&sig](const VecPoly& a, const VecPoly& b) {
                     const std::uint64_t da = vec_sugar(a), db = vec_sugar(b);
                     if (da != db) return da < db;
                     const MLead la = mlead(a), lb = mlead(b);
                     return module_term_compare(la.pos, la.term->mono, lb.pos,
                                                lb.term->mono, sig) < 0;
                   });
  return out;
}

Ideal colon_ideal_of_element(const PresentedModule& M,
                             const std::vector<VecPoly>& ngens,
                             const VecPoly& v) {
  const RingPtr& P = M.ring()->poly();
  if (v.size() != M.rank())
    fail(Errc::SignatureMismatch, "element rank mismatch");
  std::vector<VecPoly> rels = ngens;
  const auto& mr = M.all_relations();
  rels.insert(rels.end(), mr.begin(), mr.end());
  std::vector<Polynomial> gens;
  for (const auto& a :
       syzygies_mod(P, M.rank(), {v}, rels, M.pair_budget()))
    if (!a[0].is_zero()) gens.push_back(a[0]);
  return Ideal(P, std::move(gens), M.pair_budget());
}

Ideal annihilator_ideal(const PresentedModule& M, const VecPoly& v) {
  return colon_ideal_of_element(M, {}, v);
}

PresentedModule quotient_module(const PresentedModule& M,
                                const std::vector<VecPoly>& ngens) {
  std::vector<VecPoly> rels = M.relations();
  rels.insert(rels.end(), ngens.begin(), ngens.end());
  return PresentedModule::make(M.ring(), M.rank(), std::move(rels),
                               M.pair_budget());
}

}  // namespace ptc
