#include "groebner.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <mutex>
#include <set>
#include <string>
#include <utility>

namespace ptc {

namespace {

// Full division remainder. Divisors may have arbitrary lead coefficients and
// need not form a GB. When `sugars` is given, `sugar_io` is raised along the
// reduction (sugar bookkeeping for Buchberger).
Polynomial reduce_general(Polynomial cur, const std::vector<Polynomial>& basis,
                          const std::vector<std::uint64_t>* sugars,
                          std::uint64_t* sugar_io) {
  if (cur.is_zero()) return cur;
  const RingPtr& ring = cur.ring();
  const std::uint32_t p = ring->characteristic();
  std::vector<Term> rem;
  while (!cur.is_zero()) {
    Term lt = cur.lead();
    bool hit = false;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (basis[k].is_zero()) continue;
      const Term& glt = basis[k].lead();
      if (!glt.mono.divides(lt.mono)) continue;
      std::uint64_t c =
          static_cast<std::uint64_t>(lt.coeff) * mod_inverse(glt.coeff, p) % p;
      Term t{lt.mono.divided_by(glt.mono), static_cast<std::uint32_t>(c)};
      cur = sub(cur, mul_term(basis[k], t));
      if (sugars && sugar_io)
        *sugar_io = std::max(*sugar_io, (*sugars)[k] + t.mono.degree());
      hit = true;
      break;
    }
    if (!hit) {
      rem.push_back(lt);
      cur = Polynomial::make(
          ring, std::vector<Term>(cur.terms().begin() + 1, cur.terms().end()));
    }
  }
  return Polynomial::make(ring, std::move(rem));
}

// Minimalize (drop generators with redundant lead terms), fully autoreduce,
// make monic, sort ascending by lead. This output is the unique reduced GB.
std::vector<Polynomial> reduce_basis(const RingPtr& ring,
                                     std::vector<Polynomial> basis) {
  std::erase_if(basis, [](const Polynomial& g) { return g.is_zero(); });
  std::sort(basis.begin(), basis.end(),
            [&](const Polynomial& a, const Polynomial& b) {
              return compare(a.lead().mono, b.lead().mono, *ring) < 0;
            });
  std::vector<Polynomial> minimal;
  for (const auto& g : basis) {
    bool redundant = false;
    for (const auto& h : minimal)
      if (h.lead().mono.divides(g.lead().mono)) {
        redundant = true;
        break;
      }
    if (!redundant) minimal.push_back(g);
  }
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Polynomial> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    out.push_back(monic(reduce_general(minimal[i], others, nullptr, nullptr)));
  }
  std::sort(out.begin(), out.end(),
            [&](const Polynomial& a, const Polynomial& b) {
              return compare(a.lead().mono, b.lead().mono, *ring) < 0;
            });
  return out;
}

struct SPair {
  std::uint64_t sugar = 0;
  Monomial lcm;
  std::size_t i = 0, j = 0;
};

bool pair_less(const SPair& a, const SPair& b, const RingSignature& sig) {
  if (a.sugar != b.sugar) return a.sugar < b.sugar;
  const std::uint64_t da = a.lcm.degree(), db = b.lcm.degree();
  if (da != db) return da < db;
  if (int c = compare(a.lcm, b.lcm, sig); c != 0) return c < 0;
  if (a.i != b.i) return a.i < b.i;
  return a.j < b.j;
}

// Fresh elimination-variable name not colliding with the ring's variables
// ('@' is not expressible in the public grammar, but internally built rings
// could nest).
std::string fresh_elim_name(const RingSignature& sig) {
  std::string name = "@t";
  for (int k = 0; sig.var_index(name).has_value(); ++k)
    name = "@t" + std::to_string(k);
  return name;
}

bool all_terms_linear(const Polynomial& g) {
  for (const auto& t : g.terms())
    if (t.mono.degree() != 1) return false;
  return true;
}

}  // namespace

struct Ideal::Data {
  RingPtr ring;
  std::vector<Polynomial> gens;
  std::size_t budget = kDefaultPairBudget;
  mutable std::once_flag once;
  mutable std::vector<Polynomial> gb;
  mutable std::atomic<bool> gb_done{false};
};

Ideal::Ideal(RingPtr ring, std::vector<Polynomial> gens,
             std::size_t pair_budget) {
  if (!ring) fail(Errc::InvalidArgument, "ideal needs a ring");
  auto data = std::make_shared<Data>();
  data->ring = ring;
  data->budget = pair_budget;
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    require_same_ring(ring, g.ring());
    data->gens.push_back(std::move(g));
  }
  data_ = std::move(data);
}

const RingPtr& Ideal::ring() const {
  if (!data_) fail(Errc::InvalidArgument, "ideal is empty-initialized");
  return data_->ring;
}

const std::vector<Polynomial>& Ideal::gens() const {
  if (!data_) fail(Errc::InvalidArgument, "ideal is empty-initialized");
  return data_->gens;
}

const std::vector<Polynomial>& Ideal::groebner_basis() const {
  if (!data_) fail(Errc::InvalidArgument, "ideal is empty-initialized");
  std::call_once(data_->once, [this] {
    data_->gb = buchberger(data_->ring, data_->gens, data_->budget);
    data_->gb_done.store(true);
  });
  return data_->gb;
}

bool Ideal::gb_computed() const { return data_ && data_->gb_done.load(); }

std::size_t Ideal::pair_budget() const {
  return data_ ? data_->budget : kDefaultPairBudget;
}

bool Ideal::is_zero() const { return !data_ || data_->gens.empty(); }

std::vector<Polynomial> buchberger(const RingPtr& ring,
                                   std::vector<Polynomial> gens,
                                   std::size_t pair_budget) {
  std::vector<Polynomial> basis;
  std::vector<std::uint64_t> sugar;
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    require_same_ring(ring, g.ring());
    sugar.push_back(g.degree());
    basis.push_back(monic(std::move(g)));
  }
  if (basis.empty()) return {};

  std::vector<SPair> pairs;
  std::set<std::pair<std::size_t, std::size_t>> pending;
  auto push_pair = [&](std::size_t i, std::size_t j) {
    const Monomial& mi = basis[i].lead().mono;
    const Monomial& mj = basis[j].lead().mono;
    Monomial l = Monomial::lcm(mi, mj);
    const std::uint64_t s = std::max(sugar[i] - mi.degree(),
                                     sugar[j] - mj.degree()) +
                            l.degree();
    pairs.push_back(SPair{s, std::move(l), i, j});
    pending.insert({i, j});
  };
  for (std::size_t j = 1; j < basis.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) push_pair(i, j);

  std::size_t processed = 0;
  while (!pairs.empty()) {
    auto best = pairs.begin();
    for (auto it = std::next(pairs.begin()); it != pairs.end(); ++it)
      if (pair_less(*it, *best, *ring)) best = it;
    SPair pr = std::move(*best);
    pairs.erase(best);
    pending.erase({pr.i, pr.j});
    if (++processed > pair_budget)
      fail(Errc::Budget, "Groebner pair budget exceeded (" +
                             std::to_string(pair_budget) + " pairs)");

    const Monomial& mi = basis[pr.i].lead().mono;
    const Monomial& mj = basis[pr.j].lead().mono;
    if (mi.coprime(mj)) continue;  // Buchberger's first criterion

    // Chain criterion: some k with lt_k | lcm(i,j) and both flanking pairs
    // already handled.
    bool skip = false;
    for (std::size_t k = 0; k < basis.size() && !skip; ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (!basis[k].lead().mono.divides(pr.lcm)) continue;
      const auto ik = std::minmax(pr.i, k);
      const auto jk = std::minmax(pr.j, k);
      if (!pending.count({ik.first, ik.second}) &&
          !pending.count({jk.first, jk.second}))
        skip = true;
    }
    if (skip) continue;

    const Term ti{pr.lcm.divided_by(mi), 1};
    const Term tj{pr.lcm.divided_by(mj), 1};
    Polynomial s = sub(mul_term(basis[pr.i], ti), mul_term(basis[pr.j], tj));
    std::uint64_t ssugar = std::max(sugar[pr.i] + ti.mono.degree(),
                                    sugar[pr.j] + tj.mono.degree());
    Polynomial r = reduce_general(std::move(s), basis, &sugar, &ssugar);
    if (r.is_zero()) continue;
    basis.push_back(monic(std::move(r)));
    sugar.push_back(ssugar);
    const std::size_t jnew = basis.size() - 1;
    for (std::size_t i = 0; i < jnew; ++i) push_pair(i, jnew);
  }
  return reduce_basis(ring, std::move(basis));
}

Polynomial reduce_by(const Polynomial& f,
                     const std::vector<Polynomial>& basis) {
  for (const auto& g : basis)
    if (!g.is_zero()) require_same_ring(f.ring(), g.ring());
  return reduce_general(f, basis, nullptr, nullptr);
}

Polynomial normal_form(const Polynomial& f, const Ideal& I) {
  require_same_ring(f.ring(), I.ring());
  return reduce_general(f, I.groebner_basis(), nullptr, nullptr);
}

bool ideal_contains(const Ideal& I, const Polynomial& f) {
  return normal_form(f, I).is_zero();
}

bool same_ideal(const Ideal& I, const Ideal& J) {
  require_same_ring(I.ring(), J.ring());
  return I.groebner_basis() == J.groebner_basis();
}

bool is_unit_ideal(const Ideal& I) {
  const auto& gb = I.groebner_basis();
  return !gb.empty() && gb.front().is_constant();
}

Ideal colon_ideal(const Ideal& I, const Polynomial& f) {
  if (f.is_zero()) fail(Errc::InvalidArgument, "colon by the zero polynomial");
  require_same_ring(I.ring(), f.ring());
  if (I.is_zero()) return Ideal(I.ring(), {}, I.pair_budget());
  const Ideal fI(I.ring(), {f}, I.pair_budget());
  const Ideal meet = intersect_ideals(I, fI);
  std::vector<Polynomial> gens;
  for (const auto& g : meet.groebner_basis())
    gens.push_back(exact_divide(g, f));
  return Ideal(I.ring(), std::move(gens), I.pair_budget());
}

Ideal intersect_ideals(const Ideal& I, const Ideal& J) {
  require_same_ring(I.ring(), J.ring());
  const RingPtr& R = I.ring();
  const std::size_t budget = std::max(I.pair_budget(), J.pair_budget());
  if (I.is_zero() || J.is_zero()) return Ideal(R, {}, budget);

  std::vector<std::string> vars{fresh_elim_name(*R)};
  vars.insert(vars.end(), R->vars().begin(), R->vars().end());
  const RingPtr E =
      RingSignature::make_elim(R->characteristic(), vars, R->order(), 1);
  const Polynomial t = Polynomial::variable(E, 0);
  const Polynomial omt = sub(Polynomial::constant(E, 1), t);
  std::vector<Polynomial> gens;
  for (const auto& g : I.gens()) gens.push_back(mul(t, transport(g, E)));
  for (const auto& h : J.gens()) gens.push_back(mul(omt, transport(h, E)));
  const Ideal K(E, std::move(gens), budget);

  std::vector<Polynomial> out;
  for (const auto& g : K.groebner_basis()) {
    bool uses_t = false;
    for (const auto& tm : g.terms())
      if (tm.mono[0] > 0) {
        uses_t = true;
        break;
      }
    if (!uses_t) out.push_back(transport(g, R));
  }
  return Ideal(R, std::move(out), budget);
}

Ideal bracket_power_ideal(const Ideal& I, unsigned e) {
  std::vector<Polynomial> gens;
  for (const auto& g : I.gens()) gens.push_back(frobenius_pow(g, e));
  return Ideal(I.ring(), std::move(gens), I.pair_budget());
}

bool radical_membership(const Polynomial& f, const Ideal& I) {
  require_same_ring(f.ring(), I.ring());
  if (f.is_zero()) return true;
  if (ideal_contains(I, f)) return true;
  if (I.is_zero()) return false;

  const RingPtr& R = I.ring();
  std::vector<std::string> vars{fresh_elim_name(*R)};
  vars.insert(vars.end(), R->vars().begin(), R->vars().end());
  const RingPtr E =
      RingSignature::make_elim(R->characteristic(), vars, R->order(), 1);
  const Polynomial t = Polynomial::variable(E, 0);
  std::vector<Polynomial> gens;
  for (const auto& g : I.gens()) gens.push_back(transport(g, E));
  gens.push_back(sub(Polynomial::constant(E, 1), mul(t, transport(f, E))));
  return is_unit_ideal(Ideal(E, std::move(gens), I.pair_budget()));
}

int krull_dimension(const Ideal& Q) {
  if (is_unit_ideal(Q))
    fail(Errc::InvalidArgument, "krull dimension of the unit ideal");
  const std::size_t n = Q.ring()->nvars();
  if (n > 20)
    fail(Errc::InvalidArgument, "too many variables for dimension search");
  std::vector<Monomial> leads;
  for (const auto& g : Q.groebner_basis()) leads.push_back(g.lead().mono);

  int best = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool independent = true;
    for (const auto& m : leads) {
      bool supported_inside = true;
      for (std::size_t v = 0; v < n; ++v)
        if (m[v] > 0 && !((mask >> v) & 1u)) {
          supported_inside = false;
          break;
        }
      if (supported_inside) {
        independent = false;
        break;
      }
    }
    if (independent) best = std::max(best, std::popcount(mask));
  }
  return best;
}

Polynomial exact_divide(const Polynomial& g, const Polynomial& f) {
  if (f.is_zero()) fail(Errc::InvalidArgument, "division by zero polynomial");
  require_same_ring(g.ring(), f.ring());
  const RingPtr& R = g.ring();
  const std::uint32_t p = R->characteristic();
  const std::uint32_t finv = mod_inverse(f.lead().coeff, p);
  Polynomial cur = g;
  std::vector<Term> quot;
  while (!cur.is_zero()) {
    const Term& lt = cur.lead();
    if (!f.lead().mono.divides(lt.mono))
      fail(Errc::InvalidArgument,
           "not an exact multiple: " + format_poly(g) + " by " +
               format_poly(f));
    const Term t{lt.mono.divided_by(f.lead().mono),
                 static_cast<std::uint32_t>(
                     static_cast<std::uint64_t>(lt.coeff) * finv % p)};
    quot.push_back(t);
    cur = sub(cur, mul_term(f, t));
  }
  return Polynomial::make(R, std::move(quot));
}

CertifiedMinimalPrimes CertifiedMinimalPrimes::certify(
    const Ideal& ideal, const std::vector<Ideal>& candidates) {
  if (candidates.empty())
    fail(Errc::Certification, "no candidate minimal primes supplied");
  if (is_unit_ideal(ideal))
    fail(Errc::Certification, "the unit ideal has no minimal primes");

  for (std::size_t i = 0; i < candidates.size(); ++i) {
    require_same_ring(ideal.ring(), candidates[i].ring());
    if (is_unit_ideal(candidates[i]))
      fail(Errc::Certification,
           "candidate prime #" + std::to_string(i) + " is the unit ideal");
    for (const auto& g : ideal.gens())
      if (!ideal_contains(candidates[i], g))
        fail(Errc::Certification,
             "candidate prime #" + std::to_string(i) +
                 " does not contain the ideal: misses " + format_poly(g));
  }

  Ideal meet = candidates.front();
  for (std::size_t j = 1; j < candidates.size(); ++j)
    meet = intersect_ideals(meet, candidates[j]);
  for (const auto& g : meet.groebner_basis())
    if (!radical_membership(g, ideal))
      fail(Errc::Certification,
           "candidate intersection escapes the radical: " + format_poly(g));

  for (std::size_t i = 0; i < candidates.size(); ++i)
    for (std::size_t j = 0; j < candidates.size(); ++j) {
      if (i == j) continue;
      bool contained = true;
      for (const auto& g : candidates[i].gens())
        if (!ideal_contains(candidates[j], g)) {
          contained = false;
          break;
        }
      if (contained)
        fail(Errc::Certification, "candidate prime #" + std::to_string(i) +
                                      " is contained in candidate #" +
                                      std::to_string(j) +
                                      "; the list is not minimal");
    }

  CertifiedMinimalPrimes out;
  out.ideal_ = ideal;
  for (const auto& P : candidates) {
    bool linear = true;
    for (const auto& g : P.groebner_basis())
      if (!all_terms_linear(g)) {
        linear = false;
        break;
      }
    out.primes_.push_back(CertifiedPrime{
        P, linear ? PrimalityFlag::Structural : PrimalityFlag::Asserted});
  }
  return out;
}

bool CertifiedMinimalPrimes::has_asserted() const {
  for (const auto& cp : primes_)
    if (cp.flag == PrimalityFlag::Asserted) return true;
  return false;
}

}  // namespace ptc
