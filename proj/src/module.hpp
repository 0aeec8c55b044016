#pragma once
// Finitely presented modules over R = P/J: vectors of polynomials, module
// Groebner bases (position-over-term), submodule membership, syzygies via a
// tag block, colon submodules, annihilators, quotients.

#include "groebner.hpp"
#include "ring.hpp"

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace ptc {

// A module element / relation row: one polynomial per free-module position.
using VecPoly = std::vector<Polynomial>;

VecPoly vec_zero(const RingPtr& R, std::size_t rank);
VecPoly vec_basis(const RingPtr& R, std::size_t rank, std::size_t i);
bool vec_is_zero(const VecPoly& v);
VecPoly vec_add(const VecPoly& a, const VecPoly& b);
VecPoly vec_sub(const VecPoly& a, const VecPoly& b);
VecPoly vec_scale(const Polynomial& f, const VecPoly& v);
VecPoly vec_mul_term(const VecPoly& v, const Term& t);
VecPoly vec_monic(const VecPoly& v);
inline constexpr std::size_t vec_npos = static_cast<std::size_t>(-1);
std::size_t vec_lead_pos(const VecPoly& v);  // vec_npos when zero
std::string format_vec(const VecPoly& v);    // "(f0, f1, ...)"
VecPoly transport_vec(const VecPoly& v, const RingPtr& target);

// R = P/J. J may be the zero ideal (then R is the polynomial ring itself).
class QuotientRing;
using QRingPtr = std::shared_ptr<const QuotientRing>;

class QuotientRing {
public:
  static QRingPtr make(RingPtr poly, Ideal defining);
  static QRingPtr poly_ring(RingPtr poly);

  const RingPtr& poly() const { return poly_; }
  const Ideal& defining() const { return defining_; }
  bool is_polynomial() const { return defining_.is_zero(); }
  Polynomial nf(const Polynomial& f) const;
  bool is_zero_elem(const Polynomial& f) const { return nf(f).is_zero(); }

private:
  QuotientRing(RingPtr poly, Ideal defining)
      : poly_(std::move(poly)), defining_(std::move(defining)) {}
  RingPtr poly_;
  Ideal defining_;
};

// Position-over-term comparison of module terms (position i, monomial m);
// lower positions are larger. Returns <0/0/>0 like strcmp.
int module_term_compare(std::size_t pos_a, const Monomial& a, std::size_t pos_b,
                        const Monomial& b, const RingSignature& sig);

// Module Buchberger over the free module P^rank (no implicit relations; the
// caller appends ring relations when working over a quotient). Output is the
// unique reduced GB, monic and sorted.
std::vector<VecPoly> module_buchberger(const RingPtr& P, std::size_t rank,
                                       std::vector<VecPoly> gens,
                                       std::size_t budget = kDefaultPairBudget);

// Full division remainder by same-position lead divisibility.
VecPoly module_reduce(const VecPoly& v, const std::vector<VecPoly>& basis);

// M = R^rank / (explicit relations + J * e_i). Copies share lazily computed
// relation bases.
class PresentedModule {
public:
  PresentedModule() = default;
  static PresentedModule make(QRingPtr ring, std::size_t rank,
                              std::vector<VecPoly> relations,
                              std::size_t budget = kDefaultPairBudget);
  static PresentedModule free_module(QRingPtr ring, std::size_t rank,
                                     std::size_t budget = kDefaultPairBudget);
  // R/I as a module: rank 1, one relation row per generator of I.
  static PresentedModule cyclic(QRingPtr ring, const Ideal& I,
                                std::size_t budget = kDefaultPairBudget);

  const QRingPtr& ring() const;
  std::size_t rank() const;
  const std::vector<VecPoly>& relations() const;      // explicit rows only
  const std::vector<VecPoly>& all_relations() const;  // + defining-ideal rows
  const std::vector<VecPoly>& relation_gb() const;    // lazy, cached, shared
  std::size_t pair_budget() const;
  bool valid() const { return data_ != nullptr; }

private:
  struct Data;
  std::shared_ptr<Data> data_;
};

VecPoly module_nf(const PresentedModule& M, const VecPoly& v);
bool is_zero_in(const PresentedModule& M, const VecPoly& v);
bool equal_in(const PresentedModule& M, const VecPoly& a, const VecPoly& b);
bool is_zero_module(const PresentedModule& M);

// Submodule of M spanned by `gens` (implicitly together with the relations of
// M, which are zero in M).
class Submodule {
public:
  Submodule() = default;
  Submodule(PresentedModule ambient, std::vector<VecPoly> gens);
  const PresentedModule& ambient() const;
  const std::vector<VecPoly>& gens() const;
  const std::vector<VecPoly>& gb() const;  // gens + ambient relations
  bool contains(const VecPoly& v) const;
  bool valid() const { return data_ != nullptr; }

private:
  struct Data;
  std::shared_ptr<Data> data_;
};

// Generators of { a in P^s : sum_j a_j vs_j lies in span(rels) }, s =
// vs.size(). Tag-block elimination: POT makes the leading block dominate, so
// basis elements supported in the tag block read off the syzygies.
std::vector<VecPoly> syzygies_mod(const RingPtr& P, std::size_t rank,
                                  const std::vector<VecPoly>& vs,
                                  const std::vector<VecPoly>& rels,
                                  std::size_t budget = kDefaultPairBudget);

// Generators of (N :_M f) = { m in M : f m in N }; pass empty `ngens` for the
// zero submodule. Results are normal forms, zero rows dropped.
std::vector<VecPoly> colon_submodule_gens(const PresentedModule& M,
                                          const std::vector<VecPoly>& ngens,
                                          const Polynomial& f);

// (N :_R v) pulled back to P: { a in P : a v in N + relations }. Contains J.
Ideal colon_ideal_of_element(const PresentedModule& M,
                             const std::vector<VecPoly>& ngens,
                             const VecPoly& v);
Ideal annihilator_ideal(const PresentedModule& M, const VecPoly& v);

PresentedModule quotient_module(const PresentedModule& M,
                                const std::vector<VecPoly>& ngens);

}  // namespace ptc
