#pragma once
// Ideal-level computations in F_p[x...]: reduced Groebner bases (Buchberger,
// sugar strategy, coprimality + chain criteria, pair budget), normal forms,
// colon and intersection via single-variable elimination, bracket powers,
// radical membership, Krull dimension, certified minimal prime lists.

#include "ring.hpp"

#include <cstddef>
#include <memory>
#include <vector>

namespace ptc {

inline constexpr std::size_t kDefaultPairBudget = 200000;

class Ideal {
public:
  Ideal() = default;
  // Zero generators are dropped; an empty list is the zero ideal.
  Ideal(RingPtr ring, std::vector<Polynomial> gens,
        std::size_t pair_budget = kDefaultPairBudget);

  const RingPtr& ring() const;
  const std::vector<Polynomial>& gens() const;
  // Reduced Groebner basis; computed on first use, cached, deterministic.
  const std::vector<Polynomial>& groebner_basis() const;
  bool gb_computed() const;
  std::size_t pair_budget() const;

  bool is_zero() const;  // no nonzero generators
  bool explicit_empty() const { return !data_; }

private:
  struct Data;
  std::shared_ptr<Data> data_;
};

// Remainder of f under multivariate division by basis (need not be a GB; for
// membership semantics pass a GB).
Polynomial reduce_by(const Polynomial& f, const std::vector<Polynomial>& basis);

Polynomial normal_form(const Polynomial& f, const Ideal& I);
bool ideal_contains(const Ideal& I, const Polynomial& f);
bool same_ideal(const Ideal& I, const Ideal& J);
bool is_unit_ideal(const Ideal& I);

// Raw Buchberger + inter-reduction; exposed for cross-order checks in tests.
std::vector<Polynomial> buchberger(const RingPtr& ring,
                                   std::vector<Polynomial> gens,
                                   std::size_t pair_budget);

// (I : f), f != 0, via intersection with (f) and exact division.
Ideal colon_ideal(const Ideal& I, const Polynomial& f);
Ideal intersect_ideals(const Ideal& I, const Ideal& J);
// Generators raised to the q = p^e power (generator-list operation).
Ideal bracket_power_ideal(const Ideal& I, unsigned e);
// f in radical(I), by the auxiliary-variable trick (1 - t*f).
bool radical_membership(const Polynomial& f, const Ideal& I);
// dim F_p[xbar]/Q via independent variable sets modulo the lead-term ideal.
// Error on the unit ideal.
int krull_dimension(const Ideal& Q);

// exact division g / f (error if not exact)
Polynomial exact_divide(const Polynomial& g, const Polynomial& f);

enum class PrimalityFlag { Structural, Asserted };

struct CertifiedPrime {
  Ideal prime;
  PrimalityFlag flag;
};

// Certificate that `candidates` are exactly the minimal primes of `ideal`:
// containment, intersection inside the radical, and pairwise non-containment
// are verified; primality is structural (all generators of the reduced GB
// homogeneous linear) or asserted.
class CertifiedMinimalPrimes {
public:
  CertifiedMinimalPrimes() = default;
  static CertifiedMinimalPrimes certify(const Ideal& ideal,
                                        const std::vector<Ideal>& candidates);
  const Ideal& ideal() const { return ideal_; }
  const std::vector<CertifiedPrime>& primes() const { return primes_; }
  bool has_asserted() const;

private:
  Ideal ideal_;
  std::vector<CertifiedPrime> primes_;
};

}  // namespace ptc
