#pragma once
// Characteristic-p polynomial arithmetic: ring signatures, monomials with
// checked 32-bit exponents, canonical polynomials, parser/formatter.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ptc {

enum class Errc {
  Parse,
  InvalidArgument,
  SignatureMismatch,
  Overflow,
  Budget,
  Certification,
  Precondition,
  Internal,
  Io,
};

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  Error(Errc code, const std::string& msg, std::size_t offset)
      : std::runtime_error(msg), code_(code), offset_(offset) {}
  Errc code() const { return code_; }
  std::optional<std::size_t> offset() const { return offset_; }

private:
  Errc code_;
  std::optional<std::size_t> offset_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) {
  throw Error(code, msg);
}

enum class TermOrder { Grevlex, Grlex, Lex };

std::string to_string(TermOrder o);
std::optional<TermOrder> term_order_from_string(std::string_view s);

bool is_prime_u32(std::uint32_t n);

class RingSignature;
using RingPtr = std::shared_ptr<const RingSignature>;

// Immutable: characteristic p (verified prime), ordered distinct variable
// names, monomial order. elim_prefix > 0 marks the first k variables as a
// leading comparison block (internal, used for elimination orders).
class RingSignature {
public:
  static RingPtr make(std::uint32_t p, std::vector<std::string> vars,
                      TermOrder order = TermOrder::Grevlex);
  static RingPtr make_elim(std::uint32_t p, std::vector<std::string> vars,
                           TermOrder order, std::size_t elim_prefix);

  std::uint32_t characteristic() const { return p_; }
  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  TermOrder order() const { return order_; }
  std::size_t elim_prefix() const { return elim_; }
  std::optional<std::size_t> var_index(std::string_view name) const;
  bool same_structure(const RingSignature& other) const;

private:
  RingSignature(std::uint32_t p, std::vector<std::string> vars, TermOrder order,
                std::size_t elim);
  std::uint32_t p_;
  std::vector<std::string> vars_;
  TermOrder order_;
  std::size_t elim_;
};

void require_same_ring(const RingPtr& a, const RingPtr& b);

class Monomial {
public:
  Monomial() = default;
  explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {}
  static Monomial one(std::size_t nvars) {
    return Monomial(std::vector<std::uint32_t>(nvars, 0));
  }

  std::size_t size() const { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<std::uint32_t>& exps() const { return exps_; }
  std::uint64_t degree() const;
  bool is_one() const;
  bool divides(const Monomial& m) const;
  Monomial times(const Monomial& m) const;       // checked exponent add
  Monomial divided_by(const Monomial& m) const;  // requires divides(m)
  Monomial pow(std::uint64_t k) const;           // checked exponent scale
  static Monomial lcm(const Monomial& a, const Monomial& b);
  bool coprime(const Monomial& b) const;
  bool operator==(const Monomial&) const = default;

private:
  std::vector<std::uint32_t> exps_;
};

// <0, 0, >0 like strcmp; a greater means a comes first in display order.
int compare(const Monomial& a, const Monomial& b, const RingSignature& sig);

struct Term {
  Monomial mono;
  std::uint32_t coeff = 0;  // in [1, p-1] inside canonical polynomials
};

// Canonical form: strictly descending monomials, coefficients in [1, p-1].
class Polynomial {
public:
  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}
  // Sorts, merges duplicates mod p, drops zero coefficients.
  static Polynomial make(RingPtr ring, std::vector<Term> terms);
  static Polynomial constant(RingPtr ring, std::uint64_t c);
  static Polynomial variable(RingPtr ring, std::size_t index);
  static Polynomial monomial(RingPtr ring, Monomial m, std::uint64_t c = 1);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  const Term& lead() const;
  std::uint64_t degree() const;  // 0 for the zero polynomial
  bool operator==(const Polynomial& other) const;

private:
  RingPtr ring_;
  std::vector<Term> terms_;
  friend Polynomial add(const Polynomial&, const Polynomial&);
  friend Polynomial sub(const Polynomial&, const Polynomial&);
  friend Polynomial mul_term(const Polynomial&, const Term&);
};

Polynomial add(const Polynomial& a, const Polynomial& b);
Polynomial sub(const Polynomial& a, const Polynomial& b);
Polynomial mul(const Polynomial& a, const Polynomial& b);
Polynomial negate(const Polynomial& a);
Polynomial scale(const Polynomial& a, std::uint32_t c);
Polynomial mul_term(const Polynomial& a, const Term& t);
Polynomial monic(const Polynomial& a);

// f^n by binary exponentiation. n = 0 gives 1.
Polynomial pow(const Polynomial& f, std::uint64_t n);

// p^e as uint64, overflow-checked.
std::uint64_t q_power(std::uint32_t p, unsigned e);
// f^{p^e}; exponents of a monomial scale by q.
Polynomial frobenius_pow(const Polynomial& f, unsigned e);

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p);

// Grammar: expr := ['-'] term (('+'|'-') term)*
//          term := coeff? ('*'? factor)*      (at least a coeff or a factor)
//          factor := var ('^' uint)?
//          coeff := uint          var := [A-Za-z][A-Za-z0-9]*
// Whitespace insignificant; digits reduced mod p as they are read.
// Errors carry the byte offset.
Polynomial parse_poly(std::string_view text, const RingPtr& ring);

// Descending terms joined by " + "; '*' between factors, '^' for exponents > 1.
// parse(format(f)) == f and format(parse(s)) is canonical.
std::string format_poly(const Polynomial& f);

// Map by variable name into target (same p required); a variable with nonzero
// exponent missing from target is an error.
Polynomial transport(const Polynomial& f, const RingPtr& target);

// Deterministic RNG (splitmix64); used for seeded candidate pools and tests.
class DetRng {
public:
  explicit DetRng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  std::uint64_t below(std::uint64_t n);  // n > 0

private:
  std::uint64_t state_;
};

}  // namespace ptc
