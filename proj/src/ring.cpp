#include "ring.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace ptc {

std::string to_string(TermOrder o) {
  switch (o) {
    case TermOrder::Grevlex: return "grevlex";
    case TermOrder::Grlex: return "grlex";
    case TermOrder::Lex: return "lex";
  }
  return "?";
}

std::optional<TermOrder> term_order_from_string(std::string_view s) {
  if (s == "grevlex") return TermOrder::Grevlex;
  if (s == "grlex") return TermOrder::Grlex;
  if (s == "lex") return TermOrder::Lex;
  return std::nullopt;
}

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

static bool valid_var_name(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c))) return false;
  return true;
}

RingSignature::RingSignature(std::uint32_t p, std::vector<std::string> vars,
                             TermOrder order, std::size_t elim)
    : p_(p), vars_(std::move(vars)), order_(order), elim_(elim) {}

RingPtr RingSignature::make(std::uint32_t p, std::vector<std::string> vars,
                            TermOrder order) {
  return make_elim(p, std::move(vars), order, 0);
}

RingPtr RingSignature::make_elim(std::uint32_t p, std::vector<std::string> vars,
                                 TermOrder order, std::size_t elim_prefix) {
  if (p < 2 || p >= (1u << 31) || !is_prime_u32(p))
    fail(Errc::InvalidArgument,
         "characteristic must be a prime in [2, 2^31): got " + std::to_string(p));
  std::unordered_set<std::string> seen;
  for (auto& v : vars) {
    // internal elimination variables start with '@'; user variables must match
    // the identifier grammar
    bool internal = !v.empty() && v[0] == '@';
    if (!internal && !valid_var_name(v))
      fail(Errc::InvalidArgument, "invalid variable name '" + v + "'");
    if (!seen.insert(v).second)
      fail(Errc::InvalidArgument, "duplicate variable name '" + v + "'");
  }
  if (elim_prefix > vars.size())
    fail(Errc::InvalidArgument, "elimination prefix exceeds variable count");
  return RingPtr(new RingSignature(p, std::move(vars), order, elim_prefix));
}

std::optional<std::size_t> RingSignature::var_index(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return i;
  return std::nullopt;
}

bool RingSignature::same_structure(const RingSignature& other) const {
  return p_ == other.p_ && vars_ == other.vars_ && order_ == other.order_ &&
         elim_ == other.elim_;
}

void require_same_ring(const RingPtr& a, const RingPtr& b) {
  if (!a || !b) fail(Errc::InvalidArgument, "null ring signature");
  if (a.get() == b.get()) return;
  if (!a->same_structure(*b))
    fail(Errc::SignatureMismatch, "ring signatures differ");
}

std::uint64_t Monomial::degree() const {
  std::uint64_t d = 0;
  for (auto e : exps_) d += e;
  return d;
}

bool Monomial::is_one() const {
  for (auto e : exps_)
    if (e) return false;
  return true;
}

bool Monomial::divides(const Monomial& m) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > m.exps_[i]) return false;
  return true;
}

static std::uint32_t checked_exp_add(std::uint32_t a, std::uint32_t b) {
  std::uint64_t s = std::uint64_t(a) + b;
  if (s > std::numeric_limits<std::uint32_t>::max())
    fail(Errc::Overflow, "monomial exponent overflow (32-bit)");
  return static_cast<std::uint32_t>(s);
}

Monomial Monomial::times(const Monomial& m) const {
  std::vector<std::uint32_t> r(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i)
    r[i] = checked_exp_add(exps_[i], m.exps_[i]);
  return Monomial(std::move(r));
}

Monomial Monomial::divided_by(const Monomial& m) const {
  std::vector<std::uint32_t> r(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (m.exps_[i] > exps_[i])
      fail(Errc::InvalidArgument, "monomial division not exact");
    r[i] = exps_[i] - m.exps_[i];
  }
  return Monomial(std::move(r));
}

Monomial Monomial::pow(std::uint64_t k) const {
  std::vector<std::uint32_t> r(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    std::uint64_t v = std::uint64_t(exps_[i]) * k;
    if (v > std::numeric_limits<std::uint32_t>::max())
      fail(Errc::Overflow, "monomial exponent overflow (32-bit)");
    r[i] = static_cast<std::uint32_t>(v);
  }
  return Monomial(std::move(r));
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
  std::vector<std::uint32_t> r(a.exps_.size());
  for (std::size_t i = 0; i < a.exps_.size(); ++i)
    r[i] = std::max(a.exps_[i], b.exps_[i]);
  return Monomial(std::move(r));
}

bool Monomial::coprime(const Monomial& b) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] && b.exps_[i]) return false;
  return true;
}

// grevlex on a slice [lo, hi)
static int cmp_grevlex(const Monomial& a, const Monomial& b, std::size_t lo,
                       std::size_t hi) {
  std::uint64_t da = 0, db = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = hi; i-- > lo;) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;  // smaller last exponent wins
  }
  return 0;
}

static int cmp_lex(const Monomial& a, const Monomial& b, std::size_t lo,
                   std::size_t hi) {
  for (std::size_t i = lo; i < hi; ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

static int cmp_grlex(const Monomial& a, const Monomial& b, std::size_t lo,
                     std::size_t hi) {
  std::uint64_t da = 0, db = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da < db ? -1 : 1;
  return cmp_lex(a, b, lo, hi);
}

int compare(const Monomial& a, const Monomial& b, const RingSignature& sig) {
  std::size_t n = sig.nvars();
  std::size_t k = sig.elim_prefix();
  if (k > 0) {
    int c = cmp_grevlex(a, b, 0, k);
    if (c) return c;
  }
  switch (sig.order()) {
    case TermOrder::Grevlex: return cmp_grevlex(a, b, k, n);
    case TermOrder::Grlex: return cmp_grlex(a, b, k, n);
    case TermOrder::Lex: return cmp_lex(a, b, k, n);
  }
  return 0;
}

Polynomial Polynomial::make(RingPtr ring, std::vector<Term> terms) {
  if (!ring) fail(Errc::InvalidArgument, "null ring signature");
  std::uint32_t p = ring->characteristic();
  for (auto& t : terms) {
    if (t.mono.size() != ring->nvars())
      fail(Errc::InvalidArgument, "monomial width does not match ring");
    t.coeff %= p;
  }
  const RingSignature& sig = *ring;
  std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) {
    return compare(a.mono, b.mono, sig) > 0;
  });
  Polynomial f(std::move(ring));
  for (auto& t : terms) {
    if (t.coeff == 0) continue;
    if (!f.terms_.empty() && f.terms_.back().mono == t.mono) {
      std::uint32_t c = (f.terms_.back().coeff + t.coeff) % p;
      if (c == 0)
        f.terms_.pop_back();
      else
        f.terms_.back().coeff = c;
    } else {
      f.terms_.push_back(std::move(t));
    }
  }
  return f;
}

Polynomial Polynomial::constant(RingPtr ring, std::uint64_t c) {
  std::uint32_t cc = static_cast<std::uint32_t>(c % ring->characteristic());
  Polynomial f(ring);
  if (cc) f.terms_.push_back({Monomial::one(ring->nvars()), cc});
  return f;
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t index) {
  if (index >= ring->nvars()) fail(Errc::InvalidArgument, "variable index out of range");
  std::vector<std::uint32_t> e(ring->nvars(), 0);
  e[index] = 1;
  Polynomial f(ring);
  f.terms_.push_back({Monomial(std::move(e)), 1});
  return f;
}

Polynomial Polynomial::monomial(RingPtr ring, Monomial m, std::uint64_t c) {
  std::uint32_t cc = static_cast<std::uint32_t>(c % ring->characteristic());
  if (m.size() != ring->nvars())
    fail(Errc::InvalidArgument, "monomial width does not match ring");
  Polynomial f(ring);
  if (cc) f.terms_.push_back({std::move(m), cc});
  return f;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

const Term& Polynomial::lead() const {
  if (terms_.empty()) fail(Errc::Precondition, "lead term of zero polynomial");
  return terms_.front();
}

std::uint64_t Polynomial::degree() const {
  std::uint64_t d = 0;
  for (auto& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

bool Polynomial::operator==(const Polynomial& other) const {
  if (terms_.size() != other.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].coeff != other.terms_[i].coeff ||
        !(terms_[i].mono == other.terms_[i].mono))
      return false;
  return true;
}

// merge with per-term coefficient transform on b
static Polynomial merge(const Polynomial& a, const Polynomial& b, bool subtract) {
  require_same_ring(a.ring(), b.ring());
  const RingSignature& sig = *a.ring();
  std::uint32_t p = sig.characteristic();
  std::vector<Term> out;
  out.reserve(a.terms().size() + b.terms().size());
  std::size_t i = 0, j = 0;
  while (i < a.terms().size() || j < b.terms().size()) {
    int c;
    if (i == a.terms().size())
      c = -1;
    else if (j == b.terms().size())
      c = 1;
    else
      c = compare(a.terms()[i].mono, b.terms()[j].mono, sig);
    if (c > 0) {
      out.push_back(a.terms()[i++]);
    } else if (c < 0) {
      Term t = b.terms()[j++];
      if (subtract) t.coeff = (p - t.coeff) % p;
      if (t.coeff) out.push_back(std::move(t));
    } else {
      std::uint32_t bc = b.terms()[j].coeff;
      if (subtract) bc = (p - bc) % p;
      std::uint32_t cc = (a.terms()[i].coeff + bc) % p;
      if (cc) out.push_back({a.terms()[i].mono, cc});
      ++i;
      ++j;
    }
  }
  return Polynomial::make(a.ring(), std::move(out));
}

Polynomial add(const Polynomial& a, const Polynomial& b) { return merge(a, b, false); }
Polynomial sub(const Polynomial& a, const Polynomial& b) { return merge(a, b, true); }

Polynomial negate(const Polynomial& a) {
  std::uint32_t p = a.ring()->characteristic();
  std::vector<Term> t = a.terms();
  for (auto& x : t) x.coeff = (p - x.coeff) % p;
  return Polynomial::make(a.ring(), std::move(t));
}

Polynomial scale(const Polynomial& a, std::uint32_t c) {
  std::uint32_t p = a.ring()->characteristic();
  c %= p;
  std::vector<Term> t = a.terms();
  for (auto& x : t) x.coeff = static_cast<std::uint32_t>((std::uint64_t(x.coeff) * c) % p);
  return Polynomial::make(a.ring(), std::move(t));
}

Polynomial mul_term(const Polynomial& a, const Term& t) {
  std::uint32_t p = a.ring()->characteristic();
  std::uint32_t c = t.coeff % p;
  if (c == 0) return Polynomial(a.ring());
  Polynomial r(a.ring());
  r.terms_.reserve(a.terms().size());
  for (auto& x : a.terms()) {
    std::uint32_t cc = static_cast<std::uint32_t>((std::uint64_t(x.coeff) * c) % p);
    if (cc) r.terms_.push_back({x.mono.times(t.mono), cc});
  }
  // multiplying by a fixed monomial preserves strict descending order
  return r;
}

Polynomial mul(const Polynomial& a, const Polynomial& b) {
  require_same_ring(a.ring(), b.ring());
  std::uint32_t p = a.ring()->characteristic();
  std::vector<Term> out;
  out.reserve(a.terms().size() * b.terms().size());
  for (auto& x : a.terms())
    for (auto& y : b.terms()) {
      std::uint32_t c = static_cast<std::uint32_t>((std::uint64_t(x.coeff) * y.coeff) % p);
      if (c) out.push_back({x.mono.times(y.mono), c});
    }
  return Polynomial::make(a.ring(), std::move(out));
}

Polynomial monic(const Polynomial& a) {
  if (a.is_zero()) return a;
  std::uint32_t p = a.ring()->characteristic();
  return scale(a, mod_inverse(a.lead().coeff, p));
}

Polynomial pow(const Polynomial& f, std::uint64_t n) {
  Polynomial acc = Polynomial::constant(f.ring(), 1);
  Polynomial base = f;
  while (n) {
    if (n & 1) acc = mul(acc, base);
    n >>= 1;
    if (n) base = mul(base, base);
  }
  return acc;
}

std::uint64_t q_power(std::uint32_t p, unsigned e) {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (q > std::numeric_limits<std::uint64_t>::max() / p)
      fail(Errc::Overflow, "p^e overflows 64 bits");
    q *= p;
  }
  return q;
}

Polynomial frobenius_pow(const Polynomial& f, unsigned e) {
  return pow(f, q_power(f.ring()->characteristic(), e));
}

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p) {
  // extended Euclid
  std::int64_t t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) fail(Errc::InvalidArgument, "not invertible mod p");
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

namespace {

struct Parser {
  std::string_view s;
  std::size_t pos = 0;
  const RingPtr& ring;
  std::uint32_t p;

  explicit Parser(std::string_view text, const RingPtr& r)
      : s(text), ring(r), p(r->characteristic()) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  [[noreturn]] void err(const std::string& msg, std::size_t at) {
    throw Error(Errc::Parse, msg + " at byte " + std::to_string(at), at);
  }

  std::uint32_t read_coeff() {
    skip_ws();
    std::uint64_t c = 0;
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      c = (c * 10 + std::uint64_t(s[pos] - '0')) % p;  // incremental reduction
      ++pos;
    }
    if (pos == start) err("expected integer", pos);
    return static_cast<std::uint32_t>(c);
  }

  std::uint32_t read_exponent() {
    skip_ws();
    std::uint64_t v = 0;
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      v = v * 10 + std::uint64_t(s[pos] - '0');
      if (v > std::numeric_limits<std::uint32_t>::max())
        err("exponent overflows 32 bits", start);
      ++pos;
    }
    if (pos == start) err("expected exponent", pos);
    return static_cast<std::uint32_t>(v);
  }

  // returns (var index, exponent)
  std::pair<std::size_t, std::uint32_t> read_factor() {
    skip_ws();
    std::size_t start = pos;
    if (pos >= s.size() || !std::isalpha(static_cast<unsigned char>(s[pos])))
      err("expected variable", pos);
    std::size_t b = pos;
    while (pos < s.size() && std::isalnum(static_cast<unsigned char>(s[pos]))) ++pos;
    std::string name(s.substr(b, pos - b));
    auto idx = ring->var_index(name);
    if (!idx) err("unknown variable '" + name + "'", start);
    std::uint32_t exp = 1;
    skip_ws();
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      exp = read_exponent();
    }
    return {*idx, exp};
  }

  Term read_term() {
    skip_ws();
    std::size_t start = pos;
    std::uint32_t coeff = 1;
    bool have_any = false;
    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      coeff = read_coeff();
      have_any = true;
    }
    std::vector<std::uint32_t> exps(ring->nvars(), 0);
    for (;;) {
      skip_ws();
      bool star = false;
      std::size_t save = pos;
      if (pos < s.size() && s[pos] == '*') {
        star = true;
        ++pos;
        skip_ws();
      }
      if (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) {
        auto [idx, exp] = read_factor();
        std::uint64_t v = std::uint64_t(exps[idx]) + exp;
        if (v > std::numeric_limits<std::uint32_t>::max())
          err("exponent overflows 32 bits", save);
        exps[idx] = static_cast<std::uint32_t>(v);
        have_any = true;
      } else if (star) {
        err("expected variable after '*'", pos);
      } else {
        pos = save;
        break;
      }
    }
    if (!have_any) err("expected term", start);
    return {Monomial(std::move(exps)), coeff};
  }

  Polynomial parse() {
    std::vector<Term> terms;
    skip_ws();
    if (pos >= s.size()) err("empty polynomial", pos);
    bool negate_first = false;
    if (peek() == '-') {
      ++pos;
      negate_first = true;
    }
    Term t = read_term();
    if (negate_first) t.coeff = (p - t.coeff % p) % p;
    terms.push_back(std::move(t));
    for (;;) {
      skip_ws();
      if (pos >= s.size()) break;
      char op = s[pos];
      if (op != '+' && op != '-') err("expected '+' or '-'", pos);
      ++pos;
      Term u = read_term();
      if (op == '-') u.coeff = (p - u.coeff % p) % p;
      terms.push_back(std::move(u));
    }
    return Polynomial::make(ring, std::move(terms));
  }
};

}  // namespace

Polynomial parse_poly(std::string_view text, const RingPtr& ring) {
  if (!ring) fail(Errc::InvalidArgument, "null ring signature");
  Parser pr(text, ring);
  return pr.parse();
}

std::string format_poly(const Polynomial& f) {
  if (f.is_zero()) return "0";
  const auto& vars = f.ring()->vars();
  std::ostringstream os;
  bool first = true;
  for (auto& t : f.terms()) {
    if (!first) os << " + ";
    first = false;
    bool printed = false;
    if (t.coeff != 1 || t.mono.is_one()) {
      os << t.coeff;
      printed = true;
    }
    for (std::size_t i = 0; i < t.mono.size(); ++i) {
      if (t.mono[i] == 0) continue;
      if (printed) os << "*";
      os << vars[i];
      if (t.mono[i] > 1) os << "^" << t.mono[i];
      printed = true;
    }
  }
  return os.str();
}

Polynomial transport(const Polynomial& f, const RingPtr& target) {
  if (!target) fail(Errc::InvalidArgument, "null ring signature");
  if (f.ring()->characteristic() != target->characteristic())
    fail(Errc::SignatureMismatch, "transport across different characteristics");
  if (f.ring()->same_structure(*target))
    return Polynomial::make(target, std::vector<Term>(f.terms()));
  const auto& src_vars = f.ring()->vars();
  std::vector<std::optional<std::size_t>> map(src_vars.size());
  for (std::size_t i = 0; i < src_vars.size(); ++i)
    map[i] = target->var_index(src_vars[i]);
  std::vector<Term> out;
  out.reserve(f.terms().size());
  for (auto& t : f.terms()) {
    std::vector<std::uint32_t> e(target->nvars(), 0);
    for (std::size_t i = 0; i < t.mono.size(); ++i) {
      if (t.mono[i] == 0) continue;
      if (!map[i])
        fail(Errc::SignatureMismatch,
             "variable '" + src_vars[i] + "' missing from target ring");
      e[*map[i]] = t.mono[i];
    }
    out.push_back({Monomial(std::move(e)), t.coeff});
  }
  return Polynomial::make(target, std::move(out));
}

std::uint64_t DetRng::next() {
  // splitmix64
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t DetRng::below(std::uint64_t n) { return next() % n; }

}  // namespace ptc
