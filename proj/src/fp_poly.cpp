#include "perfclose/fp_poly.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <sstream>

#include "perfclose/errors.hpp"

namespace perfclose {

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

Exp checked_mul(Exp a, Exp b) {
  if (a != 0 && b > kMaxExponent / a) {
    throw LevelCapExceeded("exponent overflow: " + std::to_string(a) + " * " + std::to_string(b));
  }
  return a * b;
}

std::vector<std::uint32_t> to_dense(const Poly& f, Exp size) {
  std::vector<std::uint32_t> d(static_cast<std::size_t>(size), 0);
  for (const Term& t : f.terms()) d[static_cast<std::size_t>(t.exp)] = t.coeff;
  return d;
}

std::vector<Term> from_dense(const std::vector<std::uint32_t>& d) {
  std::vector<Term> out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] != 0) out.push_back({static_cast<Exp>(i), d[i]});
  }
  return out;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are deterministic for all 64-bit n.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeModulus::PrimeModulus(std::uint64_t p) : p_(0) {
  if (p < 2 || p >= (std::uint64_t{1} << 31)) {
    throw DomainError("modulus out of range [2, 2^31): " + std::to_string(p));
  }
  if (!is_prime_u64(p)) throw DomainError("modulus is not prime: " + std::to_string(p));
  p_ = static_cast<std::uint32_t>(p);
}

std::uint32_t PrimeModulus::reduce(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<std::uint32_t>(r);
}

std::uint32_t PrimeModulus::pow(std::uint32_t a, std::uint64_t e) const {
  return static_cast<std::uint32_t>(powmod_u64(a, e, p_));
}

std::uint32_t PrimeModulus::inv(std::uint32_t a) const {
  if (a % p_ == 0) throw DivisionByZero("inverse of 0 in F_" + std::to_string(p_));
  return pow(a, p_ - 2);
}

void require_same_modulus(PrimeModulus a, PrimeModulus b, std::string_view where) {
  if (!(a == b)) {
    throw ModulusMismatch(std::string(where) + ": mixing F_" + std::to_string(a.value()) +
                          " with F_" + std::to_string(b.value()));
  }
}

Poly Poly::constant(PrimeModulus m, std::int64_t c) { return monomial(m, c, 0); }

Poly Poly::monomial(PrimeModulus m, std::int64_t c, Exp e) {
  if (e < 0 || e > kMaxExponent) throw DomainError("monomial exponent out of range");
  std::uint32_t r = m.reduce(c);
  if (r == 0) return Poly(m);
  return Poly(m, {{e, r}});
}

Poly Poly::from_coeffs(PrimeModulus m, std::span<const std::int64_t> ascending) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < ascending.size(); ++i) {
    std::uint32_t r = m.reduce(ascending[i]);
    if (r != 0) terms.push_back({static_cast<Exp>(i), r});
  }
  return Poly(m, std::move(terms));
}

Poly Poly::from_terms(PrimeModulus m, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.exp < b.exp; });
  std::vector<Term> out;
  for (const Term& t : terms) {
    if (t.exp < 0 || t.exp > kMaxExponent) throw DomainError("term exponent out of range");
    std::uint32_t c = t.coeff % m.value();
    if (!out.empty() && out.back().exp == t.exp) {
      out.back().coeff = m.add(out.back().coeff, c);
      if (out.back().coeff == 0) out.pop_back();
    } else if (c != 0) {
      out.push_back({t.exp, c});
    }
  }
  return Poly(m, std::move(out));
}

std::uint32_t Poly::coeff(Exp e) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                             [](const Term& t, Exp x) { return t.exp < x; });
  return (it != terms_.end() && it->exp == e) ? it->coeff : 0;
}

Poly Poly::operator-() const {
  std::vector<Term> out = terms_;
  for (Term& t : out) t.coeff = mod_.neg(t.coeff);
  return Poly(mod_, std::move(out));
}

Poly operator+(const Poly& a, const Poly& b) {
  require_same_modulus(a.mod_, b.mod_, "poly add");
  const PrimeModulus m = a.mod_;
  std::vector<Term> out;
  out.reserve(a.terms_.size() + b.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < a.terms_.size() || j < b.terms_.size()) {
    if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].exp < b.terms_[j].exp)) {
      out.push_back(a.terms_[i++]);
    } else if (i == a.terms_.size() || b.terms_[j].exp < a.terms_[i].exp) {
      out.push_back(b.terms_[j++]);
    } else {
      std::uint32_t c = m.add(a.terms_[i].coeff, b.terms_[j].coeff);
      if (c != 0) out.push_back({a.terms_[i].exp, c});
      ++i;
      ++j;
    }
  }
  return Poly(m, std::move(out));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  require_same_modulus(a.mod_, b.mod_, "poly mul");
  const PrimeModulus m = a.mod_;
  if (a.is_zero() || b.is_zero()) return Poly(m);
  if (a.terms_.size() == 1 || b.terms_.size() == 1) {
    const Poly& mono = a.terms_.size() == 1 ? a : b;
    const Poly& other = a.terms_.size() == 1 ? b : a;
    const Term mt = mono.terms_[0];
    std::vector<Term> out;
    out.reserve(other.terms_.size());
    for (const Term& t : other.terms_) {
      Exp e = t.exp + mt.exp;
      if (e > kMaxExponent) throw LevelCapExceeded("exponent overflow in product");
      out.push_back({e, m.mul(t.coeff, mt.coeff)});
    }
    return Poly(m, std::move(out));
  }
  const Exp deg = a.degree() + b.degree();
  if (deg > kMaxExponent) throw LevelCapExceeded("exponent overflow in product");
  const std::uint64_t p = m.value();
  if (deg <= kDenseDegreeLimit) {
    // Accumulate reduced products; at most 2^33 summands of size < 2^31 fit in 64 bits.
    std::vector<std::uint64_t> acc(static_cast<std::size_t>(deg + 1), 0);
    for (const Term& x : a.terms_) {
      for (const Term& y : b.terms_) {
        acc[static_cast<std::size_t>(x.exp + y.exp)] += std::uint64_t{x.coeff} * y.coeff % p;
      }
    }
    std::vector<Term> out;
    for (std::size_t i = 0; i < acc.size(); ++i) {
      std::uint32_t c = static_cast<std::uint32_t>(acc[i] % p);
      if (c != 0) out.push_back({static_cast<Exp>(i), c});
    }
    return Poly(m, std::move(out));
  }
  std::vector<Term> prods;
  prods.reserve(a.terms_.size() * b.terms_.size());
  for (const Term& x : a.terms_) {
    for (const Term& y : b.terms_) prods.push_back({x.exp + y.exp, m.mul(x.coeff, y.coeff)});
  }
  return Poly::from_terms(m, std::move(prods));
}

Poly Poly::scaled(std::uint32_t c) const {
  c %= mod_.value();
  if (c == 0) return Poly(mod_);
  std::vector<Term> out = terms_;
  for (Term& t : out) t.coeff = mod_.mul(t.coeff, c);
  return Poly(mod_, std::move(out));
}

Poly Poly::monic() const {
  if (is_zero() || is_monic()) return *this;
  return scaled(mod_.inv(leading_coeff()));
}

Poly Poly::pow(std::uint64_t e) const {
  Poly result = constant(mod_, 1);
  Poly base = *this;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

Poly Poly::inflate(Exp k) const {
  if (k <= 0) throw DomainError("inflate factor must be positive");
  std::vector<Term> out = terms_;
  for (Term& t : out) t.exp = checked_mul(t.exp, k);
  return Poly(mod_, std::move(out));
}

Poly Poly::deflate(Exp k) const {
  if (k <= 0) throw DomainError("deflate factor must be positive");
  std::vector<Term> out = terms_;
  for (Term& t : out) {
    if (t.exp % k != 0) throw DomainError("deflate: exponent not divisible");
    t.exp /= k;
  }
  return Poly(mod_, std::move(out));
}

Poly Poly::derivative() const {
  std::vector<Term> out;
  for (const Term& t : terms_) {
    if (t.exp == 0) continue;
    std::uint32_t c = mod_.mul(t.coeff, mod_.reduce(t.exp % mod_.value()));
    if (c != 0) out.push_back({t.exp - 1, c});
  }
  return Poly(mod_, std::move(out));
}

std::uint32_t Poly::evaluate(std::uint32_t x) const {
  std::uint32_t acc = 0;
  for (const Term& t : terms_) acc = mod_.add(acc, mod_.mul(t.coeff, mod_.pow(x, static_cast<std::uint64_t>(t.exp))));
  return acc;
}

std::strong_ordering operator<=>(const Poly& a, const Poly& b) {
  if (auto c = a.mod_.value() <=> b.mod_.value(); c != 0) return c;
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  auto ia = a.terms_.rbegin();
  auto ib = b.terms_.rbegin();
  for (; ia != a.terms_.rend() && ib != b.terms_.rend(); ++ia, ++ib) {
    // A missing exponent is a zero coefficient, which sorts first.
    if (ia->exp != ib->exp) return ia->exp < ib->exp ? std::strong_ordering::less : std::strong_ordering::greater;
    if (auto c = ia->coeff <=> ib->coeff; c != 0) return c;
  }
  if (ia == a.terms_.rend() && ib == b.terms_.rend()) return std::strong_ordering::equal;
  return ia == a.terms_.rend() ? std::strong_ordering::less : std::strong_ordering::greater;
}

std::string Poly::to_string(std::string_view var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    if (it->exp == 0) {
      os << it->coeff;
      continue;
    }
    if (it->coeff != 1) os << it->coeff << '*';
    os << var;
    if (it->exp != 1) os << '^' << it->exp;
  }
  return os.str();
}

DivRem divrem(const Poly& a, const Poly& b) {
  require_same_modulus(a.modulus(), b.modulus(), "poly divrem");
  const PrimeModulus m = a.modulus();
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly(m), a};
  const Exp db = b.degree();
  const std::uint32_t inv_lead = m.inv(b.leading_coeff());
  auto bt = b.terms();
  if (a.degree() <= kDenseDegreeLimit) {
    std::vector<std::uint32_t> r = to_dense(a, a.degree() + 1);
    std::vector<std::uint32_t> q(static_cast<std::size_t>(a.degree() - db + 1), 0);
    for (Exp k = a.degree(); k >= db; --k) {
      std::uint32_t c = r[static_cast<std::size_t>(k)];
      if (c == 0) continue;
      std::uint32_t qc = m.mul(c, inv_lead);
      q[static_cast<std::size_t>(k - db)] = qc;
      for (const Term& t : bt) {
        auto idx = static_cast<std::size_t>(k - db + t.exp);
        r[idx] = m.sub(r[idx], m.mul(qc, t.coeff));
      }
    }
    r.resize(static_cast<std::size_t>(db));
    return {Poly::from_terms(m, from_dense(q)), Poly::from_terms(m, from_dense(r))};
  }
  std::map<Exp, std::uint32_t> r;
  for (const Term& t : a.terms()) r.emplace(t.exp, t.coeff);
  std::vector<Term> q;
  while (!r.empty()) {
    auto top = std::prev(r.end());
    if (top->first < db) break;
    const Exp shift = top->first - db;
    const std::uint32_t qc = m.mul(top->second, inv_lead);
    q.push_back({shift, qc});
    for (const Term& t : bt) {
      auto [it, inserted] = r.try_emplace(shift + t.exp, 0);
      it->second = m.sub(it->second, m.mul(qc, t.coeff));
      if (it->second == 0) r.erase(it);
    }
  }
  std::vector<Term> rem;
  for (auto& [e, c] : r) rem.push_back({e, c});
  return {Poly::from_terms(m, std::move(q)), Poly::from_terms(m, std::move(rem))};
}

Poly exact_div(const Poly& a, const Poly& b) {
  DivRem qr = divrem(a, b);
  if (!qr.remainder.is_zero()) throw DomainError("exact_div: divisor does not divide");
  return qr.quotient;
}

Poly operator%(const Poly& a, const Poly& b) { return divrem(a, b).remainder; }

namespace {

void trim(std::vector<std::uint32_t>& d) {
  while (!d.empty() && d.back() == 0) d.pop_back();
}

// x <- x mod y in place; y is trimmed and nonzero.
void dense_rem(std::vector<std::uint32_t>& x, const std::vector<std::uint32_t>& y, PrimeModulus m) {
  const std::size_t dy = y.size() - 1;
  const std::uint32_t inv_lead = m.inv(y.back());
  const std::uint64_t p = m.value();
  for (std::size_t k = x.size(); k-- > dy;) {
    const std::uint32_t c = x[k];
    if (c == 0) continue;
    const std::uint64_t qc = p - m.mul(c, inv_lead);
    std::uint32_t* base = x.data() + (k - dy);
    for (std::size_t i = 0; i <= dy; ++i) {
      if (y[i] != 0) base[i] = static_cast<std::uint32_t>((base[i] + qc * y[i]) % p);
    }
  }
  if (x.size() > dy) x.resize(dy);
  trim(x);
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  require_same_modulus(a.modulus(), b.modulus(), "poly gcd");
  const PrimeModulus m = a.modulus();
  if (a.degree() <= kDenseDegreeLimit && b.degree() <= kDenseDegreeLimit) {
    std::vector<std::uint32_t> x = to_dense(a, a.degree() + 1);
    std::vector<std::uint32_t> y = to_dense(b, b.degree() + 1);
    while (!y.empty()) {
      dense_rem(x, y, m);
      std::swap(x, y);
    }
    return Poly::from_terms(m, from_dense(x)).monic();
  }
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

std::optional<Poly> is_pth_power(const Poly& f) {
  const Exp p = f.modulus().value();
  for (const Term& t : f.terms()) {
    if (t.exp % p != 0) return std::nullopt;
  }
  // Coefficients in F_p are their own p-th roots.
  return f.deflate(p);
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m) { return (a * b) % m; }

Poly powmod(const Poly& a, std::uint64_t e, const Poly& m) {
  Poly result = Poly::constant(m.modulus(), 1) % m;
  Poly base = a % m;
  while (e) {
    if (e & 1) result = mulmod(result, base, m);
    e >>= 1;
    if (e) base = mulmod(base, base, m);
  }
  return result;
}

namespace {

// f monic and nonconstant; appends (g, multiplicity * scale).
void squarefree_parts(const Poly& f, Exp scale, std::vector<std::pair<Poly, Exp>>& out) {
  const PrimeModulus m = f.modulus();
  Poly c = gcd(f, f.derivative());
  Poly w = exact_div(f, c);
  Exp i = 1;
  while (!w.is_one()) {
    Poly y = gcd(w, c);
    Poly z = exact_div(w, y);
    if (!z.is_one()) out.emplace_back(z, i * scale);
    ++i;
    w = std::move(y);
    c = exact_div(c, w);
  }
  if (!c.is_one()) {
    // Whatever remains has zero derivative, so it is a p-th power.
    std::optional<Poly> root = is_pth_power(c);
    squarefree_parts(*root, checked_mul(scale, m.value()), out);
  }
}

// f squarefree monic; returns (product of all irreducible factors of degree d, d).
std::vector<std::pair<Poly, Exp>> distinct_degree(Poly f) {
  const PrimeModulus m = f.modulus();
  const Poly x = Poly::variable(m);
  std::vector<std::pair<Poly, Exp>> out;
  Poly h = x % f;
  Exp d = 1;
  while (f.degree() >= 2 * d) {
    h = powmod(h, m.value(), f);
    Poly g = gcd(h - x, f);
    if (!g.is_one()) {
      out.emplace_back(g, d);
      f = exact_div(f, g);
      h = h % f;
    }
    ++d;
  }
  if (f.degree() > 0) out.emplace_back(f, f.degree());
  return out;
}

void equal_degree(const Poly& g, Exp d, std::mt19937_64& rng, std::vector<Poly>& out) {
  if (g.degree() == d) {
    out.push_back(g);
    return;
  }
  const PrimeModulus m = g.modulus();
  const std::uint64_t p = m.value();
  while (true) {
    Poly a = random_poly(m, g.degree() - 1, rng);
    if (a.degree() < 1) continue;
    Poly h = gcd(a, g);
    if (!h.is_one()) {
      equal_degree(h, d, rng, out);
      equal_degree(exact_div(g, h), d, rng, out);
      return;
    }
    Poly b(m);
    if (p == 2) {
      // Trace map a + a^2 + ... + a^(2^(d-1)).
      Poly c = a % g;
      b = c;
      for (Exp i = 1; i < d; ++i) {
        c = mulmod(c, c, g);
        b += c;
      }
    } else {
      // a^((p^d - 1)/2) = (a^(1 + p + ... + p^(d-1)))^((p-1)/2).
      Poly c = a % g;
      Poly norm = c;
      for (Exp i = 1; i < d; ++i) {
        c = powmod(c, p, g);
        norm = mulmod(norm, c, g);
      }
      b = powmod(norm, (p - 1) / 2, g) - Poly::constant(m, 1);
    }
    h = gcd(b, g);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      equal_degree(h, d, rng, out);
      equal_degree(exact_div(g, h), d, rng, out);
      return;
    }
  }
}

}  // namespace

Factorization factor(const Poly& f, std::mt19937_64& rng) {
  if (f.is_zero()) throw DomainError("factor: zero polynomial");
  Factorization result{f.leading_coeff(), {}};
  if (f.degree() == 0) return result;
  std::vector<std::pair<Poly, Exp>> sqf;
  squarefree_parts(f.monic(), 1, sqf);
  for (const auto& [part, mult] : sqf) {
    for (const auto& [block, d] : distinct_degree(part)) {
      std::vector<Poly> irreducibles;
      equal_degree(block, d, rng, irreducibles);
      for (Poly& q : irreducibles) result.factors.push_back({std::move(q), mult});
    }
  }
  std::sort(result.factors.begin(), result.factors.end(),
            [](const Factor& a, const Factor& b) { return a.poly < b.poly; });
  return result;
}

namespace {
std::atomic<std::uint64_t> g_factor_seed{kDefaultFactorSeed};
}  // namespace

std::uint64_t factor_seed() { return g_factor_seed.load(std::memory_order_relaxed); }
void set_factor_seed(std::uint64_t seed) { g_factor_seed.store(seed, std::memory_order_relaxed); }

Factorization factor(const Poly& f, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return factor(f, rng);
}

Poly expand(const Factorization& fz, PrimeModulus m) {
  Poly acc = Poly::constant(m, fz.unit);
  for (const Factor& fc : fz.factors) acc *= fc.poly.pow(static_cast<std::uint64_t>(fc.multiplicity));
  return acc;
}

Poly random_poly(PrimeModulus m, Exp max_deg, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> coeff(0, m.value() - 1);
  std::vector<Term> terms;
  for (Exp e = 0; e <= max_deg; ++e) {
    std::uint32_t c = coeff(rng);
    if (c != 0) terms.push_back({e, c});
  }
  return Poly::from_terms(m, std::move(terms));
}

}  // namespace perfclose
