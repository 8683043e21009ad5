#pragma once

// Arithmetic in F_p and in F_p[x].
//
// Polynomials keep a sorted sparse term list. Exponents grow like p^n once
// elements are lifted to root level n, so the storage never materializes
// the gaps; the multiplication and division kernels switch to dense scratch
// buffers when the degrees involved are below kDenseDegreeLimit.

#include <compare>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace perfclose {

using Exp = std::int64_t;

/// Exponents above this bound are rejected as overflow.
inline constexpr Exp kMaxExponent = Exp{1} << 60;

/// Degree up to which arithmetic kernels use dense scratch storage.
inline constexpr Exp kDenseDegreeLimit = 1 << 16;

/// Fixed seed used by the randomized equal-degree splitting unless overridden.
inline constexpr std::uint64_t kDefaultFactorSeed = 0x5eed'f00d'2024ULL;

bool is_prime_u64(std::uint64_t n);

/// The characteristic p, 2 <= p < 2^31, checked prime at construction.
class PrimeModulus {
 public:
  explicit PrimeModulus(std::uint64_t p);

  std::uint32_t value() const { return p_; }

  std::uint32_t reduce(std::int64_t v) const;
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    return a >= b ? a - b : a + (p_ - b);
  }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(std::uint64_t{a} * b % p_);
  }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
  /// Throws DivisionByZero on 0.
  std::uint32_t inv(std::uint32_t a) const;

  friend bool operator==(PrimeModulus, PrimeModulus) = default;

 private:
  std::uint32_t p_;
};

/// Throws ModulusMismatch unless a == b.
void require_same_modulus(PrimeModulus a, PrimeModulus b, std::string_view where);

struct Term {
  Exp exp;
  std::uint32_t coeff;
  friend bool operator==(const Term&, const Term&) = default;
};

class Poly {
 public:
  /// The zero polynomial.
  explicit Poly(PrimeModulus m) : mod_(m) {}

  static Poly constant(PrimeModulus m, std::int64_t c);
  static Poly monomial(PrimeModulus m, std::int64_t c, Exp e);
  static Poly variable(PrimeModulus m) { return monomial(m, 1, 1); }
  /// Dense coefficients, index = exponent.
  static Poly from_coeffs(PrimeModulus m, std::span<const std::int64_t> ascending);
  /// Terms in any order; repeated exponents are summed.
  static Poly from_terms(PrimeModulus m, std::vector<Term> terms);

  PrimeModulus modulus() const { return mod_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const { return terms_.size() == 1 && terms_[0].exp == 0 && terms_[0].coeff == 1; }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].exp == 0); }
  /// -1 for the zero polynomial.
  Exp degree() const { return terms_.empty() ? -1 : terms_.back().exp; }
  std::uint32_t leading_coeff() const { return terms_.empty() ? 0 : terms_.back().coeff; }
  std::uint32_t coeff(Exp e) const;
  bool is_monic() const { return leading_coeff() == 1; }

  /// Nonzero terms by increasing exponent.
  std::span<const Term> terms() const { return terms_; }

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly& operator+=(const Poly& b) { return *this = *this + b; }
  Poly& operator-=(const Poly& b) { return *this = *this - b; }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }

  Poly scaled(std::uint32_t c) const;
  /// Leading coefficient scaled to 1; zero stays zero.
  Poly monic() const;
  Poly pow(std::uint64_t e) const;
  /// Substitutes x -> x^k.
  Poly inflate(Exp k) const;
  /// Substitutes x^k -> x; every exponent must be divisible by k.
  Poly deflate(Exp k) const;
  Poly derivative() const;
  std::uint32_t evaluate(std::uint32_t x) const;

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.mod_ == b.mod_ && a.terms_ == b.terms_;
  }
  /// Canonical order: degree, then coefficients from the top exponent down.
  friend std::strong_ordering operator<=>(const Poly& a, const Poly& b);

  /// Descending exponents, e.g. `t^3 + 2*t + 1`.
  std::string to_string(std::string_view var = "t") const;

 private:
  Poly(PrimeModulus m, std::vector<Term> sorted) : mod_(m), terms_(std::move(sorted)) {}

  PrimeModulus mod_;
  std::vector<Term> terms_;
};

struct DivRem {
  Poly quotient;
  Poly remainder;
};

/// a = q*b + r with deg r < deg b. Throws DivisionByZero when b = 0.
DivRem divrem(const Poly& a, const Poly& b);
/// Exact quotient; throws DomainError if b does not divide a.
Poly exact_div(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);

/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);

/// g with g^p = f when every exponent of f is divisible by p.
std::optional<Poly> is_pth_power(const Poly& f);

Poly mulmod(const Poly& a, const Poly& b, const Poly& m);
Poly powmod(const Poly& a, std::uint64_t e, const Poly& m);

struct Factor {
  Poly poly;  // monic irreducible
  Exp multiplicity;
  friend bool operator==(const Factor&, const Factor&) = default;
};

struct Factorization {
  std::uint32_t unit;
  std::vector<Factor> factors;  // sorted by the canonical Poly order
};

/// Squarefree, distinct-degree, then Cantor-Zassenhaus splitting.
/// Throws DomainError on the zero polynomial.
Factorization factor(const Poly& f, std::mt19937_64& rng);
/// Process-wide seed used when factor() is called without one.
std::uint64_t factor_seed();
void set_factor_seed(std::uint64_t seed);

Factorization factor(const Poly& f, std::uint64_t seed = factor_seed());

/// Product of the factors times the unit.
Poly expand(const Factorization& fz, PrimeModulus m);

/// Uniform coefficients in degrees [0, max_deg].
Poly random_poly(PrimeModulus m, Exp max_deg, std::mt19937_64& rng);

}  // namespace perfclose
