#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "perfclose/fp_poly.hpp"

namespace perfclose {

/// A reduced fraction num/den over F_p with den monic. Zero is 0/1.
class RatFunc {
 public:
  explicit RatFunc(PrimeModulus m) : num_(m), den_(Poly::constant(m, 1)) {}
  explicit RatFunc(Poly num);
  /// Reduces by the gcd and makes den monic. Throws DivisionByZero when den = 0.
  RatFunc(Poly num, Poly den);

  static RatFunc constant(PrimeModulus m, std::int64_t c) { return RatFunc(Poly::constant(m, c)); }

  PrimeModulus modulus() const { return num_.modulus(); }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_one(); }

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc& operator+=(const RatFunc& b) { return *this = *this + b; }
  RatFunc& operator-=(const RatFunc& b) { return *this = *this - b; }
  RatFunc& operator*=(const RatFunc& b) { return *this = *this * b; }
  RatFunc& operator/=(const RatFunc& b) { return *this = *this / b; }

  RatFunc inverse() const;
  /// Negative exponents invert first.
  RatFunc pow(std::int64_t e) const;
  /// x -> x^k in both parts; keeps the fraction reduced.
  RatFunc inflate(Exp k) const;
  /// The p-th power map, which over F_p is x -> x^p.
  RatFunc frobenius() const { return inflate(modulus().value()); }
  /// Joint p-th root of num and den, when both exist.
  std::optional<RatFunc> pth_root() const;

  friend bool operator==(const RatFunc& a, const RatFunc& b) = default;

  std::string to_string(std::string_view var = "t") const;

 private:
  struct Reduced {};
  RatFunc(Poly num, Poly den, Reduced) : num_(std::move(num)), den_(std::move(den)) {}

  Poly num_;
  Poly den_;
};

}  // namespace perfclose
