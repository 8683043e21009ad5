#pragma once

#include <string>

#include "perfclose/ratfunc.hpp"

namespace perfclose {

/// Maximum root level accepted by level-raising operations unless overridden.
inline constexpr int kDefaultLevelCap = 8;

/// Element x = f(t^(1/p^n)) of F_p(t)^perf, stored as (n, f) in the
/// variable s = t^(1/p^n).
///
/// Normalized: when n > 0 the pair (num f, den f) is not jointly a p-th
/// power, so n is the least level containing x and equality of pairs is
/// equality of field elements. Zero sits at level 0.
class PerfElem {
 public:
  explicit PerfElem(PrimeModulus m) : level_(0), value_(m) {}
  explicit PerfElem(RatFunc value) : level_(0), value_(std::move(value)) {}
  /// Normalizes. Throws DomainError on a negative level.
  PerfElem(int level, RatFunc value);

  static PerfElem constant(PrimeModulus m, std::int64_t c) { return PerfElem(RatFunc::constant(m, c)); }
  static PerfElem t(PrimeModulus m) { return PerfElem(RatFunc(Poly::variable(m))); }
  /// t^(1/p^level).
  static PerfElem root_of_t(PrimeModulus m, int level) { return PerfElem(level, RatFunc(Poly::variable(m))); }

  PrimeModulus modulus() const { return value_.modulus(); }
  int level() const { return level_; }
  const RatFunc& value() const { return value_; }

  bool is_zero() const { return value_.is_zero(); }
  bool is_one() const { return value_.is_one(); }
  /// True iff x lies in K = F_p(t).
  bool is_in_base() const { return level_ == 0; }
  bool is_constant() const { return value_.is_constant(); }

  /// Re-expresses x in s_m = t^(1/p^m): f(s_n) = f(s_m^(p^(m-n))).
  /// Throws DomainError when m < level().
  RatFunc lift(int m) const;

  PerfElem operator-() const { return PerfElem(level_, -value_, Normalized{}); }
  friend PerfElem operator+(const PerfElem& a, const PerfElem& b);
  friend PerfElem operator-(const PerfElem& a, const PerfElem& b);
  friend PerfElem operator*(const PerfElem& a, const PerfElem& b);
  /// Throws DivisionByZero.
  friend PerfElem operator/(const PerfElem& a, const PerfElem& b);
  PerfElem& operator+=(const PerfElem& b) { return *this = *this + b; }
  PerfElem& operator-=(const PerfElem& b) { return *this = *this - b; }
  PerfElem& operator*=(const PerfElem& b) { return *this = *this * b; }
  PerfElem& operator/=(const PerfElem& b) { return *this = *this / b; }

  PerfElem inverse() const;
  PerfElem pow(std::int64_t e) const;

  /// x^p.
  PerfElem frobenius() const;
  /// The unique y with y^p = x. Throws LevelCapExceeded past `cap`.
  PerfElem pth_root(int cap = kDefaultLevelCap) const;

  friend bool operator==(const PerfElem& a, const PerfElem& b) = default;

  /// Grammar form, e.g. `t + rt(t,1)`, `(rt(t,2)^3 + 1) / (t + 1)`.
  std::string to_string() const;

 private:
  struct Normalized {};
  PerfElem(int level, RatFunc value, Normalized) : level_(level), value_(std::move(value)) {}

  int level_;
  RatFunc value_;
};

/// Larger of the two root levels.
int common_level(const PerfElem& a, const PerfElem& b);

/// p^n as an exponent; throws LevelCapExceeded on overflow.
Exp prime_power(PrimeModulus m, int n);

}  // namespace perfclose
