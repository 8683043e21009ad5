#include "perfclose/ratfunc.hpp"

#include "perfclose/errors.hpp"

namespace perfclose {

RatFunc::RatFunc(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.modulus(), 1)) {}

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  require_same_modulus(num_.modulus(), den_.modulus(), "ratfunc");
  if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = Poly::constant(num_.modulus(), 1);
    return;
  }
  Poly g = gcd(num_, den_);
  if (!g.is_one()) {
    num_ = exact_div(num_, g);
    den_ = exact_div(den_, g);
  }
  if (!den_.is_monic()) {
    std::uint32_t inv = num_.modulus().inv(den_.leading_coeff());
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_, Reduced{}); }

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  require_same_modulus(a.modulus(), b.modulus(), "ratfunc mul");
  if (a.is_zero() || b.is_zero()) return RatFunc(a.modulus());
  // Cross-cancel first; the result is then already reduced with monic den.
  Poly g1 = gcd(a.num_, b.den_);
  Poly g2 = gcd(b.num_, a.den_);
  Poly num = exact_div(a.num_, g1) * exact_div(b.num_, g2);
  Poly den = exact_div(a.den_, g2) * exact_div(b.den_, g1);
  return RatFunc(std::move(num), std::move(den), RatFunc::Reduced{});
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero rational function");
  return RatFunc(den_, num_);
}

RatFunc RatFunc::pow(std::int64_t e) const {
  if (e < 0) return inverse().pow(-e);
  return RatFunc(num_.pow(static_cast<std::uint64_t>(e)), den_.pow(static_cast<std::uint64_t>(e)), Reduced{});
}

RatFunc RatFunc::inflate(Exp k) const {
  // gcd(f(x^k), g(x^k)) = gcd(f, g)(x^k), so the result stays reduced and monic.
  return RatFunc(num_.inflate(k), den_.inflate(k), Reduced{});
}

std::optional<RatFunc> RatFunc::pth_root() const {
  auto n = is_pth_power(num_);
  if (!n) return std::nullopt;
  auto d = is_pth_power(den_);
  if (!d) return std::nullopt;
  return RatFunc(std::move(*n), std::move(*d), Reduced{});
}

std::string RatFunc::to_string(std::string_view var) const {
  std::string n = num_.to_string(var);
  if (den_.is_one()) return n;
  std::string d = den_.to_string(var);
  if (num_.terms().size() > 1) n = "(" + n + ")";
  if (den_.terms().size() > 1) d = "(" + d + ")";
  return n + " / " + d;
}

}  // namespace perfclose
