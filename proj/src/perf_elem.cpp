#include "perfclose/perf_elem.hpp"

#include <algorithm>
#include <sstream>

#include "perfclose/errors.hpp"

namespace perfclose {

Exp prime_power(PrimeModulus m, int n) {
  Exp r = 1;
  for (int i = 0; i < n; ++i) {
    if (r > kMaxExponent / m.value()) {
      throw LevelCapExceeded("p^" + std::to_string(n) + " overflows the exponent range");
    }
    r *= m.value();
  }
  return r;
}

PerfElem::PerfElem(int level, RatFunc value) : level_(level), value_(std::move(value)) {
  if (level_ < 0) throw DomainError("negative root level");
  if (value_.is_zero()) {
    level_ = 0;
    return;
  }
  while (level_ > 0) {
    auto root = value_.pth_root();
    if (!root) break;
    value_ = std::move(*root);
    --level_;
  }
}

int common_level(const PerfElem& a, const PerfElem& b) { return std::max(a.level(), b.level()); }

RatFunc PerfElem::lift(int m) const {
  if (m < level_) throw DomainError("lift below the element's level");
  if (m == level_) return value_;
  return value_.inflate(prime_power(modulus(), m - level_));
}

PerfElem operator+(const PerfElem& a, const PerfElem& b) {
  int n = common_level(a, b);
  return PerfElem(n, a.lift(n) + b.lift(n));
}

PerfElem operator-(const PerfElem& a, const PerfElem& b) {
  int n = common_level(a, b);
  return PerfElem(n, a.lift(n) - b.lift(n));
}

PerfElem operator*(const PerfElem& a, const PerfElem& b) {
  int n = common_level(a, b);
  return PerfElem(n, a.lift(n) * b.lift(n));
}

PerfElem operator/(const PerfElem& a, const PerfElem& b) {
  if (b.is_zero()) throw DivisionByZero("division by zero in the perfect closure");
  int n = common_level(a, b);
  return PerfElem(n, a.lift(n) / b.lift(n));
}

PerfElem PerfElem::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero in the perfect closure");
  return PerfElem(level_, value_.inverse(), Normalized{});
}

PerfElem PerfElem::pow(std::int64_t e) const {
  if (e < 0) return inverse().pow(-e);
  if (e == 0) return constant(modulus(), 1);
  return PerfElem(level_, value_.pow(e));
}

PerfElem PerfElem::frobenius() const {
  // (f(s_n))^p = f(s_n^p) = f(s_{n-1}); at level 0 coefficients in F_p are fixed.
  if (level_ == 0) return PerfElem(0, value_.frobenius(), Normalized{});
  return PerfElem(level_ - 1, value_, Normalized{});
}

PerfElem PerfElem::pth_root(int cap) const {
  PerfElem r(level_ + 1, value_);
  if (r.level() > cap) {
    throw LevelCapExceeded("root level " + std::to_string(r.level()) + " exceeds cap " + std::to_string(cap));
  }
  return r;
}

namespace {

std::string monomial_string(const PrimeModulus m, int level, const Term& term) {
  std::ostringstream os;
  if (term.exp == 0) {
    os << term.coeff;
    return os.str();
  }
  Exp e = term.exp;
  int k = level;
  while (k > 0 && e % m.value() == 0) {
    e /= m.value();
    --k;
  }
  if (term.coeff != 1) os << term.coeff << '*';
  if (k == 0) {
    os << 't';
  } else {
    os << "rt(t," << k << ')';
  }
  if (e != 1) os << '^' << e;
  return os.str();
}

std::string poly_string(const Poly& f, int level) {
  if (f.is_zero()) return "0";
  std::string out;
  auto terms = f.terms();
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    if (!out.empty()) out += " + ";
    out += monomial_string(f.modulus(), level, *it);
  }
  return out;
}

}  // namespace

std::string PerfElem::to_string() const {
  std::string n = poly_string(value_.num(), level_);
  if (value_.den().is_one()) return n;
  std::string d = poly_string(value_.den(), level_);
  if (value_.num().terms().size() > 1) n = "(" + n + ")";
  if (value_.den().terms().size() > 1) d = "(" + d + ")";
  return n + " / " + d;
}

}  // namespace perfclose
