#pragma once

// The character group (K^perf)* / K* and its quotients (K^perf)* / L*.

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "perfclose/extension.hpp"

namespace perfclose {

/// Canonical form of a class at root level n: exponents of the monic
/// irreducible factors (in s = t^(1/p^n)) of a representative, reduced
/// modulo p^n, zero exponents dropped, leading unit discarded.
///
/// Over F_p, g(s^(p^n)) = g(s)^(p^n), so K* is exactly the group of p^n-th
/// powers in F_p(s)* and the fingerprint is a complete invariant.
struct Fingerprint {
  int level = 0;
  std::vector<std::pair<Poly, Exp>> exponents;  // canonical factor order

  bool is_trivial() const { return exponents.empty(); }
  /// Same class viewed at a higher level: every exponent and the modulus times p^(level - this->level).
  Fingerprint lifted(int to_level) const;
  /// `[irreducible]^e * ... @ level n`, with `1` as the empty product.
  std::string to_string() const;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

Fingerprint fingerprint_of(const PerfElem& x);
/// Equality after lifting both to the larger level.
bool same_class(const Fingerprint& a, const Fingerprint& b);
/// Group law on fingerprints (exponents added modulo p^N at the common level N).
Fingerprint multiply(const Fingerprint& a, const Fingerprint& b);

/// An element of (K^perf)* / K*.
class CharClass {
 public:
  /// Throws DomainError on zero.
  explicit CharClass(PerfElem rep);
  CharClass(const CharClass& other);
  CharClass& operator=(const CharClass& other);
  CharClass(CharClass&&) noexcept = default;
  CharClass& operator=(CharClass&&) noexcept = default;

  const PerfElem& rep() const { return rep_; }
  /// Root level of every representative of the class.
  int level() const { return rep_.level(); }
  bool is_trivial() const { return rep_.is_in_base(); }

  /// Computed on first use; concurrent first calls may both compute, one result is kept.
  const Fingerprint& fingerprint() const;

  CharClass inverse() const { return CharClass(rep_.inverse()); }
  friend CharClass operator*(const CharClass& a, const CharClass& b) { return CharClass(a.rep_ * b.rep_); }

 private:
  PerfElem rep_;
  mutable std::shared_ptr<const Fingerprint> fingerprint_;
};

/// The homomorphism (K^perf)* -> (K^perf)*/K*. Throws DomainError on zero.
CharClass class_of(const PerfElem& x);
/// rep1/rep2 in K*, decided by the level of the quotient.
bool class_eq(const CharClass& a, const CharClass& b);
inline bool operator==(const CharClass& a, const CharClass& b) { return class_eq(a, b); }

/// A class of (K^perf)* / L*.
struct ViewClass {
  PerfElem rep;
  std::shared_ptr<const InsepExt> ext;

  bool is_trivial() const { return ext->member(rep); }
};

/// The image of x under (K^perf)* -> (K^perf)*/L*. Throws DomainError on zero.
ViewClass class_coarsen(const PerfElem& x, std::shared_ptr<const InsepExt> ext);
/// x/y in L*; both views must be over equal extensions.
bool view_eq(const ViewClass& a, const ViewClass& b);

/// v_n = 1 + lambda^n * lambda^(1/p). Throws DomainError when lambda is zero
/// or a p-th power in K, or n < 0.
PerfElem vn_family(const RatFunc& lambda, int n);

struct VnReport {
  int max_index = 0;
  std::size_t checks = 0;
  std::vector<std::pair<int, int>> violations;  // (m, n) with v_n / v_m in K*

  bool ok() const { return violations.empty(); }
};

/// Checks v_n / v_m is not in K* for all 0 <= m < n <= max_index.
VnReport verify_vn_distinct(const RatFunc& lambda, int max_index);

}  // namespace perfclose
