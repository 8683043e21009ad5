#pragma once

// D_inf(K/k) in coordinates, k = F_p: an object is (K^d, k^d, psi) with psi an
// invertible d x d matrix over K^perf; an arrow is a pair (A over the base,
// B over k) with psi' * A = B * psi.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "perfclose/character.hpp"
#include "perfclose/matrix.hpp"

namespace perfclose {

struct FpElem {
  std::uint32_t value;
  PrimeModulus mod;

  friend FpElem operator+(FpElem a, FpElem b) { return {a.mod.add(a.value, b.value), a.mod}; }
  friend FpElem operator*(FpElem a, FpElem b) { return {a.mod.mul(a.value, b.value), a.mod}; }
  friend bool operator==(FpElem a, FpElem b) { return a.value == b.value && a.mod == b.mod; }
};

using PerfMatrix = Matrix<PerfElem>;
using FpMatrix = Matrix<FpElem>;
using RatMatrix = Matrix<RatFunc>;

PerfMatrix perf_identity(PrimeModulus m, std::size_t n);
FpMatrix fp_identity(PrimeModulus m, std::size_t n);
PerfMatrix to_perf(const FpMatrix& b);
PerfMatrix perf_multiply(const PerfMatrix& a, const PerfMatrix& b);
/// Determinant over K^perf: entries lifted to their largest level, then Bareiss over F_p[s].
PerfElem perf_determinant(const PerfMatrix& a);
/// Throws DomainError when singular.
PerfMatrix perf_inverse(const PerfMatrix& a);
/// `[[a, b],[c, d]]`.
std::string matrix_string(const PerfMatrix& a);

using BaseExt = std::shared_ptr<const InsepExt>;

class TannakianTriple {
 public:
  /// `base` null means K itself. Throws DomainError when psi is not square or singular.
  TannakianTriple(PrimeModulus m, PerfMatrix psi, BaseExt base = nullptr);

  static TannakianTriple unit(PrimeModulus m, BaseExt base = nullptr);

  PrimeModulus modulus() const { return mod_; }
  std::size_t dim() const { return psi_.rows(); }
  const PerfMatrix& psi() const { return psi_; }
  const BaseExt& base() const { return base_; }
  bool over_base_field() const { return base_ == nullptr; }

  /// Coordinates agree and the bases are the same field.
  friend bool operator==(const TannakianTriple& a, const TannakianTriple& b);

 private:
  PrimeModulus mod_;
  PerfMatrix psi_;
  BaseExt base_;
};

/// True iff x lies in the base field of the triple (K, or L after pullback).
bool in_base(const BaseExt& base, const PerfElem& x);
bool same_base(const BaseExt& a, const BaseExt& b);

class TripleMorphism {
 public:
  /// Throws DomainError on shape mismatch, A-entries outside the base, or psi' A != B psi.
  static TripleMorphism make(TannakianTriple source, TannakianTriple target, PerfMatrix a, FpMatrix b);

  const TannakianTriple& source() const { return source_; }
  const TannakianTriple& target() const { return target_; }
  const PerfMatrix& a() const { return a_; }
  const FpMatrix& b() const { return b_; }

  bool is_compatible() const;

  friend bool operator==(const TripleMorphism&, const TripleMorphism&) = default;

 private:
  TripleMorphism(TannakianTriple s, TannakianTriple t, PerfMatrix a, FpMatrix b)
      : source_(std::move(s)), target_(std::move(t)), a_(std::move(a)), b_(std::move(b)) {}

  friend TripleMorphism compose(const TripleMorphism& f, const TripleMorphism& g);
  friend TripleMorphism pullback_extension(const TripleMorphism& f, const BaseExt& ext);

  TannakianTriple source_;
  TannakianTriple target_;
  PerfMatrix a_;
  FpMatrix b_;
};

TripleMorphism identity(const TannakianTriple& x);
/// f after g. Throws DomainError when target(g) != source(f).
TripleMorphism compose(const TripleMorphism& f, const TripleMorphism& g);

/// Kronecker product of the psi's.
TannakianTriple tensor(const TannakianTriple& x, const TannakianTriple& y);
TripleMorphism tensor(const TripleMorphism& f, const TripleMorphism& g);
/// Block-diagonal psi.
TannakianTriple direct_sum(const TannakianTriple& x, const TannakianTriple& y);
/// Inverse transpose of psi.
TannakianTriple dual(const TannakianTriple& x);

/// Class of psi = [u] in (K^perf)*/K*. Throws DomainError unless dim 1 over K.
CharClass rank1_class(const TannakianTriple& x);
/// Class of psi = [u] in (K^perf)*/L* for a triple over L (or K).
ViewClass rank1_view_class(const TannakianTriple& x);
/// For rank-1 X = [u], Y = [u']: the isomorphism (A = u/u', B = 1) when u/u' lies in the base.
std::optional<TripleMorphism> rank1_iso(const TannakianTriple& x, const TannakianTriple& y);

/// Same psi, re-tagged over L. Throws DomainError unless L contains the current base.
TannakianTriple pullback_extension(const TannakianTriple& x, const BaseExt& ext);
TripleMorphism pullback_extension(const TripleMorphism& f, const BaseExt& ext);
/// The triple over K with the same psi as y.
TannakianTriple essential_surjectivity_witness(const TannakianTriple& y);

/// Dimension of the fiber W = k^d.
std::size_t fiber_functor(const TannakianTriple& x);
const FpMatrix& fiber_functor(const TripleMorphism& f);
/// Recovers A = psi'^-1 B psi from the fiber map.
PerfMatrix arrow_from_fiber(const TannakianTriple& source, const TannakianTriple& target, const FpMatrix& b);

/// For psi with every entry in K: the isomorphism (psi, id) onto the trivial
/// object (K^d, k^d, id). Empty when some entry has level > 0.
std::optional<TripleMorphism> trivialize(const TannakianTriple& x);

/// An object (F, V, lambda) of the level-i category, F = K^d, V = k^d.
class FrobeniusRep {
 public:
  /// Throws DomainError when lambda is singular, LevelCapExceeded past `cap`.
  FrobeniusRep(int level, RatMatrix lambda, int cap = kDefaultLevelCap);

  int level() const { return level_; }
  std::size_t dim() const { return lambda_.rows(); }
  const RatMatrix& lambda() const { return lambda_; }
  PrimeModulus modulus() const;

  friend bool operator==(const FrobeniusRep&, const FrobeniusRep&) = default;

 private:
  int level_;
  RatMatrix lambda_;
};

/// psi = entrywise p^i-th root of lambda, read in K^perf.
TannakianTriple convert_level_rep(const FrobeniusRep& r, int cap = kDefaultLevelCap);
/// lambda = entrywise Frobenius^level of psi. Throws DomainError when an entry
/// of psi has level above `level`.
FrobeniusRep to_level_rep(const TannakianTriple& x, int level, int cap = kDefaultLevelCap);
/// (F, V, lambda) -> (F, F_k^* V, F^* lambda); F_k is the identity on F_p.
FrobeniusRep level_up(const FrobeniusRep& r, int cap = kDefaultLevelCap);

}  // namespace perfclose
