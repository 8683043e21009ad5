#pragma once

#include <cstddef>
#include <vector>

#include "perfclose/fraction_free.hpp"
#include "perfclose/perf_elem.hpp"

namespace perfclose {

/// Largest ambient dimension p^n the lattice operations will build.
inline constexpr Exp kMaxAmbientDimension = 1 << 12;

/// Which field plays the role of K. With kPrimeField there is no variable:
/// K = F_p is perfect and admits no proper purely inseparable extension.
enum class BaseField { kRationalFunctions, kPrimeField };

/// Coordinates of x in F_p(s), s = t^(1/p^level), over K = F_p(t) in the
/// monomial basis s^j (0 <= j < p^level), scaled by the K-unit den(t) so every
/// entry is a polynomial in t. Only the K-line of the vector is meaningful.
PolyRow coordinates(const PerfElem& x, int level);

/// Inverse of `coordinates` up to the K-scale: sum_j s^j row_j(s^(p^level)).
PerfElem element_of(const PolyRow& row, int level);

/// A finitely generated purely inseparable extension L/K inside K^perf,
/// held as the reduced echelon basis of L inside F_p(t^(1/p^n)), where n is
/// the largest generator level.
class InsepExt {
 public:
  /// K itself.
  static InsepExt base(PrimeModulus m, BaseField kind = BaseField::kRationalFunctions);

  /// K(gens) by multiplicative closure of the K-span of {1} u gens.
  /// Zero generators are ignored. Throws LevelCapExceeded past `cap`.
  static InsepExt generate(PrimeModulus m, const std::vector<PerfElem>& gens,
                           int cap = kDefaultLevelCap,
                           BaseField kind = BaseField::kRationalFunctions);

  PrimeModulus modulus() const { return mod_; }
  BaseField base_field() const { return kind_; }
  const std::vector<PerfElem>& generators() const { return generators_; }
  int ambient_level() const { return ambient_level_; }
  /// Echelonized K-basis, one element per echelon row.
  const std::vector<PerfElem>& basis() const { return basis_; }
  const EchelonBasis& echelon() const { return echelon_; }
  /// [L : K], a power of p.
  Exp degree() const { return static_cast<Exp>(echelon_.rank()); }
  bool is_base() const { return echelon_.rank() == 1; }

  /// Echelon basis of L inside the level-`level` ambient space (level >= ambient_level()).
  EchelonBasis echelon_at(int level) const;

  bool member(const PerfElem& x) const;
  /// Membership decided from coordinates alone, lifting L when x has a higher level.
  bool spans(const PerfElem& x) const;
  /// True iff other is a subfield of this.
  bool includes(const InsepExt& other) const;
  bool equals(const InsepExt& other) const { return includes(other) && other.includes(*this); }

 private:
  InsepExt(PrimeModulus m, BaseField kind, std::vector<PerfElem> gens, int level, EchelonBasis echelon);

  PrimeModulus mod_;
  BaseField kind_;
  std::vector<PerfElem> generators_;
  int ambient_level_;
  EchelonBasis echelon_;
  std::vector<PerfElem> basis_;
};

InsepExt compositum(const InsepExt& a, const InsepExt& b, int cap = kDefaultLevelCap);
InsepExt intersection(const InsepExt& a, const InsepExt& b, int cap = kDefaultLevelCap);

}  // namespace perfclose
