#pragma once

// Exact linear algebra over the fraction field F_p(x), carried out on
// polynomial rows so no rational-function denominators build up.

#include <cstddef>
#include <vector>

#include "perfclose/matrix.hpp"
#include "perfclose/ratfunc.hpp"

namespace perfclose {

using PolyRow = std::vector<Poly>;

/// gcd of all entries (monic), zero for the zero row.
Poly row_content(const PolyRow& row);
/// Divides out the content; zero rows are returned unchanged.
PolyRow make_primitive(PolyRow row);
bool is_zero_row(const PolyRow& row);

/// Row space of a set of vectors in F_p(x)^width, held in reduced row echelon
/// form. Each row is primitive over F_p[x] with a monic pivot entry and zeros
/// in every other pivot column; this is the unique polynomial representative
/// of the corresponding reduced echelon row over F_p(x), so two bases span the
/// same space iff their rows compare equal.
class EchelonBasis {
 public:
  EchelonBasis(PrimeModulus m, std::size_t width) : mod_(m), width_(width) {}

  PrimeModulus modulus() const { return mod_; }
  std::size_t width() const { return width_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<PolyRow>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Residue of v modulo the span, primitive; zero iff v is in the span.
  PolyRow reduce(PolyRow v) const;
  bool contains(const PolyRow& v) const { return is_zero_row(reduce(v)); }
  /// Adds v to the span; returns false when it was already there.
  bool insert(const PolyRow& v);

  friend bool operator==(const EchelonBasis& a, const EchelonBasis& b) {
    return a.width_ == b.width_ && a.rows_ == b.rows_;
  }

 private:
  PrimeModulus mod_;
  std::size_t width_;
  std::vector<PolyRow> rows_;
  std::vector<std::size_t> pivots_;
};

/// Forward-only elimination for rank and span tests. Rows stay in insertion
/// order, each zero in the pivot columns of the rows before it, and each new
/// pivot is a lowest-degree entry. Not canonical.
class WorkingBasis {
 public:
  WorkingBasis(PrimeModulus m, std::size_t width) : mod_(m), width_(width) {}

  std::size_t width() const { return width_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<PolyRow>& rows() const { return rows_; }

  PolyRow reduce(PolyRow v) const;
  bool insert(const PolyRow& v);

 private:
  PrimeModulus mod_;
  std::size_t width_;
  std::vector<PolyRow> rows_;
  std::vector<std::size_t> pivots_;
};

/// Basis of the intersection of the spans of two bases of equal width
/// (Zassenhaus sum-intersection on the stacked block matrix).
EchelonBasis intersect(const EchelonBasis& a, const EchelonBasis& b);

/// Multiplies every row by the lcm of its denominators.
Matrix<Poly> clear_denominators(const Matrix<RatFunc>& a, std::vector<Poly>* row_scales = nullptr);

/// Bareiss determinant of a square polynomial matrix; pivots on the
/// lowest-degree nonzero entry of each column.
Poly bareiss_determinant(Matrix<Poly> a);

RatFunc determinant(const Matrix<RatFunc>& a);

/// Fraction-free Gauss-Jordan on [P | I]. Throws DomainError when singular.
Matrix<RatFunc> inverse(const Matrix<RatFunc>& a);

}  // namespace perfclose
