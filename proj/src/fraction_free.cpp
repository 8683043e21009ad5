#include "perfclose/fraction_free.hpp"

#include <algorithm>

#include "perfclose/errors.hpp"

namespace perfclose {

namespace {

std::size_t leading_column(const PolyRow& row) {
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (!row[j].is_zero()) return j;
  }
  return row.size();
}

PolyRow scale_row(const PolyRow& row, std::uint32_t c) {
  PolyRow out;
  out.reserve(row.size());
  for (const Poly& x : row) out.push_back(x.scaled(c));
  return out;
}

// Clears column `col` of `target` using `pivot_row`.
void eliminate(PolyRow& target, const PolyRow& pivot_row, std::size_t col) {
  const Poly& a = target[col];
  const Poly& b = pivot_row[col];
  if (b.is_constant()) {
    const PrimeModulus m = b.modulus();
    Poly factor = a.scaled(m.inv(b.leading_coeff()));
    for (std::size_t j = 0; j < target.size(); ++j) {
      if (!pivot_row[j].is_zero()) target[j] -= factor * pivot_row[j];
    }
    target[col] = Poly(m);
    return;
  }
  Poly g = gcd(a, b);
  Poly ta = exact_div(b, g);
  Poly tb = exact_div(a, g);
  for (std::size_t j = 0; j < target.size(); ++j) {
    Poly v = target[j].is_zero() ? Poly(b.modulus()) : target[j] * ta;
    if (!pivot_row[j].is_zero()) v -= tb * pivot_row[j];
    target[j] = std::move(v);
  }
  target[col] = Poly(b.modulus());
  target = make_primitive(std::move(target));
}

PolyRow normalize_pivot(PolyRow row, std::size_t pivot) {
  const Poly& lead = row[pivot];
  if (lead.is_monic()) return row;
  return scale_row(row, lead.modulus().inv(lead.leading_coeff()));
}

}  // namespace

Poly row_content(const PolyRow& row) {
  if (row.empty()) throw DomainError("content of an empty row");
  Poly g(row.front().modulus());
  for (const Poly& x : row) {
    if (x.is_zero()) continue;
    g = gcd(g, x);
    if (g.is_one()) break;
  }
  return g;
}

PolyRow make_primitive(PolyRow row) {
  if (row.empty()) return row;
  Poly g = row_content(row);
  if (g.is_zero() || g.is_one()) return row;
  for (Poly& x : row) {
    if (!x.is_zero()) x = exact_div(x, g);
  }
  return row;
}

bool is_zero_row(const PolyRow& row) {
  return std::all_of(row.begin(), row.end(), [](const Poly& x) { return x.is_zero(); });
}

PolyRow EchelonBasis::reduce(PolyRow v) const {
  if (v.size() != width_) throw DomainError("vector width does not match the basis");
  for (const Poly& x : v) require_same_modulus(mod_, x.modulus(), "echelon reduce");
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const std::size_t c = pivots_[r];
    if (!v[c].is_zero()) eliminate(v, rows_[r], c);
  }
  return make_primitive(std::move(v));
}

bool EchelonBasis::insert(const PolyRow& v) {
  PolyRow w = reduce(v);
  const std::size_t c = leading_column(w);
  if (c == width_) return false;
  w = normalize_pivot(std::move(w), c);
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (rows_[r][c].is_zero()) continue;
    eliminate(rows_[r], w, c);
    rows_[r] = normalize_pivot(make_primitive(std::move(rows_[r])), pivots_[r]);
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), c);
  auto idx = pos - pivots_.begin();
  pivots_.insert(pos, c);
  rows_.insert(rows_.begin() + idx, std::move(w));
  return true;
}

PolyRow WorkingBasis::reduce(PolyRow v) const {
  if (v.size() != width_) throw DomainError("vector width does not match the basis");
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const std::size_t c = pivots_[r];
    if (!v[c].is_zero()) eliminate(v, rows_[r], c);
  }
  return make_primitive(std::move(v));
}

bool WorkingBasis::insert(const PolyRow& v) {
  PolyRow w = reduce(v);
  std::size_t best = width_;
  for (std::size_t j = 0; j < width_; ++j) {
    if (w[j].is_zero()) continue;
    if (best == width_ || w[j].degree() < w[best].degree()) best = j;
  }
  if (best == width_) return false;
  rows_.push_back(std::move(w));
  pivots_.push_back(best);
  return true;
}

EchelonBasis intersect(const EchelonBasis& a, const EchelonBasis& b) {
  if (a.width() != b.width()) throw DomainError("intersect: width mismatch");
  require_same_modulus(a.modulus(), b.modulus(), "intersect");
  const std::size_t w = a.width();
  const PrimeModulus m = a.modulus();
  EchelonBasis stacked(m, 2 * w);
  for (const PolyRow& row : a.rows()) {
    PolyRow ext = row;
    ext.insert(ext.end(), row.begin(), row.end());
    stacked.insert(ext);
  }
  for (const PolyRow& row : b.rows()) {
    PolyRow ext = row;
    ext.resize(2 * w, Poly(m));
    stacked.insert(ext);
  }
  EchelonBasis out(m, w);
  for (std::size_t r = 0; r < stacked.rank(); ++r) {
    if (stacked.pivots()[r] < w) continue;
    const PolyRow& row = stacked.rows()[r];
    out.insert(PolyRow(row.begin() + static_cast<std::ptrdiff_t>(w), row.end()));
  }
  return out;
}

Matrix<Poly> clear_denominators(const Matrix<RatFunc>& a, std::vector<Poly>* row_scales) {
  if (a.rows() == 0 || a.cols() == 0) return Matrix<Poly>(a.rows(), a.cols(), std::vector<Poly>{});
  const PrimeModulus m = a(0, 0).modulus();
  Matrix<Poly> out(a.rows(), a.cols(), Poly(m));
  if (row_scales) row_scales->clear();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Poly l = Poly::constant(m, 1);
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Poly& d = a(i, j).den();
      l = exact_div(l * d, gcd(l, d));
    }
    for (std::size_t j = 0; j < a.cols(); ++j) {
      out(i, j) = a(i, j).num() * exact_div(l, a(i, j).den());
    }
    if (row_scales) row_scales->push_back(std::move(l));
  }
  return out;
}

Poly bareiss_determinant(Matrix<Poly> a) {
  if (!a.is_square()) throw DomainError("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) throw DomainError("determinant of an empty matrix needs a modulus");
  const PrimeModulus m = a(0, 0).modulus();
  Poly prev = Poly::constant(m, 1);
  bool negate = false;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t best = n;
    for (std::size_t i = k; i < n; ++i) {
      if (a(i, k).is_zero()) continue;
      if (best == n || a(i, k).degree() < a(best, k).degree()) best = i;
    }
    if (best == n) return Poly(m);
    if (best != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(best, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = exact_div(a(i, j) * a(k, k) - a(i, k) * a(k, j), prev);
      }
      a(i, k) = Poly(m);
    }
    prev = a(k, k);
  }
  return negate ? -a(n - 1, n - 1) : a(n - 1, n - 1);
}

RatFunc determinant(const Matrix<RatFunc>& a) {
  if (!a.is_square()) throw DomainError("determinant of a non-square matrix");
  if (a.rows() == 0) throw DomainError("determinant of an empty matrix needs a modulus");
  std::vector<Poly> scales;
  Matrix<Poly> p = clear_denominators(a, &scales);
  Poly den = Poly::constant(a(0, 0).modulus(), 1);
  for (const Poly& s : scales) den *= s;
  return RatFunc(bareiss_determinant(std::move(p)), std::move(den));
}

Matrix<RatFunc> inverse(const Matrix<RatFunc>& a) {
  if (!a.is_square()) throw DomainError("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return a;
  const PrimeModulus m = a(0, 0).modulus();
  std::vector<Poly> scales;
  Matrix<Poly> p = clear_denominators(a, &scales);
  EchelonBasis gj(m, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    PolyRow row(2 * n, Poly(m));
    for (std::size_t j = 0; j < n; ++j) row[j] = p(i, j);
    row[n + i] = Poly::constant(m, 1);
    gj.insert(row);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (gj.pivots()[i] != i) throw DomainError("matrix is singular");
  }
  // Row i is [0 .. q_i .. 0 | r_i], so row i of P^-1 is r_i / q_i, and A^-1 = P^-1 D.
  Matrix<RatFunc> out(n, n, RatFunc(m));
  for (std::size_t i = 0; i < n; ++i) {
    const PolyRow& row = gj.rows()[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (row[n + j].is_zero()) continue;
      out(i, j) = RatFunc(row[n + j] * scales[j], row[i]);
    }
  }
  return out;
}

}  // namespace perfclose
