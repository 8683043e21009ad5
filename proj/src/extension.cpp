#include "perfclose/extension.hpp"

#include <algorithm>
#include <stdexcept>

#include "perfclose/errors.hpp"

namespace perfclose {

namespace {

Exp ambient_dimension(PrimeModulus m, int level) {
  Exp q = prime_power(m, level);
  if (q > kMaxAmbientDimension) {
    throw DomainError("ambient dimension p^" + std::to_string(level) + " = " + std::to_string(q) +
                      " exceeds " + std::to_string(kMaxAmbientDimension));
  }
  return q;
}

// Splits f(s) = sum_j s^j f_j(s^q) into the rows f_j(t).
PolyRow row_of_poly(const Poly& f, Exp q) {
  const PrimeModulus m = f.modulus();
  std::vector<std::vector<Term>> buckets(static_cast<std::size_t>(q));
  for (const Term& term : f.terms()) {
    buckets[static_cast<std::size_t>(term.exp % q)].push_back({term.exp / q, term.coeff});
  }
  PolyRow row;
  row.reserve(buckets.size());
  for (auto& b : buckets) row.push_back(Poly::from_terms(m, std::move(b)));
  return row;
}

Poly poly_of_row(const PolyRow& row, Exp q) {
  const PrimeModulus m = row.front().modulus();
  std::vector<Term> terms;
  for (std::size_t j = 0; j < row.size(); ++j) {
    for (const Term& term : row[j].terms()) terms.push_back({term.exp * q + static_cast<Exp>(j), term.coeff});
  }
  return Poly::from_terms(m, std::move(terms));
}

bool is_power_of(Exp n, Exp p) {
  while (n > 1 && n % p == 0) n /= p;
  return n == 1;
}

}  // namespace

PolyRow coordinates(const PerfElem& x, int level) {
  if (x.level() > level) throw DomainError("coordinates requested below the element's level");
  const PrimeModulus m = x.modulus();
  const Exp q = ambient_dimension(m, level);
  const RatFunc f = x.lift(level);
  Poly num = f.num();
  if (!f.den().is_one()) {
    // den(s)^q = den(t) lies in K, so multiply through by den^(q-1) = prod_i den(s^(p^i))^(p-1).
    Poly scale = Poly::constant(m, 1);
    Exp pi = 1;
    for (int i = 0; i < level; ++i) {
      scale *= f.den().inflate(pi).pow(m.value() - 1);
      pi *= m.value();
    }
    num *= scale;
  }
  return row_of_poly(num, q);
}

PerfElem element_of(const PolyRow& row, int level) {
  if (row.empty()) throw DomainError("element_of: empty row");
  const Exp q = prime_power(row.front().modulus(), level);
  if (static_cast<Exp>(row.size()) != q) throw DomainError("element_of: row width is not p^level");
  return PerfElem(level, RatFunc(poly_of_row(row, q)));
}

InsepExt::InsepExt(PrimeModulus m, BaseField kind, std::vector<PerfElem> gens, int level, EchelonBasis echelon)
    : mod_(m), kind_(kind), generators_(std::move(gens)), ambient_level_(level), echelon_(std::move(echelon)) {
  for (const PolyRow& row : echelon_.rows()) basis_.push_back(element_of(row, ambient_level_));
}

InsepExt InsepExt::base(PrimeModulus m, BaseField kind) {
  EchelonBasis e(m, 1);
  e.insert(PolyRow{Poly::constant(m, 1)});
  return InsepExt(m, kind, {PerfElem::constant(m, 1)}, 0, std::move(e));
}

InsepExt InsepExt::generate(PrimeModulus m, const std::vector<PerfElem>& gens, int cap, BaseField kind) {
  std::vector<PerfElem> kept;
  int level = 0;
  for (const PerfElem& g : gens) {
    require_same_modulus(m, g.modulus(), "ext generate");
    if (g.is_zero()) continue;
    if (kind == BaseField::kPrimeField && !g.is_constant()) {
      throw DomainError("over the prime field every generator must be a constant, got " + g.to_string());
    }
    level = std::max(level, g.level());
    kept.push_back(g);
  }
  if (level > cap) {
    throw LevelCapExceeded("generator level " + std::to_string(level) + " exceeds cap " + std::to_string(cap));
  }
  if (kept.empty()) kept.push_back(PerfElem::constant(m, 1));

  const Exp q = ambient_dimension(m, level);
  WorkingBasis echelon(m, static_cast<std::size_t>(q));
  echelon.insert(coordinates(PerfElem::constant(m, 1), level));

  // Breadth-first over monomials in the generators: an accepted product is
  // multiplied by every generator, so the final span is closed under them.
  std::vector<Poly> multipliers;
  std::vector<Poly> frontier;
  // Products are kept primitive: dividing by the K-content does not change the K-line.
  auto primitive = [&](const Poly& f) { return poly_of_row(make_primitive(row_of_poly(f, q)), q); };
  auto adjoin = [&](const Poly& f) { return echelon.insert(row_of_poly(f, q)); };
  for (const PerfElem& g : kept) {
    Poly f = primitive(poly_of_row(coordinates(g, level), q));
    multipliers.push_back(f);
    if (adjoin(f)) frontier.push_back(std::move(f));
  }

  while (!frontier.empty() && static_cast<Exp>(echelon.rank()) < q) {
    std::vector<Poly> next;
    for (const Poly& a : frontier) {
      for (const Poly& b : multipliers) {
        Poly c = primitive(a * b);
        if (adjoin(c)) next.push_back(std::move(c));
        if (static_cast<Exp>(echelon.rank()) == q) break;
      }
      if (static_cast<Exp>(echelon.rank()) == q) break;
    }
    frontier = std::move(next);
  }
  if (!is_power_of(static_cast<Exp>(echelon.rank()), m.value())) {
    throw std::logic_error("extension degree " + std::to_string(echelon.rank()) + " is not a power of p");
  }
  // The canonical form of the full space is the identity; otherwise re-echelonize.
  EchelonBasis canonical(m, static_cast<std::size_t>(q));
  if (static_cast<Exp>(echelon.rank()) == q) {
    for (std::size_t j = 0; j < static_cast<std::size_t>(q); ++j) {
      PolyRow unit(static_cast<std::size_t>(q), Poly(m));
      unit[j] = Poly::constant(m, 1);
      canonical.insert(unit);
    }
  } else {
    for (const PolyRow& row : echelon.rows()) canonical.insert(row);
  }
  return InsepExt(m, kind, std::move(kept), level, std::move(canonical));
}

EchelonBasis InsepExt::echelon_at(int level) const {
  if (level < ambient_level_) throw DomainError("echelon_at below the ambient level");
  if (level == ambient_level_) return echelon_;
  const Exp q = ambient_dimension(mod_, level);
  const Exp stride = prime_power(mod_, level - ambient_level_);
  EchelonBasis out(mod_, static_cast<std::size_t>(q));
  for (const PolyRow& row : echelon_.rows()) {
    PolyRow lifted(static_cast<std::size_t>(q), Poly(mod_));
    for (std::size_t j = 0; j < row.size(); ++j) lifted[static_cast<std::size_t>(static_cast<Exp>(j) * stride)] = row[j];
    out.insert(lifted);
  }
  return out;
}

bool InsepExt::member(const PerfElem& x) const {
  require_same_modulus(mod_, x.modulus(), "ext member");
  if (kind_ == BaseField::kPrimeField) return x.is_constant();
  if (x.is_zero()) return true;
  // L sits inside F_p(t^(1/p^n)) and the level of x is minimal.
  if (x.level() > ambient_level_) return false;
  if (degree() == prime_power(mod_, ambient_level_)) return true;
  if (is_base()) return x.is_in_base();
  return echelon_.contains(coordinates(x, ambient_level_));
}

bool InsepExt::spans(const PerfElem& x) const {
  require_same_modulus(mod_, x.modulus(), "ext spans");
  if (kind_ == BaseField::kPrimeField) return x.is_constant();
  if (x.is_zero()) return true;
  const int level = std::max(x.level(), ambient_level_);
  return echelon_at(level).contains(coordinates(x, level));
}

bool InsepExt::includes(const InsepExt& other) const {
  require_same_modulus(mod_, other.mod_, "ext includes");
  if (kind_ != other.kind_) throw DomainError("extensions over different base fields");
  for (const PerfElem& g : other.generators_) {
    if (!member(g)) return false;
  }
  if (degree() % other.degree() != 0) {
    throw std::logic_error("included subfield degree does not divide the degree");
  }
  return true;
}

InsepExt compositum(const InsepExt& a, const InsepExt& b, int cap) {
  require_same_modulus(a.modulus(), b.modulus(), "compositum");
  if (a.base_field() != b.base_field()) throw DomainError("extensions over different base fields");
  std::vector<PerfElem> gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return InsepExt::generate(a.modulus(), gens, cap, a.base_field());
}

InsepExt intersection(const InsepExt& a, const InsepExt& b, int cap) {
  require_same_modulus(a.modulus(), b.modulus(), "intersection");
  if (a.base_field() != b.base_field()) throw DomainError("extensions over different base fields");
  if (a.base_field() == BaseField::kPrimeField) return InsepExt::base(a.modulus(), BaseField::kPrimeField);
  const int level = std::max(a.ambient_level(), b.ambient_level());
  EchelonBasis common = intersect(a.echelon_at(level), b.echelon_at(level));
  std::vector<PerfElem> gens;
  for (const PolyRow& row : common.rows()) gens.push_back(element_of(row, level));
  InsepExt out = InsepExt::generate(a.modulus(), gens, cap);
  if (static_cast<std::size_t>(out.degree()) != common.rank()) {
    throw std::logic_error("intersection of subfields is not closed under multiplication");
  }
  return out;
}

}  // namespace perfclose
