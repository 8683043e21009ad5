#include "perfclose/character.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "perfclose/errors.hpp"

namespace perfclose {

namespace {

Exp mod_floor(Exp a, Exp m) {
  Exp r = a % m;
  return r < 0 ? r + m : r;
}

Fingerprint from_map(int level, const std::map<Poly, Exp>& acc) {
  Fingerprint fp;
  fp.level = level;
  for (const auto& [poly, e] : acc) {
    if (e != 0) fp.exponents.emplace_back(poly, e);
  }
  return fp;
}

}  // namespace

Fingerprint Fingerprint::lifted(int to_level) const {
  if (to_level < level) throw DomainError("fingerprint lift below its level");
  if (to_level == level || exponents.empty()) {
    Fingerprint out = *this;
    out.level = to_level;
    return out;
  }
  const PrimeModulus m = exponents.front().first.modulus();
  const Exp scale = prime_power(m, to_level - level);
  Fingerprint out;
  out.level = to_level;
  for (const auto& [poly, e] : exponents) out.exponents.emplace_back(poly, e * scale);
  return out;
}

std::string Fingerprint::to_string() const {
  std::ostringstream os;
  if (exponents.empty()) {
    os << '1';
  } else {
    bool first = true;
    for (const auto& [poly, e] : exponents) {
      if (!first) os << " * ";
      first = false;
      os << '[' << poly.to_string("s") << "]^" << e;
    }
  }
  os << " @ level " << level;
  return os.str();
}

Fingerprint fingerprint_of(const PerfElem& x) {
  if (x.is_zero()) throw DomainError("fingerprint of zero");
  const int level = x.level();
  if (level == 0) return Fingerprint{0, {}};
  const Exp modulus = prime_power(x.modulus(), level);
  std::map<Poly, Exp> acc;
  for (const Factor& f : factor(x.value().num()).factors) acc[f.poly] = mod_floor(f.multiplicity, modulus);
  for (const Factor& f : factor(x.value().den()).factors) {
    acc[f.poly] = mod_floor(acc[f.poly] - f.multiplicity, modulus);
  }
  return from_map(level, acc);
}

bool same_class(const Fingerprint& a, const Fingerprint& b) {
  const int level = std::max(a.level, b.level);
  return a.lifted(level).exponents == b.lifted(level).exponents;
}

Fingerprint multiply(const Fingerprint& a, const Fingerprint& b) {
  const int level = std::max(a.level, b.level);
  Fingerprint la = a.lifted(level);
  Fingerprint lb = b.lifted(level);
  if (la.exponents.empty() && lb.exponents.empty()) return Fingerprint{0, {}};
  const PrimeModulus m = (la.exponents.empty() ? lb : la).exponents.front().first.modulus();
  const Exp modulus = prime_power(m, level);
  std::map<Poly, Exp> acc;
  for (const auto& [poly, e] : la.exponents) acc[poly] = e;
  for (const auto& [poly, e] : lb.exponents) acc[poly] = mod_floor(acc[poly] + e, modulus);
  Fingerprint out = from_map(level, acc);
  // Trivial classes live at level 0.
  if (out.exponents.empty()) out.level = 0;
  return out;
}

CharClass::CharClass(PerfElem rep) : rep_(std::move(rep)) {
  if (rep_.is_zero()) throw DomainError("zero has no multiplicative class");
}

CharClass::CharClass(const CharClass& other)
    : rep_(other.rep_), fingerprint_(std::atomic_load(&other.fingerprint_)) {}

CharClass& CharClass::operator=(const CharClass& other) {
  if (this != &other) {
    rep_ = other.rep_;
    std::atomic_store(&fingerprint_, std::atomic_load(&other.fingerprint_));
  }
  return *this;
}

const Fingerprint& CharClass::fingerprint() const {
  auto cached = std::atomic_load(&fingerprint_);
  if (cached) return *cached;
  auto fresh = std::make_shared<const Fingerprint>(fingerprint_of(rep_));
  std::shared_ptr<const Fingerprint> expected;
  if (std::atomic_compare_exchange_strong(&fingerprint_, &expected, fresh)) return *fresh;
  return *expected;
}

CharClass class_of(const PerfElem& x) { return CharClass(x); }

bool class_eq(const CharClass& a, const CharClass& b) {
  require_same_modulus(a.rep().modulus(), b.rep().modulus(), "class_eq");
  return (a.rep() / b.rep()).is_in_base();
}

ViewClass class_coarsen(const PerfElem& x, std::shared_ptr<const InsepExt> ext) {
  if (x.is_zero()) throw DomainError("zero has no multiplicative class");
  if (!ext) throw DomainError("class_coarsen: missing extension");
  require_same_modulus(x.modulus(), ext->modulus(), "class_coarsen");
  return ViewClass{x, std::move(ext)};
}

bool view_eq(const ViewClass& a, const ViewClass& b) {
  if (a.ext != b.ext && !a.ext->equals(*b.ext)) throw DomainError("view_eq: classes live in different quotients");
  return a.ext->member(a.rep / b.rep);
}

PerfElem vn_family(const RatFunc& lambda, int n) {
  if (n < 0) throw DomainError("v_n needs n >= 0");
  if (lambda.is_zero()) throw DomainError("lambda must be nonzero");
  if (lambda.pth_root()) throw DomainError("lambda is a p-th power in K: " + PerfElem(lambda).to_string());
  const PerfElem l(lambda);
  return PerfElem::constant(lambda.modulus(), 1) + l.pow(n) * l.pth_root();
}

VnReport verify_vn_distinct(const RatFunc& lambda, int max_index) {
  if (max_index < 0) throw DomainError("max index must be >= 0");
  std::vector<PerfElem> v;
  for (int n = 0; n <= max_index; ++n) v.push_back(vn_family(lambda, n));
  auto base = std::make_shared<const InsepExt>(InsepExt::base(lambda.modulus()));
  VnReport report;
  report.max_index = max_index;
  for (int n = 0; n <= max_index; ++n) {
    for (int m = 0; m < n; ++m) {
      ++report.checks;
      // Coarsening to K and the level of the quotient must both see a nontrivial class.
      bool trivial_in_view = class_coarsen(v[n] / v[m], base).is_trivial();
      bool equal_classes = class_eq(class_of(v[n]), class_of(v[m]));
      if (trivial_in_view || equal_classes) report.violations.emplace_back(m, n);
    }
  }
  return report;
}

}  // namespace perfclose
