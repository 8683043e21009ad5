#include "perfclose/tannakian.hpp"

#include <algorithm>
#include <sstream>

#include "perfclose/errors.hpp"
#include "perfclose/fraction_free.hpp"

namespace perfclose {

namespace {

int max_level(const PerfMatrix& a) {
  int n = 0;
  for (const PerfElem& x : a.data()) n = std::max(n, x.level());
  return n;
}

RatMatrix lift_all(const PerfMatrix& a, int level) {
  return a.map([level](const PerfElem& x) { return x.lift(level); });
}

PerfMatrix read_at(const RatMatrix& a, int level) {
  return a.map([level](const RatFunc& f) { return PerfElem(level, f); });
}

void require_dim(const TannakianTriple& x, std::size_t d, const char* what) {
  if (x.dim() != d) throw DomainError(std::string(what) + ": expected dimension " + std::to_string(d));
}

}  // namespace

PerfMatrix perf_identity(PrimeModulus m, std::size_t n) {
  return identity_matrix(n, PerfElem(m), PerfElem::constant(m, 1));
}

FpMatrix fp_identity(PrimeModulus m, std::size_t n) { return identity_matrix(n, FpElem{0, m}, FpElem{1, m}); }

PerfMatrix to_perf(const FpMatrix& b) {
  return b.map([](const FpElem& x) { return PerfElem::constant(x.mod, x.value); });
}

PerfMatrix perf_multiply(const PerfMatrix& a, const PerfMatrix& b) {
  if (a.cols() != b.rows()) throw DomainError("matrix product shape mismatch");
  if (a.data().empty() || b.data().empty()) return PerfMatrix(a.rows(), b.cols(), std::vector<PerfElem>{});
  return multiply(a, b, PerfElem(a.data().front().modulus()));
}

PerfElem perf_determinant(const PerfMatrix& a) {
  const int level = max_level(a);
  return PerfElem(level, determinant(lift_all(a, level)));
}

PerfMatrix perf_inverse(const PerfMatrix& a) {
  if (a.rows() == 0) return a;
  const int level = max_level(a);
  return read_at(inverse(lift_all(a, level)), level);
}

std::string matrix_string(const PerfMatrix& a) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j) os << ", ";
      os << a(i, j).to_string();
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

bool in_base(const BaseExt& base, const PerfElem& x) { return base ? base->member(x) : x.is_in_base(); }

bool same_base(const BaseExt& a, const BaseExt& b) {
  if (a == b) return true;
  if (!a) return b->is_base();
  if (!b) return a->is_base();
  return a->equals(*b);
}

TannakianTriple::TannakianTriple(PrimeModulus m, PerfMatrix psi, BaseExt base)
    : mod_(m), psi_(std::move(psi)), base_(std::move(base)) {
  if (!psi_.is_square()) throw DomainError("psi must be square");
  for (const PerfElem& x : psi_.data()) require_same_modulus(mod_, x.modulus(), "triple");
  if (base_) require_same_modulus(mod_, base_->modulus(), "triple base");
  if (dim() > 0 && perf_determinant(psi_).is_zero()) throw DomainError("psi is not invertible");
}

TannakianTriple TannakianTriple::unit(PrimeModulus m, BaseExt base) {
  return TannakianTriple(m, perf_identity(m, 1), std::move(base));
}

bool operator==(const TannakianTriple& a, const TannakianTriple& b) {
  return a.mod_ == b.mod_ && a.psi_ == b.psi_ && same_base(a.base_, b.base_);
}

TripleMorphism TripleMorphism::make(TannakianTriple source, TannakianTriple target, PerfMatrix a, FpMatrix b) {
  if (!same_base(source.base(), target.base())) throw DomainError("morphism between triples over different bases");
  if (a.rows() != target.dim() || a.cols() != source.dim() || b.rows() != target.dim() || b.cols() != source.dim()) {
    throw DomainError("morphism matrices must be d_target x d_source");
  }
  for (const PerfElem& x : a.data()) {
    if (!in_base(source.base(), x)) throw DomainError("entry of A is not in the base field: " + x.to_string());
  }
  for (const FpElem& x : b.data()) require_same_modulus(source.modulus(), x.mod, "morphism B");
  TripleMorphism f(std::move(source), std::move(target), std::move(a), std::move(b));
  if (!f.is_compatible()) throw DomainError("morphism is not compatible: psi' A != B psi");
  return f;
}

bool TripleMorphism::is_compatible() const {
  if (a_.data().empty()) return true;
  return perf_multiply(target_.psi(), a_) == perf_multiply(to_perf(b_), source_.psi());
}

TripleMorphism identity(const TannakianTriple& x) {
  return TripleMorphism::make(x, x, perf_identity(x.modulus(), x.dim()), fp_identity(x.modulus(), x.dim()));
}

TripleMorphism compose(const TripleMorphism& f, const TripleMorphism& g) {
  if (!(g.target() == f.source())) throw DomainError("compose: target of g is not the source of f");
  const PrimeModulus m = f.source().modulus();
  PerfMatrix a = perf_multiply(f.a(), g.a());
  FpMatrix b = (f.b().data().empty() || g.b().data().empty())
                   ? FpMatrix(f.b().rows(), g.b().cols(), FpElem{0, m})
                   : multiply(f.b(), g.b(), FpElem{0, m});
  TripleMorphism h(g.source(), f.target(), std::move(a), std::move(b));
#if PERFCLOSE_CHECK_INVARIANTS
  if (!h.is_compatible()) throw std::logic_error("composition broke compatibility");
#endif
  return h;
}

TannakianTriple tensor(const TannakianTriple& x, const TannakianTriple& y) {
  if (!same_base(x.base(), y.base())) throw DomainError("tensor of triples over different bases");
  return TannakianTriple(x.modulus(), kronecker(x.psi(), y.psi(), PerfElem(x.modulus())), x.base());
}

TripleMorphism tensor(const TripleMorphism& f, const TripleMorphism& g) {
  const PrimeModulus m = f.source().modulus();
  return TripleMorphism::make(tensor(f.source(), g.source()), tensor(f.target(), g.target()),
                              kronecker(f.a(), g.a(), PerfElem(m)), kronecker(f.b(), g.b(), FpElem{0, m}));
}

TannakianTriple direct_sum(const TannakianTriple& x, const TannakianTriple& y) {
  if (!same_base(x.base(), y.base())) throw DomainError("direct sum of triples over different bases");
  return TannakianTriple(x.modulus(), block_diagonal(x.psi(), y.psi(), PerfElem(x.modulus())), x.base());
}

TannakianTriple dual(const TannakianTriple& x) {
  return TannakianTriple(x.modulus(), perf_inverse(x.psi()).transpose(), x.base());
}

CharClass rank1_class(const TannakianTriple& x) {
  require_dim(x, 1, "rank1_class");
  if (!x.over_base_field() && !x.base()->is_base()) {
    throw DomainError("rank1_class: triple lives over a proper extension; use rank1_view_class");
  }
  return class_of(x.psi()(0, 0));
}

ViewClass rank1_view_class(const TannakianTriple& x) {
  require_dim(x, 1, "rank1_view_class");
  BaseExt base = x.base() ? x.base() : std::make_shared<const InsepExt>(InsepExt::base(x.modulus()));
  return class_coarsen(x.psi()(0, 0), std::move(base));
}

std::optional<TripleMorphism> rank1_iso(const TannakianTriple& x, const TannakianTriple& y) {
  require_dim(x, 1, "rank1_iso");
  require_dim(y, 1, "rank1_iso");
  if (!same_base(x.base(), y.base())) throw DomainError("rank1_iso: triples over different bases");
  // psi' A = B psi with B = 1 forces A = psi / psi'.
  PerfElem a = x.psi()(0, 0) / y.psi()(0, 0);
  if (!in_base(x.base(), a)) return std::nullopt;
  PerfMatrix am(1, 1, a);
  return TripleMorphism::make(x, y, std::move(am), fp_identity(x.modulus(), 1));
}

TannakianTriple pullback_extension(const TannakianTriple& x, const BaseExt& ext) {
  if (!ext) throw DomainError("pullback: missing extension");
  if (x.base() && !ext->includes(*x.base())) throw DomainError("pullback: target field does not contain the base");
  // K^perf = L^perf, so psi is kept verbatim.
  return TannakianTriple(x.modulus(), x.psi(), ext);
}

TripleMorphism pullback_extension(const TripleMorphism& f, const BaseExt& ext) {
  return TripleMorphism(pullback_extension(f.source(), ext), pullback_extension(f.target(), ext), f.a(), f.b());
}

TannakianTriple essential_surjectivity_witness(const TannakianTriple& y) {
  return TannakianTriple(y.modulus(), y.psi(), nullptr);
}

std::size_t fiber_functor(const TannakianTriple& x) { return x.dim(); }

const FpMatrix& fiber_functor(const TripleMorphism& f) { return f.b(); }

PerfMatrix arrow_from_fiber(const TannakianTriple& source, const TannakianTriple& target, const FpMatrix& b) {
  return perf_multiply(perf_multiply(perf_inverse(target.psi()), to_perf(b)), source.psi());
}

std::optional<TripleMorphism> trivialize(const TannakianTriple& x) {
  for (const PerfElem& e : x.psi().data()) {
    if (!e.is_in_base()) return std::nullopt;
  }
  const PrimeModulus m = x.modulus();
  TannakianTriple trivial(m, perf_identity(m, x.dim()), x.base());
  return TripleMorphism::make(x, trivial, x.psi(), fp_identity(m, x.dim()));
}

FrobeniusRep::FrobeniusRep(int level, RatMatrix lambda, int cap) : level_(level), lambda_(std::move(lambda)) {
  if (level_ < 0) throw DomainError("negative Frobenius level");
  if (level_ > cap) {
    throw LevelCapExceeded("Frobenius level " + std::to_string(level_) + " exceeds cap " + std::to_string(cap));
  }
  if (!lambda_.is_square()) throw DomainError("lambda must be square");
  if (lambda_.rows() > 0 && determinant(lambda_).is_zero()) throw DomainError("lambda is not invertible");
}

PrimeModulus FrobeniusRep::modulus() const {
  if (lambda_.data().empty()) throw DomainError("empty representation has no stored modulus");
  return lambda_.data().front().modulus();
}

TannakianTriple convert_level_rep(const FrobeniusRep& r, int cap) {
  const PrimeModulus m = r.modulus();
  PerfMatrix psi = r.lambda().map([&](const RatFunc& f) {
    PerfElem x(f);
    for (int i = 0; i < r.level(); ++i) x = x.pth_root(cap);
    return x;
  });
  return TannakianTriple(m, std::move(psi));
}

FrobeniusRep to_level_rep(const TannakianTriple& x, int level, int cap) {
  if (!x.over_base_field()) throw DomainError("level representations are defined over K");
  for (const PerfElem& e : x.psi().data()) {
    if (e.level() > level) {
      throw DomainError("entry " + e.to_string() + " has level above " + std::to_string(level));
    }
  }
  RatMatrix lambda = x.psi().map([level](const PerfElem& e) {
    PerfElem y = e;
    for (int i = 0; i < level; ++i) y = y.frobenius();
    if (!y.is_in_base()) throw std::logic_error("Frobenius image did not land in K");
    return y.value();
  });
  return FrobeniusRep(level, std::move(lambda), cap);
}

FrobeniusRep level_up(const FrobeniusRep& r, int cap) {
  return FrobeniusRep(r.level() + 1, r.lambda().map([](const RatFunc& f) { return f.frobenius(); }), cap);
}

}  // namespace perfclose
