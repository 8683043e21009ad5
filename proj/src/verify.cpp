#include "perfclose/verify.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <memory>
#include <sstream>

#include "perfclose/errors.hpp"
#include "perfclose/parser.hpp"

namespace perfclose {

bool SuiteReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::size_t SuiteReport::passed() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; }));
}

namespace {

class Tally {
 public:
  explicit Tally(std::string name) : name_(std::move(name)) {}

  void record(bool ok, const std::function<std::string()>& describe) {
    ++total_;
    if (ok) {
      ++passed_;
    } else if (first_failure_.empty()) {
      first_failure_ = describe();
    }
  }

  CheckResult result() const {
    std::ostringstream os;
    os << passed_ << "/" << total_ << " cases";
    if (!first_failure_.empty()) os << "; first failure: " << first_failure_;
    return CheckResult{name_, passed_ == total_, os.str()};
  }

 private:
  std::string name_;
  std::size_t total_ = 0;
  std::size_t passed_ = 0;
  std::string first_failure_;
};

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

std::string join(const std::vector<PerfElem>& xs) {
  std::string out;
  for (const auto& x : xs) {
    if (!out.empty()) out += ", ";
    out += x.to_string();
  }
  return out;
}

std::string ext_string(const InsepExt& e) { return "K(" + join(e.generators()) + ")"; }

using ExtPtr = std::shared_ptr<const InsepExt>;

ExtPtr make_ext(PrimeModulus m, const std::vector<PerfElem>& gens, int cap) {
  return std::make_shared<const InsepExt>(InsepExt::generate(m, gens, cap));
}

bool all_members(const InsepExt& a, const std::vector<PerfElem>& gens) {
  return std::all_of(gens.begin(), gens.end(), [&](const PerfElem& g) { return a.member(g); });
}

bool all_classes_trivial(const ExtPtr& a, const std::vector<PerfElem>& gens) {
  return std::all_of(gens.begin(), gens.end(),
                     [&](const PerfElem& g) { return g.is_zero() || class_coarsen(g, a).is_trivial(); });
}

std::vector<PerfElem> sub_generators(Rng& rng, const std::vector<PerfElem>& gens) {
  std::vector<PerfElem> out;
  for (const auto& g : gens) {
    PerfElem x = g;
    for (int j = uniform_int(rng, 0, 2); j > 0; --j) x = x.frobenius();
    out.push_back(x);
  }
  if (gens.size() > 1 && uniform_int(rng, 0, 1) == 0) out = {gens[0] * gens[1]};
  return out;
}

}  // namespace

bool is_irreducible(const Poly& f) {
  const Exp n = f.degree();
  if (n < 1) return false;
  if (n == 1) return true;
  const PrimeModulus m = f.modulus();
  const Poly x = Poly::variable(m);
  auto frob_power = [&](Exp k) {
    Poly h = x % f;
    for (Exp i = 0; i < k; ++i) h = powmod(h, m.value(), f);
    return h;
  };
  if (frob_power(n) != x % f) return false;
  Exp rest = n;
  for (Exp q = 2; q <= rest; ++q) {
    if (rest % q != 0) continue;
    while (rest % q == 0) rest /= q;
    if (!gcd(frob_power(n / q) - x, f).is_one()) return false;
  }
  return true;
}

SuiteReport verify_order_reversal(PrimeModulus m, int levels, int samples, std::uint64_t seed, int cap) {
  if (levels < 0 || levels > cap) throw DomainError("levels must lie in [0, cap]");
  const ParseContext ctx{m, cap, {}};
  Tally by_members("inclusion iff every generator is a member");
  Tally by_classes("inclusion iff generator classes are trivial in (K^perf)*/L*");
  Tally by_degree("inclusion iff the compositum has the larger degree");
  Tally injective("equal fields iff membership agrees on all generators");
  Tally reversal("smaller field, smaller kernel of the coarsening");
  Tally lattice("meet and join bound the pair");

  for (int s = 0; s < samples; ++s) {
    Rng rng = stream(seed, static_cast<std::uint64_t>(s));
    std::vector<PerfElem> gens1;
    for (int i = uniform_int(rng, 1, 2); i > 0; --i) gens1.push_back(parse_element(random_generator_expr(rng, m, levels), ctx));
    std::vector<PerfElem> gens2;
    switch (uniform_int(rng, 0, 2)) {
      case 0:
        for (int i = uniform_int(rng, 1, 2); i > 0; --i) gens2.push_back(parse_element(random_generator_expr(rng, m, levels), ctx));
        break;
      case 1:
        gens2 = sub_generators(rng, gens1);
        break;
      default:
        gens2 = gens1;
        gens2.push_back(parse_element(random_generator_expr(rng, m, levels), ctx));
        break;
    }
    const ExtPtr l1 = make_ext(m, gens1, cap);
    const ExtPtr l2 = make_ext(m, gens2, cap);
    auto pair_string = [&] { return ext_string(*l1) + " vs " + ext_string(*l2); };

    const bool inc12 = l1->includes(*l2);
    const bool inc21 = l2->includes(*l1);
    const InsepExt join_ext = compositum(*l1, *l2, cap);
    for (const auto& [a, gens_b, inc] : {std::tuple{l1, &gens2, inc12}, std::tuple{l2, &gens1, inc21}}) {
      by_members.record(inc == all_members(*a, *gens_b), pair_string);
      by_classes.record(inc == all_classes_trivial(a, *gens_b), pair_string);
      by_degree.record(inc == (join_ext.degree() == a->degree()), pair_string);
    }

    std::vector<PerfElem> all_gens = gens1;
    all_gens.insert(all_gens.end(), gens2.begin(), gens2.end());
    const bool agree = std::all_of(all_gens.begin(), all_gens.end(),
                                   [&](const PerfElem& g) { return l1->member(g) == l2->member(g); });
    injective.record((inc12 && inc21) == agree, pair_string);

    if (inc12 || inc21) {
      const ExtPtr& small = inc12 ? l2 : l1;
      const ExtPtr& big = inc12 ? l1 : l2;
      std::vector<PerfElem> probe = all_gens;
      for (int i = 0; i < 3; ++i) probe.push_back(random_elem(rng, m, 0, levels, 2));
      bool ok = true;
      for (std::size_t i = 0; i < probe.size() && ok; ++i) {
        if (probe[i].is_zero()) continue;
        if (class_coarsen(probe[i], small).is_trivial() && !class_coarsen(probe[i], big).is_trivial()) ok = false;
        for (std::size_t j = 0; j < i && ok; ++j) {
          if (probe[j].is_zero()) continue;
          if (view_eq(class_coarsen(probe[i], small), class_coarsen(probe[j], small)) &&
              !view_eq(class_coarsen(probe[i], big), class_coarsen(probe[j], big))) {
            ok = false;
          }
        }
      }
      reversal.record(ok, pair_string);
    }

    const InsepExt meet = intersection(*l1, *l2, cap);
    lattice.record(l1->includes(meet) && l2->includes(meet) && join_ext.includes(*l1) && join_ext.includes(*l2),
                   pair_string);
  }

  SuiteReport report{"order-reversal", {}};
  for (const Tally* t : {&by_members, &by_classes, &by_degree, &injective, &reversal, &lattice}) {
    report.checks.push_back(t->result());
  }

  if (cap >= 2) {
    const ExtPtr k = std::make_shared<const InsepExt>(InsepExt::base(m));
    const ExtPtr l1 = make_ext(m, {PerfElem::root_of_t(m, 1)}, cap);
    const ExtPtr l2 = make_ext(m, {PerfElem::root_of_t(m, 2)}, cap);
    const Exp p = m.value();
    const bool chain = l2->includes(*l1) && l1->includes(*k) && !l1->includes(*l2) && !k->includes(*l1) &&
                       k->degree() == 1 && l1->degree() == p && l2->degree() == p * p;
    // Kernels of (K^perf)* -> (K^perf)*/L* grow along the tower.
    const PerfElem r1 = PerfElem::root_of_t(m, 1);
    const PerfElem r2 = PerfElem::root_of_t(m, 2);
    const bool kernels = !class_coarsen(r1, k).is_trivial() && class_coarsen(r1, l1).is_trivial() &&
                         class_coarsen(r1, l2).is_trivial() && !class_coarsen(r2, l1).is_trivial() &&
                         class_coarsen(r2, l2).is_trivial();
    report.checks.push_back({"tower K < K(rt(t,1)) < K(rt(t,2)) is a chain", chain && kernels,
                             "degrees 1, " + std::to_string(p) + ", " + std::to_string(p * p)});
    const ExtPtr alt = make_ext(m, {PerfElem::root_of_t(m, 1) + PerfElem::root_of_t(m, 2)}, cap);
    report.checks.push_back({"K(rt(t,2)) = K(rt(t,1) + rt(t,2))", l2->equals(*alt),
                             "degree " + std::to_string(alt->degree())});
  }
  return report;
}

SuiteReport verify_vn(const RatFunc& lambda, int count) {
  if (count < 1) throw DomainError("count must be positive");
  const VnReport vn = verify_vn_distinct(lambda, count - 1);
  SuiteReport report{"vn", {}};
  for (int n = 0; n < count; ++n) {
    for (int k = 0; k < n; ++k) {
      const bool bad = std::find(vn.violations.begin(), vn.violations.end(), std::pair{k, n}) != vn.violations.end();
      report.checks.push_back({"v_" + std::to_string(n) + " / v_" + std::to_string(k) + " not in K*", !bad,
                               bad ? "ratio lies in K*" : "distinct classes"});
    }
  }
  return report;
}

SuiteReport verify_picard(PrimeModulus m, int samples, std::uint64_t seed) {
  Tally kernel("elements of K* have trivial class");
  Tally nontrivial("normalized elements of level >= 1 have nontrivial class");
  Tally multiplicative("class_of is multiplicative");
  Tally fingerprints("class equality agrees with fingerprints");
  for (int s = 0; s < samples; ++s) {
    Rng rng = stream(seed, static_cast<std::uint64_t>(s));
    const PerfElem x = random_elem(rng, m, 0, 0, 4);
    const PerfElem y = random_elem_at_level(rng, m, uniform_int(rng, 1, 3), 3);
    kernel.record(class_of(x).is_trivial() && fingerprint_of(x).is_trivial() &&
                      same_class(fingerprint_of(x * y), fingerprint_of(y)),
                  [&] { return x.to_string(); });
    nontrivial.record(!class_of(y).is_trivial() && !fingerprint_of(y).is_trivial(), [&] { return y.to_string(); });

    const PerfElem a = random_elem(rng, m, 0, 2, 3);
    const PerfElem b = random_elem(rng, m, 0, 2, 3);
    multiplicative.record(class_eq(class_of(a * b), class_of(a) * class_of(b)) &&
                              same_class(fingerprint_of(a * b), multiply(fingerprint_of(a), fingerprint_of(b))),
                          [&] { return a.to_string() + " ; " + b.to_string(); });
    const PerfElem c = uniform_int(rng, 0, 1) == 0 ? a * random_elem(rng, m, 0, 0, 3) : b;
    fingerprints.record(class_eq(class_of(a), class_of(c)) == same_class(fingerprint_of(a), fingerprint_of(c)),
                        [&] { return a.to_string() + " ; " + c.to_string(); });
  }
  SuiteReport report{"picard", {}};
  for (const Tally* t : {&kernel, &nontrivial, &multiplicative, &fingerprints}) report.checks.push_back(t->result());
  return report;
}

SuiteReport verify_surjectivity(PrimeModulus m, int max_dim, int samples, std::uint64_t seed) {
  if (max_dim < 1) throw DomainError("dimension must be positive");
  const BaseExt l = std::make_shared<const InsepExt>(InsepExt::generate(m, {PerfElem::root_of_t(m, 1)}));
  Tally witness("pullback of the witness equals the input");
  Tally identities("pullback preserves identity arrows");
  Tally fibers("pullback preserves the fiber");
  for (int s = 0; s < samples; ++s) {
    Rng rng = stream(seed, static_cast<std::uint64_t>(s));
    const auto dim = static_cast<std::size_t>(uniform_int(rng, 1, max_dim));
    const TannakianTriple y(m, random_perf_matrix(rng, m, dim, 2, 2), l);
    const TannakianTriple x = essential_surjectivity_witness(y);
    auto describe = [&] { return matrix_string(y.psi()); };
    witness.record(x.over_base_field() && pullback_extension(x, l) == y, describe);
    identities.record(pullback_extension(identity(x), l) == identity(y), describe);
    fibers.record(fiber_functor(pullback_extension(x, l)) == fiber_functor(x), describe);
  }
  SuiteReport report{"surjectivity", {}};
  for (const Tally* t : {&witness, &identities, &fibers}) report.checks.push_back(t->result());
  return report;
}

SuiteReport verify_level_conversion(PrimeModulus m, int samples, std::uint64_t seed, int cap) {
  Tally rep_round("level rep -> triple -> level rep is the identity");
  Tally triple_round("triple -> level rep -> triple is the identity");
  Tally absorbed("level_up is absorbed by conversion");
  for (int s = 0; s < samples; ++s) {
    Rng rng = stream(seed, static_cast<std::uint64_t>(s));
    const int level = uniform_int(rng, 0, std::min(2, cap));
    const auto dim = static_cast<std::size_t>(uniform_int(rng, 1, 3));
    const FrobeniusRep r(level, random_rat_matrix(rng, m, dim, 2), cap);
    const TannakianTriple x = convert_level_rep(r, cap);
    rep_round.record(to_level_rep(x, level, cap) == r, [&] { return matrix_string(x.psi()); });
    if (level < cap) {
      absorbed.record(convert_level_rep(level_up(r, cap), cap) == x, [&] { return matrix_string(x.psi()); });
    }
    const TannakianTriple y(m, random_perf_matrix(rng, m, dim, std::min(2, cap), 2));
    triple_round.record(convert_level_rep(to_level_rep(y, std::min(2, cap), cap), cap) == y,
                        [&] { return matrix_string(y.psi()); });
  }
  SuiteReport report{"level-conversion", {}};
  for (const Tally* t : {&rep_round, &triple_round, &absorbed}) report.checks.push_back(t->result());
  return report;
}

SuiteReport verify_perfect_base(PrimeModulus m, int cases, std::uint64_t seed) {
  Tally fields("extensions generated over the base equal K");
  Tally classes("base elements have trivial class");
  Tally triples("triples with base entries trivialize via (psi, id)");
  for (int s = 0; s < cases; ++s) {
    Rng rng = stream(seed, static_cast<std::uint64_t>(s));
    std::vector<PerfElem> gens;
    for (int i = uniform_int(rng, 1, 3); i > 0; --i) gens.push_back(random_elem(rng, m, 0, 0, 3));
    std::vector<PerfElem> constants;
    for (int i = uniform_int(rng, 1, 3); i > 0; --i) {
      constants.push_back(PerfElem::constant(m, uniform_int(rng, 0, static_cast<int>(m.value() - 1))));
    }
    fields.record(InsepExt::generate(m, gens).is_base() &&
                      InsepExt::generate(m, constants, kDefaultLevelCap, BaseField::kPrimeField).is_base(),
                  [&] { return join(gens); });
    classes.record(std::all_of(gens.begin(), gens.end(),
                               [](const PerfElem& g) {
                                 return g.is_zero() || (class_of(g).is_trivial() && fingerprint_of(g).is_trivial());
                               }),
                   [&] { return join(gens); });
    const auto dim = static_cast<std::size_t>(uniform_int(rng, 1, 3));
    const TannakianTriple x(m, random_perf_matrix(rng, m, dim, 0, 3));
    const auto iso = trivialize(x);
    triples.record(iso.has_value() && iso->target().psi() == perf_identity(m, dim) && iso->a() == x.psi() &&
                       iso->b() == fp_identity(m, dim),
                   [&] { return matrix_string(x.psi()); });
  }
  SuiteReport report{"perfect-base", {}};
  for (const Tally* t : {&fields, &classes, &triples}) report.checks.push_back(t->result());
  // Over F_p(t) itself the statement fails, as it must: t^(1/p) has nontrivial class.
  const TannakianTriple root(m, PerfMatrix(1, 1, PerfElem::root_of_t(m, 1)));
  report.checks.push_back({"[rt(t,1)] is a nontrivial character over F_p(t)",
                           !rank1_class(root).is_trivial() && !trivialize(root).has_value(),
                           rank1_class(root).fingerprint().to_string()});
  return report;
}

SuiteReport verify_arithmetic(PrimeModulus m, int cases, std::uint64_t seed, int cap) {
  const ParseContext ctx{m, cap, {}};
  Tally axioms("field axioms");
  Tally normalization("normalization is idempotent");
  Tally printing("printing is a parse fixed point");
  Tally frobenius("Frobenius is a field homomorphism");
  Tally factoring("factorizations remultiply to the input");
  const PerfElem zero(m);
  const PerfElem one = PerfElem::constant(m, 1);
  for (int s = 0; s < cases; ++s) {
    Rng rng = stream(seed, static_cast<std::uint64_t>(s));
    const PerfElem x = random_elem(rng, m, 0, 2, 3, false);
    const PerfElem y = random_elem(rng, m, 0, 2, 3, false);
    const PerfElem z = random_elem(rng, m, 0, 2, 3, false);
    auto triple_string = [&] { return x.to_string() + " ; " + y.to_string() + " ; " + z.to_string(); };

    bool ok = (x + y) + z == x + (y + z) && x + y == y + x && (x * y) * z == x * (y * z) && x * y == y * x &&
              x * (y + z) == x * y + x * z && x + zero == x && x * one == x && x - x == zero && -(-x) == x;
    if (!x.is_zero()) ok = ok && x * x.inverse() == one && (y / x) * x == y;
    axioms.record(ok, triple_string);

    bool norm = PerfElem(x.level(), x.value()) == x;
    for (int k = 1; k <= 2 && x.level() + k <= cap; ++k) norm = norm && PerfElem(x.level() + k, x.lift(x.level() + k)) == x;
    normalization.record(norm, [&] { return x.to_string(); });

    const std::string printed = x.to_string();
    const PerfElem reread = parse_element(printed, ctx);
    printing.record(reread == x && reread.to_string() == printed, [&] { return printed; });

    bool frob = (x + y).frobenius() == x.frobenius() + y.frobenius() &&
                (x * y).frobenius() == x.frobenius() * y.frobenius() && x.frobenius() == x.pow(m.value()) &&
                x.frobenius().pth_root(cap) == x;
    if (x.level() < cap) frob = frob && x.pth_root(cap).frobenius() == x;
    frobenius.record(frob, triple_string);

    const Poly f = random_nonzero_poly(rng, m, 12);
    const Factorization fz = factor(f, rng);
    bool fact = expand(fz, m) == f && fz.unit == f.leading_coeff();
    for (std::size_t i = 0; i < fz.factors.size(); ++i) {
      const Factor& g = fz.factors[i];
      fact = fact && g.multiplicity >= 1 && g.poly.is_monic() && is_irreducible(g.poly);
      if (i > 0) fact = fact && fz.factors[i - 1].poly < g.poly;
    }
    factoring.record(fact, [&] { return f.to_string(); });
  }
  SuiteReport report{"arithmetic", {}};
  for (const Tally* t : {&axioms, &normalization, &printing, &frobenius, &factoring}) {
    report.checks.push_back(t->result());
  }
  return report;
}

std::vector<SuiteReport> verify_all(PrimeModulus m, std::uint64_t seed, int cap, const VerifyAllOptions& opts) {
  // Keep the ambient space F_p(t^(1/p^levels)) at dimension <= 27.
  int levels = std::min(opts.levels, cap);
  while (levels > 1 && prime_power(m, levels) > 27) --levels;
  std::vector<std::function<SuiteReport()>> jobs = {
      [=] { return verify_order_reversal(m, levels, opts.order_samples, seed, cap); },
      [=] { return verify_vn(RatFunc(Poly::variable(m)), opts.vn_count); },
      [=] { return verify_picard(m, opts.picard_samples, seed); },
      [=] { return verify_surjectivity(m, opts.surjectivity_dim, opts.surjectivity_samples, seed); },
      [=] { return verify_level_conversion(m, opts.conversion_samples, seed, cap); },
      [=] { return verify_perfect_base(m, opts.perfect_cases, seed); },
      [=] { return verify_arithmetic(m, opts.arithmetic_cases, seed, cap); },
  };
  std::vector<std::future<SuiteReport>> running;
  for (auto& job : jobs) running.push_back(std::async(std::launch::async, job));
  std::vector<SuiteReport> out;
  for (auto& f : running) out.push_back(f.get());
  return out;
}

}  // namespace perfclose
