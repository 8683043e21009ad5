#include "perfclose/random_corpus.hpp"

#include <sstream>

#include "perfclose/fraction_free.hpp"

namespace perfclose {

Rng stream(std::uint64_t seed, std::uint64_t tag) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(tag), static_cast<std::uint32_t>(tag >> 32)};
  return Rng(seq);
}

namespace {

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

std::string coeff_expr(const Poly& c) {
  std::string s = c.to_string("t");
  return c.terms().size() > 1 ? "(" + s + ")" : s;
}

}  // namespace

std::string random_generator_expr(Rng& rng, PrimeModulus m, int max_level) {
  const int terms = uniform_int(rng, 1, 2);
  std::vector<std::string> parts;
  while (parts.empty()) {
    for (int i = 0; i < terms; ++i) {
      const int k = uniform_int(rng, 0, max_level);
      Poly c = random_poly(m, 3, rng);
      if (c.is_zero()) continue;
      std::string root = k == 0 ? "t" : "rt(t," + std::to_string(k) + ")";
      parts.push_back(c.is_one() ? root : coeff_expr(c) + "*" + root);
    }
  }
  std::ostringstream os;
  for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? " + " : "") << parts[i];
  return os.str();
}

Poly random_nonzero_poly(Rng& rng, PrimeModulus m, Exp max_deg) {
  for (;;) {
    Poly f = random_poly(m, max_deg, rng);
    if (!f.is_zero()) return f;
  }
}

RatFunc random_ratfunc(Rng& rng, PrimeModulus m, Exp max_deg, bool nonzero) {
  Poly num = nonzero ? random_nonzero_poly(rng, m, max_deg) : random_poly(m, max_deg, rng);
  return RatFunc(std::move(num), random_nonzero_poly(rng, m, max_deg));
}

PerfElem random_elem(Rng& rng, PrimeModulus m, int min_level, int max_level, Exp max_deg, bool nonzero) {
  const int level = uniform_int(rng, min_level, max_level);
  return PerfElem(level, random_ratfunc(rng, m, max_deg, nonzero));
}

PerfElem random_elem_at_level(Rng& rng, PrimeModulus m, int level, Exp max_deg) {
  for (;;) {
    PerfElem x(level, random_ratfunc(rng, m, max_deg));
    if (x.level() == level) return x;
  }
}

PerfMatrix random_perf_matrix(Rng& rng, PrimeModulus m, std::size_t dim, int max_level, Exp max_deg) {
  for (;;) {
    std::vector<PerfElem> data;
    for (std::size_t i = 0; i < dim * dim; ++i) {
      // Sparse-ish: about a third of the entries are zero.
      if (uniform_int(rng, 0, 2) == 0) {
        data.emplace_back(m);
      } else {
        data.push_back(random_elem(rng, m, 0, max_level, max_deg));
      }
    }
    PerfMatrix a(dim, dim, std::move(data));
    if (!perf_determinant(a).is_zero()) return a;
  }
}

RatMatrix random_rat_matrix(Rng& rng, PrimeModulus m, std::size_t dim, Exp max_deg) {
  for (;;) {
    std::vector<RatFunc> data;
    for (std::size_t i = 0; i < dim * dim; ++i) {
      data.push_back(uniform_int(rng, 0, 2) == 0 ? RatFunc(m) : random_ratfunc(rng, m, max_deg));
    }
    RatMatrix a(dim, dim, std::move(data));
    if (!determinant(a).is_zero()) return a;
  }
}

}  // namespace perfclose
