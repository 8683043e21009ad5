#pragma once

// Mechanical checks of the structural claims, reported check by check.

#include <cstdint>
#include <string>
#include <vector>

#include "perfclose/random_corpus.hpp"

namespace perfclose {

struct CheckResult {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool ok() const;
  std::size_t passed() const;
};

/// Random pairs of extensions inside F_p(t^(1/p^levels)) plus a fixed tower.
SuiteReport verify_order_reversal(PrimeModulus m, int levels, int samples, std::uint64_t seed,
                                  int cap = kDefaultLevelCap);
/// v_0 .. v_(count-1): one check per unordered pair.
SuiteReport verify_vn(const RatFunc& lambda, int count);
/// Kernel of x -> class(x) is K*, and class_of is multiplicative.
SuiteReport verify_picard(PrimeModulus m, int samples, std::uint64_t seed);
/// Triples over L = F_p(t^(1/p)) of dimension <= max_dim with entries of level <= 2.
SuiteReport verify_surjectivity(PrimeModulus m, int max_dim, int samples, std::uint64_t seed);
/// Level-i representations against triples, levels <= 2.
SuiteReport verify_level_conversion(PrimeModulus m, int samples, std::uint64_t seed, int cap = kDefaultLevelCap);
/// Everything defined over the base collapses to the base.
SuiteReport verify_perfect_base(PrimeModulus m, int cases, std::uint64_t seed);
/// Field axioms, normalization, Frobenius and factorization suites.
SuiteReport verify_arithmetic(PrimeModulus m, int cases, std::uint64_t seed, int cap = kDefaultLevelCap);

struct VerifyAllOptions {
  int levels = 3;
  int order_samples = 50;
  int vn_count = 21;
  int picard_samples = 200;
  int surjectivity_dim = 4;
  int surjectivity_samples = 100;
  int conversion_samples = 100;
  int perfect_cases = 50;
  int arithmetic_cases = 500;
};

/// Suites run concurrently; each draws from its own seeded stream.
std::vector<SuiteReport> verify_all(PrimeModulus m, std::uint64_t seed, int cap = kDefaultLevelCap,
                                    const VerifyAllOptions& opts = {});

/// Rabin's test over F_p.
bool is_irreducible(const Poly& f);

}  // namespace perfclose
