#pragma once

// Seeded generators for the property suites.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "perfclose/tannakian.hpp"

namespace perfclose {

using Rng = std::mt19937_64;

/// Derives an independent stream for a named sub-check.
Rng stream(std::uint64_t seed, std::uint64_t tag);

/// A generator expression from the template family sum_k c_k(t) * rt(t,k),
/// 0 <= k <= max_level, deg c_k <= 3; at least one coefficient is nonzero.
std::string random_generator_expr(Rng& rng, PrimeModulus m, int max_level);

/// f(s)/g(s) read at a random level in [min_level, max_level], numerator and
/// denominator of degree <= max_deg in s; nonzero when requested.
PerfElem random_elem(Rng& rng, PrimeModulus m, int min_level, int max_level, Exp max_deg, bool nonzero = true);
/// As above with the result forced to the exact level (normalization does not drop it).
PerfElem random_elem_at_level(Rng& rng, PrimeModulus m, int level, Exp max_deg);
RatFunc random_ratfunc(Rng& rng, PrimeModulus m, Exp max_deg, bool nonzero = true);
Poly random_nonzero_poly(Rng& rng, PrimeModulus m, Exp max_deg);

/// Invertible d x d matrices, redrawn until the determinant is nonzero.
PerfMatrix random_perf_matrix(Rng& rng, PrimeModulus m, std::size_t dim, int max_level, Exp max_deg);
RatMatrix random_rat_matrix(Rng& rng, PrimeModulus m, std::size_t dim, Exp max_deg);

}  // namespace perfclose
