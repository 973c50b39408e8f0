#pragma once

#include "kl/bigint.hpp"
#include "kl/matrix.hpp"
#include "kl/rng.hpp"

#include <string>
#include <vector>

namespace kl {

/* l = q*k + r with -2 <= r <= k-3. The window has width k, so the
 * decomposition is unique; it needs k >= 5 to be well defined. */
struct ResidueDecomposition {
    entry_t q;
    int r;
};

ResidueDecomposition decompose(int k, entry_t l);

/* Minimum automorphism count over all (k,l)-multigraphs, in closed form.
 * Defined for l = 2 with k >= 3 (value 2k) and for k >= 8, l > 2 (residue
 * cases). Everything else is outside the proven range. */
bigint chi_formula(int k, entry_t l);

/* Maximum automorphism count: k! * (l!)^k. */
bigint mu_formula(int k, entry_t l);

struct MinimizerResult {
    IntersectionMatrix matrix;
    /* Which construction produced it (residue-dependent). */
    std::string construction;
};

/* Builds an explicit matrix whose multigraph attains chi_formula(k, l) and
 * verifies both the trivial joint stabilizer and the automorphism count
 * before returning. k >= 8, l > 2. */
MinimizerResult construct_minimizer(int k, entry_t l, std::uint64_t seed = default_seed);

/* Constraint "at least (sum of multiplicities up to here) entries of the
 * multiset are >= rank" (ranks above the mean) or "<= rank" (below). */
struct RankConstraint {
    std::int64_t multiplicity;
    entry_t rank;
};

struct MinFactorialResult {
    bigint value;
    std::vector<entry_t> witness; /* an attaining multiset, descending */
};

/* Closed-form minimum of prod(a_i!) over multisets of t non-negative integers
 * summing to s that carry the given rank constraints: the ranks themselves
 * plus a balanced fill of floor/ceil of the residual mean. Constraints must
 * be strictly monotone and all strictly above ceil(s/t) (decreasing) or all
 * strictly below floor(s/t) (increasing). */
MinFactorialResult min_factorial_product(entry_t s, std::int64_t t,
                                         const std::vector<RankConstraint>& constraints);

/* Partwise-fixed 0/1 matrix with margins r, for 3 <= r <= k-3 and k >= 8.
 * Randomized search (seeded superposition of permutation matrices plus 2x2
 * swap mixing), with an exhaustive deterministic fallback for k <= 9. The
 * first verified witness per (k, r) is cached for the process lifetime. */
IntersectionMatrix james_witness(int k, int r, std::uint64_t seed = default_seed);

} // namespace kl
