#pragma once

#include "kl/bigint.hpp"
#include "kl/extremal.hpp"
#include "kl/matrix.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace kl {

struct EnumerationOptions {
    /* Track per-matrix automorphism statistics (costs a stabilizer run per
     * visited matrix). */
    bool with_stats = false;
    /* Hard cap on visited matrices. */
    std::int64_t budget = 100'000'000;
};

struct EnumerationStats {
    bigint count = 0;
    /* Populated only when with_stats. */
    bigint min_aut = 0;
    bigint max_aut = 0;
    std::optional<IntersectionMatrix> min_witness;
    std::optional<IntersectionMatrix> max_witness;
    bigint sum_factorial_products = 0;
    bigint trivial_kn_count = 0;
};

using MatrixVisitor = std::function<void(const IntersectionMatrix&)>;

/* Visits every k x k non-negative matrix with uniform margins l exactly once,
 * in row-major lexicographic order. Row-by-row backtracking: each undecided
 * entry ranges over 0..min(row budget, column budget) and the trailing row
 * and column are forced, so every leaf is a valid matrix. */
EnumerationStats enumerate_matrices(int k, entry_t l, const EnumerationOptions& opts = {},
                                    const MatrixVisitor& visitor = {});

/* H_k(l): just the count. */
bigint count_matrices(int k, entry_t l, std::int64_t budget = 100'000'000);

struct OracleResult {
    bigint value;
    IntersectionMatrix witness;
};

/* Exhaustive minimum / maximum of the automorphism count over all margin-l
 * matrices; the independent ground truth the closed forms are tested against. */
OracleResult chi_oracle(int k, entry_t l, std::int64_t budget = 100'000'000);
OracleResult mu_oracle(int k, entry_t l, std::int64_t budget = 100'000'000);

struct StanleyFit {
    int degree;
    /* Interpolating polynomial in ascending powers, exact rationals. */
    std::vector<bigrat> coefficients;
    /* Enumerated values H_k(0..lmax) the fit was checked against. */
    std::vector<bigint> values;
    bigint predicted_next;  /* polynomial at lmax+1 */
    bigint enumerated_next; /* fresh enumeration at lmax+1 */
    bool cross_validated;   /* the two agree */
};

/* Fits H_k as a polynomial of degree (k-1)^2 through l = 0..(k-1)^2 using
 * exact finite differences, verifies the remaining points up to lmax
 * (DegreeMismatch on failure), and cross-validates one held-out value. */
StanleyFit stanley_fit(int k, entry_t lmax, std::int64_t budget = 100'000'000);

/* E[prod X_ij!] * l^((k-1)^2) / (l!)^k over uniform margin-l matrices,
 * computed from exact enumeration sums. */
bigrat factexp_ratio(int k, entry_t l, const EnumerationStats& stats);

/* Brute-force ground truth for min_factorial_product: enumerates every
 * multiset of t non-negative integers summing to s and keeps the best
 * admissible one. Intended for s <= 20, t <= 8. */
MinFactorialResult min_factorial_product_oracle(entry_t s, std::int64_t t,
                                                const std::vector<RankConstraint>& constraints);

} // namespace kl
