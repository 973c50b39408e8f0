#pragma once

#include "kl/bigint.hpp"

#include <utility>
#include <vector>

namespace kl {

/* b_n = sum over integer partitions lambda of n of prod_j (lambda_j)!.
 * The one-part partition contributes n!, so b_n >= n!. */
struct BnTable {
    std::vector<bigint> values; /* b_0 .. b_nmax */

    int nmax() const { return static_cast<int>(values.size()) - 1; }
    const bigint& at(int n) const;
};

/* Builds b_0..b_nmax through the divisor-sum recurrence
 * n * b_n = sum_{t=1}^{n} b_{n-t} * c_t with c_t = sum_{d | t} d * (d!)^{t/d}.
 * The division by n must come out exact; a nonzero remainder means the
 * implementation is wrong and aborts loudly. */
BnTable bn_recurrence(int nmax);

/* Direct evaluation from the definition, enumerating partitions in
 * descending-part order. Kept well below the recurrence's reach on purpose:
 * this is the oracle the recurrence is checked against. */
bigint bn_direct(int n);

/* Checks n * b_n <= n! * (n + 4) exactly for 1 <= n <= nmax; returns the n
 * that fail (expected: none). */
std::vector<int> verify_comps_bound(int nmax);

/* Checks (n-t)! * t! * (n-t+4) * 2t <= (n-1)! * 3 * (n-t) exactly for every
 * n in [nmin, nmax] and 1 <= t <= n-3; returns failing (n, t) pairs
 * (expected: none). The inequality is only claimed from n = 17 up. */
std::vector<std::pair<int, int>> verify_prodmin(int nmin, int nmax);

} // namespace kl
