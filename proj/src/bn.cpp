#include "kl/bn.hpp"

#include "kl/error.hpp"

namespace kl {

const bigint& BnTable::at(int n) const {
    require(n >= 0 && n <= nmax(), errc::index_out_of_range, "b_n index outside table");
    return values[static_cast<std::size_t>(n)];
}

BnTable bn_recurrence(int nmax) {
    require(nmax >= 0, errc::precondition_violation, "bn_recurrence needs nmax >= 0");
    BnTable table;
    table.values.reserve(static_cast<std::size_t>(nmax) + 1);
    table.values.push_back(1);

    std::vector<bigint> c; /* c[t - 1] = sum over divisors d of t of d * (d!)^(t/d) */
    c.reserve(static_cast<std::size_t>(nmax));

    for (int n = 1; n <= nmax; ++n) {
        bigint ct = 0;
        for (int d = 1; d <= n; ++d)
            if (n % d == 0) ct += bigint(d) * ipow(factorial(d), n / d);
        c.push_back(std::move(ct));

        bigint acc = 0;
        for (int t = 1; t <= n; ++t)
            acc += table.values[static_cast<std::size_t>(n - t)] * c[static_cast<std::size_t>(t - 1)];
        require(acc % n == 0, errc::verification_failed, "recurrence sum not divisible by n");
        table.values.push_back(acc / n);
    }
    return table;
}

namespace {

void partition_sum(int remaining, int max_part, const bigint& product, bigint& total) {
    if (remaining == 0) {
        total += product;
        return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part)
        partition_sum(remaining - part, part, product * factorial(part), total);
}

} // namespace

bigint bn_direct(int n) {
    require(n >= 0, errc::precondition_violation, "bn_direct needs n >= 0");
    require(n <= 60, errc::budget_exceeded, "partition enumeration capped at n = 60");
    bigint total = 0;
    partition_sum(n, n, 1, total);
    return total;
}

std::vector<int> verify_comps_bound(int nmax) {
    require(nmax >= 1, errc::precondition_violation, "verify_comps_bound needs nmax >= 1");
    BnTable table = bn_recurrence(nmax);
    std::vector<int> violations;
    for (int n = 1; n <= nmax; ++n)
        if (table.values[static_cast<std::size_t>(n)] * n > factorial(n) * (n + 4))
            violations.push_back(n);
    return violations;
}

std::vector<std::pair<int, int>> verify_prodmin(int nmin, int nmax) {
    require(nmin >= 17, errc::range_too_small, "the bound is only claimed for n >= 17");
    require(nmax >= nmin, errc::precondition_violation, "empty range");
    std::vector<std::pair<int, int>> violations;
    for (int n = nmin; n <= nmax; ++n)
        for (int t = 1; t <= n - 3; ++t) {
            bigint lhs = factorial(n - t) * factorial(t) * (n - t + 4) * (2 * t);
            bigint rhs = factorial(n - 1) * 3 * (n - t);
            if (lhs > rhs) violations.emplace_back(n, t);
        }
    return violations;
}

} // namespace kl
