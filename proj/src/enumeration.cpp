#include "kl/enumeration.hpp"

#include "kl/stabilizer.hpp"

#include <algorithm>

namespace kl {

namespace {

struct Enumerator {
    int k;
    entry_t l;
    const EnumerationOptions& opts;
    const MatrixVisitor& visitor;
    EnumerationStats stats;
    RectMatrix grid;
    std::vector<entry_t> col_rem;
    std::int64_t visited = 0;

    Enumerator(int kk, entry_t ll, const EnumerationOptions& o, const MatrixVisitor& v)
        : k(kk), l(ll), opts(o), visitor(v), grid(kk, kk, 0),
          col_rem(static_cast<std::size_t>(kk), ll) {}

    void leaf() {
        if (++visited > opts.budget)
            fail(errc::budget_exceeded, "enumeration exceeded the visit budget");
        ++stats.count;
        if (!opts.with_stats && !visitor) return;
        IntersectionMatrix n(grid);
        if (visitor) visitor(n);
        if (!opts.with_stats) return;
        bigint order = stabilizer_order(n.rect());
        bigint fact_product = 1;
        for (entry_t e : n.rect().data()) fact_product *= factorial(e);
        bigint aut = order * fact_product;
        stats.sum_factorial_products += fact_product;
        if (order == 1) ++stats.trivial_kn_count;
        if (!stats.min_witness || aut < stats.min_aut) {
            stats.min_aut = aut;
            stats.min_witness = n;
        }
        if (!stats.max_witness || aut > stats.max_aut) {
            stats.max_aut = aut;
            stats.max_witness = n;
        }
    }

    void last_row() {
        for (int j = 0; j < k; ++j) grid.at(k - 1, j) = col_rem[static_cast<std::size_t>(j)];
        leaf();
    }

    void row(int i, int j, entry_t row_rem) {
        if (i == k - 1) {
            last_row();
            return;
        }
        if (j == k - 1) {
            /* trailing entry forced by the row margin */
            if (row_rem > col_rem[static_cast<std::size_t>(j)]) return;
            grid.at(i, j) = row_rem;
            col_rem[static_cast<std::size_t>(j)] -= row_rem;
            row(i + 1, 0, l);
            col_rem[static_cast<std::size_t>(j)] += row_rem;
            return;
        }
        entry_t cap = std::min(row_rem, col_rem[static_cast<std::size_t>(j)]);
        for (entry_t e = 0; e <= cap; ++e) {
            grid.at(i, j) = e;
            col_rem[static_cast<std::size_t>(j)] -= e;
            row(i, j + 1, row_rem - e);
            col_rem[static_cast<std::size_t>(j)] += e;
        }
    }
};

} // namespace

EnumerationStats enumerate_matrices(int k, entry_t l, const EnumerationOptions& opts,
                                    const MatrixVisitor& visitor) {
    require(k >= 1 && l >= 0, errc::precondition_violation, "need k >= 1 and l >= 0");
    Enumerator e(k, l, opts, visitor);
    if (k == 1) {
        e.grid.at(0, 0) = l;
        e.col_rem[0] = 0;
        e.leaf();
    } else {
        e.row(0, 0, l);
    }
    return std::move(e.stats);
}

bigint count_matrices(int k, entry_t l, std::int64_t budget) {
    EnumerationOptions opts;
    opts.budget = budget;
    return enumerate_matrices(k, l, opts).count;
}

OracleResult chi_oracle(int k, entry_t l, std::int64_t budget) {
    EnumerationOptions opts;
    opts.with_stats = true;
    opts.budget = budget;
    EnumerationStats stats = enumerate_matrices(k, l, opts);
    return OracleResult{stats.min_aut, *stats.min_witness};
}

OracleResult mu_oracle(int k, entry_t l, std::int64_t budget) {
    EnumerationOptions opts;
    opts.with_stats = true;
    opts.budget = budget;
    EnumerationStats stats = enumerate_matrices(k, l, opts);
    return OracleResult{stats.max_aut, *stats.max_witness};
}

namespace {

/* Evaluate the binomial-basis interpolant sum_j diff[j] * C(x, j) exactly. */
bigint binomial_form_eval(const std::vector<bigint>& diffs, entry_t x) {
    bigint acc = 0;
    bigint choose = 1; /* C(x, 0) */
    for (std::size_t j = 0; j < diffs.size(); ++j) {
        acc += diffs[j] * choose;
        choose *= (x - static_cast<entry_t>(j));
        choose /= static_cast<entry_t>(j + 1);
    }
    return acc;
}

} // namespace

StanleyFit stanley_fit(int k, entry_t lmax, std::int64_t budget) {
    require(k >= 2, errc::precondition_violation, "need k >= 2");
    int degree = (k - 1) * (k - 1);
    require(lmax >= degree, errc::range_too_small,
            "need data l = 0..(k-1)^2 at minimum to pin the degree");

    StanleyFit fit;
    fit.degree = degree;
    for (entry_t l = 0; l <= lmax; ++l) fit.values.push_back(count_matrices(k, l, budget));

    /* forward differences at 0 */
    std::vector<bigint> diffs(fit.values.begin(), fit.values.begin() + degree + 1);
    for (int level = 1; level <= degree; ++level)
        for (int i = degree; i >= level; --i) diffs[static_cast<std::size_t>(i)] -= diffs[static_cast<std::size_t>(i) - 1];

    for (entry_t l = static_cast<entry_t>(degree) + 1; l <= lmax; ++l)
        require(binomial_form_eval(diffs, l) == fit.values[static_cast<std::size_t>(l)],
                errc::degree_mismatch, "enumerated value escapes the fitted degree");

    /* expand sum_j diffs[j]/j! * x(x-1)...(x-j+1) into monomials */
    fit.coefficients.assign(static_cast<std::size_t>(degree) + 1, bigrat(0));
    std::vector<bigrat> falling{bigrat(1)}; /* coefficients of the falling factorial */
    for (int j = 0; j <= degree; ++j) {
        bigrat scale = bigrat(diffs[static_cast<std::size_t>(j)]) / bigrat(factorial(j));
        for (std::size_t d = 0; d < falling.size(); ++d) fit.coefficients[d] += scale * falling[d];
        /* multiply the falling factorial by (x - j) */
        falling.push_back(0);
        for (std::size_t d = falling.size() - 1; d > 0; --d)
            falling[d] = falling[d - 1] - bigrat(j) * falling[d];
        falling[0] = -bigrat(j) * falling[0];
    }

    fit.predicted_next = binomial_form_eval(diffs, lmax + 1);
    fit.enumerated_next = count_matrices(k, lmax + 1, budget);
    fit.cross_validated = (fit.predicted_next == fit.enumerated_next);
    return fit;
}

bigrat factexp_ratio(int k, entry_t l, const EnumerationStats& stats) {
    require(stats.count > 0, errc::precondition_violation, "empty enumeration");
    bigrat mean(stats.sum_factorial_products, stats.count);
    return mean * bigrat(ipow(l, (k - 1) * (k - 1)), ipow(factorial(l), k));
}

MinFactorialResult min_factorial_product_oracle(entry_t s, std::int64_t t,
                                                const std::vector<RankConstraint>& constraints) {
    /* Same admissibility rules as the closed form; this route just refuses
     * nothing else and tries every multiset. */
    require(s <= 20 && t <= 8, errc::budget_exceeded, "oracle intended for s <= 20, t <= 8");
    min_factorial_product(s, t, constraints); /* reuse the validation */
    entry_t ceil_mean = (s + t - 1) / t;
    bool high = !constraints.empty() && constraints.front().rank > ceil_mean;

    std::vector<entry_t> current;
    MinFactorialResult best;
    bool have_best = false;
    auto admissible = [&]() {
        std::int64_t needed = 0;
        for (const auto& c : constraints) {
            needed += c.multiplicity;
            std::int64_t have = 0;
            for (entry_t a : current)
                if (high ? a >= c.rank : a <= c.rank) ++have;
            if (have < needed) return false;
        }
        return true;
    };
    auto rec = [&](auto&& self, entry_t remaining, std::int64_t slots, entry_t max_part) -> void {
        if (slots == 0) {
            if (remaining != 0 || !admissible()) return;
            bigint value = 1;
            for (entry_t a : current) value *= factorial(a);
            if (!have_best || value < best.value) {
                best.value = value;
                best.witness = current;
                have_best = true;
            }
            return;
        }
        for (entry_t part = std::min(remaining, max_part); part >= 0; --part) {
            /* descending tuples only, so each multiset appears once */
            if (part * slots < remaining) break;
            current.push_back(part);
            self(self, remaining - part, slots - 1, part);
            current.pop_back();
        }
    };
    rec(rec, s, t, s);
    require(have_best, errc::invalid_sequence, "no admissible multiset exists");
    return best;
}

} // namespace kl
