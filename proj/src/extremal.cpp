#include "kl/extremal.hpp"

#include "kl/stabilizer.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

namespace kl {

ResidueDecomposition decompose(int k, entry_t l) {
    require(k >= 5, errc::window_undefined,
            "residue window [-2, k-3] has width k and needs k >= 5");
    require(l > 2, errc::precondition_violation, "need l > 2");
    int r = static_cast<int>((l + 2) % k) - 2;
    return ResidueDecomposition{(l - r) / k, r};
}

bigint chi_formula(int k, entry_t l) {
    if (l == 2) {
        require(k >= 3, errc::outside_formula_range, "l = 2 needs k >= 3");
        return 2 * k;
    }
    require(k >= 8 && l > 2, errc::outside_formula_range,
            "closed form needs k >= 8 and l > 2 (or l = 2, k >= 3)");
    auto [q, r] = decompose(k, l);
    std::int64_t kk = static_cast<std::int64_t>(k) * k;
    std::int64_t half_up = (k + 1) / 2;
    if (r == 0)
        return ipow(factorial(q + 1), k) * ipow(factorial(q), kk - 2 * k) *
               ipow(factorial(q - 1), k);
    if (r == 1 || r == -1)
        return ipow(factorial(q + r), k + half_up) * ipow(factorial(q), kk - k - 2 * half_up) *
               ipow(factorial(q - r), half_up);
    if (r == 2 || r == -2) {
        int eps = r / 2;
        return ipow(factorial(q + eps), 2 * k + 1) * ipow(factorial(q), kk - 2 * k - 2) *
               factorial(q - eps);
    }
    return ipow(factorial(q + 1), static_cast<std::int64_t>(r) * k) *
           ipow(factorial(q), kk - static_cast<std::int64_t>(r) * k);
}

bigint mu_formula(int k, entry_t l) {
    require(k >= 2 && l >= 2, errc::precondition_violation, "need k >= 2 and l >= 2");
    return factorial(k) * ipow(factorial(l), k);
}

namespace {

/* Half-and-half block matrix attaining the bound for r = +-1; k odd. Margins
 * q*k + r by construction (the IntersectionMatrix constructor re-checks). */
RectMatrix paired_block_matrix(int k, int r, entry_t q) {
    int h = (k + 1) / 2, f = k - h;
    std::vector<entry_t> u(static_cast<std::size_t>(h), q);
    u.front() = q - r;
    u.back() = q + r;
    std::vector<entry_t> v(static_cast<std::size_t>(f), q);
    v.front() = q + r;
    std::vector<entry_t> w(static_cast<std::size_t>(h), q);
    w.front() = q + r;

    RectMatrix n1 = cyclic_shift(u).rect() + static_cast<entry_t>(r) * elementary(1, 2, h);
    RectMatrix theta_v = cyclic_shift(v).rect();
    RectMatrix theta_w = cyclic_shift(w).rect();

    RectMatrix out(k, k, q); /* bottom-right f x f block stays flat q */
    for (int i = 0; i < h; ++i) {
        for (int j = 0; j < h; ++j) out.at(i, j) = n1.at(i, j);
        /* right block: first row flat q, then the theta(v) rows */
        for (int j = 0; j < f; ++j) out.at(i, h + j) = (i == 0) ? q : theta_v.at(i - 1, j);
    }
    for (int i = 0; i < f; ++i) {
        /* left block: theta(w) with its second row removed */
        int src = (i == 0) ? 0 : i + 1;
        for (int j = 0; j < h; ++j) out.at(h + i, j) = theta_w.at(src, j);
    }
    return out;
}

RectMatrix residue_one_matrix(int k, int r, entry_t q) {
    if (k % 2 == 1) return paired_block_matrix(k, r, q);
    /* Even k: extend the odd construction by one flat row and column with the
     * surplus in the corner. */
    RectMatrix base = paired_block_matrix(k - 1, r, q);
    RectMatrix out(k, k, q);
    for (int i = 0; i + 1 < k; ++i)
        for (int j = 0; j + 1 < k; ++j) out.at(i, j) = base.at(i, j);
    out.at(k - 1, k - 1) = q + r;
    return out;
}

} // namespace

MinimizerResult construct_minimizer(int k, entry_t l, std::uint64_t seed) {
    require(k >= 8, errc::outside_formula_range, "construction needs k >= 8");
    require(l > 2, errc::outside_formula_range, "construction needs l > 2");
    auto [q, r] = decompose(k, l);
    RectMatrix m;
    std::string tag;
    if (r == 0) {
        std::vector<entry_t> v(static_cast<std::size_t>(k), q);
        v[0] = q + 1;
        v[1] = q - 1;
        m = cyclic_shift(v).rect() + elementary(k - 3, k, k) - elementary(k - 3, 1, k) -
            elementary(k, k, k) + elementary(k, 1, k);
        tag = "corner_swapped_staircase";
    } else if (r == 2 || r == -2) {
        entry_t eps = r / 2;
        std::vector<entry_t> v(static_cast<std::size_t>(k), q);
        v[0] = q + eps;
        v[1] = q + eps;
        m = cyclic_shift(v).rect() - eps * elementary(k - 2, k - 2, k) +
            eps * elementary(k - 2, k - 3, k) + eps * elementary(k, k - 2, k) -
            eps * elementary(k, k - 3, k);
        tag = "double_swapped_staircase";
    } else if (r == 1 || r == -1) {
        m = residue_one_matrix(k, r, q);
        tag = "paired_block_staircase";
    } else {
        m = james_witness(k, r, seed).rect() + q * all_ones(k);
        tag = "binary_over_flat";
    }
    MinimizerResult result{IntersectionMatrix(std::move(m)), tag};
    require(is_partwise_fixed(result.matrix), errc::verification_failed,
            "constructed matrix has a nontrivial joint stabilizer");
    require(aut_order(result.matrix) == chi_formula(k, l), errc::verification_failed,
            "constructed matrix misses the closed-form minimum");
    return result;
}

namespace {

struct RankSide {
    bool high = false; /* ranks above the mean (constraints are >=) */
};

RankSide validate_constraints(entry_t s, std::int64_t t, const std::vector<RankConstraint>& x) {
    require(t >= 1 && s >= 0, errc::precondition_violation, "need t >= 1 and s >= 0");
    if (x.empty()) return {};
    entry_t ceil_mean = (s + t - 1) / t;
    entry_t floor_mean = s / t;
    std::int64_t msum = 0;
    entry_t weighted = 0;
    bool high = x.front().rank > ceil_mean;
    for (std::size_t i = 0; i < x.size(); ++i) {
        require(x[i].multiplicity >= 1, errc::invalid_sequence, "multiplicities must be positive");
        require(x[i].rank >= 0, errc::invalid_sequence, "ranks must be non-negative");
        if (high)
            require(x[i].rank > ceil_mean, errc::invalid_sequence,
                    "high-side ranks must exceed ceil(s/t)");
        else
            require(x[i].rank < floor_mean, errc::invalid_sequence,
                    "low-side ranks must be below floor(s/t)");
        if (i > 0) {
            bool ordered = high ? x[i].rank < x[i - 1].rank : x[i].rank > x[i - 1].rank;
            require(ordered, errc::invalid_sequence, "ranks must be strictly monotone");
        }
        msum += x[i].multiplicity;
        weighted += static_cast<entry_t>(x[i].multiplicity) * x[i].rank;
    }
    require(msum < t, errc::invalid_sequence, "multiplicities must total less than t");
    require(weighted < s, errc::invalid_sequence, "weighted ranks must total less than s");
    return {high};
}

} // namespace

MinFactorialResult min_factorial_product(entry_t s, std::int64_t t,
                                         const std::vector<RankConstraint>& constraints) {
    validate_constraints(s, t, constraints);
    std::int64_t msum = 0;
    entry_t weighted = 0;
    for (const auto& c : constraints) {
        msum += c.multiplicity;
        weighted += static_cast<entry_t>(c.multiplicity) * c.rank;
    }
    entry_t num = s - weighted;
    std::int64_t den = t - msum;
    entry_t fl = num / den;
    entry_t ce = (num + den - 1) / den;
    /* When the residual mean is an integer the fill is uniform (b = 0);
     * otherwise b ceil-entries make the sum land exactly. */
    std::int64_t b = (num % den == 0) ? 0 : num - den * fl;

    MinFactorialResult result;
    result.value = 1;
    for (const auto& c : constraints) {
        result.value *= ipow(factorial(c.rank), c.multiplicity);
        for (std::int64_t i = 0; i < c.multiplicity; ++i) result.witness.push_back(c.rank);
    }
    result.value *= ipow(factorial(ce), b) * ipow(factorial(fl), den - b);
    for (std::int64_t i = 0; i < b; ++i) result.witness.push_back(ce);
    for (std::int64_t i = 0; i < den - b; ++i) result.witness.push_back(fl);
    std::sort(result.witness.rbegin(), result.witness.rend());
    return result;
}

namespace {

/* One randomized candidate: r disjoint random permutation matrices, then 2x2
 * swap mixing. Returns false if disjointness keeps failing (restart). */
bool random_binary_candidate(int k, int r, rng64& rng, RectMatrix& a) {
    a = RectMatrix(k, k, 0);
    std::vector<int> perm(static_cast<std::size_t>(k));
    for (int layer = 0; layer < r; ++layer) {
        bool placed = false;
        for (int attempt = 0; attempt < 2000 && !placed; ++attempt) {
            std::iota(perm.begin(), perm.end(), 0);
            rng.shuffle(perm);
            placed = true;
            for (int i = 0; i < k; ++i)
                if (a.at(i, perm[static_cast<std::size_t>(i)]) != 0) {
                    placed = false;
                    break;
                }
            if (placed)
                for (int i = 0; i < k; ++i) a.at(i, perm[static_cast<std::size_t>(i)]) = 1;
        }
        if (!placed) return false;
    }
    int swaps = 0, target = 4 * k;
    for (int attempt = 0; attempt < 64 * k * k && swaps < target; ++attempt) {
        int i1 = static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
        int i2 = static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
        int j1 = static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
        int j2 = static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
        if (i1 == i2 || j1 == j2) continue;
        if (a.at(i1, j1) == 1 && a.at(i2, j2) == 1 && a.at(i1, j2) == 0 && a.at(i2, j1) == 0) {
            a.at(i1, j1) = a.at(i2, j2) = 0;
            a.at(i1, j2) = a.at(i2, j1) = 1;
            ++swaps;
        }
    }
    return true;
}

bool exhaustive_binary_witness(int k, int r, RectMatrix& out) {
    /* Deterministic sweep over 0/1 matrices with margins r, row by row,
     * testing rigidity at the leaves. Only used as a fallback at small k. */
    std::vector<int> col_used(static_cast<std::size_t>(k), 0);
    RectMatrix a(k, k, 0);
    std::int64_t budget = 100'000'000;
    std::vector<int> chosen;
    auto rec = [&](auto&& self, int row) -> bool {
        if (--budget <= 0) return false;
        if (row == k) {
            if (is_partwise_fixed(a)) {
                out = a;
                return true;
            }
            return false;
        }
        chosen.clear();
        auto pick = [&](auto&& pickself, int from, int need) -> bool {
            if (need == 0) {
                for (int j : chosen) a.at(row, j) = 1;
                bool done = self(self, row + 1);
                for (int j : chosen) a.at(row, j) = 0;
                return done;
            }
            for (int j = from; j <= k - need; ++j) {
                if (col_used[static_cast<std::size_t>(j)] == r) continue;
                /* Columns must still be fillable by the remaining rows. */
                ++col_used[static_cast<std::size_t>(j)];
                chosen.push_back(j);
                bool done = pickself(pickself, j + 1, need - 1);
                chosen.pop_back();
                --col_used[static_cast<std::size_t>(j)];
                if (done) return true;
            }
            return false;
        };
        return pick(pick, 0, r);
    };
    return rec(rec, 0);
}

} // namespace

IntersectionMatrix james_witness(int k, int r, std::uint64_t seed) {
    require(k >= 8, errc::precondition_violation, "need k >= 8");
    require(3 <= r && r <= k - 3, errc::precondition_violation, "need 3 <= r <= k-3");

    static std::map<std::pair<int, int>, IntersectionMatrix> cache;
    static std::mutex mtx;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find({k, r});
        if (it != cache.end()) return it->second;
    }

    /* Complementing flips margins r <-> k-r and preserves the stabilizer, so
     * always search the sparse side. */
    int rr = std::min(r, k - r);
    rng64 rng(mix_seed(seed, (static_cast<std::uint64_t>(k) << 20) | static_cast<std::uint64_t>(r)));
    RectMatrix a;
    bool found = false;
    for (int trial = 0; trial < 100'000 && !found; ++trial) {
        if (!random_binary_candidate(k, rr, rng, a)) continue;
        found = is_partwise_fixed(a);
    }
    if (!found && k <= 9) found = exhaustive_binary_witness(k, rr, a);
    require(found, errc::search_failed, "no partwise-fixed binary matrix found within budget");

    if (rr != r) a = all_ones(k) - a;
    IntersectionMatrix result(std::move(a));
    require(is_partwise_fixed(result), errc::verification_failed,
            "witness lost rigidity after complement");
    std::lock_guard<std::mutex> lock(mtx);
    return cache.try_emplace({k, r}, std::move(result)).first->second;
}

} // namespace kl
