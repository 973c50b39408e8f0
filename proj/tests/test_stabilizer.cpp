#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kl/matrix.hpp"
#include "kl/rng.hpp"
#include "kl/stabilizer.hpp"
#include "support.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

using namespace kl;

namespace {

RectMatrix scalar_matrix(int k, entry_t c) {
    RectMatrix m(k, k);
    for (int i = 0; i < k; ++i) m.at(i, i) = c;
    return m;
}

} // namespace

TEST_CASE("frozen stabilizer orders") {
    /* All-ones 3x3: every pair stabilizes. */
    CHECK(stabilizer_order(all_ones(3)) == 36);

    /* 2I: only simultaneous equal permutations, so S_3 diagonally. */
    StabilizerReport d = stabilizer(scalar_matrix(3, 2));
    CHECK(d.order_kn == 6);
    CHECK(d.aut_order == 6 * 8); /* three diagonal entries contribute 2! each */
    CHECK_FALSE(d.partwise_fixed);

    /* Cyclic structure survives as exactly the k rotations. */
    CHECK(stabilizer_order(cyclic_shift({2, 1, 0}).rect()) == 3);

    StabilizerReport s = stabilizer(validate({{2, 1}, {1, 2}}));
    CHECK(s.order_kn == 2);
    CHECK(s.aut_order == 8); /* 2 * (2!)^2 */

    /* Distinct-rows, distinct-columns example is rigid. */
    CHECK(is_partwise_fixed(validate({{3, 1, 0}, {0, 2, 2}, {1, 1, 2}})));
}

TEST_CASE("stabilizer matches exhaustive search on random matrices") {
    rng64 rng(2026);
    for (int trial = 0; trial < 200; ++trial) {
        int r = 1 + static_cast<int>(rng.below(4));
        int c = 1 + static_cast<int>(rng.below(4));
        RectMatrix m(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) m.at(i, j) = static_cast<entry_t>(rng.below(4));

        bigint expect = testsupport::brute_stabilizer_order(m);
        StabilizerReport rep = stabilizer(m);
        CHECK(rep.order_kn == expect);
        CHECK(is_partwise_fixed(m) == (expect == 1));

        bool brute_rows_trivial = true;
        for (const auto& pp : testsupport::brute_stabilizer_elements(m)) {
            for (std::size_t i = 0; i < pp.row_images.size(); ++i)
                if (pp.row_images[i] != static_cast<int>(i)) brute_rows_trivial = false;
        }
        CHECK(row_action_trivial(m) == brute_rows_trivial);
    }
}

TEST_CASE("reported generators stabilize the matrix") {
    StabilizerOptions opts;
    opts.want_generators = true;

    rng64 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        int k = 2 + static_cast<int>(rng.below(3));
        RectMatrix m = testsupport::random_margin_matrix(k, 3, rng);
        StabilizerReport rep = stabilizer(m, opts);
        CHECK(!rep.generators.empty());
        CHECK(static_cast<int>(rep.generators.size()) <= opts.generator_cap);
        bool has_identity = false;
        for (const auto& pp : rep.generators) {
            CHECK(apply_perm_pair(m, pp.row_images, pp.col_images) == m);
            if (pp.is_identity()) has_identity = true;
        }
        CHECK(has_identity);
    }

    /* Row i^rho = j forces rows i and j to share an entry multiset. */
    StabilizerReport rep = stabilizer(cyclic_shift({3, 1, 0, 0}).rect(), opts);
    for (const auto& pp : rep.generators) {
        for (std::size_t i = 0; i < pp.row_images.size(); ++i) {
            std::multiset<entry_t> a, b;
            for (int j = 0; j < 4; ++j) {
                a.insert(cyclic_shift({3, 1, 0, 0}).at(static_cast<int>(i), j));
                b.insert(cyclic_shift({3, 1, 0, 0}).at(pp.row_images[i], j));
            }
            CHECK(a == b);
        }
    }
}

TEST_CASE("stabilizer order is invariant under relabeling and transpose") {
    rng64 rng(77);
    for (int trial = 0; trial < 60; ++trial) {
        int k = 2 + static_cast<int>(rng.below(4));
        RectMatrix m = testsupport::random_margin_matrix(k, 1 + static_cast<entry_t>(rng.below(5)), rng);
        bigint base = stabilizer_order(m);

        auto rp = testsupport::random_permutation(k, rng);
        auto cp = testsupport::random_permutation(k, rng);
        CHECK(stabilizer_order(apply_perm_pair(m, rp, cp)) == base);
        CHECK(stabilizer_order(m.transpose()) == base);
    }
}

TEST_CASE("adding a flat matrix preserves the stabilizer") {
    rng64 rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        int k = 2 + static_cast<int>(rng.below(3));
        RectMatrix m = testsupport::random_margin_matrix(k, 2, rng);
        RectMatrix shifted = m + 3 * all_ones(k);
        CHECK(stabilizer_order(shifted) == stabilizer_order(m));

        /* same group, not merely same order */
        auto a = testsupport::brute_stabilizer_elements(m);
        auto b = testsupport::brute_stabilizer_elements(shifted);
        REQUIRE(a.size() == b.size());
        for (const auto& pp : a)
            CHECK(std::find(b.begin(), b.end(), pp) != b.end());
    }
}

TEST_CASE("cyclic-shift matrices keep at least the rotation subgroup") {
    rng64 rng(611);
    for (int trial = 0; trial < 50; ++trial) {
        int k = 3 + static_cast<int>(rng.below(5));
        std::vector<entry_t> v(static_cast<std::size_t>(k));
        for (auto& e : v) e = static_cast<entry_t>(rng.below(4));
        CHECK(stabilizer_order(cyclic_shift(v).rect()) % k == 0);
        CHECK(stabilizer_order(cyclic_shift(v).rect()) >= k);
    }
}

TEST_CASE("weak truncated staircases have exactly the reversal symmetry") {
    for (int t = 2; t <= 6; ++t) {
        std::vector<entry_t> v(static_cast<std::size_t>(t) + 1, 0);
        v[0] = 1;
        v[1] = 1;
        REQUIRE(staircase_kind(v) == StaircaseKind::weak);
        RectMatrix m = truncated_staircase(t, v);

        auto elems = testsupport::brute_stabilizer_elements(m);
        REQUIRE(elems.size() == 2);
        CHECK(stabilizer_order(m) == 2);

        const PermPair& flip = elems[0].is_identity() ? elems[1] : elems[0];
        /* reversal: row i -> t+1-i, column j -> t+2-j (1-based), i.e. the
         * unique order-2 pair flipping both axes */
        for (int i = 0; i < t; ++i) CHECK(flip.row_images[static_cast<std::size_t>(i)] == t - 1 - i);
        for (int j = 0; j < t + 1; ++j) CHECK(flip.col_images[static_cast<std::size_t>(j)] == t - j);
    }
}

TEST_CASE("strong truncated staircases pin the rows") {
    for (int t = 2; t <= 6; ++t) {
        std::vector<entry_t> v(static_cast<std::size_t>(t) + 1, 0);
        v[0] = 2;
        v[1] = 1;
        REQUIRE(staircase_kind(v) == StaircaseKind::strong);
        CHECK(row_action_trivial(truncated_staircase(t, v)));
    }
}

TEST_CASE("unique-maximum perturbations always have a symmetry of order three or more") {
    rng64 rng(404);
    for (int trial = 0; trial < 100; ++trial) {
        int k = 3 + static_cast<int>(rng.below(3));
        entry_t q = 1 + static_cast<entry_t>(rng.below(3));

        /* qJ + P - P' with the two permutation supports disjoint: the entry
         * q+1 appears exactly once per row and column. */
        auto sigma = testsupport::random_permutation(k, rng);
        std::vector<int> tau;
        for (;;) {
            tau = testsupport::random_permutation(k, rng);
            bool disjoint = true;
            for (int i = 0; i < k; ++i)
                if (tau[static_cast<std::size_t>(i)] == sigma[static_cast<std::size_t>(i)]) disjoint = false;
            if (disjoint) break;
        }
        RectMatrix m(k, k, q);
        for (int i = 0; i < k; ++i) {
            m.at(i, sigma[static_cast<std::size_t>(i)]) += 1;
            m.at(i, tau[static_cast<std::size_t>(i)]) -= 1;
        }
        CHECK(stabilizer_order(m) >= 3);
    }
}

TEST_CASE("involution validation") {
    CHECK_NOTHROW(FppInvolution(2, {{1, 2}, {3, 4}}));
    CHECK_THROWS_AS(FppInvolution(2, {{1, 2}, {2, 3}}), error);
    CHECK_THROWS_AS(FppInvolution(2, {{1, 2}, {3, 3}}), error);
    CHECK_THROWS_AS(FppInvolution(2, {{1, 2}, {3, 5}}), error);

    CHECK_NOTHROW(FppInvolution::from_images({2, 1, 4, 3}));
    CHECK_THROWS_AS(FppInvolution::from_images({1, 2, 4, 3}), error); /* fixed points */
    CHECK_THROWS_AS(FppInvolution::from_images({2, 3, 1, 4}), error); /* 3-cycle */

    FppInvolution x = FppInvolution::from_images({2, 1, 4, 3});
    CHECK(x.k() == 2);
    CHECK(x.degree() == 4);
    CHECK(x.image(1) == 2);
    CHECK(x.image(4) == 3);
    CHECK(x == FppInvolution(2, {{4, 3}, {2, 1}}));

    FppInvolution y(2, {{1, 3}, {2, 4}});
    CHECK_THROWS_AS((void)involution_centralizer_order(x, x), error);
    CHECK_NOTHROW((void)involution_centralizer_order(x, y));
}

TEST_CASE("frozen centralizer profiles") {
    /* (12)(34)(56) against (23)(45)(16): union is a single 6-cycle. */
    FppInvolution x(3, {{1, 2}, {3, 4}, {5, 6}});
    FppInvolution y(3, {{2, 3}, {4, 5}, {1, 6}});
    auto prof = alternating_cycle_profile(x, y);
    REQUIRE(prof.size() == 1);
    CHECK(prof[0] == std::pair<std::int64_t, std::int64_t>{3, 1});
    CHECK(involution_centralizer_order(x, y) == 6);

    /* (12)(34) against (13)(24): a single 4-cycle, centralizer of order 4. */
    FppInvolution a(2, {{1, 2}, {3, 4}});
    FppInvolution b(2, {{1, 3}, {2, 4}});
    auto prof2 = alternating_cycle_profile(a, b);
    REQUIRE(prof2.size() == 1);
    CHECK(prof2[0] == std::pair<std::int64_t, std::int64_t>{2, 1});
    CHECK(involution_centralizer_order(a, b) == 4);

    FppInvolution e(3, {{1, 2}, {3, 4}, {5, 6}});
    FppInvolution f(3, {{1, 2}, {3, 5}, {4, 6}});
    /* shared pair {1,2} gives one half-length-1 cycle; {3,4},{3,5} merge into
     * a 4-cycle */
    auto prof3 = alternating_cycle_profile(e, f);
    std::map<std::int64_t, std::int64_t> pm(prof3.begin(), prof3.end());
    CHECK(pm.at(1) == 1);
    CHECK(pm.at(2) == 1);
    CHECK(involution_centralizer_order(e, f) == 2 * 4);
}

TEST_CASE("centralizer formula matches the S_2k scan") {
    for (int k = 2; k <= 4; ++k) {
        /* enumerate fixed-point-free involutions of 2k points */
        std::vector<FppInvolution> all;
        std::vector<int> pts(static_cast<std::size_t>(2 * k));
        for (int i = 0; i < 2 * k; ++i) pts[static_cast<std::size_t>(i)] = i + 1;

        std::function<void(std::vector<int>, std::vector<std::pair<int, int>>&)> gen =
            [&](std::vector<int> rest, std::vector<std::pair<int, int>>& acc) {
                if (rest.empty()) {
                    all.emplace_back(k, acc);
                    return;
                }
                int first = rest.front();
                for (std::size_t i = 1; i < rest.size(); ++i) {
                    std::vector<int> next;
                    for (std::size_t j = 1; j < rest.size(); ++j)
                        if (j != i) next.push_back(rest[j]);
                    acc.emplace_back(first, rest[i]);
                    gen(next, acc);
                    acc.pop_back();
                }
            };
        std::vector<std::pair<int, int>> acc;
        gen(pts, acc);

        /* 2k-1 double factorial of them */
        std::int64_t expect_count = 1;
        for (int i = 2 * k - 1; i > 0; i -= 2) expect_count *= i;
        REQUIRE(static_cast<std::int64_t>(all.size()) == expect_count);

        rng64 rng(55 + static_cast<std::uint64_t>(k));
        int checked = 0;
        bigint min_order = -1;
        for (const auto& x : all) {
            for (const auto& y : all) {
                if (x == y) continue;
                bigint order = involution_centralizer_order(x, y);
                if (min_order < 0 || order < min_order) min_order = order;
                /* scanning S_8 for every pair is slow; sample the comparisons */
                if (k <= 3 || rng.below(20) == 0) {
                    CHECK(order == testsupport::brute_centralizer_order(x, y));
                    ++checked;
                }
            }
        }
        CHECK(checked > 0);
        /* distinct pairs can never beat order 2k: a single 2k-cycle */
        CHECK(min_order == 2 * k);
    }
}
