#include "kl/stabilizer.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace kl {

bool PermPair::is_identity() const {
    for (std::size_t i = 0; i < row_images.size(); ++i)
        if (row_images[i] != static_cast<int>(i)) return false;
    for (std::size_t j = 0; j < col_images.size(); ++j)
        if (col_images[j] != static_cast<int>(j)) return false;
    return true;
}

namespace {

/* Shared scaffolding for the stabilizer searches.
 *
 * A pair (rho, gamma) stabilizes N iff n(rho(i), gamma(j)) = n(i, j) for all
 * i, j. Fix rho: gamma exists iff the multiset of columns of the row-permuted
 * matrix matches the multiset of columns of N, and then the number of valid
 * gamma is the product of factorials of the column-equality class sizes
 * (Hall condition degenerates to per-class bijections). Two rho giving the
 * same row arrangement (possible only via identical rows) give the same
 * gamma count, so the search runs over arrangements of identical-row CLASSES
 * and multiplies by |R| = prod(class size)! at the end.
 *
 * Column bookkeeping: after assigning image rows for prefix rows 0..d-1,
 * every column j has a domain signature (n(0,j), ..., n(d-1,j)) and an image
 * signature (n(rep_0,j), ..., n(rep_d-1,j)). Both are tracked as block ids in
 * one shared id space, refined one row at a time; a prefix is viable only if
 * the two id histograms agree. */
struct Search {
    const RectMatrix& n;
    int a, b;

    std::vector<int> row_class;            /* row -> identical-row class */
    std::vector<std::vector<int>> members; /* class -> rows */
    std::vector<int> rep;                  /* class -> representative row */
    std::vector<std::vector<int>> candidates; /* row -> classes with equal multiset */
    bigint identical_row_factor = 1;          /* |R| */

    explicit Search(const RectMatrix& m) : n(m), a(m.rows()), b(m.cols()) {
        std::vector<int> order(static_cast<std::size_t>(a));
        std::iota(order.begin(), order.end(), 0);
        auto row_key = [&](int i) {
            std::vector<entry_t> key(static_cast<std::size_t>(b));
            for (int j = 0; j < b; ++j) key[static_cast<std::size_t>(j)] = n.at(i, j);
            return key;
        };
        std::map<std::vector<entry_t>, int> by_content;
        row_class.assign(static_cast<std::size_t>(a), -1);
        for (int i : order) {
            auto key = row_key(i);
            auto [it, fresh] = by_content.try_emplace(key, static_cast<int>(members.size()));
            if (fresh) {
                members.emplace_back();
                rep.push_back(i);
            }
            row_class[static_cast<std::size_t>(i)] = it->second;
            members[static_cast<std::size_t>(it->second)].push_back(i);
        }
        for (const auto& m2 : members) identical_row_factor *= factorial(static_cast<std::int64_t>(m2.size()));

        /* Permuting row i onto row r needs equal row multisets; group classes
         * by sorted content once. */
        std::map<std::vector<entry_t>, std::vector<int>> by_multiset;
        for (std::size_t c = 0; c < members.size(); ++c) {
            auto key = row_key(rep[c]);
            std::sort(key.begin(), key.end());
            by_multiset[key].push_back(static_cast<int>(c));
        }
        candidates.resize(static_cast<std::size_t>(a));
        for (int i = 0; i < a; ++i) {
            auto key = row_key(i);
            std::sort(key.begin(), key.end());
            candidates[static_cast<std::size_t>(i)] = by_multiset[key];
        }
    }

    /* Refine (dom_blocks, img_blocks) by domain row i mapped onto image row
     * r. Returns false if the refined histograms disagree. */
    bool refine(const std::vector<int>& dom, const std::vector<int>& img, int i, int r,
                std::vector<int>& dom_out, std::vector<int>& img_out) const {
        std::map<std::pair<int, entry_t>, int> ids;
        std::vector<int> count;
        auto classify = [&](int prev, entry_t v) {
            auto [it, fresh] = ids.try_emplace({prev, v}, static_cast<int>(count.size()));
            if (fresh) count.push_back(0);
            return it->second;
        };
        dom_out.resize(static_cast<std::size_t>(b));
        img_out.resize(static_cast<std::size_t>(b));
        for (int j = 0; j < b; ++j) {
            int id = classify(dom[static_cast<std::size_t>(j)], n.at(i, j));
            dom_out[static_cast<std::size_t>(j)] = id;
            ++count[static_cast<std::size_t>(id)];
        }
        for (int j = 0; j < b; ++j) {
            int id = classify(img[static_cast<std::size_t>(j)], n.at(r, j));
            img_out[static_cast<std::size_t>(j)] = id;
            --count[static_cast<std::size_t>(id)];
        }
        for (int c : count)
            if (c != 0) return false;
        return true;
    }

    std::int64_t leaf_gamma_count(const std::vector<int>& dom) const {
        std::map<int, std::int64_t> hist;
        for (int id : dom) ++hist[id];
        std::int64_t product = 1;
        for (auto& [id, c] : hist) {
            (void)id;
            for (std::int64_t f = 2; f <= c; ++f) product *= f;
        }
        return product;
    }
};

/* Sum of gamma counts over row-class arrangements. Stops early once the
 * running total reaches `cap` (0 = no cap); the return value is then only a
 * lower bound, which is all the early-exit callers need. counting_leaves
 * switches the accumulator from gamma counts to leaf counts. */
bigint arrangement_sum(const Search& s, bigint cap, bool counting_leaves) {
    std::vector<int> remaining(s.members.size());
    for (std::size_t c = 0; c < s.members.size(); ++c)
        remaining[c] = static_cast<int>(s.members[c].size());
    bigint total = 0;
    std::vector<std::vector<int>> dom_stack(static_cast<std::size_t>(s.a) + 1),
        img_stack(static_cast<std::size_t>(s.a) + 1);
    dom_stack[0].assign(static_cast<std::size_t>(s.b), 0);
    img_stack[0].assign(static_cast<std::size_t>(s.b), 0);

    auto dfs = [&](auto&& self, int depth) -> bool {
        if (depth == s.a) {
            total += counting_leaves ? 1 : s.leaf_gamma_count(dom_stack[static_cast<std::size_t>(depth)]);
            return cap != 0 && total >= cap;
        }
        for (int c : s.candidates[static_cast<std::size_t>(depth)]) {
            if (remaining[static_cast<std::size_t>(c)] == 0) continue;
            if (!s.refine(dom_stack[static_cast<std::size_t>(depth)],
                          img_stack[static_cast<std::size_t>(depth)], depth, s.rep[static_cast<std::size_t>(c)],
                          dom_stack[static_cast<std::size_t>(depth) + 1],
                          img_stack[static_cast<std::size_t>(depth) + 1]))
                continue;
            --remaining[static_cast<std::size_t>(c)];
            bool stop = self(self, depth + 1);
            ++remaining[static_cast<std::size_t>(c)];
            if (stop) return true;
        }
        return false;
    };
    dfs(dfs, 0);
    return total;
}

/* Exact-element enumeration, emitting pairs until the cap. Rows are mapped to
 * concrete rows (not classes) and every valid gamma per arrangement is
 * expanded block by block. */
void enumerate_elements(const Search& s, int cap, std::vector<PermPair>& out) {
    std::vector<int> rho(static_cast<std::size_t>(s.a), -1);
    std::vector<char> used(static_cast<std::size_t>(s.a), 0);
    std::vector<std::vector<int>> dom_stack(static_cast<std::size_t>(s.a) + 1),
        img_stack(static_cast<std::size_t>(s.a) + 1);
    dom_stack[0].assign(static_cast<std::size_t>(s.b), 0);
    img_stack[0].assign(static_cast<std::size_t>(s.b), 0);

    auto emit_gammas = [&](const std::vector<int>& dom, const std::vector<int>& img) -> bool {
        std::map<int, std::pair<std::vector<int>, std::vector<int>>> blocks;
        for (int j = 0; j < s.b; ++j) {
            blocks[dom[static_cast<std::size_t>(j)]].first.push_back(j);
            blocks[img[static_cast<std::size_t>(j)]].second.push_back(j);
        }
        std::vector<int> gamma(static_cast<std::size_t>(s.b));
        std::vector<std::map<int, std::pair<std::vector<int>, std::vector<int>>>::iterator> order;
        for (auto it = blocks.begin(); it != blocks.end(); ++it) order.push_back(it);
        auto expand = [&](auto&& self, std::size_t bi) -> bool {
            if (bi == order.size()) {
                out.push_back(PermPair{rho, gamma});
                return static_cast<int>(out.size()) >= cap;
            }
            auto& [doms, imgs] = order[bi]->second;
            std::vector<int> perm(imgs);
            std::sort(perm.begin(), perm.end());
            do {
                for (std::size_t t = 0; t < doms.size(); ++t)
                    gamma[static_cast<std::size_t>(doms[t])] = perm[t];
                if (self(self, bi + 1)) return true;
            } while (std::next_permutation(perm.begin(), perm.end()));
            return false;
        };
        return expand(expand, 0);
    };

    auto dfs = [&](auto&& self, int depth) -> bool {
        if (depth == s.a)
            return emit_gammas(dom_stack[static_cast<std::size_t>(depth)],
                               img_stack[static_cast<std::size_t>(depth)]);
        for (int c : s.candidates[static_cast<std::size_t>(depth)]) {
            for (int r : s.members[static_cast<std::size_t>(c)]) {
                if (used[static_cast<std::size_t>(r)]) continue;
                if (!s.refine(dom_stack[static_cast<std::size_t>(depth)],
                              img_stack[static_cast<std::size_t>(depth)], depth, r,
                              dom_stack[static_cast<std::size_t>(depth) + 1],
                              img_stack[static_cast<std::size_t>(depth) + 1]))
                    continue;
                used[static_cast<std::size_t>(r)] = 1;
                rho[static_cast<std::size_t>(depth)] = r;
                bool stop = self(self, depth + 1);
                used[static_cast<std::size_t>(r)] = 0;
                if (stop) return true;
            }
        }
        return false;
    };
    dfs(dfs, 0);
}

} // namespace

StabilizerReport stabilizer(const RectMatrix& n, const StabilizerOptions& opts) {
    require(n.rows() >= 1 && n.cols() >= 1, errc::bad_shape, "empty matrix");
    Search s(n);
    StabilizerReport report;
    report.order_kn = s.identical_row_factor * arrangement_sum(s, 0, false);
    report.partwise_fixed = (report.order_kn == 1);
    bool nonneg = true;
    for (entry_t e : n.data())
        if (e < 0) nonneg = false;
    if (nonneg) {
        report.aut_order = report.order_kn;
        for (entry_t e : n.data()) report.aut_order *= factorial(e);
    }
    if (opts.want_generators && opts.generator_cap > 0)
        enumerate_elements(s, opts.generator_cap, report.generators);
    return report;
}

bigint stabilizer_order(const RectMatrix& n) {
    Search s(n);
    return s.identical_row_factor * arrangement_sum(s, 0, false);
}

bool is_partwise_fixed(const RectMatrix& n) {
    Search s(n);
    if (s.identical_row_factor > 1) return false;
    return arrangement_sum(s, 2, false) == 1;
}

bool row_action_trivial(const RectMatrix& n) {
    Search s(n);
    if (s.identical_row_factor > 1) return false;
    /* Leaves are feasible complete row arrangements; each yields at least one
     * gamma, so a second leaf is exactly a stabilizing pair with rho != id. */
    return arrangement_sum(s, 2, true) == 1;
}

bigint aut_order(const IntersectionMatrix& n) {
    bigint result = stabilizer_order(n.rect());
    for (entry_t e : n.rect().data()) result *= factorial(e);
    return result;
}

FppInvolution::FppInvolution(int k, const std::vector<std::pair<int, int>>& pairs) : k_(k) {
    require(k >= 1, errc::bad_shape, "need k >= 1");
    require(static_cast<int>(pairs.size()) == k, errc::bad_shape, "need exactly k transpositions");
    partner_.assign(static_cast<std::size_t>(2 * k) + 1, 0);
    for (auto [x, y] : pairs) {
        require(1 <= x && x <= 2 * k && 1 <= y && y <= 2 * k, errc::index_out_of_range,
                "point outside 1..2k");
        require(x != y, errc::not_fixed_point_free, "transposition fixes a point");
        require(partner_[static_cast<std::size_t>(x)] == 0 && partner_[static_cast<std::size_t>(y)] == 0,
                errc::not_involution, "point covered twice");
        partner_[static_cast<std::size_t>(x)] = y;
        partner_[static_cast<std::size_t>(y)] = x;
    }
}

FppInvolution FppInvolution::from_images(const std::vector<int>& images) {
    int deg = static_cast<int>(images.size());
    require(deg >= 2 && deg % 2 == 0, errc::bad_shape, "degree must be even");
    FppInvolution inv;
    inv.k_ = deg / 2;
    inv.partner_.assign(static_cast<std::size_t>(deg) + 1, 0);
    for (int e = 1; e <= deg; ++e) {
        int im = images[static_cast<std::size_t>(e) - 1];
        require(1 <= im && im <= deg, errc::index_out_of_range, "image outside 1..2k");
        require(im != e, errc::not_fixed_point_free, "fixed point");
        inv.partner_[static_cast<std::size_t>(e)] = im;
    }
    for (int e = 1; e <= deg; ++e)
        require(inv.partner_[static_cast<std::size_t>(inv.partner_[static_cast<std::size_t>(e)])] == e,
                errc::not_involution, "images do not square to the identity");
    return inv;
}

int FppInvolution::image(int e) const {
    require(1 <= e && e <= 2 * k_, errc::index_out_of_range, "point outside 1..2k");
    return partner_[static_cast<std::size_t>(e)];
}

std::vector<std::pair<int, int>> FppInvolution::pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int e = 1; e <= 2 * k_; ++e)
        if (e < partner_[static_cast<std::size_t>(e)]) out.emplace_back(e, partner_[static_cast<std::size_t>(e)]);
    return out;
}

std::vector<std::pair<std::int64_t, std::int64_t>> alternating_cycle_profile(
    const FppInvolution& x, const FppInvolution& y) {
    require(x.k() == y.k(), errc::mismatched_shape, "involutions act on different sets");
    int deg = x.degree();
    std::vector<char> seen(static_cast<std::size_t>(deg) + 1, 0);
    std::map<std::int64_t, std::int64_t> profile;
    for (int e = 1; e <= deg; ++e) {
        if (seen[static_cast<std::size_t>(e)]) continue;
        /* Walk the x-edge then the y-edge until the start reappears; the
         * component is an even alternating cycle (a shared pair gives 2). */
        std::int64_t size = 0;
        int v = e;
        do {
            seen[static_cast<std::size_t>(v)] = 1;
            v = x.image(v);
            seen[static_cast<std::size_t>(v)] = 1;
            v = y.image(v);
            size += 2;
        } while (v != e);
        ++profile[size / 2];
    }
    return {profile.begin(), profile.end()};
}

bigint involution_centralizer_order(const FppInvolution& x, const FppInvolution& y) {
    require(!(x == y), errc::equal_inputs, "need two distinct involutions");
    bigint order = 1;
    for (auto [half, count] : alternating_cycle_profile(x, y))
        order *= ipow(2 * half, count) * factorial(count);
    return order;
}

} // namespace kl
