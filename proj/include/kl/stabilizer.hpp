#pragma once

#include "kl/bigint.hpp"
#include "kl/matrix.hpp"

#include <utility>
#include <vector>

namespace kl {

/* Row/column permutation pair acting by result(i,j) = n(row_images[i],
 * col_images[j]); images 0-indexed. */
struct PermPair {
    std::vector<int> row_images;
    std::vector<int> col_images;

    bool is_identity() const;
    bool operator==(const PermPair& o) const = default;
};

struct StabilizerOptions {
    bool want_generators = false;
    int generator_cap = 64;
};

struct StabilizerReport {
    bigint order_kn = 0;
    bool partwise_fixed = false;
    /* order_kn times the product of entry factorials: the automorphism count
     * of the multigraph realizing the matrix. Zero if an entry is negative
     * (no combinatorial realization). */
    bigint aut_order = 0;
    /* Sample of group elements, one per backtracking solution, capped; never
     * the whole group. Empty unless want_generators. */
    std::vector<PermPair> generators;
};

/* Exact joint row/column stabilizer of a rectangular matrix. Backtracks over
 * row arrangements grouped by identical-row classes with incremental
 * column-signature refinement, so near-rigid matrices are decided in
 * microseconds and the all-rows-equal worst case (full S_a x S_b) costs one
 * leaf. */
StabilizerReport stabilizer(const RectMatrix& n, const StabilizerOptions& opts = {});
inline StabilizerReport stabilizer(const IntersectionMatrix& n, const StabilizerOptions& opts = {}) {
    return stabilizer(n.rect(), opts);
}

bigint stabilizer_order(const RectMatrix& n);

/* True when the only stabilizing pair is (id, id); decided with early exit. */
bool is_partwise_fixed(const RectMatrix& n);
inline bool is_partwise_fixed(const IntersectionMatrix& n) { return is_partwise_fixed(n.rect()); }

/* True when every stabilizing pair has identity row part. */
bool row_action_trivial(const RectMatrix& n);

bigint aut_order(const IntersectionMatrix& n);

/* Fixed-point-free involution of {1..2k}, stored as a perfect matching. */
class FppInvolution {
public:
    /* From k disjoint transpositions. */
    FppInvolution(int k, const std::vector<std::pair<int, int>>& pairs);
    /* From one-line images over 1..2k; rejects non-involutions and fixed
     * points. */
    static FppInvolution from_images(const std::vector<int>& images);

    int k() const { return k_; }
    int degree() const { return 2 * k_; }
    int image(int e) const;
    std::vector<std::pair<int, int>> pairs() const;

    bool operator==(const FppInvolution& o) const = default;

private:
    FppInvolution() : k_(0) {}
    int k_;
    std::vector<int> partner_; /* 1-based; slot 0 unused */
};

/* Multiset of alternating-cycle half-lengths of the union of the two
 * matchings: component of size 2m contributes one m. */
std::vector<std::pair<std::int64_t, std::int64_t>> alternating_cycle_profile(
    const FppInvolution& x, const FppInvolution& y);

/* |C_{S_2k}(<x, y>)| = prod over distinct half-lengths m with multiplicity c
 * of (2m)^c * c!. Requires x != y. */
bigint involution_centralizer_order(const FppInvolution& x, const FppInvolution& y);

} // namespace kl
