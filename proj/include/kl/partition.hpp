#pragma once

#include "kl/matrix.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace kl {

/* Ordered list of k blocks of size l partitioning {1, ..., kl}. Blocks are
 * kept sorted internally; block ORDER is the caller's (construction order and
 * canonical order are both legitimate views, see canonicalized()). */
class SetPartition {
public:
    SetPartition(int k, int l, std::vector<std::vector<int>> parts);

    int k() const { return k_; }
    int l() const { return l_; }
    const std::vector<std::vector<int>>& parts() const { return parts_; }
    const std::vector<int>& part(int i) const { return parts_[static_cast<std::size_t>(i)]; }

    /* Index of the block containing element e (1-based element labels). */
    int part_of(int e) const;

    bool is_canonical() const;
    /* Blocks reordered by minimum element. */
    SetPartition canonicalized() const;

    /* image[e] is the new label of e; image has size kl+1, slot 0 unused. */
    SetPartition relabeled(const std::vector<int>& image) const;

    bool operator==(const SetPartition& o) const = default;
    bool operator<(const SetPartition& o) const { return parts_ < o.parts_; }

private:
    int k_, l_;
    std::vector<std::vector<int>> parts_;
};

/* Blocks {1..l}, {l+1..2l}, ... in canonical order. */
SetPartition trivial_partition(int k, int l);

/* M(P,Q) with entries |P_i intersect Q_j|. */
IntersectionMatrix intersection_matrix(const SetPartition& p, const SetPartition& q);

/* Greedy witness that every intersection matrix is realized against a fixed P:
 * block j of the result takes the next n_ij still-unused elements of each P_i,
 * in ascending order. Returned in construction order; callers wanting the
 * canonical view apply canonicalized(). */
SetPartition canonical_partition(const IntersectionMatrix& n, const SetPartition& p);

/* All (k,l)-partitions of {1..kl}, canonical order, lexicographic sequence.
 * Guarded: refuses kl > 10 (counts explode combinatorially). */
std::vector<SetPartition> enumerate_all_partitions(int k, int l);

/* Text format: k lines of l space-separated elements. Reading normalizes to
 * canonical block order. */
SetPartition parse_partition_text(std::istream& in, int k, int l);
SetPartition parse_partition_text(const std::string& text, int k, int l);
std::string format_partition_text(const SetPartition& p);

} // namespace kl
