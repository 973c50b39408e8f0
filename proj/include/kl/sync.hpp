#pragma once

#include "kl/bigint.hpp"
#include "kl/partition.hpp"

#include <string>
#include <vector>

namespace kl {

/* Colors a (k,l)-partition by the block containing the distinguished point x:
 * the color is that block minus x, an (l-1)-subset of the remaining kl-1
 * points, identified by its lexicographic rank. Two partitions of equal color
 * share the block x + color, so the coloring is proper for the
 * no-common-block adjacency. */
struct Coloring {
    int k = 0;
    int l = 0;
    int x = 1;
    bigint color_count = 0; /* C(kl-1, l-1) */

    /* The raw color: sorted (l-1)-set, block of x minus x. */
    std::vector<int> color_set(const SetPartition& p) const;
    /* Lexicographic rank of color_set among (l-1)-subsets of {1..kl}\{x},
     * 0-based. */
    bigint color_of(const SetPartition& p) const;
};

Coloring build_coloring(int k, int l, int x = 1);

/* Splits ALL l-subsets of {1..kl} into C(kl-1, l-1) groups, each a partition
 * of the ground set; the groups are pairwise block-disjoint, so they form a
 * clique in the no-common-block graph. Built by element-at-a-time induction:
 * each new element is routed to one block per group by an integer flow whose
 * demands keep every partial block on pace to reach size l. Ground sets up to
 * kl = 12. */
std::vector<SetPartition> baranyai_clique(int k, int l);

/* Same contract, found by exact-cover backtracking over l-subsets. Slower and
 * capped at kl = 9; exists to cross-validate the flow construction. */
std::vector<SetPartition> baranyai_clique_backtracking(int k, int l);

struct SyncWitness {
    int k = 0;
    int l = 0;
    int x = 1;
    std::vector<SetPartition> clique;
    std::vector<bigint> clique_colors; /* color_of each clique member */
    bigint color_count = 0;
};

/* Builds clique + coloring and certifies the whole chain: clique size equals
 * color count equals C(kl-1, l-1); every l-subset occurs in exactly one clique
 * member; members are pairwise adjacent with pairwise distinct colors; equal
 * color implies a shared block (exhaustively for kl <= 8, sampled above).
 * Throws verification_failed if any check fails. */
SyncWitness verify_witness(int k, int l);

/* Witness file: header "k l M x", then M partitions in text format (k lines
 * each), then M lines "member-index color" (1-based member indices). */
std::string format_witness(const SyncWitness& w);

/* True when p and q have no block in common. */
bool partitions_adjacent(const SetPartition& p, const SetPartition& q);

/* Fully materialized no-common-block graph; kl <= 10 (vertex counts explode
 * past that). Vertices follow enumerate_all_partitions order. */
struct PartitionGraph {
    int k = 0;
    int l = 0;
    std::vector<SetPartition> vertices;
    std::vector<std::vector<int>> neighbors;
};

PartitionGraph build_partition_graph(int k, int l);

} // namespace kl
