#include "kl/sync.hpp"

#include "kl/rng.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <queue>
#include <sstream>

namespace kl {

namespace {

/* Plain Dinic max-flow; the augmentation networks here have four layers and a
 * few thousand edges, so no scaling tricks are needed. */
struct Dinic {
    struct Edge {
        int to, cap, rev;
    };
    std::vector<std::vector<Edge>> g;
    std::vector<int> level, iter;

    explicit Dinic(int n) : g(static_cast<std::size_t>(n)), level(g.size()), iter(g.size()) {}

    void add_edge(int u, int v, int cap) {
        g[static_cast<std::size_t>(u)].push_back({v, cap, static_cast<int>(g[static_cast<std::size_t>(v)].size())});
        g[static_cast<std::size_t>(v)].push_back({u, 0, static_cast<int>(g[static_cast<std::size_t>(u)].size()) - 1});
    }

    bool bfs(int s, int t) {
        std::fill(level.begin(), level.end(), -1);
        std::queue<int> q;
        level[static_cast<std::size_t>(s)] = 0;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (const Edge& e : g[static_cast<std::size_t>(v)])
                if (e.cap > 0 && level[static_cast<std::size_t>(e.to)] < 0) {
                    level[static_cast<std::size_t>(e.to)] = level[static_cast<std::size_t>(v)] + 1;
                    q.push(e.to);
                }
        }
        return level[static_cast<std::size_t>(t)] >= 0;
    }

    int dfs(int v, int t, int f) {
        if (v == t) return f;
        for (int& i = iter[static_cast<std::size_t>(v)]; i < static_cast<int>(g[static_cast<std::size_t>(v)].size()); ++i) {
            Edge& e = g[static_cast<std::size_t>(v)][static_cast<std::size_t>(i)];
            if (e.cap <= 0 || level[static_cast<std::size_t>(e.to)] != level[static_cast<std::size_t>(v)] + 1) continue;
            int d = dfs(e.to, t, std::min(f, e.cap));
            if (d > 0) {
                e.cap -= d;
                g[static_cast<std::size_t>(e.to)][static_cast<std::size_t>(e.rev)].cap += d;
                return d;
            }
        }
        return 0;
    }

    int max_flow(int s, int t) {
        int flow = 0;
        while (bfs(s, t)) {
            std::fill(iter.begin(), iter.end(), 0);
            while (int f = dfs(s, t, 1 << 30)) flow += f;
        }
        return flow;
    }
};

std::vector<int> mask_to_part(std::uint32_t s) {
    std::vector<int> part;
    for (int e = 0; s; ++e, s >>= 1)
        if (s & 1u) part.push_back(e + 1);
    return part;
}

SetPartition class_to_partition(int k, int l, const std::vector<std::uint32_t>& masks) {
    std::vector<std::vector<int>> parts;
    parts.reserve(masks.size());
    for (std::uint32_t s : masks) parts.push_back(mask_to_part(s));
    std::sort(parts.begin(), parts.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return SetPartition(k, l, std::move(parts));
}

/* Exact-cover state: assign every l-subset to a group so that groups are
 * partitions. Group order is canonicalized by seeding each new group with the
 * smallest unused subset, which that group may assume without loss. */
struct CoverSearch {
    int n, k, l;
    std::vector<std::uint32_t> subsets;
    std::vector<std::vector<int>> by_element;
    std::vector<char> used;
    std::vector<std::vector<int>> classes;
    std::int64_t nodes = 0;

    bool next_class() {
        int u = -1;
        for (int i = 0; i < static_cast<int>(subsets.size()); ++i)
            if (!used[static_cast<std::size_t>(i)]) {
                u = i;
                break;
            }
        if (u < 0) return true;
        used[static_cast<std::size_t>(u)] = 1;
        std::vector<int> cls{u};
        if (complete_class(subsets[static_cast<std::size_t>(u)], cls)) {
            return true;
        }
        used[static_cast<std::size_t>(u)] = 0;
        return false;
    }

    bool complete_class(std::uint32_t covered, std::vector<int>& cls) {
        if (++nodes > 100000000) fail(errc::budget_exceeded, "cover search budget exhausted");
        if (static_cast<int>(cls.size()) == k) {
            classes.push_back(cls);
            if (next_class()) return true;
            classes.pop_back();
            return false;
        }
        int e = std::countr_one(covered);
        for (int idx : by_element[static_cast<std::size_t>(e)]) {
            if (used[static_cast<std::size_t>(idx)]) continue;
            std::uint32_t s = subsets[static_cast<std::size_t>(idx)];
            if (s & covered) continue;
            used[static_cast<std::size_t>(idx)] = 1;
            cls.push_back(idx);
            if (complete_class(covered | s, cls)) return true;
            cls.pop_back();
            used[static_cast<std::size_t>(idx)] = 0;
        }
        return false;
    }
};

SetPartition random_partition(int k, int l, rng64& rng) {
    std::vector<int> ground(static_cast<std::size_t>(k) * l);
    for (int i = 0; i < k * l; ++i) ground[static_cast<std::size_t>(i)] = i + 1;
    rng.shuffle(ground);
    std::vector<std::vector<int>> parts;
    parts.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        parts.emplace_back(ground.begin() + static_cast<std::ptrdiff_t>(i) * l,
                           ground.begin() + static_cast<std::ptrdiff_t>(i + 1) * l);
    return SetPartition(k, l, std::move(parts));
}

} // namespace

Coloring build_coloring(int k, int l, int x) {
    require(k >= 1 && l >= 1, errc::precondition_violation, "coloring needs k, l >= 1");
    require(x >= 1 && x <= k * l, errc::index_out_of_range, "distinguished point outside ground set");
    Coloring c;
    c.k = k;
    c.l = l;
    c.x = x;
    c.color_count = binomial(k * l - 1, l - 1);
    return c;
}

std::vector<int> Coloring::color_set(const SetPartition& p) const {
    require(p.k() == k && p.l() == l, errc::mismatched_shape, "partition shape does not match coloring");
    const auto& block = p.part(p.part_of(x));
    std::vector<int> a;
    a.reserve(block.size() - 1);
    for (int e : block)
        if (e != x) a.push_back(e);
    return a;
}

bigint Coloring::color_of(const SetPartition& p) const {
    std::vector<int> a = color_set(p);
    int n = k * l - 1;
    int m = l - 1;
    bigint rank = 0;
    int prev = 0;
    for (int i = 0; i < m; ++i) {
        int v = a[static_cast<std::size_t>(i)] > x ? a[static_cast<std::size_t>(i)] - 1
                                                   : a[static_cast<std::size_t>(i)];
        for (int w = prev + 1; w < v; ++w) rank += binomial(n - w, m - 1 - i);
        prev = v;
    }
    return rank;
}

std::vector<SetPartition> baranyai_clique(int k, int l) {
    require(k >= 1 && l >= 1, errc::precondition_violation, "need k, l >= 1");
    int n = k * l;
    require(n <= 12, errc::budget_exceeded, "ground sets capped at 12 points");
    int m_classes = binomial(n - 1, l - 1).convert_to<int>();
    std::vector<std::vector<std::uint32_t>> classes(static_cast<std::size_t>(m_classes),
                                                    std::vector<std::uint32_t>(static_cast<std::size_t>(k), 0));

    for (int m = 0; m < n; ++m) {
        int rem = n - m;

        std::map<std::uint32_t, int> content_id;
        for (const auto& cls : classes)
            for (std::uint32_t s : cls)
                if (std::popcount(s) < l) content_id.emplace(s, 0);
        int next_id = 0;
        std::vector<std::uint32_t> id_mask(content_id.size());
        for (auto& [s, cid] : content_id) {
            cid = next_id;
            id_mask[static_cast<std::size_t>(next_id)] = s;
            ++next_id;
        }

        int source = 0, sink = 1 + m_classes + next_id;
        Dinic net(sink + 1);
        for (int c = 0; c < m_classes; ++c) {
            net.add_edge(source, 1 + c, 1);
            std::vector<std::uint32_t> distinct = classes[static_cast<std::size_t>(c)];
            std::sort(distinct.begin(), distinct.end());
            distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
            for (std::uint32_t s : distinct)
                if (std::popcount(s) < l)
                    net.add_edge(1 + c, 1 + m_classes + content_id[s], 1);
        }
        for (const auto& [s, cid] : content_id) {
            int j = std::popcount(s);
            int demand = binomial(rem - 1, static_cast<std::int64_t>(l) - j - 1).convert_to<int>();
            net.add_edge(1 + m_classes + cid, sink, demand);
        }

        int flow = net.max_flow(source, sink);
        require(flow == m_classes, errc::flow_infeasible, "augmentation flow fell short");

        for (int c = 0; c < m_classes; ++c) {
            std::uint32_t grown = 0;
            bool found = false;
            for (const Dinic::Edge& e : net.g[static_cast<std::size_t>(1 + c)])
                if (e.to >= 1 + m_classes && e.to < sink && e.cap == 0) {
                    grown = id_mask[static_cast<std::size_t>(e.to - 1 - m_classes)];
                    found = true;
                    break;
                }
            require(found, errc::flow_infeasible, "class received no augmentation unit");
            auto& cls = classes[static_cast<std::size_t>(c)];
            auto it = std::find(cls.begin(), cls.end(), grown);
            *it |= 1u << m;
        }
    }

    std::vector<SetPartition> out;
    out.reserve(classes.size());
    for (const auto& cls : classes) out.push_back(class_to_partition(k, l, cls));
    return out;
}

std::vector<SetPartition> baranyai_clique_backtracking(int k, int l) {
    require(k >= 1 && l >= 1, errc::precondition_violation, "need k, l >= 1");
    int n = k * l;
    require(n <= 9, errc::budget_exceeded, "cover search capped at 9 points");

    CoverSearch cs;
    cs.n = n;
    cs.k = k;
    cs.l = l;
    for (std::uint32_t s = 0; s < (1u << n); ++s)
        if (std::popcount(s) == l) cs.subsets.push_back(s);
    cs.by_element.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < static_cast<int>(cs.subsets.size()); ++i)
        for (int e = 0; e < n; ++e)
            if (cs.subsets[static_cast<std::size_t>(i)] & (1u << e))
                cs.by_element[static_cast<std::size_t>(e)].push_back(i);
    cs.used.assign(cs.subsets.size(), 0);

    require(cs.next_class(), errc::search_failed, "no exact cover found");

    std::vector<SetPartition> out;
    out.reserve(cs.classes.size());
    for (const auto& cls : cs.classes) {
        std::vector<std::uint32_t> masks;
        masks.reserve(cls.size());
        for (int idx : cls) masks.push_back(cs.subsets[static_cast<std::size_t>(idx)]);
        out.push_back(class_to_partition(k, l, masks));
    }
    return out;
}

SyncWitness verify_witness(int k, int l) {
    std::vector<SetPartition> clique = baranyai_clique(k, l);
    Coloring col = build_coloring(k, l, 1);
    int n = k * l;

    SyncWitness w;
    w.k = k;
    w.l = l;
    w.x = col.x;
    w.color_count = col.color_count;

    bigint expected = binomial(n - 1, l - 1);
    require(bigint(static_cast<std::int64_t>(clique.size())) == expected,
            errc::verification_failed, "family size is not C(kl-1, l-1)");
    require(col.color_count == expected, errc::verification_failed,
            "color count is not C(kl-1, l-1)");

    /* Every l-subset of the ground set appears in exactly one member. */
    std::map<std::uint32_t, int> occurrences;
    for (std::uint32_t s = 0; s < (1u << n); ++s)
        if (std::popcount(s) == l) occurrences[s] = 0;
    for (const SetPartition& p : clique)
        for (const auto& part : p.parts()) {
            std::uint32_t s = 0;
            for (int e : part) s |= 1u << (e - 1);
            auto it = occurrences.find(s);
            require(it != occurrences.end(), errc::verification_failed, "member block is not an l-subset");
            ++it->second;
        }
    for (const auto& [s, cnt] : occurrences)
        require(cnt == 1, errc::verification_failed, "an l-subset is not covered exactly once");

    for (std::size_t i = 0; i < clique.size(); ++i)
        for (std::size_t j = i + 1; j < clique.size(); ++j)
            require(partitions_adjacent(clique[i], clique[j]), errc::verification_failed,
                    "two members share a block");

    std::vector<bigint> colors;
    colors.reserve(clique.size());
    for (const SetPartition& p : clique) colors.push_back(col.color_of(p));
    {
        std::vector<bigint> sorted = colors;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
            require(sorted[i] != sorted[i + 1], errc::verification_failed,
                    "two members received the same color");
        require(sorted.empty() || (sorted.front() >= 0 && sorted.back() < col.color_count),
                errc::verification_failed, "color id out of range");
    }

    /* Properness of the coloring on the whole graph: same color must mean
     * non-adjacent. Exhaustive on small ground sets, sampled above. */
    std::vector<SetPartition> pool;
    if (n <= 8) {
        pool = enumerate_all_partitions(k, l);
    } else {
        rng64 rng(default_seed);
        for (int i = 0; i < 400; ++i) pool.push_back(random_partition(k, l, rng));
        pool.insert(pool.end(), clique.begin(), clique.end());
    }
    std::map<bigint, std::vector<const SetPartition*>> by_color;
    for (const SetPartition& p : pool) {
        bigint c = col.color_of(p);
        require(c >= 0 && c < col.color_count, errc::verification_failed, "color id out of range");
        by_color[c].push_back(&p);
    }
    for (const auto& [c, group] : by_color)
        for (std::size_t i = 0; i < group.size(); ++i)
            for (std::size_t j = i + 1; j < group.size(); ++j)
                require(!partitions_adjacent(*group[i], *group[j]), errc::verification_failed,
                        "equal-color partitions are adjacent");

    w.clique = std::move(clique);
    w.clique_colors = std::move(colors);
    return w;
}

std::string format_witness(const SyncWitness& w) {
    std::ostringstream out;
    out << w.k << ' ' << w.l << ' ' << w.clique.size() << ' ' << w.x << '\n';
    for (const SetPartition& p : w.clique) out << format_partition_text(p);
    for (std::size_t i = 0; i < w.clique.size(); ++i)
        out << i + 1 << ' ' << w.clique_colors[i] << '\n';
    return out.str();
}

bool partitions_adjacent(const SetPartition& p, const SetPartition& q) {
    require(p.k() == q.k() && p.l() == q.l(), errc::mismatched_shape, "partitions differ in shape");
    for (const auto& a : p.parts())
        for (const auto& b : q.parts())
            if (a == b) return false;
    return true;
}

PartitionGraph build_partition_graph(int k, int l) {
    PartitionGraph g;
    g.k = k;
    g.l = l;
    g.vertices = enumerate_all_partitions(k, l);
    g.neighbors.resize(g.vertices.size());
    for (std::size_t i = 0; i < g.vertices.size(); ++i)
        for (std::size_t j = i + 1; j < g.vertices.size(); ++j)
            if (partitions_adjacent(g.vertices[i], g.vertices[j])) {
                g.neighbors[i].push_back(static_cast<int>(j));
                g.neighbors[j].push_back(static_cast<int>(i));
            }
    return g;
}

} // namespace kl
