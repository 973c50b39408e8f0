#include "kl/partition.hpp"

#include <algorithm>
#include <sstream>

namespace kl {

SetPartition::SetPartition(int k, int l, std::vector<std::vector<int>> parts)
    : k_(k), l_(l), parts_(std::move(parts)) {
    require(k >= 1 && l >= 1, errc::bad_shape, "need k >= 1 and l >= 1");
    require(static_cast<int>(parts_.size()) == k, errc::bad_shape, "wrong number of blocks");
    std::vector<char> seen(static_cast<std::size_t>(k) * l + 1, 0);
    for (auto& part : parts_) {
        require(static_cast<int>(part.size()) == l, errc::bad_shape, "block size != l");
        std::sort(part.begin(), part.end());
        for (int e : part) {
            require(1 <= e && e <= k * l, errc::index_out_of_range, "element outside 1..kl");
            require(!seen[static_cast<std::size_t>(e)], errc::bad_shape, "repeated element");
            seen[static_cast<std::size_t>(e)] = 1;
        }
    }
}

int SetPartition::part_of(int e) const {
    require(1 <= e && e <= k_ * l_, errc::index_out_of_range, "element outside 1..kl");
    for (int i = 0; i < k_; ++i)
        if (std::binary_search(parts_[static_cast<std::size_t>(i)].begin(),
                               parts_[static_cast<std::size_t>(i)].end(), e))
            return i;
    fail(errc::index_out_of_range, "element missing from partition");
}

bool SetPartition::is_canonical() const {
    for (int i = 0; i + 1 < k_; ++i)
        if (parts_[static_cast<std::size_t>(i)].front() >
            parts_[static_cast<std::size_t>(i) + 1].front())
            return false;
    return true;
}

SetPartition SetPartition::canonicalized() const {
    auto sorted = parts_;
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return SetPartition(k_, l_, std::move(sorted));
}

SetPartition SetPartition::relabeled(const std::vector<int>& image) const {
    require(static_cast<int>(image.size()) == k_ * l_ + 1, errc::mismatched_shape,
            "relabeling must cover 1..kl");
    auto parts = parts_;
    for (auto& part : parts)
        for (int& e : part) e = image[static_cast<std::size_t>(e)];
    return SetPartition(k_, l_, std::move(parts));
}

SetPartition trivial_partition(int k, int l) {
    std::vector<std::vector<int>> parts(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 1; j <= l; ++j) parts[static_cast<std::size_t>(i)].push_back(i * l + j);
    return SetPartition(k, l, std::move(parts));
}

IntersectionMatrix intersection_matrix(const SetPartition& p, const SetPartition& q) {
    require(p.k() == q.k() && p.l() == q.l(), errc::mismatched_shape,
            "partitions have different shape");
    int k = p.k(), l = p.l();
    std::vector<int> q_of(static_cast<std::size_t>(k) * l + 1);
    for (int j = 0; j < k; ++j)
        for (int e : q.part(j)) q_of[static_cast<std::size_t>(e)] = j;
    RectMatrix m(k, k);
    for (int i = 0; i < k; ++i)
        for (int e : p.part(i)) ++m.at(i, q_of[static_cast<std::size_t>(e)]);
    return IntersectionMatrix(std::move(m));
}

SetPartition canonical_partition(const IntersectionMatrix& n, const SetPartition& p) {
    require(n.k() == p.k() && n.l() == p.l(), errc::mismatched_shape,
            "matrix shape does not match partition");
    int k = p.k();
    std::vector<std::size_t> next(static_cast<std::size_t>(k), 0);
    std::vector<std::vector<int>> parts(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        for (int i = 0; i < k; ++i) {
            for (entry_t c = 0; c < n.at(i, j); ++c)
                parts[static_cast<std::size_t>(j)].push_back(
                    p.part(i)[next[static_cast<std::size_t>(i)]++]);
        }
    }
    return SetPartition(k, p.l(), std::move(parts));
}

namespace {

void enumerate_rec(int k, int l, std::vector<char>& used, int placed,
                   std::vector<std::vector<int>>& acc, std::vector<SetPartition>& out) {
    int n = k * l;
    if (placed == n) {
        out.emplace_back(k, l, acc);
        return;
    }
    int first = 1;
    while (used[static_cast<std::size_t>(first)]) ++first;
    /* The smallest unused element anchors the next block, which kills the
     * k! block-order symmetry and yields canonical order for free. */
    std::vector<int> block{first};
    used[static_cast<std::size_t>(first)] = 1;
    std::function<void(int)> pick = [&](int from) {
        if (static_cast<int>(block.size()) == l) {
            acc.push_back(block);
            enumerate_rec(k, l, used, placed + l, acc, out);
            acc.pop_back();
            return;
        }
        for (int e = from; e <= n; ++e) {
            if (used[static_cast<std::size_t>(e)]) continue;
            used[static_cast<std::size_t>(e)] = 1;
            block.push_back(e);
            pick(e + 1);
            block.pop_back();
            used[static_cast<std::size_t>(e)] = 0;
        }
    };
    pick(first + 1);
    used[static_cast<std::size_t>(first)] = 0;
}

} // namespace

std::vector<SetPartition> enumerate_all_partitions(int k, int l) {
    require(k >= 1 && l >= 1, errc::bad_shape, "need k >= 1 and l >= 1");
    require(k * l <= 10, errc::budget_exceeded, "partition enumeration limited to kl <= 10");
    std::vector<SetPartition> out;
    std::vector<char> used(static_cast<std::size_t>(k) * l + 1, 0);
    std::vector<std::vector<int>> acc;
    enumerate_rec(k, l, used, 0, acc, out);
    return out;
}

SetPartition parse_partition_text(std::istream& in, int k, int l) {
    std::vector<std::vector<int>> parts(static_cast<std::size_t>(k),
                                        std::vector<int>(static_cast<std::size_t>(l)));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < l; ++j)
            if (!(in >> parts[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]))
                fail(errc::parse_error, "truncated partition body");
    return SetPartition(k, l, std::move(parts)).canonicalized();
}

SetPartition parse_partition_text(const std::string& text, int k, int l) {
    std::istringstream in(text);
    return parse_partition_text(in, k, l);
}

std::string format_partition_text(const SetPartition& p) {
    std::ostringstream out;
    for (int i = 0; i < p.k(); ++i) {
        const auto& part = p.part(i);
        for (std::size_t j = 0; j < part.size(); ++j) {
            if (j) out << ' ';
            out << part[j];
        }
        out << '\n';
    }
    return out.str();
}

} // namespace kl
