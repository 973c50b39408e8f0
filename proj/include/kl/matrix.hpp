#pragma once

#include "kl/error.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kl {

using entry_t = std::int64_t;

/* Dense rectangular integer matrix. Entries may go negative transiently while
 * assembling expressions like theta(v) - E(a,b) + E(c,d); margin-uniform
 * non-negativity is enforced by IntersectionMatrix, not here. */
class RectMatrix {
public:
    RectMatrix() : rows_(0), cols_(0) {}
    RectMatrix(int rows, int cols, entry_t fill = 0);
    static RectMatrix from_rows(const std::vector<std::vector<entry_t>>& grid);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    entry_t& at(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    entry_t at(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

    entry_t row_sum(int i) const;
    entry_t col_sum(int j) const;

    RectMatrix transpose() const;

    bool operator==(const RectMatrix& o) const = default;

    const std::vector<entry_t>& data() const { return data_; }

private:
    int rows_, cols_;
    std::vector<entry_t> data_;
};

RectMatrix operator+(const RectMatrix& a, const RectMatrix& b);
RectMatrix operator-(const RectMatrix& a, const RectMatrix& b);
RectMatrix operator*(entry_t scalar, const RectMatrix& m);

/* Result (i,j) entry is in(row_images[i], col_images[j]); images 0-indexed. */
RectMatrix apply_perm_pair(const RectMatrix& m, const std::vector<int>& row_images,
                           const std::vector<int>& col_images);

/* k x k non-negative integer matrix whose row and column sums all equal l:
 * the bipartite adjacency matrix of a (k,l)-multigraph. */
class IntersectionMatrix {
public:
    explicit IntersectionMatrix(RectMatrix m);

    int k() const { return m_.rows(); }
    entry_t l() const { return l_; }
    entry_t at(int i, int j) const { return m_.at(i, j); }

    const RectMatrix& rect() const { return m_; }

    bool operator==(const IntersectionMatrix& o) const = default;

private:
    RectMatrix m_;
    entry_t l_;
};

/* Margin check on a raw grid; the common margin is inferred from row 1. */
IntersectionMatrix validate(const std::vector<std::vector<entry_t>>& grid);

/* theta(v): row i is v shifted i positions rightward (cyclically), so for
 * v = (x, y, z, ..., z) the x entries run down the main diagonal. */
IntersectionMatrix cyclic_shift(const std::vector<entry_t>& v);

enum class StaircaseKind { weak, strong };

/* First t rows of theta(v) for v = (x, y, z, ..., z), x != z, y != z,
 * 2 <= t < k. Weak when x == y, strong otherwise. */
RectMatrix truncated_staircase(int t, const std::vector<entry_t>& v);
StaircaseKind staircase_kind(const std::vector<entry_t>& v);

/* E(i, j): k x k, single 1 at (i, j); i, j are 1-based like the external
 * formats. */
RectMatrix elementary(int i, int j, int k);
RectMatrix all_ones(int k);

/* Top-left (k-1) x (k-1) block. */
RectMatrix inner_block(const IntersectionMatrix& n);

/* Unique completion of a (k-1) x (k-1) block to a k x k matrix with all
 * margins l, when the forced outer entries are non-negative. */
std::optional<IntersectionMatrix> try_extend(const RectMatrix& a, entry_t l);
IntersectionMatrix extend(const RectMatrix& a, entry_t l);

/* Entry value -> multiplicity. */
using EntryMultiset = std::map<entry_t, std::int64_t>;
EntryMultiset entry_multiset(const RectMatrix& m);
inline EntryMultiset entry_multiset(const IntersectionMatrix& n) { return entry_multiset(n.rect()); }

/* Text format: first line "k l", then k lines of k space-separated entries. */
IntersectionMatrix parse_matrix_text(std::istream& in);
IntersectionMatrix parse_matrix_text(const std::string& text);
std::string format_matrix_text(const IntersectionMatrix& n);

/* JSON format: {"k": ..., "l": ..., "rows": [[...], ...]}. */
IntersectionMatrix parse_matrix_json(const std::string& text);
std::string format_matrix_json(const IntersectionMatrix& n);

/* Reads either format, sniffing by the first non-space character. */
IntersectionMatrix parse_matrix_auto(const std::string& text);

} // namespace kl
