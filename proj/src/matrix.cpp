#include "kl/matrix.hpp"

#include "json.hpp"

#include <sstream>

namespace kl {

const char* errc_name(errc c) {
    switch (c) {
    case errc::non_uniform_margins: return "non_uniform_margins";
    case errc::negative_entry: return "negative_entry";
    case errc::bad_shape: return "bad_shape";
    case errc::not_staircase: return "not_staircase";
    case errc::index_out_of_range: return "index_out_of_range";
    case errc::not_extendable: return "not_extendable";
    case errc::mismatched_shape: return "mismatched_shape";
    case errc::not_involution: return "not_involution";
    case errc::not_fixed_point_free: return "not_fixed_point_free";
    case errc::equal_inputs: return "equal_inputs";
    case errc::window_undefined: return "window_undefined";
    case errc::outside_formula_range: return "outside_formula_range";
    case errc::search_failed: return "search_failed";
    case errc::invalid_sequence: return "invalid_sequence";
    case errc::budget_exceeded: return "budget_exceeded";
    case errc::degree_mismatch: return "degree_mismatch";
    case errc::range_too_small: return "range_too_small";
    case errc::flow_infeasible: return "flow_infeasible";
    case errc::precondition_violation: return "precondition_violation";
    case errc::verification_failed: return "verification_failed";
    case errc::parse_error: return "parse_error";
    }
    return "unknown";
}

RectMatrix::RectMatrix(int rows, int cols, entry_t fill)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {
    require(rows >= 0 && cols >= 0, errc::bad_shape, "negative dimension");
}

RectMatrix RectMatrix::from_rows(const std::vector<std::vector<entry_t>>& grid) {
    int rows = static_cast<int>(grid.size());
    require(rows > 0, errc::bad_shape, "empty grid");
    int cols = static_cast<int>(grid[0].size());
    require(cols > 0, errc::bad_shape, "empty row");
    RectMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        require(static_cast<int>(grid[i].size()) == cols, errc::bad_shape, "ragged grid");
        for (int j = 0; j < cols; ++j) m.at(i, j) = grid[i][j];
    }
    return m;
}

entry_t RectMatrix::row_sum(int i) const {
    entry_t s = 0;
    for (int j = 0; j < cols_; ++j) s += at(i, j);
    return s;
}

entry_t RectMatrix::col_sum(int j) const {
    entry_t s = 0;
    for (int i = 0; i < rows_; ++i) s += at(i, j);
    return s;
}

RectMatrix RectMatrix::transpose() const {
    RectMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

static void check_same_shape(const RectMatrix& a, const RectMatrix& b) {
    require(a.rows() == b.rows() && a.cols() == b.cols(), errc::mismatched_shape,
            "matrix shapes differ");
}

RectMatrix operator+(const RectMatrix& a, const RectMatrix& b) {
    check_same_shape(a, b);
    RectMatrix r = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r.at(i, j) += b.at(i, j);
    return r;
}

RectMatrix operator-(const RectMatrix& a, const RectMatrix& b) {
    check_same_shape(a, b);
    RectMatrix r = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r.at(i, j) -= b.at(i, j);
    return r;
}

RectMatrix operator*(entry_t scalar, const RectMatrix& m) {
    RectMatrix r = m;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r.at(i, j) *= scalar;
    return r;
}

RectMatrix apply_perm_pair(const RectMatrix& m, const std::vector<int>& row_images,
                           const std::vector<int>& col_images) {
    require(static_cast<int>(row_images.size()) == m.rows() &&
                static_cast<int>(col_images.size()) == m.cols(),
            errc::mismatched_shape, "permutation length does not match matrix shape");
    RectMatrix r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r.at(i, j) = m.at(row_images[i], col_images[j]);
    return r;
}

IntersectionMatrix::IntersectionMatrix(RectMatrix m) : m_(std::move(m)) {
    require(m_.rows() == m_.cols() && m_.rows() >= 1, errc::bad_shape,
            "intersection matrix must be square and non-empty");
    int k = m_.rows();
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            require(m_.at(i, j) >= 0, errc::negative_entry, "negative entry");
    l_ = m_.row_sum(0);
    for (int i = 0; i < k; ++i)
        require(m_.row_sum(i) == l_, errc::non_uniform_margins, "row sums differ");
    for (int j = 0; j < k; ++j)
        require(m_.col_sum(j) == l_, errc::non_uniform_margins, "column sums differ");
}

IntersectionMatrix validate(const std::vector<std::vector<entry_t>>& grid) {
    return IntersectionMatrix(RectMatrix::from_rows(grid));
}

IntersectionMatrix cyclic_shift(const std::vector<entry_t>& v) {
    int k = static_cast<int>(v.size());
    require(k >= 1, errc::bad_shape, "empty shift vector");
    RectMatrix m(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) m.at(i, j) = v[static_cast<std::size_t>(((j - i) % k + k) % k)];
    return IntersectionMatrix(std::move(m));
}

StaircaseKind staircase_kind(const std::vector<entry_t>& v) {
    require(v.size() >= 3, errc::not_staircase, "staircase vector needs at least 3 entries");
    entry_t x = v[0], y = v[1], z = v[2];
    for (std::size_t j = 2; j < v.size(); ++j)
        require(v[j] == z, errc::not_staircase, "tail entries must all agree");
    require(x != z && y != z, errc::not_staircase, "leading entries must differ from the tail");
    return x == y ? StaircaseKind::weak : StaircaseKind::strong;
}

RectMatrix truncated_staircase(int t, const std::vector<entry_t>& v) {
    int k = static_cast<int>(v.size());
    staircase_kind(v);
    require(2 <= t && t < k, errc::bad_shape, "need 2 <= t < k");
    RectMatrix full = cyclic_shift(v).rect();
    RectMatrix m(t, k);
    for (int i = 0; i < t; ++i)
        for (int j = 0; j < k; ++j) m.at(i, j) = full.at(i, j);
    return m;
}

RectMatrix elementary(int i, int j, int k) {
    require(1 <= i && i <= k && 1 <= j && j <= k, errc::index_out_of_range,
            "elementary position outside 1..k");
    RectMatrix m(k, k);
    m.at(i - 1, j - 1) = 1;
    return m;
}

RectMatrix all_ones(int k) {
    require(k >= 1, errc::bad_shape, "all_ones needs k >= 1");
    return RectMatrix(k, k, 1);
}

RectMatrix inner_block(const IntersectionMatrix& n) {
    int k = n.k();
    require(k >= 2, errc::bad_shape, "inner block needs k >= 2");
    RectMatrix m(k - 1, k - 1);
    for (int i = 0; i + 1 < k; ++i)
        for (int j = 0; j + 1 < k; ++j) m.at(i, j) = n.at(i, j);
    return m;
}

std::optional<IntersectionMatrix> try_extend(const RectMatrix& a, entry_t l) {
    require(a.rows() == a.cols() && a.rows() >= 1, errc::bad_shape,
            "inner block must be square and non-empty");
    int k = a.rows() + 1;
    RectMatrix m(k, k);
    entry_t total = 0;
    for (int i = 0; i + 1 < k; ++i) {
        for (int j = 0; j + 1 < k; ++j) {
            entry_t e = a.at(i, j);
            if (e < 0) return std::nullopt;
            m.at(i, j) = e;
            total += e;
        }
    }
    for (int i = 0; i + 1 < k; ++i) {
        entry_t e = l - m.row_sum(i);
        if (e < 0) return std::nullopt;
        m.at(i, k - 1) = e;
    }
    for (int j = 0; j + 1 < k; ++j) {
        entry_t e = l - m.col_sum(j);
        if (e < 0) return std::nullopt;
        m.at(k - 1, j) = e;
    }
    entry_t corner = total - (k - 2) * l;
    if (corner < 0) return std::nullopt;
    m.at(k - 1, k - 1) = corner;
    return IntersectionMatrix(std::move(m));
}

IntersectionMatrix extend(const RectMatrix& a, entry_t l) {
    auto r = try_extend(a, l);
    require(r.has_value(), errc::not_extendable, "forced completion has a negative entry");
    return *r;
}

EntryMultiset entry_multiset(const RectMatrix& m) {
    EntryMultiset ms;
    for (entry_t e : m.data()) ++ms[e];
    return ms;
}

IntersectionMatrix parse_matrix_text(std::istream& in) {
    int k;
    entry_t l;
    if (!(in >> k >> l)) fail(errc::parse_error, "expected header line 'k l'");
    require(k >= 1 && k <= 4096, errc::parse_error, "unreasonable k");
    std::vector<std::vector<entry_t>> grid(static_cast<std::size_t>(k),
                                           std::vector<entry_t>(static_cast<std::size_t>(k)));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (!(in >> grid[i][j])) fail(errc::parse_error, "truncated matrix body");
    IntersectionMatrix n = validate(grid);
    require(n.l() == l, errc::parse_error, "header margin does not match entries");
    return n;
}

IntersectionMatrix parse_matrix_text(const std::string& text) {
    std::istringstream in(text);
    return parse_matrix_text(in);
}

std::string format_matrix_text(const IntersectionMatrix& n) {
    std::ostringstream out;
    out << n.k() << ' ' << n.l() << '\n';
    for (int i = 0; i < n.k(); ++i) {
        for (int j = 0; j < n.k(); ++j) {
            if (j) out << ' ';
            out << n.at(i, j);
        }
        out << '\n';
    }
    return out.str();
}

IntersectionMatrix parse_matrix_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(errc::parse_error, e.what());
    }
    try {
        int k = j.at("k").get<int>();
        entry_t l = j.at("l").get<entry_t>();
        auto grid = j.at("rows").get<std::vector<std::vector<entry_t>>>();
        require(static_cast<int>(grid.size()) == k, errc::parse_error, "row count != k");
        IntersectionMatrix n = validate(grid);
        require(n.l() == l, errc::parse_error, "declared l does not match entries");
        return n;
    } catch (const nlohmann::json::exception& e) {
        fail(errc::parse_error, e.what());
    }
}

std::string format_matrix_json(const IntersectionMatrix& n) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < n.k(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < n.k(); ++j) row.push_back(n.at(i, j));
        rows.push_back(std::move(row));
    }
    nlohmann::json j{{"k", n.k()}, {"l", n.l()}, {"rows", std::move(rows)}};
    return j.dump();
}

IntersectionMatrix parse_matrix_auto(const std::string& text) {
    for (char c : text) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
        return c == '{' ? parse_matrix_json(text) : parse_matrix_text(text);
    }
    fail(errc::parse_error, "empty matrix input");
}

} // namespace kl
