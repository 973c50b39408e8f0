#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace testsupport {

namespace {

std::vector<std::vector<int>> all_permutations(int n) {
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

} // namespace

kl::bigint brute_stabilizer_order(const kl::RectMatrix& m) {
    return kl::bigint(static_cast<std::int64_t>(brute_stabilizer_elements(m).size()));
}

std::vector<kl::PermPair> brute_stabilizer_elements(const kl::RectMatrix& m) {
    auto rows = all_permutations(m.rows());
    auto cols = all_permutations(m.cols());
    std::vector<kl::PermPair> out;
    for (const auto& r : rows)
        for (const auto& c : cols)
            if (kl::apply_perm_pair(m, r, c) == m) out.push_back({r, c});
    return out;
}

kl::bigint brute_centralizer_order(const kl::FppInvolution& x, const kl::FppInvolution& y) {
    int n = x.degree();
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 1);
    std::int64_t count = 0;
    do {
        bool ok = true;
        for (int e = 1; e <= n && ok; ++e) {
            int pe = p[static_cast<std::size_t>(e - 1)];
            if (p[static_cast<std::size_t>(x.image(e) - 1)] != x.image(pe)) ok = false;
            else if (p[static_cast<std::size_t>(y.image(e) - 1)] != y.image(pe)) ok = false;
        }
        if (ok) ++count;
    } while (std::next_permutation(p.begin(), p.end()));
    return count;
}

double chi_square_p_value(double df, double stat) {
    double a = df / 2.0, x = stat / 2.0;
    if (x <= 0.0) return 1.0;
    if (x < a + 1.0) {
        /* lower series, then complement */
        double ap = a, sum = 1.0 / a, del = sum;
        for (int i = 0; i < 1000; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
        }
        double p = sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
        return 1.0 - p;
    }
    /* upper continued fraction (modified Lentz) */
    double b = x + 1.0 - a, c = 1e300, d = 1.0 / b, h = d;
    for (int i = 1; i <= 1000; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::fabs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

std::vector<int> random_permutation(int n, kl::rng64& rng) {
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    rng.shuffle(p);
    return p;
}

kl::RectMatrix random_margin_matrix(int k, kl::entry_t l, kl::rng64& rng) {
    kl::RectMatrix m(k, k);
    for (kl::entry_t s = 0; s < l; ++s) {
        std::vector<int> p = random_permutation(k, rng);
        for (int i = 0; i < k; ++i) m.at(i, p[static_cast<std::size_t>(i)]) += 1;
    }
    return m;
}

} // namespace testsupport
