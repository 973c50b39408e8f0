#include "kl/bigint.hpp"

#include "kl/error.hpp"

#include <mutex>
#include <vector>

namespace kl {

bigint factorial(std::int64_t n) {
    require(n >= 0, errc::precondition_violation, "factorial of negative argument");
    /* Factorials appear in inner loops (per-matrix automorphism orders during
     * enumeration), so keep a growing shared table. */
    static std::vector<bigint> table{1};
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    while (static_cast<std::int64_t>(table.size()) <= n) {
        table.push_back(table.back() * static_cast<std::int64_t>(table.size()));
    }
    return table[static_cast<std::size_t>(n)];
}

bigint ipow(const bigint& base, std::int64_t exp) {
    require(exp >= 0, errc::precondition_violation, "ipow with negative exponent");
    bigint result = 1;
    bigint b = base;
    while (exp > 0) {
        if (exp & 1) result *= b;
        b *= b;
        exp >>= 1;
    }
    return result;
}

bigint binomial(std::int64_t n, std::int64_t r) {
    if (r < 0 || r > n) return 0;
    if (r > n - r) r = n - r;
    bigint result = 1;
    for (std::int64_t i = 1; i <= r; ++i) {
        result *= (n - r + i);
        result /= i;
    }
    return result;
}

} // namespace kl
