#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>

namespace kl {

using bigint = boost::multiprecision::cpp_int;
using bigrat = boost::multiprecision::cpp_rational;

bigint factorial(std::int64_t n);

/* base^exp for non-negative exp. */
bigint ipow(const bigint& base, std::int64_t exp);

/* C(n, r); zero when r < 0 or r > n. */
bigint binomial(std::int64_t n, std::int64_t r);

} // namespace kl
