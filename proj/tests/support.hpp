#pragma once

#include "kl/matrix.hpp"
#include "kl/rng.hpp"
#include "kl/stabilizer.hpp"

#include <vector>

namespace testsupport {

/* Ground-truth joint stabilizer by iterating all of S_rows x S_cols.
 * Feasible up to ~6 on each side. */
kl::bigint brute_stabilizer_order(const kl::RectMatrix& m);
std::vector<kl::PermPair> brute_stabilizer_elements(const kl::RectMatrix& m);

/* Ground-truth |C_{S_2k}(<x, y>)| by scanning all of S_2k (2k <= 8). */
kl::bigint brute_centralizer_order(const kl::FppInvolution& x, const kl::FppInvolution& y);

/* Upper tail of the chi-square distribution with df degrees of freedom,
 * via the regularized incomplete gamma function Q(df/2, stat/2). */
double chi_square_p_value(double df, double stat);

/* Margin-l matrix built as a sum of l random permutation matrices. Not
 * uniform; used as an input generator independent of the library's own
 * samplers and enumerators. */
kl::RectMatrix random_margin_matrix(int k, kl::entry_t l, kl::rng64& rng);

std::vector<int> random_permutation(int n, kl::rng64& rng);

} // namespace testsupport
