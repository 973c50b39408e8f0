#pragma once

#include "kl/matrix.hpp"
#include "kl/rng.hpp"

#include <cstdint>

namespace kl {

/* Entrywise proposal law: P(Y = a) = p * q^a with p = k/(l+k), q = l/(l+k).
 * Under this law every margin-l matrix is equally likely, which is what makes
 * the rejection sampler exactly uniform. */
struct GeometricConfig {
    int k;
    entry_t l;
    double p;
    double q;
    double log_q;

    GeometricConfig(int k, entry_t l);
};

/* Inverse-CDF draw: floor(log u / log q) for u uniform on (0,1); u = 0 is
 * impossible by construction of unit_open. Degenerates to 0 when l = 0. */
entry_t geometric_draw(const GeometricConfig& cfg, rng64& rng);

/* Exactly uniform sample from the margin-l matrices. Proposes iid geometric
 * k x k matrices and accepts when the inner (k-1) x (k-1) block completes to
 * a margin-l matrix that is entrywise dominated by the proposal outside the
 * block; the accepted completion is returned. Expected proposals per sample
 * are bounded in l but grow quickly with k (practical for k <= 4 or so).
 * If proposal_count is given it is incremented per proposal. */
IntersectionMatrix sample_uniform(int k, entry_t l, rng64& rng,
                                  std::int64_t* proposal_count = nullptr);

struct SamplerReport {
    std::int64_t proposals = 0;
    std::int64_t accepted = 0;
    double rate = 0.0;
    double ci_low = 0.0; /* 95% Wilson interval */
    double ci_high = 0.0;
};

/* Monte Carlo estimate of the per-proposal acceptance probability. */
SamplerReport acceptance_rate(int k, entry_t l, std::int64_t trials,
                              std::uint64_t seed = default_seed);

struct DeviationReport {
    std::int64_t samples = 0;
    std::int64_t near_mean = 0; /* samples with some entry within threshold of l/k */
    double fraction = 0.0;
    double threshold = 0.0; /* l^f_exponent */
};

/* Fraction of uniform samples having min_ij |X_ij - l/k| <= l^f_exponent.
 * Each sample index owns a derived substream, so results are independent of
 * worker count. */
DeviationReport deviation_statistic(int k, entry_t l, std::int64_t n_samples, double f_exponent,
                                    std::uint64_t seed = default_seed, int workers = 1);

struct SymmetryReport {
    std::int64_t samples = 0;
    std::int64_t trivial_kn = 0;
    double trivial_fraction = 0.0;
    std::int64_t order_two = 0; /* samples with joint stabilizer of order exactly 2 */
    double mean_log_aut = 0.0;  /* natural log */
    double epsilon = 0.0;
    std::int64_t bound_violations = 0; /* log|Aut| > k log l! - ((k-1)^2 - eps) log l */
    double violation_fraction = 0.0;
};

/* Stabilizer statistics over uniform samples: how often the joint stabilizer
 * is trivial, the mean log automorphism count, and how often the
 * l!^k / l^((k-1)^2 - eps) ceiling is breached (expected: never for small
 * eps). Exact integer factorial products are used for l <= 64, lgamma
 * accumulation beyond. */
SymmetryReport symmetry_statistics(int k, entry_t l, std::int64_t n_samples, double epsilon,
                                   std::uint64_t seed = default_seed, int workers = 1);

} // namespace kl
