#include "kl/sampling.hpp"

#include "kl/bigint.hpp"
#include "kl/stabilizer.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>
#include <vector>

namespace kl {

namespace {

/* Natural log of a positive big integer, exact to double precision: take the
 * top 63 bits and correct by the discarded power of two. */
double log_bigint(const bigint& x) {
    if (x <= 1) return 0.0;
    std::size_t bits = boost::multiprecision::msb(x);
    if (bits < 63) return std::log(x.convert_to<double>());
    std::size_t shift = bits - 62;
    double top = static_cast<double>((x >> shift).convert_to<std::uint64_t>());
    return std::log(top) + static_cast<double>(shift) * 0.6931471805599453;
}

/* One full proposal round: draw all k^2 entries, then accept iff the inner
 * block completes and the proposal dominates the forced outer entries. */
std::optional<IntersectionMatrix> propose_once(const GeometricConfig& cfg, rng64& rng) {
    const int k = cfg.k;
    RectMatrix y(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) y.at(i, j) = geometric_draw(cfg, rng);
    RectMatrix a(k - 1, k - 1);
    for (int i = 0; i + 1 < k; ++i)
        for (int j = 0; j + 1 < k; ++j) a.at(i, j) = y.at(i, j);
    auto ext = try_extend(a, cfg.l);
    if (!ext) return std::nullopt;
    for (int i = 0; i + 1 < k; ++i)
        if (y.at(i, k - 1) < ext->at(i, k - 1)) return std::nullopt;
    for (int j = 0; j < k; ++j)
        if (y.at(k - 1, j) < ext->at(k - 1, j)) return std::nullopt;
    return ext;
}

int clamp_workers(int workers, std::int64_t n_samples) {
    return static_cast<int>(std::min<std::int64_t>(workers, n_samples));
}

/* Runs body(t) on w threads (inline when w == 1) and rethrows the first
 * captured exception. */
template <typename Body>
void run_sharded(int w, Body&& body) {
    std::vector<std::exception_ptr> errors(w);
    auto guarded = [&](int t) {
        try {
            body(t);
        } catch (...) {
            errors[t] = std::current_exception();
        }
    };
    if (w == 1) {
        guarded(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(w);
        for (int t = 0; t < w; ++t) pool.emplace_back(guarded, t);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace

GeometricConfig::GeometricConfig(int k_in, entry_t l_in) : k(k_in), l(l_in) {
    require(k >= 1, errc::bad_shape, "geometric proposal needs k >= 1");
    require(l >= 0, errc::negative_entry, "geometric proposal needs l >= 0");
    double s = static_cast<double>(l) + static_cast<double>(k);
    p = static_cast<double>(k) / s;
    q = static_cast<double>(l) / s;
    log_q = l > 0 ? std::log(q) : 0.0;
}

entry_t geometric_draw(const GeometricConfig& cfg, rng64& rng) {
    if (cfg.q == 0.0) return 0;
    double u = rng.unit_open();
    return static_cast<entry_t>(std::log(u) / cfg.log_q);
}

IntersectionMatrix sample_uniform(int k, entry_t l, rng64& rng, std::int64_t* proposal_count) {
    GeometricConfig cfg(k, l);
    if (k == 1) {
        RectMatrix m(1, 1);
        m.at(0, 0) = l;
        return IntersectionMatrix(std::move(m));
    }
    for (;;) {
        if (proposal_count) ++*proposal_count;
        if (auto hit = propose_once(cfg, rng)) return *std::move(hit);
    }
}

SamplerReport acceptance_rate(int k, entry_t l, std::int64_t trials, std::uint64_t seed) {
    require(trials >= 1, errc::precondition_violation, "acceptance rate needs at least one trial");
    GeometricConfig cfg(k, l);
    SamplerReport r;
    r.proposals = trials;
    rng64 rng(seed);
    for (std::int64_t t = 0; t < trials; ++t)
        if (propose_once(cfg, rng)) ++r.accepted;
    double n = static_cast<double>(trials);
    double phat = static_cast<double>(r.accepted) / n;
    r.rate = phat;
    const double z = 1.959963984540054;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (phat + z2 / (2.0 * n)) / denom;
    double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    r.ci_low = std::max(0.0, center - half);
    r.ci_high = std::min(1.0, center + half);
    return r;
}

DeviationReport deviation_statistic(int k, entry_t l, std::int64_t n_samples, double f_exponent,
                                    std::uint64_t seed, int workers) {
    require(l >= 1, errc::precondition_violation, "deviation statistic needs l >= 1");
    require(n_samples >= 1, errc::precondition_violation, "need at least one sample");
    require(workers >= 1, errc::precondition_violation, "need at least one worker");
    GeometricConfig probe(k, l); /* validates k up front */
    (void)probe;

    int w = clamp_workers(workers, n_samples);
    std::vector<std::int64_t> hits(w, 0);
    double threshold = std::pow(static_cast<double>(l), f_exponent);
    double scaled = static_cast<double>(k) * threshold;

    run_sharded(w, [&](int t) {
        for (std::int64_t i = t; i < n_samples; i += w) {
            rng64 rng(mix_seed(seed, static_cast<std::uint64_t>(i)));
            IntersectionMatrix m = sample_uniform(k, l, rng);
            bool near = false;
            for (int a = 0; a < k && !near; ++a)
                for (int b = 0; b < k; ++b) {
                    entry_t d = static_cast<entry_t>(k) * m.at(a, b) - l;
                    if (d < 0) d = -d;
                    if (static_cast<double>(d) <= scaled) {
                        near = true;
                        break;
                    }
                }
            if (near) ++hits[t];
        }
    });

    DeviationReport rep;
    rep.samples = n_samples;
    for (auto h : hits) rep.near_mean += h;
    rep.fraction = static_cast<double>(rep.near_mean) / static_cast<double>(n_samples);
    rep.threshold = threshold;
    return rep;
}

SymmetryReport symmetry_statistics(int k, entry_t l, std::int64_t n_samples, double epsilon,
                                   std::uint64_t seed, int workers) {
    require(l >= 1, errc::precondition_violation, "symmetry statistics need l >= 1");
    require(n_samples >= 1, errc::precondition_violation, "need at least one sample");
    require(workers >= 1, errc::precondition_violation, "need at least one worker");
    GeometricConfig probe(k, l);
    (void)probe;

    int w = clamp_workers(workers, n_samples);
    /* Per-sample logs land in a fixed slot and are summed in index order at
     * the end, so the mean is bit-identical for any worker count. */
    std::vector<double> logs(static_cast<std::size_t>(n_samples), 0.0);
    std::vector<std::int64_t> triv(w, 0), two(w, 0), viol(w, 0);
    double log_l = std::log(static_cast<double>(l));
    double bound = static_cast<double>(k) * std::lgamma(static_cast<double>(l) + 1.0) -
                   (static_cast<double>(k - 1) * static_cast<double>(k - 1) - epsilon) * log_l;

    run_sharded(w, [&](int t) {
        for (std::int64_t i = t; i < n_samples; i += w) {
            rng64 rng(mix_seed(seed, static_cast<std::uint64_t>(i)));
            IntersectionMatrix m = sample_uniform(k, l, rng);
            StabilizerReport rep = stabilizer(m.rect());
            if (rep.order_kn == 1) ++triv[t];
            if (rep.order_kn == 2) ++two[t];
            double la;
            if (l <= 64) {
                la = log_bigint(rep.aut_order);
            } else {
                la = log_bigint(rep.order_kn);
                for (int a = 0; a < k; ++a)
                    for (int b = 0; b < k; ++b)
                        la += std::lgamma(static_cast<double>(m.at(a, b)) + 1.0);
            }
            logs[static_cast<std::size_t>(i)] = la;
            if (la > bound) ++viol[t];
        }
    });

    SymmetryReport rep;
    rep.samples = n_samples;
    for (auto c : triv) rep.trivial_kn += c;
    for (auto c : two) rep.order_two += c;
    for (auto c : viol) rep.bound_violations += c;
    rep.trivial_fraction = static_cast<double>(rep.trivial_kn) / static_cast<double>(n_samples);
    double sum = 0.0;
    for (double v : logs) sum += v;
    rep.mean_log_aut = sum / static_cast<double>(n_samples);
    rep.epsilon = epsilon;
    rep.violation_fraction =
        static_cast<double>(rep.bound_violations) / static_cast<double>(n_samples);
    return rep;
}

} // namespace kl
