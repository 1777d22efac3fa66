#include "jsd/pairgen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "jsd/errors.hpp"
#include "jsd/rng.hpp"

namespace jsd {

namespace {

double neumaier_dot(const std::vector<double>& w, const std::vector<double>& v) {
    double s = 0.0, c = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
        const double x = w[j] * v[j];
        const double t = s + x;
        c += (std::fabs(s) >= std::fabs(x)) ? (s - t) + x : (x - t) + s;
        s = t;
    }
    return s + c;
}

std::vector<double> simplex_from(Rng& rng, std::size_t n) {
    std::vector<double> p(n);
    double s = 0.0;
    for (auto& x : p) {
        x = -std::log(rng.uniform01());
        s += x;
    }
    for (auto& x : p) x /= s;
    // park the normalization residual on the largest bin so the sum is 1
    // at compensated-summation resolution for any n
    double r = 1.0, c = 0.0;
    for (double x : p) {
        const double t = r - x;
        c += (std::fabs(r) >= x) ? (r - t) - x : (-x - t) + r;
        r = t;
    }
    p[static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin())] += r + c;
    return p;
}

double rms(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s / static_cast<double>(v.size()));
}

struct Box {
    std::vector<double> lo, hi;
};

// Per-bin eps bounds keeping both constructed probabilities inside [0,1],
// with a relative margin so downstream rounding cannot poke outside.
Box eps_box(const std::vector<double>& pbar) {
    constexpr double kEdge = 1.0 - 1e-9;
    Box box;
    box.lo.resize(pbar.size());
    box.hi.resize(pbar.size());
    for (std::size_t j = 0; j < pbar.size(); ++j) {
        const double reach = (1.0 / pbar[j] - 1.0) * kEdge;
        box.hi[j] = std::min(kEdge, reach);
        box.lo[j] = std::max(-kEdge, -reach);
    }
    return box;
}

// eps_j = clamp(v_j - lam, lo_j, hi_j) with lam solving
// sum_j pbar_j eps_j = 0; the weighted sum is monotone in lam, so bisection.
std::vector<double> zero_sum_clamped(const std::vector<double>& v,
                                     const std::vector<double>& pbar, const Box& box) {
    const std::size_t n = v.size();
    double lam_lo = std::numeric_limits<double>::infinity();
    double lam_hi = -lam_lo;
    for (std::size_t j = 0; j < n; ++j) {
        lam_lo = std::min(lam_lo, v[j] - box.hi[j]);
        lam_hi = std::max(lam_hi, v[j] - box.lo[j]);
    }
    std::vector<double> eps(n);
    auto weighted_sum = [&](double lam) {
        for (std::size_t j = 0; j < n; ++j)
            eps[j] = std::clamp(v[j] - lam, box.lo[j], box.hi[j]);
        return neumaier_dot(pbar, eps);
    };
    double f_lo = weighted_sum(lam_lo); // all bins at hi: >= 0
    for (int it = 0; it < 130 && lam_lo != lam_hi; ++it) {
        const double mid = 0.5 * (lam_lo + lam_hi);
        if (weighted_sum(mid) >= 0.0) {
            lam_lo = mid;
            f_lo = neumaier_dot(pbar, eps);
        } else {
            lam_hi = mid;
        }
    }
    weighted_sum(lam_lo);
    (void)f_lo;
    const double c = neumaier_dot(pbar, eps);
    for (auto& e : eps) e -= c; // residual ~1e-16, absorbed by the box margin
    return eps;
}

} // namespace

std::vector<double> sample_simplex(std::size_t n, std::uint64_t seed) {
    if (n < 1) throw validation_error("sample_simplex: n must be >= 1");
    Rng rng(seed);
    return simplex_from(rng, n);
}

GeneratedPair sample_pair(const GenSpec& spec, int max_attempts) {
    if (spec.n < 2) throw validation_error("sample_pair: n must be >= 2");
    if (!(spec.target_log10_eps < 0.0))
        throw validation_error("sample_pair: target_log10_eps must be < 0");
    if (!(std::fabs(spec.alpha) <= 1.0))
        throw validation_error("sample_pair: |alpha| must be <= 1");
    if (max_attempts < 0) throw validation_error("sample_pair: max_attempts must be >= 0");

    constexpr double kBand = 0.0495; // internal accept band, inside the +-0.05 contract
    const double target = std::pow(10.0, spec.target_log10_eps);
    Rng rng(spec.seed);

    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        std::vector<double> pbar = simplex_from(rng, spec.n);
        std::vector<double> d(spec.n);
        for (auto& x : d) x = rng.normal();
        const double shift = neumaier_dot(pbar, d);
        for (auto& x : d) x -= shift;
        const double d_rms = rms(d);
        if (!(d_rms > 0.0)) continue;

        const Box box = eps_box(pbar);
        // largest scale at which no bin clips; below it eps = s*d exactly
        double s_box = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < spec.n; ++j) {
            if (d[j] > 0.0) s_box = std::min(s_box, box.hi[j] / d[j]);
            else if (d[j] < 0.0) s_box = std::min(s_box, box.lo[j] / d[j]);
        }

        std::vector<double> eps;
        const double s_exact = target / d_rms;
        if (s_exact <= s_box) {
            eps.resize(spec.n);
            for (std::size_t j = 0; j < spec.n; ++j) eps[j] = s_exact * d[j];
            const double c = neumaier_dot(pbar, eps);
            for (auto& e : eps) e -= c;
        } else {
            // clipped regime: grow the scale until the clamped norm reaches
            // target or saturates, then bisect
            std::vector<double> v(spec.n);
            auto norm_at = [&](double s) {
                for (std::size_t j = 0; j < spec.n; ++j) v[j] = s * d[j];
                eps = zero_sum_clamped(v, pbar, box);
                return rms(eps);
            };
            double s_lo = s_box, s_hi = s_box;
            double r_prev = norm_at(s_lo);
            bool bracketed = false;
            for (int k = 0; k < 80; ++k) {
                s_hi = s_hi * 2.0;
                const double r = norm_at(s_hi);
                if (r >= target) {
                    bracketed = true;
                    break;
                }
                if (r - r_prev <= r * 1e-12) break; // saturated
                s_lo = s_hi;
                r_prev = r;
            }
            if (!bracketed) {
                const double r_sat = norm_at(s_hi);
                if (std::fabs(std::log10(r_sat) - spec.target_log10_eps) > kBand) continue;
            } else {
                for (int k = 0; k < 90; ++k) {
                    const double mid = 0.5 * (s_lo + s_hi);
                    if (norm_at(mid) < target) s_lo = mid;
                    else s_hi = mid;
                }
                norm_at(s_hi);
            }
        }

        const double achieved = rms(eps);
        if (!(achieved > 0.0) ||
            std::fabs(std::log10(achieved) - spec.target_log10_eps) > kBand)
            continue;

        std::vector<double> p1(spec.n), p2(spec.n);
        for (std::size_t j = 0; j < spec.n; ++j) {
            p1[j] = pbar[j] * (1.0 + eps[j]);
            p2[j] = pbar[j] * (1.0 - eps[j]);
        }
        const double pi1 = 0.5 * (1.0 + spec.alpha);
        return GeneratedPair{WeightedPair(std::move(p1), std::move(p2), pi1, 1.0 - pi1),
                             achieved, std::move(eps)};
    }
    throw generation_error("sample_pair: no admissible draw within attempt budget");
}

} // namespace jsd
