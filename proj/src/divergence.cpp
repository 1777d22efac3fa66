#include "jsd/divergence.hpp"

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>

#include "jsd/errors.hpp"

namespace jsd {

namespace {

// Compensated (Neumaier) sum; used only for validation so that the check
// measures the data, not the checker's own rounding.
double compensated_sum(std::span<const double> v) {
    double s = 0.0, c = 0.0;
    for (double x : v) {
        const double t = s + x;
        c += (std::fabs(s) >= std::fabs(x)) ? (s - t) + x : (x - t) + s;
        s = t;
    }
    return s + c;
}

void validate_distribution(std::span<const double> p, const char* what) {
    if (p.empty()) throw validation_error(std::string(what) + ": empty distribution");
    for (double x : p) {
        if (!(x >= 0.0 && x <= 1.0))
            throw validation_error(std::string(what) + ": entries must lie in [0,1]");
    }
    const double s = compensated_sum(p);
    if (std::fabs(s - 1.0) > WeightedPair::kSumTolerance)
        throw validation_error(std::string(what) + ": entries must sum to 1");
}

double entropy_unchecked(std::span<const double> p) {
    double h = 0.0;
    for (double x : p) {
        if (x > 0.0) h -= x * std::log(x);
    }
    return h;
}

double to_units(double nats, Units units) {
    return units == Units::bits ? nats / std::numbers::ln2 : nats;
}

// sum_{i=1..order} b[i-1] eps^(i+1), accumulated in adjacent pairs
// (B_{2i-1} + B_{2i} eps) eps^{2i}; every pair is nonnegative in floating
// point because |B_{2i} eps| <= B_{2i-1} (2i-1)/(2i+1).
double delta_from_coeffs(std::span<const double> b, int order, double eps) {
    const double eps2 = eps * eps;
    double pw = eps2;
    double acc = 0.0;
    int i = 1;
    for (; i + 1 <= order; i += 2) {
        acc += (b[static_cast<std::size_t>(i) - 1] + b[static_cast<std::size_t>(i)] * eps) * pw;
        pw *= eps2;
    }
    if (i == order) acc += b[static_cast<std::size_t>(order) - 1] * pw;
    return acc;
}

// (1+a)(1+e) ln(1+e) + (1-a)(1-e) ln(1-e) - 2(1+ae) ln(1+ae), with
// zero-coefficient terms skipped so e = +-1 and a = +-1 take their limits.
double exact_bracket(double eps, double alpha) {
    double acc = 0.0;
    const double c1 = (1.0 + alpha) * (1.0 + eps);
    if (c1 != 0.0) acc += c1 * std::log1p(eps);
    const double c2 = (1.0 - alpha) * (1.0 - eps);
    if (c2 != 0.0) acc += c2 * std::log1p(-eps);
    const double ae = alpha * eps;
    const double c3 = 2.0 * (1.0 + ae);
    if (c3 != 0.0) acc -= c3 * std::log1p(ae);
    return acc;
}

EvalDiagnostics scan_diagnostics(const WeightedPair& pair) {
    EvalDiagnostics d;
    const auto p1 = pair.p1();
    const auto p2 = pair.p2();
    for (std::size_t j = 0; j < p1.size(); ++j) {
        if (p1[j] == 0.0 && p2[j] == 0.0) d.empty_bins = true;
        else if (p1[j] == 0.0 || p2[j] == 0.0) d.boundary_eps = true;
    }
    return d;
}

} // namespace

const char* to_string(Units u) {
    return u == Units::bits ? "bits" : "nats";
}

const char* to_string(Method m) {
    switch (m) {
        case Method::naive: return "naive";
        case Method::exact_reduced: return "exact";
        case Method::series: return "series";
        case Method::auto_select: return "auto";
    }
    return "?";
}

WeightedPair::WeightedPair(std::vector<double> p1, std::vector<double> p2,
                           double pi1, double pi2, bool renormalize)
    : p1_(std::move(p1)), p2_(std::move(p2)), pi1_(pi1), pi2_(pi2) {
    if (p1_.size() != p2_.size())
        throw validation_error("WeightedPair: distributions differ in length");
    if (!(pi1_ >= 0.0 && pi1_ <= 1.0) || !(pi2_ >= 0.0 && pi2_ <= 1.0))
        throw validation_error("WeightedPair: weights must lie in [0,1]");
    if (std::fabs((pi1_ + pi2_) - 1.0) > kWeightTolerance)
        throw validation_error("WeightedPair: weights must sum to 1");
    if (renormalize) {
        for (auto* v : {&p1_, &p2_}) {
            const double s = compensated_sum(*v);
            if (!(s > 0.0) || !std::isfinite(s))
                throw validation_error("WeightedPair: cannot renormalize, total mass is not positive");
            for (double& x : *v) x /= s;
        }
    }
    validate_distribution(p1_, "WeightedPair p1");
    validate_distribution(p2_, "WeightedPair p2");
}

double entropy(std::span<const double> p) {
    validate_distribution(p, "entropy");
    return entropy_unchecked(p);
}

ReducedForm reduce(const WeightedPair& pair) {
    ReducedForm rf;
    const auto p1 = pair.p1();
    const auto p2 = pair.p2();
    const std::size_t n = p1.size();
    rf.pbar.resize(n);
    rf.eta.resize(n);
    rf.eps.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        rf.pbar[j] = 0.5 * (p1[j] + p2[j]);
        rf.eta[j] = 0.5 * (p1[j] - p2[j]);
        if (rf.pbar[j] == 0.0) {
            rf.eps[j] = 0.0;
            rf.empty_bins = true;
        } else {
            rf.eps[j] = rf.eta[j] / rf.pbar[j];
            if (std::fabs(rf.eps[j]) == 1.0) rf.boundary_eps = true;
        }
    }
    rf.alpha = pair.pi1() - pair.pi2();
    return rf;
}

double epsilon_rms_norm(const ReducedForm& rf) {
    if (rf.eps.empty()) throw validation_error("epsilon_rms_norm: empty reduced form");
    double s = 0.0;
    for (double e : rf.eps) s += e * e;
    return std::sqrt(s / static_cast<double>(rf.eps.size()));
}

SeriesCoefficients series_coefficients(double alpha, int order) {
    if (!(std::fabs(alpha) <= 1.0))
        throw validation_error("series_coefficients: |alpha| must be <= 1");
    if (order < 1) throw validation_error("series_coefficients: order must be >= 1");
    SeriesCoefficients sc;
    sc.alpha = alpha;
    sc.order = order;
    sc.b.resize(static_cast<std::size_t>(order));
    double ap = alpha; // alpha^i before the multiply, alpha^(i+1) after
    for (int i = 1; i <= order; ++i) {
        ap *= alpha;
        const double denom = static_cast<double>(i) * static_cast<double>(i + 1);
        sc.b[static_cast<std::size_t>(i) - 1] =
            (i % 2 != 0) ? 2.0 * (1.0 - ap) / denom : -2.0 * (alpha - ap) / denom;
    }
    return sc;
}

double delta_series(double eps, double alpha, int order) {
    if (!(std::fabs(eps) <= 1.0))
        throw validation_error("delta_series: |eps| must be <= 1");
    const SeriesCoefficients sc = series_coefficients(alpha, order);
    return delta_from_coeffs(sc.b, order, eps);
}

EvalResult jsd_naive(const WeightedPair& pair, Units units) {
    const auto p1 = pair.p1();
    const auto p2 = pair.p2();
    std::vector<double> mix(p1.size());
    for (std::size_t j = 0; j < p1.size(); ++j)
        mix[j] = pair.pi1() * p1[j] + pair.pi2() * p2[j];
    const double h = entropy_unchecked(mix) -
                     (pair.pi1() * entropy_unchecked(p1) + pair.pi2() * entropy_unchecked(p2));
    EvalResult r;
    r.value = to_units(h, units);
    r.units = units;
    r.method = Method::naive;
    r.diagnostics = scan_diagnostics(pair);
    return r;
}

EvalResult jsd_exact_reduced(const WeightedPair& pair, Units units) {
    const ReducedForm rf = reduce(pair);
    double acc = 0.0;
    for (std::size_t j = 0; j < rf.size(); ++j) {
        if (rf.pbar[j] == 0.0) continue;
        acc += rf.pbar[j] * exact_bracket(rf.eps[j], rf.alpha);
    }
    EvalResult r;
    r.value = to_units(0.5 * acc, units);
    r.units = units;
    r.method = Method::exact_reduced;
    r.diagnostics = {rf.boundary_eps, rf.empty_bins};
    return r;
}

EvalResult jsd_series(const WeightedPair& pair, int order, Units units) {
    const ReducedForm rf = reduce(pair);
    const SeriesCoefficients sc = series_coefficients(rf.alpha, order);
    double acc = 0.0;
    for (std::size_t j = 0; j < rf.size(); ++j) {
        if (rf.pbar[j] == 0.0) continue;
        acc += rf.pbar[j] * delta_from_coeffs(sc.b, order, rf.eps[j]);
    }
    EvalResult r;
    r.value = to_units(0.5 * acc, units);
    r.units = units;
    r.method = Method::series;
    r.order = order;
    r.diagnostics = {rf.boundary_eps, rf.empty_bins};
    return r;
}

EvalResult jsd_auto(const WeightedPair& pair, double rel_tol, Units units) {
    if (!(rel_tol > 0.0 && rel_tol < 1.0))
        throw validation_error("jsd_auto: rel_tol must lie in (0,1)");
    constexpr double kSeriesEpsThreshold = 0.5;
    constexpr int kMaxOrder = 64;

    const ReducedForm rf = reduce(pair);
    double max_eps = 0.0;
    for (double e : rf.eps) max_eps = std::max(max_eps, std::fabs(e));
    if (max_eps >= kSeriesEpsThreshold) {
        EvalResult r = jsd_exact_reduced(pair, units);
        r.via_auto = true;
        return r;
    }

    const SeriesCoefficients sc = series_coefficients(rf.alpha, kMaxOrder);
    const std::size_t n = rf.size();
    std::vector<double> pw(n);
    for (std::size_t j = 0; j < n; ++j) pw[j] = rf.eps[j] * rf.eps[j];

    double acc = 0.0;
    int order = 0;
    for (int g = 1; g <= kMaxOrder / 2; ++g) {
        const double b_odd = sc.b[static_cast<std::size_t>(2 * g) - 2];
        const double b_even = sc.b[static_cast<std::size_t>(2 * g) - 1];
        double group = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (rf.pbar[j] == 0.0) continue;
            group += rf.pbar[j] * ((b_odd + b_even * rf.eps[j]) * pw[j]);
            pw[j] *= rf.eps[j] * rf.eps[j];
        }
        acc += group;
        order = 2 * g;
        if (group <= rel_tol * acc) break;
    }

    EvalResult r;
    r.value = to_units(0.5 * acc, units);
    r.units = units;
    r.method = Method::series;
    r.order = order;
    r.via_auto = true;
    r.diagnostics = {rf.boundary_eps, rf.empty_bins};
    return r;
}

} // namespace jsd
