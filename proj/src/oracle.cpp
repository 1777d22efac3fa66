#include "jsd/oracle.hpp"

#include <cmath>
#include <cstddef>

#include "jsd/errors.hpp"

namespace jsd {

namespace {

constexpr double kTinyEps = 1e-8;

// Term-by-term series in wide arithmetic; with |eps| <= 1e-8 ten terms put
// the truncation far below the wide rounding floor.
WideValue tiny_eps_delta(const WideValue& eps, const WideValue& alpha, unsigned prec) {
    const WideValue two(2.0, prec);
    WideValue acc(0.0, prec);
    WideValue ap = alpha;            // alpha^i before the multiply below
    WideValue pw = eps;              // eps^i likewise
    for (int i = 1; i <= 10; ++i) {
        ap = ap * alpha;             // alpha^(i+1)
        pw = pw * eps;               // eps^(i+1)
        const WideValue denom(static_cast<double>(i) * static_cast<double>(i + 1), prec);
        const WideValue bi = (i % 2 != 0) ? two * (WideValue(1.0, prec) - ap) / denom
                                          : -(two * (alpha - ap) / denom);
        acc += bi * pw;
    }
    return acc;
}

// (1+a)(1+e) ln(1+e) + (1-a)(1-e) ln(1-e) - 2(1+ae) ln(1+ae) in wide
// arithmetic, zero-coefficient terms skipped for the e = +-1, a = +-1 limits.
WideValue exact_bracket_wide(const WideValue& eps, const WideValue& alpha, unsigned prec) {
    const WideValue one(1.0, prec);
    WideValue acc(0.0, prec);
    const WideValue c1 = (one + alpha) * (one + eps);
    if (!c1.is_zero()) acc += c1 * ln1p(eps);
    const WideValue c2 = (one - alpha) * (one - eps);
    if (!c2.is_zero()) acc += c2 * ln1p(-eps);
    const WideValue ae = alpha * eps;
    const WideValue c3 = WideValue(2.0, prec) * (one + ae);
    if (!c3.is_zero()) acc -= c3 * ln1p(ae);
    return acc;
}

} // namespace

WideValue jsd_reference(const WeightedPair& pair, unsigned precision_bits) {
    const unsigned prec = precision_bits;
    const auto p1 = pair.p1();
    const auto p2 = pair.p2();
    const WideValue alpha = WideValue(pair.pi1(), prec) - WideValue(pair.pi2(), prec);
    const WideValue half(0.5, prec);

    WideValue acc(0.0, prec);
    for (std::size_t j = 0; j < p1.size(); ++j) {
        const WideValue pbar = half * (WideValue(p1[j], prec) + WideValue(p2[j], prec));
        if (pbar.is_zero()) continue;
        const WideValue eps = (half * (WideValue(p1[j], prec) - WideValue(p2[j], prec))) / pbar;
        const WideValue delta = (std::fabs(eps.to_double()) < kTinyEps)
                                    ? tiny_eps_delta(eps, alpha, prec)
                                    : exact_bracket_wide(eps, alpha, prec);
        acc += pbar * delta;
    }
    return half * acc;
}

double relative_difference(double value, const WideValue& reference) {
    if (reference.is_zero()) {
        if (value == 0.0) return 0.0;
        throw validation_error("relative_difference: undefined for zero reference");
    }
    const WideValue v(value, reference.precision_bits());
    return (abs(v - reference) / abs(reference)).to_double();
}

} // namespace jsd
