#pragma once

#include <span>

#include "jsd/types.hpp"

namespace jsd {

// Shannon entropy in nats, with the 0*ln(0) = 0 convention.
// Deliberately a plain left-to-right sum: this is the building block of the
// naive evaluator, whose rounding behavior at small divergences is itself an
// object of study here.
double entropy(std::span<const double> p);

ReducedForm reduce(const WeightedPair& pair);

// sqrt(sum eps_j^2 / n): scale parameter used throughout the experiments.
double epsilon_rms_norm(const ReducedForm& rf);

// B_1..B_order in closed form:
//   odd i:  B_i =  2 (1 - alpha^(i+1)) / (i (i+1))
//   even i: B_i = -2 (alpha - alpha^(i+1)) / (i (i+1))
// Alpha powers by iterated multiplication; denominators as exact integers.
SeriesCoefficients series_coefficients(double alpha, int order);

// Per-bin series sum_{i=1..order} B_i eps^(i+1), accumulated in adjacent
// pairs (B_{2i-1} + B_{2i} eps) eps^{2i}. Each pair is nonnegative because
// |B_{2i} eps| <= B_{2i-1} (2i-1)/(2i+1), so the sum is nonnegative at the
// bit level, never by clamping.
double delta_series(double eps, double alpha, int order);

// H[pi1 p1 + pi2 p2] - (pi1 H[p1] + pi2 H[p2]), exactly as written.
// Subject to catastrophic cancellation when p1 is close to p2: the result
// can come out negative even though the true value never is.
EvalResult jsd_naive(const WeightedPair& pair, Units units = Units::nats);

// Algebraically identical reduced form
//   1/2 sum_j pbar_j [ (1+alpha)(1+eps) ln(1+eps)
//                    + (1-alpha)(1-eps) ln(1-eps)
//                    - 2 (1+alpha eps) ln(1+alpha eps) ]
// with zero-coefficient terms skipped so eps_j = +-1 takes its finite limit.
EvalResult jsd_exact_reduced(const WeightedPair& pair, Units units = Units::nats);

// Truncated series 1/2 sum_j pbar_j delta_series(eps_j); nonnegative at the
// bit level for every order >= 1.
EvalResult jsd_series(const WeightedPair& pair, int order, Units units = Units::nats);

// If max|eps_j| < 0.5, grows the series by coefficient pairs until the last
// pair contributes less than rel_tol of the accumulated value (order cap 64)
// and reports the resolved order; otherwise falls back to jsd_exact_reduced.
EvalResult jsd_auto(const WeightedPair& pair, double rel_tol = 1e-12,
                    Units units = Units::nats);

} // namespace jsd
