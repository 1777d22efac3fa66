#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace jsd {

enum class Units { nats, bits };

enum class Method { naive, exact_reduced, series, auto_select };

const char* to_string(Units u);
const char* to_string(Method m);

// Edge conditions observed while evaluating; informational, never fatal.
struct EvalDiagnostics {
    bool boundary_eps = false; // some bin has mass in only one distribution (eps_j = +-1)
    bool empty_bins = false;   // some bin has zero mass in both distributions
};

struct EvalResult {
    double value = 0.0;
    Units units = Units::nats;
    Method method = Method::naive; // evaluator that produced the value
    std::optional<int> order;      // series truncation order; set only on the series path
    bool via_auto = false;         // true when auto selection picked the method
    EvalDiagnostics diagnostics;
};

// A pair of distributions over the same bins plus mixture weights.
// Invariants hold from construction on: entries in [0,1], each distribution
// sums to 1 within kSumTolerance, weights are nonnegative and sum to 1
// within kWeightTolerance.
class WeightedPair {
public:
    static constexpr double kSumTolerance = 1e-12;
    static constexpr double kWeightTolerance = 1e-15;

    WeightedPair(std::vector<double> p1, std::vector<double> p2,
                 double pi1 = 0.5, double pi2 = 0.5, bool renormalize = false);

    std::span<const double> p1() const { return p1_; }
    std::span<const double> p2() const { return p2_; }
    double pi1() const { return pi1_; }
    double pi2() const { return pi2_; }
    std::size_t size() const { return p1_.size(); }

private:
    std::vector<double> p1_, p2_;
    double pi1_, pi2_;
};

// Change of variables: pbar_j = (p1_j + p2_j)/2, eta_j = (p1_j - p2_j)/2,
// eps_j = eta_j / pbar_j (0 when pbar_j = 0), alpha = pi1 - pi2.
struct ReducedForm {
    std::vector<double> pbar;
    std::vector<double> eta;
    std::vector<double> eps;
    double alpha = 0.0;
    bool empty_bins = false;   // some pbar_j was zero; eps_j forced to 0 there
    bool boundary_eps = false; // some |eps_j| == 1
    std::size_t size() const { return pbar.size(); }
};

// Per-order weights b[i-1] = B_i of the power series in eps.
struct SeriesCoefficients {
    double alpha = 0.0;
    int order = 0;
    std::vector<double> b;
    double coeff(int i) const { return b[static_cast<std::size_t>(i) - 1]; }
};

} // namespace jsd
