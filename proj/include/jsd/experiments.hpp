#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace jsd {

// Accuracy sweep: seeded pairs with log10 eps targets drawn uniformly from
// [eps_lo, eps_hi), evaluated by every method against the wide reference.
struct SweepConfig {
    std::size_t n = 100;
    int trials = 2000;
    std::vector<int> orders = {3, 6, 9, 12};
    double eps_lo = -4.0;
    double eps_hi = 0.0;
    double alpha = 0.0;
    std::uint64_t seed = 20240101;
};

// One row per (trial, order). Values are in nats. rel_diff is the series
// error relative to the reference; NaN when the reference is zero.
struct SweepRecord {
    int trial = 0;
    double log10_eps = 0.0;
    double jsd_oracle = 0.0;
    double jsd_naive = 0.0;
    double jsd_exact = 0.0;
    int k = 0;
    double jsd_series = 0.0;
    double rel_diff = 0.0;
};

std::vector<SweepRecord> run_accuracy_sweep(const SweepConfig& config);

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    int n_points = 0;
    double x_lo = 0.0;
    double x_hi = 0.0;
};

// Point filters applied before fitting error-scaling slopes.
// x is decades of shrink (-log10 eps), so slopes come out negative.
struct FitPolicy {
    double min_decades = 0.3;   // drop pairs too close to the eps = 1 boundary
    double rel_floor = 1e-13;   // drop points at the double rounding floor
    double noise_margin = 10.0; // drop points where naive rounding noise dominates
};

// Least squares of log10(y) on x. Throws insufficient_data_error
// when fewer than two usable points remain.
FitResult fit_loglog_slope(std::span<const double> x, std::span<const double> y);

// Per-order slope fits of the series relative error against decades of shrink.
std::map<int, FitResult> fit_sweep_slopes(std::span<const SweepRecord> records,
                                          const FitPolicy& policy = {});

// Negativity sweep: at each log10 eps bucket, counts sign failures of the
// naive evaluator and of the series evaluator at a fixed order.
struct NegativityConfig {
    std::size_t n = 100;
    int trials_per_bucket = 300;
    std::vector<double> buckets;
    double alpha = 0.0;
    std::uint64_t seed = 20240101;
    int series_order = 12;
};

struct NegativityRecord {
    double bucket_log10_eps = 0.0;
    int trials = 0;
    int negative_naive = 0;
    int negative_series = 0;
    double frac_negative_naive = 0.0;
    double frac_negative_series = 0.0;
};

std::vector<NegativityRecord> run_negativity_sweep(const NegativityConfig& config);

// "lo:hi:step" inclusive grid, "a,b,c" list, or a single value.
std::vector<double> parse_buckets(std::string_view text);

// Deterministic CSV with a fixed header; round-trip precision fields,
// NaN rel_diff emitted as an empty field. Throws on empty input.
void emit_csv(std::ostream& out, std::span<const SweepRecord> records);
void emit_csv(const std::filesystem::path& path, std::span<const SweepRecord> records);

void emit_negativity_csv(std::ostream& out, std::span<const NegativityRecord> records);
void emit_negativity_csv(const std::filesystem::path& path,
                         std::span<const NegativityRecord> records);

// Self-contained SVG: per-order scatter groups (id="series-k<K>"),
// fitted slope lines, axes, legend.
std::string render_svg_scatter(std::span<const SweepRecord> records,
                               const std::map<int, FitResult>& fits);

// Self-contained SVG: sign-failure fraction per bucket for both evaluators.
std::string render_negativity_svg(std::span<const NegativityRecord> records);

} // namespace jsd
