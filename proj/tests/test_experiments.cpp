#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "jsd/errors.hpp"
#include "jsd/experiments.hpp"

using namespace jsd;

namespace {

SweepConfig small_config() {
    SweepConfig cfg;
    cfg.n = 20;
    cfg.trials = 40;
    cfg.orders = {3, 6};
    cfg.seed = 777;
    return cfg;
}

} // namespace

TEST_CASE("slope fit recovers an exact power law") {
    const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
    std::vector<double> y;
    for (double xi : x) y.push_back(std::pow(10.0, -3.0 * xi + 0.5));
    const FitResult fit = fit_loglog_slope(x, y);
    CHECK(fit.slope == doctest::Approx(-3.0).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.n_points == 4);
    CHECK(fit.x_lo == 1.0);
    CHECK(fit.x_hi == 4.0);
}

TEST_CASE("slope fit rejects unusable inputs") {
    const std::vector<double> one_x{1.0};
    const std::vector<double> one_y{0.1};
    CHECK_THROWS_AS((void)fit_loglog_slope(one_x, one_y), insufficient_data_error);
    const std::vector<double> same_x{2.0, 2.0, 2.0};
    const std::vector<double> ys{0.1, 0.2, 0.3};
    CHECK_THROWS_AS((void)fit_loglog_slope(same_x, ys), insufficient_data_error);
    const std::vector<double> xs{1.0, 2.0, 3.0};
    const std::vector<double> bad_y{0.1, -0.2, 0.3};
    CHECK_THROWS_AS((void)fit_loglog_slope(xs, bad_y), validation_error);
    const std::vector<double> short_y{0.1, 0.2};
    CHECK_THROWS_AS((void)fit_loglog_slope(xs, short_y), validation_error);
}

TEST_CASE("sweep slope fitting applies its point filters") {
    std::vector<SweepRecord> records;
    auto add = [&](double log10_eps, double rel_diff, double naive) {
        SweepRecord r;
        r.trial = static_cast<int>(records.size());
        r.log10_eps = log10_eps;
        r.jsd_oracle = 1.0;
        r.jsd_naive = naive;
        r.jsd_exact = 1.0;
        r.k = 3;
        r.jsd_series = 1.0;
        r.rel_diff = rel_diff;
        records.push_back(r);
    };
    // clean power law rel = 10^(4*log10_eps), naive error small
    for (double x = -3.0; x <= -0.5; x += 0.5) add(x, std::pow(10.0, 4.0 * x), 1.0);
    add(-0.1, 1e-1, 1.0);                                  // inside the min-decades cut
    add(-2.0, 1e-14, 1.0);                                 // below the rel floor
    add(-2.0, 1e-8, 1.5);                                  // naive noise dominates
    add(-2.0, std::numeric_limits<double>::quiet_NaN(), 1.0); // undefined rel
    const auto fits = fit_sweep_slopes(records);
    REQUIRE(fits.count(3) == 1);
    const FitResult& fit = fits.at(3);
    CHECK(fit.n_points == 6);
    CHECK(fit.slope == doctest::Approx(-4.0).epsilon(1e-9));
    CHECK(fit.x_lo == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(fit.x_hi == doctest::Approx(3.0).epsilon(1e-12));

    FitPolicy no_floor;
    no_floor.rel_floor = 1e-16;
    CHECK(fit_sweep_slopes(records, no_floor).at(3).n_points == 7);
}

TEST_CASE("accuracy sweep produces well-formed deterministic records") {
    const SweepConfig cfg = small_config();
    const std::vector<SweepRecord> a = run_accuracy_sweep(cfg);
    const std::vector<SweepRecord> b = run_accuracy_sweep(cfg);
    REQUIRE(a.size() == static_cast<std::size_t>(cfg.trials) * cfg.orders.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].jsd_oracle > 0.0);
        CHECK(a[i].jsd_series >= 0.0);
        CHECK(a[i].log10_eps < 0.05);
        CHECK(a[i].log10_eps > -4.1);
        CHECK(a[i].k == cfg.orders[i % cfg.orders.size()]);
    }
    std::ostringstream csv_a, csv_b;
    emit_csv(csv_a, a);
    emit_csv(csv_b, b);
    CHECK(csv_a.str() == csv_b.str());
    CHECK(csv_a.str().rfind("trial,log10_eps,jsd_oracle,jsd_naive,jsd_exact,k,jsd_series,"
                            "rel_diff\n", 0) == 0);
}

TEST_CASE("sweep validation") {
    SweepConfig cfg = small_config();
    cfg.trials = 0;
    CHECK_THROWS_AS((void)run_accuracy_sweep(cfg), validation_error);
    cfg = small_config();
    cfg.orders = {};
    CHECK_THROWS_AS((void)run_accuracy_sweep(cfg), validation_error);
    cfg = small_config();
    cfg.eps_lo = 0.5;
    CHECK_THROWS_AS((void)run_accuracy_sweep(cfg), validation_error);
    cfg = small_config();
    cfg.n = 1;
    CHECK_THROWS_AS((void)run_accuracy_sweep(cfg), validation_error);
}

TEST_CASE("csv emission formats missing relative differences as empty") {
    SweepRecord r;
    r.trial = 0;
    r.log10_eps = -1.0;
    r.jsd_oracle = 0.0;
    r.jsd_naive = 0.0;
    r.jsd_exact = 0.0;
    r.k = 3;
    r.jsd_series = 0.0;
    r.rel_diff = std::numeric_limits<double>::quiet_NaN();
    std::ostringstream out;
    emit_csv(out, std::vector<SweepRecord>{r});
    const std::string text = out.str();
    CHECK(text.find(",3,0,\n") != std::string::npos);
    CHECK_THROWS_AS(emit_csv(out, std::vector<SweepRecord>{}), validation_error);
}

TEST_CASE("negativity sweep counts sign failures deterministically") {
    NegativityConfig cfg;
    cfg.n = 50;
    cfg.trials_per_bucket = 40;
    cfg.buckets = {-8.0, -2.0};
    cfg.seed = 99;
    const std::vector<NegativityRecord> a = run_negativity_sweep(cfg);
    const std::vector<NegativityRecord> b = run_negativity_sweep(cfg);
    REQUIRE(a.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(a[i].trials == 40);
        CHECK(a[i].negative_series == 0);
        CHECK(a[i].frac_negative_series == 0.0);
        CHECK(a[i].negative_naive >= 0);
        CHECK(a[i].negative_naive == b[i].negative_naive);
        CHECK(a[i].frac_negative_naive <= 1.0);
    }
    CHECK(a[1].negative_naive == 0); // sign failures cannot happen at large eps

    std::ostringstream csv;
    emit_negativity_csv(csv, a);
    CHECK(csv.str().rfind("bucket_log10_eps,trials,negative_naive,negative_series,"
                          "frac_negative_naive,frac_negative_series\n", 0) == 0);
    CHECK_THROWS_AS(emit_negativity_csv(csv, std::vector<NegativityRecord>{}),
                    validation_error);
}

TEST_CASE("negativity sweep validation") {
    NegativityConfig cfg;
    cfg.buckets = {};
    CHECK_THROWS_AS((void)run_negativity_sweep(cfg), validation_error);
    cfg.buckets = {1.0};
    CHECK_THROWS_AS((void)run_negativity_sweep(cfg), validation_error);
    cfg.buckets = {-2.0};
    cfg.trials_per_bucket = 0;
    CHECK_THROWS_AS((void)run_negativity_sweep(cfg), validation_error);
}

TEST_CASE("bucket grids parse") {
    const std::vector<double> grid = parse_buckets("-8:-1:0.5");
    REQUIRE(grid.size() == 15);
    CHECK(grid.front() == doctest::Approx(-8.0));
    CHECK(grid.back() == doctest::Approx(-1.0));
    const std::vector<double> list = parse_buckets("-3,-2.5,-2");
    REQUIRE(list.size() == 3);
    CHECK(list[1] == doctest::Approx(-2.5));
    const std::vector<double> single = parse_buckets("-4");
    REQUIRE(single.size() == 1);
    CHECK(single[0] == doctest::Approx(-4.0));
    CHECK_THROWS_AS((void)parse_buckets("-1:-8:0.5"), validation_error);
    CHECK_THROWS_AS((void)parse_buckets("-8:-1:-0.5"), validation_error);
    CHECK_THROWS_AS((void)parse_buckets("-8:-1"), validation_error);
    CHECK_THROWS_AS((void)parse_buckets("zebra"), validation_error);
    CHECK_THROWS_AS((void)parse_buckets("-3,,-2"), validation_error);
}

TEST_CASE("svg rendering is structurally sound") {
    const SweepConfig cfg = small_config();
    const std::vector<SweepRecord> records = run_accuracy_sweep(cfg);
    const auto fits = fit_sweep_slopes(records);
    const std::string svg = render_svg_scatter(records, fits);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("series-k3") != std::string::npos);
    CHECK(svg.find("series-k6") != std::string::npos);
    CHECK(svg.find("<circle") != std::string::npos);
    CHECK(svg.find("slope") != std::string::npos);
    CHECK_THROWS_AS((void)render_svg_scatter({}, {}), validation_error);

    NegativityConfig ncfg;
    ncfg.n = 50;
    ncfg.trials_per_bucket = 20;
    ncfg.buckets = {-8.0, -2.0};
    const std::vector<NegativityRecord> nrec = run_negativity_sweep(ncfg);
    const std::string nsvg = render_negativity_svg(nrec);
    CHECK(nsvg.rfind("<svg", 0) == 0);
    CHECK(nsvg.find("</svg>") != std::string::npos);
    CHECK(nsvg.find("fraction negative") != std::string::npos);
    CHECK_THROWS_AS((void)render_negativity_svg({}), validation_error);
}
