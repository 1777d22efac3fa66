#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "jsd/divergence.hpp"
#include "jsd/errors.hpp"
#include "jsd/experiments.hpp"
#include "jsd/io.hpp"
#include "jsd/pairgen.hpp"

namespace {

jsd::Units parse_units(const std::string& s) {
    if (s == "nats") return jsd::Units::nats;
    if (s == "bits") return jsd::Units::bits;
    throw jsd::validation_error("units must be nats or bits, got: " + s);
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const std::size_t end = s.find(',', start);
        const std::string piece = s.substr(start, end == std::string::npos ? end : end - start);
        std::size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(piece, &pos);
        } catch (const std::exception&) {
            throw jsd::validation_error("not an integer: " + piece);
        }
        if (pos != piece.size()) throw jsd::validation_error("trailing junk in: " + piece);
        out.push_back(v);
        if (end == std::string::npos) break;
        start = end + 1;
    }
    if (out.empty()) throw jsd::validation_error("empty integer list");
    return out;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw jsd::io_error("cannot open " + path + " for writing");
    out << text;
    out.flush();
    if (!out) throw jsd::io_error("write failed on " + path);
}

void print_value(double v) { std::printf("%.17g\n", v); }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Jensen-Shannon divergence toolkit"};
    app.require_subcommand(1);

    // compute
    auto* compute = app.add_subcommand("compute", "evaluate the divergence of two distributions");
    std::string p1_path, p2_path, method = "auto", units_name = "nats";
    double pi1 = 0.5;
    int order = 12;
    bool normalize = false;
    compute->add_option("--p1", p1_path, "first distribution file, one value per line")
        ->required();
    compute->add_option("--p2", p2_path, "second distribution file")->required();
    compute->add_option("--pi1", pi1, "weight of the first distribution");
    compute->add_option("--method", method, "naive | exact | series | auto");
    compute->add_option("--order", order, "series truncation order");
    compute->add_option("--units", units_name, "nats | bits");
    compute->add_flag("--normalize", normalize, "rescale inputs to unit sum first");
    compute->callback([&] {
        const jsd::Units units = parse_units(units_name);
        jsd::WeightedPair pair(jsd::read_distribution(p1_path), jsd::read_distribution(p2_path),
                               pi1, 1.0 - pi1, normalize);
        jsd::EvalResult r;
        if (method == "naive") r = jsd::jsd_naive(pair, units);
        else if (method == "exact") r = jsd::jsd_exact_reduced(pair, units);
        else if (method == "series") r = jsd::jsd_series(pair, order, units);
        else if (method == "auto") r = jsd::jsd_auto(pair, 1e-12, units);
        else throw jsd::validation_error("method must be naive, exact, series or auto");
        if (r.diagnostics.empty_bins)
            std::cerr << "note: bins empty in both distributions were ignored\n";
        print_value(r.value);
    });

    // coeffs
    auto* coeffs = app.add_subcommand("coeffs", "print series coefficients");
    double alpha = 0.0;
    int coeff_order = 12;
    coeffs->add_option("--alpha", alpha, "weight asymmetry in [-1,1]")->required();
    coeffs->add_option("--order", coeff_order, "highest coefficient index");
    coeffs->callback([&] {
        const jsd::SeriesCoefficients c = jsd::series_coefficients(alpha, coeff_order);
        for (int i = 1; i <= c.order; ++i) std::printf("%d\t%.17g\n", i, c.coeff(i));
    });

    // gen
    auto* gen = app.add_subcommand("gen", "generate a seeded distribution pair");
    jsd::GenSpec spec;
    std::string out_prefix;
    gen->add_option("--n", spec.n, "number of bins")->required();
    gen->add_option("--log10-eps", spec.target_log10_eps, "target log10 rms eps, < 0")
        ->required();
    gen->add_option("--alpha", spec.alpha, "weight asymmetry in [-1,1]");
    gen->add_option("--seed", spec.seed, "generator seed")->required();
    gen->add_option("--out", out_prefix, "output path prefix (.p1/.p2/.meta)")->required();
    gen->callback([&] {
        const jsd::GeneratedPair gp = jsd::sample_pair(spec);
        jsd::write_distribution(out_prefix + ".p1", gp.pair.p1());
        jsd::write_distribution(out_prefix + ".p2", gp.pair.p2());
        jsd::PairMeta meta;
        meta.seed = spec.seed;
        meta.n = spec.n;
        meta.target_log10_eps = spec.target_log10_eps;
        meta.achieved_log10_eps = std::log10(gp.achieved_eps_rms);
        meta.alpha = spec.alpha;
        jsd::write_pair_meta(out_prefix + ".meta", meta);
        print_value(meta.achieved_log10_eps);
    });

    // sweep
    auto* sweep = app.add_subcommand("sweep", "seeded experiment sweeps");
    sweep->require_subcommand(1);

    auto* acc = sweep->add_subcommand("accuracy", "error scaling of the series evaluator");
    jsd::SweepConfig acfg;
    std::string orders_text = "3,6,9,12", acc_csv, acc_svg;
    acc->add_option("--n", acfg.n, "bins per distribution");
    acc->add_option("--trials", acfg.trials, "number of seeded pairs");
    acc->add_option("--orders", orders_text, "comma separated truncation orders");
    acc->add_option("--eps-lo", acfg.eps_lo, "low end of the log10 eps target range");
    acc->add_option("--eps-hi", acfg.eps_hi, "high end of the log10 eps target range");
    acc->add_option("--alpha", acfg.alpha, "weight asymmetry in [-1,1]");
    acc->add_option("--seed", acfg.seed, "sweep seed");
    acc->add_option("--csv", acc_csv, "output CSV path")->required();
    acc->add_option("--svg", acc_svg, "optional scatter plot path");
    acc->callback([&] {
        acfg.orders = parse_int_list(orders_text);
        const std::vector<jsd::SweepRecord> records = jsd::run_accuracy_sweep(acfg);
        jsd::emit_csv(std::filesystem::path(acc_csv), records);
        const std::map<int, jsd::FitResult> fits = jsd::fit_sweep_slopes(records);
        for (const auto& [k, f] : fits)
            std::printf("k=%d slope=%.4f intercept=%.4f r2=%.4f n=%d window_decades=[%.2f,%.2f]\n",
                        k, f.slope, f.intercept, f.r_squared, f.n_points, f.x_lo, f.x_hi);
        if (!acc_svg.empty()) write_text_file(acc_svg, jsd::render_svg_scatter(records, fits));
    });

    auto* neg = sweep->add_subcommand("negativity", "sign failures of the naive evaluator");
    jsd::NegativityConfig ncfg;
    std::string buckets_text = "-8:-1:0.5", neg_csv, neg_svg;
    neg->add_option("--n", ncfg.n, "bins per distribution");
    neg->add_option("--trials-per-bucket", ncfg.trials_per_bucket, "pairs per bucket");
    neg->add_option("--buckets", buckets_text, "log10 eps targets, lo:hi:step or a,b,c");
    neg->add_option("--alpha", ncfg.alpha, "weight asymmetry in [-1,1]");
    neg->add_option("--seed", ncfg.seed, "sweep seed");
    neg->add_option("--order", ncfg.series_order, "series truncation order");
    neg->add_option("--csv", neg_csv, "output CSV path")->required();
    neg->add_option("--svg", neg_svg, "optional bar chart path");
    neg->callback([&] {
        ncfg.buckets = jsd::parse_buckets(buckets_text);
        const std::vector<jsd::NegativityRecord> records = jsd::run_negativity_sweep(ncfg);
        jsd::emit_negativity_csv(std::filesystem::path(neg_csv), records);
        for (const jsd::NegativityRecord& r : records)
            std::printf("bucket=%.3f frac_negative_naive=%.4f frac_negative_series=%.4f\n",
                        r.bucket_log10_eps, r.frac_negative_naive, r.frac_negative_series);
        if (!neg_svg.empty()) write_text_file(neg_svg, jsd::render_negativity_svg(records));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const jsd::io_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const jsd::generation_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const jsd::validation_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
