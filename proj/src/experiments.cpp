#include "jsd/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "jsd/divergence.hpp"
#include "jsd/errors.hpp"
#include "jsd/oracle.hpp"
#include "jsd/pairgen.hpp"
#include "jsd/rng.hpp"

namespace jsd {

namespace {

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fixed(double x, int digits) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

void check_common(std::size_t n, double alpha, std::uint64_t) {
    if (n < 2) throw validation_error("sweep: n must be >= 2");
    if (!(std::fabs(alpha) <= 1.0)) throw validation_error("sweep: |alpha| must be <= 1");
}

// Redraws on infeasible targets so one unlucky geometry cannot kill a sweep;
// seeds come from the per-trial stream, so the result stays deterministic.
GeneratedPair sample_with_retry(std::size_t n, double target, double alpha, Rng& trial_rng) {
    for (int redraw = 0;; ++redraw) {
        GenSpec spec;
        spec.n = n;
        spec.target_log10_eps = target;
        spec.alpha = alpha;
        spec.seed = trial_rng.next_u64();
        try {
            return sample_pair(spec);
        } catch (const generation_error&) {
            if (redraw >= 7) throw;
        }
    }
}

} // namespace

std::vector<SweepRecord> run_accuracy_sweep(const SweepConfig& config) {
    check_common(config.n, config.alpha, config.seed);
    if (config.trials < 1) throw validation_error("sweep: trials must be >= 1");
    if (config.orders.empty()) throw validation_error("sweep: orders must be non-empty");
    for (int k : config.orders)
        if (k < 1) throw validation_error("sweep: orders must be >= 1");
    if (!(config.eps_lo < config.eps_hi) || config.eps_hi > 0.0)
        throw validation_error("sweep: need eps_lo < eps_hi <= 0");

    std::vector<SweepRecord> out;
    out.reserve(static_cast<std::size_t>(config.trials) * config.orders.size());
    for (int t = 0; t < config.trials; ++t) {
        Rng trial_rng(derive_seed(config.seed, static_cast<std::uint64_t>(t)));
        double target = config.eps_lo + (config.eps_hi - config.eps_lo) * trial_rng.uniform01();
        if (!(target < 0.0)) target = -1e-12;
        const GeneratedPair gp = sample_with_retry(config.n, target, config.alpha, trial_rng);

        const double oracle = jsd_reference(gp.pair).to_double();
        const double naive = jsd_naive(gp.pair).value;
        const double exact = jsd_exact_reduced(gp.pair).value;
        const double lg = std::log10(gp.achieved_eps_rms);
        for (int k : config.orders) {
            const double series = jsd_series(gp.pair, k).value;
            double rel = std::numeric_limits<double>::quiet_NaN();
            if (oracle > 0.0) rel = std::fabs(series - oracle) / oracle;
            else if (series == 0.0) rel = 0.0;
            out.push_back({t, lg, oracle, naive, exact, k, series, rel});
        }
    }
    return out;
}

FitResult fit_loglog_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw validation_error("fit: x and y sizes differ");
    if (x.size() < 2) throw insufficient_data_error("fit: need at least two points");
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0;
    std::vector<double> ly(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(y[i] > 0.0)) throw validation_error("fit: y must be positive");
        ly[i] = std::log10(y[i]);
        sx += x[i];
        sy += ly[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx, dy = ly[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw insufficient_data_error("fit: x values are all identical");
    FitResult fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    const double ss_res = std::max(0.0, syy - fit.slope * sxy);
    fit.r_squared = (syy > 0.0) ? 1.0 - ss_res / syy : 1.0;
    fit.n_points = static_cast<int>(x.size());
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    fit.x_lo = *lo;
    fit.x_hi = *hi;
    return fit;
}

std::map<int, FitResult> fit_sweep_slopes(std::span<const SweepRecord> records,
                                          const FitPolicy& policy) {
    std::map<int, std::pair<std::vector<double>, std::vector<double>>> pts;
    for (const SweepRecord& rec : records) {
        if (!(rec.jsd_oracle > 0.0)) continue;
        const double xdec = -rec.log10_eps;
        if (xdec < policy.min_decades) continue;
        if (!(rec.rel_diff > policy.rel_floor)) continue;
        const double rel_naive = std::fabs(rec.jsd_naive - rec.jsd_oracle) / rec.jsd_oracle;
        if (rec.rel_diff < policy.noise_margin * rel_naive) continue;
        auto& [xs, ys] = pts[rec.k];
        xs.push_back(xdec);
        ys.push_back(rec.rel_diff);
    }
    if (pts.empty()) throw insufficient_data_error("fit: no usable points in any order");
    std::map<int, FitResult> fits;
    for (auto& [k, xy] : pts) fits[k] = fit_loglog_slope(xy.first, xy.second);
    return fits;
}

std::vector<NegativityRecord> run_negativity_sweep(const NegativityConfig& config) {
    check_common(config.n, config.alpha, config.seed);
    if (config.trials_per_bucket < 1)
        throw validation_error("sweep: trials_per_bucket must be >= 1");
    if (config.buckets.empty()) throw validation_error("sweep: buckets must be non-empty");
    for (double b : config.buckets)
        if (!(b < 0.0)) throw validation_error("sweep: buckets must be < 0");
    if (config.series_order < 1) throw validation_error("sweep: series_order must be >= 1");

    std::vector<NegativityRecord> out;
    out.reserve(config.buckets.size());
    for (std::size_t bi = 0; bi < config.buckets.size(); ++bi) {
        const std::uint64_t bucket_seed = derive_seed(config.seed, bi);
        NegativityRecord rec;
        rec.bucket_log10_eps = config.buckets[bi];
        rec.trials = config.trials_per_bucket;
        for (int t = 0; t < config.trials_per_bucket; ++t) {
            Rng trial_rng(derive_seed(bucket_seed, static_cast<std::uint64_t>(t)));
            const GeneratedPair gp =
                sample_with_retry(config.n, config.buckets[bi], config.alpha, trial_rng);
            if (jsd_naive(gp.pair).value < 0.0) ++rec.negative_naive;
            if (jsd_series(gp.pair, config.series_order).value < 0.0) ++rec.negative_series;
        }
        const double m = static_cast<double>(rec.trials);
        rec.frac_negative_naive = rec.negative_naive / m;
        rec.frac_negative_series = rec.negative_series / m;
        out.push_back(rec);
    }
    return out;
}

std::vector<double> parse_buckets(std::string_view text) {
    auto parse_one = [](std::string_view piece) {
        std::string s(piece);
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &pos);
        } catch (const std::exception&) {
            throw validation_error("buckets: not a number: " + s);
        }
        if (pos != s.size()) throw validation_error("buckets: trailing junk in: " + s);
        return v;
    };
    std::vector<std::string_view> parts;
    const char sep = text.find(':') != std::string_view::npos ? ':' : ',';
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = text.find(sep, start);
        if (end == std::string_view::npos) {
            parts.push_back(text.substr(start));
            break;
        }
        parts.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    if (sep == ':') {
        if (parts.size() != 3) throw validation_error("buckets: expected lo:hi:step");
        const double lo = parse_one(parts[0]);
        const double hi = parse_one(parts[1]);
        const double step = parse_one(parts[2]);
        if (!(step > 0.0) || !(lo <= hi)) throw validation_error("buckets: bad lo:hi:step range");
        std::vector<double> out;
        for (int i = 0;; ++i) {
            const double v = lo + step * i;
            if (v > hi + step * 1e-9) break;
            out.push_back(std::min(v, hi));
        }
        return out;
    }
    std::vector<double> out;
    for (auto piece : parts) out.push_back(parse_one(piece));
    if (out.empty()) throw validation_error("buckets: empty list");
    return out;
}

void emit_csv(std::ostream& out, std::span<const SweepRecord> records) {
    if (records.empty()) throw validation_error("emit_csv: no records");
    out << "trial,log10_eps,jsd_oracle,jsd_naive,jsd_exact,k,jsd_series,rel_diff\n";
    for (const SweepRecord& r : records) {
        out << r.trial << ',' << num(r.log10_eps) << ',' << num(r.jsd_oracle) << ','
            << num(r.jsd_naive) << ',' << num(r.jsd_exact) << ',' << r.k << ','
            << num(r.jsd_series) << ',';
        if (!std::isnan(r.rel_diff)) out << num(r.rel_diff);
        out << '\n';
    }
}

void emit_csv(const std::filesystem::path& path, std::span<const SweepRecord> records) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open " + path.string() + " for writing");
    emit_csv(out, records);
    out.flush();
    if (!out) throw io_error("write failed on " + path.string());
}

void emit_negativity_csv(std::ostream& out, std::span<const NegativityRecord> records) {
    if (records.empty()) throw validation_error("emit_negativity_csv: no records");
    out << "bucket_log10_eps,trials,negative_naive,negative_series,"
           "frac_negative_naive,frac_negative_series\n";
    for (const NegativityRecord& r : records) {
        out << num(r.bucket_log10_eps) << ',' << r.trials << ',' << r.negative_naive << ','
            << r.negative_series << ',' << num(r.frac_negative_naive) << ','
            << num(r.frac_negative_series) << '\n';
    }
}

void emit_negativity_csv(const std::filesystem::path& path,
                         std::span<const NegativityRecord> records) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open " + path.string() + " for writing");
    emit_negativity_csv(out, records);
    out.flush();
    if (!out) throw io_error("write failed on " + path.string());
}

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b"};

struct AxisMap {
    double lo = 0.0, hi = 1.0; // data
    double p0 = 0.0, p1 = 1.0; // pixels
    double at(double v) const { return p0 + (v - lo) / (hi - lo) * (p1 - p0); }
};

void draw_frame(std::ostringstream& svg, const AxisMap& xm, const AxisMap& ym,
                const std::string& xlabel, const std::string& ylabel) {
    svg << "<rect x='" << fixed(xm.p0, 1) << "' y='" << fixed(ym.p1, 1) << "' width='"
        << fixed(xm.p1 - xm.p0, 1) << "' height='" << fixed(ym.p0 - ym.p1, 1)
        << "' fill='none' stroke='#333'/>\n";
    for (int t = static_cast<int>(std::ceil(xm.lo)); t <= static_cast<int>(std::floor(xm.hi));
         ++t) {
        const double px = xm.at(t);
        svg << "<line x1='" << fixed(px, 1) << "' y1='" << fixed(ym.p0, 1) << "' x2='"
            << fixed(px, 1) << "' y2='" << fixed(ym.p0 + 5, 1) << "' stroke='#333'/>\n"
            << "<text x='" << fixed(px, 1) << "' y='" << fixed(ym.p0 + 18, 1)
            << "' font-size='11' text-anchor='middle'>" << t << "</text>\n";
    }
    for (int t = static_cast<int>(std::ceil(ym.lo)); t <= static_cast<int>(std::floor(ym.hi));
         ++t) {
        const double py = ym.at(t);
        svg << "<line x1='" << fixed(xm.p0 - 5, 1) << "' y1='" << fixed(py, 1) << "' x2='"
            << fixed(xm.p0, 1) << "' y2='" << fixed(py, 1) << "' stroke='#333'/>\n"
            << "<text x='" << fixed(xm.p0 - 8, 1) << "' y='" << fixed(py + 4, 1)
            << "' font-size='11' text-anchor='end'>" << t << "</text>\n";
    }
    const double xc = 0.5 * (xm.p0 + xm.p1);
    const double yc = 0.5 * (ym.p0 + ym.p1);
    svg << "<text x='" << fixed(xc, 1) << "' y='" << fixed(ym.p0 + 40, 1)
        << "' font-size='13' text-anchor='middle'>" << xlabel << "</text>\n"
        << "<text x='" << fixed(xm.p0 - 45, 1) << "' y='" << fixed(yc, 1)
        << "' font-size='13' text-anchor='middle' transform='rotate(-90 "
        << fixed(xm.p0 - 45, 1) << ' ' << fixed(yc, 1) << ")'>" << ylabel << "</text>\n";
}

} // namespace

std::string render_svg_scatter(std::span<const SweepRecord> records,
                               const std::map<int, FitResult>& fits) {
    struct Pt {
        double x, y;
    };
    std::map<int, std::vector<Pt>> series;
    double xlo = 0.0, xhi = 0.0, ylo = 0.0, yhi = 0.0;
    bool any = false;
    for (const SweepRecord& r : records) {
        if (!(r.rel_diff > 0.0) || !std::isfinite(r.rel_diff)) continue;
        const Pt p{r.log10_eps, std::log10(r.rel_diff)};
        if (!any) {
            xlo = xhi = p.x;
            ylo = yhi = p.y;
            any = true;
        }
        xlo = std::min(xlo, p.x);
        xhi = std::max(xhi, p.x);
        ylo = std::min(ylo, p.y);
        yhi = std::max(yhi, p.y);
        series[r.k].push_back(p);
    }
    if (!any) throw validation_error("render_svg_scatter: no plottable points");
    const double xpad = 0.05 * std::max(1e-6, xhi - xlo);
    const double ypad = 0.05 * std::max(1e-6, yhi - ylo);
    const AxisMap xm{xlo - xpad, xhi + xpad, 70.0, 690.0};
    const AxisMap ym{ylo - ypad, yhi + ypad, 560.0, 40.0};

    std::ostringstream svg;
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='860' height='620' "
           "viewBox='0 0 860 620'>\n"
        << "<rect width='860' height='620' fill='white'/>\n"
        << "<clipPath id='plot'><rect x='70' y='40' width='620' height='520'/></clipPath>\n";
    draw_frame(svg, xm, ym, "log10 rms eps", "log10 relative error");

    int ci = 0;
    double legend_y = 60.0;
    for (const auto& [k, pts] : series) {
        const char* color = kPalette[ci % 6];
        svg << "<g id='series-k" << k << "' clip-path='url(#plot)' fill='" << color
            << "' fill-opacity='0.45'>\n";
        for (const Pt& p : pts)
            svg << "<circle cx='" << fixed(xm.at(p.x), 1) << "' cy='" << fixed(ym.at(p.y), 1)
                << "' r='2.2'/>\n";
        svg << "</g>\n";
        std::string label = "k=" + std::to_string(k);
        if (auto it = fits.find(k); it != fits.end()) {
            const FitResult& f = it->second;
            const double xa = -f.x_hi, xb = -f.x_lo; // back to log10 eps
            const double ya = f.intercept + f.slope * f.x_hi;
            const double yb = f.intercept + f.slope * f.x_lo;
            svg << "<line clip-path='url(#plot)' x1='" << fixed(xm.at(xa), 1) << "' y1='"
                << fixed(ym.at(ya), 1) << "' x2='" << fixed(xm.at(xb), 1) << "' y2='"
                << fixed(ym.at(yb), 1) << "' stroke='" << color
                << "' stroke-width='1.6' stroke-dasharray='6 3'/>\n";
            label += " slope " + fixed(f.slope, 2);
        }
        svg << "<circle cx='706' cy='" << fixed(legend_y - 4, 1) << "' r='4' fill='" << color
            << "'/>\n"
            << "<text x='716' y='" << fixed(legend_y, 1) << "' font-size='12'>" << label
            << "</text>\n";
        legend_y += 20.0;
        ++ci;
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string render_negativity_svg(std::span<const NegativityRecord> records) {
    if (records.empty()) throw validation_error("render_negativity_svg: no records");
    double fmax = 0.0;
    for (const NegativityRecord& r : records)
        fmax = std::max({fmax, r.frac_negative_naive, r.frac_negative_series});
    const double ytop = std::max(0.1, 1.08 * fmax);
    const double plot_x0 = 70.0, plot_x1 = 820.0, plot_y0 = 330.0, plot_y1 = 40.0;
    const double slot = (plot_x1 - plot_x0) / static_cast<double>(records.size());
    const double bw = 0.32 * slot;
    auto ypix = [&](double frac) { return plot_y0 + (frac / ytop) * (plot_y1 - plot_y0); };

    std::ostringstream svg;
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='860' height='420' "
           "viewBox='0 0 860 420'>\n"
        << "<rect width='860' height='420' fill='white'/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double frac = ytop * i / 4.0;
        const double py = ypix(frac);
        svg << "<line x1='" << fixed(plot_x0, 1) << "' y1='" << fixed(py, 1) << "' x2='"
            << fixed(plot_x1, 1) << "' y2='" << fixed(py, 1) << "' stroke='#ddd'/>\n"
            << "<text x='" << fixed(plot_x0 - 8, 1) << "' y='" << fixed(py + 4, 1)
            << "' font-size='11' text-anchor='end'>" << fixed(frac, 3) << "</text>\n";
    }
    for (std::size_t i = 0; i < records.size(); ++i) {
        const NegativityRecord& r = records[i];
        const double cx = plot_x0 + slot * (static_cast<double>(i) + 0.5);
        const double yn = ypix(r.frac_negative_naive);
        const double ys = ypix(r.frac_negative_series);
        svg << "<rect x='" << fixed(cx - bw, 1) << "' y='" << fixed(yn, 1) << "' width='"
            << fixed(bw, 1) << "' height='" << fixed(plot_y0 - yn, 1) << "' fill='#d62728'/>\n"
            << "<rect x='" << fixed(cx, 1) << "' y='" << fixed(ys, 1) << "' width='"
            << fixed(bw, 1) << "' height='" << fixed(plot_y0 - ys, 1) << "' fill='#1f77b4'/>\n"
            << "<text x='" << fixed(cx, 1) << "' y='" << fixed(plot_y0 + 14, 1)
            << "' font-size='11' text-anchor='end' transform='rotate(-40 " << fixed(cx, 1)
            << ' ' << fixed(plot_y0 + 14, 1) << ")'>" << fixed(r.bucket_log10_eps, 2)
            << "</text>\n";
    }
    svg << "<rect x='" << fixed(plot_x0, 1) << "' y='" << fixed(plot_y1, 1) << "' width='"
        << fixed(plot_x1 - plot_x0, 1) << "' height='" << fixed(plot_y0 - plot_y1, 1)
        << "' fill='none' stroke='#333'/>\n"
        << "<rect x='640' y='50' width='12' height='12' fill='#d62728'/>"
        << "<text x='658' y='60' font-size='12'>naive sign failures</text>\n"
        << "<rect x='640' y='70' width='12' height='12' fill='#1f77b4'/>"
        << "<text x='658' y='80' font-size='12'>series sign failures</text>\n"
        << "<text x='445' y='400' font-size='13' text-anchor='middle'>"
           "target log10 rms eps</text>\n"
        << "<text x='20' y='185' font-size='13' text-anchor='middle' "
           "transform='rotate(-90 20 185)'>fraction negative</text>\n"
        << "</svg>\n";
    return svg.str();
}

} // namespace jsd
