#include "jsd/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "jsd/errors.hpp"

namespace jsd {

namespace {

std::string format_value(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

bool blank(const std::string& line) {
    for (unsigned char ch : line)
        if (!std::isspace(ch)) return false;
    return true;
}

} // namespace

std::vector<double> read_distribution(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path.string());
    std::vector<double> values;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (blank(line)) continue;
        std::size_t pos = 0;
        double x = 0.0;
        try {
            x = std::stod(line, &pos);
        } catch (const std::exception&) {
            throw io_error(path.string() + ":" + std::to_string(lineno) + ": not a number");
        }
        while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
        if (pos != line.size())
            throw io_error(path.string() + ":" + std::to_string(lineno) + ": trailing junk");
        if (!std::isfinite(x) || x < 0.0)
            throw io_error(path.string() + ":" + std::to_string(lineno) +
                           ": entries must be finite and non-negative");
        values.push_back(x);
    }
    if (in.bad()) throw io_error("read failed on " + path.string());
    return values;
}

void write_distribution(const std::filesystem::path& path, std::span<const double> values) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open " + path.string() + " for writing");
    for (double x : values) out << format_value(x) << '\n';
    out.flush();
    if (!out) throw io_error("write failed on " + path.string());
}

void write_pair_meta(const std::filesystem::path& path, const PairMeta& meta) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open " + path.string() + " for writing");
    out << "seed=" << meta.seed << '\n'
        << "n=" << meta.n << '\n'
        << "target_log10_eps=" << format_value(meta.target_log10_eps) << '\n'
        << "achieved_log10_eps=" << format_value(meta.achieved_log10_eps) << '\n'
        << "alpha=" << format_value(meta.alpha) << '\n';
    out.flush();
    if (!out) throw io_error("write failed on " + path.string());
}

} // namespace jsd
