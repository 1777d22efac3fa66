#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace jsd {

// Sidecar metadata written next to a generated distribution pair.
struct PairMeta {
    std::uint64_t seed = 0;
    std::size_t n = 0;
    double target_log10_eps = 0.0;
    double achieved_log10_eps = 0.0;
    double alpha = 0.0;
};

// One finite non-negative decimal per line; blank lines ignored.
// Throws io_error with the path on unreadable files or malformed entries.
std::vector<double> read_distribution(const std::filesystem::path& path);

// Writes one value per line with round-trip precision.
void write_distribution(const std::filesystem::path& path, std::span<const double> values);

// key=value lines, one per field.
void write_pair_meta(const std::filesystem::path& path, const PairMeta& meta);

} // namespace jsd
