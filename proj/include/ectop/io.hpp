#pragma once

// External file formats: CSV tables, curve CSVs, the ECF1 binary field
// format, and SVG scatter plots. Every writer goes through atomic_write.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ectop/core.hpp"

namespace ectop::io {

struct CsvTable {
    std::optional<std::vector<std::string>> header;
    std::vector<std::vector<double>> rows;

    std::size_t cols() const noexcept { return rows.empty() ? 0 : rows.front().size(); }
};

/// Comma-separated, '.' decimal, optional double-quoted cells. The first
/// line is a header when its first cell does not parse as a number. All rows
/// must have the same width. Throws ParseError.
CsvTable parse_csv(std::string_view text);
CsvTable read_csv(const std::filesystem::path& path);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

std::string format_csv(const CsvTable& table);

/// Writes to a sibling temporary file and renames it over `path`.
void atomic_write(const std::filesystem::path& path, std::string_view bytes);

std::string read_file(const std::filesystem::path& path);

/// "ECF1", u8 ndim, ndim x u32 LE dims, f64 LE values.
std::string encode_ecf1(const GridField& field);
GridField decode_ecf1(std::string_view bytes);
void write_ecf1(const std::filesystem::path& path, const GridField& field);
GridField read_ecf1(const std::filesystem::path& path);

/// ECF1 by magic; otherwise CSV, 1D when a single row or a single column.
GridField read_field(const std::filesystem::path& path);

/// Header threshold,chi[,beta0[,beta1]].
std::string format_curve_csv(const ECCurve& ec, const BettiCurve* betti = nullptr);
ECCurve parse_curve_csv(std::string_view text);

/// Static SVG 1.1 scatter, one labelled dot per sample.
std::string format_svg_scatter(std::span<const std::string> labels, std::span<const double> x,
                               std::span<const double> y);

}  // namespace ectop::io
