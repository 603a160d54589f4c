#include "ectop/io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>
#include <system_error>

namespace ectop::io {
namespace {

std::optional<double> parse_number(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    if (s.empty()) return std::nullopt;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

std::vector<std::string> split_line(std::string_view line, std::size_t line_no) {
    std::vector<std::string> cells;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur.push_back('"');
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            cells.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    if (quoted) throw Error(ErrorCode::ParseError, "unterminated quote on line " + std::to_string(line_no));
    cells.push_back(std::move(cur));
    return cells;
}

void put_le32(std::string& out, std::uint32_t v) {
    for (int b = 0; b < 4; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xFF));
}

std::uint32_t get_le32(const unsigned char* p) {
    return std::uint32_t{p[0]} | (std::uint32_t{p[1]} << 8) | (std::uint32_t{p[2]} << 16) | (std::uint32_t{p[3]} << 24);
}

}  // namespace

CsvTable parse_csv(std::string_view text) {
    CsvTable table;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool first = true;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        const std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
        auto cells = split_line(line, line_no);
        if (first && !parse_number(cells.front())) {
            table.header = std::move(cells);
            first = false;
            continue;
        }
        first = false;
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& cell : cells) {
            const auto v = parse_number(cell);
            if (!v) throw Error(ErrorCode::ParseError, "non-numeric cell '" + cell + "' on line " + std::to_string(line_no));
            row.push_back(*v);
        }
        if (!table.rows.empty() && row.size() != table.rows.front().size()) {
            throw Error(ErrorCode::ParseError, "ragged row on line " + std::to_string(line_no));
        }
        table.rows.push_back(std::move(row));
    }
    if (table.header && !table.rows.empty() && table.header->size() != table.cols()) {
        throw Error(ErrorCode::ParseError, "header width differs from data width");
    }
    return table;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CsvTable read_csv(const std::filesystem::path& path) { return parse_csv(read_file(path)); }

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string format_csv(const CsvTable& table) {
    std::string out;
    if (table.header) {
        for (std::size_t i = 0; i < table.header->size(); ++i) {
            if (i) out.push_back(',');
            out += (*table.header)[i];
        }
        out.push_back('\n');
    }
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out.push_back(',');
            out += format_double(row[i]);
        }
        out.push_back('\n');
    }
    return out;
}

void atomic_write(const std::filesystem::path& path, std::string_view bytes) {
    namespace fs = std::filesystem;
    static thread_local std::mt19937_64 salt{std::random_device{}()};
    const fs::path tmp = path.string() + ".tmp" + std::to_string(salt());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw Error(ErrorCode::IoError, "write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Error(ErrorCode::IoError, "cannot rename onto " + path.string());
    }
}

std::string encode_ecf1(const GridField& field) {
    std::string out = "ECF1";
    out.push_back(static_cast<char>(field.ndim()));
    for (std::size_t d : field.dims()) {
        if (d > 0xFFFFFFFFu) throw Error(ErrorCode::TooLarge, "axis length exceeds 32 bits");
        put_le32(out, static_cast<std::uint32_t>(d));
    }
    out.reserve(out.size() + 8 * field.size());
    for (double v : field.values()) {
        const auto bits = std::bit_cast<std::uint64_t>(v);
        for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((bits >> (8 * b)) & 0xFF));
    }
    return out;
}

GridField decode_ecf1(std::string_view bytes) {
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
    if (bytes.size() < 5 || bytes.substr(0, 4) != "ECF1") throw Error(ErrorCode::ParseError, "missing ECF1 magic");
    const std::size_t ndim = p[4];
    if (ndim < 1 || ndim > 3) throw Error(ErrorCode::ParseError, "ECF1 ndim must be 1, 2 or 3");
    if (bytes.size() < 5 + 4 * ndim) throw Error(ErrorCode::ParseError, "truncated ECF1 header");
    std::vector<std::size_t> dims(ndim);
    std::size_t total = 1;
    for (std::size_t a = 0; a < ndim; ++a) {
        dims[a] = get_le32(p + 5 + 4 * a);
        total *= dims[a];
    }
    const std::size_t offset = 5 + 4 * ndim;
    if (bytes.size() != offset + 8 * total) {
        throw Error(ErrorCode::ParseError, "ECF1 length " + std::to_string(bytes.size()) + " != expected " +
                                               std::to_string(offset + 8 * total));
    }
    std::vector<double> values(total);
    for (std::size_t i = 0; i < total; ++i) {
        std::uint64_t bits = 0;
        for (int b = 0; b < 8; ++b) bits |= std::uint64_t{p[offset + 8 * i + static_cast<std::size_t>(b)]} << (8 * b);
        values[i] = std::bit_cast<double>(bits);
    }
    return GridField(std::move(dims), std::move(values));
}

void write_ecf1(const std::filesystem::path& path, const GridField& field) { atomic_write(path, encode_ecf1(field)); }

GridField read_ecf1(const std::filesystem::path& path) { return decode_ecf1(read_file(path)); }

GridField read_field(const std::filesystem::path& path) {
    const std::string bytes = read_file(path);
    if (bytes.rfind("ECF1", 0) == 0) return decode_ecf1(bytes);
    const CsvTable t = parse_csv(bytes);
    if (t.rows.empty()) throw Error(ErrorCode::ParseError, "field CSV has no data rows");
    std::vector<double> values;
    for (const auto& row : t.rows) values.insert(values.end(), row.begin(), row.end());
    const std::size_t count = values.size();
    if (t.rows.size() == 1 || t.cols() == 1) return GridField({count}, std::move(values));
    return GridField({t.rows.size(), t.cols()}, std::move(values));
}

std::string format_curve_csv(const ECCurve& ec, const BettiCurve* betti) {
    std::string out = "threshold,chi";
    const bool b1 = betti != nullptr && betti->beta1.has_value();
    if (betti) out += ",beta0";
    if (b1) out += ",beta1";
    out.push_back('\n');
    for (std::size_t k = 0; k < ec.thresholds.size(); ++k) {
        out += format_double(ec.thresholds[k]);
        out += ',' + std::to_string(ec.chi[k]);
        if (betti) out += ',' + std::to_string(betti->beta0[k]);
        if (b1) out += ',' + std::to_string((*betti->beta1)[k]);
        out.push_back('\n');
    }
    return out;
}

ECCurve parse_curve_csv(std::string_view text) {
    const CsvTable t = parse_csv(text);
    if (t.cols() < 2) throw Error(ErrorCode::ParseError, "curve CSV needs threshold and chi columns");
    ECCurve c;
    for (const auto& row : t.rows) {
        if (row[1] != std::floor(row[1])) throw Error(ErrorCode::ParseError, "chi must be an integer");
        c.thresholds.push_back(row[0]);
        c.chi.push_back(static_cast<std::int64_t>(row[1]));
    }
    return c;
}

namespace {

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

}  // namespace

std::string format_svg_scatter(std::span<const std::string> labels, std::span<const double> x,
                               std::span<const double> y) {
    if (labels.size() != x.size() || x.size() != y.size()) throw Error(ErrorCode::DimMismatch, "scatter length mismatch");
    constexpr double size = 480.0;
    constexpr double margin = 40.0;
    auto range = [](std::span<const double> v) {
        if (v.empty()) return std::pair{0.0, 1.0};
        auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        return *lo == *hi ? std::pair{*lo - 1.0, *hi + 1.0} : std::pair{*lo, *hi};
    };
    const auto [x0, x1] = range(x);
    const auto [y0, y1] = range(y);
    auto px = [&](double v) { return margin + (v - x0) / (x1 - x0) * (size - 2 * margin); };
    auto py = [&](double v) { return size - margin - (v - y0) / (y1 - y0) * (size - 2 * margin); };

    std::string out =
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"480\" height=\"480\" viewBox=\"0 0 480 480\">\n"
        "<rect x=\"0\" y=\"0\" width=\"480\" height=\"480\" fill=\"white\"/>\n";
    for (std::size_t i = 0; i < x.size(); ++i) {
        const std::string cx = format_double(px(x[i]));
        const std::string cy = format_double(py(y[i]));
        out += "<circle cx=\"" + cx + "\" cy=\"" + cy + "\" r=\"4\" fill=\"steelblue\"/>\n";
        out += "<text x=\"" + cx + "\" y=\"" + cy + "\" dx=\"6\" font-size=\"9\">" + xml_escape(labels[i]) + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace ectop::io
