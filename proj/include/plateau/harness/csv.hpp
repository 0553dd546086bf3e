#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "experiments.hpp"
#include "format.hpp"

namespace plateau::harness {

inline constexpr std::string_view csv_header = "n,r,ell,runs,mean,median,p25,p75,stderr,censored";

inline void write_csv(const std::vector<SweepRow>& rows, std::ostream& out)
{
    if (rows.empty())
        throw std::invalid_argument("write_csv: empty table");
    out << csv_header << '\n';
    for (const auto& row : rows) {
        const auto& s = row.stats;
        out << row.n << ',' << row.r << ',' << row.ell << ',' << s.runs << ',' << format_double(s.mean) << ','
            << format_double(s.median) << ',' << format_double(s.p25) << ',' << format_double(s.p75) << ','
            << format_double(s.stderr_mean) << ',' << s.censored << '\n';
    }
}

inline void write_csv(const std::vector<SweepRow>& rows, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    write_csv(rows, out);
    out.flush();
    if (!out)
        throw std::runtime_error("write to '" + path + "' failed");
}

namespace detail {

inline std::vector<std::string_view> split_commas(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(',', start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos)
            return out;
        start = pos + 1;
    }
}

} // namespace detail

inline std::vector<SweepRow> read_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("read_csv: missing header");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != csv_header)
        throw std::runtime_error("read_csv: unexpected header '" + line + "'");
    std::vector<SweepRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        const auto f = detail::split_commas(line);
        if (f.size() != 10)
            throw std::runtime_error("read_csv: line " + std::to_string(line_no) + " has "
                                     + std::to_string(f.size()) + " fields, expected 10");
        try {
            SweepRow row{parse_int<int>(f[0]), parse_int<int>(f[1]), parse_int<int>(f[2]), {}};
            row.stats.runs = parse_int<std::size_t>(f[3]);
            row.stats.mean = parse_double(f[4]);
            row.stats.median = parse_double(f[5]);
            row.stats.p25 = parse_double(f[6]);
            row.stats.p75 = parse_double(f[7]);
            row.stats.stderr_mean = parse_double(f[8]);
            row.stats.censored = parse_int<std::size_t>(f[9]);
            rows.push_back(row);
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error("read_csv: line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return rows;
}

inline std::vector<SweepRow> read_csv(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "' for reading");
    return read_csv(in);
}

} // namespace plateau::harness
