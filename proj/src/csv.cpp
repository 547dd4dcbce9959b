#include "hjid/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "hjid/errors.hpp"

namespace hjid {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(std::ostream& os, std::vector<std::string> header) : os_(os), columns_(header.size()) {
    for (std::size_t i = 0; i < header.size(); ++i) os_ << (i ? "," : "") << header[i];
    os_ << '\n';
}

void CsvWriter::row(std::initializer_list<double> values) { row(std::vector<double>(values)); }

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != columns_) throw Error("csv row has wrong number of columns");
    for (std::size_t i = 0; i < values.size(); ++i) os_ << (i ? "," : "") << format_double(values[i]);
    os_ << '\n';
}

std::size_t CsvTable::column(const std::string& name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw IoError("csv column '" + name + "' not found");
    return static_cast<std::size_t>(it - header.begin());
}

namespace {

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

} // namespace

CsvTable read_csv(std::istream& is) {
    CsvTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(trim(field));
        if (table.header.empty()) {
            table.header = std::move(fields);
            continue;
        }
        if (fields.size() != table.header.size()) {
            throw IoError("csv line " + std::to_string(line_no) + ": expected " +
                        std::to_string(table.header.size()) + " fields");
        }
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto& f : fields) {
            double v = 0.0;
            const auto res = std::from_chars(f.data(), f.data() + f.size(), v);
            if (res.ec != std::errc{} || res.ptr != f.data() + f.size()) {
                throw IoError("csv line " + std::to_string(line_no) + ": cannot parse '" + f + "'");
            }
            row.push_back(v);
        }
        table.rows.push_back(std::move(row));
    }
    if (table.header.empty()) throw IoError("csv input is empty");
    return table;
}

CsvTable read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    return read_csv(in);
}

GridProfile resample(const CsvTable& table, double x_min, double x_max, std::size_t n, Layout layout) {
    if (table.header.size() < 2) throw IoError("profile csv needs at least two columns (x,value)");
    if (table.rows.empty()) throw IoError("profile csv has no data rows");
    std::vector<std::pair<double, double>> pts;
    pts.reserve(table.rows.size());
    for (const auto& r : table.rows) pts.emplace_back(r[0], r[1]);
    std::sort(pts.begin(), pts.end());
    auto f = [&pts](double x) {
        if (x <= pts.front().first) return pts.front().second;
        if (x >= pts.back().first) return pts.back().second;
        const auto it = std::lower_bound(pts.begin(), pts.end(), std::pair{x, -1e308});
        const auto& [x1, y1] = *it;
        const auto& [x0, y0] = *(it - 1);
        if (x1 == x0) return y1;
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
    };
    return GridProfile::sample(x_min, x_max, n, layout, f);
}

void write_profile_csv(std::ostream& os, const GridProfile& profile, const std::string& value_name) {
    CsvWriter csv(os, {"x", value_name});
    for (std::size_t i = 0; i < profile.size(); ++i) csv.row({profile.position(i), profile[i]});
}

} // namespace hjid
