#pragma once

#include <initializer_list>
#include <iosfwd>
#include <string>
#include <vector>

#include "hjid/grid_profile.hpp"

namespace hjid {

/// Writes a fixed header row, then numeric rows with 17 significant digits.
class CsvWriter {
public:
    CsvWriter(std::ostream& os, std::vector<std::string> header);
    void row(std::initializer_list<double> values);
    void row(const std::vector<double>& values);

private:
    std::ostream& os_;
    std::size_t columns_;
};

/// Formats a double with 17 significant digits (lossless round trip).
std::string format_double(double v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    std::size_t column(const std::string& name) const;
};

/// Reads a numeric CSV with a header row. Throws hjid::Error on malformed input.
CsvTable read_csv(std::istream& is);
CsvTable read_csv_file(const std::string& path);

/// Resamples a two-column `x,value` table onto a grid by linear interpolation
/// (constant beyond the table ends).
GridProfile resample(const CsvTable& table, double x_min, double x_max, std::size_t n, Layout layout);

/// Writes `x,<value_name>` rows for every sample of a profile.
void write_profile_csv(std::ostream& os, const GridProfile& profile, const std::string& value_name = "value");

} // namespace hjid
