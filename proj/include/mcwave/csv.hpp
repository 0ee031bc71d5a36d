#pragma once

// Minimal CSV for the tool's own output: comma separated, no quoting, one
// header line. Numbers use the shortest decimal form that reads back to the
// same double, independent of the C locale.

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcwave/types.hpp"

namespace mcw {

/// File could not be opened, written or parsed.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Shortest round-trip decimal; "-0" is written as "0".
std::string format_double(double v);
/// Strict parse of the whole string. Throws IoError.
double parse_double(const std::string& s);
std::size_t parse_index(const std::string& s);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Column position by name. Throws IoError if absent.
    std::size_t column(const std::string& name) const;
};

void write_csv(std::ostream& out, const CsvTable& table);
CsvTable read_csv(std::istream& in);
/// Reads a file and checks the header matches `expected_header` exactly.
CsvTable read_csv_file(const std::filesystem::path& path, const std::vector<std::string>& expected_header);

/// `index,re,im` with index 0..n-1 in order.
CsvTable samples_table(const ComplexVector& x);
ComplexVector read_samples(const std::filesystem::path& path);

/// `row,col,re,im`, row-major.
CsvTable matrix_table(const ComplexMatrix& m);
ComplexMatrix read_matrix(const std::filesystem::path& path);

}  // namespace mcw
