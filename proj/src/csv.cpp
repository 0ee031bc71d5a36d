#include "mcwave/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace mcw {

std::string format_double(double v) {
    if (v == 0.0) return "0";
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw IoError("cannot format number");
    return {buf, end};
}

double parse_double(const std::string& s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) throw IoError("not a number: '" + s + "'");
    return v;
}

std::size_t parse_index(const std::string& s) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) throw IoError("not an index: '" + s + "'");
    return v;
}

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw IoError("missing column '" + name + "'");
}

namespace {

void write_line(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << fields[i];
    }
    out << '\n';
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

}  // namespace

void write_csv(std::ostream& out, const CsvTable& table) {
    write_line(out, table.header);
    for (const auto& row : table.rows) write_line(out, row);
}

CsvTable read_csv(std::istream& in) {
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty CSV input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    table.header = split(line);
    std::size_t number = 1;
    while (std::getline(in, line)) {
        ++number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split(line);
        if (fields.size() != table.header.size())
            throw IoError("line " + std::to_string(number) + ": expected " + std::to_string(table.header.size()) +
                          " fields, got " + std::to_string(fields.size()));
        table.rows.push_back(std::move(fields));
    }
    return table;
}

CsvTable read_csv_file(const std::filesystem::path& path, const std::vector<std::string>& expected_header) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    auto table = read_csv(in);
    if (table.header != expected_header) throw IoError(path.string() + ": unexpected header");
    return table;
}

CsvTable samples_table(const ComplexVector& x) {
    CsvTable table{{"index", "re", "im"}, {}};
    table.rows.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        table.rows.push_back({std::to_string(i), format_double(x[i].real()), format_double(x[i].imag())});
    return table;
}

ComplexVector read_samples(const std::filesystem::path& path) {
    const auto table = read_csv_file(path, {"index", "re", "im"});
    if (table.rows.empty()) throw IoError(path.string() + ": no samples");
    ComplexVector x(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        if (parse_index(row[0]) != i) throw IoError(path.string() + ": indices must run 0..n-1 in order");
        x[i] = {parse_double(row[1]), parse_double(row[2])};
    }
    return x;
}

CsvTable matrix_table(const ComplexMatrix& m) {
    CsvTable table{{"row", "col", "re", "im"}, {}};
    table.rows.reserve(m.rows() * m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            table.rows.push_back(
                {std::to_string(r), std::to_string(c), format_double(m(r, c).real()), format_double(m(r, c).imag())});
    return table;
}

ComplexMatrix read_matrix(const std::filesystem::path& path) {
    const auto table = read_csv_file(path, {"row", "col", "re", "im"});
    std::size_t rows = 0, cols = 0;
    for (const auto& row : table.rows) {
        rows = std::max(rows, parse_index(row[0]) + 1);
        cols = std::max(cols, parse_index(row[1]) + 1);
    }
    if (rows * cols == 0 || rows * cols != table.rows.size()) throw IoError(path.string() + ": incomplete matrix");
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        const std::size_t r = parse_index(row[0]), c = parse_index(row[1]);
        if (r * cols + c != i) throw IoError(path.string() + ": entries must be row-major");
        m(r, c) = {parse_double(row[2]), parse_double(row[3])};
    }
    return m;
}

}  // namespace mcw
