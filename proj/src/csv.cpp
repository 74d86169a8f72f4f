#include "curveflux/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "curveflux/errors.hpp"

namespace curveflux {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

void CsvWriter::header(const std::vector<std::string>& names) {
    row_start();
    for (const auto& n : names) cell(n);
    row_end();
}

void CsvWriter::row_start() { first_in_row_ = true; }

void CsvWriter::cell(const std::string& s) {
    if (!first_in_row_) buf_ += ',';
    buf_ += s;
    first_in_row_ = false;
}

void CsvWriter::cell(double x) { cell(format_double(x)); }

void CsvWriter::row_end() { buf_ += '\n'; }

void CsvWriter::write_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open for writing: " + path);
    out.write(buf_.data(), static_cast<std::streamsize>(buf_.size()));
    if (!out) throw Error("write failed: " + path);
}

}  // namespace curveflux
