#pragma once

#include <string>
#include <vector>

namespace curveflux {

// Shortest decimal form that round-trips the exact double (std::to_chars).
// Non-finite values come out as "inf", "-inf" or "nan".
std::string format_double(double x);

// Joins cells with commas and writes rows with '\n' endings; content is built
// fully in memory and written in one shot so failed runs leave no partial file.
class CsvWriter {
public:
    void header(const std::vector<std::string>& names);
    void row_start();
    void cell(const std::string& s);
    void cell(double x);
    void row_end();
    const std::string& content() const { return buf_; }
    // Throws Error if the file cannot be written.
    void write_file(const std::string& path) const;

private:
    std::string buf_;
    bool first_in_row_ = true;
};

}  // namespace curveflux
