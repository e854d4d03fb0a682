#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ratingfbp {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// "%.17g" text; parses back to the identical double.
std::string format_double(double x);

/// Comma-separated writer with a header row; numbers at 17 significant digits.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string> header);

    void row(std::initializer_list<double> values);
    void row(std::span<const double> values);
    void close();

private:
    std::filesystem::path path_;
    std::ofstream out_;
    std::size_t columns_;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    /// Index of a named column; throws IoError if absent.
    std::size_t column(const std::string& name) const;
};

CsvTable read_csv(const std::filesystem::path& path);

/// Writes `text` to `path`, throwing IoError on failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace ratingfbp
