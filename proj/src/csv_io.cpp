#include "ratingfbp/csv_io.hpp"

#include <charconv>
#include <sstream>

namespace ratingfbp {

std::string format_double(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string> header)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc), columns_(header.size())
{
    if (!out_)
        throw IoError("cannot open " + path.string() + " for writing");
    bool first = true;
    for (const std::string& h : header) {
        if (!first)
            out_ << ',';
        out_ << h;
        first = false;
    }
    out_ << '\n';
}

void CsvWriter::row(std::initializer_list<double> values)
{
    row(std::span<const double>(values.begin(), values.size()));
}

void CsvWriter::row(std::span<const double> values)
{
    if (values.size() != columns_)
        throw std::invalid_argument("CsvWriter: row width does not match header");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i)
            out_ << ',';
        out_ << format_double(values[i]);
    }
    out_ << '\n';
    if (!out_)
        throw IoError("write failed for " + path_.string());
}

void CsvWriter::close()
{
    out_.close();
    if (!out_)
        throw IoError("closing " + path_.string() + " failed");
}

std::size_t CsvTable::column(const std::string& name) const
{
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name)
            return i;
    throw IoError("csv: no column named '" + name + "'");
}

namespace {

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ','))
        out.push_back(cell);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

}  // namespace

CsvTable read_csv(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    CsvTable t;
    std::string line;
    if (!std::getline(in, line))
        throw IoError(path.string() + ": missing header");
    t.header = split(line);
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        const std::vector<std::string> cells = split(line);
        if (cells.size() != t.header.size())
            throw IoError(path.string() + ":" + std::to_string(lineno) + ": wrong number of fields");
        std::vector<double> row(cells.size());
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const std::string& c = cells[i];
            const auto res = std::from_chars(c.data(), c.data() + c.size(), row[i]);
            if (res.ec != std::errc() || res.ptr != c.data() + c.size())
                throw IoError(path.string() + ":" + std::to_string(lineno) + ": bad number '" + c + "'");
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

void write_text_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open " + path.string() + " for writing");
    out << text;
    out.close();
    if (!out)
        throw IoError("write failed for " + path.string());
}

}  // namespace ratingfbp
