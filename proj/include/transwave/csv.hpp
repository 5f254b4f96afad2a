#pragma once
// Minimal CSV writer: header row, '.' decimals, LF line endings, round-trip precision.

#include <filesystem>
#include <fstream>
#include <string>
#include <variant>
#include <vector>

namespace tw {

using CsvCell = std::variant<std::string, double, long long>;

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    void add(std::vector<CsvCell> row);
    std::size_t rows() const { return rows_.size(); }
    const std::vector<std::string>& header() const { return header_; }

    std::string str() const;
    void save(const std::filesystem::path& path) const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<CsvCell>> rows_;
};

std::string format_cell(const CsvCell& c);

// Reads a CSV written by CsvTable (no quoting) into header + string rows.
struct CsvData {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    int column(const std::string& name) const;
};
CsvData read_csv(const std::filesystem::path& path);

}  // namespace tw
