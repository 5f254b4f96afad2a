#include "transwave/csv.hpp"

#include <sstream>

#include <fmt/format.h>

#include "transwave/errors.hpp"

namespace tw {

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add(std::vector<CsvCell> row) {
    if (row.size() != header_.size())
        throw InvalidArgument(fmt::format("csv row has {} cells, header has {}", row.size(), header_.size()));
    rows_.push_back(std::move(row));
}

std::string format_cell(const CsvCell& c) {
    if (const auto* s = std::get_if<std::string>(&c)) {
        // No quoting: separators inside text become ';' so every row splits cleanly.
        std::string t = *s;
        for (char& ch : t)
            if (ch == ',') ch = ';';
            else if (ch == '\n' || ch == '\r') ch = ' ';
        return t;
    }
    if (const auto* d = std::get_if<double>(&c)) return fmt::format("{:.17g}", *d);
    return fmt::format("{}", std::get<long long>(c));
}

std::string CsvTable::str() const {
    std::string out;
    for (std::size_t i = 0; i < header_.size(); ++i) out += (i ? "," : "") + header_[i];
    out += "\n";
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_cell(row[i]);
        out += "\n";
    }
    return out;
}

void CsvTable::save(const std::filesystem::path& path) const {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot write " + path.string());
    os << str();
}

int CsvData::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<int>(i);
    throw Error("csv has no column " + name);
}

CsvData read_csv(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw Error("cannot read " + path.string());
    CsvData d;
    std::string line;
    auto split = [](const std::string& l) {
        std::vector<std::string> cells;
        std::stringstream ss(l);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        return cells;
    };
    if (std::getline(is, line)) d.header = split(line);
    while (std::getline(is, line))
        if (!line.empty()) d.rows.push_back(split(line));
    return d;
}

}  // namespace tw
