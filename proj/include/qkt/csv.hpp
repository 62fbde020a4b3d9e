#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace qkt {

// Fixed 17-significant-digit formatting via to_chars: locale-free and
// byte-stable across runs, and 17 digits round-trip any double exactly.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

inline std::string format_int(long v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// A CSV file with one leading '#' comment line carrying the resolved run
// configuration, then a header row, then data rows. '\n' line endings.
struct CsvTable {
    std::string config_comment;  // written as "# <comment>"
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    std::string str() const {
        std::string out;
        if (!config_comment.empty()) {
            out += "# ";
            out += config_comment;
            out += '\n';
        }
        for (size_t i = 0; i < columns.size(); ++i) {
            if (i) out += ',';
            out += columns[i];
        }
        out += '\n';
        for (const auto& row : rows) {
            for (size_t i = 0; i < row.size(); ++i) {
                if (i) out += ',';
                out += row[i];
            }
            out += '\n';
        }
        return out;
    }
};

inline void write_csv(const std::string& path, const CsvTable& table) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::invalid_argument("cannot open output path: " + path);
    }
    f << table.str();
    if (!f) {
        throw std::runtime_error("write failed: " + path);
    }
}

// Parsed CSV: comment lines (without the '# ' prefix), column names, and the
// numeric data in column-major vectors.
struct CsvData {
    std::vector<std::string> comments;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> data;  // one vector per column
};

inline CsvData read_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) {
        throw std::invalid_argument("cannot open input path: " + path);
    }
    CsvData out;
    std::string line;
    bool have_header = false;
    while (std::getline(f, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#') {
            size_t start = 1;
            while (start < line.size() && line[start] == ' ') ++start;
            out.comments.push_back(line.substr(start));
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!have_header) {
            out.columns = cells;
            out.data.resize(cells.size());
            have_header = true;
            continue;
        }
        if (cells.size() != out.columns.size()) {
            throw std::invalid_argument("csv row width does not match header: " + path);
        }
        for (size_t i = 0; i < cells.size(); ++i) {
            double v = 0.0;
            const char* first = cells[i].data();
            const char* last = first + cells[i].size();
            const auto res = std::from_chars(first, last, v);
            if (res.ec != std::errc() || res.ptr != last) {
                throw std::invalid_argument("csv cell is not a number: '" + cells[i] + "'");
            }
            out.data[i].push_back(v);
        }
    }
    if (!have_header) {
        throw std::invalid_argument("csv has no header row: " + path);
    }
    return out;
}

}  // namespace qkt
