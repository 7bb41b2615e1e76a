#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "casimir/errors.hpp"

namespace casimir {

/// Scientific notation with 14 significant digits, '.' decimal separator,
/// locale-independent. All emitted tables use this format.
inline std::string format_sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.13e", v);
    return buf;
}

/// Minimal RFC-4180-style CSV table: header row mandatory, no quoting needed
/// because fields never contain separators.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> cells) {
        if (cells.size() != header.size())
            throw invalid_configuration("CsvTable: row width does not match header");
        rows.push_back(std::move(cells));
    }

    std::string to_string() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < header.size(); ++i)
            os << header[i] << (i + 1 < header.size() ? "," : "");
        os << "\n";
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.size(); ++i)
                os << r[i] << (i + 1 < r.size() ? "," : "");
            os << "\n";
        }
        return os.str();
    }

    void write(const std::string& path) const {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw invalid_configuration("CsvTable: cannot open " + path);
        f << to_string();
    }

    static CsvTable parse(const std::string& text) {
        CsvTable t;
        std::istringstream is(text);
        std::string line;
        bool first = true;
        while (std::getline(is, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            std::vector<std::string> cells;
            std::string cell;
            std::istringstream ls(line);
            while (std::getline(ls, cell, ',')) cells.push_back(cell);
            if (line.back() == ',') cells.push_back("");
            if (first) {
                t.header = cells;
                first = false;
            } else {
                t.add_row(cells);
            }
        }
        return t;
    }

    static CsvTable read(const std::string& path) {
        std::ifstream f(path, std::ios::binary);
        if (!f) throw invalid_configuration("CsvTable: cannot open " + path);
        std::ostringstream os;
        os << f.rdbuf();
        return parse(os.str());
    }
};

}  // namespace casimir
