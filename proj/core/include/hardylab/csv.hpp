#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "hardylab/grid_io.hpp"

namespace hardylab {

// Header plus rows of preformatted cells; writes deterministic UTF-8 CSV.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::vector<std::string>& add_row() { return rows.emplace_back(); }

    void write(std::ostream& os) const {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (i) os << ',';
            os << header[i];
        }
        os << '\n';
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) os << ',';
                os << row[i];
            }
            os << '\n';
        }
    }
};

inline std::string csv_num(double v) { return format_double(v); }
inline std::string csv_num(int v) { return std::to_string(v); }

}  // namespace hardylab
