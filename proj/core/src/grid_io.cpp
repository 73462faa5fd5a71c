#include "hardylab/grid_io.hpp"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace hardylab {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_grid_csv(std::ostream& os, const GridFunction& f) {
    const std::size_t d = f.dim();
    for (std::size_t i = 0; i < d; ++i) {
        os << "axis" << i << "_breakpoints";
        for (double b : f.axis(i).breakpoints) os << ',' << format_double(b);
        os << '\n';
    }
    std::array<std::size_t, 3> idx{};
    for (std::size_t flat = 0; flat < f.cell_count(); ++flat) {
        f.unflatten(flat, std::span<std::size_t>(idx.data(), d));
        for (std::size_t i = 0; i < d; ++i) os << idx[i] << ',';
        os << format_double(f.value(flat).real()) << ','
           << format_double(f.value(flat).imag()) << '\n';
    }
}

std::string grid_to_csv(const GridFunction& f) {
    std::ostringstream os;
    write_grid_csv(os, f);
    return os.str();
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw std::runtime_error("grid csv: bad number '" + s + "'");
    return v;
}

}  // namespace

GridFunction read_grid_csv(std::istream& is) {
    std::vector<Axis> axes;
    std::vector<std::vector<std::string>> cell_rows;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line == "\r") continue;
        auto fields = split_csv(line);
        if (fields.front().rfind("axis", 0) == 0) {
            if (!cell_rows.empty())
                throw std::runtime_error("grid csv: axis row after cell rows");
            Axis ax;
            for (std::size_t i = 1; i < fields.size(); ++i)
                ax.breakpoints.push_back(parse_double(fields[i]));
            axes.push_back(std::move(ax));
        } else {
            cell_rows.push_back(std::move(fields));
        }
    }
    if (axes.empty()) throw std::runtime_error("grid csv: no axis rows");
    const std::size_t d = axes.size();
    std::size_t n = 1;
    for (const Axis& a : axes) {
        a.validate();
        n *= a.cell_count();
    }
    std::vector<cplx> values(n, 0.0);
    std::array<std::size_t, 3> stride{1, 1, 1};
    stride[d - 1] = 1;
    for (std::size_t i = d - 1; i-- > 0;) stride[i] = stride[i + 1] * axes[i + 1].cell_count();
    for (const auto& row : cell_rows) {
        if (row.size() != d + 2) throw std::runtime_error("grid csv: bad cell row width");
        std::size_t flat = 0;
        for (std::size_t i = 0; i < d; ++i) {
            const long long k = std::atoll(row[i].c_str());
            if (k < 0 || static_cast<std::size_t>(k) >= axes[i].cell_count())
                throw std::runtime_error("grid csv: cell index out of range");
            flat += static_cast<std::size_t>(k) * stride[i];
        }
        values[flat] = cplx(parse_double(row[d]), parse_double(row[d + 1]));
    }
    return GridFunction(std::move(axes), std::move(values));
}

GridFunction grid_from_csv(const std::string& text) {
    std::istringstream is(text);
    return read_grid_csv(is);
}

void save_grid_csv(const std::string& path, const GridFunction& f) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_grid_csv(os, f);
}

GridFunction load_grid_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open for reading: " + path);
    return read_grid_csv(is);
}

}  // namespace hardylab
