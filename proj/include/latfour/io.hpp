#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "lattice.hpp"
#include "transform.hpp"

namespace latfour::io {

/// Fixed-precision rendering so identical values always produce identical
/// bytes. NaN renders as an empty cell.
inline std::string fmt(double v) {
    if (std::isnan(v)) return "";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string fmt(std::int64_t v) { return std::to_string(v); }
inline std::string fmt(std::uint64_t v) { return std::to_string(v); }
inline std::string fmt(int v) { return std::to_string(v); }

/// CSV file with a schema comment and a header row.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns)
        : out_(path) {
        if (!out_) throw ConfigError("cannot open for writing: " + path.string());
        out_ << "# schema=1\n";
        row(columns);
    }

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }

private:
    std::ofstream out_;
};

/// k_1..k_d, kappa_1..kappa_d, re, im; rows in lexicographic index order.
inline void write_spectrum_csv(const std::filesystem::path& path, const Spectrum& s) {
    const int d = s.lattice().dim();
    std::vector<std::string> cols;
    for (int i = 1; i <= d; ++i) cols.push_back("k_" + std::to_string(i));
    for (int i = 1; i <= d; ++i) cols.push_back("kappa_" + std::to_string(i));
    cols.push_back("re");
    cols.push_back("im");
    CsvWriter w(path, cols);
    for (std::size_t i = 0; i < s.size(); ++i) {
        std::vector<std::string> cells;
        const DualPoint& pt = s.points()[i];
        for (int c = 0; c < d; ++c) cells.push_back(fmt(pt.index(c)));
        for (int c = 0; c < d; ++c) cells.push_back(fmt(pt.coords(c)));
        cells.push_back(fmt(s.entries()[i].real()));
        cells.push_back(fmt(s.entries()[i].imag()));
        w.row(cells);
    }
}

/// Rows of d integers then one or two decimals (value / re,im).
inline std::vector<std::pair<std::vector<int>, std::vector<double>>>
read_indexed_table(const std::filesystem::path& path, int d, int n_values) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open table: " + path.string());
    std::vector<std::pair<std::vector<int>, std::vector<double>>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        for (char& c : line)
            if (c == ',') c = ' ';
        std::istringstream ls(line);
        std::vector<int> key(static_cast<std::size_t>(d));
        std::vector<double> vals(static_cast<std::size_t>(n_values));
        bool header = false;
        for (int i = 0; i < d; ++i)
            if (!(ls >> key[std::size_t(i)])) { header = true; break; }
        if (header) continue; // tolerate a header row
        for (int i = 0; i < n_values; ++i)
            if (!(ls >> vals[std::size_t(i)]))
                throw ConfigError("table row needs " + std::to_string(d + n_values) +
                                  " fields: " + line);
        rows.emplace_back(std::move(key), std::move(vals));
    }
    return rows;
}

struct SvgSeries {
    std::string label;
    std::string color;
    std::vector<std::pair<double, double>> points;
};

/// Minimal deterministic scatter plot; enough for ratio-vs-exponent reports.
inline void write_svg_scatter(const std::filesystem::path& path,
                              const std::string& title, const std::string& xlabel,
                              const std::string& ylabel,
                              const std::vector<SvgSeries>& series) {
    double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
    bool first = true;
    for (const auto& s : series)
        for (const auto& [x, y] : s.points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            if (first) {
                xmin = xmax = x;
                ymin = ymax = y;
                first = false;
            } else {
                xmin = std::min(xmin, x);
                xmax = std::max(xmax, x);
                ymin = std::min(ymin, y);
                ymax = std::max(ymax, y);
            }
        }
    if (xmax - xmin < 1e-12) { xmin -= 0.5; xmax += 0.5; }
    if (ymax - ymin < 1e-12) { ymin -= 0.5; ymax += 0.5; }

    const double x0 = 70, x1 = 610, y0 = 430, y1 = 50;
    auto px = [&](double x) { return x0 + (x - xmin) / (xmax - xmin) * (x1 - x0); };
    auto py = [&](double y) { return y0 + (y - ymin) / (ymax - ymin) * (y1 - y0); };

    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open for writing: " + path.string());
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
           "viewBox=\"0 0 640 480\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"640\" height=\"480\" fill=\"white\"/>\n";
    out << "<text x=\"320\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">" << title
        << "</text>\n";
    out << "<line x1=\"" << fmt(x0) << "\" y1=\"" << fmt(y0) << "\" x2=\"" << fmt(x1)
        << "\" y2=\"" << fmt(y0) << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << fmt(x0) << "\" y1=\"" << fmt(y0) << "\" x2=\"" << fmt(x0)
        << "\" y2=\"" << fmt(y1) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fmt(x0) << "\" y=\"450\" font-size=\"12\">" << fmt(xmin)
        << "</text>\n";
    out << "<text x=\"" << fmt(x1) << "\" y=\"450\" text-anchor=\"end\" font-size=\"12\">"
        << fmt(xmax) << "</text>\n";
    out << "<text x=\"" << fmt(x0 - 6) << "\" y=\"" << fmt(y0)
        << "\" text-anchor=\"end\" font-size=\"12\">" << fmt(ymin) << "</text>\n";
    out << "<text x=\"" << fmt(x0 - 6) << "\" y=\"" << fmt(y1)
        << "\" text-anchor=\"end\" font-size=\"12\">" << fmt(ymax) << "</text>\n";
    out << "<text x=\"340\" y=\"470\" text-anchor=\"middle\" font-size=\"13\">" << xlabel
        << "</text>\n";
    out << "<text x=\"18\" y=\"240\" font-size=\"13\" transform=\"rotate(-90 18 240)\" "
           "text-anchor=\"middle\">"
        << ylabel << "</text>\n";

    double legend_y = 60;
    for (const auto& s : series) {
        for (const auto& [x, y] : s.points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            out << "<circle cx=\"" << fmt(px(x)) << "\" cy=\"" << fmt(py(y))
                << "\" r=\"3\" fill=\"" << s.color << "\" fill-opacity=\"0.6\"/>\n";
        }
        out << "<circle cx=\"500\" cy=\"" << fmt(legend_y - 4) << "\" r=\"4\" fill=\""
            << s.color << "\"/>\n";
        out << "<text x=\"510\" y=\"" << fmt(legend_y) << "\" font-size=\"12\">"
            << s.label << "</text>\n";
        legend_y += 18;
    }
    out << "</svg>\n";
}

} // namespace latfour::io
