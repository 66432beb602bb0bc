#include "hycurv/report.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace hycurv {

std::string format_full(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
}

std::vector<SeriesRow> make_series_rows(const PhiSeries& series,
                                        const CorollaryResult* corollary) {
    const int nr = static_cast<int>(series.r_grid.size());
    std::vector<SeriesRow> rows(nr);
    for (int i = 0; i < nr; ++i) {
        SeriesRow& row = rows[i];
        row.r = series.r_grid[i];
        row.integral_sinh_H = series.integral_sinh_H[i];
        row.integral_H = series.integral_H[i];
        row.g = series.g_values[i];
        row.phi = series.phi[i];
        row.phi_err = series.phi_err[i];
        if (corollary) {
            // corollary grids share the radial grid
            for (int k = 0; k < corollary->r_grid.size(); ++k)
                if (corollary->r_grid[k] == row.r) {
                    row.bound_B = corollary->bound_B[k];
                    row.integral_H = corollary->integral_H[k];
                    row.margin = row.integral_H - row.bound_B;
                    break;
                }
        }
    }
    return rows;
}

void emit_csv(const std::vector<SeriesRow>& rows, std::ostream& out) {
    out << "r, integral_sinh_H, integral_H, g, phi, phi_err, bound_B, margin\n";
    for (const SeriesRow& row : rows) {
        out << format_full(row.r) << ", " << format_full(row.integral_sinh_H)
            << ", " << format_full(row.integral_H) << ", " << format_full(row.g)
            << ", " << format_full(row.phi) << ", " << format_full(row.phi_err)
            << ", " << format_full(row.bound_B) << ", "
            << format_full(row.margin) << "\n";
    }
}

void emit_csv_file(const std::vector<SeriesRow>& rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write CSV: " + path);
    std::ostringstream ss;
    emit_csv(rows, ss);
    out << ss.str();
    if (!out) throw std::runtime_error("CSV write failed: " + path);
}

void emit_phi_plot(const PhiSeries& series, const std::string& path) {
    const int nr = static_cast<int>(series.r_grid.size());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write plot: " + path);

    const double width = 640, height = 400, margin = 60;
    double rmin = series.r_grid[0], rmax = series.r_grid[nr - 1];
    double pmin = 1e300, pmax = -1e300;
    for (int i = 0; i < nr; ++i) {
        pmin = std::min(pmin, series.phi[i] - series.phi_err[i]);
        pmax = std::max(pmax, series.phi[i] + series.phi_err[i]);
    }
    if (!(pmax > pmin)) {
        pmax = pmin + 1.0;
        pmin -= 1.0;
    }
    if (!(rmax > rmin)) rmax = rmin + 1.0;
    auto sx = [&](double r) {
        return margin + (r - rmin) / (rmax - rmin) * (width - 2 * margin);
    };
    auto sy = [&](double p) {
        return height - margin -
               (p - pmin) / (pmax - pmin) * (height - 2 * margin);
    };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // axes
    out << "<line x1=\"" << margin << "\" y1=\"" << height - margin
        << "\" x2=\"" << width - margin << "\" y2=\"" << height - margin
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\""
        << margin << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"" << height - 15
        << "\" text-anchor=\"middle\" font-size=\"14\">r</text>\n";
    out << "<text x=\"18\" y=\"" << height / 2
        << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 "
           "18 "
        << height / 2 << ")\">phi(r)</text>\n";

    // error bars
    for (int i = 0; i < nr; ++i) {
        const double x = sx(series.r_grid[i]);
        const double ylo = sy(series.phi[i] - series.phi_err[i]);
        const double yhi = sy(series.phi[i] + series.phi_err[i]);
        out << "<line x1=\"" << x << "\" y1=\"" << ylo << "\" x2=\"" << x
            << "\" y2=\"" << yhi << "\" stroke=\"#888\"/>\n";
    }
    // polyline
    out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" "
           "points=\"";
    for (int i = 0; i < nr; ++i)
        out << sx(series.r_grid[i]) << "," << sy(series.phi[i]) << " ";
    out << "\"/>\n";
    for (int i = 0; i < nr; ++i)
        out << "<circle cx=\"" << sx(series.r_grid[i]) << "\" cy=\""
            << sy(series.phi[i]) << "\" r=\"2.5\" fill=\"#1f77b4\"/>\n";
    out << "</svg>\n";
}

}  // namespace hycurv
