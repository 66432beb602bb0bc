#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hycurv/verify.hpp"

namespace hycurv {

// One CSV row of the radial series.
struct SeriesRow {
    double r = 0.0;
    double integral_sinh_H = 0.0;
    double integral_H = 0.0;
    double g = 0.0;
    double phi = 0.0;
    double phi_err = 0.0;
    double bound_B = 0.0;
    double margin = 0.0;  // integral_H - bound_B
};

// Full-precision decimal text (17 significant digits); round-trips to
// the same double.
std::string format_full(double v);

std::vector<SeriesRow> make_series_rows(const PhiSeries& series,
                                        const CorollaryResult* corollary);

void emit_csv(const std::vector<SeriesRow>& rows, std::ostream& out);
void emit_csv_file(const std::vector<SeriesRow>& rows, const std::string& path);

// Minimal standalone SVG: phi(r) polyline with error bars.
void emit_phi_plot(const PhiSeries& series, const std::string& path);

}  // namespace hycurv
