#pragma once

#include <complex>
#include <ostream>
#include <string>
#include <vector>

namespace vklab {

struct ConvergenceRow {
    long V = 0;
    long N = 0;
    std::complex<double> value{0.0, 0.0};
    std::complex<double> limit{0.0, 0.0};
    double abs_error = 0.0;
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    std::vector<std::string> warnings;

    double final_error() const { return rows.empty() ? 0.0 : rows.back().abs_error; }
    void write_csv(std::ostream& os) const;
    void write_json(std::ostream& os) const;
};

// Locale-independent shortest-roundtrip formatting shared by every emitter,
// so identical runs produce byte-identical files.
std::string format_double(double x);

}  // namespace vklab
