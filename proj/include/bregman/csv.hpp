#pragma once

#include <string>
#include <vector>

namespace bregman {

/// One row of the flat output schema shared by every command:
/// experiment,sweep_param,sweep_value,divergence,constant_C,value,bounded_value,q_star
struct CsvRow {
    std::string experiment;
    std::string sweep_param;
    double sweep_value = 0.0;
    std::string divergence;
    double constant_c = 0.0;
    double value = 0.0;
    double bounded_value = 0.0;
    std::vector<double> q_star;
};

std::string format_double(double v);  // %.12g

/// Sorts rows by (experiment, sweep_value, divergence) and writes the file.
/// Byte-stable for identical inputs.
void write_csv(const std::string& path, std::vector<CsvRow> rows);

}  // namespace bregman
