#include "bregman/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <tuple>

namespace bregman {

std::string format_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_csv(const std::string& path, std::vector<CsvRow> rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const CsvRow& a, const CsvRow& b) {
        return std::tie(a.experiment, a.sweep_value, a.divergence) <
               std::tie(b.experiment, b.sweep_value, b.divergence);
    });
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write CSV file: " + path);
    out << "experiment,sweep_param,sweep_value,divergence,constant_C,value,bounded_value,q_star\n";
    for (const auto& r : rows) {
        out << r.experiment << ',' << r.sweep_param << ',' << format_double(r.sweep_value)
            << ',' << r.divergence << ',' << format_double(r.constant_c) << ','
            << format_double(r.value) << ',' << format_double(r.bounded_value) << ',';
        for (std::size_t i = 0; i < r.q_star.size(); ++i) {
            if (i) out << ';';
            out << format_double(r.q_star[i]);
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("error while writing CSV file: " + path);
}

}  // namespace bregman
