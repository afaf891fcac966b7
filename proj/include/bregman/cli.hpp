#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bregman {

/// Parsed configuration for one CLI invocation.
struct RunConfig {
    std::string command;  // catalog | verify-theorem1 | verify-theorem2 |
                          // verify-corollary1 | estimate-c |
                          // exp-fixed-expectation | exp-eps-constraint |
                          // regen-fixtures
    int grid_n = 200;
    long samples = 100000;
    std::uint64_t seed = 42;
    std::vector<std::string> losses;      // empty: command default
    std::vector<std::string> generators;  // empty: full generator catalog
    std::string output_path;              // empty: "<command>.csv"
    bool plot = false;
    double clamp_epsilon = 1e-12;
    std::string fixtures_dir = "fixtures";
    std::vector<double> p = {0.25, 0.5, 0.25};
    std::vector<double> support = {-1.0, 0.0, 1.0};
    int m = 3;
    double resolution = 1e-3;  // regen-fixtures lattice step
    int eps_points = 20;       // eps-sweep size
};

/// Executes the command; writes CSV (and SVG with plot=true). Returns 0 when
/// every requested verification passes, 1 when violations were found (the
/// CSV is still written), 2 on usage errors.
int run(const RunConfig& config);

}  // namespace bregman
