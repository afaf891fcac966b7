#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bregman/bounds.hpp"
#include "bregman/optimize.hpp"

namespace bregman {
namespace oracle {

/// Exhaustive scan of the barycentric lattice at the given resolution.
/// Fixed-expectation constraints are matched within the resolution; floor
/// constraints are matched exactly (one-sided). Returns the best feasible
/// lattice point; deliberately simple and independent of the solvers.
std::pair<ProbVector, double> grid_min_constrained(const SimplexProblem& prob,
                                                   double resolution);

/// Brute-force polish of a feasible point: coordinate-pair hill climbing with
/// a halving step, staying exactly feasible (fixed-expectation moves are
/// restricted to the constraint null space; floor moves are filtered by the
/// constraint). Returns the improved point and value.
std::pair<ProbVector, double> refine_constrained_min(const SimplexProblem& prob,
                                                     const ProbVector& start,
                                                     double initial_step);

/// grid_min_constrained followed by refine_constrained_min.
std::pair<ProbVector, double> oracle_min(const SimplexProblem& prob, double resolution);

/// Sup of target/reference over the interior grid {i/(grid_n+1)}^2, skipping
/// pairs where the reference falls below 1e-14. Returns (ratio, (p,q)).
std::pair<double, std::pair<double, double>> grid_sup_ratio(
    const BinaryDivergence& target, const BinaryDivergence& reference, int grid_n);

struct OracleFixture {
    std::string description;
    std::string inputs;  // serialized problem, key=value;... form
    double expected_value = 0.0;
    double resolution = 0.0;
    double tolerance = 0.0;
};

/// key=value;... serialization of a problem (p, support, objective, constraint).
std::string serialize_problem(const SimplexProblem& prob);
SimplexProblem problem_from_inputs(const std::string& inputs);

/// The fixture problems shipped with the repository (expected values unset).
std::vector<OracleFixture> builtin_fixture_problems();

/// Runs the oracle on the builtin problems at the given base resolution.
std::vector<OracleFixture> regenerate_fixtures(double resolution);

std::vector<OracleFixture> load_fixtures(const std::string& path);
void save_fixtures(const std::string& path, const std::vector<OracleFixture>& fixtures);

}  // namespace oracle

using oracle::OracleFixture;

}  // namespace bregman
