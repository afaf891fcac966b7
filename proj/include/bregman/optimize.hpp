#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "bregman/divergence.hpp"

namespace bregman {

/// Divergence objective q -> D(p||q) with an analytic coordinate gradient.
struct Objective {
    std::string name;
    std::function<double(const ProbVector&, const ProbVector&)> value;
    std::function<void(const ProbVector&, const ProbVector&, std::vector<double>&)> grad;
    /// Gradient diverges as q_i -> 0; such objectives are optimized over the
    /// clamped simplex q_i >= 1e-10.
    bool needs_interior = false;
    /// Normalization constant paired with the objective in bound chains
    /// (g''(1) + offset for generators, 1 for KL itself).
    double constant = 1.0;
};

Objective objective_from_generator(const BregmanGenerator& gen);
Objective kl_objective();
/// "kl" or a generator name.
Objective objective_by_name(std::string_view name);

struct FixedExpectation {
    double c;
};

struct DivergenceFloor {
    std::string name;  // "tv" or "chi_square"
    std::function<double(const ProbVector&, const ProbVector&)> divergence;
    double eps;
};

DivergenceFloor floor_by_name(std::string_view name, double eps);

using Constraint = std::variant<FixedExpectation, DivergenceFloor>;

struct SimplexProblem {
    ProbVector p;                        // the truth, on the simplex
    std::vector<double> support_values;  // alphabet, e.g. {-1, 0, 1}
    Objective objective;
    Constraint constraint;
};

struct SolveResult {
    ProbVector q_star;
    double objective_value = 0.0;
    double constraint_residual = 0.0;
    int iterations = 0;
    std::string method;
};

/// Minimizes the objective divergence over {q on the simplex, <y,q> = c} by
/// projected gradient with Barzilai-Borwein steps and backtracking.
/// Throws InfeasibleError when c is unattainable and std::domain_error when
/// the objective is infinite on the entire feasible set.
SolveResult minimize_fixed_expectation(const SimplexProblem& prob);

/// Minimizes the objective over {q on the simplex, D_eps(p||q) >= eps}. The
/// minimizer lies on the boundary D_eps = eps; it is found by bisecting the
/// boundary crossing along rays from p through a dense set of simplex
/// directions, then refining the best direction locally.
SolveResult minimize_divergence_floor(const SimplexProblem& prob);

/// Solves prob with either solver according to its constraint type.
SolveResult solve(const SimplexProblem& prob);

struct ChainResult {
    double kl_at_qkl = 0.0;      // KL(p||q_KL)
    double target_at_qkl = 0.0;  // D_g(p||q_KL)
    double C = 0.0;              // g''(1) + offset
    ProbVector q_kl;
};

/// Solves the problem with the KL objective, then evaluates D_g at that
/// minimizer: kl_at_qkl >= target_at_qkl / C - 1e-10.
ChainResult kl_plugin_chain(const BregmanGenerator& gen, const SimplexProblem& prob);

/// Euclidean projection onto the unit simplex (sort-and-threshold).
ProbVector project_to_simplex(const std::vector<double>& v);

/// Euclidean projection onto {q >= lo, sum q = 1, <y,q> = c}; the workhorse
/// behind minimize_fixed_expectation, exposed for testing.
std::vector<double> project_to_constrained_simplex(const std::vector<double>& v,
                                                   const std::vector<double>& y,
                                                   double c, double lo);

}  // namespace bregman
