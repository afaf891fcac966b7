#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bregman/loss.hpp"
#include "bregman/numerics.hpp"

namespace bregman {

/// Scalar convex generator g of a separable Bregman divergence
/// D_g(p||q) = sum_i g(p_i) - g(q_i) - g'(q_i)(p_i - q_i).
struct BregmanGenerator {
    std::string name;
    ScalarFn g;
    ScalarFn g_prime;
    ScalarFn g_second;
    ScalarFn g_third;
    /// false when g'' blows up toward 0 (xlogx, power_3_2); solvers then
    /// keep iterates away from the zero boundary.
    bool grad_bounded_at_zero = true;
};

/// A vector with coordinates in [0,1]; simplex_flag marks coordinates that
/// sum to 1 within 1e-12.
struct ProbVector {
    std::vector<double> values;
    bool simplex_flag = false;

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
};

/// Validates coordinates and detects the simplex case.
ProbVector make_prob_vector(std::vector<double> values);

/// Regret of a proper loss: L(p,q) - G(p). For smooth losses this is the
/// Savage form -G(p) + G(q) + (p-q)G'(q); non-smooth losses (0-1) use the
/// expected-loss route directly, which reproduces their piecewise closed
/// form.
double bregman_binary(const ProperLoss& loss, double p, double q);

double bregman_separable(const BregmanGenerator& gen, const ProbVector& p,
                         const ProbVector& q);

/// Coordinate-wise generators (diagonal Mahalanobis families and friends).
double bregman_separable_multi(const std::vector<BregmanGenerator>& gens,
                               const ProbVector& p, const ProbVector& q);

/// Extended KL divergence sum p_i log(p_i/q_i) - sum p_i + sum q_i with
/// 0 log 0 = 0; +infinity when some q_i = 0 < p_i. Defined on all of
/// [0,1]^m and equal to ordinary KL when both vectors are on the simplex.
double kl_generalized(const ProbVector& p, const ProbVector& q);

/// kl_generalized on the pairs (p, 1-p), (q, 1-q).
double kl_binary(double p, double q);

/// sum |p_i - q_i| (no 1/2 factor).
double total_variation(const ProbVector& p, const ProbVector& q);

/// sum (p_i - q_i)^2 / q_i; +infinity when some q_i = 0 with p_i != q_i.
double chi_square(const ProbVector& p, const ProbVector& q);

/// (1/2) (sum |p_i - q_i|)^2.
double pinsker_rhs(const ProbVector& p, const ProbVector& q);

BregmanGenerator squared_error_generator();
BregmanGenerator xlogx_generator();
BregmanGenerator weighted_squared_error_generator(double a);
/// g(x) = (4/3) x^(3/2): curvature g'' = x^(-1/2), analogous to the arcsine
/// loss weight on the binary side.
BregmanGenerator power_3_2_generator();

/// The generators exercised by the experiments: squared_error, xlogx,
/// weighted_squared_error_0.5, weighted_squared_error_2, power_3_2.
std::vector<BregmanGenerator> generator_catalog();
BregmanGenerator find_generator(std::string_view name);
std::vector<std::string> known_generator_names();

}  // namespace bregman
