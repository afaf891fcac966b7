#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "bregman/divergence.hpp"
#include "bregman/loss.hpp"

namespace bregman {

/// Tolerance separating genuine bound violations from rounding noise.
inline constexpr double kViolationTolerance = 1e-12;

/// Pairs where both divergences fall below this are skipped in sup-ratio
/// scans (0/0 noise on the diagonal).
inline constexpr double kRatioFloor = 1e-14;

struct BoundReport {
    double constant_used = 0.0;
    std::string grid_spec;
    long violation_count = 0;
    double worst_ratio = 0.0;           // sup D_target / D_KL over scanned pairs
    std::vector<double> worst_p;        // location of the sup (singleton for binary)
    std::vector<double> worst_q;
    std::uint64_t seed = 0;             // recorded for sampled scans

    bool passed() const { return violation_count == 0; }
};

struct ConvexityReport {
    bool is_convex = false;
    std::vector<std::pair<double, double>> violating_region;  // capped sample of (p,q)
    long violation_count = 0;
    double margin = 0.0;            // min of w(q) + (q-p) w'(q) over the grid
    bool sandwich_ok = false;       // weight envelope w(1/2)/(2q) vs w(q) vs w(1/2)/(2(1-q))
    double sandwich_margin = 0.0;
};

/// Theorem 1 threshold (1/2) w(1/2) = -(1/2) G''(1/2). Any strictly larger
/// constant satisfies the binary bound for smooth convex proper losses.
double min_admissible_c_binary(const ProperLoss& loss);

/// Theorem 2 threshold g''(1).
double min_admissible_c_separable(const BregmanGenerator& gen);

/// Canonical "just above the threshold" offset used across the suites.
inline constexpr double kConstantOffset = 1e-6;

/// Scans the interior grid {i/(grid_n+1)}^2 for pairs violating
/// C * KL(p||q) >= D_loss(p||q) - tolerance.
BoundReport verify_theorem1(const ProperLoss& loss, double C, int grid_n);

/// Draws `samples` seeded random pairs in [0,1]^m (or on the simplex) plus a
/// deterministic 11-points-per-axis lattice (m <= 3) and checks
/// C * KL_gen(p||q) >= D_g(p||q) - tolerance. Pairs with infinite KL are
/// vacuous and skipped.
BoundReport verify_theorem2(const BregmanGenerator& gen, double C, int m,
                            long samples, bool simplex, std::uint64_t seed = 42);

using BinaryDivergence = std::function<double(double, double)>;

/// Empirical sup of target/KL over the interior grid (p != q); the smallest
/// constant that could work on that grid. Optionally reports the location.
double estimate_c_min(const BinaryDivergence& target, int grid_n,
                      std::pair<double, double>* worst_location = nullptr);

/// Evaluates the loss-convexity condition w(q) + (q-p) w'(q) >= 0 on the
/// interior grid, plus the weight envelope implied by it.
ConvexityReport classify_convexity(const ProperLoss& loss, int grid_n);

struct LocalExpansion {
    double lhs = 0.0;          // D_loss(p||p+dp) / C
    double fisher_rhs = 0.0;   // (dp^2/2) / (p(1-p))
    double weight_term = 0.0;  // (dp^2/2) w(p)
    double bregman = 0.0;      // raw divergence value
};

/// Second-order expansion check at p with perturbation |dp| <= 1e-2.
LocalExpansion local_expansion_check(const ProperLoss& loss, double p, double dp);

}  // namespace bregman
