#include "bregman/bounds.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "bregman/errors.hpp"
#include "bregman/parallel.hpp"
#include "bregman/rng.hpp"

namespace bregman {

namespace {

std::vector<double> interior_grid(int n) {
    std::vector<double> g(n);
    for (int i = 1; i <= n; ++i) g[i - 1] = static_cast<double>(i) / (n + 1);
    return g;
}

struct ScanState {
    long violations = 0;
    double worst_ratio = 0.0;
    std::vector<double> worst_p, worst_q;
};

void merge(ScanState& into, const ScanState& from) {
    into.violations += from.violations;
    if (from.worst_ratio > into.worst_ratio) {
        into.worst_ratio = from.worst_ratio;
        into.worst_p = from.worst_p;
        into.worst_q = from.worst_q;
    }
}

/// One pair: updates violation count and the sup ratio. The bound is
/// vacuous when the reference is infinite.
void scan_pair(ScanState& s, double C, double reference, double target,
               const std::vector<double>& p, const std::vector<double>& q) {
    if (std::isinf(reference)) return;
    if (C * reference - target < -kViolationTolerance) ++s.violations;
    if (reference < kRatioFloor && target < kRatioFloor) return;
    if (reference <= 0.0) return;
    const double ratio = target / reference;
    if (ratio > s.worst_ratio) {
        s.worst_ratio = ratio;
        s.worst_p = p;
        s.worst_q = q;
    }
}

/// Barycentric lattice with denominator n (points k/n summing to 1).
void simplex_lattice(int m, int n, std::vector<std::vector<double>>& out) {
    std::vector<int> k(m, 0);
    std::function<void(int, int)> rec = [&](int coord, int remaining) {
        if (coord == m - 1) {
            k[coord] = remaining;
            std::vector<double> q(m);
            for (int i = 0; i < m; ++i) q[i] = static_cast<double>(k[i]) / n;
            out.push_back(std::move(q));
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            k[coord] = v;
            rec(coord + 1, remaining - v);
        }
    };
    rec(0, n);
}

void cube_lattice(int m, int points_per_axis, std::vector<std::vector<double>>& out) {
    std::vector<int> k(m, 0);
    const int n = points_per_axis - 1;
    std::function<void(int)> rec = [&](int coord) {
        if (coord == m) {
            std::vector<double> q(m);
            for (int i = 0; i < m; ++i) q[i] = static_cast<double>(k[i]) / n;
            out.push_back(std::move(q));
            return;
        }
        for (int v = 0; v <= n; ++v) {
            k[coord] = v;
            rec(coord + 1);
        }
    };
    rec(0);
}

}  // namespace

double min_admissible_c_binary(const ProperLoss& loss) {
    if (!loss.smooth) {
        throw NotSmoothError("min_admissible_c_binary: '" + loss.name + "' is not smooth");
    }
    return 0.5 * loss.w(0.5);
}

double min_admissible_c_separable(const BregmanGenerator& gen) {
    return gen.g_second(1.0);
}

BoundReport verify_theorem1(const ProperLoss& loss, double C, int grid_n) {
    if (C <= 0.0) throw std::invalid_argument("C must be positive");
    if (grid_n < 10) throw std::invalid_argument("grid_n must be >= 10");

    const std::vector<double> grid = interior_grid(grid_n);
    const std::size_t n = grid.size();

    std::vector<ScanState> partial(chunk_count(n));
    parallel_chunks(n, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        ScanState& s = partial[chunk];
        for (std::size_t i = begin; i < end; ++i) {
            const double p = grid[i];
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                const double q = grid[j];
                scan_pair(s, C, kl_binary(p, q), bregman_binary(loss, p, q), {p}, {q});
            }
        }
    });

    ScanState total;
    for (const auto& s : partial) merge(total, s);

    BoundReport report;
    report.constant_used = C;
    report.grid_spec = "interior grid " + std::to_string(grid_n) + "x" + std::to_string(grid_n);
    report.violation_count = total.violations;
    report.worst_ratio = total.worst_ratio;
    report.worst_p = total.worst_p;
    report.worst_q = total.worst_q;
    return report;
}

BoundReport verify_theorem2(const BregmanGenerator& gen, double C, int m,
                            long samples, bool simplex, std::uint64_t seed) {
    if (C <= 0.0) throw std::invalid_argument("C must be positive");
    if (m < 1) throw std::invalid_argument("dimension must be >= 1");

    // Samples are generated sequentially (deterministic stream), scanned in
    // parallel chunks, and merged in chunk order.
    DetRng rng(seed);
    std::vector<std::vector<double>> ps, qs;
    ps.reserve(samples);
    qs.reserve(samples);
    for (long i = 0; i < samples; ++i) {
        ps.push_back(simplex ? rng.simplex_point(m) : rng.cube_point(m));
        qs.push_back(simplex ? rng.simplex_point(m) : rng.cube_point(m));
    }
    if (m <= 3) {
        std::vector<std::vector<double>> lattice;
        if (simplex) {
            simplex_lattice(m, 10, lattice);
        } else {
            cube_lattice(m, 11, lattice);
        }
        for (const auto& p : lattice) {
            for (const auto& q : lattice) {
                ps.push_back(p);
                qs.push_back(q);
            }
        }
    }

    const std::size_t n = ps.size();
    std::vector<ScanState> partial(chunk_count(n));
    parallel_chunks(n, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        ScanState& s = partial[chunk];
        for (std::size_t i = begin; i < end; ++i) {
            const ProbVector p{ps[i], simplex};
            const ProbVector q{qs[i], simplex};
            scan_pair(s, C, kl_generalized(p, q), bregman_separable(gen, p, q),
                      ps[i], qs[i]);
        }
    });

    ScanState total;
    for (const auto& s : partial) merge(total, s);

    BoundReport report;
    report.constant_used = C;
    report.grid_spec = std::string(simplex ? "simplex" : "cube") + " m=" + std::to_string(m) +
                       " samples=" + std::to_string(samples) +
                       (m <= 3 ? " + lattice11" : "");
    report.seed = seed;
    report.violation_count = total.violations;
    report.worst_ratio = total.worst_ratio;
    report.worst_p = total.worst_p;
    report.worst_q = total.worst_q;
    return report;
}

double estimate_c_min(const BinaryDivergence& target, int grid_n,
                      std::pair<double, double>* worst_location) {
    const std::vector<double> grid = interior_grid(grid_n);
    double best = 0.0;
    std::pair<double, double> where{0.0, 0.0};
    for (double p : grid) {
        for (double q : grid) {
            if (p == q) continue;
            const double ref = kl_binary(p, q);
            const double tgt = target(p, q);
            if (std::isinf(ref) || ref < kRatioFloor) continue;
            if (tgt < kRatioFloor && ref < kRatioFloor) continue;
            const double ratio = tgt / ref;
            if (ratio > best) {
                best = ratio;
                where = {p, q};
            }
        }
    }
    if (worst_location) *worst_location = where;
    return best;
}

ConvexityReport classify_convexity(const ProperLoss& loss, int grid_n) {
    if (!loss.smooth) {
        throw NotSmoothError("classify_convexity: '" + loss.name + "' is not smooth");
    }
    const std::vector<double> grid = interior_grid(grid_n);

    ConvexityReport report;
    report.margin = std::numeric_limits<double>::infinity();
    constexpr std::size_t kRegionCap = 1024;
    for (double q : grid) {
        const double wq = loss.w(q);
        const double wpq = loss.w_prime(q);
        for (double p : grid) {
            const double value = wq + (q - p) * wpq;
            if (value < report.margin) report.margin = value;
            if (value < -1e-9) {
                ++report.violation_count;
                if (report.violating_region.size() < kRegionCap) {
                    report.violating_region.emplace_back(p, q);
                }
            }
        }
    }
    report.is_convex = report.margin >= -1e-9;

    // Weight envelope: for q >= 1/2, w(1/2)/(2q) <= w(q) <= w(1/2)/(2(1-q));
    // mirrored below 1/2. A consequence of convexity, verified directly.
    const double wall = loss.w(0.5);
    report.sandwich_margin = std::numeric_limits<double>::infinity();
    for (double q : grid) {
        const double lo = q >= 0.5 ? wall / (2.0 * q) : wall / (2.0 * (1.0 - q));
        const double hi = q >= 0.5 ? wall / (2.0 * (1.0 - q)) : wall / (2.0 * q);
        const double wq = loss.w(q);
        const double margin = std::min(wq - lo, hi - wq);
        if (margin < report.sandwich_margin) report.sandwich_margin = margin;
    }
    report.sandwich_ok = report.sandwich_margin >= -1e-9;
    return report;
}

LocalExpansion local_expansion_check(const ProperLoss& loss, double p, double dp) {
    if (std::abs(dp) > 1e-2) {
        throw std::invalid_argument("dp too large for the second-order contract");
    }
    const double q = p + dp;
    if (p <= 0.0 || p >= 1.0 || q <= 0.0 || q >= 1.0) {
        throw std::invalid_argument("p and p+dp must lie in (0,1)");
    }
    const double C = min_admissible_c_binary(loss) + 1e-9;
    LocalExpansion e;
    e.bregman = bregman_binary(loss, p, q);
    e.lhs = e.bregman / C;
    e.fisher_rhs = 0.5 * dp * dp / (p * (1.0 - p));
    e.weight_term = 0.5 * dp * dp * loss.w(p);
    return e;
}

}  // namespace bregman
