#include "bregman/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "bregman/errors.hpp"

namespace bregman {

namespace {

constexpr double kInteriorFloor = 1e-10;
constexpr double kInf = std::numeric_limits<double>::infinity();

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

/// max(0, w_i - lambda) summing to `mass` (sort-and-threshold).
std::vector<double> simplex_threshold(const std::vector<double>& w, double mass) {
    std::vector<double> s(w);
    std::sort(s.begin(), s.end(), std::greater<>());
    double cumsum = 0.0;
    double lambda = 0.0;
    std::size_t rho = 0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        cumsum += s[k];
        const double candidate = (cumsum - mass) / (k + 1);
        if (s[k] - candidate > 0.0) {
            rho = k + 1;
            lambda = candidate;
        }
    }
    std::vector<double> r(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) r[i] = std::max(0.0, w[i] - lambda);
    (void)rho;
    return r;
}

ProbVector renormalized(std::vector<double> q) {
    double sum = 0.0;
    for (double& x : q) {
        if (x < 0.0) x = 0.0;
        sum += x;
    }
    for (double& x : q) x /= sum;
    ProbVector out;
    out.values = std::move(q);
    out.simplex_flag = true;
    return out;
}

const FixedExpectation* as_fixed(const Constraint& c) {
    return std::get_if<FixedExpectation>(&c);
}

const DivergenceFloor* as_floor(const Constraint& c) {
    return std::get_if<DivergenceFloor>(&c);
}

void check_problem(const SimplexProblem& prob) {
    if (!prob.p.simplex_flag) {
        throw std::invalid_argument("p must lie on the unit simplex");
    }
    if (as_fixed(prob.constraint) &&
        prob.support_values.size() != prob.p.size()) {
        throw std::invalid_argument("support size must match p");
    }
}

/// Barycentric direction lattice used by the floor solver; denominator is
/// chosen to keep the point count moderate.
std::vector<std::vector<double>> direction_lattice(int m) {
    int denom;
    switch (m) {
        case 1: denom = 1; break;
        case 2: denom = 200; break;
        case 3: denom = 60; break;
        case 4: denom = 18; break;
        default: denom = std::max(2, static_cast<int>(std::pow(3000.0, 1.0 / (m - 1)))); break;
    }
    std::vector<std::vector<double>> out;
    std::vector<int> k(m, 0);
    std::function<void(int, int)> rec = [&](int coord, int remaining) {
        if (coord == m - 1) {
            k[coord] = remaining;
            std::vector<double> q(m);
            for (int i = 0; i < m; ++i) q[i] = static_cast<double>(k[i]) / denom;
            out.push_back(std::move(q));
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            k[coord] = v;
            rec(coord + 1, remaining - v);
        }
    };
    rec(0, denom);
    return out;
}

}  // namespace

Objective objective_from_generator(const BregmanGenerator& gen) {
    Objective obj;
    obj.name = gen.name;
    const BregmanGenerator g = gen;
    obj.value = [g](const ProbVector& p, const ProbVector& q) {
        return bregman_separable(g, p, q);
    };
    obj.grad = [g](const ProbVector& p, const ProbVector& q, std::vector<double>& out) {
        out.resize(q.size());
        for (std::size_t i = 0; i < q.size(); ++i) {
            out[i] = g.g_second(q[i]) * (q[i] - p[i]);
        }
    };
    obj.needs_interior = !gen.grad_bounded_at_zero;
    obj.constant = gen.g_second(1.0) + 1e-6;
    return obj;
}

Objective kl_objective() {
    Objective obj;
    obj.name = "kl";
    obj.value = [](const ProbVector& p, const ProbVector& q) {
        return kl_generalized(p, q);
    };
    obj.grad = [](const ProbVector& p, const ProbVector& q, std::vector<double>& out) {
        out.resize(q.size());
        for (std::size_t i = 0; i < q.size(); ++i) {
            out[i] = 1.0 - (q[i] > 0.0 ? p[i] / q[i] : (p[i] > 0.0 ? kInf : 1.0));
        }
    };
    obj.needs_interior = true;
    obj.constant = 1.0;
    return obj;
}

Objective objective_by_name(std::string_view name) {
    if (name == "kl") return kl_objective();
    return objective_from_generator(find_generator(name));
}

DivergenceFloor floor_by_name(std::string_view name, double eps) {
    DivergenceFloor f;
    f.eps = eps;
    if (name == "tv" || name == "total_variation") {
        f.name = "tv";
        f.divergence = [](const ProbVector& p, const ProbVector& q) {
            return total_variation(p, q);
        };
        return f;
    }
    if (name == "chi_square" || name == "chi2") {
        f.name = "chi_square";
        f.divergence = [](const ProbVector& p, const ProbVector& q) {
            return chi_square(p, q);
        };
        return f;
    }
    throw std::invalid_argument("unknown floor divergence '" + std::string(name) + "'");
}

ProbVector project_to_simplex(const std::vector<double>& v) {
    ProbVector out;
    out.values = simplex_threshold(v, 1.0);
    out.simplex_flag = true;
    return out;
}

std::vector<double> project_to_constrained_simplex(const std::vector<double>& v,
                                                   const std::vector<double>& y,
                                                   double c, double lo) {
    const std::size_t m = v.size();
    if (y.size() != m) throw std::invalid_argument("support size mismatch");
    const double mass = 1.0 - static_cast<double>(m) * lo;
    if (mass <= 0.0) throw std::invalid_argument("floor too large for dimension");

    // Shifted problem: r = q - lo >= 0, sum r = mass, <y,r> = c - lo*sum(y).
    const double target = c - lo * std::accumulate(y.begin(), y.end(), 0.0);
    std::vector<double> base(m);
    for (std::size_t i = 0; i < m; ++i) base[i] = v[i] - lo;

    const double ymin = *std::min_element(y.begin(), y.end());
    const double ymax = *std::max_element(y.begin(), y.end());

    auto restore = [&](const std::vector<double>& r) {
        std::vector<double> q(m);
        for (std::size_t i = 0; i < m; ++i) q[i] = r[i] + lo;
        return q;
    };

    // Degenerate support: the expectation constraint is either vacuous or
    // unsatisfiable.
    if (ymax - ymin < 1e-15) {
        if (std::abs(target - ymin * mass) > 1e-9) {
            throw InfeasibleError("expectation constraint unsatisfiable: support is constant");
        }
        return restore(simplex_threshold(base, mass));
    }
    if (target < ymin * mass - 1e-12 || target > ymax * mass + 1e-12) {
        throw InfeasibleError("expectation target outside the attainable range");
    }

    auto expectation_at = [&](double mu) {
        std::vector<double> w(m);
        for (std::size_t i = 0; i < m; ++i) w[i] = base[i] - mu * y[i];
        const std::vector<double> r = simplex_threshold(w, mass);
        return std::pair{dot(y, r), r};
    };

    // <y, r(mu)> is non-increasing in mu; bracket then bisect.
    double lo_mu = -1.0, hi_mu = 1.0;
    for (int k = 0; k < 90; ++k) {
        if (expectation_at(lo_mu).first >= target) break;
        lo_mu *= 2.0;
    }
    for (int k = 0; k < 90; ++k) {
        if (expectation_at(hi_mu).first <= target) break;
        hi_mu *= 2.0;
    }
    std::vector<double> r;
    for (int k = 0; k < 200; ++k) {
        const double mid = 0.5 * (lo_mu + hi_mu);
        auto [e, rm] = expectation_at(mid);
        r = rm;
        if (e > target) {
            lo_mu = mid;
        } else {
            hi_mu = mid;
        }
        if (hi_mu - lo_mu < 1e-16 * std::max(1.0, std::abs(lo_mu))) break;
    }
    // Snap the expectation exactly by sliding along y within the support.
    const double drift = target - dot(y, r);
    if (std::abs(drift) > 0.0) {
        // Move along the projection of y onto {sum = 0} restricted to the
        // positive support; small drift, so positivity is preserved.
        std::vector<std::size_t> support;
        for (std::size_t i = 0; i < m; ++i)
            if (r[i] > 0.0) support.push_back(i);
        if (support.size() >= 2) {
            double ybar = 0.0;
            for (auto i : support) ybar += y[i];
            ybar /= support.size();
            double denom = 0.0;
            for (auto i : support) denom += (y[i] - ybar) * (y[i] - ybar);
            if (denom > 1e-30) {
                for (auto i : support) r[i] += drift * (y[i] - ybar) / denom;
                for (auto i : support) r[i] = std::max(r[i], 0.0);
            }
        }
    }
    return restore(r);
}

SolveResult minimize_fixed_expectation(const SimplexProblem& prob) {
    check_problem(prob);
    const auto* fixed = as_fixed(prob.constraint);
    if (!fixed) throw std::invalid_argument("problem does not carry a fixed-expectation constraint");

    const std::vector<double>& y = prob.support_values;
    const double c = fixed->c;
    const std::size_t m = prob.p.size();
    const double lo = prob.objective.needs_interior ? kInteriorFloor : 0.0;

    const double ymin = *std::min_element(y.begin(), y.end());
    const double ymax = *std::max_element(y.begin(), y.end());
    if (c < ymin - 1e-12 || c > ymax + 1e-12) {
        throw InfeasibleError("expectation target outside [min support, max support]");
    }

    std::vector<double> x;
    try {
        x = project_to_constrained_simplex(prob.p.values, y, c, lo);
    } catch (const InfeasibleError&) {
        if (lo > 0.0) {
            // Feasible on the closed simplex but not on the clamped one: the
            // objective is infinite everywhere feasible.
            throw std::domain_error("objective infinite on the whole feasible set");
        }
        throw;
    }

    auto value_at = [&](const std::vector<double>& q) {
        ProbVector qv{q, true};
        return prob.objective.value(prob.p, qv);
    };

    std::vector<double> grad(m), trial(m), prev_x, prev_grad;
    double fx = value_at(x);
    if (std::isinf(fx)) {
        throw std::domain_error("objective infinite at the feasible starting point");
    }

    int iterations = 0;
    double step = 1.0;
    for (; iterations < 10000; ++iterations) {
        ProbVector xv{x, true};
        prob.objective.grad(prob.p, xv, grad);

        // Prox residual with unit step measures stationarity.
        const std::vector<double> probe = [&] {
            std::vector<double> t(m);
            for (std::size_t i = 0; i < m; ++i) t[i] = x[i] - grad[i];
            return project_to_constrained_simplex(t, y, c, lo);
        }();
        double residual = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            residual += (x[i] - probe[i]) * (x[i] - probe[i]);
        residual = std::sqrt(residual);
        if (residual <= 1e-10) break;

        // Barzilai-Borwein initial step, safeguarded.
        if (!prev_x.empty()) {
            double sty = 0.0, yty = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                const double sx = x[i] - prev_x[i];
                const double sg = grad[i] - prev_grad[i];
                sty += sx * sg;
                yty += sg * sg;
            }
            step = (yty > 1e-30 && sty > 0.0) ? std::clamp(sty / yty, 1e-12, 1e6) : 1.0;
        }
        prev_x = x;
        prev_grad = grad;

        bool moved = false;
        for (int bt = 0; bt < 60; ++bt) {
            for (std::size_t i = 0; i < m; ++i) trial[i] = x[i] - step * grad[i];
            trial = project_to_constrained_simplex(trial, y, c, lo);
            double dd = 0.0, gd = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                const double d = trial[i] - x[i];
                dd += d * d;
                gd += grad[i] * d;
            }
            const double ft = value_at(trial);
            if (ft <= fx + gd + dd / (2.0 * step) + 1e-18) {
                x = trial;
                fx = ft;
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) break;
    }

    SolveResult result;
    result.q_star = renormalized(x);
    result.objective_value = value_at(result.q_star.values);
    result.constraint_residual = std::abs(dot(y, result.q_star.values) - c);
    result.iterations = iterations;
    result.method = "projected_gradient_bb";
    return result;
}

SolveResult minimize_divergence_floor(const SimplexProblem& prob) {
    check_problem(prob);
    const auto* floor = as_floor(prob.constraint);
    if (!floor) throw std::invalid_argument("problem does not carry a divergence-floor constraint");
    if (floor->eps < 0.0) throw std::invalid_argument("eps must be nonnegative");

    const std::size_t m = prob.p.size();
    const ProbVector& p = prob.p;

    auto objective_at = [&](const std::vector<double>& q) {
        ProbVector qv{q, true};
        return prob.objective.value(p, qv);
    };
    auto floor_at = [&](const std::vector<double>& q) {
        ProbVector qv{q, true};
        return floor->divergence(p, qv);
    };

    if (floor->eps == 0.0) {
        SolveResult result;
        result.q_star = p;
        result.objective_value = 0.0;
        result.constraint_residual = 0.0;
        result.iterations = 0;
        result.method = "trivial";
        return result;
    }

    // The divergence is 0 at p and nondecreasing along rays q(t) = p+t(u-p),
    // so the crossing D = eps is found by bisection in t.
    auto crossing = [&](const std::vector<double>& u) -> std::pair<bool, std::vector<double>> {
        std::vector<double> q(m);
        auto at = [&](double t) {
            for (std::size_t i = 0; i < m; ++i) q[i] = p[i] + t * (u[i] - p[i]);
            return floor_at(q);
        };
        if (at(1.0) < floor->eps) return {false, {}};
        double lo = 0.0, hi = 1.0;
        for (int k = 0; k < 100 && hi - lo > 1e-15; ++k) {
            const double mid = 0.5 * (lo + hi);
            if (at(mid) >= floor->eps) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        at(hi);  // feasible side
        return {true, q};
    };

    double best_value = kInf;
    std::vector<double> best_u, best_q;
    long evals = 0;
    for (const auto& u : direction_lattice(static_cast<int>(m))) {
        auto [ok, q] = crossing(u);
        ++evals;
        if (!ok) continue;
        const double v = objective_at(q);
        if (v < best_value) {
            best_value = v;
            best_u = u;
            best_q = q;
        }
    }
    if (best_u.empty()) {
        throw InfeasibleError("eps exceeds the attainable value of the floor divergence");
    }
    if (std::isinf(best_value)) {
        throw std::domain_error("objective infinite on the whole feasible boundary");
    }

    // Local refinement of the direction: coordinate-pair moves with a
    // shrinking step, re-bisecting the boundary crossing each time.
    double h = 1.0 / 60.0;
    while (h > 1e-8) {
        bool improved = true;
        int sweeps = 0;
        while (improved && sweeps < 200) {
            improved = false;
            ++sweeps;
            for (std::size_t i = 0; i < m; ++i) {
                for (std::size_t j = 0; j < m; ++j) {
                    if (i == j) continue;
                    std::vector<double> u = best_u;
                    u[i] += h;
                    u[j] -= h;
                    if (u[i] > 1.0 || u[j] < 0.0) continue;
                    auto [ok, q] = crossing(u);
                    ++evals;
                    if (!ok) continue;
                    const double v = objective_at(q);
                    if (v < best_value - 1e-16) {
                        best_value = v;
                        best_u = u;
                        best_q = q;
                        improved = true;
                    }
                }
            }
        }
        h *= 0.5;
    }

    SolveResult result;
    result.q_star = renormalized(best_q);
    result.objective_value = objective_at(result.q_star.values);
    result.constraint_residual = std::abs(floor_at(result.q_star.values) - floor->eps);
    result.iterations = static_cast<int>(std::min<long>(evals, std::numeric_limits<int>::max()));
    result.method = "ray_bisection_refined";
    return result;
}

SolveResult solve(const SimplexProblem& prob) {
    if (as_fixed(prob.constraint)) return minimize_fixed_expectation(prob);
    return minimize_divergence_floor(prob);
}

ChainResult kl_plugin_chain(const BregmanGenerator& gen, const SimplexProblem& prob) {
    SimplexProblem kl_prob = prob;
    kl_prob.objective = kl_objective();
    const SolveResult kl_solution = solve(kl_prob);

    ChainResult chain;
    chain.q_kl = kl_solution.q_star;
    chain.kl_at_qkl = kl_solution.objective_value;
    chain.target_at_qkl = bregman_separable(gen, prob.p, chain.q_kl);
    chain.C = gen.g_second(1.0) + 1e-6;
    return chain;
}

}  // namespace bregman
