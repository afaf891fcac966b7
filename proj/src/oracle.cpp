#include "bregman/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "bregman/errors.hpp"

namespace bregman {
namespace oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double constraint_gap(const SimplexProblem& prob, const std::vector<double>& q,
                      double resolution) {
    if (const auto* fixed = std::get_if<FixedExpectation>(&prob.constraint)) {
        const double e =
            std::inner_product(q.begin(), q.end(), prob.support_values.begin(), 0.0);
        return std::abs(e - fixed->c) <= resolution ? 0.0 : kInf;
    }
    const auto* floor = std::get_if<DivergenceFloor>(&prob.constraint);
    const ProbVector qv{q, true};
    return floor->divergence(prob.p, qv) >= floor->eps ? 0.0 : kInf;
}

bool is_feasible(const SimplexProblem& prob, const std::vector<double>& q,
                 double resolution) {
    return constraint_gap(prob, q, resolution) == 0.0;
}

double objective_at(const SimplexProblem& prob, const std::vector<double>& q) {
    const ProbVector qv{q, true};
    return prob.objective.value(prob.p, qv);
}

}  // namespace

std::pair<ProbVector, double> grid_min_constrained(const SimplexProblem& prob,
                                                   double resolution) {
    const int m = static_cast<int>(prob.p.size());
    if (m > 4) throw std::invalid_argument("oracle lattice limited to m <= 4");
    if (resolution <= 0.0 || resolution > 0.5) {
        throw std::invalid_argument("resolution must lie in (0, 0.5]");
    }
    const int n = std::max(1, static_cast<int>(std::llround(1.0 / resolution)));

    double best = kInf;
    std::vector<double> best_q;
    std::vector<int> k(m, 0);
    std::vector<double> q(m);
    std::function<void(int, int)> rec = [&](int coord, int remaining) {
        if (coord == m - 1) {
            k[coord] = remaining;
            for (int i = 0; i < m; ++i) q[i] = static_cast<double>(k[i]) / n;
            if (!is_feasible(prob, q, resolution)) return;
            const double v = objective_at(prob, q);
            if (v < best) {
                best = v;
                best_q = q;
            }
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            k[coord] = v;
            rec(coord + 1, remaining - v);
        }
    };
    rec(0, n);

    if (best_q.empty()) {
        throw InfeasibleError("no feasible lattice point at this resolution");
    }
    return {ProbVector{best_q, true}, best};
}

std::pair<ProbVector, double> refine_constrained_min(const SimplexProblem& prob,
                                                     const ProbVector& start,
                                                     double initial_step) {
    const std::size_t m = start.size();
    std::vector<double> x = start.values;

    const auto* fixed = std::get_if<FixedExpectation>(&prob.constraint);

    // Move directions preserving sum q = 1; for fixed expectation they must
    // also preserve <y,q>, i.e. lie in the null space of [1; y].
    std::vector<std::vector<double>> moves;
    if (fixed) {
        const std::vector<double>& y = prob.support_values;
        // Snap the start onto the exact constraint along y - mean(y); repeat
        // on the positive support if clamping introduced drift again.
        for (int pass = 0; pass < 4; ++pass) {
            double ybar = 0.0, count = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                if (x[i] > 0.0 || pass == 0) {
                    ybar += y[i];
                    count += 1.0;
                }
            }
            if (count < 2.0) break;
            ybar /= count;
            double denom = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                if (x[i] > 0.0 || pass == 0) denom += (y[i] - ybar) * (y[i] - ybar);
            }
            if (denom <= 1e-30) break;
            const double e = std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
            const double drift = fixed->c - e;
            if (std::abs(drift) <= 1e-14) break;
            for (std::size_t i = 0; i < m; ++i) {
                if (x[i] > 0.0 || pass == 0) x[i] += drift * (y[i] - ybar) / denom;
            }
            for (auto& v : x) v = std::max(v, 0.0);
        }
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = i + 1; j < m; ++j) {
                for (std::size_t l = 0; l < m; ++l) {
                    if (l == i || l == j) continue;
                    // d = a e_i + b e_j + g e_l with a+b+g = 0, <y,d> = 0.
                    std::vector<double> d(m, 0.0);
                    const double a = y[j] - y[l];
                    const double b = y[l] - y[i];
                    const double g = y[i] - y[j];
                    if (std::abs(a) + std::abs(b) + std::abs(g) < 1e-15) continue;
                    d[i] = a;
                    d[j] = b;
                    d[l] = g;
                    const double norm = std::sqrt(a * a + b * b + g * g);
                    for (auto& v : d) v /= norm;
                    moves.push_back(std::move(d));
                }
            }
        }
    } else {
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                if (i == j) continue;
                std::vector<double> d(m, 0.0);
                d[i] = 1.0;
                d[j] = -1.0;
                moves.push_back(std::move(d));
            }
        }
    }

    auto feasible = [&](const std::vector<double>& q) {
        for (double v : q)
            if (v < 0.0 || v > 1.0) return false;
        return is_feasible(prob, q, 1e-9);
    };

    double best = feasible(x) ? objective_at(prob, x) : kInf;
    if (std::isinf(best)) {
        // Fall back to the unsnapped start.
        x = start.values;
        best = objective_at(prob, x);
    }

    double h = initial_step;
    std::vector<double> trial(m);
    while (h > 1e-9) {
        bool improved = true;
        int sweeps = 0;
        while (improved && sweeps < 400) {
            improved = false;
            ++sweeps;
            for (const auto& d : moves) {
                for (double sign : {1.0, -1.0}) {
                    for (std::size_t i = 0; i < m; ++i) trial[i] = x[i] + sign * h * d[i];
                    if (!feasible(trial)) continue;
                    const double v = objective_at(prob, trial);
                    if (v < best - 1e-18) {
                        best = v;
                        x = trial;
                        improved = true;
                    }
                }
            }
        }
        h *= 0.5;
    }
    return {ProbVector{x, true}, best};
}

std::pair<ProbVector, double> oracle_min(const SimplexProblem& prob, double resolution) {
    auto [q, value] = grid_min_constrained(prob, resolution);
    // The refined point is exactly feasible (lattice points only satisfy the
    // expectation constraint within the resolution), so it is authoritative.
    return refine_constrained_min(prob, q, resolution);
}

std::pair<double, std::pair<double, double>> grid_sup_ratio(
    const BinaryDivergence& target, const BinaryDivergence& reference, int grid_n) {
    double best = 0.0;
    std::pair<double, double> where{0.0, 0.0};
    // Scanned q-major to stay an independent code path from the bound module.
    for (int j = 1; j <= grid_n; ++j) {
        const double q = static_cast<double>(j) / (grid_n + 1);
        for (int i = 1; i <= grid_n; ++i) {
            if (i == j) continue;
            const double p = static_cast<double>(i) / (grid_n + 1);
            const double ref = reference(p, q);
            if (!std::isfinite(ref) || ref < 1e-14) continue;
            const double ratio = target(p, q) / ref;
            if (ratio > best) {
                best = ratio;
                where = {p, q};
            }
        }
    }
    return {best, where};
}

namespace {

std::string join(const std::vector<double>& v) {
    std::ostringstream out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out << ',';
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.12g", v[i]);
        out << buf;
    }
    return out.str();
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> v;
    std::istringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (!tok.empty()) v.push_back(std::stod(tok));
    }
    return v;
}

}  // namespace

std::string serialize_problem(const SimplexProblem& prob) {
    std::ostringstream out;
    out << "p=" << join(prob.p.values);
    out << ";support=" << join(prob.support_values);
    out << ";objective=" << prob.objective.name;
    if (const auto* fixed = std::get_if<FixedExpectation>(&prob.constraint)) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.12g", fixed->c);
        out << ";constraint=fixed_expectation;c=" << buf;
    } else {
        const auto* floor = std::get_if<DivergenceFloor>(&prob.constraint);
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.12g", floor->eps);
        out << ";constraint=floor;floor_divergence=" << floor->name << ";eps=" << buf;
    }
    return out.str();
}

SimplexProblem problem_from_inputs(const std::string& inputs) {
    std::map<std::string, std::string> kv;
    std::istringstream in(inputs);
    std::string tok;
    while (std::getline(in, tok, ';')) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    auto need = [&kv, &inputs](const std::string& key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end()) {
            throw std::invalid_argument("fixture inputs missing '" + key + "': " + inputs);
        }
        return it->second;
    };

    SimplexProblem prob;
    prob.p = make_prob_vector(parse_list(need("p")));
    prob.support_values = parse_list(need("support"));
    prob.objective = objective_by_name(need("objective"));
    if (need("constraint") == "fixed_expectation") {
        prob.constraint = FixedExpectation{std::stod(need("c"))};
    } else {
        prob.constraint =
            floor_by_name(need("floor_divergence"), std::stod(need("eps")));
    }
    return prob;
}

std::vector<OracleFixture> builtin_fixture_problems() {
    const std::string base = "p=0.25,0.5,0.25;support=-1,0,1";
    std::vector<OracleFixture> f;
    auto add = [&f](std::string desc, std::string inputs, double tol) {
        OracleFixture fx;
        fx.description = std::move(desc);
        fx.inputs = std::move(inputs);
        fx.tolerance = tol;
        f.push_back(std::move(fx));
    };
    add("fixed expectation c=0, KL objective",
        base + ";objective=kl;constraint=fixed_expectation;c=0", 1e-6);
    add("fixed expectation c=0.5, squared error",
        base + ";objective=squared_error;constraint=fixed_expectation;c=0.5", 1e-5);
    add("fixed expectation c=1, squared error (vertex)",
        base + ";objective=squared_error;constraint=fixed_expectation;c=1", 1e-5);
    add("fixed expectation c=0.5, KL objective",
        base + ";objective=kl;constraint=fixed_expectation;c=0.5", 1e-5);
    add("fixed expectation c=0.5, power_3_2 objective",
        base + ";objective=power_3_2;constraint=fixed_expectation;c=0.5", 1e-5);
    add("TV floor eps=0.2, KL objective",
        base + ";objective=kl;constraint=floor;floor_divergence=tv;eps=0.2", 1e-5);
    add("TV floor eps=0.2, squared error objective",
        base + ";objective=squared_error;constraint=floor;floor_divergence=tv;eps=0.2",
        1e-5);
    add("chi-square floor eps=0.1, squared error objective",
        base +
            ";objective=squared_error;constraint=floor;floor_divergence=chi_square;eps=0.1",
        1e-5);
    add("chi-square floor eps=0.1, KL objective",
        base + ";objective=kl;constraint=floor;floor_divergence=chi_square;eps=0.1", 1e-5);
    return f;
}

std::vector<OracleFixture> regenerate_fixtures(double resolution) {
    std::vector<OracleFixture> fixtures = builtin_fixture_problems();
    for (auto& fx : fixtures) {
        const SimplexProblem prob = problem_from_inputs(fx.inputs);
        const auto [q, value] = oracle_min(prob, resolution);
        fx.expected_value = value;
        fx.resolution = resolution;
    }
    return fixtures;
}

std::vector<OracleFixture> load_fixtures(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open fixtures file: " + path);
    std::vector<OracleFixture> fixtures;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        OracleFixture fx;
        std::string expected, resolution, tolerance;
        if (!std::getline(ls, fx.description, '|') || !std::getline(ls, fx.inputs, '|') ||
            !std::getline(ls, expected, '|') || !std::getline(ls, resolution, '|') ||
            !std::getline(ls, tolerance, '|')) {
            throw std::runtime_error("malformed fixture line: " + line);
        }
        fx.expected_value = std::stod(expected);
        fx.resolution = std::stod(resolution);
        fx.tolerance = std::stod(tolerance);
        fixtures.push_back(std::move(fx));
    }
    return fixtures;
}

void save_fixtures(const std::string& path, const std::vector<OracleFixture>& fixtures) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write fixtures file: " + path);
    out << "# description|inputs|expected_value|resolution|tolerance\n";
    for (const auto& fx : fixtures) {
        char expected[40], resolution[40], tolerance[40];
        std::snprintf(expected, sizeof(expected), "%.12g", fx.expected_value);
        std::snprintf(resolution, sizeof(resolution), "%.12g", fx.resolution);
        std::snprintf(tolerance, sizeof(tolerance), "%.12g", fx.tolerance);
        out << fx.description << '|' << fx.inputs << '|' << expected << '|' << resolution
            << '|' << tolerance << '|' << '\n';
    }
}

}  // namespace oracle
}  // namespace bregman
