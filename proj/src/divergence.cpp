#include "bregman/divergence.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace bregman {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_same_length(const ProbVector& p, const ProbVector& q) {
    if (p.size() != q.size()) {
        throw std::invalid_argument("vector length mismatch: " + std::to_string(p.size()) +
                                    " vs " + std::to_string(q.size()));
    }
}

}  // namespace

ProbVector make_prob_vector(std::vector<double> values) {
    double sum = 0.0;
    for (double v : values) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw std::invalid_argument("coordinate " + std::to_string(v) +
                                        " outside [0,1]");
        }
        sum += v;
    }
    ProbVector p;
    p.values = std::move(values);
    p.simplex_flag = std::abs(sum - 1.0) <= 1e-12;
    return p;
}

double bregman_binary(const ProperLoss& loss, double p, double q) {
    if (loss.smooth) {
        return loss.G(q) + (p - q) * loss.G_prime(q) - loss.G(p);
    }
    return expected_loss(loss, p, q) - loss.G(p);
}

double bregman_separable(const BregmanGenerator& gen, const ProbVector& p,
                         const ProbVector& q) {
    require_same_length(p, q);
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double pi = p[i];
        const double qi = q[i];
        if (pi == qi) continue;
        const double gpq = gen.g_prime(qi);
        if (!std::isfinite(gpq)) {
            return kInf;  // g' diverges at this q_i and p_i != q_i
        }
        sum += gen.g(pi) - gen.g(qi) - gpq * (pi - qi);
    }
    return sum;
}

double bregman_separable_multi(const std::vector<BregmanGenerator>& gens,
                               const ProbVector& p, const ProbVector& q) {
    require_same_length(p, q);
    if (gens.size() != p.size()) {
        throw std::invalid_argument("one generator per coordinate required");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double pi = p[i];
        const double qi = q[i];
        if (pi == qi) continue;
        const double gpq = gens[i].g_prime(qi);
        if (!std::isfinite(gpq)) return kInf;
        sum += gens[i].g(pi) - gens[i].g(qi) - gpq * (pi - qi);
    }
    return sum;
}

double kl_generalized(const ProbVector& p, const ProbVector& q) {
    require_same_length(p, q);
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double pi = p[i];
        const double qi = q[i];
        if (pi > 0.0) {
            if (qi == 0.0) return kInf;
            sum += pi * std::log(pi / qi);
        }
        sum += qi - pi;
    }
    return sum;
}

double kl_binary(double p, double q) {
    const ProbVector pv{{p, 1.0 - p}, true};
    const ProbVector qv{{q, 1.0 - q}, true};
    return kl_generalized(pv, qv);
}

double total_variation(const ProbVector& p, const ProbVector& q) {
    require_same_length(p, q);
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) sum += std::abs(p[i] - q[i]);
    return sum;
}

double chi_square(const ProbVector& p, const ProbVector& q) {
    require_same_length(p, q);
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double d = p[i] - q[i];
        if (d == 0.0) continue;
        if (q[i] == 0.0) return kInf;
        sum += d * d / q[i];
    }
    return sum;
}

double pinsker_rhs(const ProbVector& p, const ProbVector& q) {
    const double tv = total_variation(p, q);
    return 0.5 * tv * tv;
}

BregmanGenerator squared_error_generator() {
    BregmanGenerator g;
    g.name = "squared_error";
    g.g = [](double x) { return x * x; };
    g.g_prime = [](double x) { return 2.0 * x; };
    g.g_second = [](double) { return 2.0; };
    g.g_third = [](double) { return 0.0; };
    return g;
}

BregmanGenerator xlogx_generator() {
    BregmanGenerator g;
    g.name = "xlogx";
    g.g = [](double x) { return x <= 0.0 ? 0.0 : x * std::log(x); };
    g.g_prime = [](double x) {
        return x <= 0.0 ? -std::numeric_limits<double>::infinity() : std::log(x) + 1.0;
    };
    g.g_second = [](double x) {
        return x <= 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / x;
    };
    g.g_third = [](double x) {
        return x <= 0.0 ? -std::numeric_limits<double>::infinity() : -1.0 / (x * x);
    };
    g.grad_bounded_at_zero = false;
    return g;
}

BregmanGenerator weighted_squared_error_generator(double a) {
    if (a <= 0.0) throw std::invalid_argument("weight must be positive");
    BregmanGenerator g;
    // Trim trailing zeros so 0.5 renders as "weighted_squared_error_0.5".
    std::string label = std::to_string(a);
    label.erase(label.find_last_not_of('0') + 1);
    if (!label.empty() && label.back() == '.') label.pop_back();
    g.name = "weighted_squared_error_" + label;
    g.g = [a](double x) { return a * x * x; };
    g.g_prime = [a](double x) { return 2.0 * a * x; };
    g.g_second = [a](double) { return 2.0 * a; };
    g.g_third = [](double) { return 0.0; };
    return g;
}

BregmanGenerator power_3_2_generator() {
    BregmanGenerator g;
    g.name = "power_3_2";
    g.g = [](double x) { return 4.0 / 3.0 * x * std::sqrt(x); };
    g.g_prime = [](double x) { return 2.0 * std::sqrt(x); };
    g.g_second = [](double x) {
        return x <= 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / std::sqrt(x);
    };
    g.g_third = [](double x) {
        return x <= 0.0 ? -std::numeric_limits<double>::infinity()
                        : -0.5 * std::pow(x, -1.5);
    };
    g.grad_bounded_at_zero = false;
    return g;
}

std::vector<BregmanGenerator> generator_catalog() {
    return {squared_error_generator(), xlogx_generator(),
            weighted_squared_error_generator(0.5), weighted_squared_error_generator(2.0),
            power_3_2_generator()};
}

BregmanGenerator find_generator(std::string_view name) {
    for (auto& g : generator_catalog()) {
        if (g.name == name) return g;
    }
    // weighted_squared_error_<a> for arbitrary positive a
    const std::string prefix = "weighted_squared_error_";
    if (name.size() > prefix.size() && name.substr(0, prefix.size()) == prefix) {
        const double a = std::stod(std::string(name.substr(prefix.size())));
        return weighted_squared_error_generator(a);
    }
    throw std::invalid_argument("unknown generator '" + std::string(name) + "'");
}

std::vector<std::string> known_generator_names() {
    std::vector<std::string> names;
    for (auto& g : generator_catalog()) names.push_back(g.name);
    return names;
}

}  // namespace bregman
