#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace bregman {

/// mt19937_64 with a hand-rolled uniform so streams are identical across
/// standard libraries (std distributions are implementation-defined).
class DetRng {
public:
    explicit DetRng(std::uint64_t seed) : engine_(seed) {}

    double uniform() {  // [0, 1)
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    std::vector<double> cube_point(int m) {
        std::vector<double> v(m);
        for (auto& x : v) x = uniform();
        return v;
    }

    /// Symmetric Dirichlet(1): normalized exponentials.
    std::vector<double> simplex_point(int m) {
        std::vector<double> v(m);
        double sum = 0.0;
        for (auto& x : v) {
            x = -std::log(1.0 - uniform());
            sum += x;
        }
        for (auto& x : v) x /= sum;
        return v;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace bregman
