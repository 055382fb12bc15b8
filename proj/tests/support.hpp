#pragma once

#include <cmath>
#include <random>

#include "mqc/optics.hpp"
#include "mqc/setup_two.hpp"

namespace support {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Uniform direction, radius drawn so that pure and mixed states both occur.
inline mqc::QubitState random_state(std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    double x = n(rng), y = n(rng), z = n(rng);
    const double norm = std::sqrt(x * x + y * y + z * z);
    const double r = (rng() % 4 == 0) ? 1.0 : uniform(rng, 0.0, 1.0);
    return {r * x / norm, r * y / norm, r * z / norm};
}

inline mqc::DetectorPair random_det(std::mt19937_64& rng, double max_dark) {
    mqc::DetectorPair det;
    for (int i = 0; i < 2; ++i)
        for (int b = 0; b < 2; ++b) {
            det.eta[i][b] = uniform(rng, 0.01, 0.99);
            det.d[i][b] = uniform(rng, 0.0, max_dark);
        }
    return det;
}

inline mqc::DetectorQuad random_quad(std::mt19937_64& rng, double max_dark) {
    mqc::DetectorQuad q;
    for (int i = 0; i < 4; ++i) {
        q.eta[i] = uniform(rng, 0.01, 0.99);
        q.d[i] = uniform(rng, 0.0, max_dark);
    }
    q.theta = uniform(rng, 0.0, 1.5);
    return q;
}

}  // namespace support
