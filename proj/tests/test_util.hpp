#pragma once

#include <doctest.h>

#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "cmvkit/common.hpp"
#include "cmvkit/schedule.hpp"

// Shared test helpers: complex closeness checks and seeded random draws so
// every failure reproduces byte-for-byte.

#define CHECK_CLOSE(a, b, tol) CHECK(std::abs((a) - (b)) <= (tol))

namespace cmvkit::test {

inline CoefficientSchedule random_schedule(std::mt19937_64& rng, int count, double max_abs = 0.95,
                                           bool random_zeta = true) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<cplx> alpha;
    std::vector<cplx> zeta;
    for (int i = 0; i < count; ++i) {
        double re = 0.0, im = 0.0;
        do {
            re = 2.0 * max_abs * unit(rng) - max_abs;
            im = 2.0 * max_abs * unit(rng) - max_abs;
        } while (re * re + im * im > max_abs * max_abs);
        alpha.emplace_back(re, im);
        zeta.push_back(random_zeta ? std::polar(1.0, 2.0 * pi * unit(rng)) : cplx(1.0, 0.0));
    }
    return CoefficientSchedule::half_lattice(std::move(alpha), std::move(zeta));
}

// Uniform over the closed disk of the given radius.
inline cplx random_point(std::mt19937_64& rng, double max_abs) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    return std::polar(max_abs * std::sqrt(unit(rng)), 2.0 * pi * unit(rng));
}

inline cplx random_unimodular(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    return std::polar(1.0, 2.0 * pi * unit(rng));
}

}  // namespace cmvkit::test
