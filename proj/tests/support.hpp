#pragma once

// Shared helpers for the test suites. Everything here is test-only and
// independent of the library's computation paths it is used to check.

#include <cstdint>
#include <random>

#include "stn/image.hpp"

namespace testsup {

// Uniform random image in [lo, hi], deterministic per seed.
inline stn::Image random_image(int w, int h, std::uint64_t seed,
                               double lo = 0.0, double hi = 255.0) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    stn::Image img(w, h);
    for (double& x : img.data) x = dist(gen);
    return img;
}

inline stn::VectorField random_field(int w, int h, std::uint64_t seed,
                                     double lo = -1.0, double hi = 1.0) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    stn::VectorField p(w, h);
    for (double& x : p.g1.data) x = dist(gen);
    for (double& x : p.g2.data) x = dist(gen);
    return p;
}

inline stn::Image constant_image(int w, int h, double c) {
    return stn::Image(w, h, c);
}

// 3x3 box filter, averaging over in-bounds neighbors.
inline stn::Image box3(const stn::Image& f) {
    stn::Image r(f.width, f.height);
    for (int i = 0; i < f.height; ++i) {
        for (int j = 0; j < f.width; ++j) {
            double s = 0.0;
            int n = 0;
            for (int di = -1; di <= 1; ++di) {
                for (int dj = -1; dj <= 1; ++dj) {
                    const int ii = i + di, jj = j + dj;
                    if (ii < 0 || ii >= f.height || jj < 0 || jj >= f.width) continue;
                    s += f.at(ii, jj);
                    ++n;
                }
            }
            r.at(i, j) = s / n;
        }
    }
    return r;
}

inline double mean_of(const stn::Image& f) {
    double s = 0.0;
    for (double x : f.data) s += x;
    return s / static_cast<double>(f.size());
}

} // namespace testsup
