#pragma once

#include <cmath>

#include "stn/image.hpp"

namespace stn {

inline void require_operable(const Image& u, const char* what) {
    if (u.width < 2 || u.height < 2)
        throw InvalidInput(std::string(what) + ": both dimensions must be >= 2");
}

/// Forward-difference gradient with Neumann boundary (zero on the far edge).
/// g1(i,j) = u(i+1,j) - u(i,j), g2(i,j) = u(i,j+1) - u(i,j).
inline VectorField gradient(const Image& u) {
    require_operable(u, "gradient");
    VectorField g(u.width, u.height);
    for (int i = 0; i < u.height; ++i) {
        for (int j = 0; j < u.width; ++j) {
            g.g1.at(i, j) = (i + 1 < u.height) ? u.at(i + 1, j) - u.at(i, j) : 0.0;
            g.g2.at(i, j) = (j + 1 < u.width) ? u.at(i, j + 1) - u.at(i, j) : 0.0;
        }
    }
    return g;
}

/// Backward-difference divergence, the exact negative adjoint of gradient:
/// <gradient(u), p> = -<u, divergence(p)> for every u and p.
inline Image divergence(const VectorField& p) {
    if (!p.g1.same_shape(p.g2))
        throw InvalidInput("divergence: component dimension mismatch");
    require_operable(p.g1, "divergence");
    const int w = p.g1.width, h = p.g1.height;
    Image d(w, h);
    for (int i = 0; i < h; ++i) {
        for (int j = 0; j < w; ++j) {
            double v = 0.0;
            if (i == 0)          v += p.g1.at(i, j);
            else if (i == h - 1) v += -p.g1.at(i - 1, j);
            else                 v += p.g1.at(i, j) - p.g1.at(i - 1, j);
            if (j == 0)          v += p.g2.at(i, j);
            else if (j == w - 1) v += -p.g2.at(i, j - 1);
            else                 v += p.g2.at(i, j) - p.g2.at(i, j - 1);
            d.at(i, j) = v;
        }
    }
    return d;
}

/// Discrete total variation: sum over pixels of the gradient magnitude.
inline double total_variation(const Image& u) {
    VectorField g = gradient(u);
    double tv = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k)
        tv += std::sqrt(g.g1.data[k] * g.g1.data[k] + g.g2.data[k] * g.g2.data[k]);
    return tv;
}

/// Euclidean distance sqrt(sum (a-b)^2), summed in row-major order.
inline double l2_distance(const Image& a, const Image& b) {
    require_same_shape(a, b, "l2_distance");
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a.data[k] - b.data[k];
        s += d * d;
    }
    return std::sqrt(s);
}

inline double l2_norm(const Image& a) {
    double s = 0.0;
    for (double x : a.data) s += x * x;
    return std::sqrt(s);
}

inline double dot(const Image& a, const Image& b) {
    require_same_shape(a, b, "dot");
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a.data[k] * b.data[k];
    return s;
}

inline double dot(const VectorField& a, const VectorField& b) {
    return dot(a.g1, b.g1) + dot(a.g2, b.g2);
}

} // namespace stn
