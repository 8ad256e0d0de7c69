#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "stn/errors.hpp"

namespace stn {

/// Double-precision 2D scalar grid, row-major.
/// Pixel (i, j) addresses row i in [0, height) and column j in [0, width).
struct Image {
    int width = 0;
    int height = 0;
    std::vector<double> data;

    Image() = default;
    Image(int w, int h, double fill = 0.0)
        : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {
        if (w <= 0 || h <= 0)
            throw InvalidInput("Image dimensions must be positive");
    }

    double& at(int i, int j) { return data[static_cast<std::size_t>(i) * width + j]; }
    double at(int i, int j) const { return data[static_cast<std::size_t>(i) * width + j]; }

    std::size_t size() const { return data.size(); }
    bool empty() const { return data.empty(); }
    bool same_shape(const Image& o) const { return width == o.width && height == o.height; }
};

/// Pair of grids (g1, g2) with identical dimensions.
/// g1 holds row-direction components, g2 column-direction components.
struct VectorField {
    Image g1;
    Image g2;

    VectorField() = default;
    VectorField(int w, int h) : g1(w, h), g2(w, h) {}

    bool same_shape(const VectorField& o) const {
        return g1.same_shape(o.g1) && g2.same_shape(o.g2);
    }
};

inline bool all_finite(const Image& img) {
    for (double x : img.data)
        if (!std::isfinite(x)) return false;
    return true;
}

inline void require_finite(const Image& img, const char* what) {
    if (!all_finite(img))
        throw InvalidInput(std::string(what) + " contains non-finite values");
}

inline void require_same_shape(const Image& a, const Image& b, const char* what) {
    if (!a.same_shape(b))
        throw InvalidInput(std::string(what) + ": dimension mismatch");
}

// Elementwise helpers. All results are freshly allocated; inputs are never touched.

inline Image add(const Image& a, const Image& b) {
    require_same_shape(a, b, "add");
    Image r(a.width, a.height);
    for (std::size_t k = 0; k < a.size(); ++k) r.data[k] = a.data[k] + b.data[k];
    return r;
}

inline Image sub(const Image& a, const Image& b) {
    require_same_shape(a, b, "sub");
    Image r(a.width, a.height);
    for (std::size_t k = 0; k < a.size(); ++k) r.data[k] = a.data[k] - b.data[k];
    return r;
}

inline Image mul(const Image& a, const Image& b) {
    require_same_shape(a, b, "mul");
    Image r(a.width, a.height);
    for (std::size_t k = 0; k < a.size(); ++k) r.data[k] = a.data[k] * b.data[k];
    return r;
}

inline Image scale(const Image& a, double s) {
    Image r(a.width, a.height);
    for (std::size_t k = 0; k < a.size(); ++k) r.data[k] = s * a.data[k];
    return r;
}

/// a / (b + offset), elementwise.
inline Image div_offset(const Image& a, const Image& b, double offset) {
    require_same_shape(a, b, "div_offset");
    Image r(a.width, a.height);
    for (std::size_t k = 0; k < a.size(); ++k) r.data[k] = a.data[k] / (b.data[k] + offset);
    return r;
}

inline double sup_norm(const Image& a) {
    double m = 0.0;
    for (double x : a.data) m = std::max(m, std::abs(x));
    return m;
}

inline double sup_diff(const Image& a, const Image& b) {
    require_same_shape(a, b, "sup_diff");
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
        m = std::max(m, std::abs(a.data[k] - b.data[k]));
    return m;
}

/// Extends an image to (new_width, new_height) by replicating the last row/column.
inline Image pad_replicate(const Image& img, int new_width, int new_height) {
    if (new_width < img.width || new_height < img.height)
        throw InvalidInput("pad_replicate: target smaller than source");
    Image r(new_width, new_height);
    for (int i = 0; i < new_height; ++i) {
        const int si = std::min(i, img.height - 1);
        for (int j = 0; j < new_width; ++j)
            r.at(i, j) = img.at(si, std::min(j, img.width - 1));
    }
    return r;
}

/// Top-left crop to (new_width, new_height).
inline Image crop(const Image& img, int new_width, int new_height) {
    if (new_width > img.width || new_height > img.height || new_width <= 0 || new_height <= 0)
        throw InvalidInput("crop: target exceeds source");
    Image r(new_width, new_height);
    for (int i = 0; i < new_height; ++i)
        for (int j = 0; j < new_width; ++j)
            r.at(i, j) = img.at(i, j);
    return r;
}

} // namespace stn
