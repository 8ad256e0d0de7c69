#pragma once

#include <utility>
#include <vector>

#include "stn/projector.hpp"
#include "stn/wavelet.hpp"

namespace stn {

/// Smoothed texture indicator; every entry lies strictly between 0 and 1.
struct PartitionField {
    Image values;
};

/// Per-resolution-level copies of a partition field, matching the detail-band
/// geometry of the wavelet transform. grids[0] is the finest (half-size);
/// each next level is the ceil-halved block mean of the previous.
struct PartitionPyramid {
    int levels = 0;
    std::vector<Image> grids;
};

/// Local variance with the window's fixed normalizers: at each pixel,
/// sum(v^2)/L^2 - (sum v)^2/L^4 over the LxL window centered there. Windows
/// are clipped at the borders; the normalizers stay 1/L^2 and 1/L^4, which is
/// the same as treating out-of-range pixels as zero.
inline Image local_variance(const Image& v, int L) {
    if (L < 3 || L % 2 == 0)
        throw InvalidParameter("local_variance: window size must be odd and >= 3");
    require_finite(v, "local_variance input");

    const int r = L / 2;
    const double inv2 = 1.0 / (static_cast<double>(L) * L);
    const double inv4 = inv2 * inv2;
    Image out(v.width, v.height);
    for (int i = 0; i < v.height; ++i)
        for (int j = 0; j < v.width; ++j) {
            double s1 = 0.0, s2 = 0.0;
            const int i0 = std::max(0, i - r), i1 = std::min(v.height - 1, i + r);
            const int j0 = std::max(0, j - r), j1 = std::min(v.width - 1, j + r);
            for (int a = i0; a <= i1; ++a)
                for (int b = j0; b <= j1; ++b) {
                    const double x = v.at(a, b);
                    s1 += x;
                    s2 += x * x;
                }
            out.at(i, j) = s2 * inv2 - s1 * s1 * inv4;
        }
    return out;
}

/// Affine min-max rescale onto [floor, 1-floor]. A constant input carries no
/// evidence either way and maps to 0.5.
inline PartitionField normalize_partition(const Image& raw, double floor = 0.01) {
    if (!(floor > 0.0) || !(floor < 0.5))
        throw InvalidParameter("normalize_partition: floor must lie in (0, 0.5)");
    require_finite(raw, "normalize_partition input");

    double lo = raw.data[0], hi = raw.data[0];
    for (double x : raw.data) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    PartitionField out{Image(raw.width, raw.height, 0.5)};
    if (hi > lo) {
        const double span = (1.0 - 2.0 * floor) / (hi - lo);
        for (std::size_t k = 0; k < raw.data.size(); ++k)
            out.values.data[k] = floor + (raw.data[k] - lo) * span;
    }
    return out;
}

/// Texture partition from the two-part split: nu1 is the normalized local
/// variance of the oscillatory component v, nu2 its exact complement 1 - nu1.
/// The pair sums to 1 bit-exactly at every pixel.
inline std::pair<PartitionField, PartitionField>
compute_partition(const Image& f, double lambda, double mu, int L,
                  const ProjectorParams& pp = {},
                  int outer_max = 50, double outer_tol = 0.5,
                  double floor = 0.01) {
    TwoPartResult split = decompose_uv(f, lambda, mu, pp, outer_max, outer_tol);
    PartitionField nu1 = normalize_partition(local_variance(split.v, L), floor);
    PartitionField nu2{Image(f.width, f.height)};
    for (std::size_t k = 0; k < nu1.values.data.size(); ++k)
        nu2.values.data[k] = 1.0 - nu1.values.data[k];
    return {std::move(nu1), std::move(nu2)};
}

namespace detail_partition {

/// Mean of one ceil-halved block. Pairwise sums so that a constant input
/// stays exactly constant, which downstream bitwise comparisons rely on.
inline Image halve_by_block_mean(const Image& g) {
    const int w = (g.width + 1) / 2, h = (g.height + 1) / 2;
    Image out(w, h);
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < w; ++j) {
            const int i1 = 2 * i, j1 = 2 * j;
            const bool has_i2 = i1 + 1 < g.height, has_j2 = j1 + 1 < g.width;
            if (has_i2 && has_j2)
                out.at(i, j) = ((g.at(i1, j1) + g.at(i1, j1 + 1)) +
                                (g.at(i1 + 1, j1) + g.at(i1 + 1, j1 + 1))) * 0.25;
            else if (has_i2)
                out.at(i, j) = (g.at(i1, j1) + g.at(i1 + 1, j1)) * 0.5;
            else if (has_j2)
                out.at(i, j) = (g.at(i1, j1) + g.at(i1, j1 + 1)) * 0.5;
            else
                out.at(i, j) = g.at(i1, j1);
        }
    return out;
}

} // namespace detail_partition

/// Recursive 2x2 block means of the partition field, one grid per wavelet
/// level (finest first). Block means of values in (0,1) stay in (0,1).
inline PartitionPyramid pyramidalize(const PartitionField& nu, int levels) {
    if (levels < 1)
        throw InvalidParameter("pyramidalize: levels must be >= 1");
    if (levels >= 31 ||
        (1 << levels) > std::min(nu.values.width, nu.values.height))
        throw InvalidParameter("pyramidalize: too many levels for a " +
                               std::to_string(nu.values.width) + "x" +
                               std::to_string(nu.values.height) + " field");
    PartitionPyramid pyr;
    pyr.levels = levels;
    Image cur = nu.values;
    for (int l = 0; l < levels; ++l) {
        cur = detail_partition::halve_by_block_mean(cur);
        pyr.grids.push_back(cur);
    }
    return pyr;
}

inline Image wst_spatial(const Image& x, double base, const PartitionPyramid& nu) {
    return wst_spatial(x, base, nu.grids);
}

} // namespace stn
