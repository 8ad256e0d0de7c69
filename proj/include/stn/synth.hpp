#pragma once

#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "stn/grid_ops.hpp"

namespace stn {

/// Axis-aligned rectangle painted at a fixed intensity. x0/y0 are the
/// top-left column/row.
struct RectSpec {
    int x0 = 0, y0 = 0, w = 0, h = 0;
    double level = 0.0;
};

/// Rectangular patch carrying an additive sinusoid: amplitude in intensity
/// units, frequency in cycles per pixel, orientation in degrees (0 varies
/// along the horizontal axis). Phase is anchored at the patch origin.
struct PatchSpec {
    int x0 = 0, y0 = 0, w = 0, h = 0;
    double amplitude = 0.0;
    double frequency = 0.0;
    double orientation_deg = 0.0;
};

/// Square test scene: flat background, piecewise-constant structure,
/// sinusoidal texture patches.
struct SyntheticSpec {
    int size = 0;
    double background = 0.0;
    std::vector<RectSpec> rects;
    std::vector<PatchSpec> patches;
};

/// The desk-scale scene used throughout the tests: one bright square and one
/// striped patch on a mid-gray background.
inline SyntheticSpec default_spec() {
    SyntheticSpec s;
    s.size = 64;
    s.background = 100.0;
    s.rects.push_back({8, 8, 24, 24, 180.0});
    s.patches.push_back({32, 32, 24, 24, 40.0, 0.25, 0.0});
    return s;
}

/// Boolean pixel grid, row-major like Image.
struct Mask {
    int width = 0, height = 0;
    std::vector<std::uint8_t> data;
    Mask() = default;
    Mask(int w, int h) : width(w), height(h),
        data(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0) {}
    bool at(int i, int j) const {
        return data[static_cast<std::size_t>(i) * width + j] != 0;
    }
    void set(int i, int j, bool b) {
        data[static_cast<std::size_t>(i) * width + j] = b ? 1 : 0;
    }
};

struct Synthetic {
    Image clean;
    Mask texture_mask;
};

namespace detail_synth {

inline void require_in_bounds(int x0, int y0, int w, int h, int size,
                              const char* what) {
    if (w < 1 || h < 1 || x0 < 0 || y0 < 0 || x0 + w > size || y0 + h > size)
        throw InvalidInput(std::string("make_synthetic: ") + what +
                           " does not fit inside a " + std::to_string(size) +
                           "x" + std::to_string(size) + " image");
}

} // namespace detail_synth

/// Renders the scene and the exact texture mask (true on patch footprints).
inline Synthetic make_synthetic(const SyntheticSpec& spec) {
    if (spec.size < 2)
        throw InvalidInput("make_synthetic: size must be at least 2");
    Synthetic out{Image(spec.size, spec.size, spec.background),
                  Mask(spec.size, spec.size)};

    for (const RectSpec& r : spec.rects) {
        detail_synth::require_in_bounds(r.x0, r.y0, r.w, r.h, spec.size, "rectangle");
        for (int i = r.y0; i < r.y0 + r.h; ++i)
            for (int j = r.x0; j < r.x0 + r.w; ++j)
                out.clean.at(i, j) = r.level;
    }
    constexpr double two_pi = 6.283185307179586476925286766559;
    for (const PatchSpec& p : spec.patches) {
        detail_synth::require_in_bounds(p.x0, p.y0, p.w, p.h, spec.size, "patch");
        const double rad = p.orientation_deg * (two_pi / 360.0);
        const double cx = std::cos(rad), cy = std::sin(rad);
        for (int i = p.y0; i < p.y0 + p.h; ++i)
            for (int j = p.x0; j < p.x0 + p.w; ++j) {
                const double along = cx * (j - p.x0) + cy * (i - p.y0);
                out.clean.at(i, j) += p.amplitude * std::cos(two_pi * p.frequency * along);
                out.texture_mask.set(i, j, true);
            }
    }
    return out;
}

/// Adds sigma * z with z i.i.d. standard normal. The stream is fully
/// specified so other implementations can reproduce it bit for bit:
///   - generator: mt19937_64 seeded with `seed`, one raw draw g per uniform;
///   - uniform: u = ((g >> 11) + 0.5) * 2^-53, strictly inside (0,1);
///   - normals: z0 = sqrt(-2 ln u1) cos(2 pi u2), z1 = sqrt(-2 ln u1) sin(2 pi u2);
///   - pixels are filled in row-major order, consuming (z0, z1) per pair;
///     an odd trailing pixel uses z0 of a final pair and discards z1.
inline Image add_gaussian_noise(const Image& clean, double sigma,
                                std::uint64_t seed) {
    if (!(sigma >= 0.0))
        throw InvalidParameter("add_gaussian_noise: sigma must be >= 0");
    require_finite(clean, "add_gaussian_noise input");
    if (sigma == 0.0) return clean;

    std::mt19937_64 gen(seed);
    auto uniform = [&gen]() {
        return (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53;
    };
    constexpr double two_pi = 6.283185307179586476925286766559;
    Image noisy = clean;
    const std::size_t n = noisy.data.size();
    for (std::size_t k = 0; k < n; k += 2) {
        const double u1 = uniform(), u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        noisy.data[k] += sigma * (r * std::cos(two_pi * u2));
        if (k + 1 < n) noisy.data[k + 1] += sigma * (r * std::sin(two_pi * u2));
    }
    return noisy;
}

/// 10 log10( sum(ref^2) / sum((ref - estimate)^2) ); +infinity when the
/// estimate matches the reference exactly.
inline double snr_db(const Image& reference, const Image& estimate) {
    require_same_shape(reference, estimate, "snr_db");
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < reference.data.size(); ++k) {
        num += reference.data[k] * reference.data[k];
        const double e = reference.data[k] - estimate.data[k];
        den += e * e;
    }
    if (den == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(num / den);
}

/// Squared-error split along a mask. total error = on + off by construction
/// (both halves are accumulated in one row-major pass).
struct MaskedSse {
    double on = 0.0;
    double off = 0.0;
};

inline MaskedSse masked_sse(const Image& reference, const Image& estimate,
                            const Mask& mask) {
    require_same_shape(reference, estimate, "masked_sse");
    if (mask.width != reference.width || mask.height != reference.height)
        throw InvalidInput("masked_sse: mask dimensions differ from the images");
    MaskedSse r;
    for (std::size_t k = 0; k < reference.data.size(); ++k) {
        const double e = reference.data[k] - estimate.data[k];
        (mask.data[k] ? r.on : r.off) += e * e;
    }
    return r;
}

/// Plain-text scene description, one `key = values` assignment per line.
/// Keys: size, background, rect (x0 y0 w h level), patch (x0 y0 w h
/// amplitude frequency orientation_deg). '#' starts a comment; blank lines
/// are skipped. rect/patch lines accumulate.
inline SyntheticSpec parse_synthetic_spec(const std::string& text) {
    SyntheticSpec spec;
    std::size_t line_start = 0;
    int line_no = 0;
    bool saw_size = false;

    while (line_start <= text.size()) {
        std::size_t eol = text.find('\n', line_start);
        if (eol == std::string::npos) eol = text.size();
        std::string line = text.substr(line_start, eol - line_start);
        ++line_no;
        const std::size_t offset = line_start;
        line_start = eol + 1;
        if (eol == text.size() && line.empty()) break;

        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream probe(line);
        std::string key;
        if (!(probe >> key)) continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("synthetic spec line " + std::to_string(line_no) +
                             ": expected 'key = values'", offset);
        key = line.substr(0, eq);
        key.erase(0, key.find_first_not_of(" \t"));
        key.erase(key.find_last_not_of(" \t") + 1);
        std::istringstream vals(line.substr(eq + 1));

        auto bad_values = [&](const std::string& what) {
            return ParseError("synthetic spec line " + std::to_string(line_no) +
                              ": " + what, offset);
        };
        if (key == "size") {
            if (!(vals >> spec.size)) throw bad_values("size needs one integer");
            saw_size = true;
        } else if (key == "background") {
            if (!(vals >> spec.background)) throw bad_values("background needs one number");
        } else if (key == "rect") {
            RectSpec r;
            if (!(vals >> r.x0 >> r.y0 >> r.w >> r.h >> r.level))
                throw bad_values("rect needs 'x0 y0 w h level'");
            spec.rects.push_back(r);
        } else if (key == "patch") {
            PatchSpec p;
            if (!(vals >> p.x0 >> p.y0 >> p.w >> p.h >> p.amplitude >>
                  p.frequency >> p.orientation_deg))
                throw bad_values("patch needs 'x0 y0 w h amplitude frequency orientation_deg'");
            spec.patches.push_back(p);
        } else {
            throw bad_values("unknown key '" + key + "'");
        }
        std::string trailing;
        if (vals >> trailing) throw bad_values("unexpected trailing value '" + trailing + "'");
    }
    if (!saw_size)
        throw ParseError("synthetic spec: missing required 'size' line", 0);
    return spec;
}

} // namespace stn
