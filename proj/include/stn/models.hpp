#pragma once

#include <functional>
#include <iostream>
#include <optional>
#include <vector>

#include "stn/partition.hpp"

namespace stn {

/// Shared parameter block for the three-part solvers. Only the fields a
/// given model reads need to be set: JG uses mu1/mu2, AC and the merged
/// model use mu; delta is derived from eta and sigma unless overridden.
struct ModelParams {
    double lambda = 0.0;
    double mu1 = 0.0;
    double mu2 = 0.0;
    double mu = 0.0;
    double sigma = 0.0;
    double eta = 0.0;
    std::optional<double> delta;
    double kappa = 0.01;
    double eps = 0.5;
    int n_step = 30;
    int window = 7;
    int levels = 3;
    ProjectorParams projector;

    /// Threshold radius: eta * sigma * sqrt(ln N) with N the pixel count,
    /// natural logarithm, unless an explicit delta was set.
    double delta_for(std::size_t n_pixels) const {
        if (delta) return *delta;
        return eta * sigma * std::sqrt(std::log(static_cast<double>(n_pixels)));
    }
};

/// Full output of a three-part solver. For the weighted models the exact
/// bookkeeping is f = u + nu1*v + nu2*w + residual at every pixel; the plain
/// model uses f = u + v + w + residual. residual is stored as that exact
/// floating-point difference. trace holds the max component sup-change per
/// outer iteration, fidelity the data term ||residual||^2 / (2 lambda).
struct Decomposition {
    Image u, v, w;
    PartitionField nu1, nu2;
    Image residual;
    int iterations = 0;
    bool converged = false;
    std::vector<double> trace;
    std::vector<double> fidelity;
};

/// Called after every completed outer iteration with the iteration index
/// (1-based) and the current state. Test hook.
using IterationObserver = std::function<void(int, const Decomposition&)>;

/// u + nu1*v + nu2*w, accumulated left to right per pixel. Everything that
/// checks the weighted reconstruction identity must go through this one
/// function so the comparison is bitwise meaningful.
inline Image reconstruct_weighted(const Image& u, const PartitionField& nu1,
                                  const Image& v, const PartitionField& nu2,
                                  const Image& w) {
    Image out(u.width, u.height);
    for (std::size_t k = 0; k < out.data.size(); ++k)
        out.data[k] = u.data[k] + nu1.values.data[k] * v.data[k] +
                      nu2.values.data[k] * w.data[k];
    return out;
}

/// u + v + w, accumulated left to right per pixel. Same role as
/// reconstruct_weighted for the plain model.
inline Image reconstruct_plain(const Image& u, const Image& v, const Image& w) {
    Image out(u.width, u.height);
    for (std::size_t k = 0; k < out.data.size(); ++k)
        out.data[k] = u.data[k] + v.data[k] + w.data[k];
    return out;
}

namespace detail_models {

inline void require_common(const Image& f, const ModelParams& mp, const char* who) {
    require_operable(f, who);
    require_finite(f, who);
    if (!(mp.lambda > 0.0))
        throw InvalidParameter(std::string(who) + ": lambda must be > 0");
    if (!(mp.kappa > 0.0))
        throw InvalidParameter(std::string(who) + ": kappa must be > 0");
    if (!(mp.eps > 0.0))
        throw InvalidParameter(std::string(who) + ": eps must be > 0");
    if (mp.n_step < 1)
        throw InvalidParameter(std::string(who) + ": n_step must be >= 1");
    validate(mp.projector);
}

inline void require_weights(const Image& f, const PartitionField& nu1,
                            const PartitionField& nu2, const char* who) {
    if (nu1.values.width != f.width || nu1.values.height != f.height ||
        nu2.values.width != f.width || nu2.values.height != f.height)
        throw InvalidInput(std::string(who) +
                           ": partition fields must match the image dimensions");
    for (std::size_t k = 0; k < nu1.values.data.size(); ++k) {
        const double a = nu1.values.data[k], b = nu2.values.data[k];
        if (!(a > 0.0) || !(a < 1.0) || !(b > 0.0) || !(b < 1.0))
            throw InvalidInput(std::string(who) +
                               ": partition values must lie strictly in (0,1)");
        if (std::abs(a + b - 1.0) > 1e-12)
            throw InvalidInput(std::string(who) +
                               ": partition fields must be complementary");
    }
}

inline void guard_finite(const Image& x, const char* who, const char* step, int n) {
    if (!all_finite(x))
        throw NumericalFailure(std::string(who) + ": non-finite values after the " +
                               step + " update at iteration " + std::to_string(n));
}

inline double data_term(const Image& residual, double lambda) {
    double s = 0.0;
    for (double x : residual.data) s += x * x;
    return s / (2.0 * lambda);
}

} // namespace detail_models

/// Noise-component update of the merged model: with r the current weighted
/// residual f - u - nu1*v,
///   w = r/(nu2+kappa)
///     - lambda/(delta*nu2^2+kappa) * WST_spatial(delta*nu2/lambda * r),
/// where the spatial threshold at level l is 2 delta^2/lambda * nu_tilde^2
/// and nu_tilde is the pyramidal nu2. Exposed separately so its agreement
/// with the uniform-threshold formula can be checked directly.
inline Image jg2_noise_update(const Image& r, const Image& nu2,
                              const std::vector<Image>& nu2_pyramid,
                              double lambda, double delta, double kappa) {
    Image scaled(r.width, r.height);
    for (std::size_t k = 0; k < r.data.size(); ++k)
        scaled.data[k] = (delta * nu2.data[k] / lambda) * r.data[k];
    Image shrunk = wst_spatial(scaled, 2.0 * delta * delta / lambda, nu2_pyramid);
    Image w(r.width, r.height);
    for (std::size_t k = 0; k < r.data.size(); ++k)
        w.data[k] = r.data[k] / (nu2.data[k] + kappa) -
                    (lambda / (delta * nu2.data[k] * nu2.data[k] + kappa)) * shrunk.data[k];
    return w;
}

/// Weighted three-part solver. One outer iteration runs, in this order,
///   w <- P_{G_mu2}((f - u - nu1 v) / (nu2 + kappa)),
///   v <- P_{G_mu1}((f - u - nu2 w) / (nu1 + kappa)),
///   u <- s - P_{G_lambda}(s) with s = f - nu1 v - nu2 w,
/// from zero initial components, stopping when the largest component
/// sup-change drops to eps or n_step is reached.
inline Decomposition decompose_jg(const Image& f, const ModelParams& mp,
                                  const PartitionField& nu1,
                                  const PartitionField& nu2,
                                  const IterationObserver& observer = {}) {
    detail_models::require_common(f, mp, "decompose_jg");
    if (!(mp.mu1 > 0.0) || !(mp.mu2 > 0.0))
        throw InvalidParameter("decompose_jg: mu1 and mu2 must be > 0");
    detail_models::require_weights(f, nu1, nu2, "decompose_jg");
    if (mp.mu1 <= mp.mu2)
        std::cerr << "warning: decompose_jg expects mu1 > mu2 (texture ball "
                     "larger than noise ball); got mu1 = " << mp.mu1
                  << ", mu2 = " << mp.mu2 << "\n";

    Decomposition d;
    d.u = Image(f.width, f.height, 0.0);
    d.v = d.u;
    d.w = d.u;
    d.nu1 = nu1;
    d.nu2 = nu2;

    for (int n = 1; n <= mp.n_step; ++n) {
        Image rw = div_offset(sub(sub(f, d.u), mul(nu1.values, d.v)),
                              nu2.values, mp.kappa);
        Image w_next = project_g_ball(rw, mp.mu2, mp.projector);
        detail_models::guard_finite(w_next, "decompose_jg", "w", n);

        Image rv = div_offset(sub(sub(f, d.u), mul(nu2.values, w_next)),
                              nu1.values, mp.kappa);
        Image v_next = project_g_ball(rv, mp.mu1, mp.projector);
        detail_models::guard_finite(v_next, "decompose_jg", "v", n);

        Image s = sub(f, add(mul(nu1.values, v_next), mul(nu2.values, w_next)));
        Image u_next = sub(s, project_g_ball(s, mp.lambda, mp.projector));
        detail_models::guard_finite(u_next, "decompose_jg", "u", n);

        const double change = std::max({sup_diff(w_next, d.w),
                                        sup_diff(v_next, d.v),
                                        sup_diff(u_next, d.u)});
        d.u = std::move(u_next);
        d.v = std::move(v_next);
        d.w = std::move(w_next);
        d.residual = sub(f, reconstruct_weighted(d.u, nu1, d.v, nu2, d.w));
        d.iterations = n;
        d.trace.push_back(change);
        d.fidelity.push_back(detail_models::data_term(d.residual, mp.lambda));
        if (observer) observer(n, d);
        if (change <= mp.eps) {
            d.converged = true;
            break;
        }
    }
    return d;
}

/// Plain three-part solver with a wavelet-band noise component. One outer
/// iteration runs, in this order,
///   w <- (f - u - v) - WST(f - u - v, 2 delta),
///   v <- P_{G_mu}(f - u - w),
///   u <- s - P_{G_lambda}(s) with s = f - v - w.
/// delta = 0 (noise-free setting) pins w to zero, and the scheme reduces to
/// the two-part split.
inline Decomposition decompose_ac(const Image& f, const ModelParams& mp,
                                  const IterationObserver& observer = {}) {
    detail_models::require_common(f, mp, "decompose_ac");
    if (!(mp.mu > 0.0))
        throw InvalidParameter("decompose_ac: mu must be > 0");
    if (mp.sigma < 0.0)
        throw InvalidParameter("decompose_ac: sigma must be >= 0");
    const double delta = mp.delta_for(f.data.size());
    if (!(delta >= 0.0) || !std::isfinite(delta))
        throw InvalidParameter("decompose_ac: derived delta must be finite and >= 0"
                               " (check sigma, eta, or the delta override)");
    if (delta > 0.0)
        detail_wavelet::require_divisible(f, mp.levels, "decompose_ac");

    Decomposition d;
    d.u = Image(f.width, f.height, 0.0);
    d.v = d.u;
    d.w = d.u;

    for (int n = 1; n <= mp.n_step; ++n) {
        Image w_next = delta > 0.0
                           ? besov_project(sub(sub(f, d.u), d.v), delta, mp.levels)
                           : Image(f.width, f.height, 0.0);
        detail_models::guard_finite(w_next, "decompose_ac", "w", n);

        Image v_next = project_g_ball(sub(sub(f, d.u), w_next), mp.mu, mp.projector);
        detail_models::guard_finite(v_next, "decompose_ac", "v", n);

        Image s = sub(sub(f, v_next), w_next);
        Image u_next = sub(s, project_g_ball(s, mp.lambda, mp.projector));
        detail_models::guard_finite(u_next, "decompose_ac", "u", n);

        const double change = std::max({sup_diff(w_next, d.w),
                                        sup_diff(v_next, d.v),
                                        sup_diff(u_next, d.u)});
        d.u = std::move(u_next);
        d.v = std::move(v_next);
        d.w = std::move(w_next);
        d.residual = sub(f, reconstruct_plain(d.u, d.v, d.w));
        d.iterations = n;
        d.trace.push_back(change);
        d.fidelity.push_back(detail_models::data_term(d.residual, mp.lambda));
        if (observer) observer(n, d);
        if (change <= mp.eps) {
            d.converged = true;
            break;
        }
    }
    return d;
}

/// Merged model: u and v updated as in decompose_jg (single mu), the noise
/// component through the location-dependent threshold of jg2_noise_update.
inline Decomposition decompose_jg2(const Image& f, const ModelParams& mp,
                                   const PartitionField& nu1,
                                   const PartitionField& nu2,
                                   const IterationObserver& observer = {}) {
    detail_models::require_common(f, mp, "decompose_jg2");
    if (!(mp.mu > 0.0))
        throw InvalidParameter("decompose_jg2: mu must be > 0");
    if (mp.sigma < 0.0)
        throw InvalidParameter("decompose_jg2: sigma must be >= 0");
    detail_models::require_weights(f, nu1, nu2, "decompose_jg2");
    const double delta = mp.delta_for(f.data.size());
    if (!(delta >= 0.0) || !std::isfinite(delta))
        throw InvalidParameter("decompose_jg2: derived delta must be finite and >= 0"
                               " (check sigma, eta, or the delta override)");
    detail_wavelet::require_divisible(f, mp.levels, "decompose_jg2");
    PartitionPyramid nu2_pyr = pyramidalize(nu2, mp.levels);

    Decomposition d;
    d.u = Image(f.width, f.height, 0.0);
    d.v = d.u;
    d.w = d.u;
    d.nu1 = nu1;
    d.nu2 = nu2;

    for (int n = 1; n <= mp.n_step; ++n) {
        Image r = sub(sub(f, d.u), mul(nu1.values, d.v));
        Image w_next = jg2_noise_update(r, nu2.values, nu2_pyr.grids,
                                        mp.lambda, delta, mp.kappa);
        detail_models::guard_finite(w_next, "decompose_jg2", "w", n);

        Image rv = div_offset(sub(sub(f, d.u), mul(nu2.values, w_next)),
                              nu1.values, mp.kappa);
        Image v_next = project_g_ball(rv, mp.mu, mp.projector);
        detail_models::guard_finite(v_next, "decompose_jg2", "v", n);

        Image s = sub(f, add(mul(nu1.values, v_next), mul(nu2.values, w_next)));
        Image u_next = sub(s, project_g_ball(s, mp.lambda, mp.projector));
        detail_models::guard_finite(u_next, "decompose_jg2", "u", n);

        const double change = std::max({sup_diff(w_next, d.w),
                                        sup_diff(v_next, d.v),
                                        sup_diff(u_next, d.u)});
        d.u = std::move(u_next);
        d.v = std::move(v_next);
        d.w = std::move(w_next);
        d.residual = sub(f, reconstruct_weighted(d.u, nu1, d.v, nu2, d.w));
        d.iterations = n;
        d.trace.push_back(change);
        d.fidelity.push_back(detail_models::data_term(d.residual, mp.lambda));
        if (observer) observer(n, d);
        if (change <= mp.eps) {
            d.converged = true;
            break;
        }
    }
    return d;
}

} // namespace stn
