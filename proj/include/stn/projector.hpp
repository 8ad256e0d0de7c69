#pragma once

#include <functional>

#include "stn/grid_ops.hpp"

namespace stn {

/// Settings for the dual fixed-point iteration behind every G-ball projection.
/// tau must stay in (0, 0.25] for the scheme to contract; 0.125 is the
/// classical safe step. tol is the sup-norm change of the dual field between
/// sweeps that counts as converged.
struct ProjectorParams {
    double tau = 0.125;
    int max_iter = 200;
    double tol = 1e-4;
};

inline void validate(const ProjectorParams& pp) {
    if (!(pp.tau > 0.0) || pp.tau > 0.25)
        throw InvalidParameter("projector tau must lie in (0, 0.25]");
    if (pp.max_iter < 1)
        throw InvalidParameter("projector max_iter must be >= 1");
    if (!(pp.tol >= 0.0))
        throw InvalidParameter("projector tol must be >= 0");
}

/// Result of the two-part solvers. u is the structure part, v the oscillatory
/// part; both match the input dimensions.
struct TwoPartResult {
    Image u;
    Image v;
    int iterations = 0;
    bool converged = false;
};

/// Called after each dual sweep with the sweep index (1-based) and the
/// current dual field. Test hook; leave empty in production use.
using SweepObserver = std::function<void(int, const VectorField&)>;

/// Projection of f onto the G-ball of the given radius, computed as
/// radius * div(p*) where p* is the limit of the semi-implicit dual iteration
///   p <- (p + tau * grad(div p - f/radius)) / (1 + tau * |grad(div p - f/radius)|).
/// Every iterate keeps |p(i,j)| <= 1 pointwise.
inline Image project_g_ball(const Image& f, double radius,
                            const ProjectorParams& pp = {},
                            const SweepObserver& observer = {}) {
    if (!(radius > 0.0))
        throw InvalidParameter("g-ball radius must be > 0");
    validate(pp);
    require_operable(f, "project_g_ball");
    require_finite(f, "project_g_ball input");

    const int w = f.width, h = f.height;
    Image target = scale(f, 1.0 / radius);
    VectorField p(w, h);

    for (int sweep = 1; sweep <= pp.max_iter; ++sweep) {
        VectorField g = gradient(sub(divergence(p), target));
        double change = 0.0;
        for (std::size_t k = 0; k < p.g1.size(); ++k) {
            const double g1 = g.g1.data[k], g2 = g.g2.data[k];
            const double denom = 1.0 + pp.tau * std::sqrt(g1 * g1 + g2 * g2);
            const double n1 = (p.g1.data[k] + pp.tau * g1) / denom;
            const double n2 = (p.g2.data[k] + pp.tau * g2) / denom;
            change = std::max(change, std::abs(n1 - p.g1.data[k]));
            change = std::max(change, std::abs(n2 - p.g2.data[k]));
            p.g1.data[k] = n1;
            p.g2.data[k] = n2;
        }
        if (observer) observer(sweep, p);
        if (change <= pp.tol) break;
    }
    return scale(divergence(p), radius);
}

/// ROF restoration: u = f - P_{G_lambda}(f), v = f - u.
inline TwoPartResult rof_denoise(const Image& f, double lambda,
                                 const ProjectorParams& pp = {}) {
    TwoPartResult r;
    Image proj = project_g_ball(f, lambda, pp);
    r.u = sub(f, proj);
    r.v = sub(f, r.u);
    r.iterations = 1;
    r.converged = true;
    return r;
}

/// ROF objective: TV(u) + ||f - u||^2 / (2 lambda).
inline double rof_energy(const Image& f, const Image& u, double lambda) {
    const double d = l2_distance(f, u);
    return total_variation(u) + d * d / (2.0 * lambda);
}

/// Called after each outer iteration of decompose_uv with the iteration
/// index (1-based) and the current (u, v) pair. Test hook.
using OuterObserver = std::function<void(int, const Image&, const Image&)>;

/// Two-part structure/texture split by alternating G-ball projections:
///   v <- P_{G_mu}(f - u),   u <- f - v - P_{G_lambda}(f - v),
/// from u = v = 0, until the largest component change drops to outer_tol
/// or outer_max iterations are spent. Returns the final iterates; f - u - v
/// is the small fidelity residue the model discards.
inline TwoPartResult decompose_uv(const Image& f, double lambda, double mu,
                                  const ProjectorParams& pp = {},
                                  int outer_max = 50, double outer_tol = 0.5,
                                  const OuterObserver& observer = {}) {
    if (!(lambda > 0.0)) throw InvalidParameter("decompose_uv: lambda must be > 0");
    if (!(mu > 0.0)) throw InvalidParameter("decompose_uv: mu must be > 0");
    if (outer_max < 1) throw InvalidParameter("decompose_uv: outer_max must be >= 1");
    validate(pp);
    require_operable(f, "decompose_uv");
    require_finite(f, "decompose_uv input");

    TwoPartResult r;
    r.u = Image(f.width, f.height, 0.0);
    r.v = Image(f.width, f.height, 0.0);
    for (int n = 1; n <= outer_max; ++n) {
        Image v_next = project_g_ball(sub(f, r.u), mu, pp);
        Image fv = sub(f, v_next);
        Image u_next = sub(fv, project_g_ball(fv, lambda, pp));
        const double change = std::max(sup_diff(u_next, r.u), sup_diff(v_next, r.v));
        r.u = std::move(u_next);
        r.v = std::move(v_next);
        r.iterations = n;
        if (observer) observer(n, r.u, r.v);
        if (change <= outer_tol) {
            r.converged = true;
            break;
        }
    }
    return r;
}

} // namespace stn
