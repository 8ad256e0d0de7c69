#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "stn/models.hpp"
#include "stn/pgm.hpp"
#include "stn/synth.hpp"

namespace stn {

/// Everything a single run needs, straight from the command line. Optional
/// numeric fields distinguish "not given" from any literal value so missing
/// required flags can be reported by name.
struct RunConfig {
    std::string model;           // uv | jg | ac | jg2
    std::string input_path;      // PGM to decompose
    std::string synthetic_path;  // scene description to generate instead
    std::string out_prefix;

    std::optional<double> lambda;
    std::optional<double> mu;
    std::optional<double> mu1;
    std::optional<double> mu2;
    std::optional<double> sigma;
    std::optional<double> eta;
    std::optional<double> delta;

    double kappa = 0.01;
    double eps = 0.5;
    double tau = 0.125;
    double proj_tol = 1e-4;
    int n_step = 30;
    int window = 7;
    int levels = 3;
    int proj_iter = 200;
    std::uint64_t seed = 1;
};

/// Process exit codes, one per failure family.
enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 2,
    exit_io = 3,
    exit_parse = 4,
    exit_invalid_parameter = 5,
    exit_invalid_input = 6,
    exit_numerical = 7,
};

namespace detail_driver {

struct UsageError : Error {
    using Error::Error;
};

inline void require_flag(const std::optional<double>& field, const char* flag,
                         const std::string& model) {
    if (!field)
        throw UsageError("model=" + model + " requires " + flag);
}

inline void validate(const RunConfig& cfg) {
    if (cfg.model != "uv" && cfg.model != "jg" && cfg.model != "ac" &&
        cfg.model != "jg2")
        throw UsageError("--model must be one of uv, jg, ac, jg2 (got '" +
                         cfg.model + "')");
    const bool has_input = !cfg.input_path.empty();
    const bool has_synth = !cfg.synthetic_path.empty();
    if (has_input == has_synth)
        throw UsageError("exactly one of --input and --synthetic must be given");
    if (cfg.out_prefix.empty())
        throw UsageError("--out prefix is required");

    require_flag(cfg.lambda, "--lambda", cfg.model);
    if (cfg.model == "uv" || cfg.model == "ac" || cfg.model == "jg2")
        require_flag(cfg.mu, "--mu", cfg.model);
    if (cfg.model == "jg") {
        require_flag(cfg.mu1, "--mu1", cfg.model);
        require_flag(cfg.mu2, "--mu2", cfg.model);
    }
    if ((cfg.model == "ac" || cfg.model == "jg2") && !cfg.delta) {
        require_flag(cfg.sigma, "--sigma (or --delta)", cfg.model);
        require_flag(cfg.eta, "--eta (or --delta)", cfg.model);
    }
}

inline ModelParams to_params(const RunConfig& cfg) {
    ModelParams mp;
    mp.lambda = cfg.lambda.value_or(0.0);
    mp.mu = cfg.mu.value_or(0.0);
    mp.mu1 = cfg.mu1.value_or(0.0);
    mp.mu2 = cfg.mu2.value_or(0.0);
    mp.sigma = cfg.sigma.value_or(0.0);
    mp.eta = cfg.eta.value_or(0.0);
    mp.delta = cfg.delta;
    mp.kappa = cfg.kappa;
    mp.eps = cfg.eps;
    mp.n_step = cfg.n_step;
    mp.window = cfg.window;
    mp.levels = cfg.levels;
    mp.projector.tau = cfg.tau;
    mp.projector.tol = cfg.proj_tol;
    mp.projector.max_iter = cfg.proj_iter;
    return mp;
}

inline int round_up(int x, int m) { return ((x + m - 1) / m) * m; }

/// Number formatting for the report: stable, locale-free, no trailing
/// noise for integral values.
inline std::string fmt(double x) {
    std::ostringstream s;
    s.imbue(std::locale::classic());
    s << x;
    return s.str();
}

} // namespace detail_driver

/// Executes one decomposition run end to end: load or synthesize the input,
/// pad when the model needs wavelet-compatible dimensions, decompose, crop,
/// write the component images and a plain-text report. Returns a process
/// exit code instead of throwing; diagnostics go to `err`.
inline int run(const RunConfig& cfg, std::ostream& err = std::cerr) {
    try {
        detail_driver::validate(cfg);

        // Input: either a PGM from disk or a freshly rendered scene. The
        // scene keeps its clean original around for SNR reporting.
        Image f(1, 1);
        std::optional<Image> clean;
        std::optional<Mask> texture_mask;
        if (!cfg.input_path.empty()) {
            f = read_pgm(cfg.input_path);
        } else {
            std::ifstream in(cfg.synthetic_path, std::ios::binary);
            if (!in)
                throw IoError("cannot open '" + cfg.synthetic_path + "' for reading");
            std::ostringstream text;
            text << in.rdbuf();
            Synthetic scene = make_synthetic(parse_synthetic_spec(text.str()));
            clean = scene.clean;
            texture_mask = std::move(scene.texture_mask);
            const double sigma = cfg.sigma.value_or(0.0);
            f = sigma > 0.0 ? add_gaussian_noise(scene.clean, sigma, cfg.seed)
                            : scene.clean;
        }

        ModelParams mp = detail_driver::to_params(cfg);
        const int orig_w = f.width, orig_h = f.height;

        // Wavelet-based models need dimensions divisible by 2^levels; extend
        // by edge replication and crop every output back afterwards.
        const bool uses_wavelets =
            cfg.model == "jg2" ||
            (cfg.model == "ac" && mp.delta_for(f.data.size()) > 0.0);
        if (uses_wavelets) {
            const int m = 1 << mp.levels;
            const int pw = detail_driver::round_up(orig_w, m);
            const int ph = detail_driver::round_up(orig_h, m);
            if (pw != orig_w || ph != orig_h) f = pad_replicate(f, pw, ph);
        }

        Decomposition d;
        bool weighted = false;
        if (cfg.model == "uv") {
            TwoPartResult r = decompose_uv(f, mp.lambda, mp.mu, mp.projector,
                                           mp.n_step, mp.eps);
            d.u = std::move(r.u);
            d.v = std::move(r.v);
            d.w = Image(f.width, f.height, 0.0);
            d.residual = sub(f, reconstruct_plain(d.u, d.v, d.w));
            d.iterations = r.iterations;
            d.converged = r.converged;
        } else if (cfg.model == "ac") {
            d = decompose_ac(f, mp);
        } else {
            weighted = true;
            const double part_mu = cfg.model == "jg" ? mp.mu1 : mp.mu;
            auto [nu1, nu2] = compute_partition(f, mp.lambda, part_mu, mp.window,
                                                mp.projector, mp.n_step, mp.eps);
            d = cfg.model == "jg" ? decompose_jg(f, mp, nu1, nu2)
                                  : decompose_jg2(f, mp, nu1, nu2);
        }

        Image u = crop(d.u, orig_w, orig_h);
        Image v = crop(d.v, orig_w, orig_h);
        Image w = crop(d.w, orig_w, orig_h);
        write_pgm(cfg.out_prefix + "_u.pgm", u, WriteMode::clamp);
        write_pgm(cfg.out_prefix + "_v.pgm", v, WriteMode::center);
        if (cfg.model != "uv")
            write_pgm(cfg.out_prefix + "_w.pgm", w, WriteMode::center);
        if (weighted)
            write_pgm(cfg.out_prefix + "_nu.pgm",
                      scale(crop(d.nu1.values, orig_w, orig_h), 255.0),
                      WriteMode::clamp);

        // Denoised estimate: structure plus (weighted) texture.
        Image estimate = weighted
                             ? crop(add(d.u, mul(d.nu1.values, d.v)), orig_w, orig_h)
                             : add(u, v);

        std::ostringstream report;
        report.imbue(std::locale::classic());
        using detail_driver::fmt;
        report << "model = " << cfg.model << "\n";
        report << "lambda = " << fmt(mp.lambda) << "\n";
        if (cfg.model == "uv" || cfg.model == "ac" || cfg.model == "jg2")
            report << "mu = " << fmt(mp.mu) << "\n";
        if (cfg.model == "jg") {
            report << "mu1 = " << fmt(mp.mu1) << "\n";
            report << "mu2 = " << fmt(mp.mu2) << "\n";
        }
        if (cfg.model == "ac" || cfg.model == "jg2") {
            report << "sigma = " << fmt(mp.sigma) << "\n";
            report << "eta = " << fmt(mp.eta) << "\n";
            report << "delta = " << fmt(mp.delta_for(f.data.size())) << "\n";
            report << "levels = " << mp.levels << "\n";
        }
        if (cfg.model == "jg" || cfg.model == "jg2") {
            report << "window = " << mp.window << "\n";
            report << "kappa = " << fmt(mp.kappa) << "\n";
        }
        report << "eps = " << fmt(mp.eps) << "\n";
        report << "n_step = " << mp.n_step << "\n";
        report << "tau = " << fmt(mp.projector.tau) << "\n";
        report << "proj_tol = " << fmt(mp.projector.tol) << "\n";
        report << "proj_iter = " << mp.projector.max_iter << "\n";
        if (!cfg.synthetic_path.empty())
            report << "seed = " << cfg.seed << "\n";
        report << "width = " << orig_w << "\n";
        report << "height = " << orig_h << "\n";
        report << "iterations = " << d.iterations << "\n";
        report << "converged = " << (d.converged ? "true" : "false") << "\n";
        if (!d.trace.empty())
            report << "final_change = " << fmt(d.trace.back()) << "\n";
        report << "residual_l2 = " << fmt(l2_norm(d.residual)) << "\n";
        if (clean) {
            report << "snr_noisy_db = " << fmt(snr_db(*clean, f.width == orig_w
                                                                  ? f
                                                                  : crop(f, orig_w, orig_h)))
                   << "\n";
            report << "snr_estimate_db = " << fmt(snr_db(*clean, estimate)) << "\n";
        }

        std::ofstream rep(cfg.out_prefix + "_report.txt", std::ios::binary);
        if (!rep)
            throw IoError("cannot open '" + cfg.out_prefix + "_report.txt' for writing");
        rep << report.str();
        rep.flush();
        if (!rep)
            throw IoError("failed writing '" + cfg.out_prefix + "_report.txt'");
        return exit_ok;
    } catch (const detail_driver::UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return exit_parse;
    } catch (const IoError& e) {
        err << "io error: " << e.what() << "\n";
        return exit_io;
    } catch (const InvalidParameter& e) {
        err << "invalid parameter: " << e.what() << "\n";
        return exit_invalid_parameter;
    } catch (const InvalidInput& e) {
        err << "invalid input: " << e.what() << "\n";
        return exit_invalid_input;
    } catch (const NumericalFailure& e) {
        err << "numerical failure: " << e.what() << "\n";
        return exit_numerical;
    }
}

} // namespace stn
