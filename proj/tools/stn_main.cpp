// Command-line front end for the decomposition library. Parses flags into a
// RunConfig and hands off to stn::run; every failure family keeps its own
// exit code so scripts can react to the cause.

#include <CLI11.hpp>

#include "stn/driver.hpp"

int main(int argc, char** argv) {
    stn::RunConfig cfg;

    CLI::App app{"Structure / texture / noise image decomposition"};
    app.get_formatter()->column_width(26);

    app.add_option("--model", cfg.model,
                   "Decomposition model: uv, jg, ac, or jg2")->required();
    app.add_option("--input", cfg.input_path, "Input PGM image (P5 or P2)");
    app.add_option("--synthetic", cfg.synthetic_path,
                   "Synthetic scene description to generate instead of --input");
    app.add_option("--out", cfg.out_prefix,
                   "Output prefix for <prefix>_u.pgm, _v.pgm, ... and the report")
        ->required();

    app.add_option("--lambda", cfg.lambda, "Structure fidelity weight (all models)");
    app.add_option("--mu", cfg.mu, "Texture ball radius (uv, ac, jg2)");
    app.add_option("--mu1", cfg.mu1, "Texture ball radius (jg)");
    app.add_option("--mu2", cfg.mu2, "Noise ball radius (jg)");
    app.add_option("--sigma", cfg.sigma,
                   "Noise standard deviation; also drives synthetic noise injection");
    app.add_option("--eta", cfg.eta, "Threshold tuning factor (ac, jg2)");
    app.add_option("--delta", cfg.delta,
                   "Explicit threshold radius, overriding eta*sigma*sqrt(ln N)");

    app.add_option("--kappa", cfg.kappa, "Division floor for the weighted updates");
    app.add_option("--eps", cfg.eps, "Outer stopping tolerance (sup-norm change)");
    app.add_option("--max-iter", cfg.n_step, "Maximum outer iterations");
    app.add_option("--window", cfg.window, "Odd window size for the texture partition");
    app.add_option("--levels", cfg.levels, "Wavelet decomposition depth");
    app.add_option("--tau", cfg.tau, "Projector step size, in (0, 0.25]");
    app.add_option("--proj-iter", cfg.proj_iter, "Maximum projector sweeps");
    app.add_option("--proj-tol", cfg.proj_tol, "Projector stopping tolerance");
    app.add_option("--seed", cfg.seed, "Noise generator seed (synthetic runs)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return stn::exit_usage;
    }

    return stn::run(cfg);
}
