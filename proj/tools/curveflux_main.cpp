#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "curveflux/cli.hpp"
#include "curveflux/errors.hpp"

namespace {

constexpr const char* kSchemaHelp = R"(Config file schema (JSON):

  base_curve.type        "line" | "circle" | "samples"
  base_curve.k           circle curvature (circle only, nonzero)
  base_curve.center_re   circle focal center, real part (circle only)
  base_curve.center_im   circle focal center, imaginary part (circle only)
  base_curve.samples     [[x, y], ...] positions on the domain ("samples" only)
  v0.poly | v0.samples   centerline offset profile (poly coefficients, low
                         order first, or uniform samples over the domain)
  w.poly  | w.samples    width profile; must be positive on the domain
  domain.u1, domain.u2   parameter interval, u1 < u2
  d0                     free diffusion coefficient, > 0
  methods                array of estimator tags: zeroth, linear, quadratic,
                         zwanzig, bradley, reguera-rubi, kalinay-percus,
                         dagdug-pineda
  grid.n_profile         profile stations (default 101)
  grid.nu, grid.nv       oracle grid (defaults 256 x 33; nv odd)
  output.profile         CSV path for the profile subcommand
  output.compare         CSV path for the validate subcommand
  output.sweep           CSV path for the sweep-fig8 subcommand
  sweep.k                curvature list for sweep-fig8
  sweep.m_min, m_max, n  slope grid for sweep-fig8 (defaults -1, 1, 21)

Environment:
  CURVEFLUX_THREADS      caps worker threads (default: all cores)
  CURVEFLUX_SIMD         kernel selection: auto | scalar | avx2

Exit codes: 0 success, 1 config error, 2 numerical/validity error.)";

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"curveflux: effective diffusion coefficients for channels over plane curves"};
    app.footer(kSchemaHelp);
    app.require_subcommand(1);

    std::string config_path;
    auto add_sub = [&](const char* name, const char* desc) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("config", config_path, "experiment config file (JSON)")
            ->required()
            ->check(CLI::ExistingFile);
        return sub;
    };
    CLI::App* profile_cmd =
        add_sub("profile", "tabulate D(u) for the requested estimators");
    CLI::App* validate_cmd =
        add_sub("validate", "score estimators against the steady-state oracle");
    CLI::App* sweep_cmd =
        add_sub("sweep-fig8", "worked-example D(k, m1, m2) slope sweep");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        const curveflux::ExperimentConfig cfg = curveflux::load_config(config_path);
        if (profile_cmd->parsed()) curveflux::cmd_profile(cfg);
        if (validate_cmd->parsed()) curveflux::cmd_validate(cfg);
        if (sweep_cmd->parsed()) curveflux::cmd_sweep_fig8(cfg);
    } catch (const curveflux::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const curveflux::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
