#include "curveflux/cli.hpp"

#include <cstddef>
#include <iostream>
#include <limits>
#include <vector>

#include "curveflux/csv.hpp"
#include "curveflux/errors.hpp"
#include "curveflux/oracle.hpp"
#include "curveflux/parallel.hpp"

namespace curveflux {

void cmd_profile(const ExperimentConfig& cfg) {
    if (cfg.out_profile.empty())
        throw ConfigError("output.profile: required by the profile subcommand");

    std::vector<DiffusionProfile> profiles;
    profiles.reserve(cfg.methods.size());
    for (Method m : cfg.methods) profiles.push_back(profile(cfg.spec, m, cfg.n_profile));

    for (const auto& prof : profiles)
        for (const auto& [u, msg] : prof.errors)
            std::cerr << "profile[" << method_name(prof.method) << "] u=" << format_double(u)
                      << ": " << msg << '\n';

    CsvWriter csv;
    std::vector<std::string> head = {"u", "sigma"};
    for (Method m : cfg.methods) head.emplace_back(method_name(m));
    csv.header(head);
    for (int i = 0; i < cfg.n_profile; ++i) {
        const double u = profiles.front().u[static_cast<std::size_t>(i)];
        csv.row_start();
        csv.cell(u);
        csv.cell(sigma(cfg.spec, u));
        for (const auto& prof : profiles) csv.cell(prof.D[static_cast<std::size_t>(i)]);
        csv.row_end();
    }
    csv.write_file(cfg.out_profile);
}

void cmd_validate(const ExperimentConfig& cfg) {
    if (cfg.out_compare.empty())
        throw ConfigError("output.compare: required by the validate subcommand");
    if (const auto bad_u = find_validity_violation(cfg.spec))
        throw ValidityError("channel validity fails at u = " + format_double(*bad_u));

    const Grid2D grid{cfg.spec.u1(), cfg.spec.u2(), cfg.nu, cfg.nv};
    const auto reports = compare(cfg.spec, cfg.methods, grid);

    CsvWriter csv;
    csv.header({"method", "max_rel_err", "mean_rel_err", "flux_rel_err", "nu", "nv"});
    for (const auto& rep : reports) {
        if (rep.failed)
            std::cerr << "validate[" << method_name(rep.method) << "]: " << rep.error << '\n';
        csv.row_start();
        csv.cell(std::string(method_name(rep.method)));
        const double nan = std::numeric_limits<double>::quiet_NaN();
        csv.cell(rep.failed ? nan : rep.max_rel_err);
        csv.cell(rep.failed ? nan : rep.mean_rel_err);
        csv.cell(rep.failed ? nan : rep.flux_rel_err);
        csv.cell(std::to_string(cfg.nu));
        csv.cell(std::to_string(cfg.nv));
        csv.row_end();
    }
    csv.write_file(cfg.out_compare);
}

void cmd_sweep_fig8(const ExperimentConfig& cfg) {
    if (cfg.out_sweep.empty())
        throw ConfigError("output.sweep: required by the sweep-fig8 subcommand");
    if (cfg.sweep_k.empty())
        throw ConfigError("sweep.k: required by the sweep-fig8 subcommand");

    const std::size_t n = static_cast<std::size_t>(cfg.sweep_n);
    auto slope = [&](std::size_t i) {
        return cfg.sweep_m_min +
               (cfg.sweep_m_max - cfg.sweep_m_min) * static_cast<double>(i) /
                   static_cast<double>(n - 1);
    };

    std::vector<double> D(cfg.sweep_k.size() * n * n);
    parallel_for(D.size(), [&](std::size_t idx) {
        const double k = cfg.sweep_k[idx / (n * n)];
        const double m1 = slope((idx / n) % n);
        const double m2 = slope(idx % n);
        D[idx] = fig8_sample(k, m1, m2, cfg.spec.d0);
    });

    CsvWriter csv;
    csv.header({"k", "m1", "m2", "D"});
    std::size_t idx = 0;
    for (double k : cfg.sweep_k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j, ++idx) {
                csv.row_start();
                csv.cell(k);
                csv.cell(slope(i));
                csv.cell(slope(j));
                csv.cell(D[idx]);
                csv.row_end();
            }
        }
    }
    csv.write_file(cfg.out_sweep);
}

}  // namespace curveflux
