#pragma once

#include <optional>
#include <string>
#include <vector>

#include "curveflux/channel.hpp"
#include "curveflux/estimators.hpp"

namespace curveflux {

// Parsed experiment description.  See parse_config for the schema.
struct ExperimentConfig {
    ChannelSpec spec;
    std::vector<Method> methods;

    int n_profile = 101;
    int nu = 256;
    int nv = 33;

    std::string out_profile;
    std::string out_compare;
    std::string out_sweep;

    std::vector<double> sweep_k;
    double sweep_m_min = -1.0;
    double sweep_m_max = 1.0;
    int sweep_n = 21;
};

// Parses the JSON experiment schema:
//
//   base_curve.type        "line" | "circle" | "samples"
//   base_curve.k           circle curvature (required for circles, nonzero)
//   base_curve.center_re   circle focal center, real part
//   base_curve.center_im   circle focal center, imaginary part
//   base_curve.samples     [[x, y], ...] positions for type "samples"
//   v0.poly | v0.samples   centerline offset profile
//   w.poly  | w.samples    width profile (positive on the domain)
//   domain.u1, domain.u2   parameter interval (u2 > u1)
//   d0                     free diffusion coefficient (> 0)
//   methods                list of estimator tags
//   grid.n_profile         profile stations (default 101)
//   grid.nu, grid.nv       oracle grid (defaults 256 x 33, nv odd)
//   output.profile/compare/sweep   CSV paths per subcommand
//   sweep.k, sweep.m_min, sweep.m_max, sweep.n   Fig. 8 sweep parameters
//
// Unknown keys are rejected.  All violations are aggregated into a single
// ConfigError message, one per line.
ExperimentConfig parse_config(const std::string& json_text);

// Reads the file and parses it; file errors become ConfigError.
ExperimentConfig load_config(const std::string& path);

}  // namespace curveflux
