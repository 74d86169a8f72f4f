#pragma once

#include "curveflux/config.hpp"

namespace curveflux {

// Subcommand bodies shared by the binary and the tests.  Each writes one CSV
// (atomically: content is assembled before the file is opened) and throws on
// failure: ConfigError for schema problems, other curveflux errors for
// numerical/validity failures.

// u,sigma,<method>... at n_profile uniform stations.  Estimator failures leave
// nan cells and print one diagnostic per failing station to stderr.
void cmd_profile(const ExperimentConfig& cfg);

// method,max_rel_err,mean_rel_err,flux_rel_err,nu,nv against the oracle.
void cmd_validate(const ExperimentConfig& cfg);

// k,m1,m2,D over the worked-example slope grid; singular samples appear as inf.
void cmd_sweep_fig8(const ExperimentConfig& cfg);

}  // namespace curveflux
