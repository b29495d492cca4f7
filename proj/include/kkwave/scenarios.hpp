#pragma once

#include <string>
#include <vector>

#include "kkwave/config.hpp"

namespace kkwave {

/// Named presets: fig1, fig3, fig4, averaging, appendixB. Writes CSV data,
/// snapshots, a gnuplot script and a manifest under out_dir. Throws
/// ConfigError / ConvergenceError / DomainGuardError on failure.
void run_scenario(const std::string& name, const std::vector<std::string>& overrides,
                  const std::string& out_dir);

/// Executes one configured run and writes its artifacts under config.out_dir.
void run_config(const RunConfig& config);

/// dt / n refinement study against the finest-dt run; writes the error table
/// and fitted orders under out_dir.
void convergence_sweep(const RunConfig& base, const std::vector<double>& dt_factors,
                       const std::vector<double>& n_factors,
                       const std::string& out_dir);

}  // namespace kkwave
