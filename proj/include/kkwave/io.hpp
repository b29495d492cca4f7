#pragma once

#include <string>
#include <utility>
#include <vector>

#include "kkwave/forces.hpp"
#include "kkwave/grid.hpp"
#include "kkwave/potentials.hpp"
#include "kkwave/propagators.hpp"
#include "kkwave/stationary.hpp"

namespace kkwave {

/// Binary snapshot: magic "KKW1", little-endian u64 n_points, f64 x_min,
/// x_max, time, then n interleaved (re, im) f64 pairs.
void save_snapshot(const std::string& path, const WaveFunction& wf);
WaveFunction load_snapshot(const std::string& path);

void write_field_csv(const std::string& path, const WaveFunction& wf);
void write_trajectory_index_csv(const std::string& path, const Trajectory& traj);
void write_amplitudes_csv(const std::string& path, const ScatteringAmplitudes& amps);

/// Flat key-value report, one "key = value" per line.
void write_report(const std::string& path,
                  const std::vector<std::pair<std::string, std::string>>& entries);

/// Two- or three-column CSV (x, reV[, imV]).
TabulatedPotential load_tabulated_potential_csv(const std::string& path);

/// Two-column CSV (t, F) with uniform time spacing.
TabulatedForce load_tabulated_force_csv(const std::string& path);

}  // namespace kkwave
