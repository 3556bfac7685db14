// Copyright 2026 The Steerlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// trajectory.hpp — stochastic unraveling of the measurement protocol with
// recorded detector readouts. Each step applies the Kraus pair
//
//   M_up = <↑|U|↑>,  M_down = <↓|U|↑>   (4x4 blocks of the step unitary)
//
// sampling "down" (a click) with probability Tr(M_down rho M_down†).
//
// Reproducibility contract: trajectory i of an ensemble is seeded by
// trajectory_seed(master_seed, i) (splitmix64 of master_seed + (i+1)·golden
// ratio); uniforms are drawn as (mt19937_64() >> 11) * 2^-53 so records are
// identical across platforms; ensemble reductions run over fixed-size
// trajectory blocks in index order, so results are bit-stable for any worker
// count.

#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "steerlab/linalg.hpp"
#include "steerlab/protocol.hpp"

namespace steerlab::traj {

using linalg::ComplexMatrix;
using linalg::DensityMatrix;
using protocol::MeasurementStep;
using protocol::OrthonormalBasis;
using protocol::ProtocolSchedule;

enum class Readout : std::uint8_t { up, down };

/// The Kraus pair of one measurement step.
struct StepKraus {
    ComplexMatrix up;
    ComplexMatrix down;
};

/// Extract M_up, M_down from the step unitary.
StepKraus kraus_operators(const MeasurementStep& step, const OrthonormalBasis& basis);

/// One recorded readout; detector is the step's target index.
struct StepReadout {
    int cycle;
    int step;
    int detector;
    Readout readout;
};

/// Full record of one trajectory: per-step readouts, one state snapshot per
/// cycle (index 0 is the initial state), cycle_times in units of gbar·t.
struct TrajectoryRecord {
    std::uint64_t seed = 0;
    std::vector<double> cycle_times;
    std::vector<StepReadout> readouts;
    std::vector<DensityMatrix> states;
    int click_count = 0;
};

/// One click event inside an ensemble, for CSV export.
struct ClickEvent {
    int trajectory;
    int cycle;
    int step;
    int detector;
};

/// Ensemble statistics on the per-cycle grid. Populations are with respect to
/// the schedule basis; stderr is the sample standard error of the mean.
/// click_rate counts clicks per unit gbar·t over the second half of the run
/// (the steady-state window); the matching analytic value for a converged
/// schedule with rates g = gbar·p is sum_i p_i (1 - p_i).
struct EnsembleStats {
    int n_traj = 0;
    std::vector<double> cycle_times;
    std::vector<DensityMatrix> mean_state;
    std::array<std::vector<double>, 4> population_mean;
    std::array<std::vector<double>, 4> population_stderr;
    double click_rate = 0.0;
    double click_rate_stderr = 0.0;
    std::vector<ClickEvent> clicks; // filled only when collect_clicks is set
};

/// Deterministic per-trajectory seed derivation (splitmix64).
std::uint64_t trajectory_seed(std::uint64_t master_seed, int index);

/// Uniform in [0, 1) from the top 53 bits of one generator draw.
double uniform_draw(std::mt19937_64& rng);

/// Sample one measurement step: returns the normalized post-measurement state
/// and the readout. Consumes exactly one uniform draw.
std::pair<DensityMatrix, Readout> stochastic_step(const DensityMatrix& rho,
                                                  const MeasurementStep& step,
                                                  const OrthonormalBasis& basis,
                                                  std::mt19937_64& rng);

/// Run one trajectory of n_cycles full 12-step cycles, detector reset each
/// step. Deterministic given the seed.
TrajectoryRecord run_trajectory(const ProtocolSchedule& schedule, const DensityMatrix& rho0,
                                int n_cycles, std::uint64_t seed);

/// Average n_traj independent trajectories. n_threads = 0 picks the hardware
/// concurrency; results do not depend on the worker count.
EnsembleStats ensemble_average(const ProtocolSchedule& schedule, const DensityMatrix& rho0,
                               int n_cycles, int n_traj, std::uint64_t master_seed,
                               int n_threads = 0, bool collect_clicks = false);

} // namespace steerlab::traj
