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

#include "steerlab/trajectory.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <string>
#include <thread>

namespace steerlab::traj {

namespace {

using linalg::Complex;

constexpr double kProbTol = 1e-12;

// Trajectories are accumulated in fixed blocks of this many indices and the
// blocks reduced in order, which keeps ensemble results independent of the
// worker count.
constexpr int kBlockSize = 256;

DensityMatrix sanitize_state(const ComplexMatrix& raw) {
    ComplexMatrix rho = ((raw + raw.adjoint()) / 2.0).eval();
    rho /= rho.trace().real();
    return DensityMatrix(std::move(rho));
}

/// Fixed-size Kraus data for the hot loop.
struct FastKraus {
    Eigen::Matrix4cd up;
    Eigen::Matrix4cd down;
    Eigen::Matrix4cd absorb; // M_down† M_down, so P(down) = Tr(absorb·rho)
    int detector = 0;
};

std::vector<FastKraus> prepare_kraus(const ProtocolSchedule& schedule) {
    std::vector<FastKraus> out;
    out.reserve(schedule.steps().size());
    for (const auto& step : schedule.steps()) {
        const StepKraus k = kraus_operators(step, schedule.basis());
        FastKraus fk;
        fk.up = k.up;
        fk.down = k.down;
        fk.absorb = (k.down.adjoint() * k.down).eval();
        fk.detector = step.target_index;
        out.push_back(std::move(fk));
    }
    return out;
}

double clamp_probability(double p, const char* where) {
    if (p < -kProbTol || p > 1.0 + kProbTol) {
        throw NumericError(std::string(where) + ": branch probability " + std::to_string(p) +
                           " outside [0, 1]");
    }
    return std::min(std::max(p, 0.0), 1.0);
}

/// Core stepping loop shared by the record-keeping and ensemble paths.
/// on_cycle(cycle, rho) fires for cycle = 0..n_cycles; on_readout fires once
/// per step. Exactly one uniform draw is consumed per step, so the random
/// stream does not depend on the system state.
template <typename OnCycle, typename OnReadout>
void simulate(const std::vector<FastKraus>& kraus, Eigen::Matrix4cd rho, int n_cycles,
              std::mt19937_64& rng, OnCycle&& on_cycle, OnReadout&& on_readout) {
    on_cycle(0, rho);
    for (int cycle = 1; cycle <= n_cycles; ++cycle) {
        for (std::size_t s = 0; s < kraus.size(); ++s) {
            const FastKraus& k = kraus[s];
            const double p_down =
                clamp_probability((k.absorb * rho).trace().real(), "stochastic step");
            const double u = uniform_draw(rng);
            Readout readout;
            if (u < p_down) {
                readout = Readout::down;
                rho = k.down * rho * k.down.adjoint();
            } else {
                readout = Readout::up;
                rho = k.up * rho * k.up.adjoint();
            }
            const double tr = rho.trace().real();
            if (!(tr > 1e-300)) {
                throw NumericError("stochastic step: selected branch has vanishing weight");
            }
            rho /= tr;
            on_readout(cycle, static_cast<int>(s), k.detector, readout);
        }
        on_cycle(cycle, rho);
    }
}

} // namespace

StepKraus kraus_operators(const MeasurementStep& step, const OrthonormalBasis& basis) {
    const ComplexMatrix h = protocol::interaction_hamiltonian(step, basis);
    const ComplexMatrix u = linalg::expm_hermitian_generator(h, step.duration);
    StepKraus k{ComplexMatrix(4, 4), ComplexMatrix(4, 4)};
    for (Eigen::Index a = 0; a < 4; ++a) {
        for (Eigen::Index b = 0; b < 4; ++b) {
            k.up(a, b) = u(2 * a, 2 * b);       // <↑|U|↑>
            k.down(a, b) = u(2 * a + 1, 2 * b); // <↓|U|↑>
        }
    }
    return k;
}

std::uint64_t trajectory_seed(std::uint64_t master_seed, int index) {
    std::uint64_t x =
        master_seed + (static_cast<std::uint64_t>(index) + 1) * 0x9E3779B97F4A7C15ULL;
    x += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double uniform_draw(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::pair<DensityMatrix, Readout> stochastic_step(const DensityMatrix& rho,
                                                  const MeasurementStep& step,
                                                  const OrthonormalBasis& basis,
                                                  std::mt19937_64& rng) {
    if (rho.dim() != 4) throw std::invalid_argument("stochastic_step: expected a 4x4 state");
    const StepKraus k = kraus_operators(step, basis);
    const ComplexMatrix down_branch = k.down * rho.matrix() * k.down.adjoint();
    const double p_down = clamp_probability(down_branch.trace().real(), "stochastic_step");
    const double u = uniform_draw(rng);
    if (u < p_down) {
        return {sanitize_state(down_branch), Readout::down};
    }
    const ComplexMatrix up_branch = k.up * rho.matrix() * k.up.adjoint();
    return {sanitize_state(up_branch), Readout::up};
}

TrajectoryRecord run_trajectory(const ProtocolSchedule& schedule, const DensityMatrix& rho0,
                                int n_cycles, std::uint64_t seed) {
    if (n_cycles < 1) throw std::invalid_argument("run_trajectory: n_cycles must be at least 1");
    if (rho0.dim() != 4) throw std::invalid_argument("run_trajectory: expected a 4x4 state");
    const std::vector<FastKraus> kraus = prepare_kraus(schedule);
    const double gbar_dt = schedule.gbar() * schedule.cycle_duration();

    TrajectoryRecord record;
    record.seed = seed;
    record.cycle_times.reserve(n_cycles + 1);
    record.states.reserve(n_cycles + 1);
    record.readouts.reserve(static_cast<std::size_t>(n_cycles) * kraus.size());

    std::mt19937_64 rng(seed);
    simulate(
        kraus, Eigen::Matrix4cd(rho0.matrix()), n_cycles, rng,
        [&](int cycle, const Eigen::Matrix4cd& rho) {
            record.cycle_times.push_back(gbar_dt * cycle);
            record.states.push_back(sanitize_state(rho));
        },
        [&](int cycle, int step, int detector, Readout readout) {
            record.readouts.push_back(StepReadout{cycle, step, detector, readout});
            if (readout == Readout::down) ++record.click_count;
        });
    return record;
}

EnsembleStats ensemble_average(const ProtocolSchedule& schedule, const DensityMatrix& rho0,
                               int n_cycles, int n_traj, std::uint64_t master_seed, int n_threads,
                               bool collect_clicks) {
    if (n_cycles < 1) throw std::invalid_argument("ensemble_average: n_cycles must be at least 1");
    if (n_traj < 1) throw std::invalid_argument("ensemble_average: n_traj must be at least 1");
    if (rho0.dim() != 4) throw std::invalid_argument("ensemble_average: expected a 4x4 state");

    const std::vector<FastKraus> kraus = prepare_kraus(schedule);
    const Eigen::Matrix4cd rho_init = rho0.matrix();
    const int n_times = n_cycles + 1;
    const double gbar_dt = schedule.gbar() * schedule.cycle_duration();

    std::array<Eigen::Vector4cd, 4> basis_cols;
    for (int i = 0; i < 4; ++i) basis_cols[i] = schedule.basis().matrix().col(i);

    // Click-rate window: second half of the run.
    const int window_start = n_cycles / 2 + 1; // first cycle counted
    const int window_cycles = n_cycles - n_cycles / 2;

    struct BlockAccum {
        std::vector<Eigen::Matrix4cd> sum_rho;
        std::array<std::vector<double>, 4> sum_p;
        std::array<std::vector<double>, 4> sum_p2;
        double clicks = 0.0;
        double clicks2 = 0.0;
        std::vector<ClickEvent> events;
    };

    const int n_blocks = (n_traj + kBlockSize - 1) / kBlockSize;
    std::vector<BlockAccum> blocks(n_blocks);

    std::atomic<int> next_block{0};
    std::exception_ptr worker_error;
    std::mutex error_mutex;

    const auto worker = [&]() {
        try {
            for (;;) {
                const int b = next_block.fetch_add(1);
                if (b >= n_blocks) break;
                BlockAccum& acc = blocks[b];
                acc.sum_rho.assign(n_times, Eigen::Matrix4cd::Zero());
                for (int i = 0; i < 4; ++i) {
                    acc.sum_p[i].assign(n_times, 0.0);
                    acc.sum_p2[i].assign(n_times, 0.0);
                }
                const int lo = b * kBlockSize;
                const int hi = std::min(lo + kBlockSize, n_traj);
                for (int t = lo; t < hi; ++t) {
                    std::mt19937_64 rng(trajectory_seed(master_seed, t));
                    double window_clicks = 0.0;
                    simulate(
                        kraus, rho_init, n_cycles, rng,
                        [&](int cycle, const Eigen::Matrix4cd& rho) {
                            acc.sum_rho[cycle] += rho;
                            for (int i = 0; i < 4; ++i) {
                                const double p =
                                    (basis_cols[i].adjoint() * rho * basis_cols[i])(0).real();
                                acc.sum_p[i][cycle] += p;
                                acc.sum_p2[i][cycle] += p * p;
                            }
                        },
                        [&](int cycle, int step, int detector, Readout readout) {
                            if (readout != Readout::down) return;
                            if (cycle >= window_start) window_clicks += 1.0;
                            if (collect_clicks) {
                                acc.events.push_back(ClickEvent{t, cycle, step, detector});
                            }
                        });
                    acc.clicks += window_clicks;
                    acc.clicks2 += window_clicks * window_clicks;
                }
            }
        } catch (...) {
            std::scoped_lock lock(error_mutex);
            if (!worker_error) worker_error = std::current_exception();
        }
    };

    int workers = n_threads > 0 ? n_threads : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min(workers, n_blocks));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (worker_error) std::rethrow_exception(worker_error);

    // Reduce in block order (fixed, thread-count independent).
    std::vector<Eigen::Matrix4cd> sum_rho(n_times, Eigen::Matrix4cd::Zero());
    std::array<std::vector<double>, 4> sum_p, sum_p2;
    for (int i = 0; i < 4; ++i) {
        sum_p[i].assign(n_times, 0.0);
        sum_p2[i].assign(n_times, 0.0);
    }
    double clicks = 0.0, clicks2 = 0.0;
    EnsembleStats stats;
    for (const BlockAccum& acc : blocks) {
        for (int t = 0; t < n_times; ++t) sum_rho[t] += acc.sum_rho[t];
        for (int i = 0; i < 4; ++i) {
            for (int t = 0; t < n_times; ++t) {
                sum_p[i][t] += acc.sum_p[i][t];
                sum_p2[i][t] += acc.sum_p2[i][t];
            }
        }
        clicks += acc.clicks;
        clicks2 += acc.clicks2;
        if (collect_clicks) {
            stats.clicks.insert(stats.clicks.end(), acc.events.begin(), acc.events.end());
        }
    }

    stats.n_traj = n_traj;
    stats.cycle_times.resize(n_times);
    stats.mean_state.reserve(n_times);
    const double n = static_cast<double>(n_traj);
    for (int i = 0; i < 4; ++i) {
        stats.population_mean[i].resize(n_times);
        stats.population_stderr[i].resize(n_times);
    }
    for (int t = 0; t < n_times; ++t) {
        stats.cycle_times[t] = gbar_dt * t;
        stats.mean_state.push_back(sanitize_state(ComplexMatrix(sum_rho[t] / n)));
        for (int i = 0; i < 4; ++i) {
            const double mean = sum_p[i][t] / n;
            stats.population_mean[i][t] = mean;
            double se = 0.0;
            if (n_traj > 1) {
                const double var =
                    std::max(0.0, (sum_p2[i][t] - n * mean * mean) / (n - 1.0));
                se = std::sqrt(var / n);
            }
            stats.population_stderr[i][t] = se;
        }
    }

    const double window_gbar_t = gbar_dt * window_cycles;
    stats.click_rate = clicks / (n * window_gbar_t);
    if (n_traj > 1) {
        const double mean_clicks = clicks / n;
        const double var = std::max(0.0, (clicks2 - n * mean_clicks * mean_clicks) / (n - 1.0));
        stats.click_rate_stderr = std::sqrt(var / n) / window_gbar_t;
    }
    return stats;
}

} // namespace steerlab::traj
