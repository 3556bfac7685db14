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

#include "steerlab/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace steerlab::io {

namespace {

using linalg::Complex;
using linalg::ComplexMatrix;
using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what()); // includes byte position info
    }
}

Eigen::Matrix4d read_real_grid(const json& j, const std::string& key) {
    if (!j.contains(key)) throw ParseError("missing field \"" + key + "\"");
    const json& grid = j.at(key);
    if (!grid.is_array() || grid.size() != 4) {
        throw ParseError("field \"" + key + "\" must be a 4x4 array of numbers");
    }
    Eigen::Matrix4d m;
    for (int r = 0; r < 4; ++r) {
        const json& row = grid.at(r);
        if (!row.is_array() || row.size() != 4) {
            throw ParseError("field \"" + key + "\" must be a 4x4 array of numbers");
        }
        for (int c = 0; c < 4; ++c) {
            if (!row.at(c).is_number()) {
                throw ParseError("field \"" + key + "\" must contain numbers only");
            }
            m(r, c) = row.at(c).get<double>();
        }
    }
    return m;
}

} // namespace

DensityMatrix parse_target_text(const std::string& text) {
    const json j = parse_json(text);
    if (!j.is_object()) throw ParseError("target document must be a JSON object");
    if (!j.contains("dim") || !j.at("dim").is_number_integer() || j.at("dim").get<int>() != 4) {
        throw ParseError("target document requires \"dim\": 4");
    }
    const Eigen::Matrix4d re = read_real_grid(j, "re");
    const Eigen::Matrix4d im = read_real_grid(j, "im");
    ComplexMatrix m(4, 4);
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            m(r, c) = Complex(re(r, c), im(r, c));
        }
    }
    return DensityMatrix(std::move(m)); // throws ValidationError naming the failed check
}

DensityMatrix parse_target_file(const std::string& path) {
    return parse_target_text(read_file(path));
}

std::string schedule_to_json(const ProtocolSchedule& schedule) {
    json j;
    j["tau"] = schedule.tau();
    json basis = json::array();
    for (int i = 0; i < 4; ++i) {
        json amplitudes = json::array();
        for (int r = 0; r < 4; ++r) {
            const Complex a = schedule.basis().matrix()(r, i);
            amplitudes.push_back(json::array({a.real(), a.imag()}));
        }
        basis.push_back(std::move(amplitudes));
    }
    j["basis"] = std::move(basis);
    json g = json::array(), coupling = json::array();
    for (int i = 0; i < 4; ++i) {
        g.push_back(schedule.rates()(i));
        coupling.push_back(std::sqrt(12.0 * schedule.rates()(i) / schedule.tau()));
    }
    j["g"] = std::move(g);
    j["J"] = std::move(coupling);
    json steps = json::array();
    for (const auto& step : schedule.steps()) {
        steps.push_back(json{{"target", step.target_index}, {"source", step.source_index}});
    }
    j["steps"] = std::move(steps);
    return j.dump(2) + "\n";
}

void write_schedule_file(const ProtocolSchedule& schedule, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open file for writing: " + path);
    out << schedule_to_json(schedule);
}

ProtocolSchedule parse_schedule_text(const std::string& text) {
    const json j = parse_json(text);
    if (!j.is_object()) throw ParseError("schedule document must be a JSON object");
    for (const char* key : {"tau", "basis", "g", "J", "steps"}) {
        if (!j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
    }
    const double tau = j.at("tau").get<double>();
    const json& basis_json = j.at("basis");
    if (!basis_json.is_array() || basis_json.size() != 4) {
        throw ParseError("field \"basis\" must list 4 states");
    }
    ComplexMatrix columns(4, 4);
    for (int i = 0; i < 4; ++i) {
        const json& amplitudes = basis_json.at(i);
        if (!amplitudes.is_array() || amplitudes.size() != 4) {
            throw ParseError("each basis state needs 4 amplitudes");
        }
        for (int r = 0; r < 4; ++r) {
            const json& pair = amplitudes.at(r);
            if (!pair.is_array() || pair.size() != 2) {
                throw ParseError("amplitudes must be [re, im] pairs");
            }
            columns(r, i) = Complex(pair.at(0).get<double>(), pair.at(1).get<double>());
        }
    }
    const json& g_json = j.at("g");
    if (!g_json.is_array() || g_json.size() != 4) throw ParseError("field \"g\" must list 4 rates");
    Eigen::Vector4d g;
    for (int i = 0; i < 4; ++i) g(i) = g_json.at(i).get<double>();

    ProtocolSchedule schedule(protocol::OrthonormalBasis(std::move(columns)), g, tau);

    // Cross-check the redundant fields against the reconstruction.
    const json& j_json = j.at("J");
    if (!j_json.is_array() || j_json.size() != 4) {
        throw ParseError("field \"J\" must list 4 couplings");
    }
    for (int i = 0; i < 4; ++i) {
        const double expected = std::sqrt(12.0 * g(i) / tau);
        if (std::abs(j_json.at(i).get<double>() - expected) > 1e-9 * (1.0 + expected)) {
            throw ValidationError("coupling: J_" + std::to_string(i) +
                                  " does not match g_i = J_i^2 tau / 12");
        }
    }
    const json& steps_json = j.at("steps");
    if (!steps_json.is_array() || steps_json.size() != schedule.steps().size()) {
        throw ParseError("field \"steps\" must list 12 steps");
    }
    for (std::size_t s = 0; s < schedule.steps().size(); ++s) {
        const json& step = steps_json.at(s);
        if (step.at("target").get<int>() != schedule.steps()[s].target_index ||
            step.at("source").get<int>() != schedule.steps()[s].source_index) {
            throw ValidationError("steps: schedule step order does not match the fixed cycle");
        }
    }
    return schedule;
}

ProtocolSchedule parse_schedule_file(const std::string& path) {
    return parse_schedule_text(read_file(path));
}

std::string format_number(double x) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.15g", x);
    return buffer;
}

CsvWriter::CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
    if (!out_) throw ParseError("cannot open file for writing: " + path);
}

void CsvWriter::header(const std::vector<std::string>& columns) {
    n_columns_ = columns.size();
    row(columns);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (n_columns_ != 0 && cells.size() != n_columns_) {
        throw std::invalid_argument("CsvWriter: row width does not match header");
    }
    for (std::size_t k = 0; k < cells.size(); ++k) {
        if (k) out_ << ',';
        out_ << cells[k];
    }
    out_ << '\n';
}

} // namespace steerlab::io
