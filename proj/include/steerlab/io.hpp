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

// io.hpp — file formats: JSON target states, JSON measurement schedules, and
// CSV output (UTF-8, LF line endings, locale-independent numbers with 15
// significant digits).
//
// Target state document:
//   {"dim": 4, "re": [[...4x4...]], "im": [[...4x4...]]}
//
// Schedule document:
//   {"tau": t, "basis": [[[re,im] x4] x4], "g": [g0..g3], "J": [J0..J3],
//    "steps": [{"target": i, "source": j} x12]}
// basis[i] lists the amplitudes of |B_i>; indices are 0-based.

#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "steerlab/linalg.hpp"
#include "steerlab/protocol.hpp"

namespace steerlab::io {

using linalg::DensityMatrix;
using protocol::ProtocolSchedule;

/// Parse and validate a density-matrix document. Malformed JSON raises
/// ParseError (with the parser's position info); invariant violations raise
/// ValidationError naming the failed check.
DensityMatrix parse_target_file(const std::string& path);
DensityMatrix parse_target_text(const std::string& text);

void write_schedule_file(const ProtocolSchedule& schedule, const std::string& path);
std::string schedule_to_json(const ProtocolSchedule& schedule);
ProtocolSchedule parse_schedule_text(const std::string& text);
ProtocolSchedule parse_schedule_file(const std::string& path);

/// %.15g formatting, independent of the global locale.
std::string format_number(double x);

/// Minimal CSV emitter: one header row, then data rows, LF endings.
class CsvWriter {
  public:
    explicit CsvWriter(const std::string& path);

    void header(const std::vector<std::string>& columns);
    void row(const std::vector<std::string>& cells);

  private:
    std::ofstream out_;
    std::size_t n_columns_ = 0;
};

} // namespace steerlab::io
