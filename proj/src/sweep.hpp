// Copyright 2026 The kfpq Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "common.hpp"
#include "symbols.hpp"

// Parameter sweeps behind the command line: one table per quantity.
namespace kfpq::sweep {

inline constexpr int kSchemaVersion = 1;

enum class Command { Norms, Delta0, Positivity, Bargmann, Resolvent, Optimality, Degenerate, Subelliptic, VerifyAll };

Command parse_command(const std::string &name); // Config on unknown names
std::string command_name(Command c);

struct TGrid {
    double tmin = 0.0, tmax = 0.0;
    int count = 0;
    bool log = true;
    std::vector<double> points() const;
};

struct Config {
    Command command = Command::Norms;
    std::vector<double> nus; // empty: command default
    bool alpha_set = false;
    symbols::Alpha alpha = symbols::Alpha::Zero;
    double lambda1 = 0.0;
    bool t_set = false;
    TGrid t;
    int dims = 0; // 0: command default
    std::vector<int> pencil_dims{16, 24};
    std::uint64_t seed = 1;
    double conv_tol = 0.01;
    bool strict = false; // unconverged samples raise TruncationNotConverged
};

// Throws Error(Config) naming the offending field.
void validate(const Config &c);

enum class ColumnKind { Real, Int, Flag, Text };

struct Column {
    std::string name;
    ColumnKind kind = ColumnKind::Real;
    bool is_volatile = false; // excluded from reproducible artifacts
};

using Cell = std::variant<double, std::string>;

struct Table {
    std::string name;
    std::vector<Column> columns;
    std::vector<std::vector<Cell>> rows;
};

struct Result {
    Command command = Command::Norms;
    std::vector<Table> tables;
    bool passed = true; // verify-all only
};

Result run(const Config &c);

} // namespace kfpq::sweep
