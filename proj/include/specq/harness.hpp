// Copyright 2026 The specq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "specq/quantum_solver.hpp"

namespace specq {

using nlohmann::json;

/// Declarative benchmark description; parsed from JSON config files.
struct ExperimentConfig {
    FilterKind kind = FilterKind::Elliptic;
    int d = 2;
    int n = 6;
    FrequencyConvention convention = FrequencyConvention::Signed;
    std::vector<std::vector<double>> A;  // elliptic / diffusion
    double lambda = 0.0;                 // helmholtz
    double dt = 0.0;                     // diffusion
    int steps = 0;                       // diffusion
    std::string source;
    std::string u0;                      // diffusion initial condition
    EncodingPath path = EncodingPath::IdealDilation;
    double eps = 1e-8;
    int t_bits = 0;  // > 0 fixes the arithmetic bit count directly
    std::uint64_t seed = 0;
    std::string outdir = "runs";

    static ExperimentConfig from_json(const json& j);
    json to_json() const;
    void validate() const;
};

struct ErrorReport {
    json config;
    double cond_A = 0.0;  // eigenvalue ratio of A; 0 when not applicable
    double cond_filter = 0.0;
    double numerical_error = 0.0;
    double quantum_error = 0.0;
    double success_prob = 0.0;
    std::vector<double> energies_classical;
    std::vector<double> energies_quantum;
    json resources;
    double wall_time = 0.0;

    json to_json() const;
};

/// Everything a single run produces; run_experiment keeps only the report.
struct ExperimentOutputs {
    ErrorReport report;
    Field u_true;
    Field u_num;
    Field u_quant;
    std::optional<DiffusionTrajectory> classical_trajectory;
    std::optional<DiffusionTrajectory> quantum_trajectory;
    std::vector<double> success_probs;
    double energy_steady = 0.0;
};

ExperimentOutputs run_experiment_full(const ExperimentConfig& config);
ErrorReport run_experiment(const ExperimentConfig& config);

/// One row of a reproduction table, with the published values carried along
/// for side-by-side rendering.
struct TableRow {
    std::string label;
    std::vector<std::vector<double>> A;
    double lambda = 0.0;
    double published_cond = 0.0;
    double published_num_err = 0.0;
    double published_quant_err = 0.0;
};

struct TableSpec {
    std::string id;
    std::string title;
    ExperimentConfig base;
    std::vector<TableRow> rows;
};

/// T1/T2: 2D/3D elliptic. T3: 2D Helmholtz. T4/T5: 2D/3D diffusion.
TableSpec table_spec(const std::string& id);

struct SuiteRowResult {
    TableRow row;
    std::optional<ErrorReport> report;
    std::string error;  // nonempty when the row failed
};

struct SuiteResult {
    std::string id;
    std::string title;
    std::vector<SuiteRowResult> rows;
};

SuiteResult run_suite(const std::string& id,
                      const std::function<void(ExperimentConfig&)>& tweak = {});

std::string suite_csv(const SuiteResult& suite);
std::string suite_text(const SuiteResult& suite);

/// SVG heatmap of the real part, linear color scale, min/max printed.
/// d == 3 needs a slice index along the last axis.
void emit_heatmap(const Field& f, const std::string& path, int slice = -1);

/// CSV (step, log10(E - E_inf)) plus an SVG line plot; points within 1e-14
/// of E_inf are dropped. An all-dropped trajectory produces a notice.
void emit_energy_trace(const std::vector<double>& energies, double e_inf,
                       const std::string& csv_path, const std::string& svg_path);
void emit_energy_trace_overlay(const std::vector<double>& classical,
                               const std::vector<double>& quantum, double e_inf,
                               const std::string& csv_path, const std::string& svg_path);

/// Structural validation against the JSON schema shipped in docs/
/// (supports the type/required/properties/items subset used there).
void validate_report(const json& report, const json& schema);

/// Creates <outdir>/<stamp>_<label>/ and returns its path.
std::string make_run_dir(const std::string& outdir, const std::string& label);

}  // namespace specq
