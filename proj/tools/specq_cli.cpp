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

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "specq/harness.hpp"

using namespace specq;

namespace {

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    return json::parse(in);
}

void write_text(const std::string& path, const std::string& body) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path + " for writing");
    out << body;
}

struct Overrides {
    std::string convention;
    std::string path;
    int t = -1;
    std::int64_t seed = -1;
    std::string outdir;

    void apply(ExperimentConfig& config) const {
        if (!convention.empty()) {
            config.convention = convention == "unsigned" ? FrequencyConvention::Unsigned
                                                         : FrequencyConvention::Signed;
        }
        if (!path.empty()) {
            config.path = path == "arithmetic" ? EncodingPath::Arithmetic
                                               : EncodingPath::IdealDilation;
        }
        if (t >= 0) config.t_bits = t;
        if (seed >= 0) config.seed = static_cast<std::uint64_t>(seed);
        if (!outdir.empty()) config.outdir = outdir;
    }
};

Field abs_difference(const Field& a, const Field& b) {
    Field out(a.grid);
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        out.values[i] = cplx{std::abs(a.values[i] - b.values[i]), 0.0};
    }
    return out;
}

void write_solution_outputs(const ExperimentOutputs& run, const std::string& dir, int d) {
    write_field_bin(run.u_true, dir + "/u_true.bin");
    write_field_bin(run.u_num, dir + "/u_num.bin");
    write_field_bin(run.u_quant, dir + "/u_quant.bin");
    write_field_csv(run.u_quant, dir + "/u_quant.csv");
    if (d == 2) {
        emit_heatmap(run.u_true, dir + "/u_true.svg");
        emit_heatmap(run.u_num, dir + "/u_num.svg");
        emit_heatmap(run.u_quant, dir + "/u_quant.svg");
        emit_heatmap(abs_difference(run.u_num, run.u_true), dir + "/abs_error_classical.svg");
        emit_heatmap(abs_difference(run.u_quant, run.u_true), dir + "/abs_error_quantum.svg");
    }
    if (run.classical_trajectory) {
        export_energy_csv(*run.classical_trajectory, dir + "/energies_classical.csv");
        emit_energy_trace(run.report.energies_classical, run.energy_steady,
                          dir + "/energy_trace_classical.csv", dir + "/energy_trace_classical.svg");
        emit_energy_trace_overlay(run.report.energies_classical, run.report.energies_quantum,
                                  run.energy_steady, dir + "/energy_trace_overlay.csv",
                                  dir + "/energy_trace_overlay.svg");
    }
}

int cmd_solve(const std::string& config_path, const Overrides& ov) {
    ExperimentConfig config = ExperimentConfig::from_json(load_json(config_path));
    ov.apply(config);
    const ExperimentOutputs run = run_experiment_full(config);

    const json schema = load_json(std::string(SPECQ_SOURCE_DIR) + "/docs/error_report.schema.json");
    const json report = run.report.to_json();
    validate_report(report, schema);

    const std::string dir = make_run_dir(config.outdir, "solve");
    write_text(dir + "/report.json", report.dump(2) + "\n");
    write_solution_outputs(run, dir, config.d);

    std::cout << "numerical_error " << run.report.numerical_error << "\n"
              << "quantum_error   " << run.report.quantum_error << "\n"
              << "success_prob    " << run.report.success_prob << "\n"
              << "outputs in " << dir << "\n";
    return 0;
}

int cmd_suite(const std::string& id, const Overrides& ov) {
    std::string outdir = "runs";
    const SuiteResult suite = run_suite(id, [&](ExperimentConfig& config) {
        ov.apply(config);
        outdir = config.outdir;
    });
    const std::string dir = make_run_dir(outdir, "suite_" + id);
    write_text(dir + "/" + id + ".csv", suite_csv(suite));
    write_text(dir + "/" + id + ".txt", suite_text(suite));
    json reports = json::array();
    for (const auto& rr : suite.rows) {
        if (rr.report) {
            reports.push_back(rr.report->to_json());
        } else {
            reports.push_back({{"label", rr.row.label}, {"error", rr.error}});
        }
    }
    write_text(dir + "/" + id + "_reports.json", reports.dump(2) + "\n");
    std::cout << suite_text(suite) << "outputs in " << dir << "\n";
    for (const auto& rr : suite.rows) {
        if (!rr.error.empty()) return 1;
    }
    return 0;
}

int cmd_sweep(const std::string& config_path, int tmin, int tmax, int tstep,
              const Overrides& ov) {
    ExperimentConfig config = ExperimentConfig::from_json(load_json(config_path));
    ov.apply(config);
    const GridSpec grid(config.d, config.n);
    SpectralFilter filter;
    if (config.kind == FilterKind::Elliptic) {
        filter = filter_elliptic(CoefficientMatrix::from_rows(config.A), grid, config.convention);
    } else if (config.kind == FilterKind::Helmholtz) {
        filter = filter_helmholtz(config.lambda, grid, config.convention);
    } else {
        filter = filter_diffusion(CoefficientMatrix::from_rows(config.A), config.dt, grid, config.convention);
    }
    const std::vector<double> denoms = filter_denominators(filter);

    const std::string dir = make_run_dir(config.outdir, "sweep");
    std::ostringstream csv;
    csv << "t,max_abs_error,bound,alpha_eff,alpha_exact\n";
    ArithmeticEncoding last;
    char buf[160];
    for (int t = tmin; t <= tmax; t += tstep) {
        last = arithmetic_pipeline_bits(denoms, t);
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g\n", t, last.max_abs_error,
                      last.modes.front().bound, last.alpha_eff, last.alpha_exact);
        csv << buf;
        std::cout << "t=" << t << "  max_abs_error=" << last.max_abs_error
                  << "  bound=" << last.modes.front().bound << "\n";
    }
    write_text(dir + "/precision_sweep.csv", csv.str());
    export_mode_report_csv(last.modes, dir + "/mode_report.csv");
    std::cout << "outputs in " << dir << "\n";
    return 0;
}

int cmd_resources(const std::string& config_path, const Overrides& ov) {
    ExperimentConfig config = ExperimentConfig::from_json(load_json(config_path));
    ov.apply(config);
    const GridSpec grid(config.d, config.n);
    SpectralFilter filter;
    if (config.kind == FilterKind::Elliptic) {
        filter = filter_elliptic(CoefficientMatrix::from_rows(config.A), grid, config.convention);
    } else if (config.kind == FilterKind::Helmholtz) {
        filter = filter_helmholtz(config.lambda, grid, config.convention);
    } else {
        filter = filter_diffusion(CoefficientMatrix::from_rows(config.A), config.dt, grid, config.convention);
    }
    const EncodingParams params =
        config.t_bits > 0
            ? encoding_params_from_bits(filter.max_denom, filter.min_denom, config.t_bits)
            : encoding_params(filter.max_denom, filter.min_denom, config.eps);
    const EncodingResources est = resource_estimate(params, grid);
    const ResourceReport qft = resources(qft_tensor_circuit(grid.n, grid.d));

    json j;
    j["params"] = {{"M", params.M},       {"m", params.m},   {"kappa", params.kappa},
                   {"c", params.c},       {"k", params.k},   {"eps", params.eps},
                   {"t", params.t},       {"t_prime", params.t_prime},
                   {"t_clamped", params.t_clamped}};
    j["encoding"] = {{"t", est.t},
                     {"t_prime", est.t_prime},
                     {"transient_ancillas", est.transient_ancillas},
                     {"persistent_ancillas", est.persistent_ancillas},
                     {"u_theta_gates", est.u_theta_gates},
                     {"qft_gates_per_register", est.qft_gates_per_register},
                     {"u_theta_exact", est.u_theta_exact},
                     {"oracle_counts_modeled", est.oracle_counts_modeled}};
    j["qft_tensor"] = {{"total_gates", qft.total_gates}, {"depth", qft.depth}};
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_render_heatmap(const std::string& field_path, const std::string& out_path, int slice) {
    const Field f = read_field_bin(field_path);
    emit_heatmap(f, out_path, slice);
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

int cmd_render_energy(const std::string& csv_path, const std::string& out_path, double e_inf) {
    std::ifstream in(csv_path);
    if (!in) throw ConfigError("cannot open " + csv_path);
    std::string line;
    std::getline(in, line);  // header: step,energy
    std::vector<double> energies;
    while (std::getline(in, line)) {
        const auto comma = line.find(',');
        if (comma == std::string::npos) continue;
        energies.push_back(std::stod(line.substr(comma + 1)));
    }
    const std::string csv_out = out_path + ".csv";
    emit_energy_trace(energies, e_inf, csv_out, out_path);
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral PDE workbench: classical and quantum solvers"};
    app.require_subcommand(1);

    Overrides ov;
    app.add_option("--convention", ov.convention, "frequency convention: signed|unsigned")
        ->check(CLI::IsMember({"signed", "unsigned"}));
    app.add_option("--path", ov.path, "encoding path: ideal|arithmetic")
        ->check(CLI::IsMember({"ideal", "arithmetic"}));
    app.add_option("--t", ov.t, "fixed-point bits for the arithmetic path");
    app.add_option("--seed", ov.seed, "seed recorded in reports");
    app.add_option("--outdir", ov.outdir, "output directory root");

    std::string config_path;
    auto* solve = app.add_subcommand("solve", "run one experiment from a JSON config");
    solve->fallthrough();
    solve->add_option("--config", config_path, "config file")->required();

    std::string suite_id;
    auto* suite = app.add_subcommand("suite", "reproduce a benchmark table (T1..T5)");
    suite->fallthrough();
    suite->add_option("table", suite_id, "table id")->required();

    int tmin = 8, tmax = 24, tstep = 4;
    auto* sweep = app.add_subcommand("sweep-precision", "arithmetic-path precision sweep");
    sweep->fallthrough();
    sweep->add_option("--config", config_path, "config file")->required();
    sweep->add_option("--tmin", tmin, "first bit count");
    sweep->add_option("--tmax", tmax, "last bit count");
    sweep->add_option("--tstep", tstep, "bit count stride");

    auto* res = app.add_subcommand("resources", "print encoding parameters and gate counts");
    res->fallthrough();
    res->add_option("--config", config_path, "config file")->required();

    auto* render = app.add_subcommand("render", "render saved fields or energy traces");
    render->fallthrough();
    render->require_subcommand(1);
    std::string in_path, out_path;
    int slice = -1;
    double e_inf = 0.0;
    auto* rh = render->add_subcommand("heatmap", "field binary -> SVG heatmap");
    rh->add_option("input", in_path, "field .bin")->required();
    rh->add_option("output", out_path, "output .svg")->required();
    rh->add_option("--slice", slice, "slice index along the last axis (d=3)");
    auto* re = render->add_subcommand("energy", "energy CSV -> log-gap trace");
    re->add_option("input", in_path, "energies .csv (step,energy)")->required();
    re->add_option("output", out_path, "output .svg")->required();
    re->add_option("--einf", e_inf, "steady-state energy")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve) return cmd_solve(config_path, ov);
        if (*suite) return cmd_suite(suite_id, ov);
        if (*sweep) return cmd_sweep(config_path, tmin, tmax, tstep, ov);
        if (*res) return cmd_resources(config_path, ov);
        if (*render) {
            if (*rh) return cmd_render_heatmap(in_path, out_path, slice);
            if (*re) return cmd_render_energy(in_path, out_path, e_inf);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
