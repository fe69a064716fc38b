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

#include "specq/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

namespace specq {

namespace {

std::string kind_to_string(FilterKind k) { return to_string(k); }

FilterKind kind_from_string(const std::string& s) {
    if (s == "elliptic") return FilterKind::Elliptic;
    if (s == "helmholtz") return FilterKind::Helmholtz;
    if (s == "diffusion") return FilterKind::Diffusion;
    throw ConfigError("unknown kind: " + s);
}

std::string convention_to_string(FrequencyConvention c) {
    return c == FrequencyConvention::Signed ? "signed" : "unsigned";
}

FrequencyConvention convention_from_string(const std::string& s) {
    if (s == "signed") return FrequencyConvention::Signed;
    if (s == "unsigned") return FrequencyConvention::Unsigned;
    throw ConfigError("unknown convention: " + s);
}

std::string path_to_string(EncodingPath p) {
    return p == EncodingPath::IdealDilation ? "ideal" : "arithmetic";
}

EncodingPath path_from_string(const std::string& s) {
    if (s == "ideal") return EncodingPath::IdealDilation;
    if (s == "arithmetic") return EncodingPath::Arithmetic;
    throw ConfigError("unknown path: " + s);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt3(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

json resources_to_json(const ResourceReport& r) {
    json j;
    j["gates"] = r.gate_counts;
    j["total_gates"] = r.total_gates;
    j["depth"] = r.depth;
    j["ancillas"] = r.ancilla_count;
    return j;
}

CoefficientMatrix coefficient_matrix(const ExperimentConfig& config) {
    try {
        return CoefficientMatrix::from_rows(config.A);
    } catch (const ValidationError& e) {
        throw ConfigError(std::string("invalid coefficient matrix: ") + e.what());
    }
}

SpectralFilter build_filter(const ExperimentConfig& config, const GridSpec& grid) {
    switch (config.kind) {
        case FilterKind::Elliptic:
            return filter_elliptic(coefficient_matrix(config), grid, config.convention);
        case FilterKind::Helmholtz:
            return filter_helmholtz(config.lambda, grid, config.convention);
        case FilterKind::Diffusion:
            return filter_diffusion(coefficient_matrix(config), config.dt, grid,
                                    config.convention);
    }
    throw ConfigError("unreachable kind");
}

// Viridis-like three-stop linear color scale.
void color_of(double u, int& r, int& g, int& b) {
    const int stops[3][3] = {{68, 1, 84}, {33, 145, 140}, {253, 231, 37}};
    u = std::clamp(u, 0.0, 1.0);
    const double s = u * 2.0;
    const int seg = s < 1.0 ? 0 : 1;
    const double w = s - seg;
    r = static_cast<int>(std::lround(stops[seg][0] + w * (stops[seg + 1][0] - stops[seg][0])));
    g = static_cast<int>(std::lround(stops[seg][1] + w * (stops[seg + 1][1] - stops[seg][1])));
    b = static_cast<int>(std::lround(stops[seg][2] + w * (stops[seg + 1][2] - stops[seg][2])));
}

struct TracePoints {
    std::vector<double> xs;
    std::vector<double> ys;  // log10(E - E_inf)
};

TracePoints trace_points(const std::vector<double>& energies, double e_inf) {
    TracePoints p;
    for (std::size_t t = 0; t < energies.size(); ++t) {
        const double gap = energies[t] - e_inf;
        if (gap <= 1e-14) continue;
        p.xs.push_back(static_cast<double>(t));
        p.ys.push_back(std::log10(gap));
    }
    return p;
}

void write_polyline_svg(std::ofstream& out, const std::vector<TracePoints>& traces,
                        const std::vector<std::string>& colors,
                        const std::vector<std::string>& names) {
    const int w = 640, h = 420, ml = 70, mr = 20, mt = 20, mb = 50;
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool any = false;
    for (const auto& tr : traces) {
        for (std::size_t i = 0; i < tr.xs.size(); ++i) {
            if (!any) {
                xmin = xmax = tr.xs[i];
                ymin = ymax = tr.ys[i];
                any = true;
            } else {
                xmin = std::min(xmin, tr.xs[i]);
                xmax = std::max(xmax, tr.xs[i]);
                ymin = std::min(ymin, tr.ys[i]);
                ymax = std::max(ymax, tr.ys[i]);
            }
        }
    }
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
        << "\">\n";
    if (!any) {
        out << "<text x=\"20\" y=\"40\" font-family=\"monospace\">trajectory already at "
               "steady state; nothing to plot</text>\n</svg>\n";
        return;
    }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;
    auto X = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (w - ml - mr); };
    auto Y = [&](double y) { return h - mb - (y - ymin) / (ymax - ymin) * (h - mt - mb); };
    out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << (w - ml - mr)
        << "\" height=\"" << (h - mt - mb)
        << "\" fill=\"none\" stroke=\"#888\" stroke-width=\"1\"/>\n";
    for (std::size_t k = 0; k < traces.size(); ++k) {
        out << "<polyline fill=\"none\" stroke=\"" << colors[k] << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < traces[k].xs.size(); ++i) {
            out << X(traces[k].xs[i]) << ',' << Y(traces[k].ys[i]) << ' ';
        }
        out << "\"/>\n";
        out << "<text x=\"" << (ml + 10) << "\" y=\"" << (mt + 18 + 16 * k) << "\" fill=\""
            << colors[k] << "\" font-family=\"monospace\" font-size=\"12\">" << names[k]
            << "</text>\n";
    }
    out << "<text x=\"" << ml << "\" y=\"" << (h - 12)
        << "\" font-family=\"monospace\" font-size=\"12\">step: " << fmt3(xmin) << " .. "
        << fmt3(xmax) << "   log10(E - E_inf): " << fmt3(ymin) << " .. " << fmt3(ymax)
        << "</text>\n";
    out << "</svg>\n";
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const json& j) {
    ExperimentConfig c;
    try {
        c.kind = kind_from_string(j.at("kind").get<std::string>());
        c.d = j.at("d").get<int>();
        c.n = j.at("n").get<int>();
        if (j.contains("convention")) {
            c.convention = convention_from_string(j["convention"].get<std::string>());
        }
        if (j.contains("A")) c.A = j["A"].get<std::vector<std::vector<double>>>();
        if (j.contains("lambda")) c.lambda = j["lambda"].get<double>();
        if (j.contains("dt")) c.dt = j["dt"].get<double>();
        if (j.contains("steps")) c.steps = j["steps"].get<int>();
        c.source = j.at("source").get<std::string>();
        if (j.contains("u0")) c.u0 = j["u0"].get<std::string>();
        if (j.contains("path")) c.path = path_from_string(j["path"].get<std::string>());
        if (j.contains("eps")) c.eps = j["eps"].get<double>();
        if (j.contains("t")) c.t_bits = j["t"].get<int>();
        if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("outdir")) c.outdir = j["outdir"].get<std::string>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    c.validate();
    return c;
}

json ExperimentConfig::to_json() const {
    json j;
    j["kind"] = kind_to_string(kind);
    j["d"] = d;
    j["n"] = n;
    j["convention"] = convention_to_string(convention);
    if (!A.empty()) j["A"] = A;
    if (kind == FilterKind::Helmholtz) j["lambda"] = lambda;
    if (kind == FilterKind::Diffusion) {
        j["dt"] = dt;
        j["steps"] = steps;
        j["u0"] = u0;
    }
    j["source"] = source;
    j["path"] = path_to_string(path);
    if (t_bits > 0) {
        j["t"] = t_bits;
    } else {
        j["eps"] = eps;
    }
    j["seed"] = seed;
    j["outdir"] = outdir;
    return j;
}

void ExperimentConfig::validate() const {
    if (d < 1 || n < 1) throw ConfigError("config requires d >= 1 and n >= 1");
    find_source(source);  // throws ConfigError on unknown id
    const bool needs_A = kind == FilterKind::Elliptic || kind == FilterKind::Diffusion;
    if (needs_A) {
        if (static_cast<int>(A.size()) != d) {
            throw ConfigError("coefficient matrix must be d x d");
        }
    } else if (!A.empty()) {
        throw ConfigError("helmholtz config must not carry a coefficient matrix");
    }
    if (kind == FilterKind::Helmholtz && lambda <= 0.0) {
        throw ConfigError("helmholtz config requires lambda > 0");
    }
    if (kind == FilterKind::Diffusion) {
        if (dt <= 0.0 || steps < 1) throw ConfigError("diffusion config requires dt > 0, steps >= 1");
        find_source(u0);
    }
    if (kind == FilterKind::Elliptic && !find_source(source).zero_mean) {
        throw ConfigError("elliptic source must be zero-mean");
    }
}

json ErrorReport::to_json() const {
    json j;
    j["config"] = config;
    j["cond_A"] = cond_A;
    j["cond_filter"] = cond_filter;
    j["numerical_error"] = numerical_error;
    j["quantum_error"] = quantum_error;
    j["success_prob"] = success_prob;
    if (!energies_classical.empty() || !energies_quantum.empty()) {
        j["energies"] = {{"classical", energies_classical}, {"quantum", energies_quantum}};
    }
    j["resources"] = resources;
    j["wall_time"] = wall_time;
    return j;
}

ExperimentOutputs run_experiment_full(const ExperimentConfig& config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();

    const GridSpec grid(config.d, config.n);
    const Field f = make_field(grid, config.source);
    if (f.norm() == 0.0) {
        throw ConfigError("source '" + config.source + "' samples to the zero field");
    }

    ExperimentOutputs out;
    out.report.config = config.to_json();

    const SpectralFilter filter = build_filter(config, grid);
    out.report.cond_filter = condition_number(filter);
    if (config.kind != FilterKind::Helmholtz) {
        out.report.cond_A = coefficient_matrix(config).condition_number();
    }

    try {
        if (config.kind == FilterKind::Diffusion) {
            const CoefficientMatrix A = coefficient_matrix(config);
            const SpectralFilter steady =
                filter_elliptic(A, grid, config.convention);
            out.u_true = fft_reference_solve(steady, f);
            out.energy_steady = energy(out.u_true, f, A);

            const Field u0 = make_field(grid, config.u0);
            out.classical_trajectory = run_diffusion(filter, u0, f, config.steps);
            QuantumDiffusionRun qrun = run_diffusion_quantum(filter, u0, f, config.steps,
                                                             config.path, config.eps,
                                                             config.t_bits);
            out.u_num = out.classical_trajectory->states.back();
            out.u_quant = qrun.trajectory.states.back();
            out.report.energies_classical = out.classical_trajectory->energies;
            out.report.energies_quantum = qrun.trajectory.energies;
            out.success_probs = qrun.success_probs;
            out.report.success_prob = qrun.success_probs.back();
            out.report.resources = resources_to_json(qrun.resources);
            out.quantum_trajectory = std::move(qrun.trajectory);
        } else {
            out.u_true = fft_reference_solve(filter, f);
            out.u_num = solve_classical(filter, f);
            QuantumSolveResult qres =
                solve_quantum(filter, f, config.path, config.eps, config.t_bits);
            out.u_quant = qres.u_quant;
            out.report.success_prob = qres.success_prob;
            out.report.resources = resources_to_json(qres.resources);
        }
    } catch (const DegenerateInputError& e) {
        throw ConfigError(std::string("degenerate input: ") + e.what());
    }

    if (config.path == EncodingPath::Arithmetic) {
        const EncodingParams p =
            config.t_bits > 0
                ? encoding_params_from_bits(filter.max_denom, filter.min_denom, config.t_bits)
                : encoding_params(filter.max_denom, filter.min_denom, config.eps);
        const EncodingResources er = resource_estimate(p, grid);
        out.report.resources["encoding"] = {{"t", er.t},
                                            {"t_prime", er.t_prime},
                                            {"transient_ancillas", er.transient_ancillas},
                                            {"persistent_ancillas", er.persistent_ancillas},
                                            {"u_theta_gates", er.u_theta_gates},
                                            {"qft_gates_per_register", er.qft_gates_per_register}};
    }

    out.report.numerical_error = relative_error(out.u_num, out.u_true);
    out.report.quantum_error = relative_error(out.u_quant, out.u_true);

    const auto stop = std::chrono::steady_clock::now();
    out.report.wall_time = std::chrono::duration<double>(stop - start).count();
    return out;
}

ErrorReport run_experiment(const ExperimentConfig& config) {
    return run_experiment_full(config).report;
}

TableSpec table_spec(const std::string& id) {
    TableSpec spec;
    spec.id = id;
    ExperimentConfig base;
    base.path = EncodingPath::IdealDilation;
    if (id == "T1") {
        spec.title = "2D elliptic, N=64";
        base.kind = FilterKind::Elliptic;
        base.d = 2;
        base.n = 6;
        base.source = "cos2pix_sinm4piy";
        spec.rows = {
            {"I_2", {{1, 0}, {0, 1}}, 0, 1.0, 1.77e-15, 2.32e-15},
            {"[[3,1],[1,2]]", {{3, 1}, {1, 2}}, 0, 2.62, 2.25e-15, 2.59e-15},
            {"diag(10,1)", {{10, 0}, {0, 1}}, 0, 10.0, 2.87e-15, 3.21e-15},
            {"diag(100,1)", {{100, 0}, {0, 1}}, 0, 100.0, 1.83e-14, 2.96e-14},
            {"diag(100,0.1)", {{100, 0}, {0, 0.1}}, 0, 1000.0, 1.96e-14, 6.29e-14},
            {"diag(1e5,1)", {{1e5, 0}, {0, 1}}, 0, 1e5, 1.75e-11, 2.20e-11},
        };
    } else if (id == "T2") {
        spec.title = "3D elliptic, N=16";
        base.kind = FilterKind::Elliptic;
        base.d = 3;
        base.n = 4;
        base.source = "cos2pix_sinm4piy_cos2piz";
        spec.rows = {
            {"I_3", {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 0, 1.0, 2.24e-14, 2.93e-15},
            {"[[3,1,0.5],[1,3,1],[0.5,1,3]]",
             {{3, 1, 0.5}, {1, 3, 1}, {0.5, 1, 3}},
             0,
             2.58,
             1.2232e-15,
             3.12e-15},
            {"diag(10,1,1)", {{10, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 0, 10.0, 2.95e-15, 6.27e-15},
            {"diag(1,100,1)", {{1, 0, 0}, {0, 100, 0}, {0, 0, 1}}, 0, 100.0, 8.38e-15, 3.47e-14},
            {"diag(1,100,0.1)",
             {{1, 0, 0}, {0, 100, 0}, {0, 0, 0.1}},
             0,
             1000.0,
             2.65e-14,
             3.72e-14},
            {"diag(1,1,1e5)", {{1, 0, 0}, {0, 1, 0}, {0, 0, 1e5}}, 0, 1e5, 2.10e-11, 2.80e-11},
        };
    } else if (id == "T3") {
        spec.title = "2D Helmholtz, N=64";
        base.kind = FilterKind::Helmholtz;
        base.d = 2;
        base.n = 6;
        base.source = "cos2pix_sinm4piy";
        const double two_pi = 2.0 * std::numbers::pi;
        spec.rows = {
            {"lambda=2pi*0.5", {}, two_pi * 0.5, 4.70e3, 1.35e-15, 1.96e-15},
            {"lambda=2pi*1e-1", {}, two_pi * 1e-1, 1.04e4, 1.97e-15, 2.04e-15},
            {"lambda=2pi*1e-2", {}, two_pi * 1e-2, 1.04e6, 3.29e-14, 1.16e-13},
            {"lambda=2pi*1e-3", {}, two_pi * 1e-3, 1.04e8, 3.30e-12, 1.13e-11},
            {"lambda=2pi*1e-4", {}, two_pi * 1e-4, 1.04e10, 3.30e-10, 1.10e-9},
        };
    } else if (id == "T4") {
        spec.title = "2D diffusion, N=64, dt=1e-3, T=300";
        base.kind = FilterKind::Diffusion;
        base.d = 2;
        base.n = 6;
        base.dt = 1e-3;
        base.steps = 300;
        base.source = "cos2pix_sinm4piy";
        base.u0 = "u0_2d";
        spec.rows = {
            {"I_2", {{1, 0}, {0, 1}}, 0, 81.85, 4.60e-14, 5.27e-14},
            {"[[3,1],[1,2]]", {{3, 1}, {1, 2}}, 0, 283.98, 7.40e-14, 5.67e-14},
            {"diag(10,1)", {{10, 0}, {0, 1}}, 0, 445.68, 1.59e-13, 1.23e-13},
            {"diag(100,1)", {{100, 0}, {0, 1}}, 0, 4.08e3, 1.28e-12, 9.39e-13},
            {"diag(1000,1)", {{1000, 0}, {0, 1}}, 0, 4.05e3, 1.01e-11, 8.74e-12},
            {"diag(1e5,1)", {{1e5, 0}, {0, 1}}, 0, 4.04e6, 1.23e-9, 9.40e-10},
        };
    } else if (id == "T5") {
        spec.title = "3D diffusion, N=16, dt=1e-3, T=400";
        base.kind = FilterKind::Diffusion;
        base.d = 3;
        base.n = 4;
        base.dt = 1e-3;
        base.steps = 400;
        base.source = "cos2pix_sinm4piy_cos2piz";
        base.u0 = "u0_3d";
        spec.rows = {
            {"I_3", {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 0, 31.32, 3.62e-6, 3.22e-6},
            {"[[3,1,0.5],[1,3,1],[0.5,1,3]]",
             {{3, 1, 0.5}, {1, 3, 1}, {0.5, 1, 3}},
             0,
             142.49,
             8.16e-6,
             7.84e-6},
            {"diag(10,1,1)", {{10, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 0, 122.28, 7.87e-6, 7.38e-6},
            {"diag(1,100,1)", {{1, 0, 0}, {0, 100, 0}, {0, 0, 1}}, 0, 1.03e3, 2.11e-4, 1.98e-4},
            {"diag(1,1,1000)", {{1, 0, 0}, {0, 1, 0}, {0, 0, 1000}}, 0, 1.02e3, 5.27e-4, 4.94e-4},
            {"diag(1,1,1e5)", {{1, 0, 0}, {0, 1, 0}, {0, 0, 1e5}}, 0, 1.01e6, 3.96e-2, 3.71e-2},
        };
    } else {
        throw UsageError("unknown table id: " + id + " (expected T1..T5)");
    }
    spec.base = base;
    return spec;
}

SuiteResult run_suite(const std::string& id, const std::function<void(ExperimentConfig&)>& tweak) {
    const TableSpec spec = table_spec(id);
    SuiteResult result;
    result.id = spec.id;
    result.title = spec.title;
    for (const TableRow& row : spec.rows) {
        ExperimentConfig config = spec.base;
        config.A = row.A;
        config.lambda = row.lambda;
        if (tweak) tweak(config);
        SuiteRowResult rr;
        rr.row = row;
        try {
            rr.report = run_experiment(config);
        } catch (const std::exception& e) {
            rr.error = e.what();
        }
        result.rows.push_back(std::move(rr));
    }
    return result;
}

// The published elliptic tables quote cond(A); the Helmholtz and diffusion
// tables quote the filter's condition number.
static double displayed_cond(const ErrorReport& report) {
    return report.config.value("kind", "") == "elliptic" ? report.cond_A : report.cond_filter;
}

std::string suite_csv(const SuiteResult& suite) {
    std::ostringstream os;
    os << "row,label,cond_published,cond,numerical_error,quantum_error,success_prob,status\n";
    for (std::size_t i = 0; i < suite.rows.size(); ++i) {
        const SuiteRowResult& rr = suite.rows[i];
        os << i << ',' << rr.row.label << ',' << fmt(rr.row.published_cond) << ',';
        if (rr.report) {
            os << fmt(displayed_cond(*rr.report)) << ',' << fmt(rr.report->numerical_error) << ','
               << fmt(rr.report->quantum_error) << ',' << fmt(rr.report->success_prob) << ",ok\n";
        } else {
            std::string msg = rr.error;
            for (char& ch : msg) {
                if (ch == ',' || ch == '\n') ch = ';';
            }
            os << ",,,," << msg << '\n';
        }
    }
    return os.str();
}

std::string suite_text(const SuiteResult& suite) {
    std::ostringstream os;
    os << suite.title << '\n';
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-32s %12s %12s %16s %16s\n", "row", "cond(published)", "cond",
                  "numerical err", "quantum err");
    os << buf;
    for (const SuiteRowResult& rr : suite.rows) {
        if (rr.report) {
            std::snprintf(buf, sizeof buf, "%-32s %12.4g %12.4g %16.4g %16.4g\n",
                          rr.row.label.c_str(), rr.row.published_cond, displayed_cond(*rr.report),
                          rr.report->numerical_error, rr.report->quantum_error);
        } else {
            std::snprintf(buf, sizeof buf, "%-32s FAILED: %s\n", rr.row.label.c_str(),
                          rr.error.c_str());
        }
        os << buf;
    }
    return os.str();
}

void emit_heatmap(const Field& f, const std::string& path, int slice) {
    const int d = f.grid.d;
    const int N = f.grid.points_per_dim();
    if (d != 2 && !(d == 3 && slice >= 0)) {
        throw UsageError("heatmaps need d == 2, or d == 3 with a slice index");
    }
    if (d == 3 && slice >= N) throw UsageError("slice index out of range");

    std::vector<double> plane(static_cast<std::size_t>(N) * N);
    double vmin = 0, vmax = 0;
    for (int j1 = 0; j1 < N; ++j1) {
        for (int j2 = 0; j2 < N; ++j2) {
            std::vector<int> idx = d == 2 ? std::vector<int>{j1, j2}
                                          : std::vector<int>{j1, j2, slice};
            const double v = f.values[flatten_index(idx, f.grid)].real();
            plane[static_cast<std::size_t>(j1) * N + j2] = v;
            if (j1 == 0 && j2 == 0) {
                vmin = vmax = v;
            } else {
                vmin = std::min(vmin, v);
                vmax = std::max(vmax, v);
            }
        }
    }

    const int cell = std::max(4, 512 / N);
    const int wh = N * cell;
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path + " for writing");
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << wh << "\" height=\""
        << (wh + 24) << "\">\n";
    const double span = vmax > vmin ? vmax - vmin : 1.0;
    for (int j1 = 0; j1 < N; ++j1) {
        for (int j2 = 0; j2 < N; ++j2) {
            int r, g, b;
            color_of((plane[static_cast<std::size_t>(j1) * N + j2] - vmin) / span, r, g, b);
            out << "<rect x=\"" << j1 * cell << "\" y=\"" << j2 * cell << "\" width=\"" << cell
                << "\" height=\"" << cell << "\" fill=\"rgb(" << r << ',' << g << ',' << b
                << ")\"/>\n";
        }
    }
    out << "<text x=\"4\" y=\"" << (wh + 16)
        << "\" font-family=\"monospace\" font-size=\"12\">min=" << fmt3(vmin)
        << " max=" << fmt3(vmax) << "</text>\n</svg>\n";
}

void emit_energy_trace(const std::vector<double>& energies, double e_inf,
                       const std::string& csv_path, const std::string& svg_path) {
    const TracePoints pts = trace_points(energies, e_inf);
    std::ofstream csv(csv_path);
    if (!csv) throw ConfigError("cannot open " + csv_path + " for writing");
    csv << "step,log10_energy_gap\n";
    for (std::size_t i = 0; i < pts.xs.size(); ++i) {
        csv << static_cast<long>(pts.xs[i]) << ',' << fmt(pts.ys[i]) << '\n';
    }
    std::ofstream svg(svg_path);
    if (!svg) throw ConfigError("cannot open " + svg_path + " for writing");
    write_polyline_svg(svg, {pts}, {"#1f77b4"}, {"energy gap"});
}

void emit_energy_trace_overlay(const std::vector<double>& classical,
                               const std::vector<double>& quantum, double e_inf,
                               const std::string& csv_path, const std::string& svg_path) {
    const TracePoints pc = trace_points(classical, e_inf);
    const TracePoints pq = trace_points(quantum, e_inf);
    std::ofstream csv(csv_path);
    if (!csv) throw ConfigError("cannot open " + csv_path + " for writing");
    csv << "step,log10_gap_classical,log10_gap_quantum\n";
    const std::size_t n = std::min(classical.size(), quantum.size());
    for (std::size_t t = 0; t < n; ++t) {
        const double gc = classical[t] - e_inf;
        const double gq = quantum[t] - e_inf;
        if (gc <= 1e-14 || gq <= 1e-14) continue;
        csv << t << ',' << fmt(std::log10(gc)) << ',' << fmt(std::log10(gq)) << '\n';
    }
    std::ofstream svg(svg_path);
    if (!svg) throw ConfigError("cannot open " + svg_path + " for writing");
    write_polyline_svg(svg, {pc, pq}, {"#1f77b4", "#d62728"}, {"classical", "quantum"});
}

namespace {

void validate_node(const json& value, const json& schema, const std::string& where) {
    if (schema.contains("type")) {
        const std::string type = schema["type"].get<std::string>();
        bool ok = false;
        if (type == "object") ok = value.is_object();
        else if (type == "array") ok = value.is_array();
        else if (type == "string") ok = value.is_string();
        else if (type == "number") ok = value.is_number();
        else if (type == "integer") ok = value.is_number_integer();
        else if (type == "boolean") ok = value.is_boolean();
        else throw ValidationError("schema uses unsupported type '" + type + "' at " + where);
        if (!ok) {
            throw ValidationError("report field " + where + " is not of type " + type);
        }
    }
    if (schema.contains("required")) {
        for (const auto& key : schema["required"]) {
            if (!value.contains(key.get<std::string>())) {
                throw ValidationError("report is missing required field " + where + "/" +
                                      key.get<std::string>());
            }
        }
    }
    if (schema.contains("properties") && value.is_object()) {
        for (const auto& [key, sub] : schema["properties"].items()) {
            if (value.contains(key)) validate_node(value[key], sub, where + "/" + key);
        }
    }
    if (schema.contains("items") && value.is_array()) {
        for (std::size_t i = 0; i < value.size(); ++i) {
            validate_node(value[i], schema["items"], where + "[" + std::to_string(i) + "]");
        }
    }
}

}  // namespace

void validate_report(const json& report, const json& schema) {
    validate_node(report, schema, "");
}

std::string make_run_dir(const std::string& outdir, const std::string& label) {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    localtime_r(&now, &tm);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y%m%d-%H%M%S", &tm);
    std::string dir = outdir + "/" + stamp + "_" + label;
    for (int k = 2; std::filesystem::exists(dir); ++k) {
        dir = outdir + "/" + stamp + "_" + label + "_" + std::to_string(k);
    }
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace specq
