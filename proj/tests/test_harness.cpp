#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "specq/harness.hpp"

using namespace specq;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string tmp_path(const std::string& name) {
    return std::filesystem::temp_directory_path().string() + "/" + name;
}

ExperimentConfig small_elliptic() {
    ExperimentConfig c;
    c.kind = FilterKind::Elliptic;
    c.d = 1;
    c.n = 3;
    c.A = {{1.0}};
    c.source = "cos2pix";
    return c;
}

ExperimentConfig small_diffusion() {
    ExperimentConfig c;
    c.kind = FilterKind::Diffusion;
    c.d = 1;
    c.n = 3;
    c.A = {{1.0}};
    c.dt = 0.02;
    c.steps = 8;
    c.source = "cos2pix";
    c.u0 = "sin2pix";
    return c;
}

json load_schema() {
    const std::string path = std::string(SPECQ_SOURCE_DIR) + "/docs/error_report.schema.json";
    std::ifstream in(path);
    REQUIRE(in.good());
    return json::parse(in);
}

}  // namespace

TEST_SUITE("harness") {
    TEST_CASE("config json round trip") {
        ExperimentConfig c = small_diffusion();
        c.seed = 42;
        c.path = EncodingPath::Arithmetic;
        c.t_bits = 16;
        const json j = c.to_json();
        const ExperimentConfig back = ExperimentConfig::from_json(j);
        CHECK(back.kind == c.kind);
        CHECK(back.d == c.d);
        CHECK(back.n == c.n);
        CHECK(back.dt == c.dt);
        CHECK(back.steps == c.steps);
        CHECK(back.u0 == c.u0);
        CHECK(back.path == c.path);
        CHECK(back.t_bits == c.t_bits);
        CHECK(back.seed == c.seed);
    }

    TEST_CASE("config validation") {
        json j = {{"kind", "elliptic"}, {"d", 2}, {"n", 3}, {"source", "cos2pix_sinm4piy"}};
        CHECK_THROWS_AS(ExperimentConfig::from_json(j), ConfigError);  // A missing
        j["A"] = {{1.0, 0.0}, {0.0, 1.0}};
        CHECK_NOTHROW(ExperimentConfig::from_json(j));
        j["source"] = "unknown_source";
        CHECK_THROWS_AS(ExperimentConfig::from_json(j), ConfigError);
        j["source"] = "constant";  // not zero-mean, rejected for elliptic
        CHECK_THROWS_AS(ExperimentConfig::from_json(j), ConfigError);

        json h = {{"kind", "helmholtz"}, {"d", 1}, {"n", 3}, {"source", "cos2pix"}};
        CHECK_THROWS_AS(ExperimentConfig::from_json(h), ConfigError);  // lambda missing
        h["lambda"] = 1.5;
        CHECK_NOTHROW(ExperimentConfig::from_json(h));
    }

    TEST_CASE("run_experiment fills the report") {
        const ErrorReport report = run_experiment(small_elliptic());
        CHECK(report.numerical_error <= 1e-12);
        CHECK(report.quantum_error <= 1e-12);
        CHECK(report.success_prob > 0.0);
        CHECK(report.success_prob <= 1.0 + 1e-12);
        CHECK(report.cond_A == doctest::Approx(1.0));
        CHECK(report.cond_filter > 1.0);
        CHECK(report.wall_time >= 0.0);
        validate_report(report.to_json(), load_schema());
    }

    TEST_CASE("diffusion reports carry energies and validate") {
        const ErrorReport report = run_experiment(small_diffusion());
        CHECK(report.energies_classical.size() == 9);
        CHECK(report.energies_quantum.size() == 9);
        for (std::size_t t = 0; t + 1 < report.energies_classical.size(); ++t) {
            CHECK(report.energies_classical[t + 1] <= report.energies_classical[t] + 1e-10);
        }
        validate_report(report.to_json(), load_schema());
    }

    TEST_CASE("degenerate source surfaces as a config error") {
        ExperimentConfig c = small_elliptic();
        c.source = "zero";
        CHECK_THROWS_AS(run_experiment(c), ConfigError);
    }

    TEST_CASE("schema validation catches missing fields") {
        const json schema = load_schema();
        json report = run_experiment(small_elliptic()).to_json();
        report.erase("numerical_error");
        CHECK_THROWS_AS(validate_report(report, schema), ValidationError);
        json report2 = run_experiment(small_elliptic()).to_json();
        report2["success_prob"] = "high";
        CHECK_THROWS_AS(validate_report(report2, schema), ValidationError);
    }

    TEST_CASE("identical configs produce byte-identical CSV outputs") {
        const ExperimentOutputs a = run_experiment_full(small_diffusion());
        const ExperimentOutputs b = run_experiment_full(small_diffusion());

        const std::string csv_a = tmp_path("specq_trace_a.csv");
        const std::string csv_b = tmp_path("specq_trace_b.csv");
        const std::string svg = tmp_path("specq_trace.svg");
        emit_energy_trace(a.report.energies_classical, a.energy_steady, csv_a, svg);
        emit_energy_trace(b.report.energies_classical, b.energy_steady, csv_b, svg);
        CHECK(slurp(csv_a) == slurp(csv_b));
        std::filesystem::remove(csv_a);
        std::filesystem::remove(csv_b);
        std::filesystem::remove(svg);

        CHECK(a.report.numerical_error == b.report.numerical_error);
        CHECK(a.report.quantum_error == b.report.quantum_error);
        CHECK(a.report.success_prob == b.report.success_prob);
    }

    TEST_CASE("table specs") {
        CHECK(table_spec("T1").rows.size() == 6);
        CHECK(table_spec("T2").rows.size() == 6);
        CHECK(table_spec("T3").rows.size() == 5);
        CHECK(table_spec("T4").rows.size() == 6);
        CHECK(table_spec("T5").rows.size() == 6);
        CHECK_THROWS_AS(table_spec("T9"), UsageError);
    }

    TEST_CASE("suite runner mechanics at reduced size") {
        // Shrink the grid so the suite runs in milliseconds; row failures stay
        // isolated and the renders stay well-formed.
        const SuiteResult suite =
            run_suite("T1", [](ExperimentConfig& c) { c.n = 2; });
        CHECK(suite.rows.size() == 6);
        for (const auto& rr : suite.rows) {
            CHECK(rr.error.empty());
            REQUIRE(rr.report.has_value());
            CHECK(rr.report->numerical_error >= 0.0);
        }
        const std::string csv = suite_csv(suite);
        CHECK(csv.rfind("row,label,cond_published,cond,numerical_error,quantum_error,success_prob,"
                        "status\n", 0) == 0);
        CHECK(suite_text(suite).find("I_2") != std::string::npos);

        const SuiteResult again =
            run_suite("T1", [](ExperimentConfig& c) { c.n = 2; });
        CHECK(suite_csv(again) == csv);
    }

    TEST_CASE("heatmap contract") {
        const GridSpec g(2, 3);
        const Field f = make_field(g, "cos2pix_sinm4piy");
        const std::string path = tmp_path("specq_heatmap.svg");
        emit_heatmap(f, path);
        const std::string svg = slurp(path);
        CHECK(svg.find("min=") != std::string::npos);
        CHECK(svg.find("<rect") != std::string::npos);
        std::filesystem::remove(path);

        const GridSpec g3(3, 2);
        const Field f3 = make_field(g3, "cos2pix_sinm4piy_cos2piz");
        CHECK_THROWS_AS(emit_heatmap(f3, path), UsageError);
        CHECK_NOTHROW(emit_heatmap(f3, path, 0));
        std::filesystem::remove(path);
        CHECK_THROWS_AS(emit_heatmap(Field(GridSpec(1, 3)), path), UsageError);
    }

    TEST_CASE("energy trace emission") {
        const std::string csv = tmp_path("specq_energy.csv");
        const std::string svg = tmp_path("specq_energy.svg");

        // Constant trajectory: everything is dropped, the plot carries a notice.
        emit_energy_trace({2.0, 2.0, 2.0}, 2.0, csv, svg);
        CHECK(slurp(csv) == "step,log10_energy_gap\n");
        CHECK(slurp(svg).find("nothing to plot") != std::string::npos);

        emit_energy_trace({2.0, 1.0, 0.5, 0.25}, 0.0, csv, svg);
        const std::string body = slurp(csv);
        CHECK(body.find("0,") != std::string::npos);
        CHECK(slurp(svg).find("polyline") != std::string::npos);

        emit_energy_trace_overlay({2.0, 1.0, 0.5}, {2.0, 1.0, 0.5}, 0.0, csv, svg);
        CHECK(slurp(csv).rfind("step,log10_gap_classical,log10_gap_quantum\n", 0) == 0);

        std::filesystem::remove(csv);
        std::filesystem::remove(svg);
    }

    TEST_CASE("run directories are created") {
        const std::string base = tmp_path("specq_runs");
        const std::string dir = make_run_dir(base, "check");
        CHECK(std::filesystem::exists(dir));
        std::filesystem::remove_all(base);
    }
}
