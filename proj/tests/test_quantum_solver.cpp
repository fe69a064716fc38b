#include <doctest.h>

#include <numbers>

#include "specq/quantum_solver.hpp"
#include "test_support.hpp"

using namespace specq;
namespace st = specq::testing;

namespace {
constexpr double kPi = std::numbers::pi;

// An all-ones diagonal wrapped as a Helmholtz-kind filter (no zero-mean
// requirement), for identity-pipeline checks.
SpectralFilter identity_filter(const GridSpec& g) {
    SpectralFilter f;
    f.grid = g;
    f.kind = FilterKind::Helmholtz;
    f.diag.assign(g.size(), cplx{1.0, 0.0});
    f.cond = 1.0;
    f.min_denom = 1.0;
    f.max_denom = 1.0;
    f.lambda = 1.0;
    return f;
}
}  // namespace

TEST_SUITE("quantum_solver") {
    TEST_CASE("ancilla post-selection") {
        // |0> (x) v with v normalized
        QubitState s = QubitState::zero(2);
        s.amps = {cplx{0.6, 0.0}, cplx{0.8, 0.0}, cplx{0.0, 0.0}, cplx{0.0, 0.0}};
        auto [v, prob] = postselect_ancilla0(s);
        CHECK(prob == doctest::Approx(1.0));
        CHECK(std::abs(v[0] - cplx{0.6, 0.0}) <= 1e-15);

        // (|0> v + |1> w)/sqrt(2)
        const double r = 1.0 / std::sqrt(2.0);
        s.amps = {cplx{r, 0.0}, cplx{0.0, 0.0}, cplx{0.0, 0.0}, cplx{r, 0.0}};
        auto [v2, prob2] = postselect_ancilla0(s);
        CHECK(prob2 == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(std::abs(v2[0] - cplx{r, 0.0}) <= 1e-15);

        // |1> (x) w: empty branch
        s.amps = {cplx{0.0, 0.0}, cplx{0.0, 0.0}, cplx{1.0, 0.0}, cplx{0.0, 0.0}};
        CHECK_THROWS_AS(postselect_ancilla0(s), PostSelectionFailure);
    }

    TEST_CASE("poisson on a single mode matches the analytic solution") {
        const GridSpec g(1, 2);
        const auto filter = filter_elliptic(CoefficientMatrix::identity(1), g);
        const Field f = make_field(g, "cos2pix");
        const auto result = solve_quantum(filter, f, EncodingPath::IdealDilation);
        Field expect(g);
        for (std::size_t i = 0; i < g.size(); ++i) {
            expect.values[i] = -f.values[i] / (4.0 * kPi * kPi);
        }
        CHECK(relative_error(result.u_quant, expect) <= 1e-12);
    }

    TEST_CASE("identity filter passes the field through") {
        const GridSpec g(2, 2);
        const Field f = make_field(g, "cos2pix_sinm4piy");
        const SpectralFilter id = identity_filter(g);
        const auto result = solve_quantum(id, f, EncodingPath::IdealDilation);
        CHECK(relative_error(result.u_quant, f) <= 1e-12);
        CHECK(result.success_prob == doctest::Approx(1.0).epsilon(1e-12));

        // With alpha forced to 2, success probability drops to 1/alpha^2 but
        // the rescaled solution is unchanged.
        const BlockEncoding enc = ideal_dilation(id, 2.0);
        const auto damped = solve_quantum_with_encoding(id, enc, f);
        CHECK(damped.success_prob == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(relative_error(damped.u_quant, f) <= 1e-12);
    }

    TEST_CASE("quantum and classical solvers agree across kinds and grids") {
        std::mt19937_64 rng(2026);
        const GridSpec grids[] = {GridSpec(1, 4), GridSpec(2, 2), GridSpec(3, 2)};
        for (const GridSpec& g : grids) {
            const Field f = st::random_real_zero_mean_field(g, rng());
            Eigen::MatrixXd B = Eigen::MatrixXd::Random(g.d, g.d);
            const CoefficientMatrix A(
                Eigen::MatrixXd(B.transpose() * B + Eigen::MatrixXd::Identity(g.d, g.d)));
            const SpectralFilter filters[] = {
                filter_elliptic(A, g),
                filter_helmholtz(1.7, g),
                filter_diffusion(A, 0.02, g),
            };
            for (const auto& filter : filters) {
                const Field u_classical = solve_classical(filter, f);
                const auto qres = solve_quantum(filter, f, EncodingPath::IdealDilation);
                CHECK(relative_error(qres.u_quant, u_classical) <= 1e-12);
            }
        }
    }

    TEST_CASE("success probability equals the filtered norm ratio") {
        const GridSpec g(2, 2);
        const Field f = st::random_real_zero_mean_field(g, 555);
        const auto filter = filter_helmholtz(2.2, g);
        const auto qres = solve_quantum(filter, f, EncodingPath::IdealDilation);

        const auto fhat = fft_nd(f.values, g, false);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < fhat.size(); ++i) {
            num += std::norm(filter.diag[i] / qres.alpha * fhat[i]);
            den += std::norm(fhat[i]);
        }
        CHECK(qres.success_prob == doctest::Approx(num / den).epsilon(1e-12));
    }

    TEST_CASE("solver validates inputs") {
        const GridSpec g(1, 2);
        const auto filter = filter_elliptic(CoefficientMatrix::identity(1), g);
        CHECK_THROWS_AS(solve_quantum(filter, make_field(g, "zero"), EncodingPath::IdealDilation),
                        DegenerateInputError);
        Field biased(g);
        for (auto& v : biased.values) v = 1.0;
        CHECK_THROWS_AS(solve_quantum(filter, biased, EncodingPath::IdealDilation),
                        ValidationError);
        CHECK_THROWS_AS(solve_quantum(filter, Field(GridSpec(1, 3)), EncodingPath::IdealDilation),
                        ShapeError);
    }

    TEST_CASE("quantum diffusion follows the classical trajectory") {
        const GridSpec g(2, 2);
        const CoefficientMatrix A = CoefficientMatrix::from_rows({{2.0, 0.5}, {0.5, 1.0}});
        const double dt = 0.01;
        const auto filter = filter_diffusion(A, dt, g);
        const Field f = make_field(g, "cos2pix_sinm4piy");
        const Field u0 = make_field(g, "u0_2d");

        const int steps = 20;
        const auto classical = run_diffusion(filter, u0, f, steps);
        const auto quantum = run_diffusion_quantum(filter, u0, f, steps,
                                                   EncodingPath::IdealDilation);
        REQUIRE(quantum.trajectory.states.size() == classical.states.size());
        REQUIRE(quantum.success_probs.size() == static_cast<std::size_t>(steps));
        for (std::size_t t = 0; t < classical.states.size(); ++t) {
            CHECK(relative_error(quantum.trajectory.states[t], classical.states[t]) <= 1e-11);
            CHECK(std::abs(quantum.trajectory.energies[t] - classical.energies[t]) <= 1e-9);
        }

        // One step of the driver is one filtered solve of u0 - dt*f.
        const auto one = run_diffusion_quantum(filter, u0, f, 1, EncodingPath::IdealDilation);
        CHECK(relative_error(one.trajectory.states[1], step_implicit(filter, u0, f, dt)) <= 1e-12);
    }

    TEST_CASE("quantum diffusion holds the steady state fixed") {
        const GridSpec g(1, 3);
        const CoefficientMatrix A = CoefficientMatrix::from_rows({{1.0}});
        const double dt = 0.05;
        const auto filter = filter_diffusion(A, dt, g);
        const Field f = make_field(g, "cos2pix");
        const Field steady = solve_classical(filter_elliptic(A, g), f);

        const auto run = run_diffusion_quantum(filter, steady, f, 5, EncodingPath::IdealDilation);
        for (const Field& s : run.trajectory.states) {
            CHECK(relative_error(s, steady) <= 1e-11);
        }
        for (double e : run.trajectory.energies) {
            CHECK(e == doctest::Approx(run.trajectory.energies.front()).epsilon(1e-11));
        }
    }

    TEST_CASE("resource report covers the pipeline") {
        const GridSpec g(2, 2);
        const auto filter = filter_helmholtz(1.0, g);
        const auto qres = solve_quantum(filter, make_field(g, "cos2pix_sinm4piy"),
                                        EncodingPath::IdealDilation);
        // Two QFT registers, forward and inverse, plus the encoding block.
        CHECK(qres.resources.gate_counts.at("H") == 2 * 2 * 2);
        CHECK(qres.resources.gate_counts.at("UNITARY") == 1);
        CHECK(qres.resources.ancilla_count == 1);
        CHECK(qres.resources.depth <= qres.resources.total_gates);
    }
}
