#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numbers>

#include "specq/spectral.hpp"
#include "test_support.hpp"

using namespace specq;
namespace st = specq::testing;

namespace {
constexpr double kPi = std::numbers::pi;
const double kFourPi2 = 4.0 * kPi * kPi;

CoefficientMatrix random_spd(int d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    Eigen::MatrixXd B(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) B(i, j) = uni(rng);
    }
    return CoefficientMatrix(Eigen::MatrixXd(B.transpose() * B + 0.5 * Eigen::MatrixXd::Identity(d, d)));
}
}  // namespace

TEST_SUITE("spectral") {
    TEST_CASE("derivative diagonal under both conventions") {
        const auto unsigned1 = derivative_diagonal(1, FrequencyConvention::Unsigned);
        CHECK(std::abs(unsigned1[0]) == 0.0);
        CHECK(std::abs(unsigned1[1] - cplx{0.0, 2.0 * kPi}) <= 1e-15);

        // Signed oracle: k_j = j - N for j >= N/2.
        const auto signed1 = derivative_diagonal(1, FrequencyConvention::Signed);
        CHECK(std::abs(signed1[1] - cplx{0.0, -2.0 * kPi}) <= 1e-15);

        const auto signed2 = derivative_diagonal(2, FrequencyConvention::Signed);
        const cplx expect[4] = {{0, 0}, {0, 2 * kPi}, {0, -4 * kPi}, {0, -2 * kPi}};
        for (int j = 0; j < 4; ++j) CHECK(std::abs(signed2[j] - expect[j]) <= 1e-15);
    }

    TEST_CASE("coefficient matrix validation and conditioning") {
        CHECK(CoefficientMatrix::identity(2).condition_number() == doctest::Approx(1.0));
        CHECK(CoefficientMatrix::diagonal({10.0, 1.0}).condition_number() ==
              doctest::Approx(10.0).epsilon(1e-12));
        CHECK_THROWS_AS(CoefficientMatrix::from_rows({{1.0, 2.0}, {0.0, 1.0}}), ValidationError);
        CHECK_THROWS_AS(CoefficientMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}}), ValidationError);
        CHECK_THROWS_AS(CoefficientMatrix::from_rows({{0.0}}), ValidationError);
    }

    TEST_CASE("elliptic filter entries") {
        // d=1, N=2, Signed: dense oracle gives diag(1, -1/(4 pi^2)).
        const auto filter =
            filter_elliptic(CoefficientMatrix::identity(1), GridSpec(1, 1));
        REQUIRE(filter.diag.size() == 2);
        CHECK(filter.diag[0].real() == doctest::Approx(1.0));
        CHECK(filter.diag[1].real() == doctest::Approx(-1.0 / kFourPi2).epsilon(1e-14));
        CHECK(filter.diag[1].real() == doctest::Approx(-0.0253303).epsilon(1e-5));

        const auto f2 = filter_elliptic(CoefficientMatrix::identity(2), GridSpec(2, 3));
        CHECK(f2.diag[0].real() == doctest::Approx(1.0));  // E_11 regularization
    }

    TEST_CASE("elliptic single-mode solve has the analytic amplitude") {
        const GridSpec g(2, 6);
        const auto filter = filter_elliptic(CoefficientMatrix::diagonal({10.0, 1.0}), g);
        const Field f = make_field(g, "cos2pix_sinm4piy");
        const Field u = solve_classical(filter, f);
        Field expect(g);
        for (std::size_t i = 0; i < f.values.size(); ++i) {
            expect.values[i] = -f.values[i] / (kFourPi2 * (10.0 + 4.0));
        }
        CHECK(relative_error(u, expect) <= 1e-13);
    }

    TEST_CASE("helmholtz filter entries and resonance guard") {
        const auto filter = filter_helmholtz(kPi, GridSpec(1, 1));
        CHECK(filter.diag[0].real() == doctest::Approx(1.0 / (kPi * kPi)).epsilon(1e-14));
        CHECK(filter.diag[1].real() ==
              doctest::Approx(-1.0 / (3.0 * kPi * kPi)).epsilon(1e-14));
        CHECK(filter.diag[0].real() == doctest::Approx(0.1013212).epsilon(1e-5));
        CHECK(filter.diag[1].real() == doctest::Approx(-0.0337737).epsilon(1e-5));

        // lambda^2 = 4 pi^2 hits the k = 1 eigenvalue.
        CHECK_THROWS_AS(filter_helmholtz(2.0 * kPi, GridSpec(1, 2)), SingularFilterError);
        CHECK_THROWS_AS(filter_helmholtz(-1.0, GridSpec(1, 2)), ValidationError);

        // Zero-frequency entry is 1/lambda^2.
        const auto f2 = filter_helmholtz(0.7, GridSpec(2, 2));
        CHECK(f2.diag[0].real() == doctest::Approx(1.0 / 0.49).epsilon(1e-13));
    }

    TEST_CASE("diffusion filter entries, positivity, condition number") {
        const double dt = 1e-3;
        const auto f1 = filter_diffusion(CoefficientMatrix::identity(1), dt, GridSpec(1, 1));
        CHECK(f1.diag[0].real() == doctest::Approx(1.0));
        CHECK(f1.diag[1].real() == doctest::Approx(1.0 / (1.0 + kFourPi2 * dt)).epsilon(1e-14));
        CHECK(f1.diag[1].real() == doctest::Approx(0.96202).epsilon(1e-5));

        for (int seed = 0; seed < 3; ++seed) {
            const auto f = filter_diffusion(random_spd(2, 40 + seed), 0.01, GridSpec(2, 3));
            for (const cplx& v : f.diag) {
                CHECK(v.real() > 0.0);
                CHECK(v.real() <= 1.0);
            }
        }

        const auto f64 = filter_diffusion(CoefficientMatrix::identity(2), dt, GridSpec(2, 6));
        CHECK(condition_number(f64) == doctest::Approx(81.85).epsilon(0.5 / 81.85));
    }

    TEST_CASE("poisson solve on a single mode") {
        const GridSpec g(1, 2);
        const auto filter = filter_elliptic(CoefficientMatrix::identity(1), g);
        const Field f = make_field(g, "cos2pix");
        const Field u = solve_classical(filter, f);
        Field expect(g);
        for (std::size_t i = 0; i < g.size(); ++i) expect.values[i] = -f.values[i] / kFourPi2;
        CHECK(relative_error(u, expect) <= 1e-13);

        const Field zero = make_field(g, "zero");
        CHECK(solve_classical(filter, zero).norm() == 0.0);
    }

    TEST_CASE("solve rejects mismatched grids and non-zero-mean elliptic sources") {
        const auto filter = filter_elliptic(CoefficientMatrix::identity(1), GridSpec(1, 2));
        CHECK_THROWS_AS(solve_classical(filter, Field(GridSpec(1, 3))), ShapeError);
        Field biased(GridSpec(1, 2));
        for (auto& v : biased.values) v = 1.0;
        CHECK_THROWS_AS(solve_classical(filter, biased), ValidationError);
    }

    TEST_CASE("band-limited sources are solved exactly") {
        const GridSpec g(2, 4);
        const CoefficientMatrix A = CoefficientMatrix::from_rows({{2.0, 0.5}, {0.5, 1.0}});
        const auto filter = filter_elliptic(A, g);
        const int N = g.points_per_dim();
        Field f(g);
        Field expect(g);
        // modes m1 = (1,0), m2 = (2,3); q(m) = 4 pi^2 m.Am
        const double q1 = kFourPi2 * 2.0;
        const double q2 = kFourPi2 * (2.0 * 4 + 2.0 * 0.5 * 6 + 1.0 * 9);
        for (int j1 = 0; j1 < N; ++j1) {
            for (int j2 = 0; j2 < N; ++j2) {
                const double x = static_cast<double>(j1) / N;
                const double y = static_cast<double>(j2) / N;
                const double c1 = std::cos(2.0 * kPi * x);
                const double s2 = std::sin(2.0 * kPi * (2.0 * x + 3.0 * y));
                const std::size_t flat = flatten_index(std::vector<int>{j1, j2}, g);
                f.values[flat] = c1 + s2;
                expect.values[flat] = -c1 / q1 - s2 / q2;
            }
        }
        CHECK(relative_error(solve_classical(filter, f), expect) <= 1e-12);
        CHECK(relative_error(fft_reference_solve(filter, f), expect) <= 1e-12);
    }

    TEST_CASE("classical and FFT reference paths agree for all kinds and conventions") {
        const GridSpec grids[] = {GridSpec(1, 4), GridSpec(2, 3), GridSpec(3, 2)};
        for (const GridSpec& g : grids) {
            const Field f = st::random_real_zero_mean_field(g, 900 + g.d);
            for (const auto conv : {FrequencyConvention::Signed, FrequencyConvention::Unsigned}) {
                const CoefficientMatrix A = random_spd(g.d, 7 * g.d + g.n);
                const SpectralFilter filters[] = {
                    filter_elliptic(A, g, conv),
                    filter_helmholtz(1.3, g, conv),
                    filter_diffusion(A, 0.01, g, conv),
                };
                for (const auto& filter : filters) {
                    const Field u_dft = solve_classical(filter, f);
                    const Field u_fft = fft_reference_solve(filter, f);
                    CHECK(relative_error(u_dft, u_fft) <= 1e-12);
                    if (conv == FrequencyConvention::Signed) {
                        CHECK(u_dft.max_imag() <= 1e-12 * u_dft.norm());
                    }
                }
            }
        }
    }

    TEST_CASE("implicit step: fixed point, one step from rest, modal decay") {
        const GridSpec g(1, 3);
        const CoefficientMatrix A = CoefficientMatrix::identity(1);
        const double dt = 0.01;
        const auto diffusion = filter_diffusion(A, dt, g);
        const auto elliptic = filter_elliptic(A, g);
        const Field f = make_field(g, "cos2pix");

        const Field steady = solve_classical(elliptic, f);
        const Field stepped = step_implicit(diffusion, steady, f, dt);
        CHECK(relative_error(stepped, steady) <= 1e-12);

        // One step from u = 0: u_1 = -dt * G(k) * f for a single-mode f.
        const Field u1 = step_implicit(diffusion, Field(g), f, dt);
        const double gk = 1.0 / (1.0 + dt * kFourPi2);
        Field expect(g);
        for (std::size_t i = 0; i < g.size(); ++i) expect.values[i] = -dt * gk * f.values[i];
        CHECK(relative_error(u1, expect) <= 1e-13);

        // f = 0: a single mode contracts by G(k).
        const Field decayed = step_implicit(diffusion, f, Field(g), dt);
        CHECK(decayed.norm() / f.norm() == doctest::Approx(gk).epsilon(1e-12));
        CHECK(decayed.norm() < f.norm());

        CHECK_THROWS_AS(step_implicit(elliptic, f, f, dt), ValidationError);
        CHECK_THROWS_AS(step_implicit(diffusion, f, f, dt * 2), ValidationError);
    }

    TEST_CASE("diffusion trajectory basics") {
        const GridSpec g(1, 3);
        const CoefficientMatrix A = CoefficientMatrix::from_rows({{1.5}});
        const double dt = 0.05;
        const auto diffusion = filter_diffusion(A, dt, g);
        const auto elliptic = filter_elliptic(A, g);
        const Field f = make_field(g, "cos2pix");
        const Field u0 = make_field(g, "sin2pix");

        const auto traj = run_diffusion(diffusion, u0, f, 1);
        CHECK(traj.states.size() == 2);
        CHECK(traj.energies.size() == traj.states.size());
        CHECK(relative_error(traj.states[1], step_implicit(diffusion, u0, f, dt)) <= 1e-15);

        // Fixed point: starting from the elliptic solution nothing moves.
        const Field steady = solve_classical(elliptic, f);
        const auto fixed = run_diffusion(diffusion, steady, f, 5);
        for (const Field& s : fixed.states) CHECK(relative_error(s, steady) <= 1e-11);
        for (double e : fixed.energies) {
            CHECK(e == doctest::Approx(fixed.energies.front()).epsilon(1e-11));
        }

        // The scheme's stationary limit is the elliptic solution.
        Field u = u0;
        double rel_step = 1.0;
        for (int t = 0; t < 2000 && rel_step > 1e-13; ++t) {
            const Field next = step_implicit(diffusion, u, f, dt);
            rel_step = relative_error(next, u);
            u = next;
        }
        CHECK(rel_step <= 1e-13);
        CHECK(relative_error(u, steady) <= 1e-10);
    }

    TEST_CASE("energy values and dissipation") {
        const GridSpec g(1, 4);
        const CoefficientMatrix A = CoefficientMatrix::identity(1);
        const Field zero(g);
        CHECK(energy(zero, zero, A) == 0.0);

        // E(cos(2 pi x)) with f = 0: integral of (2 pi sin)^2 / 2 = pi^2.
        const Field u = make_field(g, "cos2pix");
        CHECK(energy(u, zero, A) == doctest::Approx(kPi * kPi).epsilon(1e-12));

        const GridSpec g2(2, 3);
        const CoefficientMatrix A2 = CoefficientMatrix::from_rows({{3.0, 1.0}, {1.0, 2.0}});
        const auto diffusion = filter_diffusion(A2, 1e-3, g2);
        const Field f = make_field(g2, "cos2pix_sinm4piy");
        const Field u0 = make_field(g2, "u0_2d");
        const auto traj = run_diffusion(diffusion, u0, f, 30);
        for (std::size_t t = 0; t + 1 < traj.energies.size(); ++t) {
            CHECK(traj.energies[t + 1] <= traj.energies[t] + 1e-10);
        }
    }

    TEST_CASE("relative error definition") {
        const GridSpec g(1, 3);
        Field ref = make_field(g, "cos2pix");
        CHECK(relative_error(ref, ref) == 0.0);

        Field doubled(g);
        for (std::size_t i = 0; i < g.size(); ++i) doubled.values[i] = 2.0 * ref.values[i];
        CHECK(relative_error(doubled, ref) == doctest::Approx(1.0).epsilon(1e-14));

        Field bumped = ref;
        bumped.values[0] += 1e-3;
        CHECK(relative_error(bumped, ref) == doctest::Approx(1e-3 / ref.norm()).epsilon(1e-12));

        CHECK_THROWS_AS(relative_error(ref, Field(g)), DegenerateReferenceError);
    }

    TEST_CASE("filter and energy exports") {
        const auto filter = filter_elliptic(CoefficientMatrix::identity(1), GridSpec(1, 2));
        const std::string dir = std::filesystem::temp_directory_path().string();
        const std::string path = dir + "/specq_filter_test.csv";
        export_filter_csv(filter, path);
        std::ifstream in(path);
        std::string header;
        std::getline(in, header);
        CHECK(header == "k1,re,im,abs_denom");
        std::filesystem::remove(path);
    }
}
