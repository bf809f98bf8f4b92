// test_dynamics.cpp — closed-form and ODE evolution of the mean energy

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "resrelax/dynamics.hpp"
#include "resrelax/rates.hpp"
#include "test_util.hpp"

using namespace resrelax;
using resrelax::testing::error_code_of;
using resrelax::testing::rel_diff;

TEST_CASE("closed form: pure decay, fixed point and limits")
{
    CHECK(evolve_closed_form(1.0, 0.0, 1.0, 0.5, 1.0).mean_energy == doctest::Approx(0.5 * std::exp(-1.0)).epsilon(1e-14));
    CHECK(evolve_closed_form(1.0, 0.0, 1.0, 0.5, 1.0).mean_energy == doctest::Approx(0.18394).epsilon(1e-4));
    CHECK(evolve_closed_form(0.3, 0.1, 2.0, 0.7, 0.0).mean_energy == doctest::Approx(0.7).epsilon(1e-15));
    const double eq = -0.5 * 2.0 * 0.1 / 0.3;
    CHECK(evolve_closed_form(0.3, 0.1, 2.0, 0.7, 1e4).mean_energy == doctest::Approx(eq).epsilon(1e-14));
    CHECK(evolve_closed_form(0.3, 0.1, 2.0, eq, 17.0).mean_energy == doctest::Approx(eq).epsilon(1e-14));
    // Literal form of the solution.
    const double grf = 0.3, gsr = 0.1, w0 = 2.0, h0 = 0.7, tau = 2.5;
    const double literal = -w0 / 2.0 + (w0 / 2.0) * (grf - gsr) / grf + (h0 + (w0 / 2.0) * gsr / grf) * std::exp(-grf * tau);
    CHECK(evolve_closed_form(grf, gsr, w0, h0, tau).mean_energy == doctest::Approx(literal).epsilon(1e-14));
    CHECK(error_code_of([] { evolve_closed_form(0.0, 1.0, 1.0, 0.0, 1.0); }) == ErrorCode::ZeroRelaxationRate);
}

TEST_CASE("ODE path: pure decay example, fixed point and zero-rate drift")
{
    const auto traj = evolve_ode(1.0, 0.0, 1.0, 0.5, 1.0);
    REQUIRE(traj.size() == 101);
    CHECK(traj.front().tau == 0.0);
    CHECK(traj.back().tau == 1.0);
    CHECK(rel_diff(traj.back().mean_energy, 0.5 * std::exp(-1.0)) < 1e-10);

    const double eq = equilibrium_energy(0.4, 0.2, 1.0).energy;
    for (const PopulationState& p : evolve_ode(0.4, 0.2, 1.0, eq, 30.0))
        CHECK(p.mean_energy == doctest::Approx(eq).epsilon(1e-14));

    for (const PopulationState& p : evolve_ode(0.0, 1.0, 1.0, 0.0, 3.0, StepConfig{31, std::nullopt}))
        CHECK(p.mean_energy == doctest::Approx(-p.tau / 2.0).epsilon(1e-12));
}

TEST_CASE("ODE matches the closed form on a 3x3x3 grid and is monotone")
{
    const double w0 = 1.0;
    int points = 0;
    for (double grf : {0.05, 0.5, 2.0})
        for (double frac : {0.0, 0.5, 1.0})
            for (double h0 : {-0.5, 0.0, 0.5}) {
                const double gsr = frac * grf;
                const double tau_end = 5.0 / grf;
                const auto traj = evolve_ode(grf, gsr, w0, h0, tau_end);
                const double cf = evolve_closed_form(grf, gsr, w0, h0, tau_end).mean_energy;
                const double ode = traj.back().mean_energy;
                CAPTURE(grf);
                CAPTURE(gsr);
                CAPTURE(h0);
                CHECK(std::abs(ode - cf) <= 1e-8 * std::abs(cf) + 1e-15);

                int sign = 0;
                bool monotone = true;
                for (std::size_t i = 1; i < traj.size(); ++i) {
                    const double d = traj[i].mean_energy - traj[i - 1].mean_energy;
                    if (std::abs(d) < 1e-15)
                        continue;
                    const int s = d > 0 ? 1 : -1;
                    if (sign != 0 && s != sign)
                        monotone = false;
                    sign = s;
                }
                CHECK(monotone);
                for (const PopulationState& p : traj) {
                    CHECK(p.mean_energy <= w0 / 2.0 + 1e-12);
                    CHECK(p.mean_energy >= -w0 / 2.0 - 1e-12);
                }

                const double eq = equilibrium_energy(grf, gsr, w0).energy;
                if (std::abs(h0 - eq) > 1e-12) {
                    const auto rate = fitted_decay_rate(traj, eq);
                    REQUIRE(rate.has_value());
                    CHECK(rel_diff(*rate, grf) < 1e-6);
                } else {
                    CHECK_FALSE(fitted_decay_rate(traj, eq).has_value());
                }
                ++points;
            }
    CHECK(points == 27);
}

TEST_CASE("step bound")
{
    CHECK(max_stable_step(2.0, 10.0) == doctest::Approx(0.005));
    CHECK(max_stable_step(0.001, 10.0) == doctest::Approx(0.1));
    CHECK(error_code_of([] { evolve_ode(2.0, 0.0, 1.0, 0.5, 10.0, StepConfig{101, 0.01}); }) == ErrorCode::StepTooLarge);
    CHECK_FALSE(error_code_of([] { evolve_ode(2.0, 0.0, 1.0, 0.5, 10.0, StepConfig{101, 0.001}); }));
    const auto fine = evolve_ode(2.0, 0.5, 1.0, 0.5, 10.0, StepConfig{11, 0.001});
    CHECK(fine.size() == 11);
    CHECK(rel_diff(fine.back().mean_energy, evolve_closed_form(2.0, 0.5, 1.0, 0.5, 10.0).mean_energy) < 1e-12);
}

TEST_CASE("equilibrium identities")
{
    CHECK(equilibrium_energy(0.3, 0.3, 2.0).energy == doctest::Approx(-1.0));
    CHECK(equilibrium_energy(0.3, 0.0, 2.0).energy == 0.0);
    CHECK(error_code_of([] { equilibrium_energy(0.0, 0.0, 1.0); }) == ErrorCode::ZeroRelaxationRate);
    for (auto [grf, gsr] : {std::pair{1.0, 0.2}, std::pair{0.7, 0.7}, std::pair{2.0, 0.0}}) {
        const EinsteinCoefficients c = einstein_coefficients(grf, gsr);
        const Equilibrium eq = equilibrium_energy(grf, gsr, 1.3);
        CHECK(std::abs(eq.excitation_fraction - c.a_up / (c.a_up + c.a_down)) < 1e-12);
        CHECK(eq.energy == doctest::Approx(-0.65 + 1.3 * eq.excitation_fraction).epsilon(1e-14));
    }
}

TEST_CASE("thermal bath relaxes to Boltzmann populations")
{
    const QuadratureConfig cfg;
    for (double T : {0.25, 0.5, 1.0, 3.0}) {
        const double w0 = 1.0;
        const ReservoirKernel k = ReservoirKernel::thermal_ohmic(0.1, 10.0, T);
        const double grf = gamma_rf(k, 1.0, w0, cfg).value;
        const double gsr = gamma_sr(k, 1.0, w0, cfg).value;
        CAPTURE(T);
        CHECK(rel_diff(equilibrium_energy(grf, gsr, w0).energy, -(w0 / 2.0) * std::tanh(w0 / (2.0 * T))) < 1e-7);
    }
}
