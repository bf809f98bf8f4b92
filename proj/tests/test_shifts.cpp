// test_shifts.cpp — level shifts by the spectral and time-domain routes, Lamb shift

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "resrelax/shifts.hpp"
#include "test_util.hpp"

using namespace resrelax;
using resrelax::testing::error_code_of;
using resrelax::testing::rel_diff;

namespace {

constexpr double kPi = std::numbers::pi;

double inertial_lamb(double g, double w0, double wc)
{
    return -g * g * w0 / (16.0 * kPi * kPi) * std::log((wc * wc - w0 * w0) / (w0 * w0));
}

QuadratureConfig with_cutoff(double wc)
{
    QuadratureConfig cfg;
    cfg.omega_cutoff = wc;
    return cfg;
}

} // namespace

TEST_CASE("band-limited system factors approach sin and cos")
{
    for (double u : {0.3, 1.0, 2.5})
        for (double nu : {0.5, 1.0, -1.0}) {
            CAPTURE(u);
            CAPTURE(nu);
            double prev_s = std::abs(band_limited_sine(u, nu, 50.0) - std::sin(nu * u));
            double prev_c = std::abs(band_limited_cosine(u, nu, 50.0) - std::cos(nu * u));
            CHECK(prev_s < 0.05);
            CHECK(prev_c < 0.05);
            const double s = std::abs(band_limited_sine(u, nu, 2000.0) - std::sin(nu * u));
            const double c = std::abs(band_limited_cosine(u, nu, 2000.0) - std::cos(nu * u));
            CHECK(s < 2e-3);
            CHECK(c < 2e-3);
        }
    // Finite at the origin.
    CHECK(std::isfinite(band_limited_sine(0.0, 1.0, 100.0)));
    CHECK(std::isfinite(band_limited_cosine(0.0, 1.0, 100.0)));
    CHECK(std::isfinite(band_limited_cosine(1e-12, 1.0, 100.0)));
    CHECK(band_limited_sine(0.7, 0.0, 100.0) == 0.0);
}

TEST_CASE("zero coupling gives zero shifts")
{
    const System sys = validate_system(two_level_spec(1.0, 0.0));
    const ReservoirKernel k = ReservoirKernel::inertial_vacuum();
    const QuadratureConfig cfg = with_cutoff(20.0);
    for (std::size_t a = 0; a < 2; ++a)
        for (Mechanism m : {Mechanism::ReservoirFluctuation, Mechanism::SelfReaction}) {
            CHECK(shift_kk(sys, k, a, m, cfg).value == 0.0);
            CHECK(shift_direct(sys, k, a, m, cfg).value == 0.0);
        }
}

TEST_CASE("constant gamma toy model has a logarithmic Lamb shift")
{
    const QuadratureConfig cfg;
    const double c = 0.3, w0 = 1.0;
    for (double wc : {5.0, 50.0, 500.0}) {
        const IntegralResult r =
            lamb_shift_two_level([c](double) { return IntegralResult{c, 0.0}; }, w0, wc, cfg);
        CAPTURE(wc);
        CHECK(rel_diff(r.value, c / (2.0 * kPi) * std::log((wc + w0) / (wc - w0))) < 1e-9);
    }
    const IntegralResult zero = lamb_shift_two_level([](double) { return IntegralResult{}; }, w0, 10.0, cfg);
    CHECK(zero.value == 0.0);
}

TEST_CASE("inertial Lamb shift matches the closed logarithm")
{
    const ReservoirKernel k = ReservoirKernel::inertial_vacuum();
    const double w0 = 1.0, g = 1.0;
    double prev_ratio = 0.0;
    for (double wc : {50.0, 100.0, 200.0}) {
        const IntegralResult r = lamb_shift_two_level(k, g, w0, with_cutoff(wc));
        const double exact = inertial_lamb(g, w0, wc);
        CAPTURE(wc);
        CHECK(rel_diff(r.value, exact) < 1e-6);
        CHECK(r.value < 0.0);
        // Leading-log form within 15%.
        CHECK(rel_diff(r.value, -g * g * w0 / (8.0 * kPi * kPi) * std::log(wc / w0)) < 0.15);
        const double ratio = r.value / std::log(wc / w0);
        if (prev_ratio != 0.0)
            CHECK(rel_diff(ratio, prev_ratio) < 0.01);
        prev_ratio = ratio;
    }
}

TEST_CASE("spectral route: two-level sr shifts are equal and the rf difference is the Lamb shift")
{
    const double w0 = 1.0, wc = 60.0;
    const System sys = validate_system(two_level_spec(w0, 1.0));
    const std::size_t plus = sys.index_of("+"), minus = sys.index_of("-");
    for (const ReservoirKernel& k :
         {ReservoirKernel::inertial_vacuum(), ReservoirKernel::thermal_ohmic(0.1, 10.0, 1.0)}) {
        const QuadratureConfig cfg = with_cutoff(wc);
        const GammaCache cache(k, 1.0, cfg);
        const IntegralResult sr_p = shift_kk(sys, cache, plus, Mechanism::SelfReaction);
        const IntegralResult sr_m = shift_kk(sys, cache, minus, Mechanism::SelfReaction);
        CHECK(std::abs(sr_p.value - sr_m.value) <= 1e-10 * std::max(1.0, std::abs(sr_p.value)));
        const double rf = shift_kk(sys, cache, plus, Mechanism::ReservoirFluctuation).value -
                          shift_kk(sys, cache, minus, Mechanism::ReservoirFluctuation).value;
        const IntegralResult lamb = lamb_shift_two_level(k, 1.0, w0, cfg);
        CHECK(std::abs(rf - lamb.value) <= 1e-8 * std::max(1.0, std::abs(lamb.value)));
    }
}

TEST_CASE("cutoff override reuses the cached gammas")
{
    const System sys = validate_system(two_level_spec(1.0, 1.0));
    const ReservoirKernel k = ReservoirKernel::inertial_vacuum();
    const GammaCache cache(k, 1.0, with_cutoff(40.0));
    const IntegralResult at80 = shift_kk(sys, cache, 0, Mechanism::ReservoirFluctuation, 80.0);
    const IntegralResult fresh = shift_kk(sys, k, 0, Mechanism::ReservoirFluctuation, with_cutoff(80.0));
    CHECK(at80.value == doctest::Approx(fresh.value).epsilon(1e-10));
}

TEST_CASE("time-domain route agrees with the spectral route")
{
    const double wc = 30.0;
    const QuadratureConfig cfg = with_cutoff(wc);
    const System sys = validate_system(two_level_spec(1.0, 1.0));
    for (const ReservoirKernel& k :
         {ReservoirKernel::inertial_vacuum(), ReservoirKernel::thermal_ohmic(0.1, 10.0, 1.0)}) {
        for (std::size_t a = 0; a < 2; ++a)
            for (Mechanism m : {Mechanism::ReservoirFluctuation, Mechanism::SelfReaction}) {
                const IntegralResult kk = shift_kk(sys, k, a, m, cfg);
                const DirectShift direct = shift_direct_complex(sys, k, a, m, cfg);
                CAPTURE(a);
                CAPTURE(to_string(m));
                CHECK(std::abs(kk.value - direct.real.value) <= kk.error + direct.real.error + 1e-9);
                CHECK(std::abs(direct.imag) < 1e-12);
            }
    }
}

TEST_CASE("thermal shift converges logarithmically with the cutoff")
{
    const System sys = validate_system(two_level_spec(1.0, 1.0));
    const ReservoirKernel k = ReservoirKernel::thermal_ohmic(0.1, 10.0, 1.0);
    // J(w) decays as e^{-w/wJ}, so the Lamb shift saturates well beyond wJ.
    const double d100 = lamb_shift_two_level(k, 1.0, 1.0, with_cutoff(100.0)).value;
    const double d200 = lamb_shift_two_level(k, 1.0, 1.0, with_cutoff(200.0)).value;
    const double d400 = lamb_shift_two_level(k, 1.0, 1.0, with_cutoff(400.0)).value;
    CHECK(std::abs(d400 - d200) < std::abs(d200 - d100));
    CHECK(std::abs(d400 - d200) < 1e-4 * std::abs(d400));
}

TEST_CASE("level_shift assembles both mechanisms and cutoff sensitivity")
{
    const System sys = validate_system(two_level_spec(1.0, 1.0));
    const ReservoirKernel k = ReservoirKernel::inertial_vacuum();
    const QuadratureConfig cfg = with_cutoff(50.0);
    const ShiftResult r = level_shift(sys, k, 0, ShiftMethod::KramersKronig, cfg, true);
    CHECK(r.omega_c == 50.0);
    CHECK(r.delta_e_rf == doctest::Approx(shift_kk(sys, k, 0, Mechanism::ReservoirFluctuation, cfg).value));
    CHECK(r.delta_e_sr == doctest::Approx(shift_kk(sys, k, 0, Mechanism::SelfReaction, cfg).value));
    REQUIRE(r.err_cutoff.has_value());
    CHECK(*r.err_cutoff > 0.0);
    CHECK(r.err_quad() == doctest::Approx(r.err_rf + r.err_sr));
    CHECK_FALSE(level_shift(sys, k, 0, ShiftMethod::KramersKronig, cfg).err_cutoff.has_value());
}

TEST_CASE("cutoff below the transition frequencies is rejected")
{
    const System sys = validate_system(two_level_spec(2.0, 1.0));
    const ReservoirKernel k = ReservoirKernel::inertial_vacuum();
    CHECK(error_code_of([&] { shift_kk(sys, k, 0, Mechanism::SelfReaction, with_cutoff(1.5)); }) ==
          ErrorCode::CutoffTooSmall);
    CHECK(error_code_of([&] { shift_direct(sys, k, 0, Mechanism::SelfReaction, with_cutoff(2.0)); }) ==
          ErrorCode::CutoffTooSmall);
    CHECK(error_code_of([&] { lamb_shift_two_level(k, 1.0, 2.0, with_cutoff(1.0)); }) == ErrorCode::CutoffTooSmall);
}
