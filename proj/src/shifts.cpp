// shifts.cpp — Energy shifts by the spectral (Kramers-Kronig) and time-domain routes

#include "resrelax/shifts.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <gsl/gsl_sf_expint.h>

#include "resrelax/error.hpp"

namespace resrelax {

namespace {

constexpr double kPi = std::numbers::pi;

void check_cutoff(const System& system, std::size_t a, double omega_c)
{
    double wmax = 0.0;
    for (std::size_t b : system.partners(a))
        wmax = std::max(wmax, std::abs(system.omega(a, b)));
    if (!(omega_c > wmax))
        throw Error(ErrorCode::CutoffTooSmall, "omega_cutoff = " + std::to_string(omega_c) +
                                                   " must exceed the largest transition frequency " +
                                                   std::to_string(wmax) + "; raise omega_cutoff in [quadrature]");
}

// Ci(|x2| u) - Ci(|x1| u), stable as u -> 0.
double ci_difference(double x2, double x1, double u)
{
    const double a = std::abs(x2) * u;
    const double b = std::abs(x1) * u;
    if (a == b)
        return 0.0;
    if (a < 1e-3 && b < 1e-3) {
        // Ci(x) = gamma + ln x - x^2/4 + x^4/96 - ...
        return std::log(std::abs(x2) / std::abs(x1)) - (a * a - b * b) / 4.0 + (a * a * a * a - b * b * b * b) / 96.0;
    }
    return gsl_sf_Ci(a) - gsl_sf_Ci(b);
}

// PV int_0^wc cos(w u) / (w - s) dw and PV int_0^wc sin(w u) / (w - s) dw.
struct PoleMoments {
    double cos_moment;
    double sin_moment;
};

PoleMoments pole_moments(double s, double u, double omega_c)
{
    const double x1 = -s;
    const double x2 = omega_c - s;
    const double dci = ci_difference(x2, x1, u);
    const double dsi = gsl_sf_Si(x2 * u) - gsl_sf_Si(x1 * u);
    const double c = std::cos(s * u);
    const double sn = std::sin(s * u);
    return {c * dci - sn * dsi, c * dsi + sn * dci};
}

} // namespace

double band_limited_sine(double u, double nu, double omega_c)
{
    if (nu == 0.0)
        return 0.0;
    const double sign = nu < 0.0 ? -1.0 : 1.0;
    const double n = std::abs(nu);
    if (u == 0.0)
        return sign * std::log((omega_c + n) / (omega_c - n)) / kPi;
    // 1/(nu - w) + 1/(nu + w) = -1/(w - nu) + 1/(w + nu)
    const double value = -pole_moments(n, u, omega_c).cos_moment + pole_moments(-n, u, omega_c).cos_moment;
    return sign * value / kPi;
}

double band_limited_cosine(double u, double nu, double omega_c)
{
    if (u == 0.0)
        return 0.0;
    const double n = std::abs(nu);
    if (n == 0.0)
        return 2.0 * gsl_sf_Si(omega_c * u) / kPi;
    return (pole_moments(n, u, omega_c).sin_moment + pole_moments(-n, u, omega_c).sin_moment) / kPi;
}

IntegralResult shift_kk(const System& system, const GammaCache& gammas, std::size_t a, Mechanism m,
                        std::optional<double> omega_cutoff)
{
    const QuadratureConfig& cfg = gammas.config();
    const double wc = omega_cutoff.value_or(cfg.omega_cutoff);
    check_cutoff(system, a, wc);
    IntegralResult total;
    for (std::size_t b : system.partners(a)) {
        const double weight = transition_elements(system, a, b).channel_weight();
        if (weight == 0.0)
            continue;
        const double pole = system.omega(a, b);
        // Gamma_ab(w') / w' with the w' factor cancelled.
        const std::function<IntegralResult(double)> h = [&](double w) {
            return gammas(m, w).scaled(-2.0 * weight);
        };
        const double breaks[] = {-std::abs(pole), 0.0, std::abs(pole)};
        total += pv_integral(h, pole, -wc, wc, cfg, breaks);
    }
    return total.scaled(1.0 / (2.0 * kPi));
}

IntegralResult shift_kk(const System& system, const ReservoirKernel& kernel, std::size_t a, Mechanism m,
                        const QuadratureConfig& cfg)
{
    const GammaCache gammas(kernel, system.g(), cfg);
    return shift_kk(system, gammas, a, m);
}

DirectShift shift_direct_complex(const System& system, const ReservoirKernel& kernel, std::size_t a, Mechanism m,
                                 const QuadratureConfig& cfg)
{
    cfg.validate();
    const double wc = cfg.omega_cutoff;
    check_cutoff(system, a, wc);
    const double g2 = system.g() * system.g();
    const HalflineHints hints{kernel.time_scale(), kernel.support_end(), kernel.uses_regulator()};
    const std::vector<double> schedule = kernel.uses_regulator() ? cfg.epsilon_schedule : std::vector<double>{0.0};

    DirectShift out;
    if (g2 == 0.0)
        return out;

    std::vector<std::pair<double, IntegralResult>> per_eps;
    double imag = 0.0;
    for (double eps : schedule) {
        imag = 0.0;
        const double e = kernel.uses_regulator() ? cfg.effective_epsilon(eps, wc) : 0.0;
        IntegralResult sum;
        for (std::size_t b : system.partners(a)) {
            const TransitionElement el = transition_elements(system, a, b);
            const double weight = el.channel_weight();
            const double weight_imag = el.m.diagonal().imag().sum();
            if (weight == 0.0 && weight_imag == 0.0)
                continue;
            const double nu = system.omega(a, b);
            const double n = std::abs(nu);
            WeightedHalfline pb;
            pb.omega = n;
            pb.origin_scale = e > 0.0 ? std::min(e, 1.0 / wc) : 1.0 / wc;
            double sign = 1.0;
            if (m == Mechanism::ReservoirFluctuation) {
                // -i g^2 C^R chi^S = g^2 Cs * Im(M e^{i nu u}), band-limited
                pb.f = [&kernel, e](double u) { return kernel.eval(u, e).cs; };
                pb.weight = [n, wc](double u) { return band_limited_sine(u, n, wc); };
                pb.asymptotic = Weight::Sin;
                pb.tail_deviation = 2.0 * n / (kPi * (wc * wc - n * n));
                sign = nu < 0.0 ? -1.0 : 1.0;
            } else {
                // -i g^2 chi^R C^S = g^2 Ca * Re(M e^{i nu u}), band-limited
                pb.f = [&kernel, e](double u) { return kernel.eval(u, e).ca; };
                pb.weight = [n, wc](double u) { return band_limited_cosine(u, n, wc); };
                pb.asymptotic = Weight::Cos;
                pb.tail_deviation = 2.0 * wc / (kPi * (wc * wc - n * n));
            }
            const IntegralResult part = integrate_halfline(pb, cfg, hints);
            sum += part.scaled(sign * g2 * weight);
            imag += sign * g2 * weight_imag * part.value;
        }
        per_eps.emplace_back(eps, sum);
    }
    out.real = extrapolate_regulator(per_eps, cfg);
    out.imag = imag;
    return out;
}

IntegralResult shift_direct(const System& system, const ReservoirKernel& kernel, std::size_t a, Mechanism m,
                            const QuadratureConfig& cfg)
{
    return shift_direct_complex(system, kernel, a, m, cfg).real;
}

IntegralResult lamb_shift_two_level(const std::function<IntegralResult(double)>& gamma_rf, double omega0,
                                    double omega_cutoff, const QuadratureConfig& cfg)
{
    if (!(omega0 > 0.0))
        throw Error(ErrorCode::InvalidArgument, "omega_0 must be positive");
    if (!(omega_cutoff > omega0))
        throw Error(ErrorCode::CutoffTooSmall, "omega_cutoff = " + std::to_string(omega_cutoff) + " must exceed omega_0 = " +
                                                   std::to_string(omega0) + "; raise omega_cutoff in [quadrature]");
    // 1/(w+w0) - 1/(w-w0) = -2 w0 / ((w+w0)(w-w0))
    const std::function<IntegralResult(double)> h = [&](double w) {
        return gamma_rf(w).scaled(-2.0 * omega0 / (w + omega0));
    };
    return pv_integral(h, omega0, 0.0, omega_cutoff, cfg).scaled(1.0 / (2.0 * kPi));
}

IntegralResult lamb_shift_two_level(const ReservoirKernel& kernel, double g, double omega0,
                                    const QuadratureConfig& cfg)
{
    const GammaCache gammas(kernel, g, cfg);
    return lamb_shift_two_level([&](double w) { return gammas(Mechanism::ReservoirFluctuation, w); }, omega0,
                                cfg.omega_cutoff, cfg);
}

ShiftResult level_shift(const System& system, const ReservoirKernel& kernel, std::size_t a, ShiftMethod method,
                        const QuadratureConfig& cfg, bool cutoff_sensitivity)
{
    std::optional<GammaCache> gammas;
    if (method == ShiftMethod::KramersKronig)
        gammas.emplace(kernel, system.g(), cfg);
    const auto compute = [&](const QuadratureConfig& c) {
        ShiftResult r;
        r.level = a;
        r.omega_c = c.omega_cutoff;
        IntegralResult rf, sr;
        if (gammas) {
            rf = shift_kk(system, *gammas, a, Mechanism::ReservoirFluctuation, c.omega_cutoff);
            sr = shift_kk(system, *gammas, a, Mechanism::SelfReaction, c.omega_cutoff);
        } else {
            rf = shift_direct(system, kernel, a, Mechanism::ReservoirFluctuation, c);
            sr = shift_direct(system, kernel, a, Mechanism::SelfReaction, c);
        }
        r.delta_e_rf = rf.value;
        r.delta_e_sr = sr.value;
        r.err_rf = rf.error;
        r.err_sr = sr.error;
        return r;
    };
    ShiftResult r = compute(cfg);
    if (cutoff_sensitivity) {
        QuadratureConfig wide = cfg;
        wide.omega_cutoff = 2.0 * cfg.omega_cutoff;
        const ShiftResult w = compute(wide);
        r.err_cutoff = std::abs(w.delta_e_rf - r.delta_e_rf) + std::abs(w.delta_e_sr - r.delta_e_sr);
    }
    return r;
}

} // namespace resrelax
