// dynamics.cpp — Closed-form and RK4 evolution of the mean atomic energy

#include "resrelax/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "resrelax/error.hpp"

namespace resrelax {

namespace {

void require_finite(double x, const char* name)
{
    if (!std::isfinite(x))
        throw Error(ErrorCode::InvalidArgument, std::string(name) + " must be finite");
}

} // namespace

Equilibrium equilibrium_energy(double gamma_rf, double gamma_sr, double omega0)
{
    if (!(gamma_rf > 0.0))
        throw Error(ErrorCode::ZeroRelaxationRate, "gamma_rf must be positive for an equilibrium to exist");
    Equilibrium eq;
    eq.excitation_fraction = (gamma_rf - gamma_sr) / (2.0 * gamma_rf);
    eq.energy = -0.5 * omega0 * gamma_sr / gamma_rf;
    return eq;
}

PopulationState evolve_closed_form(double gamma_rf, double gamma_sr, double omega0, double h0, double tau)
{
    require_finite(h0, "H0");
    if (!(tau >= 0.0))
        throw Error(ErrorCode::InvalidArgument, "tau must be non-negative");
    if (!(gamma_rf > 0.0))
        throw Error(ErrorCode::ZeroRelaxationRate, "closed form needs gamma_rf > 0; use the ODE path");
    const double eq = equilibrium_energy(gamma_rf, gamma_sr, omega0).energy;
    return {tau, eq + (h0 - eq) * std::exp(-gamma_rf * tau)};
}

double max_stable_step(double gamma_rf, double tau_end)
{
    double h = tau_end / 100.0;
    if (gamma_rf > 0.0)
        h = std::min(h, 0.01 / gamma_rf);
    return h;
}

std::vector<PopulationState> evolve_ode(double gamma_rf, double gamma_sr, double omega0, double h0, double tau_end,
                                        const StepConfig& step_cfg)
{
    require_finite(h0, "H0");
    require_finite(gamma_rf, "gamma_rf");
    require_finite(gamma_sr, "gamma_sr");
    if (!(tau_end > 0.0))
        throw Error(ErrorCode::InvalidArgument, "tau_end must be positive");
    if (step_cfg.samples < 2)
        throw Error(ErrorCode::InvalidArgument, "at least two output samples are required");
    if (gamma_rf < 0.0)
        throw Error(ErrorCode::InvalidArgument, "gamma_rf must be non-negative");

    const double bound = max_stable_step(gamma_rf, tau_end);
    double h = bound;
    if (step_cfg.step) {
        if (!(*step_cfg.step > 0.0) || *step_cfg.step > bound)
            throw Error(ErrorCode::StepTooLarge, "step " + std::to_string(*step_cfg.step) +
                                                     " exceeds the stability bound " + std::to_string(bound));
        h = *step_cfg.step;
    }

    const auto rhs = [&](double y) { return -0.5 * omega0 * gamma_sr - gamma_rf * y; };
    const std::size_t intervals = step_cfg.samples - 1;
    const double dt_sample = tau_end / static_cast<double>(intervals);
    const auto substeps = static_cast<std::size_t>(std::ceil(dt_sample / h - 1e-12));
    const double dt = dt_sample / static_cast<double>(substeps);

    std::vector<PopulationState> out;
    out.reserve(step_cfg.samples);
    out.push_back({0.0, h0});
    double y = h0;
    for (std::size_t i = 0; i < intervals; ++i) {
        for (std::size_t k = 0; k < substeps; ++k) {
            const double k1 = rhs(y);
            const double k2 = rhs(y + 0.5 * dt * k1);
            const double k3 = rhs(y + 0.5 * dt * k2);
            const double k4 = rhs(y + dt * k3);
            y += dt * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
        }
        const double tau = i + 1 == intervals ? tau_end : dt_sample * static_cast<double>(i + 1);
        out.push_back({tau, y});
    }
    return out;
}

std::optional<double> fitted_decay_rate(const std::vector<PopulationState>& trajectory, double equilibrium,
                                        double floor)
{
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t n = 0;
    for (const PopulationState& p : trajectory) {
        const double d = std::abs(p.mean_energy - equilibrium);
        if (d <= floor)
            continue;
        const double y = std::log(d);
        sx += p.tau;
        sy += y;
        sxx += p.tau * p.tau;
        sxy += p.tau * y;
        ++n;
    }
    if (n < 2)
        return std::nullopt;
    const double denom = static_cast<double>(n) * sxx - sx * sx;
    if (denom == 0.0)
        return std::nullopt;
    return -(static_cast<double>(n) * sxy - sx * sy) / denom;
}

} // namespace resrelax
