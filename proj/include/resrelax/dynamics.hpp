// dynamics.hpp — Mean-energy relaxation of the two-level atom
//
//   d<H>/dtau = -(w0/2) gamma_sr - gamma_rf <H>
//   <H>(tau)  = H_eq + (H0 - H_eq) exp(-gamma_rf tau),  H_eq = -(w0/2) gamma_sr / gamma_rf

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace resrelax {

struct PopulationState {
    double tau{0.0};
    double mean_energy{0.0};
};

struct StepConfig {
    std::size_t samples{101};   // output points including tau = 0 and tau_end
    std::optional<double> step; // requested RK4 step; must respect the stability bound
};

PopulationState evolve_closed_form(double gamma_rf, double gamma_sr, double omega0, double h0, double tau);

std::vector<PopulationState> evolve_ode(double gamma_rf, double gamma_sr, double omega0, double h0, double tau_end,
                                        const StepConfig& step_cfg = {});

// Largest admissible RK4 step: min(0.01 / gamma_rf, tau_end / 100).
double max_stable_step(double gamma_rf, double tau_end);

struct Equilibrium {
    double energy{0.0};
    double excitation_fraction{0.0}; // (gamma_rf - gamma_sr) / (2 gamma_rf)
};

Equilibrium equilibrium_energy(double gamma_rf, double gamma_sr, double omega0);

// Least-squares slope of -log|H - H_eq| over the trajectory. Points within
// `floor` of equilibrium are skipped. Returns nothing if fewer than two remain.
std::optional<double> fitted_decay_rate(const std::vector<PopulationState>& trajectory, double equilibrium,
                                        double floor = 1e-12);

} // namespace resrelax
