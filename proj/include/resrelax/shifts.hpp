// shifts.hpp — Radiative energy shifts
//
// Two routes to the same shift. The spectral route integrates the
// per-transition coefficients through a principal value around omega_ab,
//   dE_a = (1/2pi) sum_b PV int_{-wc}^{wc} Gamma_ab(w')/w' / (w' - omega_ab) dw',
// with Gamma_ab(w')/w' = -2 W_ab gamma(w') taken in cancelled form. The
// time-domain route integrates the reservoir kernel against the system
// correlation (rf) or susceptibility (sr). The frequency cutoff wc is applied
// there by band-limiting the system factor to |w| <= wc, which is the same
// regularization as truncating the spectral integral.

#pragma once

#include <cstddef>
#include <functional>
#include <optional>

#include "resrelax/quadrature.hpp"
#include "resrelax/rates.hpp"
#include "resrelax/reservoir.hpp"
#include "resrelax/system.hpp"

namespace resrelax {

enum class ShiftMethod { KramersKronig, Direct };

// omega_cutoff overrides the cache's configured cutoff (the gamma values do not depend on it).
IntegralResult shift_kk(const System& system, const GammaCache& gammas, std::size_t a, Mechanism m,
                        std::optional<double> omega_cutoff = std::nullopt);
IntegralResult shift_kk(const System& system, const ReservoirKernel& kernel, std::size_t a, Mechanism m,
                        const QuadratureConfig& cfg);

struct DirectShift {
    IntegralResult real;
    double imag{0.0}; // imaginary part of the assembled time-domain expression
};

DirectShift shift_direct_complex(const System& system, const ReservoirKernel& kernel, std::size_t a, Mechanism m,
                                 const QuadratureConfig& cfg);
IntegralResult shift_direct(const System& system, const ReservoirKernel& kernel, std::size_t a, Mechanism m,
                            const QuadratureConfig& cfg);

// Lamb shift of the two-level atom, Delta = dE_+ - dE_-:
// (1/2pi) int_0^wc gamma_rf(w') [1/(w'+w0) - PV 1/(w'-w0)] dw'.
IntegralResult lamb_shift_two_level(const std::function<IntegralResult(double)>& gamma_rf, double omega0,
                                    double omega_cutoff, const QuadratureConfig& cfg);
IntegralResult lamb_shift_two_level(const ReservoirKernel& kernel, double g, double omega0,
                                    const QuadratureConfig& cfg);

struct ShiftResult {
    std::size_t level{0};
    double delta_e_rf{0.0};
    double delta_e_sr{0.0};
    double omega_c{0.0};
    double err_rf{0.0};
    double err_sr{0.0};
    std::optional<double> err_cutoff; // |dE(2 wc) - dE(wc)|, summed over mechanisms

    double err_quad() const { return err_rf + err_sr; }
};

ShiftResult level_shift(const System& system, const ReservoirKernel& kernel, std::size_t a, ShiftMethod method,
                        const QuadratureConfig& cfg, bool cutoff_sensitivity = false);

// Band-limited system factors. As wc -> inf they approach sin(nu u) and cos(nu u).
//   sine:   (2/pi) PV int_0^wc cos(w u) nu / (nu^2 - w^2) dw
//   cosine: (2/pi) PV int_0^wc sin(w u) w  / (w^2 - nu^2) dw
double band_limited_sine(double u, double nu, double omega_c);
double band_limited_cosine(double u, double nu, double omega_c);

} // namespace resrelax
