// quadrature.hpp — Adaptive Gauss-Kronrod integration, regularized half-line
// Fourier transforms, principal values and the Kramers-Kronig transform.

#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace resrelax {

struct QuadratureConfig {
    // Regulator values, strictly decreasing. Extrapolated to eps -> 0.
    std::vector<double> epsilon_schedule{1e-2, 5e-3, 2.5e-3};
    // When set, each eps is measured against the oscillation frequency of the
    // integral it regulates: eps_eff = eps * min(1, 0.1 / |omega|).
    bool epsilon_relative{true};
    double omega_cutoff{100.0};
    double abs_tol{1e-10};
    double rel_tol{1e-8};
    int max_subdivisions{2000};
    std::optional<double> u_max; // half-line truncation; chosen per integral when empty

    void validate() const;
    double effective_epsilon(double eps, double omega_scale) const;
};

struct IntegralResult {
    double value{0.0};
    double error{0.0};
    bool extrapolated{false};
    double tail_bound{0.0}; // truncation bound not folded into value

    IntegralResult& operator+=(const IntegralResult& o)
    {
        value += o.value;
        error += o.error;
        tail_bound += o.tail_bound;
        extrapolated = extrapolated || o.extrapolated;
        return *this;
    }
    IntegralResult scaled(double c) const
    {
        IntegralResult r = *this;
        r.value *= c;
        r.error *= std::abs(c);
        r.tail_bound *= std::abs(c);
        return r;
    }
};

// ---- adaptive integration over a finite interval ----

struct AdaptiveResult {
    double value{0.0};
    double error{0.0};
    double abs_integral{0.0}; // integral of |f|, for error propagation
    int subdivisions{0};
    bool converged{false};
};

// Globally adaptive 21-point Gauss-Kronrod rule started from the given
// breakpoints (sorted, at least two). max_subdivisions bounds the number of
// bisections beyond the initial panels.
AdaptiveResult integrate_adaptive(const std::function<double(double)>& f, std::span<const double> breakpoints,
                                  double abs_tol, double rel_tol, int max_subdivisions);

// ---- regularized half-line transforms ----

// Kernel slice f(u, eps).
using KernelSlice = std::function<double(double, double)>;

enum class Weight { Cos, Sin };

struct HalflineHints {
    double time_scale{0.0};                                  // intrinsic feature scale of f
    double support_end{std::numeric_limits<double>::infinity()}; // finite for tabulated data
    bool uses_regulator{true};                               // false: eps ignored, no extrapolation
};

// int_0^inf f(u, eps) w(omega u) du at every eps of the schedule, extrapolated
// to eps -> 0.
IntegralResult halfline_cos_transform(const KernelSlice& f, double omega, const QuadratureConfig& cfg,
                                      const HalflineHints& hints = {});
IntegralResult halfline_sin_transform(const KernelSlice& f, double omega, const QuadratureConfig& cfg,
                                      const HalflineHints& hints = {});

// int_0^inf f(u) weight(u) du for a fixed eps, where weight(u) approaches
// cos/sin(omega u) for large u. Used directly by the time-domain shift path.
struct WeightedHalfline {
    std::function<double(double)> f;
    std::function<double(double)> weight;
    double omega{0.0};
    Weight asymptotic{Weight::Cos};
    double origin_scale{0.0};    // grading of panels near u = 0
    double tail_deviation{0.0};  // bound on u * |weight - asymptotic| for large u
};
IntegralResult integrate_halfline(const WeightedHalfline& problem, const QuadratureConfig& cfg,
                                  const HalflineHints& hints);

// Extrapolates values sampled along the regulator schedule; returns the
// eps -> 0 estimate. Throws NonConvergent when the estimate is unstable.
IntegralResult extrapolate_regulator(std::span<const std::pair<double, IntegralResult>> samples,
                                     const QuadratureConfig& cfg);

// ---- Richardson extrapolation (linear model) ----

struct RichardsonResult {
    double limit{0.0};
    double residual{0.0};
};

// Least-squares fit v(eps) = v0 + c eps; residual is the largest deviation.
RichardsonResult richardson_extrapolate(std::span<const std::pair<double, double>> values);

// Polynomial fit of the given degree through the samples (least squares).
RichardsonResult richardson_polynomial(std::span<const std::pair<double, double>> values, int degree);

// ---- principal values ----

// PV int_lo^hi h(x) / (x - pole) dx by pole subtraction.
IntegralResult pv_integral(const std::function<double(double)>& h, double pole, double lo, double hi,
                           const QuadratureConfig& cfg, std::span<const double> extra_breakpoints = {});

// Same, for an integrand that carries its own error estimate. The propagated
// part assumes the integrand error varies smoothly with x.
IntegralResult pv_integral(const std::function<IntegralResult(double)>& h, double pole, double lo, double hi,
                           const QuadratureConfig& cfg, std::span<const double> extra_breakpoints = {});

// Re f(omega) = (1/pi) PV int_{-wc}^{wc} Im f(w') / (w' - omega) dw'.
IntegralResult kk_real_from_imag(const std::function<double(double)>& f_imag, double omega,
                                 const QuadratureConfig& cfg, std::span<const double> extra_breakpoints = {});

} // namespace resrelax
