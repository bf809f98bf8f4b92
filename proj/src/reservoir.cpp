// reservoir.cpp — Built-in reservoir kernels and the tabulated fallback

#include "resrelax/reservoir.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_interp.h>

#include "resrelax/error.hpp"

namespace resrelax {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_positive(double x, const char* what)
{
    if (!(x > 0.0) || !std::isfinite(x))
        throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be a positive finite number");
}

} // namespace

// Natural cubic spline over a strictly increasing grid.
class CubicSpline {
public:
    CubicSpline(const std::vector<double>& x, const std::vector<double>& y) : x_(x), y_(y)
    {
        interp_ = gsl_interp_alloc(gsl_interp_cspline, x_.size());
        if (gsl_interp_init(interp_, x_.data(), y_.data(), x_.size()) != GSL_SUCCESS) {
            gsl_interp_free(interp_);
            throw Error(ErrorCode::InvalidArgument, "could not build cubic spline over tabulated kernel");
        }
    }
    ~CubicSpline() { gsl_interp_free(interp_); }
    CubicSpline(const CubicSpline&) = delete;
    CubicSpline& operator=(const CubicSpline&) = delete;

    // Read-only evaluation without an accelerator is safe to share across threads.
    double operator()(double u) const
    {
        double out = 0.0;
        gsl_interp_eval_e(interp_, x_.data(), y_.data(), u, nullptr, &out);
        return out;
    }

private:
    std::vector<double> x_;
    std::vector<double> y_;
    gsl_interp* interp_{nullptr};
};

TabulatedKernel::TabulatedKernel(TabulatedKernelSamples samples) : samples_(std::move(samples))
{
    const auto& s = samples_;
    if (s.u.size() < 3)
        throw Error(ErrorCode::InvalidArgument, "tabulated kernel needs at least 3 samples");
    if (s.cs.size() != s.u.size() || s.ca.size() != s.u.size())
        throw Error(ErrorCode::DimensionMismatch, "tabulated kernel columns differ in length");
    if (s.u.front() != 0.0)
        throw Error(ErrorCode::InvalidArgument, "tabulated kernel grid must start at u = 0");
    for (std::size_t i = 0; i < s.u.size(); ++i) {
        if (!std::isfinite(s.u[i]) || !std::isfinite(s.cs[i]) || !std::isfinite(s.ca[i]))
            throw Error(ErrorCode::InvalidArgument, "tabulated kernel has a non-finite value at row " + std::to_string(i));
        if (i > 0 && !(s.u[i] > s.u[i - 1]))
            throw Error(ErrorCode::InvalidArgument, "tabulated kernel grid is not strictly increasing");
    }
    gsl_set_error_handler_off();
    // Splines run over the mirrored grid so that the even/odd extension is
    // smooth through u = 0 instead of imposing a natural end condition there.
    const std::size_t n = s.u.size();
    std::vector<double> x(2 * n - 1), cs(2 * n - 1), ca(2 * n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        x[n - 1 - i] = -s.u[i];
        x[n - 1 + i] = s.u[i];
        cs[n - 1 - i] = cs[n - 1 + i] = s.cs[i];
        ca[n - 1 - i] = -s.ca[i];
        ca[n - 1 + i] = s.ca[i];
    }
    ca[n - 1] = 0.0;
    cs_spline_ = std::make_shared<CubicSpline>(x, cs);
    ca_spline_ = std::make_shared<CubicSpline>(x, ca);
}

KernelValue TabulatedKernel::eval(double u) const
{
    const double au = std::abs(u);
    if (au > u_max())
        throw Error(ErrorCode::OutOfRange, "u = " + std::to_string(u) + " lies beyond the tabulated grid");
    return {(*cs_spline_)(u), (*ca_spline_)(u)};
}

std::complex<double> wightman_inertial(double u, double eps)
{
    const std::complex<double> z(u, -eps);
    return -1.0 / (4.0 * kPi * kPi * z * z);
}

std::complex<double> wightman_accelerated(double acceleration, double u, double eps)
{
    const std::complex<double> z(u, -eps);
    const std::complex<double> sh = std::sinh(0.5 * acceleration * z);
    return -(acceleration * acceleration / (16.0 * kPi * kPi)) / (sh * sh);
}

double limit_check_accelerated(double acceleration, double u, double eps)
{
    require_positive(acceleration, "acceleration");
    if (u == 0.0)
        throw Error(ErrorCode::InvalidArgument, "limit check needs u != 0");
    return std::abs(wightman_accelerated(acceleration, u, eps) - wightman_inertial(u, eps));
}

std::complex<double> trigamma(std::complex<double> z)
{
    if (!(z.real() > 0.0))
        throw Error(ErrorCode::InvalidArgument, "trigamma evaluated outside Re z > 0");
    std::complex<double> acc = 0.0;
    while (std::abs(z) < 15.0) {
        acc += 1.0 / (z * z);
        z += 1.0;
    }
    const std::complex<double> w = 1.0 / z;
    const std::complex<double> w2 = w * w;
    // Bernoulli-number asymptotic tail
    const std::complex<double> series =
        w + 0.5 * w2 +
        w * w2 * (1.0 / 6.0 + w2 * (-1.0 / 30.0 + w2 * (1.0 / 42.0 + w2 * (-1.0 / 30.0 + w2 * (5.0 / 66.0 + w2 * (-691.0 / 2730.0))))));
    return acc + series;
}

ReservoirKernel ReservoirKernel::inertial_vacuum()
{
    return ReservoirKernel(InertialVacuum{});
}

ReservoirKernel ReservoirKernel::accelerated_vacuum(double acceleration)
{
    require_positive(acceleration, "acceleration");
    return ReservoirKernel(AcceleratedVacuum{acceleration});
}

ReservoirKernel ReservoirKernel::thermal_ohmic(double eta, double omega_j, double temperature)
{
    require_positive(eta, "eta");
    require_positive(omega_j, "omega_j");
    if (!(temperature >= 0.0) || !std::isfinite(temperature))
        throw Error(ErrorCode::InvalidArgument, "temperature must be a finite number >= 0");
    return ReservoirKernel(ThermalOhmic{eta, omega_j, temperature});
}

ReservoirKernel ReservoirKernel::tabulated(TabulatedKernelSamples samples)
{
    return ReservoirKernel(TabulatedKernel(std::move(samples)));
}

std::string ReservoirKernel::name() const
{
    return std::visit(Overloaded{
                          [](const InertialVacuum&) { return std::string("inertial_vacuum"); },
                          [](const AcceleratedVacuum&) { return std::string("accelerated_vacuum"); },
                          [](const ThermalOhmic&) { return std::string("thermal_ohmic"); },
                          [](const TabulatedKernel&) { return std::string("tabulated"); },
                      },
                      model_);
}

KernelValue ReservoirKernel::eval(double u, double eps) const
{
    if (!std::isfinite(u) || !(eps >= 0.0))
        throw Error(ErrorCode::InvalidArgument, "kernel evaluated at non-finite u or negative eps");
    return std::visit(
        Overloaded{
            [&](const InertialVacuum&) {
                if (eps == 0.0 && u == 0.0)
                    throw Error(ErrorCode::SingularEvaluation, "vacuum kernel at u = 0 needs eps > 0");
                const auto w = wightman_inertial(u, eps);
                return KernelValue{w.real(), w.imag()};
            },
            [&](const AcceleratedVacuum& m) {
                if (eps == 0.0 && u == 0.0)
                    throw Error(ErrorCode::SingularEvaluation, "vacuum kernel at u = 0 needs eps > 0");
                const auto w = wightman_accelerated(m.acceleration, u, eps);
                return KernelValue{w.real(), w.imag()};
            },
            [&](const ThermalOhmic& m) {
                // int_0^inf w e^{-(s - iu) w} dw = (s - iu)^-2 ; coth = 1 + 2 sum_k e^{-k w / T}
                const double s = 1.0 / m.omega_j + eps;
                const std::complex<double> z(s, -u);
                const std::complex<double> zero_t = 1.0 / (z * z);
                double cs = zero_t.real();
                if (m.temperature > 0.0) {
                    const double t = m.temperature;
                    cs += (2.0 * t * t * trigamma(1.0 + t * z)).real();
                }
                return KernelValue{m.eta * cs, -m.eta * zero_t.imag()};
            },
            [&](const TabulatedKernel& t) { return t.eval(u); },
        },
        model_);
}

double ReservoirKernel::time_scale() const
{
    return std::visit(Overloaded{
                          [](const InertialVacuum&) { return 0.0; },
                          [](const AcceleratedVacuum& m) { return 1.0 / m.acceleration; },
                          [](const ThermalOhmic& m) {
                              return std::max(1.0 / m.omega_j, m.temperature > 0.0 ? 1.0 / m.temperature : 0.0);
                          },
                          [](const TabulatedKernel&) { return 0.0; },
                      },
                      model_);
}

double ReservoirKernel::support_end() const
{
    if (const auto* t = std::get_if<TabulatedKernel>(&model_))
        return t->u_max();
    return std::numeric_limits<double>::infinity();
}

bool ReservoirKernel::uses_regulator() const
{
    return !is_tabulated();
}

} // namespace resrelax
