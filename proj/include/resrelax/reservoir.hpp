// reservoir.hpp — Stationary reservoir two-point functions
//
// A kernel returns, for a proper-time difference u and regulator eps, the pair
// (Cs, Ca) with C^R(u) = Cs and chi^R(u) = i * Ca. For the vacuum kernels these
// are the real and imaginary parts of the Wightman function W(u - i eps).

#pragma once

#include <complex>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace resrelax {

struct KernelValue {
    double cs{0.0};
    double ca{0.0};
};

struct InertialVacuum {};

struct AcceleratedVacuum {
    double acceleration{1.0};
};

// J(w) = eta * w * exp(-w / omega_j), bath temperature T >= 0.
struct ThermalOhmic {
    double eta{1.0};
    double omega_j{1.0};
    double temperature{0.0};
};

struct TabulatedKernelSamples {
    std::vector<double> u;
    std::vector<double> cs;
    std::vector<double> ca;
};

class CubicSpline;

class TabulatedKernel {
public:
    explicit TabulatedKernel(TabulatedKernelSamples samples);

    const TabulatedKernelSamples& samples() const { return samples_; }
    double u_max() const { return samples_.u.back(); }
    KernelValue eval(double u) const;

private:
    TabulatedKernelSamples samples_;
    std::shared_ptr<const CubicSpline> cs_spline_;
    std::shared_ptr<const CubicSpline> ca_spline_;
};

class ReservoirKernel {
public:
    using Model = std::variant<InertialVacuum, AcceleratedVacuum, ThermalOhmic, TabulatedKernel>;

    static ReservoirKernel inertial_vacuum();
    static ReservoirKernel accelerated_vacuum(double acceleration);
    static ReservoirKernel thermal_ohmic(double eta, double omega_j, double temperature);
    static ReservoirKernel tabulated(TabulatedKernelSamples samples);

    const Model& model() const { return model_; }
    std::string name() const;

    KernelValue eval(double u, double eps) const;

    // Longest intrinsic time scale of the kernel (0 when it has none beyond eps).
    double time_scale() const;
    // End of the kernel's support; infinite except for tabulated input.
    double support_end() const;
    bool is_tabulated() const { return std::holds_alternative<TabulatedKernel>(model_); }
    bool uses_regulator() const;

private:
    explicit ReservoirKernel(Model m) : model_(std::move(m)) {}
    Model model_;
};

std::complex<double> wightman_inertial(double u, double eps);
std::complex<double> wightman_accelerated(double acceleration, double u, double eps);

// |W_accel(u) - W_inertial(u)|; shrinks as O(a^2).
double limit_check_accelerated(double acceleration, double u, double eps);

// psi'(z) for Re z > 0.
std::complex<double> trigamma(std::complex<double> z);

// eval_kernel as a free function, matching the rest of the API.
inline KernelValue eval_kernel(const ReservoirKernel& k, double u, double eps) { return k.eval(u, eps); }

} // namespace resrelax
