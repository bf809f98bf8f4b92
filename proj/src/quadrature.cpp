// quadrature.cpp — Numerical integration engine

#include "resrelax/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <queue>
#include <string>

#include <Eigen/Dense>

#include "resrelax/error.hpp"

namespace resrelax {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEpsMach = std::numeric_limits<double>::epsilon();

// Kronrod abscissae and weights (QUADPACK qk21); odd entries are the 10-point Gauss nodes.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525478126, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
    double a{0.0};
    double b{0.0};
    double value{0.0};
    double error{0.0};
    double abs_value{0.0};
};

Segment gauss_kronrod21(const std::function<double(double)>& f, double a, double b)
{
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double resk = kWgk[10] * fc;
    double resg = 0.0;
    double resabs = std::abs(resk);
    std::array<double, 10> f1{};
    std::array<double, 10> f2{};
    for (int j = 0; j < 10; ++j) {
        const double dx = half * kXgk[j];
        const double v1 = f(center - dx);
        const double v2 = f(center + dx);
        f1[j] = v1;
        f2[j] = v2;
        resk += kWgk[j] * (v1 + v2);
        resabs += kWgk[j] * (std::abs(v1) + std::abs(v2));
        if (j % 2 == 1)
            resg += kWg[j / 2] * (v1 + v2);
    }
    const double reskh = 0.5 * resk;
    double resasc = kWgk[10] * std::abs(fc - reskh);
    for (int j = 0; j < 10; ++j)
        resasc += kWgk[j] * (std::abs(f1[j] - reskh) + std::abs(f2[j] - reskh));

    Segment s;
    s.a = a;
    s.b = b;
    s.value = resk * half;
    s.abs_value = resabs * std::abs(half);
    resasc *= std::abs(half);
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (s.abs_value > std::numeric_limits<double>::min() / (50.0 * kEpsMach))
        err = std::max(50.0 * kEpsMach * s.abs_value, err);
    s.error = err;
    return s;
}

struct ByError {
    bool operator()(const Segment& x, const Segment& y) const
    {
        if (x.error != y.error)
            return x.error < y.error;
        return x.a > y.a;
    }
};

double sum_sorted(std::vector<Segment>& segs, double Segment::*field)
{
    std::sort(segs.begin(), segs.end(), [](const Segment& x, const Segment& y) { return x.a < y.a; });
    double s = 0.0;
    for (const auto& g : segs)
        s += g.*field;
    return s;
}

std::vector<double> linear_fit_weights_at_zero(std::span<const double> x, int degree)
{
    const auto n = static_cast<Eigen::Index>(x.size());
    Eigen::MatrixXd v(n, degree + 1);
    for (Eigen::Index i = 0; i < n; ++i) {
        double p = 1.0;
        for (int k = 0; k <= degree; ++k) {
            v(i, k) = p;
            p *= x[static_cast<std::size_t>(i)];
        }
    }
    // The intercept is the first row of the pseudo-inverse.
    const Eigen::MatrixXd pinv = v.completeOrthogonalDecomposition().pseudoInverse();
    std::vector<double> w(x.size());
    for (Eigen::Index i = 0; i < n; ++i)
        w[static_cast<std::size_t>(i)] = pinv(0, i);
    return w;
}

void check_schedule(std::span<const std::pair<double, double>> values)
{
    if (values.size() < 2)
        throw Error(ErrorCode::InsufficientSamples, "extrapolation needs at least two samples");
    for (std::size_t i = 1; i < values.size(); ++i)
        if (!(values[i].first < values[i - 1].first))
            throw Error(ErrorCode::InvalidArgument, "regulator samples must be strictly decreasing");
}

} // namespace

void QuadratureConfig::validate() const
{
    if (epsilon_schedule.empty())
        throw Error(ErrorCode::InvalidArgument, "epsilon_schedule is empty");
    for (std::size_t i = 0; i < epsilon_schedule.size(); ++i) {
        if (!(epsilon_schedule[i] > 0.0) || !std::isfinite(epsilon_schedule[i]))
            throw Error(ErrorCode::InvalidArgument, "epsilon_schedule entries must be positive");
        if (i > 0 && !(epsilon_schedule[i] < epsilon_schedule[i - 1]))
            throw Error(ErrorCode::InvalidArgument, "epsilon_schedule must be strictly decreasing");
    }
    if (!(omega_cutoff > 0.0) || !std::isfinite(omega_cutoff))
        throw Error(ErrorCode::InvalidArgument, "omega_cutoff must be positive");
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw Error(ErrorCode::InvalidArgument, "abs_tol and rel_tol must be positive");
    if (max_subdivisions <= 0)
        throw Error(ErrorCode::InvalidArgument, "max_subdivisions must be positive");
    if (u_max && !(*u_max > 0.0))
        throw Error(ErrorCode::InvalidArgument, "u_max must be positive");
}

double QuadratureConfig::effective_epsilon(double eps, double omega_scale) const
{
    const double w = std::abs(omega_scale);
    if (!epsilon_relative || w <= 0.1)
        return eps;
    return eps * 0.1 / w;
}

AdaptiveResult integrate_adaptive(const std::function<double(double)>& f, std::span<const double> breakpoints,
                                  double abs_tol, double rel_tol, int max_subdivisions)
{
    if (breakpoints.size() < 2)
        throw Error(ErrorCode::InvalidArgument, "integration needs at least two breakpoints");

    std::priority_queue<Segment, std::vector<Segment>, ByError> heap;
    std::vector<Segment> frozen;
    double total = 0.0;
    double total_err = 0.0;
    for (std::size_t i = 1; i < breakpoints.size(); ++i) {
        const double a = breakpoints[i - 1];
        const double b = breakpoints[i];
        if (!(b > a))
            continue;
        Segment s = gauss_kronrod21(f, a, b);
        total += s.value;
        total_err += s.error;
        heap.push(s);
    }

    AdaptiveResult out;
    while (!heap.empty()) {
        if (total_err <= std::max(abs_tol, rel_tol * std::abs(total))) {
            out.converged = true;
            break;
        }
        if (out.subdivisions >= max_subdivisions)
            break;
        Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b) || (worst.b - worst.a) < 1e-13 * std::max(std::abs(worst.a), std::abs(worst.b))) {
            frozen.push_back(worst);
            continue;
        }
        Segment left = gauss_kronrod21(f, worst.a, mid);
        Segment right = gauss_kronrod21(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++out.subdivisions;
    }
    if (heap.empty())
        out.converged = true;

    std::vector<Segment> all = std::move(frozen);
    while (!heap.empty()) {
        all.push_back(heap.top());
        heap.pop();
    }
    out.value = sum_sorted(all, &Segment::value);
    out.error = sum_sorted(all, &Segment::error);
    out.abs_integral = sum_sorted(all, &Segment::abs_value);
    if (!out.converged)
        out.converged = out.error <= std::max(abs_tol, rel_tol * std::abs(out.value));
    if (!std::isfinite(out.value))
        throw Error(ErrorCode::NonConvergent, "integrand produced a non-finite value");
    return out;
}

// ---- half-line ----

namespace {

struct Tail {
    double value{0.0};
    double error{0.0};
    double leading{0.0};
    double ratio{0.0}; // size of successive asymptotic terms, drives the choice of U
};

// int_U^inf f(u) w(omega u) du by repeated integration by parts:
// -e^{i omega U} sum_k (-1)^k f^(k)(U) / (i omega)^(k+1)
Tail oscillatory_tail(const std::function<double(double)>& f, double omega, Weight kind, double u, bool one_sided)
{
    const double d = 1e-3 * u;
    const double f0 = f(u);
    double f1 = 0.0;
    double f2 = 0.0;
    if (one_sided) {
        const double fm1 = f(u - d);
        const double fm2 = f(u - 2.0 * d);
        f1 = (3.0 * f0 - 4.0 * fm1 + fm2) / (2.0 * d);
        f2 = (f0 - 2.0 * fm1 + fm2) / (d * d);
    } else {
        const double fp = f(u + d);
        const double fm = f(u - d);
        f1 = (fp - fm) / (2.0 * d);
        f2 = (fp - 2.0 * f0 + fm) / (d * d);
    }
    const std::complex<double> iw(0.0, omega);
    const std::complex<double> phase = std::polar(1.0, omega * u);
    const std::complex<double> t0 = -phase * f0 / iw;
    const std::complex<double> t1 = phase * f1 / (iw * iw);
    const std::complex<double> t2 = -phase * f2 / (iw * iw * iw);
    const std::complex<double> s = t0 + t1 + t2;
    Tail t;
    t.value = kind == Weight::Cos ? s.real() : s.imag();
    t.leading = std::abs(f0) / omega;
    t.error = std::abs(f2) / (omega * omega * omega) + 1e-6 * t.leading;
    const double a0 = std::abs(f0) / omega;
    const double a1 = std::abs(f1) / (omega * omega);
    const double a2 = std::abs(f2) / (omega * omega * omega);
    t.ratio = a0 > 0.0 ? std::max(a1 / a0, a1 > 0.0 ? a2 / a1 : 0.0) : 0.0;
    return t;
}

// int_U^inf f(u) du for a power-law tail u^-p.
Tail power_law_tail(const std::function<double(double)>& f, double u)
{
    const double f1 = f(u);
    const double f2 = f(2.0 * u);
    const double f4 = f(4.0 * u);
    Tail t;
    if (f1 == 0.0)
        return t;
    if (f2 == 0.0 || (f1 > 0.0) != (f2 > 0.0))
        return t; // faster than any power; bounded by the last panel already
    const double p = std::log(f1 / f2) / std::log(2.0);
    if (!(p > 1.05))
        throw Error(ErrorCode::NonConvergent, "kernel tail decays too slowly for a half-line integral");
    t.value = f1 * u / (p - 1.0);
    double p2 = p;
    if (f4 != 0.0 && (f4 > 0.0) == (f2 > 0.0))
        p2 = std::log(f2 / f4) / std::log(2.0);
    const double alt = p2 > 1.05 ? f1 * u / (p2 - 1.0) : 2.0 * t.value;
    t.error = std::abs(t.value - alt) + 1e-3 * std::abs(t.value);
    t.leading = std::abs(t.value);
    return t;
}

std::vector<double> halfline_breakpoints(double u_end, double panel, double origin_scale)
{
    std::vector<double> br{0.0};
    double s = origin_scale > 0.0 ? std::min(origin_scale, panel) : panel / 1024.0;
    double x = s;
    while (x < panel && x < u_end) {
        br.push_back(x);
        x *= 2.0;
    }
    double last = br.back();
    const auto count = static_cast<long long>(std::ceil((u_end - last) / panel));
    for (long long k = 1; k <= count; ++k) {
        const double p = std::min(u_end, last + static_cast<double>(k) * panel);
        if (p > br.back())
            br.push_back(p);
    }
    if (br.back() < u_end)
        br.push_back(u_end);
    return br;
}

constexpr std::size_t kMaxPanels = 200000;

} // namespace

IntegralResult integrate_halfline(const WeightedHalfline& pb, const QuadratureConfig& cfg, const HalflineHints& hints)
{
    const double omega = pb.omega;
    if (!(omega >= 0.0) || !std::isfinite(omega))
        throw Error(ErrorCode::InvalidArgument, "half-line frequency must be finite and >= 0");
    if (omega == 0.0 && pb.asymptotic == Weight::Sin)
        throw Error(ErrorCode::InvalidArgument, "sine weight at zero frequency");

    const bool finite_support = std::isfinite(hints.support_end);
    double u_end = 0.0;
    double panel = 0.0;
    if (omega > 0.0) {
        const double period = 2.0 * kPi / omega;
        u_end = std::max(40.0 * period, hints.time_scale);
        panel = period / 16.0;
    } else {
        u_end = std::max({100.0 * hints.time_scale, 100.0 * pb.origin_scale, 10.0});
        panel = u_end / 64.0;
    }
    if (cfg.u_max)
        u_end = *cfg.u_max;

    Tail tail;
    bool tail_is_bound = false;
    if (finite_support && u_end >= hints.support_end) {
        u_end = hints.support_end;
        tail_is_bound = true;
        if (omega > 0.0) {
            tail = oscillatory_tail(pb.f, omega, pb.asymptotic, u_end, true);
        } else {
            tail.value = std::abs(pb.f(u_end)) * u_end;
        }
    } else if (omega > 0.0) {
        tail = oscillatory_tail(pb.f, omega, pb.asymptotic, u_end, false);
        int doublings = 0;
        while (!cfg.u_max && tail.ratio > 0.05 && doublings < 16) {
            u_end *= 2.0;
            if (finite_support && u_end >= hints.support_end) {
                u_end = hints.support_end;
                tail = oscillatory_tail(pb.f, omega, pb.asymptotic, u_end, true);
                tail_is_bound = true;
                break;
            }
            tail = oscillatory_tail(pb.f, omega, pb.asymptotic, u_end, false);
            ++doublings;
        }
        if (!tail_is_bound && tail.ratio > 0.05)
            throw Error(ErrorCode::NonConvergent, "asymptotic tail expansion did not settle");
        tail.error += std::abs(pb.f(u_end)) * pb.tail_deviation;
    } else {
        tail = power_law_tail(pb.f, u_end);
        for (int doublings = 0; !cfg.u_max && tail.error > cfg.abs_tol && doublings < 20; ++doublings) {
            if (finite_support && 2.0 * u_end >= hints.support_end)
                break;
            u_end *= 2.0;
            panel *= 2.0;
            tail = power_law_tail(pb.f, u_end);
        }
    }

    const auto br = halfline_breakpoints(u_end, panel, pb.origin_scale);
    if (br.size() > kMaxPanels)
        throw Error(ErrorCode::SubdivisionLimit, "half-line integral needs " + std::to_string(br.size()) + " panels");

    const auto integrand = [&](double u) { return pb.f(u) * pb.weight(u); };
    const AdaptiveResult quad = integrate_adaptive(integrand, br, cfg.abs_tol, cfg.rel_tol, cfg.max_subdivisions);
    if (!quad.converged && quad.error > 10.0 * std::max(cfg.abs_tol, cfg.rel_tol * std::abs(quad.value)))
        throw Error(ErrorCode::SubdivisionLimit,
                    "half-line integral at omega = " + std::to_string(omega) + " stopped at error " + std::to_string(quad.error));

    IntegralResult r;
    r.value = quad.value;
    r.error = quad.error;
    if (tail_is_bound) {
        r.tail_bound = std::abs(tail.value) + tail.error;
        r.error += r.tail_bound;
    } else {
        r.value += tail.value;
        r.error += tail.error;
    }
    return r;
}

namespace {

IntegralResult halfline_transform(const KernelSlice& f, double omega, Weight kind, const QuadratureConfig& cfg,
                                  const HalflineHints& hints)
{
    cfg.validate();
    const double w = std::abs(omega);
    std::vector<std::pair<double, IntegralResult>> samples;
    const std::vector<double> schedule = hints.uses_regulator ? cfg.epsilon_schedule : std::vector<double>{0.0};
    for (double eps : schedule) {
        const double e = hints.uses_regulator ? cfg.effective_epsilon(eps, w) : 0.0;
        WeightedHalfline pb;
        pb.f = [&f, e](double u) { return f(u, e); };
        if (kind == Weight::Cos)
            pb.weight = [w](double u) { return std::cos(w * u); };
        else
            pb.weight = [w](double u) { return std::sin(w * u); };
        pb.omega = w;
        pb.asymptotic = kind;
        pb.origin_scale = e > 0.0 ? e : (hints.time_scale > 0.0 ? hints.time_scale / 64.0 : 0.0);
        samples.emplace_back(eps, integrate_halfline(pb, cfg, hints));
    }
    return extrapolate_regulator(samples, cfg);
}

} // namespace

IntegralResult halfline_cos_transform(const KernelSlice& f, double omega, const QuadratureConfig& cfg,
                                      const HalflineHints& hints)
{
    return halfline_transform(f, omega, Weight::Cos, cfg, hints);
}

IntegralResult halfline_sin_transform(const KernelSlice& f, double omega, const QuadratureConfig& cfg,
                                      const HalflineHints& hints)
{
    if (omega == 0.0)
        return {};
    const IntegralResult r = halfline_transform(f, omega, Weight::Sin, cfg, hints);
    return omega < 0.0 ? r.scaled(-1.0) : r;
}

IntegralResult extrapolate_regulator(std::span<const std::pair<double, IntegralResult>> samples,
                                     const QuadratureConfig& cfg)
{
    if (samples.empty())
        throw Error(ErrorCode::InsufficientSamples, "no regulator samples");
    double quad_err = 0.0;
    double tail = 0.0;
    for (const auto& s : samples) {
        quad_err = std::max(quad_err, s.second.error);
        tail = std::max(tail, s.second.tail_bound);
    }
    if (samples.size() == 1) {
        IntegralResult r = samples.front().second;
        r.extrapolated = false;
        return r;
    }

    std::vector<std::pair<double, double>> pts;
    std::vector<double> xs;
    for (const auto& s : samples) {
        pts.emplace_back(s.first, s.second.value);
        xs.push_back(s.first);
    }
    const RichardsonResult lin = richardson_extrapolate(pts);
    const double tol = cfg.abs_tol + cfg.rel_tol * std::abs(lin.limit);

    double value = lin.limit;
    double extrap_err = 0.0;
    int degree = 1;
    if (pts.size() == 2) {
        const double last = pts.back().second;
        extrap_err = std::abs(lin.limit - last) * (pts.back().first / pts.front().first);
    } else if (lin.residual <= tol) {
        extrap_err = lin.residual;
    } else {
        degree = std::min<int>(2, static_cast<int>(pts.size()) - 1);
        const RichardsonResult quad = richardson_polynomial(pts, degree);
        const std::span<const std::pair<double, double>> last_two(pts.data() + pts.size() - 2, 2);
        const RichardsonResult lower = richardson_extrapolate(last_two);
        value = quad.limit;
        extrap_err = std::abs(quad.limit - lower.limit) + quad.residual;
    }

    double noise = 0.0;
    for (double w : linear_fit_weights_at_zero(xs, degree))
        noise += std::abs(w);
    noise *= quad_err;

    if (extrap_err > 100.0 * (cfg.rel_tol * std::abs(value) + cfg.abs_tol))
        throw Error(ErrorCode::NonConvergent, "regulator extrapolation unstable: estimate " + std::to_string(value) +
                                                  " with spread " + std::to_string(extrap_err));
    IntegralResult r;
    r.value = value;
    r.error = extrap_err + noise;
    r.extrapolated = true;
    r.tail_bound = tail;
    return r;
}

RichardsonResult richardson_extrapolate(std::span<const std::pair<double, double>> values)
{
    check_schedule(values);
    const double n = static_cast<double>(values.size());
    double sx = 0.0, sy = 0.0;
    for (const auto& [x, y] : values) {
        sx += x;
        sy += y;
    }
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : values) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    const double slope = sxy / sxx;
    RichardsonResult r;
    r.limit = my - slope * mx;
    for (const auto& [x, y] : values)
        r.residual = std::max(r.residual, std::abs(y - (r.limit + slope * x)));
    return r;
}

RichardsonResult richardson_polynomial(std::span<const std::pair<double, double>> values, int degree)
{
    check_schedule(values);
    if (degree < 0 || values.size() < static_cast<std::size_t>(degree) + 1)
        throw Error(ErrorCode::InsufficientSamples, "not enough samples for the requested fit degree");
    const auto n = static_cast<Eigen::Index>(values.size());
    Eigen::MatrixXd v(n, degree + 1);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& [x, yi] = values[static_cast<std::size_t>(i)];
        double p = 1.0;
        for (int k = 0; k <= degree; ++k) {
            v(i, k) = p;
            p *= x;
        }
        y(i) = yi;
    }
    const Eigen::VectorXd c = v.colPivHouseholderQr().solve(y);
    RichardsonResult r;
    r.limit = c(0);
    r.residual = (v * c - y).cwiseAbs().maxCoeff();
    return r;
}

// ---- principal values ----

namespace {

IntegralResult pv_core(const std::function<double(double)>& h, double pole, double lo, double hi,
                       const QuadratureConfig& cfg, std::span<const double> extra, double* abs_out, double* log_out,
                       double* hp_out)
{
    if (!(lo < hi))
        throw Error(ErrorCode::InvalidArgument, "principal-value domain is empty");
    if (pole == lo || pole == hi)
        throw Error(ErrorCode::PoleOnBoundary, "pole lies on the integration boundary");
    if (pole < lo || pole > hi)
        throw Error(ErrorCode::InvalidArgument, "pole lies outside the integration domain");

    const double hp = h(pole);
    const double guard = 1e-6 * (hi - lo);
    bool have_slope = false;
    double slope = 0.0;
    const auto subtracted = [&](double x) {
        const double dx = x - pole;
        if (std::abs(dx) < guard) {
            if (!have_slope) {
                slope = (h(pole + guard) - h(pole - guard)) / (2.0 * guard);
                have_slope = true;
            }
            return slope;
        }
        return (h(x) - hp) / dx;
    };

    std::vector<double> br{lo, pole, hi};
    for (double x : extra)
        if (x > lo && x < hi)
            br.push_back(x);
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end()), br.end());

    const AdaptiveResult q = integrate_adaptive(subtracted, br, cfg.abs_tol, cfg.rel_tol, cfg.max_subdivisions);
    if (!q.converged && q.error > 10.0 * std::max(cfg.abs_tol, cfg.rel_tol * std::abs(q.value)))
        throw Error(ErrorCode::NonConvergent, "principal-value integral stopped at error " + std::to_string(q.error));
    const double lg = std::log((hi - pole) / (pole - lo));
    if (abs_out)
        *abs_out = q.abs_integral;
    if (log_out)
        *log_out = lg;
    if (hp_out)
        *hp_out = hp;
    IntegralResult r;
    r.value = q.value + hp * lg;
    r.error = q.error + kEpsMach * std::abs(hp * lg);
    return r;
}

} // namespace

IntegralResult pv_integral(const std::function<double(double)>& h, double pole, double lo, double hi,
                           const QuadratureConfig& cfg, std::span<const double> extra_breakpoints)
{
    return pv_core(h, pole, lo, hi, cfg, extra_breakpoints, nullptr, nullptr, nullptr);
}

IntegralResult pv_integral(const std::function<IntegralResult(double)>& h, double pole, double lo, double hi,
                           const QuadratureConfig& cfg, std::span<const double> extra_breakpoints)
{
    // Integrand errors enter through their magnitude-weighted relative size;
    // the pole value carries the logarithmic term.
    double sum_err = 0.0, sum_abs = 0.0;
    double tail = 0.0;
    const auto plain = [&](double x) {
        const IntegralResult v = h(x);
        sum_err += v.error;
        sum_abs += std::abs(v.value);
        tail = std::max(tail, v.tail_bound);
        return v.value;
    };
    double abs_int = 0.0, lg = 0.0, hp = 0.0;
    IntegralResult r = pv_core(plain, pole, lo, hi, cfg, extra_breakpoints, &abs_int, &lg, &hp);
    const double rel = sum_abs > 0.0 ? sum_err / sum_abs : 0.0;
    r.error += rel * abs_int + h(pole).error * std::abs(lg);
    r.tail_bound = tail;
    return r;
}

IntegralResult kk_real_from_imag(const std::function<double(double)>& f_imag, double omega,
                                 const QuadratureConfig& cfg, std::span<const double> extra_breakpoints)
{
    cfg.validate();
    const double wc = cfg.omega_cutoff;
    if (!(std::abs(omega) < wc))
        throw Error(ErrorCode::CutoffTooSmall, "evaluation frequency lies outside the cutoff window");
    IntegralResult r = pv_integral(f_imag, omega, -wc, wc, cfg, extra_breakpoints).scaled(1.0 / kPi);
    // Tail beyond the window, assuming at least 1/w'^2 decay.
    const double bound = (std::abs(f_imag(wc)) + std::abs(f_imag(-wc))) * wc / (kPi * (wc - std::abs(omega)));
    r.tail_bound = bound;
    r.error += bound;
    return r;
}

} // namespace resrelax
