// rates.cpp — Transition-rate coefficients

#include "resrelax/rates.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "resrelax/error.hpp"

namespace resrelax {

namespace {

HalflineHints hints_for(const ReservoirKernel& k)
{
    return {k.time_scale(), k.support_end(), k.uses_regulator()};
}

} // namespace

std::string to_string(Mechanism m)
{
    return m == Mechanism::ReservoirFluctuation ? "rf" : "sr";
}

IntegralResult gamma_rf(const ReservoirKernel& kernel, double g, double omega, const QuadratureConfig& cfg)
{
    if (g == 0.0)
        return {};
    const KernelSlice cs = [&kernel](double u, double eps) { return kernel.eval(u, eps).cs; };
    return halfline_cos_transform(cs, std::abs(omega), cfg, hints_for(kernel)).scaled(g * g);
}

IntegralResult gamma_sr(const ReservoirKernel& kernel, double g, double omega, const QuadratureConfig& cfg)
{
    if (g == 0.0 || omega == 0.0)
        return {};
    // i chi^R = -Ca; evaluated at |omega| and continued as an odd function.
    const KernelSlice ca = [&kernel](double u, double eps) { return kernel.eval(u, eps).ca; };
    const IntegralResult r = halfline_sin_transform(ca, std::abs(omega), cfg, hints_for(kernel)).scaled(-g * g);
    return omega < 0.0 ? r.scaled(-1.0) : r;
}

IntegralResult gamma_mechanism(const ReservoirKernel& kernel, Mechanism m, double g, double omega,
                               const QuadratureConfig& cfg)
{
    return m == Mechanism::ReservoirFluctuation ? gamma_rf(kernel, g, omega, cfg) : gamma_sr(kernel, g, omega, cfg);
}

IntegralResult gamma_ab(const System& system, const ReservoirKernel& kernel, std::size_t a, std::size_t b, Mechanism m,
                        double omega_prime, const QuadratureConfig& cfg)
{
    if (a >= system.size() || b >= system.size())
        throw Error(ErrorCode::IndexOutOfRange, "level index out of range");
    if (a == b || system.degenerate(a, b))
        throw Error(ErrorCode::DegenerateTransition,
                    "transition " + system.levels()[a].label + " -> " + system.levels()[b].label + " is degenerate");
    if (omega_prime == 0.0)
        return {};
    const double weight = transition_elements(system, a, b).channel_weight();
    if (weight == 0.0)
        return {};
    return gamma_mechanism(kernel, m, system.g(), omega_prime, cfg).scaled(-2.0 * omega_prime * weight);
}

IntegralResult relaxation_rate(const System& system, const ReservoirKernel& kernel, std::size_t a, Mechanism m,
                               const QuadratureConfig& cfg)
{
    IntegralResult total;
    for (std::size_t b : system.partners(a))
        total += gamma_ab(system, kernel, a, b, m, system.omega(a, b), cfg);
    return total;
}

double two_level_relaxation_rate(double omega0, double gamma, Mechanism m, bool excited)
{
    // Only one partner level, with |<a|S_2|b>|^2 = 1/4.
    const double below = excited ? 0.25 : 0.0;
    const double above = excited ? 0.0 : 0.25;
    const double structure = m == Mechanism::ReservoirFluctuation ? below - above : below + above;
    return -2.0 * omega0 * gamma * structure;
}

EinsteinCoefficients einstein_coefficients(double gamma_rf, double gamma_sr, double tolerance)
{
    EinsteinCoefficients e;
    e.a_up = 0.5 * gamma_rf - 0.5 * gamma_sr;
    e.a_down = 0.5 * gamma_rf + 0.5 * gamma_sr;
    const double allowed = 1e-12 * std::abs(gamma_rf) + tolerance;
    if (e.a_up < -allowed)
        throw Error(ErrorCode::NegativeExcitationRate,
                    "A_up = " + std::to_string(e.a_up) + " is negative; kernel sign conventions are inconsistent");
    if (e.a_down < -allowed)
        throw Error(ErrorCode::NegativeExcitationRate, "A_down = " + std::to_string(e.a_down) + " is negative");
    e.error = 0.5 * tolerance;
    return e;
}

EinsteinCoefficients einstein_coefficients(const IntegralResult& gamma_rf, const IntegralResult& gamma_sr)
{
    return einstein_coefficients(gamma_rf.value, gamma_sr.value, gamma_rf.error + gamma_sr.error);
}

const RateEntry* RateTable::gamma(Mechanism m, double omega) const
{
    for (const auto& e : entries)
        if (!e.per_transition && e.mechanism == m && e.omega == omega)
            return &e;
    return nullptr;
}

RateTable rate_table(const System& system, const ReservoirKernel& kernel, const QuadratureConfig& cfg)
{
    RateTable table;
    std::vector<double> freqs;
    for (const auto& t : system.transitions())
        if (!t.excluded)
            freqs.push_back(std::abs(t.omega_ab));
    std::sort(freqs.begin(), freqs.end());
    freqs.erase(std::unique(freqs.begin(), freqs.end()), freqs.end());

    struct Cached {
        double omega;
        IntegralResult rf, sr;
    };
    std::vector<Cached> cache;
    for (double w : freqs) {
        Cached c{w, gamma_rf(kernel, system.g(), w, cfg), gamma_sr(kernel, system.g(), w, cfg)};
        table.entries.push_back({Mechanism::ReservoirFluctuation, false, 0, 0, w, c.rf.value, c.rf.error});
        table.entries.push_back({Mechanism::SelfReaction, false, 0, 0, w, c.sr.value, c.sr.error});
        cache.push_back(c);
    }
    const auto lookup = [&](Mechanism m, double w) {
        for (const auto& c : cache)
            if (c.omega == std::abs(w)) {
                IntegralResult r = m == Mechanism::ReservoirFluctuation ? c.rf : c.sr;
                if (m == Mechanism::SelfReaction && w < 0.0)
                    r = r.scaled(-1.0);
                return r;
            }
        return IntegralResult{};
    };
    for (const auto& t : system.transitions()) {
        if (t.excluded)
            continue;
        const double weight = transition_elements(system, t.a, t.b).channel_weight();
        for (Mechanism m : {Mechanism::ReservoirFluctuation, Mechanism::SelfReaction}) {
            const IntegralResult gam = lookup(m, t.omega_ab).scaled(-2.0 * t.omega_ab * weight);
            table.entries.push_back({m, true, t.a, t.b, t.omega_ab, gam.value, gam.error});
        }
    }
    return table;
}

} // namespace resrelax


namespace resrelax {

struct GammaCache::Impl {
    mutable std::mutex mutex;
    std::map<std::pair<int, double>, IntegralResult> values;
};

GammaCache::GammaCache(ReservoirKernel kernel, double g, QuadratureConfig cfg)
    : kernel_(std::move(kernel)), g_(g), cfg_(std::move(cfg)), impl_(std::make_unique<Impl>())
{
    cfg_.validate();
}

GammaCache::~GammaCache() = default;

IntegralResult GammaCache::operator()(Mechanism m, double omega) const
{
    const double w = std::abs(omega);
    const std::pair<int, double> key{static_cast<int>(m), w};
    IntegralResult r;
    bool found = false;
    {
        std::lock_guard lock(impl_->mutex);
        if (auto it = impl_->values.find(key); it != impl_->values.end()) {
            r = it->second;
            found = true;
        }
    }
    if (!found) {
        r = gamma_mechanism(kernel_, m, g_, w, cfg_);
        std::lock_guard lock(impl_->mutex);
        impl_->values.emplace(key, r);
    }
    if (m == Mechanism::SelfReaction && omega < 0.0)
        r = r.scaled(-1.0);
    return r;
}

std::size_t GammaCache::size() const
{
    std::lock_guard lock(impl_->mutex);
    return impl_->values.size();
}

} // namespace resrelax
