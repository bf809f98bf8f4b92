// system.cpp — Validation and spectral decomposition of the small system

#include "resrelax/system.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "resrelax/error.hpp"

namespace resrelax {

double System::omega(std::size_t a, std::size_t b) const
{
    if (a >= size() || b >= size())
        throw Error(ErrorCode::IndexOutOfRange, "level index out of range");
    return levels_[a].energy - levels_[b].energy;
}

bool System::degenerate(std::size_t a, std::size_t b) const
{
    return std::abs(omega(a, b)) <= degeneracy_threshold_;
}

std::size_t System::index_of(const std::string& label) const
{
    for (std::size_t i = 0; i < levels_.size(); ++i)
        if (levels_[i].label == label)
            return i;
    throw Error(ErrorCode::IndexOutOfRange, "no level labelled '" + label + "'");
}

std::vector<std::size_t> System::partners(std::size_t a) const
{
    if (a >= size())
        throw Error(ErrorCode::IndexOutOfRange, "level index out of range");
    std::vector<std::size_t> out;
    for (const auto& t : transitions_)
        if (t.a == a && !t.excluded)
            out.push_back(t.b);
    return out;
}

double System::max_transition_frequency() const
{
    double w = 0.0;
    for (const auto& t : transitions_)
        if (!t.excluded)
            w = std::max(w, std::abs(t.omega_ab));
    return w;
}

System System::with_coupling(double g) const
{
    System copy = *this;
    copy.g_ = g;
    return copy;
}

System validate_system(const SystemSpec& spec)
{
    const std::size_t n = spec.levels.size();
    if (n == 0)
        throw Error(ErrorCode::DimensionMismatch, "system has no levels");
    if (!std::isfinite(spec.g))
        throw Error(ErrorCode::InvalidArgument, "coupling constant g is not finite");

    std::set<std::string> labels;
    for (const auto& lv : spec.levels) {
        if (!std::isfinite(lv.energy))
            throw Error(ErrorCode::NonFiniteEnergy, "level '" + lv.label + "' has non-finite energy");
        if (!labels.insert(lv.label).second)
            throw Error(ErrorCode::DuplicateLabel, "level label '" + lv.label + "' is repeated");
    }
    for (std::size_t i = 0; i < spec.coupling_ops.size(); ++i) {
        const auto& s = spec.coupling_ops[i];
        if (static_cast<std::size_t>(s.rows()) != n || static_cast<std::size_t>(s.cols()) != n)
            throw Error(ErrorCode::DimensionMismatch,
                        "coupling operator " + std::to_string(i) + " is not " + std::to_string(n) + "x" + std::to_string(n));
        if (!s.allFinite())
            throw Error(ErrorCode::InvalidArgument, "coupling operator " + std::to_string(i) + " has non-finite entries");
        if ((s - s.adjoint()).cwiseAbs().maxCoeff() > kHermiticityTolerance)
            throw Error(ErrorCode::NonHermitianCoupling, "coupling operator " + std::to_string(i) + " is not hermitian");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        const auto& lx = spec.levels[x];
        const auto& ly = spec.levels[y];
        if (lx.energy != ly.energy)
            return lx.energy < ly.energy;
        return lx.label < ly.label;
    });

    System sys;
    sys.g_ = spec.g;
    for (std::size_t k : order)
        sys.levels_.push_back(spec.levels[k]);
    for (const auto& s : spec.coupling_ops) {
        Eigen::MatrixXcd p(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                p(r, c) = s(order[r], order[c]);
        sys.ops_.push_back(std::move(p));
    }

    double emax = 0.0;
    for (const auto& lv : sys.levels_)
        emax = std::max(emax, std::abs(lv.energy));
    sys.degeneracy_threshold_ = kDegeneracyTolerance * emax;

    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (a == b)
                continue;
            const double w = sys.levels_[a].energy - sys.levels_[b].energy;
            sys.transitions_.push_back({a, b, w, std::abs(w) <= sys.degeneracy_threshold_});
        }
    return sys;
}

SystemSpec two_level_spec(double omega0, double g)
{
    if (!(omega0 > 0.0) || !std::isfinite(omega0))
        throw Error(ErrorCode::InvalidArgument, "two-level splitting omega_0 must be positive");
    using namespace std::complex_literals;
    Eigen::MatrixXcd s2 = Eigen::MatrixXcd::Zero(2, 2);
    // basis (|->, |+>); S_+ = |+><-|
    s2(1, 0) = 0.5i;
    s2(0, 1) = -0.5i;
    return SystemSpec{{{"-", -0.5 * omega0}, {"+", 0.5 * omega0}}, {s2}, g};
}

TransitionElement transition_elements(const System& system, std::size_t a, std::size_t b)
{
    if (a >= system.size() || b >= system.size())
        throw Error(ErrorCode::IndexOutOfRange, "level index out of range");
    const std::size_t nc = system.channels();
    TransitionElement te;
    te.a = a;
    te.b = b;
    te.omega_ab = system.omega(a, b);
    te.m.resize(static_cast<Eigen::Index>(nc), static_cast<Eigen::Index>(nc));
    const auto& ops = system.coupling_ops();
    for (std::size_t i = 0; i < nc; ++i)
        for (std::size_t j = 0; j < nc; ++j)
            te.m(i, j) = ops[i](a, b) * ops[j](b, a);
    return te;
}

SystemSpectral system_spectral_functions(const System& system, std::size_t a, double u)
{
    const auto nc = static_cast<Eigen::Index>(system.channels());
    SystemSpectral out{Eigen::MatrixXd::Zero(nc, nc), Eigen::MatrixXd::Zero(nc, nc)};
    for (std::size_t b : system.partners(a)) {
        const auto te = transition_elements(system, a, b);
        const std::complex<double> phase = std::polar(1.0, te.omega_ab * u);
        const Eigen::MatrixXcd x = te.m * phase;
        out.symmetric += x.real();
        out.susceptibility_imag += x.imag();
    }
    return out;
}

} // namespace resrelax
