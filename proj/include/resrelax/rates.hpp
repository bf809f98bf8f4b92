// rates.hpp — Rate coefficients gamma^rf / gamma^sr, per-transition Gamma_ab,
// relaxation rates and Einstein coefficients.
//
// Scalar reservoir kernels act channel-diagonally: C^R_ij = delta_ij C^R, so
// several coupling operators see independent copies of the same reservoir.
//
// Sign conventions. gamma_rf is even in omega. gamma_sr follows the literal
// sine transform and is odd in omega; for omega > 0 both are positive for every
// built-in kernel. Gamma_ab(w') = -2 w' W_ab gamma(w') with W_ab = sum_i M_ii,
// which makes Gamma^rf odd and Gamma^sr even in w'. With these conventions the
// two-level relaxation rates are
//   rf:  -2 w0 gamma_rf(w0) (sum_{b<a} |S_ab|^2 - sum_{b>a} |S_ab|^2)
//   sr:  -2 w0 gamma_sr(w0) (sum_{b<a} |S_ab|^2 + sum_{b>a} |S_ab|^2)
// which sum to d<H>/dtau = -w0 gamma_sr / 2 - gamma_rf <H>.

#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "resrelax/quadrature.hpp"
#include "resrelax/reservoir.hpp"
#include "resrelax/system.hpp"

namespace resrelax {

enum class Mechanism { ReservoirFluctuation, SelfReaction };

std::string to_string(Mechanism m); // "rf" / "sr"

IntegralResult gamma_rf(const ReservoirKernel& kernel, double g, double omega, const QuadratureConfig& cfg);
IntegralResult gamma_sr(const ReservoirKernel& kernel, double g, double omega, const QuadratureConfig& cfg);
IntegralResult gamma_mechanism(const ReservoirKernel& kernel, Mechanism m, double g, double omega,
                               const QuadratureConfig& cfg);

IntegralResult gamma_ab(const System& system, const ReservoirKernel& kernel, std::size_t a, std::size_t b, Mechanism m,
                        double omega_prime, const QuadratureConfig& cfg);

// Sum_b Gamma_ab(omega_ab) over non-degenerate partners.
IntegralResult relaxation_rate(const System& system, const ReservoirKernel& kernel, std::size_t a, Mechanism m,
                               const QuadratureConfig& cfg);

// Closed two-level form of the relaxation rate, used as a cross-check.
double two_level_relaxation_rate(double omega0, double gamma, Mechanism m, bool excited);

struct EinsteinCoefficients {
    double a_up{0.0};
    double a_down{0.0};
    double error{0.0};
};

// tolerance: allowance for numerical noise before a negative A_up is an error.
EinsteinCoefficients einstein_coefficients(double gamma_rf, double gamma_sr, double tolerance = 0.0);
EinsteinCoefficients einstein_coefficients(const IntegralResult& gamma_rf, const IntegralResult& gamma_sr);

struct RateEntry {
    Mechanism mechanism{Mechanism::ReservoirFluctuation};
    bool per_transition{false}; // false: gamma(omega) row, true: Gamma_ab row
    std::size_t a{0};
    std::size_t b{0};
    double omega{0.0};
    double value{0.0};
    double error{0.0};
};

struct RateTable {
    std::vector<RateEntry> entries;

    // gamma rows at the given frequency (two-level convenience).
    const RateEntry* gamma(Mechanism m, double omega) const;
};

// gamma rows at every distinct |omega_ab| (ascending), then Gamma rows for
// every non-degenerate ordered pair (a ascending, b ascending), rf before sr.
RateTable rate_table(const System& system, const ReservoirKernel& kernel, const QuadratureConfig& cfg);

} // namespace resrelax

namespace resrelax {

// Memoized gamma(omega) for one kernel, coupling and quadrature setup. Entries
// are keyed by |omega| and the odd continuation of gamma_sr is applied on
// lookup, so mirrored frequencies return mirrored values. Thread-safe.
class GammaCache {
public:
    GammaCache(ReservoirKernel kernel, double g, QuadratureConfig cfg);
    ~GammaCache();
    GammaCache(const GammaCache&) = delete;
    GammaCache& operator=(const GammaCache&) = delete;

    IntegralResult operator()(Mechanism m, double omega) const;

    const ReservoirKernel& kernel() const { return kernel_; }
    double g() const { return g_; }
    const QuadratureConfig& config() const { return cfg_; }
    std::size_t size() const;

private:
    struct Impl;
    ReservoirKernel kernel_;
    double g_;
    QuadratureConfig cfg_;
    std::unique_ptr<Impl> impl_;
};

} // namespace resrelax
