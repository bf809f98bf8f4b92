// system.hpp — The small quantum system: levels, coupling operators, spectral data

#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace resrelax {

struct Level {
    std::string label;
    double energy{0.0};
};

// Unvalidated description. Energies in inverse-time units (hbar = c = 1).
struct SystemSpec {
    std::vector<Level> levels;
    std::vector<Eigen::MatrixXcd> coupling_ops; // hermitian, one per channel i
    double g{0.0};
};

struct Transition {
    std::size_t a{0};
    std::size_t b{0};
    double omega_ab{0.0};
    bool excluded{false}; // |omega_ab| below the degeneracy tolerance
};

// M_ij = <a|S_i|b><b|S_j|a> over channel indices.
struct TransitionElement {
    std::size_t a{0};
    std::size_t b{0};
    Eigen::MatrixXcd m;
    double omega_ab{0.0};

    // Sum_i M_ii; the weight a scalar (channel-diagonal) reservoir kernel sees.
    double channel_weight() const { return m.diagonal().real().sum(); }
};

// C^S_ij(u) is real; chi^S_ij(u) = i * susceptibility_imag(i, j).
struct SystemSpectral {
    Eigen::MatrixXd symmetric;
    Eigen::MatrixXd susceptibility_imag;
};

inline constexpr double kHermiticityTolerance = 1e-12;
inline constexpr double kDegeneracyTolerance = 1e-9;

// Validated system. Levels are sorted by ascending energy, ties by label, and
// the coupling matrices are permuted to match.
class System {
public:
    const std::vector<Level>& levels() const { return levels_; }
    const std::vector<Eigen::MatrixXcd>& coupling_ops() const { return ops_; }
    double g() const { return g_; }
    std::size_t size() const { return levels_.size(); }
    std::size_t channels() const { return ops_.size(); }

    double omega(std::size_t a, std::size_t b) const;
    bool degenerate(std::size_t a, std::size_t b) const;
    std::size_t index_of(const std::string& label) const;

    // All ordered pairs a != b, degenerate ones flagged excluded.
    const std::vector<Transition>& transitions() const { return transitions_; }
    // Non-excluded partners b of level a, ascending b.
    std::vector<std::size_t> partners(std::size_t a) const;

    double max_transition_frequency() const;

    System with_coupling(double g) const;

private:
    friend System validate_system(const SystemSpec& spec);
    System() = default;

    std::vector<Level> levels_;
    std::vector<Eigen::MatrixXcd> ops_;
    double g_{0.0};
    double degeneracy_threshold_{0.0};
    std::vector<Transition> transitions_;
};

System validate_system(const SystemSpec& spec);

// Levels |-> and |+> at -omega0/2, +omega0/2 coupled through S_2 = (i/2)(S_+ - S_-).
SystemSpec two_level_spec(double omega0, double g);

TransitionElement transition_elements(const System& system, std::size_t a, std::size_t b);

SystemSpectral system_spectral_functions(const System& system, std::size_t a, double u);

} // namespace resrelax
