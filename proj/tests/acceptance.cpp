// acceptance.cpp — end-to-end acceptance criteria, one PASS/FAIL line each

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "resrelax/dynamics.hpp"
#include "resrelax/rates.hpp"
#include "resrelax/shifts.hpp"
#include "cli_util.hpp"
#include "oracles.hpp"

using namespace resrelax;
using resrelax::testing::Workspace;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass{true};
    std::ostringstream detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

struct Criterion {
    int id;
    std::string name;
    double budget_s;
    std::function<void(Outcome&)> body;
};

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::string sci(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

QuadratureConfig with_cutoff(double wc)
{
    QuadratureConfig cfg;
    cfg.omega_cutoff = wc;
    return cfg;
}

void sr_identity(Outcome& o)
{
    const System sys = validate_system(two_level_spec(1.0, 1.0));
    const QuadratureConfig cfg = with_cutoff(100.0);
    double worst = 0.0;
    for (const ReservoirKernel& k : {ReservoirKernel::inertial_vacuum(), ReservoirKernel::accelerated_vacuum(2.0 * kPi),
                                     ReservoirKernel::thermal_ohmic(0.1, 10.0, 1.0)}) {
        const GammaCache cache(k, 1.0, cfg);
        const IntegralResult p = shift_kk(sys, cache, sys.index_of("+"), Mechanism::SelfReaction);
        const IntegralResult m = shift_kk(sys, cache, sys.index_of("-"), Mechanism::SelfReaction);
        const double diff = std::abs(p.value - m.value);
        const double err = p.error + m.error;
        worst = std::max(worst, diff / err);
        o.require(diff <= 10.0 * err, k.name() + " |dE+ - dE-| = " + sci(diff) + " vs err " + sci(err));
    }
    o.detail << "max |dE+^sr - dE-^sr| / err = " << sci(worst);
}

void kk_equivalence(Outcome& o)
{
    const QuadratureConfig cfg = with_cutoff(30.0);
    const ReservoirKernel k = ReservoirKernel::thermal_ohmic(0.1, 10.0, 0.7);
    double worst = 0.0;
    int compared = 0;
    for (const SystemSpec& spec : {two_level_spec(1.0, 1.0), resrelax::testing::three_level_spec(2024)}) {
        const System sys = validate_system(spec);
        for (std::size_t a = 0; a < sys.size(); ++a)
            for (Mechanism m : {Mechanism::ReservoirFluctuation, Mechanism::SelfReaction}) {
                const IntegralResult kk = shift_kk(sys, k, a, m, cfg);
                const DirectShift d = shift_direct_complex(sys, k, a, m, cfg);
                const double diff = std::abs(kk.value - d.real.value);
                const double err = kk.error + d.real.error;
                worst = std::max(worst, diff / err);
                o.require(diff <= err, "level " + sys.levels()[a].label + " " + to_string(m) + ": residual " + sci(diff) +
                                           " > err " + sci(err));
                o.require(std::abs(d.imag) < 1e-12, "imaginary part " + sci(d.imag));
                ++compared;
            }
    }
    o.detail << compared << " shifts, max residual/err = " << sci(worst);
}

void inertial_balance(Outcome& o)
{
    const ReservoirKernel k = ReservoirKernel::inertial_vacuum();
    const QuadratureConfig cfg;
    double worst = 0.0;
    for (double w : {0.1, 1.0, 10.0}) {
        const IntegralResult rf = gamma_rf(k, 1.0, w, cfg);
        const IntegralResult sr = gamma_sr(k, 1.0, w, cfg);
        const double exact = w / (8.0 * kPi);
        worst = std::max({worst, rel(rf.value, exact), rel(sr.value, exact)});
        const EinsteinCoefficients c = einstein_coefficients(rf, sr);
        o.require(std::abs(c.a_up) <= 1e-4 * c.a_down, "A_up = " + sci(c.a_up) + " at w = " + sci(w));
    }
    o.require(worst < 1e-4, "relative error " + sci(worst));
    o.detail << "max rel error vs g^2 w / 8 pi = " << sci(worst);
}

void unruh_ratio(Outcome& o)
{
    const QuadratureConfig cfg;
    const double w0 = 1.0;
    double worst = 0.0;
    for (double a : {1.0, 2.0 * kPi, 10.0}) {
        const ReservoirKernel k = ReservoirKernel::accelerated_vacuum(a * w0);
        const EinsteinCoefficients c = einstein_coefficients(gamma_rf(k, 1.0, w0, cfg), gamma_sr(k, 1.0, w0, cfg));
        const double r = rel(c.a_up / c.a_down, std::exp(-2.0 * kPi * w0 / (a * w0)));
        worst = std::max(worst, r);
        o.require(r < 1e-3, "a/w0 = " + sci(a) + " rel error " + sci(r));
    }
    o.detail << "max rel error of A_up/A_down vs exp(-2 pi w0 / a) = " << sci(worst);
}

void detailed_balance(Outcome& o)
{
    const QuadratureConfig cfg;
    double worst = 0.0;
    for (auto [w0, T] : {std::pair{1.0, 0.5}, std::pair{1.0, 1.0}, std::pair{2.0, 1.0}}) {
        const ReservoirKernel k = ReservoirKernel::thermal_ohmic(0.1, 10.0, T);
        const IntegralResult rf = gamma_rf(k, 1.0, w0, cfg);
        const IntegralResult sr = gamma_sr(k, 1.0, w0, cfg);
        const EinsteinCoefficients c = einstein_coefficients(rf, sr);
        const double ratio = c.a_up / c.a_down;
        const double ratio_err = ratio * (rf.error + sr.error) * (1.0 / c.a_up + 1.0 / c.a_down);
        const double dev = std::abs(ratio - std::exp(-w0 / T));
        worst = std::max(worst, dev / ratio_err);
        o.require(dev <= 10.0 * ratio_err, "(w0, T) = (" + sci(w0) + ", " + sci(T) + ") deviation " + sci(dev));
    }
    o.detail << "max |ratio - exp(-w0/T)| / err = " << sci(worst);
}

void relaxation_dynamics(Outcome& o)
{
    const double w0 = 1.0;
    double worst_end = 0.0, worst_rate = 0.0;
    for (double grf : {0.05, 0.5, 2.0})
        for (double frac : {0.0, 0.5, 1.0})
            for (double h0 : {-0.5, 0.0, 0.5}) {
                const double gsr = frac * grf;
                const double tau_end = 5.0 / grf;
                const auto traj = evolve_ode(grf, gsr, w0, h0, tau_end);
                const double cf = evolve_closed_form(grf, gsr, w0, h0, tau_end).mean_energy;
                const double diff = std::abs(traj.back().mean_energy - cf);
                if (cf != 0.0)
                    worst_end = std::max(worst_end, diff / std::abs(cf));
                o.require(diff <= 1e-8 * std::abs(cf) + 1e-15, "endpoint mismatch " + sci(diff));
                int sign = 0;
                for (std::size_t i = 1; i < traj.size(); ++i) {
                    const double d = traj[i].mean_energy - traj[i - 1].mean_energy;
                    if (std::abs(d) < 1e-15)
                        continue;
                    const int s = d > 0 ? 1 : -1;
                    o.require(sign == 0 || s == sign, "non-monotone trajectory");
                    sign = s;
                }
                const double eq = equilibrium_energy(grf, gsr, w0).energy;
                if (std::abs(h0 - eq) > 1e-12) {
                    const auto rate = fitted_decay_rate(traj, eq);
                    o.require(rate.has_value(), "no decay rate");
                    if (rate)
                        worst_rate = std::max(worst_rate, rel(*rate, grf));
                }
            }
    o.require(worst_rate < 1e-6, "fitted rate error " + sci(worst_rate));
    o.detail << "27 points, max endpoint rel error " << sci(worst_end) << ", max fitted-rate rel error "
             << sci(worst_rate);
}

void gamma_consistency(Outcome& o)
{
    const QuadratureConfig cfg;
    const ReservoirKernel acc = ReservoirKernel::accelerated_vacuum(3.0);
    const double w0 = 1.3;
    const System two = validate_system(two_level_spec(w0, 0.8));
    double worst_closed = 0.0;
    for (Mechanism m : {Mechanism::ReservoirFluctuation, Mechanism::SelfReaction})
        for (bool excited : {true, false}) {
            const double gamma = gamma_mechanism(acc, m, 0.8, w0, cfg).value;
            const double ref = two_level_relaxation_rate(w0, gamma, m, excited);
            const double got = relaxation_rate(two, acc, two.index_of(excited ? "+" : "-"), m, cfg).value;
            worst_closed = std::max(worst_closed, rel(got, ref));
        }
    o.require(worst_closed < 1e-10, "relaxation rate vs closed form " + sci(worst_closed));

    const System three = validate_system(resrelax::testing::three_level_spec(42));
    const double eps = 0.05;
    QuadratureConfig fixed;
    fixed.epsilon_schedule = {eps};
    fixed.epsilon_relative = false;
    fixed.abs_tol = 1e-13;
    fixed.rel_tol = 1e-11;
    const ReservoirKernel k = ReservoirKernel::accelerated_vacuum(2.5);
    double worst_fd = 0.0;
    for (const Transition& t : three.transitions())
        for (Mechanism m : {Mechanism::ReservoirFluctuation, Mechanism::SelfReaction}) {
            const double got = gamma_ab(three, k, t.a, t.b, m, t.omega_ab, fixed).value;
            const double ref = resrelax::testing::raw_gamma_ab(k, transition_elements(three, t.a, t.b), m, t.omega_ab,
                                                               eps, three.g(), 40.0);
            worst_fd = std::max(worst_fd, std::abs(got - ref) / std::max(1.0, std::abs(ref)));
        }
    o.require(worst_fd < 1e-8, "gamma_ab vs finite-difference oracle " + sci(worst_fd));
    o.detail << "closed-form rel error " << sci(worst_closed) << ", finite-difference oracle error " << sci(worst_fd);
}

void cutoff_behavior(Outcome& o)
{
    const ReservoirKernel in = ReservoirKernel::inertial_vacuum();
    const double w0 = 1.0;
    std::vector<double> d;
    for (double wc : {50.0, 100.0, 200.0})
        d.push_back(lamb_shift_two_level(in, 1.0, w0, with_cutoff(wc * w0)).value);
    const double ratio = (d[2] - d[1]) / (d[1] - d[0]);
    o.require(std::abs(ratio - 1.0) < 0.05, "log-increment ratio " + sci(ratio));

    const ReservoirKernel th = ReservoirKernel::thermal_ohmic(0.1, 10.0, 1.0);
    std::vector<double> t;
    for (double wc : {50.0, 100.0, 200.0, 400.0})
        t.push_back(lamb_shift_two_level(th, 1.0, w0, with_cutoff(wc)).value);
    bool shrinking = true;
    for (std::size_t i = 2; i < t.size(); ++i)
        shrinking = shrinking && std::abs(t[i] - t[i - 1]) < std::abs(t[i - 1] - t[i - 2]);
    o.require(shrinking, "thermal increments do not shrink");
    o.detail << "inertial increment ratio " << sci(ratio) << ", thermal last increment " << sci(std::abs(t[3] - t[2]));
}

void kk_engine(Outcome& o)
{
    Workspace ws("acceptance_kk");
    const auto r = ws.run("kk-check --config \"" + resrelax::testing::config_path("kk_check.ini") + "\"");
    o.require(r.exit_code == 0, "kk-check exit code " + std::to_string(r.exit_code));
    double worst = 0.0;
    const auto rows = resrelax::testing::parse_csv(r.out);
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].size() > 4 && rows[i][0] == "lorentzian")
            worst = std::max(worst, std::stod(rows[i][4]));
    o.require(rows.size() > 1, "no rows");
    o.require(worst < 1e-4, "max rel error " + sci(worst));
    o.detail << "Lorentzian max rel error " << sci(worst) << " at wc = 250 eta";
}

void determinism(Outcome& o)
{
    Workspace ws("acceptance_det");
    const auto thermal = ws.write("thermal.ini", "[system]\nomega_0 = 1\ng = 1\n[reservoir]\nmodel = thermal_ohmic\n"
                                                 "eta = 0.1\nomega_j = 10\ntemperature = 1\n[quadrature]\n"
                                                 "omega_cutoff = 30\n[evolve]\nh0 = 0.5\ntau_end = 20\n");
    using resrelax::testing::config_path;
    const std::vector<std::string> commands{
        "rates --config \"" + config_path("three_level.ini") + "\"",
        "rates --format json --config \"" + thermal.string() + "\"",
        "shift --method both --config \"" + thermal.string() + "\"",
        "shift --format csv --config \"" + thermal.string() + "\"",
        "evolve --config \"" + config_path("accelerated.ini") + "\"",
        "evolve --format json --config \"" + thermal.string() + "\"",
        "kk-check --config \"" + config_path("kk_check.ini") + "\"",
        "sweep --jobs 2 --config \"" + config_path("sweep_acceleration.ini") + "\"",
    };
    for (const std::string& cmd : commands) {
        const auto a = ws.run(cmd);
        const auto b = ws.run(cmd);
        o.require(a.exit_code == 0 && b.exit_code == 0, "'" + cmd + "' failed");
        o.require(!a.out.empty() && a.out == b.out, "'" + cmd + "' differs between runs");
    }
    // File outputs, including the evolve sidecar.
    const auto out1 = ws.dir() / "one.csv";
    const auto out2 = ws.dir() / "two.csv";
    ws.run("evolve --config \"" + thermal.string() + "\" --out \"" + out1.string() + "\"");
    ws.run("evolve --config \"" + thermal.string() + "\" --out \"" + out2.string() + "\"");
    o.require(Workspace::read(out1) == Workspace::read(out2), "evolve --out differs");
    o.require(Workspace::read(ws.dir() / "one.json") == Workspace::read(ws.dir() / "two.json"), "sidecar differs");
    o.detail << commands.size() + 1 << " commands run twice, byte-identical";
}

} // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {1, "sr shift identity", 30.0, sr_identity},
        {2, "spectral vs time-domain shifts", 120.0, kk_equivalence},
        {3, "inertial balance", 60.0, inertial_balance},
        {4, "Unruh ratio", 60.0, unruh_ratio},
        {5, "thermal detailed balance", 60.0, detailed_balance},
        {6, "relaxation dynamics", 60.0, relaxation_dynamics},
        {7, "Gamma consistency", 60.0, gamma_consistency},
        {8, "cutoff behavior", 120.0, cutoff_behavior},
        {9, "Kramers-Kronig engine", 10.0, kk_engine},
        {10, "determinism", 300.0, determinism},
    };
    int failed = 0;
    for (const Criterion& c : criteria) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.body(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.budget_s)
            o.require(false, "runtime " + sci(secs) + " s over budget " + sci(c.budget_s) + " s");
        std::printf("%s  %2d  %-32s %6.1fs  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), secs,
                    o.detail.str().c_str());
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
