// commands.cpp — rates, shift, evolve, kk-check and sweep

#include "resrelax/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_spline.h>

#include "resrelax/dynamics.hpp"
#include "resrelax/error.hpp"
#include "resrelax/quadrature.hpp"
#include "resrelax/rates.hpp"
#include "resrelax/shifts.hpp"

namespace resrelax {

namespace {

constexpr double kPi = std::numbers::pi;

// Ordered JSON object/array builder; numbers are rendered with format_double.
class Json {
public:
    static Json object() { return Json('{'); }
    static Json array() { return Json('['); }

    Json& add(const std::string& key, double v) { return scalar(key, number(v)); }
    Json& add(const std::string& key, const std::string& v) { return scalar(key, quote(v)); }
    Json& add(const std::string& key, const char* v) { return scalar(key, quote(v)); }
    Json& add(const std::string& key, bool v) { return scalar(key, v ? "true" : "false"); }
    Json& add(const std::string& key, std::size_t v) { return scalar(key, std::to_string(v)); }
    Json& add(const std::string& key, const Json& v)
    {
        items_.push_back({key, {}, std::make_shared<Json>(v)});
        return *this;
    }
    Json& add_null(const std::string& key) { return scalar(key, "null"); }
    Json& push(const Json& v) { return add("", v); }

    std::string str(int indent = 0) const
    {
        if (items_.empty())
            return open_ == '{' ? "{}" : "[]";
        const std::string pad(static_cast<std::size_t>(2 * (indent + 1)), ' ');
        std::string out(1, open_);
        out += '\n';
        for (std::size_t i = 0; i < items_.size(); ++i) {
            out += pad;
            if (open_ == '{')
                out += quote(items_[i].key) + ": ";
            out += items_[i].child ? items_[i].child->str(indent + 1) : items_[i].text;
            out += i + 1 < items_.size() ? ",\n" : "\n";
        }
        out += std::string(static_cast<std::size_t>(2 * indent), ' ');
        out += open_ == '{' ? '}' : ']';
        return out;
    }

private:
    struct Item {
        std::string key;
        std::string text;
        std::shared_ptr<Json> child;
    };

    explicit Json(char open) : open_(open) {}

    Json& scalar(const std::string& key, std::string text)
    {
        items_.push_back({key, std::move(text), nullptr});
        return *this;
    }

    static std::string number(double v) { return std::isfinite(v) ? format_double(v) : "null"; }

    static std::string quote(const std::string& s)
    {
        std::string out = "\"";
        for (char c : s) {
            switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
            }
        }
        return out + "\"";
    }

    char open_;
    std::vector<Item> items_;
};

std::vector<double> grid_point(const std::vector<std::pair<std::string, std::vector<double>>>& grid, std::size_t i)
{
    std::vector<double> coords(grid.size());
    for (std::size_t p = grid.size(); p-- > 0;) {
        const auto& values = grid[p].second;
        coords[p] = values[i % values.size()];
        i /= values.size();
    }
    return coords;
}

template <class F>
auto with_context(const std::string& what, F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const Error& e) {
        throw Error(e.code(), what + ": " + e.what());
    }
}

struct TwoLevel {
    double omega0;
};

TwoLevel require_two_level(const System& system, const char* command)
{
    if (system.size() != 2)
        throw Error(ErrorCode::ConfigError,
                    std::string(command) + " needs a two-level system (got " + std::to_string(system.size()) + " levels)");
    const double w = system.levels()[1].energy - system.levels()[0].energy;
    if (system.degenerate(0, 1))
        throw Error(ErrorCode::ConfigError, std::string(command) + " needs non-degenerate levels");
    return {w};
}

std::string level_name(const System& system, std::size_t i) { return system.levels()[i].label; }

struct Gammas {
    IntegralResult rf;
    IntegralResult sr;
};

Gammas gammas_at(const ReservoirKernel& kernel, double g, double omega, const QuadratureConfig& q)
{
    Gammas out;
    out.rf = with_context("gamma_rf(omega=" + format_double(omega) + ")",
                          [&] { return gamma_rf(kernel, g, omega, q); });
    out.sr = with_context("gamma_sr(omega=" + format_double(omega) + ")",
                          [&] { return gamma_sr(kernel, g, omega, q); });
    return out;
}

double ratio_error(double num, double num_err, double den, double den_err)
{
    if (den == 0.0)
        return std::numeric_limits<double>::infinity();
    return std::abs(num / den) * (num_err / std::max(std::abs(num), 1e-300) + den_err / std::abs(den));
}

void require_cutoff(const RunConfig& cfg)
{
    if (!cfg.has_omega_cutoff)
        throw Error(ErrorCode::ConfigError, "missing key 'omega_cutoff' in section [quadrature]");
}

} // namespace

std::string format_double(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12e", x);
    return buf;
}

int log_level()
{
    const char* env = std::getenv("RESRELAX_LOG");
    if (!env || !*env)
        return 0;
    const std::string v(env);
    if (v == "debug" || v == "2")
        return 2;
    if (v == "info" || v == "1")
        return 1;
    return 0;
}

void log_message(int level, const std::string& msg)
{
    static const int threshold = log_level();
    if (level <= threshold)
        std::cerr << "[resrelax] " << msg << '\n';
}

void write_atomically(const std::filesystem::path& path, const std::string& content)
{
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error(ErrorCode::ConfigError, "cannot write '" + tmp.string() + "'");
        out << content;
        out.flush();
        if (!out)
            throw Error(ErrorCode::ConfigError, "failed writing '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw Error(ErrorCode::ConfigError, "cannot move output into '" + path.string() + "': " + ec.message());
    }
}

// ---- rates ----

std::string cmd_rates(const RunConfig& cfg, const CommandOptions& opt)
{
    const System system = validate_system(cfg.system);
    const ReservoirKernel kernel = cfg.reservoir.make_kernel();
    log_message(1, "rates: " + kernel.name() + ", " + std::to_string(system.size()) + " levels");
    const RateTable table = with_context("rate table", [&] { return rate_table(system, kernel, cfg.quadrature); });

    if (opt.format == OutputFormat::Json) {
        Json rows = Json::array();
        for (const RateEntry& e : table.entries) {
            Json row = Json::object();
            row.add("mechanism", to_string(e.mechanism));
            if (e.per_transition) {
                row.add("a", level_name(system, e.a));
                row.add("b", level_name(system, e.b));
            } else {
                row.add("a", "*").add("b", "*");
            }
            row.add("omega", e.omega).add("gamma_or_Gamma", e.value).add("err", e.error);
            rows.push(row);
        }
        return rows.str() + "\n";
    }
    std::string out = "mechanism,a,b,omega,gamma_or_Gamma,err\n";
    for (const RateEntry& e : table.entries) {
        out += to_string(e.mechanism) + ",";
        out += e.per_transition ? level_name(system, e.a) + "," + level_name(system, e.b) : std::string("*,*");
        out += "," + format_double(e.omega) + "," + format_double(e.value) + "," + format_double(e.error) + "\n";
    }
    return out;
}

// ---- shift ----

std::string cmd_shift(const RunConfig& cfg, const CommandOptions& opt)
{
    require_cutoff(cfg);
    if (opt.method != "kk" && opt.method != "direct" && opt.method != "both")
        throw Error(ErrorCode::ConfigError, "--method must be kk, direct or both");
    const System system = validate_system(cfg.system);
    const ReservoirKernel kernel = cfg.reservoir.make_kernel();
    const QuadratureConfig& q = cfg.quadrature;
    const bool use_kk = opt.method != "direct";
    const bool use_direct = opt.method != "kk";

    std::vector<std::size_t> levels;
    if (cfg.shift_level)
        levels.push_back(with_context("[shift] level", [&] { return system.index_of(*cfg.shift_level); }));
    else
        for (std::size_t i = 0; i < system.size(); ++i)
            levels.push_back(i);

    std::optional<GammaCache> cache;
    if (use_kk)
        cache.emplace(kernel, system.g(), q);

    struct PerLevel {
        IntegralResult rf, sr;
        std::optional<double> err_cutoff;
        IntegralResult drf, dsr;
        double imag{0.0};
        std::optional<double> derr_cutoff;
    };
    const double wc = q.omega_cutoff;
    QuadratureConfig wide = q;
    wide.omega_cutoff = 2.0 * wc;
    const auto kk = [&](std::size_t a, Mechanism m, double cutoff) {
        return with_context("KK shift of level '" + level_name(system, a) + "' (" + to_string(m) + ")",
                            [&] { return shift_kk(system, *cache, a, m, cutoff); });
    };
    const auto direct = [&](std::size_t a, Mechanism m, const QuadratureConfig& c) {
        return with_context("direct shift of level '" + level_name(system, a) + "' (" + to_string(m) + ")",
                            [&] { return shift_direct_complex(system, kernel, a, m, c); });
    };

    // All levels are needed for relative shifts even when one is printed.
    std::vector<PerLevel> all(system.size());
    std::vector<std::size_t> needed = levels;
    if (system.size() >= 2) {
        needed.push_back(0);
        needed.push_back(system.size() - 1);
    }
    std::sort(needed.begin(), needed.end());
    needed.erase(std::unique(needed.begin(), needed.end()), needed.end());
    for (std::size_t a : needed) {
        log_message(1, "shift: level " + level_name(system, a));
        PerLevel& r = all[a];
        if (use_kk) {
            r.rf = kk(a, Mechanism::ReservoirFluctuation, wc);
            r.sr = kk(a, Mechanism::SelfReaction, wc);
            if (cfg.shift_cutoff_sensitivity)
                r.err_cutoff = std::abs(kk(a, Mechanism::ReservoirFluctuation, 2.0 * wc).value - r.rf.value) +
                               std::abs(kk(a, Mechanism::SelfReaction, 2.0 * wc).value - r.sr.value);
        }
        if (use_direct) {
            const DirectShift drf = direct(a, Mechanism::ReservoirFluctuation, q);
            const DirectShift dsr = direct(a, Mechanism::SelfReaction, q);
            r.drf = drf.real;
            r.dsr = dsr.real;
            r.imag = std::abs(drf.imag) + std::abs(dsr.imag);
            if (cfg.shift_cutoff_sensitivity)
                r.derr_cutoff = std::abs(direct(a, Mechanism::ReservoirFluctuation, wide).real.value - r.drf.value) +
                                std::abs(direct(a, Mechanism::SelfReaction, wide).real.value - r.dsr.value);
        }
    }

    const auto primary_rf = [&](std::size_t a) -> const IntegralResult& { return use_kk ? all[a].rf : all[a].drf; };
    const auto primary_sr = [&](std::size_t a) -> const IntegralResult& { return use_kk ? all[a].sr : all[a].dsr; };
    const auto primary_cut = [&](std::size_t a) { return use_kk ? all[a].err_cutoff : all[a].derr_cutoff; };

    double residual = 0.0, residual_err = 0.0;
    if (use_kk && use_direct)
        for (std::size_t a : needed) {
            residual = std::max({residual, std::abs(all[a].rf.value - all[a].drf.value),
                                 std::abs(all[a].sr.value - all[a].dsr.value)});
            residual_err = std::max({residual_err, all[a].rf.error + all[a].drf.error + all[a].rf.tail_bound,
                                     all[a].sr.error + all[a].dsr.error + all[a].sr.tail_bound});
        }

    if (opt.format == OutputFormat::Csv) {
        std::string out = "level,delta_e_rf,delta_e_sr,omega_c,err_quad,err_cutoff\n";
        for (std::size_t a : levels) {
            const auto cut = primary_cut(a);
            out += level_name(system, a) + "," + format_double(primary_rf(a).value) + "," +
                   format_double(primary_sr(a).value) + "," + format_double(wc) + "," +
                   format_double(primary_rf(a).error + primary_sr(a).error) + "," + (cut ? format_double(*cut) : "") +
                   "\n";
        }
        return out;
    }

    Json doc = Json::object();
    doc.add("method", opt.method).add("reservoir", kernel.name()).add("omega_c", wc);
    Json rows = Json::array();
    for (std::size_t a : levels) {
        Json row = Json::object();
        row.add("level", level_name(system, a)).add("index", a).add("energy", system.levels()[a].energy);
        row.add("delta_e_rf", primary_rf(a).value).add("delta_e_sr", primary_sr(a).value).add("omega_c", wc);
        row.add("err_rf", primary_rf(a).error).add("err_sr", primary_sr(a).error);
        row.add("err_quad", primary_rf(a).error + primary_sr(a).error);
        if (const auto cut = primary_cut(a))
            row.add("err_cutoff", *cut);
        else
            row.add_null("err_cutoff");
        if (use_kk && use_direct) {
            Json d = Json::object();
            d.add("delta_e_rf", all[a].drf.value).add("delta_e_sr", all[a].dsr.value);
            d.add("err_quad", all[a].drf.error + all[a].dsr.error).add("imag", all[a].imag);
            if (all[a].derr_cutoff)
                d.add("err_cutoff", *all[a].derr_cutoff);
            row.add("direct", d);
        } else if (use_direct) {
            row.add("imag", all[a].imag);
        }
        rows.push(row);
    }
    doc.add("levels", rows);
    if (system.size() >= 2) {
        const std::size_t lo = 0, hi = system.size() - 1;
        const IntegralResult& sr_hi = primary_sr(hi);
        const IntegralResult& sr_lo = primary_sr(lo);
        const IntegralResult& rf_hi = primary_rf(hi);
        const IntegralResult& rf_lo = primary_rf(lo);
        Json rel = Json::object();
        rel.add("upper", level_name(system, hi)).add("lower", level_name(system, lo));
        rel.add("value", sr_hi.value - sr_lo.value).add("err", sr_hi.error + sr_lo.error);
        doc.add("delta_sr_relative", rel);
        Json lamb = Json::object();
        lamb.add("delta_rf", rf_hi.value - rf_lo.value).add("delta_sr", sr_hi.value - sr_lo.value);
        lamb.add("delta_tot", rf_hi.value - rf_lo.value + sr_hi.value - sr_lo.value);
        lamb.add("err", rf_hi.error + rf_lo.error + sr_hi.error + sr_lo.error);
        doc.add("lamb_shift", lamb);
    }
    if (use_kk && use_direct) {
        doc.add("kk_vs_direct_residual", residual).add("kk_vs_direct_err", residual_err);
        doc.add("kk_vs_direct_agree", residual <= residual_err);
    }
    return doc.str() + "\n";
}

// ---- evolve ----

EvolveOutput cmd_evolve(const RunConfig& cfg, const CommandOptions&)
{
    if (!cfg.has_evolve)
        throw Error(ErrorCode::ConfigError, "missing section [evolve]");
    const System system = validate_system(cfg.system);
    const TwoLevel tl = require_two_level(system, "evolve");
    const ReservoirKernel kernel = cfg.reservoir.make_kernel();
    const EvolveParams& ev = cfg.evolve;
    const Gammas gm = gammas_at(kernel, system.g(), tl.omega0, cfg.quadrature);
    const EinsteinCoefficients ein = with_context("Einstein coefficients", [&] { return einstein_coefficients(gm.rf, gm.sr); });
    log_message(1, "evolve: gamma_rf=" + format_double(gm.rf.value) + " gamma_sr=" + format_double(gm.sr.value));

    const bool want_closed = ev.method != "ode";
    const bool want_ode = ev.method != "closed_form";
    const double grf = gm.rf.value;
    const double gsr = gm.sr.value;
    if (want_closed && !(grf > 0.0))
        throw Error(ErrorCode::ZeroRelaxationRate, "gamma_rf = " + format_double(grf) +
                                                       " is not positive; the closed form needs gamma_rf > 0 (use method = ode)");

    std::vector<PopulationState> ode;
    if (want_ode)
        ode = with_context("ODE integration",
                           [&] { return evolve_ode(grf, gsr, tl.omega0, ev.h0, ev.tau_end, StepConfig{ev.samples, {}}); });
    std::string csv = "tau,mean_energy,closed_form,ode\n";
    std::vector<PopulationState> closed;
    for (std::size_t i = 0; i < ev.samples; ++i) {
        const double tau = want_ode ? ode[i].tau
                                    : (i + 1 == ev.samples ? ev.tau_end
                                                           : ev.tau_end * static_cast<double>(i) /
                                                                 static_cast<double>(ev.samples - 1));
        std::string cf, od;
        double mean = 0.0;
        if (want_closed) {
            const PopulationState s = evolve_closed_form(grf, gsr, tl.omega0, ev.h0, tau);
            closed.push_back(s);
            cf = format_double(s.mean_energy);
            mean = s.mean_energy;
        }
        if (want_ode) {
            od = format_double(ode[i].mean_energy);
            if (!want_closed)
                mean = ode[i].mean_energy;
        }
        csv += format_double(tau) + "," + format_double(mean) + "," + cf + "," + od + "\n";
    }

    Json side = Json::object();
    side.add("reservoir", kernel.name()).add("omega_0", tl.omega0);
    side.add("gamma_rf", grf).add("gamma_rf_err", gm.rf.error).add("gamma_sr", gsr).add("gamma_sr_err", gm.sr.error);
    side.add("A_up", ein.a_up).add("A_down", ein.a_down).add("A_err", ein.error);
    if (ein.a_down != 0.0)
        side.add("A_up_over_A_down", ein.a_up / ein.a_down)
            .add("A_up_over_A_down_err", ratio_error(ein.a_up, ein.error, ein.a_down, ein.error));
    else
        side.add_null("A_up_over_A_down").add_null("A_up_over_A_down_err");
    if (grf > 0.0) {
        const Equilibrium eq = equilibrium_energy(grf, gsr, tl.omega0);
        const double frac_err = 0.5 * ratio_error(gsr, gm.sr.error, grf, gm.rf.error);
        side.add("equilibrium_energy", eq.energy).add("equilibrium_energy_err", tl.omega0 * frac_err);
        side.add("excitation_fraction", eq.excitation_fraction).add("excitation_fraction_err", frac_err);
        const auto& traj = want_ode ? ode : closed;
        const double floor = 1e-9 * std::max(std::abs(ev.h0 - eq.energy), 1e-300);
        // Error field: deviation of the fit from gamma_rf plus gamma_rf's own error.
        if (const auto rate = fitted_decay_rate(traj, eq.energy, floor))
            side.add("fitted_decay_rate", *rate).add("fitted_decay_rate_err", std::abs(*rate - grf) + gm.rf.error);
        else
            side.add_null("fitted_decay_rate").add_null("fitted_decay_rate_err");
    } else {
        side.add_null("equilibrium_energy").add_null("equilibrium_energy_err");
        side.add_null("excitation_fraction").add_null("excitation_fraction_err");
        side.add_null("fitted_decay_rate").add_null("fitted_decay_rate_err");
    }
    side.add("h0", ev.h0).add("tau_end", ev.tau_end).add("samples", ev.samples).add("method", ev.method);
    return {csv, side.str() + "\n"};
}

// ---- kk-check ----

namespace {

class Interpolant {
public:
    Interpolant(const std::vector<double>& x, const std::vector<double>& y)
        : acc_(gsl_interp_accel_alloc()), spline_(gsl_spline_alloc(gsl_interp_cspline, x.size())), lo_(x.front()),
          hi_(x.back())
    {
        gsl_spline_init(spline_, x.data(), y.data(), x.size());
    }
    ~Interpolant()
    {
        gsl_spline_free(spline_);
        gsl_interp_accel_free(acc_);
    }
    Interpolant(const Interpolant&) = delete;
    Interpolant& operator=(const Interpolant&) = delete;

    double operator()(double x) const
    {
        if (x < lo_ || x > hi_)
            return 0.0;
        return gsl_spline_eval(spline_, x, acc_);
    }

private:
    gsl_interp_accel* acc_;
    gsl_spline* spline_;
    double lo_, hi_;
};

} // namespace

KkCheckOutput cmd_kk_check(const RunConfig& cfg, const CommandOptions& opt)
{
    const KkCheckParams& k = cfg.kk_check;
    QuadratureConfig q = cfg.quadrature;
    q.omega_cutoff = k.omega_cutoff_factor * k.eta;
    const double eta = k.eta;
    const auto im = [eta](double w) { return -eta / (w * w + eta * eta); };
    const auto re = [eta](double w) { return w / (w * w + eta * eta); };
    const double peak = 1.0 / (2.0 * eta);

    struct Row {
        std::string suite;
        double omega, numeric, exact, rel, err;
        bool has_exact;
    };
    std::vector<Row> rows;
    KkCheckOutput out;
    for (double w : k.omegas) {
        const IntegralResult r = with_context("Kramers-Kronig transform at omega=" + format_double(w),
                                              [&] { return kk_real_from_imag(im, w, q); });
        const double exact = re(w);
        const double rel = std::abs(r.value - exact) / (exact != 0.0 ? std::abs(exact) : peak);
        out.suite_max_rel_error = std::max(out.suite_max_rel_error, rel);
        rows.push_back({"lorentzian", w, r.value, exact, rel, r.error + r.tail_bound, true});
    }

    double user_max = 0.0;
    bool has_user = false;
    if (!k.table_file.empty()) {
        const SampledFunction f = read_sampled_function(k.table_file);
        has_user = !f.re.empty();
        const Interpolant interp(f.omega, f.im);
        const std::function<double(double)> h = [&](double w) { return interp(w) / kPi; };
        for (std::size_t i = 1; i + 1 < f.omega.size(); ++i) {
            const double w = f.omega[i];
            const IntegralResult r = with_context("user table transform at omega=" + format_double(w), [&] {
                return pv_integral(h, w, f.omega.front(), f.omega.back(), q, std::span<const double>(f.omega));
            });
            Row row{"table", w, r.value, 0.0, 0.0, r.error, has_user};
            if (has_user) {
                row.exact = f.re[i];
                double scale = 0.0;
                for (double v : f.re)
                    scale = std::max(scale, std::abs(v));
                row.rel = std::abs(r.value - row.exact) / (row.exact != 0.0 ? std::abs(row.exact) : std::max(scale, 1e-300));
                user_max = std::max(user_max, row.rel);
            }
            rows.push_back(row);
        }
    }

    if (opt.format == OutputFormat::Json) {
        Json doc = Json::object();
        doc.add("eta", eta).add("omega_c", q.omega_cutoff);
        doc.add("suite_max_rel_error", out.suite_max_rel_error).add("threshold", kKkSuiteThreshold);
        doc.add("suite_pass", out.suite_max_rel_error <= kKkSuiteThreshold);
        if (has_user)
            doc.add("table_max_rel_error", user_max);
        Json arr = Json::array();
        for (const Row& r : rows) {
            Json o = Json::object();
            o.add("suite", r.suite).add("omega", r.omega).add("re_numeric", r.numeric);
            if (r.has_exact)
                o.add("re_reference", r.exact).add("rel_error", r.rel);
            o.add("err", r.err);
            arr.push(o);
        }
        doc.add("points", arr);
        out.report = doc.str() + "\n";
    } else {
        std::string csv = "suite,omega,re_numeric,re_reference,rel_error,err\n";
        for (const Row& r : rows)
            csv += r.suite + "," + format_double(r.omega) + "," + format_double(r.numeric) + "," +
                   (r.has_exact ? format_double(r.exact) : "") + "," + (r.has_exact ? format_double(r.rel) : "") + "," +
                   format_double(r.err) + "\n";
        out.report = csv;
    }
    return out;
}

// ---- sweep ----

std::string cmd_sweep(const RunConfig& cfg, const CommandOptions& opt)
{
    if (!cfg.has_sweep)
        throw Error(ErrorCode::ConfigError, "missing section [sweep]");
    const auto& grid = cfg.sweep.grid;
    std::size_t total = 1;
    for (const auto& [name, values] : grid) {
        total *= values.size();
        if (total > kMaxSweepPoints)
            throw Error(ErrorCode::ConfigError, "sweep grid exceeds " + std::to_string(kMaxSweepPoints) + " points");
    }
    const auto& quantities = cfg.sweep.quantities;
    const bool needs_cutoff = std::any_of(quantities.begin(), quantities.end(),
                                          [](const std::string& s) { return s.rfind("lamb_shift", 0) == 0; });

    // Validate every grid point before computing anything.
    std::vector<RunConfig> points(total, cfg);
    for (std::size_t i = 0; i < total; ++i) {
        const std::vector<double> coords = grid_point(grid, i);
        for (std::size_t p = 0; p < grid.size(); ++p)
            apply_sweep_parameter(points[i], grid[p].first, coords[p]);
        try {
            const System s = validate_system(points[i].system);
            require_two_level(s, "sweep");
            (void)points[i].reservoir.make_kernel();
            points[i].quadrature.validate();
        } catch (const Error& e) {
            throw Error(ErrorCode::ConfigError, "sweep point " + std::to_string(i) + ": " + e.what());
        }
        if (needs_cutoff)
            require_cutoff(points[i]);
    }

    std::vector<std::vector<std::pair<double, double>>> results(total);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::vector<std::optional<Error>> errors(total);

    const auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= total || failed.load())
                return;
            try {
                const RunConfig& pc = points[i];
                const System system = validate_system(pc.system);
                const TwoLevel tl = require_two_level(system, "sweep");
                const ReservoirKernel kernel = pc.reservoir.make_kernel();
                std::optional<Gammas> gm;
                const auto gammas = [&]() -> const Gammas& {
                    if (!gm)
                        gm = gammas_at(kernel, system.g(), tl.omega0, pc.quadrature);
                    return *gm;
                };
                for (const std::string& qn : quantities) {
                    double v = 0.0, e = 0.0;
                    if (qn == "gamma_rf") {
                        v = gammas().rf.value;
                        e = gammas().rf.error;
                    } else if (qn == "gamma_sr") {
                        v = gammas().sr.value;
                        e = gammas().sr.error;
                    } else if (qn == "A_up" || qn == "A_down" || qn == "A_up/A_down") {
                        const EinsteinCoefficients c = einstein_coefficients(gammas().rf, gammas().sr);
                        if (qn == "A_up") {
                            v = c.a_up;
                            e = c.error;
                        } else if (qn == "A_down") {
                            v = c.a_down;
                            e = c.error;
                        } else {
                            v = c.a_down != 0.0 ? c.a_up / c.a_down : std::numeric_limits<double>::quiet_NaN();
                            e = ratio_error(c.a_up, c.error, c.a_down, c.error);
                        }
                    } else if (qn == "equilibrium_energy") {
                        const Equilibrium eq = equilibrium_energy(gammas().rf.value, gammas().sr.value, tl.omega0);
                        v = eq.energy;
                        e = 0.5 * tl.omega0 * ratio_error(gammas().sr.value, gammas().sr.error, gammas().rf.value,
                                                          gammas().rf.error);
                    } else if (qn == "lamb_shift") {
                        const IntegralResult r = with_context("Lamb shift", [&] {
                            return lamb_shift_two_level(kernel, system.g(), tl.omega0, pc.quadrature);
                        });
                        v = r.value;
                        e = r.error;
                    } else if (qn == "lamb_shift_sr") {
                        const GammaCache cache(kernel, system.g(), pc.quadrature);
                        const IntegralResult up = shift_kk(system, cache, 1, Mechanism::SelfReaction);
                        const IntegralResult down = shift_kk(system, cache, 0, Mechanism::SelfReaction);
                        v = up.value - down.value;
                        e = up.error + down.error;
                    }
                    results[i].emplace_back(v, e);
                }
            } catch (const Error& e) {
                errors[i] = e;
                failed.store(true);
            }
        }
    };
    const unsigned jobs = std::max(1u, std::min<unsigned>(opt.jobs, static_cast<unsigned>(total)));
    log_message(1, "sweep: " + std::to_string(total) + " points on " + std::to_string(jobs) + " threads");
    if (jobs == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j)
            pool.emplace_back(work);
        for (auto& t : pool)
            t.join();
    }
    for (std::size_t i = 0; i < total; ++i)
        if (errors[i])
            throw Error(errors[i]->code(), "sweep point " + std::to_string(i) + ": " + errors[i]->what());

    if (opt.format == OutputFormat::Json) {
        Json arr = Json::array();
        for (std::size_t i = 0; i < total; ++i) {
            const std::vector<double> coords = grid_point(grid, i);
            for (std::size_t qi = 0; qi < quantities.size(); ++qi) {
                Json o = Json::object();
                for (std::size_t p = 0; p < grid.size(); ++p)
                    o.add(grid[p].first, coords[p]);
                o.add("quantity", quantities[qi]).add("value", results[i][qi].first).add("err", results[i][qi].second);
                arr.push(o);
            }
        }
        return arr.str() + "\n";
    }
    std::string header;
    for (const auto& [name, values] : grid)
        header += name + ",";
    std::string out = header + "quantity,value,err\n";
    for (std::size_t i = 0; i < total; ++i) {
        std::string prefix;
        for (double c : grid_point(grid, i))
            prefix += format_double(c) + ",";
        for (std::size_t qi = 0; qi < quantities.size(); ++qi)
            out += prefix + quantities[qi] + "," + format_double(results[i][qi].first) + "," +
                   format_double(results[i][qi].second) + "\n";
    }
    return out;
}

} // namespace resrelax
