// config.cpp — Parser for the run configuration and the CSV side files

#include "resrelax/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "resrelax/error.hpp"

namespace resrelax {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::ConfigError, msg); }

struct Value {
    std::string atom;
    std::vector<Value> items;
    bool is_list{false};
};

struct Entry {
    std::string raw;
    int line{0};
};

using Section = std::map<std::string, Entry>;

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& line)
{
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"')
            quoted = !quoted;
        else if (!quoted && (line[i] == '#' || line[i] == ';'))
            return line.substr(0, i);
    }
    return line;
}

int bracket_balance(const std::string& s)
{
    int depth = 0;
    bool quoted = false;
    for (char c : s) {
        if (c == '"')
            quoted = !quoted;
        else if (!quoted && (c == '[' || c == '('))
            ++depth;
        else if (!quoted && (c == ']' || c == ')'))
            --depth;
    }
    return depth;
}

class ValueParser {
public:
    ValueParser(const std::string& text, std::string where) : s_(text), where_(std::move(where)) {}

    Value parse()
    {
        Value v = value();
        skip_ws();
        if (pos_ != s_.size())
            fail(where_ + ": unexpected trailing text '" + s_.substr(pos_) + "'");
        return v;
    }

private:
    void skip_ws()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    Value value()
    {
        skip_ws();
        if (pos_ >= s_.size())
            fail(where_ + ": missing value");
        const char c = s_[pos_];
        if (c == '[' || c == '(') {
            const char close = c == '[' ? ']' : ')';
            ++pos_;
            Value v;
            v.is_list = true;
            skip_ws();
            if (pos_ < s_.size() && s_[pos_] == close) {
                ++pos_;
                return v;
            }
            for (;;) {
                v.items.push_back(value());
                skip_ws();
                if (pos_ >= s_.size())
                    fail(where_ + ": unterminated list");
                if (s_[pos_] == ',') {
                    ++pos_;
                    continue;
                }
                if (s_[pos_] == close) {
                    ++pos_;
                    return v;
                }
                fail(where_ + ": expected ',' or '" + std::string(1, close) + "'");
            }
        }
        if (c == '"') {
            const auto end = s_.find('"', pos_ + 1);
            if (end == std::string::npos)
                fail(where_ + ": unterminated string");
            Value v;
            v.atom = s_.substr(pos_ + 1, end - pos_ - 1);
            pos_ = end + 1;
            return v;
        }
        const auto start = pos_;
        while (pos_ < s_.size() && s_[pos_] != ',' && s_[pos_] != ']' && s_[pos_] != ')')
            ++pos_;
        Value v;
        v.atom = trim(s_.substr(start, pos_ - start));
        if (v.atom.empty())
            fail(where_ + ": empty value");
        return v;
    }

    const std::string& s_;
    std::string where_;
    std::size_t pos_{0};
};

double to_double(const std::string& s, const std::string& where)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        fail(where + ": '" + s + "' is not a number");
    }
    if (used != s.size())
        fail(where + ": '" + s + "' is not a number");
    if (!std::isfinite(v))
        fail(where + ": value must be finite");
    return v;
}

std::complex<double> to_complex(std::string s, const std::string& where)
{
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    if (s.empty())
        fail(where + ": empty complex literal");
    if (s.back() != 'j' && s.back() != 'i')
        return {to_double(s, where), 0.0};
    s.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    const auto imag_part = [&](const std::string& t) {
        if (t.empty() || t == "+")
            return 1.0;
        if (t == "-")
            return -1.0;
        return to_double(t, where);
    };
    if (split == std::string::npos)
        return {0.0, imag_part(s)};
    return {to_double(s.substr(0, split), where), imag_part(s.substr(split))};
}

class Document {
public:
    Document(const std::string& text)
    {
        std::istringstream in(text);
        std::string line;
        std::string current;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            std::string t = trim(strip_comment(line));
            if (t.empty())
                continue;
            if (t.front() == '[' && t.back() == ']' && t.find('=') == std::string::npos) {
                current = trim(t.substr(1, t.size() - 2));
                if (current.empty())
                    fail("line " + std::to_string(lineno) + ": empty section name");
                sections_[current];
                continue;
            }
            const auto eq = t.find('=');
            if (eq == std::string::npos)
                fail("line " + std::to_string(lineno) + ": expected 'key = value'");
            if (current.empty())
                fail("line " + std::to_string(lineno) + ": key outside of any section");
            const std::string key = trim(t.substr(0, eq));
            std::string raw = trim(t.substr(eq + 1));
            const int start = lineno;
            while (bracket_balance(raw) > 0 && std::getline(in, line)) {
                ++lineno;
                raw += " " + trim(strip_comment(line));
            }
            if (bracket_balance(raw) != 0)
                fail("line " + std::to_string(start) + ": unbalanced brackets in '" + key + "'");
            Section& sec = sections_[current];
            if (sec.count(key))
                fail("line " + std::to_string(start) + ": duplicate key '" + key + "' in [" + current + "]");
            sec[key] = {raw, start};
            order_[current].push_back(key);
        }
    }

    std::vector<std::string> section_names() const
    {
        std::vector<std::string> out;
        for (const auto& [name, sec] : sections_)
            out.push_back(name);
        return out;
    }
    bool has_section(const std::string& s) const { return sections_.count(s) != 0; }
    bool has(const std::string& s, const std::string& k) const
    {
        const auto it = sections_.find(s);
        return it != sections_.end() && it->second.count(k);
    }
    const std::vector<std::string>& keys(const std::string& s) const
    {
        static const std::vector<std::string> none;
        const auto it = order_.find(s);
        return it == order_.end() ? none : it->second;
    }
    std::string where(const std::string& s, const std::string& k) const
    {
        if (!has(s, k))
            return "[" + s + "] " + k;
        const auto& e = sections_.at(s).at(k);
        return "line " + std::to_string(e.line) + ": [" + s + "] " + k;
    }
    Value value(const std::string& s, const std::string& k) const
    {
        if (!has(s, k))
            fail("missing key '" + k + "' in section [" + s + "]");
        return ValueParser(sections_.at(s).at(k).raw, where(s, k)).parse();
    }
    std::string string(const std::string& s, const std::string& k) const
    {
        const Value v = value(s, k);
        if (v.is_list)
            fail(where(s, k) + ": expected a single value");
        return v.atom;
    }
    double number(const std::string& s, const std::string& k) const { return to_double(string(s, k), where(s, k)); }
    std::optional<double> optional_number(const std::string& s, const std::string& k) const
    {
        if (!has(s, k))
            return std::nullopt;
        return number(s, k);
    }
    bool boolean(const std::string& s, const std::string& k) const
    {
        const std::string v = string(s, k);
        if (v == "true" || v == "1" || v == "yes")
            return true;
        if (v == "false" || v == "0" || v == "no")
            return false;
        fail(where(s, k) + ": expected true or false");
    }
    std::vector<double> numbers(const std::string& s, const std::string& k) const
    {
        const Value v = value(s, k);
        std::vector<double> out;
        if (!v.is_list) {
            out.push_back(to_double(v.atom, where(s, k)));
            return out;
        }
        for (const Value& item : v.items) {
            if (item.is_list)
                fail(where(s, k) + ": expected a flat list of numbers");
            out.push_back(to_double(item.atom, where(s, k)));
        }
        return out;
    }
    std::vector<std::string> strings(const std::string& s, const std::string& k) const
    {
        const Value v = value(s, k);
        std::vector<std::string> out;
        if (!v.is_list) {
            out.push_back(v.atom);
            return out;
        }
        for (const Value& item : v.items) {
            if (item.is_list)
                fail(where(s, k) + ": expected a flat list");
            out.push_back(item.atom);
        }
        return out;
    }
    void reject_unknown(const std::string& s, const std::set<std::string>& allowed) const
    {
        for (const std::string& k : keys(s))
            if (!allowed.count(k))
                fail(where(s, k) + ": unknown key");
    }

private:
    std::map<std::string, Section> sections_;
    std::map<std::string, std::vector<std::string>> order_;
};

Eigen::MatrixXcd parse_matrix(const Value& v, const std::string& where)
{
    if (!v.is_list || v.items.empty())
        fail(where + ": a coupling operator must be a non-empty list of rows");
    const auto rows = static_cast<Eigen::Index>(v.items.size());
    Eigen::Index cols = -1;
    Eigen::MatrixXcd m;
    for (Eigen::Index r = 0; r < rows; ++r) {
        const Value& row = v.items[static_cast<std::size_t>(r)];
        if (!row.is_list)
            fail(where + ": matrix rows must be lists");
        if (cols < 0) {
            cols = static_cast<Eigen::Index>(row.items.size());
            m.resize(rows, cols);
        } else if (static_cast<Eigen::Index>(row.items.size()) != cols) {
            fail(where + ": ragged matrix rows");
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            const Value& x = row.items[static_cast<std::size_t>(c)];
            if (x.is_list)
                fail(where + ": matrix entries must be numbers");
            m(r, c) = to_complex(x.atom, where);
        }
    }
    return m;
}

void parse_system(const Document& doc, RunConfig& cfg)
{
    if (!doc.has_section("system"))
        fail("missing section [system]");
    doc.reject_unknown("system", {"levels", "coupling_ops", "g", "omega_0"});
    const double g = doc.number("system", "g");
    if (doc.has("system", "omega_0")) {
        if (doc.has("system", "levels") || doc.has("system", "coupling_ops"))
            fail("[system] omega_0 is a two-level shorthand and excludes levels/coupling_ops");
        cfg.omega0 = doc.number("system", "omega_0");
        if (!(*cfg.omega0 > 0.0))
            fail(doc.where("system", "omega_0") + ": must be positive");
        cfg.system = two_level_spec(*cfg.omega0, g);
        return;
    }
    const Value levels = doc.value("system", "levels");
    const std::string lw = doc.where("system", "levels");
    if (!levels.is_list)
        fail(lw + ": expected a list of (label, energy) pairs");
    SystemSpec spec;
    spec.g = g;
    for (const Value& item : levels.items) {
        if (!item.is_list || item.items.size() != 2 || item.items[0].is_list || item.items[1].is_list)
            fail(lw + ": each level must be (label, energy)");
        spec.levels.push_back({item.items[0].atom, to_double(item.items[1].atom, lw)});
    }
    const Value ops = doc.value("system", "coupling_ops");
    const std::string ow = doc.where("system", "coupling_ops");
    if (!ops.is_list || ops.items.empty())
        fail(ow + ": expected a list of matrices");
    // A single matrix may be given without the outer list.
    const bool single = ops.items.front().is_list && !ops.items.front().items.empty() &&
                        !ops.items.front().items.front().is_list;
    if (single)
        spec.coupling_ops.push_back(parse_matrix(ops, ow));
    else
        for (const Value& m : ops.items)
            spec.coupling_ops.push_back(parse_matrix(m, ow));
    cfg.system = std::move(spec);
}

void parse_reservoir(const Document& doc, RunConfig& cfg, const std::filesystem::path& base_dir)
{
    if (!doc.has_section("reservoir"))
        fail("missing section [reservoir]");
    doc.reject_unknown("reservoir", {"model", "acceleration", "eta", "omega_j", "temperature", "table_file"});
    ReservoirParams& r = cfg.reservoir;
    r.model = doc.string("reservoir", "model");
    if (r.model == "inertial_vacuum") {
    } else if (r.model == "accelerated_vacuum") {
        r.acceleration = doc.number("reservoir", "acceleration");
    } else if (r.model == "thermal_ohmic") {
        r.eta = doc.number("reservoir", "eta");
        r.omega_j = doc.number("reservoir", "omega_j");
        r.temperature = doc.number("reservoir", "temperature");
    } else if (r.model == "tabulated") {
        r.table_file = base_dir / doc.string("reservoir", "table_file");
        r.samples = read_kernel_table(r.table_file);
    } else {
        fail(doc.where("reservoir", "model") + ": unknown model '" + r.model +
             "' (inertial_vacuum, accelerated_vacuum, thermal_ohmic, tabulated)");
    }
}

void parse_quadrature(const Document& doc, RunConfig& cfg)
{
    QuadratureConfig& q = cfg.quadrature;
    if (doc.has_section("quadrature")) {
        doc.reject_unknown("quadrature", {"epsilon_schedule", "epsilon_relative", "omega_cutoff", "abs_tol", "rel_tol",
                                          "max_subdivisions", "u_max"});
        if (doc.has("quadrature", "epsilon_schedule"))
            q.epsilon_schedule = doc.numbers("quadrature", "epsilon_schedule");
        if (doc.has("quadrature", "epsilon_relative"))
            q.epsilon_relative = doc.boolean("quadrature", "epsilon_relative");
        if (doc.has("quadrature", "omega_cutoff")) {
            q.omega_cutoff = doc.number("quadrature", "omega_cutoff");
            cfg.has_omega_cutoff = true;
        }
        if (auto v = doc.optional_number("quadrature", "abs_tol"))
            q.abs_tol = *v;
        if (auto v = doc.optional_number("quadrature", "rel_tol"))
            q.rel_tol = *v;
        if (auto v = doc.optional_number("quadrature", "max_subdivisions")) {
            if (*v != std::floor(*v) || *v < 1 || *v > 1e9)
                fail(doc.where("quadrature", "max_subdivisions") + ": expected a positive integer");
            q.max_subdivisions = static_cast<int>(*v);
        }
        if (auto v = doc.optional_number("quadrature", "u_max"))
            q.u_max = *v;
    }
    try {
        q.validate();
    } catch (const Error& e) {
        fail(std::string("[quadrature] ") + e.what());
    }
}

std::size_t positive_count(const Document& doc, const std::string& s, const std::string& k)
{
    const double v = doc.number(s, k);
    if (v != std::floor(v) || v < 2 || v > 1e7)
        fail(doc.where(s, k) + ": expected an integer >= 2");
    return static_cast<std::size_t>(v);
}

void parse_commands(const Document& doc, RunConfig& cfg, const std::filesystem::path& base_dir)
{
    if (doc.has_section("shift")) {
        doc.reject_unknown("shift", {"level", "cutoff_sensitivity"});
        if (doc.has("shift", "level"))
            cfg.shift_level = doc.string("shift", "level");
        if (doc.has("shift", "cutoff_sensitivity"))
            cfg.shift_cutoff_sensitivity = doc.boolean("shift", "cutoff_sensitivity");
    }
    if (doc.has_section("evolve")) {
        doc.reject_unknown("evolve", {"h0", "tau_end", "samples", "method"});
        cfg.has_evolve = true;
        EvolveParams& e = cfg.evolve;
        e.h0 = doc.number("evolve", "h0");
        e.tau_end = doc.number("evolve", "tau_end");
        if (!(e.tau_end > 0.0))
            fail(doc.where("evolve", "tau_end") + ": must be positive");
        if (doc.has("evolve", "samples"))
            e.samples = positive_count(doc, "evolve", "samples");
        if (doc.has("evolve", "method")) {
            e.method = doc.string("evolve", "method");
            if (e.method != "closed_form" && e.method != "ode" && e.method != "both")
                fail(doc.where("evolve", "method") + ": expected closed_form, ode or both");
        }
    }
    if (doc.has_section("kk_check")) {
        doc.reject_unknown("kk_check", {"omegas", "eta", "omega_cutoff_factor", "table_file"});
        KkCheckParams& k = cfg.kk_check;
        if (doc.has("kk_check", "omegas"))
            k.omegas = doc.numbers("kk_check", "omegas");
        if (auto v = doc.optional_number("kk_check", "eta")) {
            if (!(*v > 0.0))
                fail(doc.where("kk_check", "eta") + ": must be positive");
            k.eta = *v;
        }
        if (auto v = doc.optional_number("kk_check", "omega_cutoff_factor")) {
            if (!(*v > 1.0))
                fail(doc.where("kk_check", "omega_cutoff_factor") + ": must exceed 1");
            k.omega_cutoff_factor = *v;
        }
        if (doc.has("kk_check", "table_file")) {
            k.table_file = base_dir / doc.string("kk_check", "table_file");
            read_sampled_function(k.table_file); // fail fast on bad data
        }
    }
    if (doc.has_section("sweep")) {
        cfg.has_sweep = true;
        const auto& names = sweep_parameter_names();
        std::size_t points = 1;
        for (const std::string& key : doc.keys("sweep")) {
            if (key == "quantities")
                continue;
            if (std::find(names.begin(), names.end(), key) == names.end())
                fail(doc.where("sweep", key) + ": unknown sweep parameter");
            std::vector<double> values = doc.numbers("sweep", key);
            if (values.empty())
                fail(doc.where("sweep", key) + ": empty grid");
            points *= values.size();
            if (points > kMaxSweepPoints)
                fail("[sweep] grid has more than " + std::to_string(kMaxSweepPoints) + " points");
            cfg.sweep.grid.emplace_back(key, std::move(values));
        }
        cfg.sweep.quantities = doc.strings("sweep", "quantities");
        static const std::set<std::string> known{"gamma_rf", "gamma_sr",  "A_up",      "A_down", "A_up/A_down",
                                                 "equilibrium_energy", "lamb_shift", "lamb_shift_sr"};
        for (const std::string& q : cfg.sweep.quantities)
            if (!known.count(q))
                fail(doc.where("sweep", "quantities") + ": unknown quantity '" + q + "'");
        if (cfg.sweep.quantities.empty())
            fail(doc.where("sweep", "quantities") + ": no quantities requested");
    }
}

std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ','))
        out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

std::vector<std::vector<double>> read_csv(const std::filesystem::path& path, const std::vector<std::string>& required,
                                          const std::vector<std::string>& optional, std::vector<bool>& present)
{
    std::ifstream in(path);
    if (!in)
        fail("cannot open '" + path.string() + "'");
    std::string line;
    if (!std::getline(in, line))
        fail("'" + path.string() + "' is empty");
    const std::vector<std::string> header = split_csv_line(trim(line));
    std::vector<std::string> expected = required;
    present.assign(optional.size(), false);
    for (std::size_t i = 0; i < optional.size() && header.size() > expected.size(); ++i) {
        expected.push_back(optional[i]);
        present[i] = true;
    }
    if (header != expected) {
        std::string want;
        for (const auto& h : required)
            want += (want.empty() ? "" : ",") + h;
        fail("'" + path.string() + "': expected header '" + want + "'");
    }
    std::vector<std::vector<double>> columns(expected.size());
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty())
            continue;
        const auto cells = split_csv_line(line);
        const std::string where = path.string() + ":" + std::to_string(lineno);
        if (cells.size() != expected.size())
            fail(where + ": expected " + std::to_string(expected.size()) + " columns");
        for (std::size_t c = 0; c < cells.size(); ++c) {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(cells[c], &used);
            } catch (const std::exception&) {
                fail(where + ": '" + cells[c] + "' is not a number");
            }
            if (used != cells[c].size() || !std::isfinite(v))
                fail(where + ": '" + cells[c] + "' is not a finite number");
            columns[c].push_back(v);
        }
    }
    return columns;
}

} // namespace

ReservoirKernel ReservoirParams::make_kernel() const
{
    if (model == "inertial_vacuum")
        return ReservoirKernel::inertial_vacuum();
    if (model == "accelerated_vacuum")
        return ReservoirKernel::accelerated_vacuum(acceleration);
    if (model == "thermal_ohmic")
        return ReservoirKernel::thermal_ohmic(eta, omega_j, temperature);
    if (model == "tabulated")
        return ReservoirKernel::tabulated(samples);
    fail("unknown reservoir model '" + model + "'");
}

TabulatedKernelSamples read_kernel_table(const std::filesystem::path& path)
{
    std::vector<bool> present;
    auto cols = read_csv(path, {"u", "Cs", "Ca"}, {}, present);
    TabulatedKernelSamples s;
    s.u = std::move(cols[0]);
    s.cs = std::move(cols[1]);
    s.ca = std::move(cols[2]);
    for (std::size_t i = 1; i < s.u.size(); ++i)
        if (!(s.u[i] > s.u[i - 1]))
            fail("'" + path.string() + "': u must be strictly increasing");
    return s;
}

SampledFunction read_sampled_function(const std::filesystem::path& path)
{
    std::vector<bool> present;
    auto cols = read_csv(path, {"omega", "im"}, {"re"}, present);
    SampledFunction f;
    f.omega = std::move(cols[0]);
    f.im = std::move(cols[1]);
    if (present[0])
        f.re = std::move(cols[2]);
    if (f.omega.size() < 3)
        fail("'" + path.string() + "': at least three samples are required");
    for (std::size_t i = 1; i < f.omega.size(); ++i)
        if (!(f.omega[i] > f.omega[i - 1]))
            fail("'" + path.string() + "': omega must be strictly increasing");
    return f;
}

const std::vector<std::string>& sweep_parameter_names()
{
    static const std::vector<std::string> names{"omega_0", "g", "acceleration", "temperature",
                                                "eta",     "omega_j", "omega_cutoff"};
    return names;
}

void apply_sweep_parameter(RunConfig& cfg, const std::string& name, double value)
{
    if (name == "omega_0") {
        if (!cfg.omega0)
            fail("sweeping omega_0 requires the [system] omega_0 shorthand");
        cfg.omega0 = value;
        cfg.system = two_level_spec(value, cfg.system.g);
    } else if (name == "g") {
        cfg.system.g = value;
    } else if (name == "acceleration" || name == "temperature" || name == "eta" || name == "omega_j") {
        const std::string owner = name == "acceleration" ? "accelerated_vacuum" : "thermal_ohmic";
        if (cfg.reservoir.model != owner)
            fail("sweep parameter '" + name + "' does not apply to model '" + cfg.reservoir.model + "'");
        if (name == "acceleration")
            cfg.reservoir.acceleration = value;
        else if (name == "temperature")
            cfg.reservoir.temperature = value;
        else if (name == "eta")
            cfg.reservoir.eta = value;
        else
            cfg.reservoir.omega_j = value;
    } else if (name == "omega_cutoff") {
        cfg.quadrature.omega_cutoff = value;
        cfg.has_omega_cutoff = true;
    } else {
        fail("unknown sweep parameter '" + name + "'");
    }
}

RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir)
{
    const Document doc(text);
    static const std::set<std::string> sections{"system", "reservoir", "quadrature", "shift",
                                                "evolve", "kk_check",  "sweep"};
    for (const std::string& name : doc.section_names())
        if (!sections.count(name))
            fail("unknown section [" + name + "]");
    RunConfig cfg;
    parse_system(doc, cfg);
    parse_reservoir(doc, cfg, base_dir);
    parse_quadrature(doc, cfg);
    parse_commands(doc, cfg, base_dir);
    // Fail fast: every module precondition is checked before any work starts.
    try {
        (void)validate_system(cfg.system);
        (void)cfg.reservoir.make_kernel();
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ConfigError)
            throw;
        fail(e.what());
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path)
{
    if (!std::filesystem::is_regular_file(path))
        fail("config file '" + path.string() + "' does not exist");
    std::ifstream in(path);
    if (!in)
        fail("cannot open config file '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.parent_path());
}

} // namespace resrelax
