#include "ccsim_cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace ccsim::cli {

namespace {

using Setter = std::function<void(Scenario&, std::string_view)>;

struct Key {
    std::string section;
    std::string name;
    std::vector<Scheme> schemes;  // empty = every scheme
    Setter set;
};

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

int parse_int(std::string_view text)
{
    text = trim(text);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw ConfigError("not an integer: '" + std::string(text) + "'");
    return v;
}

bool parse_bool(std::string_view text)
{
    text = trim(text);
    if (text == "true" || text == "1" || text == "yes" || text == "on")
        return true;
    if (text == "false" || text == "0" || text == "no" || text == "off")
        return false;
    throw ConfigError("not a boolean: '" + std::string(text) + "'");
}

template <typename Member>
Setter real(Member member)
{
    return [member](Scenario& s, std::string_view v) { member(s) = parse_real(v); };
}

template <typename Member>
Setter complex(Member member)
{
    return [member](Scenario& s, std::string_view v) { member(s) = parse_complex(v); };
}

const std::vector<Key>& key_table()
{
    using S = Scheme;
    static const std::vector<Key> table = {
        {"model", "cutoff", {}, [](Scenario& s, std::string_view v) {
             s.cutoff = parse_int(v);
             if (s.cutoff < 1)
                 throw ConfigError("cutoff must be at least 1");
         }},
        {"model", "p", {S::BosonCavity, S::TwoAxis}, [](Scenario& s, std::string_view v) {
             s.p = parse_int(v);
             if (s.p != 1 && s.p != -1)
                 throw ConfigError("p must be 1 or -1");
         }},
        {"model", "corrected_detunings", {S::BosonCavity},
         [](Scenario& s, std::string_view v) { s.corrected_detunings = parse_bool(v); }},
        {"model", "with_rabi", {S::TwoAxis}, [](Scenario& s, std::string_view v) { s.with_rabi = parse_bool(v); }},

        {"model", "Omega", {S::BosonCavity}, complex([](Scenario& s) -> Complex& { return s.boson.Omega; })},
        {"model", "eta_l", {S::BosonCavity}, real([](Scenario& s) -> double& { return s.boson.eta_l; })},
        {"model", "lambda_a", {S::BosonCavity}, complex([](Scenario& s) -> Complex& { return s.boson.lambda_a; })},
        {"model", "omega_l", {S::BosonCavity}, real([](Scenario& s) -> double& { return s.boson.omega_l; })},
        {"model", "omega_f", {S::BosonCavity}, real([](Scenario& s) -> double& { return s.boson.omega_f; })},
        {"model", "nu", {S::BosonCavity}, real([](Scenario& s) -> double& { return s.boson.nu; })},
        {"model", "omega0", {S::BosonCavity, S::TwoAxis}, [](Scenario& s, std::string_view v) {
             (s.scheme == S::BosonCavity ? s.boson.omega0 : s.two_axis.omega0) = parse_real(v);
         }},

        {"model", "eta_x", {S::TwoAxis}, real([](Scenario& s) -> double& { return s.two_axis.eta_x; })},
        {"model", "eta_y", {S::TwoAxis}, real([](Scenario& s) -> double& { return s.two_axis.eta_y; })},
        {"model", "Omega_x", {S::TwoAxis}, complex([](Scenario& s) -> Complex& { return s.two_axis.Omega_x; })},
        {"model", "Omega_y", {S::TwoAxis}, complex([](Scenario& s) -> Complex& { return s.two_axis.Omega_y; })},
        {"model", "nu_x", {S::TwoAxis}, real([](Scenario& s) -> double& { return s.two_axis.nu_x; })},
        {"model", "nu_y", {S::TwoAxis}, real([](Scenario& s) -> double& { return s.two_axis.nu_y; })},
        {"model", "omega_x", {S::TwoAxis}, real([](Scenario& s) -> double& { return s.two_axis.omega_x; })},
        {"model", "omega_y", {S::TwoAxis}, real([](Scenario& s) -> double& { return s.two_axis.omega_y; })},

        {"model", "lambda", {S::FermionTwoIon}, complex([](Scenario& s) -> Complex& { return s.fermion.lambda; })},
        {"model", "delta", {S::FermionTwoIon}, real([](Scenario& s) -> double& { return s.fermion.delta; })},

        {"james", "resonance_tol", {}, [](Scenario& s, std::string_view v) {
             const double tol = parse_real(v);
             if (!(tol >= 0.0))
                 throw ConfigError("resonance_tol must be >= 0");
             s.resonance_tol = tol;
         }},

        {"evolve", "tau", {}, [](Scenario& s, std::string_view v) {
             s.tau = parse_real(v);
             if (!(s.tau >= 0.0))
                 throw ConfigError("tau must be >= 0 (0 = from the pulse condition)");
             s.fermion.tau = s.tau;
         }},
        {"evolve", "steps", {}, [](Scenario& s, std::string_view v) {
             s.steps = parse_int(v);
             if (s.steps < 0)
                 throw ConfigError("steps must be >= 0 (0 = default)");
         }},
        {"evolve", "steps_per_period", {}, [](Scenario& s, std::string_view v) {
             s.steps_per_period = parse_int(v);
             if (s.steps_per_period < 1)
                 throw ConfigError("steps_per_period must be >= 1");
         }},
        {"evolve", "periodic", {}, [](Scenario& s, std::string_view v) { s.periodic = parse_bool(v); }},
        {"evolve", "unitarity_bound", {}, [](Scenario& s, std::string_view v) {
             s.unitarity_bound = parse_real(v);
             if (!(s.unitarity_bound > 0.0))
                 throw ConfigError("unitarity_bound must be > 0");
         }},
    };
    return table;
}

const Key* find_key(std::string_view section, std::string_view name)
{
    for (const auto& k : key_table())
        if (k.section == section && k.name == name)
            return &k;
    return nullptr;
}

void apply(const Key& key, Scenario& s, std::string_view value)
{
    if (!key.schemes.empty() && std::find(key.schemes.begin(), key.schemes.end(), s.scheme) == key.schemes.end())
        throw ConfigError("[" + key.section + "] " + key.name + " does not apply to scheme " +
                          std::string(scheme_name(s.scheme)));
    try {
        key.set(s, value);
    } catch (const ConfigError& e) {
        throw ConfigError("[" + key.section + "] " + key.name + ": " + e.what());
    }
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot read " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::vector<std::string> split_list(std::string_view text)
{
    std::vector<std::string> out;
    while (true) {
        const auto comma = text.find(',');
        const auto item = trim(text.substr(0, comma));
        if (item.empty() && (comma != std::string_view::npos || !out.empty()))
            throw ConfigError("empty item in list");
        if (!item.empty())
            out.emplace_back(item);
        if (comma == std::string_view::npos)
            break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

}  // namespace

const std::vector<std::string>& known_checks()
{
    static const std::vector<std::string> checks = {"unitarity",           "anticommutation",    "conjugation",
                                                    "pulse_condition",     "effective_derivation", "cutoff_sensitivity",
                                                    "rwa"};
    return checks;
}

std::vector<std::string> default_checks(Scheme scheme)
{
    switch (scheme) {
    case Scheme::BosonCavity:
        return {"unitarity", "anticommutation", "conjugation", "pulse_condition"};
    case Scheme::TwoAxis:
    case Scheme::FermionTwoIon:
        return {"unitarity", "anticommutation", "conjugation", "pulse_condition", "effective_derivation"};
    case Scheme::Custom:
        return {"unitarity"};
    }
    return {};
}

double parse_real(std::string_view text)
{
    text = trim(text);
    double v = 0.0;
    const char* first = text.data();
    if (!text.empty() && text.front() == '+')
        ++first;
    const auto [ptr, ec] = std::from_chars(first, text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v))
        throw ConfigError("not a finite number: '" + std::string(text) + "'");
    return v;
}

Complex parse_complex(std::string_view text)
{
    text = trim(text);
    if (text.empty())
        throw ConfigError("empty complex value");
    if (text.back() != 'i')
        return parse_real(text);
    std::string_view body = text.substr(0, text.size() - 1);
    // split at the last sign that is not the leading one or part of an exponent
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto imag_part = [&](std::string_view s) {
        s = trim(s);
        if (s.empty() || s == "+")
            return 1.0;
        if (s == "-")
            return -1.0;
        return parse_real(s);
    };
    try {
        if (split == std::string_view::npos)
            return {0.0, imag_part(body)};
        return {parse_real(body.substr(0, split)), imag_part(body.substr(split))};
    } catch (const ConfigError&) {
        throw ConfigError("not a complex number: '" + std::string(text) + "'");
    }
}

std::vector<double> parse_grid(std::string_view text)
{
    std::vector<double> out;
    for (const auto& item : split_list(text))
        out.push_back(parse_real(item));
    if (out.empty())
        throw ConfigError("grid is empty");
    return out;
}

void set_param(Scenario& s, const std::string& key, double value)
{
    for (const char* section : {"model", "james", "evolve"}) {
        if (const Key* k = find_key(section, key)) {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", value);
            apply(*k, s, buf);
            return;
        }
    }
    throw ConfigError("unknown parameter '" + key + "'");
}

RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir, const std::string& name)
{
    namespace pt = boost::property_tree;
    static const std::set<std::string> sections = {"scenario", "model", "james", "evolve", "verify", "output"};
    // The INI reader drops sections without keys; check headers up front.
    {
        std::istringstream lines(text);
        std::string line;
        while (std::getline(lines, line)) {
            const auto t = trim(line);
            if (t.size() >= 2 && t.front() == '[' && t.back() == ']') {
                const std::string name(trim(t.substr(1, t.size() - 2)));
                if (!sections.count(name))
                    throw ConfigError("unknown section [" + name + "]");
            }
        }
    }
    pt::ptree tree;
    try {
        std::istringstream in(text);
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError("config line " + std::to_string(e.line()) + ": " + e.message());
    }

    RunConfig cfg;
    cfg.name = name;

    const auto scheme_text = tree.get_optional<std::string>("scenario.scheme");
    if (!scheme_text)
        throw ConfigError("[scenario] scheme is required");
    const auto scheme = parse_scheme(std::string(trim(*scheme_text)));
    if (!scheme)
        throw ConfigError("unknown scheme '" + *scheme_text + "'");
    cfg.scenario.scheme = *scheme;

    bool explicit_checks = false;
    for (const auto& [section, body] : tree) {
        if (!body.data().empty())
            throw ConfigError("key '" + section + "' outside a section");
        if (!sections.count(section))
            throw ConfigError("unknown section [" + section + "]");
        for (const auto& [key, node] : body) {
            const std::string value = node.get_value<std::string>();
            if (section == "scenario") {
                if (key == "scheme")
                    continue;
                if (key == "name") {
                    cfg.name = std::string(trim(value));
                } else if (key == "hspec") {
                    if (cfg.scenario.scheme != Scheme::Custom)
                        throw ConfigError("[scenario] hspec needs scheme = custom");
                    cfg.scenario.custom_hspec = read_file(base_dir / std::string(trim(value)));
                } else {
                    throw ConfigError("unknown key [scenario] " + key);
                }
            } else if (section == "verify") {
                if (key == "checks") {
                    cfg.checks = split_list(value);
                    for (const auto& c : cfg.checks)
                        if (std::find(known_checks().begin(), known_checks().end(), c) == known_checks().end())
                            throw ConfigError("unknown check '" + c + "'");
                    explicit_checks = true;
                } else if (key == "scan_tolerance") {
                    cfg.scan_tolerance = parse_real(value);
                } else {
                    throw ConfigError("unknown key [verify] " + key);
                }
            } else if (section == "output") {
                if (key != "csv")
                    throw ConfigError("unknown key [output] " + key);
                cfg.output = base_dir / std::string(trim(value));
            } else if (section == "model" || section == "james" || section == "evolve") {
                const Key* k = find_key(section, key);
                if (!k)
                    throw ConfigError("unknown key [" + section + "] " + key);
                apply(*k, cfg.scenario, value);
            } else {
                throw ConfigError("unknown section [" + section + "]");
            }
        }
    }
    if (cfg.scenario.scheme == Scheme::Custom && cfg.scenario.custom_hspec.empty())
        throw ConfigError("scheme = custom needs [scenario] hspec");
    if (!explicit_checks)
        cfg.checks = default_checks(cfg.scenario.scheme);
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path)
{
    return parse_config(read_file(path), path.parent_path(), path.stem().string());
}

}  // namespace ccsim::cli
