#include "ccsim_cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>

#include "ccsim/hspec.hpp"
#include "ccsim/james.hpp"
#include "ccsim_cli/csv.hpp"

namespace ccsim::cli {

namespace {

std::string context_of(const Scenario& s)
{
    std::ostringstream os;
    os << "scheme=" << scheme_name(s.scheme) << " cutoff=" << s.cutoff;
    if (s.scheme == Scheme::BosonCavity || s.scheme == Scheme::TwoAxis)
        os << " p=" << s.p;
    return os.str();
}

void require_target(const Scenario& s, const std::string& check)
{
    if (!has_target(s))
        throw ConfigError("check '" + check + "' needs a built-in scheme");
}

verify::CheckReport unitarity(const Scenario& s)
{
    const Operator u = evolve::propagate_static(effective_terms(s), pulse_duration(s));
    double defect = ccsim::unitarity_defect(u.matrix());
    if (has_target(s))
        defect = std::max(defect, ccsim::unitarity_defect(ideal_target(s).matrix()));
    if (!(defect <= s.unitarity_bound)) {
        std::ostringstream os;
        os << "unitarity defect " << defect << " exceeds bound " << s.unitarity_bound;
        throw verify::NumericalFailure(os.str());
    }
    return verify::make_report("unitarity", defect, 1e-10, context_of(s));
}

verify::CheckReport anticommutation(const Scenario& s)
{
    require_target(s, "anticommutation");
    const auto space = scenario_space(s);
    const Operator c = ideal_target(s);
    verify::CheckReport r = s.scheme == Scheme::FermionTwoIon
                                ? verify::check_anticommutation(c, charge_fermion(space, 0, 1),
                                                                select(space, [](const BasisLabel&) { return true; }))
                                : verify::check_anticommutation(c, charge_boson(space, 0, 1),
                                                                total_n_at_most(space, {0, 1}, s.cutoff));
    r.context = context_of(s);
    return r;
}

verify::CheckReport conjugation(const Scenario& s)
{
    require_target(s, "conjugation");
    const auto space = scenario_space(s);
    const Operator c = ideal_target(s);
    try {
        if (s.scheme == Scheme::FermionTwoIon) {
            // Pseudo-spins on different ions commute, so the relation holds on
            // the sectors with at most one excited ion only.
            const auto sub = select(space, [](const BasisLabel& l) { return l.qubits[0] + l.qubits[1] <= 1; });
            const auto m1 = pauli(space, 0, Pauli::Minus);
            const auto m2 = pauli(space, 1, Pauli::Minus);
            auto fwd = verify::check_conjugation(c, m1, m2, 1, sub);
            const auto back = verify::check_conjugation(c, m2, m1, 1, sub);
            fwd.residual = std::max(fwd.residual, back.residual);
            fwd.passed = fwd.residual <= fwd.tolerance;
            fwd.context = context_of(s) + " sectors=ions_excited<=1";
            return fwd;
        }
        const auto sub = total_n_at_most(space, {0, 1}, s.cutoff - 1);
        const auto a = annihilator(space, 0);
        const auto b = annihilator(space, 1);
        auto fwd = verify::check_conjugation(c, a, b, s.p, sub);
        const auto back = verify::check_conjugation(c, b, a, s.p, sub);
        fwd.residual = std::max(fwd.residual, back.residual);
        fwd.passed = fwd.residual <= fwd.tolerance;
        fwd.context = context_of(s) + " sectors=N<=" + std::to_string(s.cutoff - 1);
        return fwd;
    } catch (const verify::LeakageError& e) {
        return verify::make_report("conjugation", std::numeric_limits<double>::infinity(), 1e-9,
                                   context_of(s) + " " + e.what());
    }
}

verify::CheckReport rwa(const Scenario& s, double tolerance)
{
    const auto cmp = verify::compare_full_vs_effective(s);
    if (cmp.failed) {
        std::ostringstream os;
        os << "full propagation: unitarity defect " << cmp.unitarity_defect << " exceeds bound " << s.unitarity_bound;
        throw verify::NumericalFailure(os.str());
    }
    return verify::make_report("rwa", cmp.infidelity, tolerance, context_of(s));
}

std::string csv_for_reports(const std::string& scenario, const std::vector<verify::CheckReport>& reports)
{
    std::ostringstream os;
    CsvWriter csv(os, {"scenario", "check", "residual", "tolerance", "passed", "context"});
    for (const auto& r : reports)
        csv.row({scenario, r.name, csv_real(r.residual), csv_real(r.tolerance), r.passed ? "true" : "false", r.context});
    return os.str();
}

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw ConfigError("cannot write " + path);
    f << text;
    if (!f)
        throw ConfigError("write failed: " + path);
}

std::string read_text(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw ConfigError("cannot read " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

// Output destination: --output, else the config's [output] csv, else stdout.
void emit(const std::string& text, const std::string& option_output, const std::filesystem::path& config_output,
          std::ostream& out)
{
    if (!option_output.empty())
        write_text(option_output, text);
    else if (!config_output.empty())
        write_text(config_output.string(), text);
    else
        out << text;
}

// 0 when there is nothing to compare or the tables match, 1 on mismatch.
int check_golden(const std::string& csv_text, const CommonOptions& options, std::ostream& err)
{
    if (options.golden.empty()) {
        if (options.bless)
            throw ConfigError("--bless needs --golden");
        return kOk;
    }
    if (options.bless) {
        write_text(options.golden, csv_text);
        err << "blessed " << options.golden << '\n';
        return kOk;
    }
    const auto expected = drop_column(parse_csv(read_text(options.golden)), "wall_time_ms");
    const auto actual = drop_column(parse_csv(csv_text), "wall_time_ms");
    if (expected == actual)
        return kOk;
    err << "golden mismatch against " << options.golden << '\n';
    for (std::size_t r = 0; r < std::max(expected.size(), actual.size()); ++r) {
        const bool same = r < expected.size() && r < actual.size() && expected[r] == actual[r];
        if (!same) {
            err << "  first differing record: " << r << '\n';
            break;
        }
    }
    return kCheckFailed;
}

void print_summary(const std::vector<verify::CheckReport>& reports, std::ostream& os)
{
    char line[256];
    for (const auto& r : reports) {
        std::snprintf(line, sizeof line, "%-4s %-22s residual %.3e  tolerance %.1e\n", r.passed ? "PASS" : "FAIL",
                      r.name.c_str(), r.residual, r.tolerance);
        os << line;
    }
}

// Shared error handling: maps exceptions onto exit codes.
int guarded(std::ostream& err, const std::function<int()>& body)
{
    try {
        return body();
    } catch (const verify::NumericalFailure& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumericalFailure;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const hspec::ParseError& e) {
        err << e.what() << '\n';
        return kConfigError;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::domain_error& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::out_of_range& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumericalFailure;
    }
}

RunConfig load_with_options(const std::string& path, const CommonOptions& options)
{
    RunConfig cfg = load_config(path);
    if (options.tol) {
        if (!(*options.tol >= 0.0))
            throw ConfigError("--tol must be >= 0");
        cfg.scenario.resonance_tol = *options.tol;
    }
    return cfg;
}

}  // namespace

std::vector<verify::CheckReport> run_checks(const Scenario& s, const std::vector<std::string>& checks,
                                            double rwa_tolerance)
{
    std::vector<verify::CheckReport> reports;
    for (const auto& name : checks) {
        if (name == "unitarity") {
            reports.push_back(unitarity(s));
        } else if (name == "anticommutation") {
            reports.push_back(anticommutation(s));
        } else if (name == "conjugation") {
            reports.push_back(conjugation(s));
        } else if (name == "pulse_condition") {
            require_target(s, name);
            reports.push_back(verify::check_pulse_condition(s));
        } else if (name == "effective_derivation") {
            require_target(s, name);
            reports.push_back(verify::check_effective_derivation(s));
        } else if (name == "cutoff_sensitivity") {
            require_target(s, name);
            reports.push_back(verify::check_cutoff_sensitivity(s));
        } else if (name == "rwa") {
            reports.push_back(rwa(s, rwa_tolerance));
        } else {
            throw ConfigError("unknown check '" + name + "'");
        }
    }
    return reports;
}

int cmd_run(const std::string& config_path, const CommonOptions& options, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const RunConfig cfg = load_with_options(config_path, options);
        // Build both Hamiltonians up front so malformed parameters surface as
        // config errors before any evolution.
        (void)rwa_terms(cfg.scenario);
        (void)effective_terms(cfg.scenario);
        const auto reports = run_checks(cfg.scenario, cfg.checks, cfg.scan_tolerance);
        const std::string csv = csv_for_reports(cfg.name, reports);
        emit(csv, options.output, cfg.output, out);
        print_summary(reports, err);
        const bool all_passed = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed; });
        const int golden = check_golden(csv, options, err);
        return all_passed && golden == kOk ? kOk : kCheckFailed;
    });
}

int cmd_verify(const std::string& config_path, const CommonOptions& options, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const RunConfig cfg = load_with_options(config_path, options);
        std::vector<std::string> checks = {"unitarity"};
        if (has_target(cfg.scenario))
            checks = {"unitarity", "anticommutation", "conjugation", "pulse_condition", "effective_derivation",
                      "cutoff_sensitivity"};
        const auto reports = run_checks(cfg.scenario, checks, cfg.scan_tolerance);
        out << cfg.name << " (" << scheme_name(cfg.scenario.scheme) << ")\n";
        print_summary(reports, out);
        const std::string csv = csv_for_reports(cfg.name, reports);
        if (!options.output.empty())
            write_text(options.output, csv);
        const bool all_passed = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed; });
        const int golden = check_golden(csv, options, err);
        return all_passed && golden == kOk ? kOk : kCheckFailed;
    });
}

int cmd_derive(const std::string& hspec_path, const CommonOptions& options, const DeriveOptions& derive,
               std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const std::string text = read_text(hspec_path);
        hspec::LowerOptions lower_options;
        lower_options.require_pairing = !derive.allow_unpaired;
        TermList terms(make_space({}, 0));
        try {
            terms = hspec::lower(hspec::parse(text), lower_options);
        } catch (const hspec::ParseError& e) {
            err << hspec_path << ":" << e.what() << '\n';
            return static_cast<int>(kConfigError);
        }
        if (options.tol && !(*options.tol >= 0.0))
            throw ConfigError("--tol must be >= 0");
        auto result = james::effective_hamiltonian(terms, options.tol);
        TermList effective = result.static_terms;
        for (const auto& [name, state] : derive.project) {
            const auto& qubits = effective.names().qubits;
            const auto it = std::find(qubits.begin(), qubits.end(), name);
            if (it == qubits.end())
                throw ConfigError("--project: no qubit named '" + name + "'");
            effective = james::project_qubit(effective, static_cast<std::size_t>(it - qubits.begin()), state);
        }
        std::ostringstream os;
        os << hspec::serialize(hspec::from_terms(effective));
        os << "# dropped " << result.dropped_terms.size() << " of " << result.product_count
           << " products (resonance tolerance " << csv_real(result.resonance_tol) << ")\n";
        if (!options.output.empty())
            write_text(options.output, os.str());
        else
            out << os.str();
        return static_cast<int>(kOk);
    });
}

int cmd_scan(const std::string& config_path, const std::string& param, const std::string& grid_text,
             const CommonOptions& options, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const RunConfig cfg = load_with_options(config_path, options);
        const auto grid = parse_grid(grid_text);

        std::function<Scenario(const Scenario&, double)> apply;
        if (param == "ratio") {
            apply = [](const Scenario& s, double v) { return with_ratio(s, v); };
        } else if (param == "delta") {
            apply = [](const Scenario& s, double v) { return with_detuning(s, v); };
        } else {
            apply = [param](const Scenario& s, double v) {
                Scenario copy = s;
                set_param(copy, param, v);
                return copy;
            };
        }
        // Reject bad names and values before spending time on propagation.
        for (double v : grid)
            (void)rwa_terms(apply(cfg.scenario, v));

        const auto points = verify::scan(cfg.scenario, grid, apply, options.jobs, cfg.scan_tolerance);

        std::ostringstream os;
        CsvWriter csv(os, {"param_value", "infidelity", "unitarity_defect", "wall_time_ms"});
        bool numerical = false;
        bool all_passed = true;
        for (const auto& p : points) {
            csv.row({csv_real(p.param_value), csv_real(p.infidelity), csv_real(p.unitarity_defect),
                     csv_real(p.wall_time_ms)});
            numerical = numerical || !(p.unitarity_defect <= cfg.scenario.unitarity_bound);
            all_passed = all_passed && p.report.passed;
        }
        emit(os.str(), options.output, cfg.output, out);
        if (numerical) {
            err << "numerical failure: unitarity bound exceeded in at least one scan point\n";
            return static_cast<int>(kNumericalFailure);
        }
        const int golden = check_golden(os.str(), options, err);
        return all_passed && golden == kOk ? static_cast<int>(kOk) : static_cast<int>(kCheckFailed);
    });
}

}  // namespace ccsim::cli
