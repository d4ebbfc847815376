#include "ccsim/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "ccsim/james.hpp"

namespace ccsim::verify {

namespace {

std::string describe(const Scenario& s)
{
    std::ostringstream os;
    os.precision(17);
    os << "scheme=" << scheme_name(s.scheme) << " cutoff=" << s.cutoff;
    if (s.scheme == Scheme::BosonCavity || s.scheme == Scheme::TwoAxis)
        os << " p=" << s.p;
    if (s.scheme != Scheme::Custom)
        os << " ratio=" << coupling_ratio(s);
    return os.str();
}

void require_same_space(const Operator& a, const Operator& b, const char* what)
{
    if (!(a.space() == b.space()))
        throw std::invalid_argument(std::string(what) + ": operators live in different spaces");
}

std::vector<evolve::SectorComparison> pulse_sectors(const Scenario& s)
{
    const Operator u = evolve::propagate_static(effective_terms(s), pulse_duration(s));
    return evolve::sectorwise_compare(u, ideal_target(s), comparison_sectors(s));
}

// Where the derived and the model effective Hamiltonians must agree exactly:
// ion in g for the bosonic schemes (all Fock states), cavity below the cutoff
// for the fermion scheme (a a' = a'a + 1 fails at the cutoff).
Subspace derivation_subspace(const Scenario& s)
{
    const auto space = scenario_space(s);
    if (s.scheme == Scheme::FermionTwoIon)
        return select(space, [&](const BasisLabel& l) { return l.occupations[0] < s.cutoff; });
    return select(space, [](const BasisLabel& l) { return l.qubits[0] == 0; });
}

}  // namespace

CheckReport make_report(std::string name, double residual, double tolerance, std::string context)
{
    return {std::move(name), residual, tolerance, residual <= tolerance, std::move(context)};
}

CheckReport check_anticommutation(const Operator& c, const Operator& q, const Subspace& sub, double tolerance)
{
    require_same_space(c, q, "check_anticommutation");
    const double residual = sub.restrict(anticommutator(c, q)).norm();
    return make_report("anticommutation", residual, tolerance);
}

CheckReport check_conjugation(const Operator& c, const Operator& a, const Operator& b, int p, const Subspace& sub,
                              double tolerance)
{
    require_same_space(c, a, "check_conjugation");
    require_same_space(c, b, "check_conjugation");
    if (p != 1 && p != -1)
        throw std::invalid_argument("check_conjugation: p must be +1 or -1");
    const double leak = evolve::leakage(c, sub);
    if (leak > 1e-8) {
        std::ostringstream os;
        os << "check_conjugation: subspace not closed under C (leakage " << leak << ")";
        throw LeakageError(os.str());
    }
    const Matrix diff = c.matrix().adjoint() * a.matrix() * c.matrix() - static_cast<double>(p) * b.matrix();
    double residual = 0.0;
    for (auto idx : sub.indices())
        residual = std::max(residual, diff.col(static_cast<Eigen::Index>(idx)).norm());
    return make_report("conjugation", residual, tolerance);
}

CheckReport check_unitarity(const Operator& u, const Subspace& sub, double tolerance)
{
    const Matrix m = u.matrix().adjoint() * u.matrix() - Matrix::Identity(u.matrix().rows(), u.matrix().cols());
    return make_report("unitarity", sub.restrict(m).norm(), tolerance);
}

CheckReport check_pulse_condition(const Scenario& s, double tolerance)
{
    const auto sectors = pulse_sectors(s);
    double worst = 1.0;
    std::string leaky;
    for (std::size_t k = 0; k < sectors.size(); ++k) {
        worst = std::min(worst, sectors[k].fidelity);
        if (sectors[k].flagged)
            leaky += (leaky.empty() ? "" : ",") + std::to_string(k);
    }
    std::ostringstream os;
    os.precision(17);
    os << describe(s) << " tau=" << pulse_duration(s);
    if (!leaky.empty())
        os << " leaky_sectors=" << leaky;
    return make_report("pulse_condition", 1.0 - worst, tolerance, os.str());
}

CheckReport check_effective_derivation(const Scenario& s, double tolerance)
{
    const auto derived = james::effective_hamiltonian(rwa_terms(s), s.resonance_tol);
    const Subspace sub = derivation_subspace(s);
    const Matrix d = sub.restrict(derived.static_terms.summed());
    const Matrix m = sub.restrict(effective_terms(s).summed());
    const double scale = m.cwiseAbs().maxCoeff();
    const double residual = (d - m).cwiseAbs().maxCoeff() / (scale > 0.0 ? scale : 1.0);
    std::ostringstream os;
    os << describe(s) << " dropped=" << derived.dropped_terms.size() << "/" << derived.product_count;
    return make_report("effective_derivation", residual, tolerance, os.str());
}

CheckReport check_cutoff_sensitivity(const Scenario& s, double tolerance)
{
    Scenario bigger = s;
    bigger.cutoff = s.cutoff + 1;
    const auto small = pulse_sectors(s);
    const auto large = pulse_sectors(bigger);
    double residual = 0.0;
    for (std::size_t k = 0; k < small.size() && k < large.size(); ++k)
        residual = std::max(residual, std::abs(small[k].fidelity - large[k].fidelity));
    std::ostringstream os;
    os << describe(s) << " compared_cutoff=" << bigger.cutoff;
    return make_report("cutoff_sensitivity", residual, tolerance, os.str());
}

FullVsEffective compare_full_vs_effective(const Scenario& s)
{
    Scenario eff = s;
    if (s.scheme == Scheme::BosonCavity)
        eff.corrected_detunings = true;
    const TermList full = rwa_terms(s);
    const double tau = pulse_duration(eff);

    evolve::EvolutionResult run{Operator(full.space()), {}, {}, 0.0, false, 0};
    if (s.periodic && s.steps == 0 && evolve::common_period(full)) {
        run = evolve::propagate_periodic(full, tau, s.steps_per_period, s.unitarity_bound);
    } else {
        evolve::EvolutionOptions options;
        options.steps = s.steps;
        options.unitarity_bound = s.unitarity_bound;
        run = evolve::propagate_timedep(full, tau, options);
    }
    const Operator target = evolve::propagate_static(effective_terms(eff), tau);
    const double fidelity = has_target(s)
                                ? evolve::fidelity_unitary_phase_insensitive(run.propagator, target, comparison_subspace(s))
                                : evolve::fidelity_unitary_phase_insensitive(run.propagator, target);
    return {1.0 - fidelity, run.unitarity_defect, run.failed};
}

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& f)
{
    std::size_t workers = jobs > 0 ? static_cast<std::size_t>(jobs) : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, n);
    if (workers <= 1) {
        for (std::size_t k = 0; k < n; ++k)
            f(k);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t k = next++; k < n; k = next++) {
                try {
                    f(k);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

ScanPoint scan_point(const Scenario& s, double param_value, double tolerance)
{
    const auto start = std::chrono::steady_clock::now();
    const auto cmp = compare_full_vs_effective(s);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    auto report = make_report("rwa", cmp.infidelity, tolerance, describe(s));
    if (cmp.failed)
        report.context += " unitarity_bound_exceeded";
    return {param_value, cmp.infidelity, cmp.unitarity_defect, ms, std::move(report)};
}

std::vector<ScanPoint> rwa_scan(const Scenario& s, const std::vector<double>& ratio_grid, int jobs, double tolerance)
{
    return scan(s, ratio_grid, [](const Scenario& base, double r) { return with_ratio(base, r); }, jobs, tolerance);
}

}  // namespace ccsim::verify
