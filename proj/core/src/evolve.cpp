#include "ccsim/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ccsim::evolve {

namespace {

// Terms merged by exactly equal frequency, so H(t) costs one scaled add per
// distinct frequency.
struct FrequencyTable {
    std::vector<double> frequencies;
    std::vector<Matrix> coefficients;

    explicit FrequencyTable(const TermList& h)
    {
        for (const auto& term : h.terms()) {
            auto it = std::find(frequencies.begin(), frequencies.end(), term.frequency);
            if (it == frequencies.end()) {
                frequencies.push_back(term.frequency);
                coefficients.push_back(term.amplitude * term.op.matrix());
            } else {
                coefficients[static_cast<std::size_t>(it - frequencies.begin())] += term.amplitude * term.op.matrix();
            }
        }
    }

    Matrix at(double t, Eigen::Index dim) const
    {
        Matrix m = Matrix::Zero(dim, dim);
        for (std::size_t k = 0; k < frequencies.size(); ++k)
            m += std::exp(Complex(0.0, frequencies[k] * t)) * coefficients[k];
        return m;
    }
};

void require_positive_steps(int steps)
{
    if (steps < 1)
        throw std::invalid_argument("step count must be at least 1");
}

void require_paired(const TermList& h)
{
    if (!h.is_hermitian_paired(1e-10))
        throw std::invalid_argument("Hamiltonian is not Hermitian-paired (offending term: " +
                                    h.first_unpaired_label(1e-10).value_or("?") + ")");
}

// Midpoint steps over [t0, t0 + span].
Matrix midpoint_product(const FrequencyTable& table, Eigen::Index dim, double t0, double span, int steps,
                        double& worst_defect)
{
    Matrix u = Matrix::Identity(dim, dim);
    const double dt = span / steps;
    for (int s = 0; s < steps; ++s) {
        const double t_mid = t0 + (s + 0.5) * dt;
        u = unitary_exp(table.at(t_mid, dim), dt) * u;
    }
    worst_defect = std::max(worst_defect, unitarity_defect(u));
    return u;
}

// Nearest unitary (polar factor). Removes the slow drift that repeated
// squaring would otherwise amplify geometrically.
Matrix nearest_unitary(const Matrix& m)
{
    Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

// base^exponent; each product's defect is recorded before it is projected
// back onto the unitary group.
Matrix matrix_power(Matrix base, long long exponent, double& worst_defect)
{
    const auto dim = base.rows();
    Matrix result = Matrix::Identity(dim, dim);
    auto settle = [&](Matrix m) {
        worst_defect = std::max(worst_defect, unitarity_defect(m));
        return nearest_unitary(m);
    };
    base = settle(std::move(base));
    while (exponent > 0) {
        if (exponent & 1)
            result = settle(base * result);
        exponent >>= 1;
        if (exponent > 0)
            base = settle(base * base);
    }
    return result;
}

}  // namespace

Operator propagate_static(const TermList& h, double t)
{
    if (!h.is_static())
        throw std::invalid_argument("propagate_static needs a static Hamiltonian");
    return Operator(h.space(), unitary_exp(hermitian_part(h.summed().matrix()), t));
}

int default_steps(const TermList& h, double t_final)
{
    const double periods = std::abs(t_final) * h.max_abs_frequency() / (2.0 * kPi);
    const double steps = std::ceil(200.0 * std::max(1.0, periods));
    if (!(steps < 2.0e9))
        throw std::overflow_error("default step count does not fit in an int");
    return static_cast<int>(steps);
}

EvolutionResult propagate_timedep(const TermList& h, double t_final, const EvolutionOptions& options)
{
    const int steps = options.steps == 0 ? default_steps(h, t_final) : options.steps;
    require_positive_steps(steps);
    if (options.sample_every < 1)
        throw std::invalid_argument("sample_every must be at least 1");
    require_paired(h);

    const auto dim = static_cast<Eigen::Index>(h.space().dimension());
    if (options.initial_state && options.initial_state->size() != dim)
        throw std::invalid_argument("initial state has the wrong dimension");

    const FrequencyTable table(h);
    const double dt = t_final / steps;
    Matrix u = Matrix::Identity(dim, dim);
    EvolutionResult result{Operator(h.space()), {}, {}, 0.0, false, steps};
    auto sample = [&](double t) {
        if (options.initial_state) {
            result.sample_times.push_back(t);
            result.sampled_states.push_back(u * *options.initial_state);
        }
    };
    sample(0.0);
    for (int s = 0; s < steps; ++s) {
        u = unitary_exp(table.at((s + 0.5) * dt, dim), dt) * u;
        result.unitarity_defect = std::max(result.unitarity_defect, unitarity_defect(u));
        if ((s + 1) % options.sample_every == 0 || s + 1 == steps)
            sample((s + 1) * dt);
    }
    result.propagator = Operator(h.space(), std::move(u));
    result.failed = !(result.unitarity_defect <= options.unitarity_bound);
    return result;
}

EvolutionResult propagate_timedep(const TermList& h, double t_final, int steps)
{
    EvolutionOptions options;
    options.steps = steps;
    require_positive_steps(steps);
    return propagate_timedep(h, t_final, options);
}

std::optional<double> common_period(const TermList& h, int max_denominator, double rel_tol)
{
    std::vector<double> nus;
    for (const auto& term : h.terms())
        if (term.frequency != 0.0)
            nus.push_back(std::abs(term.frequency));
    if (nus.empty())
        return std::nullopt;
    const double base = *std::min_element(nus.begin(), nus.end());

    long long denominator = 1;
    for (double nu : nus) {
        const double ratio = nu / base;
        bool found = false;
        for (long long q = 1; q <= max_denominator; ++q) {
            const double p = std::round(ratio * static_cast<double>(q));
            if (std::abs(p / static_cast<double>(q) - ratio) <= rel_tol * ratio) {
                denominator = std::lcm(denominator, q);
                found = true;
                break;
            }
        }
        if (!found || denominator > max_denominator)
            return std::nullopt;
    }
    return 2.0 * kPi * static_cast<double>(denominator) / base;
}

EvolutionResult propagate_periodic(const TermList& h, double t_final, int steps_per_period, double unitarity_bound)
{
    require_positive_steps(steps_per_period);
    require_paired(h);
    if (t_final < 0.0)
        throw std::invalid_argument("propagate_periodic needs t_final >= 0");
    const auto period = common_period(h);
    if (!period)
        throw std::invalid_argument("Hamiltonian has no common period");

    const auto dim = static_cast<Eigen::Index>(h.space().dimension());
    const FrequencyTable table(h);
    const auto whole = static_cast<long long>(std::floor(t_final / *period));
    const double rest = t_final - static_cast<double>(whole) * *period;

    double worst = 0.0;
    Matrix u = Matrix::Identity(dim, dim);
    int steps = 0;
    if (whole > 0) {
        const Matrix one_period = midpoint_product(table, dim, 0.0, *period, steps_per_period, worst);
        u = matrix_power(one_period, whole, worst);
        steps += steps_per_period;
    }
    if (rest > 0.0) {
        const int rest_steps =
            std::max(1, static_cast<int>(std::ceil(steps_per_period * rest / *period)));
        u = midpoint_product(table, dim, 0.0, rest, rest_steps, worst) * u;
        steps += rest_steps;
    }
    worst = std::max(worst, unitarity_defect(u));

    EvolutionResult result{Operator(h.space(), std::move(u)), {}, {}, worst, false, steps};
    result.failed = !(worst <= unitarity_bound);
    return result;
}

double fidelity_unitary_phase_insensitive(const Operator& u, const Operator& v)
{
    if (!(u.space() == v.space()))
        throw std::invalid_argument("fidelity: operators live in different spaces");
    const double d = static_cast<double>(u.dimension());
    return std::abs((u.matrix().adjoint() * v.matrix()).trace()) / d;
}

double fidelity_unitary_phase_insensitive(const Operator& u, const Operator& v, const Subspace& sub)
{
    if (!(u.space() == v.space()))
        throw std::invalid_argument("fidelity: operators live in different spaces");
    if (sub.dimension() == 0)
        throw std::invalid_argument("fidelity: empty subspace");
    const Matrix us = sub.restrict(u);
    const Matrix vs = sub.restrict(v);
    return std::abs((us.adjoint() * vs).trace()) / static_cast<double>(sub.dimension());
}

double leakage(const Operator& u, const Subspace& sub)
{
    const auto& idx = sub.indices();
    double sum = 0.0;
    for (auto c : idx) {
        for (Eigen::Index r = 0; r < u.matrix().rows(); ++r)
            if (!sub.contains(static_cast<std::size_t>(r)))
                sum += std::norm(u.matrix()(r, static_cast<Eigen::Index>(c)));
    }
    return std::sqrt(sum);
}

std::vector<SectorComparison> sectorwise_compare(const Operator& u, const Operator& v,
                                                 const std::vector<Subspace>& sectors, double leakage_bound)
{
    for (std::size_t i = 0; i < sectors.size(); ++i)
        for (std::size_t j = i + 1; j < sectors.size(); ++j)
            for (auto idx : sectors[i].indices())
                if (sectors[j].contains(idx))
                    throw std::invalid_argument("sectorwise_compare: sectors overlap");

    std::vector<SectorComparison> out;
    out.reserve(sectors.size());
    for (const auto& sector : sectors) {
        const double leak = std::max(leakage(u, sector), leakage(v, sector));
        out.push_back({fidelity_unitary_phase_insensitive(u, v, sector), leak, !(leak <= leakage_bound)});
    }
    return out;
}

}  // namespace ccsim::evolve
