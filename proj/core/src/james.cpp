#include "ccsim/james.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ccsim/evolve.hpp"

namespace ccsim::james {

TermList integrate_terms(const TermList& h)
{
    TermList out(h.space(), h.names());
    for (const auto& term : h.terms()) {
        if (term.frequency == 0.0)
            throw std::invalid_argument("cannot integrate zero-frequency term '" + term.label +
                                        "': its antiderivative grows linearly in t");
        Term image = term;
        image.amplitude = term.amplitude / (kI * term.frequency);
        out.add(std::move(image));
    }
    return out;
}

double default_resonance_tolerance(const TermList& h)
{
    return 1e-9 * h.max_abs_frequency();
}

EffectiveResult effective_hamiltonian(const TermList& h, std::optional<double> resonance_tol)
{
    const TermList integrated = integrate_terms(h);
    const double tol = resonance_tol.value_or(default_resonance_tolerance(h));
    if (!(tol >= 0.0))
        throw std::invalid_argument("resonance tolerance must be non-negative");

    const bool symbolic = h.all_symbolic();
    const auto& outer = h.terms();
    const auto& inner = integrated.terms();
    const auto dim = static_cast<Eigen::Index>(h.space().dimension());

    TermList kept(h.space(), h.names());
    TermList dropped(h.space(), h.names());
    Matrix kept_sum = Matrix::Zero(dim, dim);
    bool any_kept = false;

    for (const auto& j : outer) {
        for (const auto& k : inner) {
            // -i * A_j * (A_k / (i nu_k)) = -A_j A_k / nu_k
            const Complex coeff = -kI * j.amplitude * k.amplitude;
            const double freq = j.frequency + k.frequency;
            const bool resonant = std::abs(freq) <= tol;
            if (symbolic) {
                const OpProduct product = *j.product * *k.product;
                if (resonant) {
                    kept.add(product, coeff / 2.0, 0.0);
                    kept.add(product.adjoint(), std::conj(coeff) / 2.0, 0.0);
                } else {
                    dropped.add(product, coeff, freq);
                }
            } else {
                Operator product = j.op * k.op;
                if (resonant) {
                    kept_sum += coeff * product.matrix();
                    any_kept = true;
                } else {
                    dropped.add(std::move(product), coeff, freq, "(" + j.label + ")*(" + k.label + ")");
                }
            }
        }
    }

    const std::size_t products = outer.size() * inner.size();
    if (symbolic)
        return {simplify(kept), std::move(dropped), tol, products};

    TermList result(h.space(), h.names());
    if (any_kept)
        result.add(Operator(h.space(), hermitian_part(kept_sum)), 1.0, 0.0, "effective");
    return {std::move(result), std::move(dropped), tol, products};
}

TermList project_qubit(const TermList& terms, std::size_t qubit, QubitState state)
{
    if (qubit >= terms.space().qubit_count())
        throw std::out_of_range("project_qubit: qubit index out of range");
    if (!terms.all_symbolic())
        throw std::invalid_argument("project_qubit needs symbolic terms");

    const auto s = static_cast<Eigen::Index>(state);
    TermList out(terms.space(), terms.names());
    for (const auto& term : terms.terms()) {
        const Complex value = qubit_block(*term.product, qubit)(s, s);
        if (value == Complex{})
            continue;
        std::vector<Factor> rest;
        for (const auto& f : term.product->factors())
            if (acts_on_mode(f.kind) || f.target != qubit)
                rest.push_back(f);
        out.add(OpProduct(std::move(rest)), term.amplitude * value, term.frequency);
    }
    return simplify(out);
}

double validate_effective(const TermList& full, const TermList& effective, double t_final, int steps)
{
    if (!(full.space() == effective.space()))
        throw std::invalid_argument("validate_effective: Hamiltonians live in different spaces");
    const auto exact = evolve::propagate_timedep(full, t_final, steps);
    const auto approx = evolve::propagate_static(effective, t_final);
    return 1.0 - evolve::fidelity_unitary_phase_insensitive(exact.propagator, approx);
}

}  // namespace ccsim::james
