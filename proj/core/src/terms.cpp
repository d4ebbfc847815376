#include "ccsim/terms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace ccsim {

namespace {

Matrix local_pauli(FactorKind kind)
{
    Matrix m = Matrix::Zero(2, 2);
    switch (kind) {
    case FactorKind::SigmaPlus:
        m(1, 0) = 1.0;
        break;
    case FactorKind::SigmaMinus:
        m(0, 1) = 1.0;
        break;
    case FactorKind::SigmaZ:
        m(0, 0) = -1.0;
        m(1, 1) = 1.0;
        break;
    default:
        throw std::logic_error("not a qubit factor");
    }
    return m;
}

const char* factor_name(FactorKind kind)
{
    switch (kind) {
    case FactorKind::Annihilate:
        return "a";
    case FactorKind::Create:
        return "adag";
    case FactorKind::SigmaPlus:
        return "sp";
    case FactorKind::SigmaMinus:
        return "sm";
    case FactorKind::SigmaZ:
        return "sz";
    }
    return "?";
}

FactorKind dagger(FactorKind kind)
{
    switch (kind) {
    case FactorKind::Annihilate:
        return FactorKind::Create;
    case FactorKind::Create:
        return FactorKind::Annihilate;
    case FactorKind::SigmaPlus:
        return FactorKind::SigmaMinus;
    case FactorKind::SigmaMinus:
        return FactorKind::SigmaPlus;
    case FactorKind::SigmaZ:
        return FactorKind::SigmaZ;
    }
    return kind;
}

// Reduces a 2x2 qubit-string matrix to (scale, factors). Entries of such
// products are 0 or +-1, so exact comparisons are safe.
std::pair<Complex, std::vector<FactorKind>> reduce_qubit(const Matrix& m)
{
    const Complex g = m(0, 0), e = m(1, 1), up = m(1, 0), down = m(0, 1);
    const Complex zero{};
    if (up != zero && g == zero && e == zero && down == zero)
        return {up, {FactorKind::SigmaPlus}};
    if (down != zero && g == zero && e == zero && up == zero)
        return {down, {FactorKind::SigmaMinus}};
    if (up != zero || down != zero)
        throw std::logic_error("qubit string is not a single product");
    if (g == zero && e == zero)
        return {zero, {}};
    if (g == e)
        return {g, {}};
    if (g == -e)
        return {e, {FactorKind::SigmaZ}};
    if (g == zero)
        return {e, {FactorKind::SigmaPlus, FactorKind::SigmaMinus}};
    if (e == zero)
        return {g, {FactorKind::SigmaMinus, FactorKind::SigmaPlus}};
    throw std::logic_error("qubit string is not a single product");
}

bool same_frequency(double a, double b, double scale)
{
    return std::abs(a - b) <= 1e-12 * std::max(scale, 1e-300);
}

}  // namespace

bool acts_on_mode(FactorKind kind)
{
    return kind == FactorKind::Annihilate || kind == FactorKind::Create;
}

OpProduct OpProduct::adjoint() const
{
    std::vector<Factor> out;
    out.reserve(factors_.size());
    for (auto it = factors_.rbegin(); it != factors_.rend(); ++it)
        out.push_back({dagger(it->kind), it->target});
    return OpProduct(std::move(out));
}

OpProduct operator*(const OpProduct& lhs, const OpProduct& rhs)
{
    std::vector<Factor> out = lhs.factors_;
    out.insert(out.end(), rhs.factors_.begin(), rhs.factors_.end());
    return OpProduct(std::move(out));
}

Matrix qubit_block(const OpProduct& product, std::size_t qubit)
{
    Matrix m = Matrix::Identity(2, 2);
    for (const auto& f : product.factors())
        if (!acts_on_mode(f.kind) && f.target == qubit)
            m = m * local_pauli(f.kind);
    return m;
}

ReducedProduct canonicalize(const OpProduct& product)
{
    std::map<std::size_t, std::vector<Factor>> modes;
    std::map<std::size_t, std::vector<Factor>> qubits;
    for (const auto& f : product.factors())
        (acts_on_mode(f.kind) ? modes : qubits)[f.target].push_back(f);

    Complex scale{1.0, 0.0};
    std::vector<Factor> out;
    for (const auto& [target, factors] : modes)
        out.insert(out.end(), factors.begin(), factors.end());
    for (const auto& [target, factors] : qubits) {
        Matrix m = Matrix::Identity(2, 2);
        for (const auto& f : factors)
            m = m * local_pauli(f.kind);
        auto [s, kinds] = reduce_qubit(m);
        if (s == Complex{})
            return {Complex{}, OpProduct{}};
        scale *= s;
        for (auto k : kinds)
            out.push_back({k, target});
    }
    return {scale, OpProduct(std::move(out))};
}

Operator materialize(const SpaceDescriptor& space, const OpProduct& product)
{
    for (const auto& f : product.factors()) {
        const bool mode = acts_on_mode(f.kind);
        if (mode && f.target >= space.mode_count())
            throw std::out_of_range("product references mode " + std::to_string(f.target) + " outside the space");
        if (!mode && f.target >= space.qubit_count())
            throw std::out_of_range("product references qubit " + std::to_string(f.target) + " outside the space");
    }

    const auto dim = space.dimension();
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    const auto& factors = product.factors();
    for (std::size_t col = 0; col < dim; ++col) {
        std::size_t idx = col;
        double weight = 1.0;
        bool alive = true;
        for (auto it = factors.rbegin(); it != factors.rend() && alive; ++it) {
            if (acts_on_mode(it->kind)) {
                const auto stride = space.mode_stride(it->target);
                const auto levels = space.levels(it->target);
                const auto n = (idx / stride) % levels;
                if (it->kind == FactorKind::Annihilate) {
                    if (n == 0) {
                        alive = false;
                    } else {
                        weight *= std::sqrt(static_cast<double>(n));
                        idx -= stride;
                    }
                } else {
                    if (n + 1 == levels) {
                        alive = false;
                    } else {
                        weight *= std::sqrt(static_cast<double>(n + 1));
                        idx += stride;
                    }
                }
            } else {
                const auto stride = space.qubit_stride(it->target);
                const auto s = (idx / stride) % 2;
                switch (it->kind) {
                case FactorKind::SigmaPlus:
                    if (s == 1)
                        alive = false;
                    else
                        idx += stride;
                    break;
                case FactorKind::SigmaMinus:
                    if (s == 0)
                        alive = false;
                    else
                        idx -= stride;
                    break;
                default:
                    weight *= s == 1 ? 1.0 : -1.0;
                    break;
                }
            }
        }
        if (alive)
            m(static_cast<Eigen::Index>(idx), static_cast<Eigen::Index>(col)) = weight;
    }
    return Operator(space, std::move(m));
}

SpaceNames SpaceNames::defaults(const SpaceDescriptor& space)
{
    SpaceNames names;
    for (std::size_t k = 0; k < space.mode_count(); ++k)
        names.modes.push_back("m" + std::to_string(k));
    for (std::size_t q = 0; q < space.qubit_count(); ++q)
        names.qubits.push_back("q" + std::to_string(q));
    return names;
}

std::string to_string(const OpProduct& product, const SpaceNames& names)
{
    if (product.is_identity())
        return "1";
    std::string out;
    for (const auto& f : product.factors()) {
        if (!out.empty())
            out += '*';
        const auto& pool = acts_on_mode(f.kind) ? names.modes : names.qubits;
        const std::string target = f.target < pool.size() ? pool[f.target] : "#" + std::to_string(f.target);
        out += factor_name(f.kind);
        out += '(';
        out += target;
        out += ')';
    }
    return out;
}

TermList::TermList(SpaceDescriptor space, std::optional<SpaceNames> names)
    : space_(std::move(space))
    , names_(names ? std::move(*names) : SpaceNames::defaults(space_))
{
    if (names_.modes.size() != space_.mode_count() || names_.qubits.size() != space_.qubit_count())
        throw std::invalid_argument("space names do not match the space shape");
}

void TermList::add(const OpProduct& product, Complex amplitude, double frequency)
{
    terms_.push_back(Term{materialize(space_, product), product, amplitude, frequency, to_string(product, names_)});
}

void TermList::add(Operator op, Complex amplitude, double frequency, std::string label)
{
    if (!(op.space() == space_))
        throw std::invalid_argument("term operator lives in a different space");
    terms_.push_back(Term{std::move(op), std::nullopt, amplitude, frequency, std::move(label)});
}

void TermList::add(Term term)
{
    if (!(term.op.space() == space_))
        throw std::invalid_argument("term operator lives in a different space");
    terms_.push_back(std::move(term));
}

void TermList::add_with_conjugate(const OpProduct& product, Complex amplitude, double frequency)
{
    add(product, amplitude, frequency);
    add(product.adjoint(), std::conj(amplitude), -frequency);
}

bool TermList::all_symbolic() const
{
    return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.product.has_value(); });
}

bool TermList::is_static() const
{
    return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.frequency == 0.0; });
}

double TermList::max_abs_frequency() const
{
    double m = 0.0;
    for (const auto& t : terms_)
        m = std::max(m, std::abs(t.frequency));
    return m;
}

Operator TermList::at(double t) const
{
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(space_.dimension()),
                            static_cast<Eigen::Index>(space_.dimension()));
    for (const auto& term : terms_)
        m += (term.amplitude * std::exp(Complex(0.0, term.frequency * t))) * term.op.matrix();
    return Operator(space_, std::move(m));
}

Operator TermList::summed() const
{
    Operator out(space_);
    for (const auto& term : terms_)
        out += term.amplitude * term.op;
    return out;
}

std::vector<TermList::Group> TermList::frequency_groups() const
{
    const double scale = max_abs_frequency();
    std::vector<std::size_t> order(terms_.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return terms_[a].frequency < terms_[b].frequency; });
    std::vector<Group> groups;
    for (auto idx : order) {
        if (!groups.empty() && same_frequency(groups.back().frequency, terms_[idx].frequency, scale)) {
            groups.back().members.push_back(idx);
        } else {
            groups.push_back({terms_[idx].frequency, {idx}});
        }
    }
    for (auto& g : groups)
        std::sort(g.members.begin(), g.members.end());
    return groups;
}

std::vector<std::pair<double, std::size_t>> TermList::pairing_defects() const
{
    const auto groups = frequency_groups();
    const double freq_scale = max_abs_frequency();
    double norm_scale = 0.0;
    for (const auto& t : terms_)
        norm_scale = std::max(norm_scale, std::abs(t.amplitude) * t.op.norm());

    const auto dim = static_cast<Eigen::Index>(space_.dimension());
    auto group_sum = [&](const Group& g) {
        Matrix s = Matrix::Zero(dim, dim);
        for (auto idx : g.members)
            s += terms_[idx].amplitude * terms_[idx].op.matrix();
        return s;
    };

    std::vector<std::pair<double, std::size_t>> out;
    for (const auto& g : groups) {
        if (norm_scale == 0.0) {
            out.emplace_back(0.0, g.members.front());
            continue;
        }
        const Matrix s = group_sum(g);
        Matrix partner = Matrix::Zero(dim, dim);
        for (const auto& h : groups)
            if (same_frequency(h.frequency, -g.frequency, freq_scale))
                partner = group_sum(h);
        out.emplace_back((s - partner.adjoint()).norm() / norm_scale, g.members.front());
    }
    return out;
}

double TermList::hermiticity_defect() const
{
    double worst = 0.0;
    for (const auto& [defect, member] : pairing_defects())
        worst = std::max(worst, defect);
    return worst;
}

bool TermList::is_hermitian_paired(double tol) const
{
    return hermiticity_defect() <= tol;
}

std::optional<std::string> TermList::first_unpaired_label(double tol) const
{
    std::optional<std::size_t> offender;
    for (const auto& [defect, member] : pairing_defects())
        if (defect > tol && (!offender || member < *offender))
            offender = member;
    if (!offender)
        return std::nullopt;
    return terms_[*offender].label;
}

TermList simplify(const TermList& terms, double relative_cutoff)
{
    if (!terms.all_symbolic())
        throw std::invalid_argument("simplify needs symbolic terms");
    const double freq_scale = terms.max_abs_frequency();

    struct Entry {
        OpProduct product;
        double frequency;
        Complex amplitude;
    };
    std::vector<Entry> merged;
    for (const auto& t : terms.terms()) {
        auto reduced = canonicalize(*t.product);
        if (reduced.scale == Complex{})
            continue;
        const Complex amp = t.amplitude * reduced.scale;
        auto it = std::find_if(merged.begin(), merged.end(), [&](const Entry& e) {
            return e.product == reduced.product && same_frequency(e.frequency, t.frequency, freq_scale);
        });
        if (it == merged.end())
            merged.push_back({reduced.product, t.frequency, amp});
        else
            it->amplitude += amp;
    }

    std::sort(merged.begin(), merged.end(), [](const Entry& x, const Entry& y) {
        if (x.product != y.product)
            return x.product < y.product;
        return x.frequency < y.frequency;
    });

    double largest = 0.0;
    for (const auto& e : merged)
        largest = std::max(largest, std::abs(e.amplitude));

    TermList out(terms.space(), terms.names());
    for (const auto& e : merged)
        if (std::abs(e.amplitude) > relative_cutoff * largest)
            out.add(e.product, e.amplitude, e.frequency);
    return out;
}

}  // namespace ccsim
