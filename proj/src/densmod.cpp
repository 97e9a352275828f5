#include "cohomolab/densmod.hpp"

#include <algorithm>
#include <string>

namespace cohomolab {

namespace {

void accumulate(std::map<SectorKey, Polynomial>& terms, const OperatorMonomial& m, const Rational& c)
{
    if (c.is_zero())
        return;
    auto& p = terms[m.sector];
    p += Polynomial::monomial(c, m.degree);
    if (p.is_zero())
        terms.erase(m.sector);
}

Index find_index(const std::vector<OperatorMonomial>& basis, const OperatorMonomial& m)
{
    const auto it = std::lower_bound(basis.begin(), basis.end(), m);
    if (it == basis.end() || *it != m)
        return -1;
    return static_cast<Index>(it - basis.begin());
}

Polynomial component(const SuperFunction& f, int flag)
{
    return flag ? f.odd_part() : f.even_part();
}

}  // namespace

Rational Weights::delta() const
{
    Rational d = mu;
    for (const auto& l : lambda)
        d -= l;
    return d;
}

ContactField generator_field(Generator g)
{
    switch (g) {
    case Generator::X1:
        return ContactField::x1();
    case Generator::Xx:
        return ContactField::xx();
    case Generator::Xtheta:
        return ContactField::xtheta();
    }
    throw std::invalid_argument("unknown generator");
}

const char* generator_name(Generator g)
{
    switch (g) {
    case Generator::X1:
        return "X_1";
    case Generator::Xx:
        return "X_x";
    case Generator::Xtheta:
        return "X_theta";
    }
    return "?";
}

bool classical_truncation_valid(const Weights& w, const TruncationSpec& t)
{
    if (t.max_order < 0 || t.max_degree < 0)
        return false;
    const Rational d = w.delta();
    if (!d.is_integer())
        return true;
    const Rational bad = d + Rational(t.max_degree + 1);
    if (bad.sign() < 0)
        return true;
    return Rational(t.max_order) < bad;
}

Rational monomial_weight(const OperatorMonomial& m, const Weights& w)
{
    return Rational(m.degree) + w.delta_eps(m.sector.eps) + Rational(m.sector.theta, 2) -
           Rational(m.sector.alpha.total());
}

MonomialCombination act_monomial(Generator g, const OperatorMonomial& m, const Weights& w)
{
    MonomialCombination out;
    const auto& s = m.sector;
    switch (g) {
    case Generator::X1:
        if (m.degree > 0)
            out.emplace_back(OperatorMonomial{s, m.degree - 1}, Rational(m.degree));
        break;
    case Generator::Xx: {
        Rational c = monomial_weight(m, w);
        if (!c.is_zero())
            out.emplace_back(m, std::move(c));
        break;
    }
    case Generator::Xtheta: {
        const Rational half(1, 2);
        const int n = s.alpha.size();
        if (s.theta == 0) {
            if (m.degree > 0)
                out.emplace_back(OperatorMonomial{{s.eps, 1, s.alpha}, m.degree - 1}, Rational(m.degree, 2));
            for (int i = 1; i <= n; ++i)
                out.emplace_back(OperatorMonomial{{s.eps, 1, alpha_up(s.alpha, i)}, m.degree}, half);
        } else {
            out.emplace_back(OperatorMonomial{{s.eps, 0, s.alpha}, m.degree}, half);
        }
        const int outer = -sign_power(m.parity());
        for (int i = 1; i <= n; ++i) {
            OperatorMonomial t{{eps_flip(s.eps, i), s.theta, alpha_theta_up(s.alpha, s.eps, i)}, m.degree};
            out.emplace_back(std::move(t), Rational(outer * xi_sign(s.eps, i), 2));
        }
        break;
    }
    }
    return out;
}

void NaryOperator::add_term(const MultiIndex& alpha, const Polynomial& coeff)
{
    if (alpha.size() != n())
        throw std::invalid_argument("multi-index length does not match operator arity");
    auto& p = terms_[alpha];
    p += coeff;
    if (p.is_zero())
        terms_.erase(alpha);
}

int NaryOperator::order() const
{
    int o = -1;
    for (const auto& [a, p] : terms_)
        o = std::max(o, a.total());
    return o;
}

void SuperNaryOperator::add_term(const SectorKey& key, const Polynomial& coeff)
{
    if (key.alpha.size() != n() || key.eps.size() != n())
        throw std::invalid_argument("sector length does not match operator arity");
    if (coeff.is_zero())
        return;
    if (key.parity() != parity_)
        throw std::invalid_argument("sector parity disagrees with operator parity");
    auto& p = terms_[key];
    p += coeff;
    if (p.is_zero())
        terms_.erase(key);
}

void SuperNaryOperator::add_monomial(const OperatorMonomial& m, const Rational& c)
{
    add_term(m.sector, Polynomial::monomial(c, m.degree));
}

int SuperNaryOperator::order() const
{
    int o = -1;
    for (const auto& [k, p] : terms_)
        o = std::max(o, k.alpha.total());
    return o;
}

MonomialCombination SuperNaryOperator::monomials() const
{
    MonomialCombination out;
    for (const auto& [k, p] : terms_) {
        const auto& c = p.coefficients();
        for (std::size_t d = 0; d < c.size(); ++d)
            if (!c[d].is_zero())
                out.emplace_back(OperatorMonomial{k, static_cast<int>(d)}, c[d]);
    }
    return out;
}

SuperNaryOperator to_super(const NaryOperator& a)
{
    SuperNaryOperator s(a.weights(), 0);
    for (const auto& [alpha, p] : a.terms())
        s.add_term({EpsilonMask::zero(a.n()), 0, alpha}, p);
    return s;
}

NaryOperator to_classical(const SuperNaryOperator& a)
{
    NaryOperator c(a.weights());
    for (const auto& [k, p] : a.terms()) {
        if (k.theta != 0 || k.eps.doubled_total() != 0)
            throw std::invalid_argument("operator has non-classical sectors");
        c.add_term(k.alpha, p);
    }
    return c;
}

Polynomial eval_operator(const NaryOperator& a, const std::vector<Polynomial>& inputs)
{
    if (static_cast<int>(inputs.size()) != a.n())
        throw std::invalid_argument("eval_operator: expected " + std::to_string(a.n()) + " inputs");
    Polynomial out;
    for (const auto& [alpha, coeff] : a.terms()) {
        Polynomial prod = coeff;
        for (int i = 1; i <= a.n(); ++i)
            prod = prod * inputs[static_cast<std::size_t>(i - 1)].derivative(alpha.at(i));
        out += prod;
    }
    return out;
}

SuperFunction eval_operator(const SuperNaryOperator& a, const std::vector<SuperFunction>& inputs)
{
    if (static_cast<int>(inputs.size()) != a.n())
        throw std::invalid_argument("eval_operator: expected " + std::to_string(a.n()) + " inputs");
    Polynomial even;
    Polynomial odd;
    for (const auto& [key, coeff] : a.terms()) {
        Polynomial prod = coeff;
        for (int i = 1; i <= a.n(); ++i)
            prod = prod * component(inputs[static_cast<std::size_t>(i - 1)], key.eps.flag(i)).derivative(key.alpha.at(i));
        (key.theta ? odd : even) += prod;
    }
    return {std::move(even), std::move(odd)};
}

SuperNaryOperator act_super(Generator g, const SuperNaryOperator& a)
{
    std::map<SectorKey, Polynomial> terms;
    for (const auto& [m, c] : a.monomials())
        for (const auto& [t, v] : act_monomial(g, m, a.weights()))
            accumulate(terms, t, c * v);
    SuperNaryOperator out(a.weights(), (a.parity() + generator_parity(g)) % 2);
    for (const auto& [k, p] : terms)
        out.add_term(k, p);
    return out;
}

NaryOperator act_classical(Generator g, const NaryOperator& a)
{
    if (g == Generator::Xtheta)
        throw std::invalid_argument("act_classical: X_theta is not in aff(1)");
    return to_classical(act_super(g, to_super(a)));
}

std::vector<OperatorMonomial> monomial_basis(int n, int max_order, int max_degree, ModuleKind kind)
{
    const auto alphas = enumerate_alphas_upto(n, max_order);
    const std::vector<EpsilonMask> masks =
        kind == ModuleKind::super ? enumerate_all_masks(n) : std::vector<EpsilonMask>{EpsilonMask::zero(n)};
    const int max_theta = kind == ModuleKind::super ? 1 : 0;
    std::vector<OperatorMonomial> out;
    for (const auto& e : masks)
        for (int h = 0; h <= max_theta; ++h)
            for (const auto& a : alphas)
                for (int d = 0; d <= max_degree; ++d)
                    out.push_back({{e, h, a}, d});
    return out;
}

Index ModuleRealization::domain_index(const OperatorMonomial& m) const { return find_index(domain, m); }
Index ModuleRealization::codomain_index(const OperatorMonomial& m) const { return find_index(codomain, m); }

ModuleRealization realize_module(const Weights& w, const TruncationSpec& t, ModuleKind kind, TruncationPolicy policy)
{
    if (w.n() < 1)
        throw std::invalid_argument("realize_module: need at least one tensor factor");
    if (t.max_order < 0 || t.max_degree < 0)
        throw InvalidTruncation("truncation caps must be non-negative");
    if (kind == ModuleKind::classical && policy == TruncationPolicy::enforce && !classical_truncation_valid(w, t))
        throw InvalidTruncation("invalid truncation: max_order reaches delta + max_degree + 1 = " +
                                (w.delta() + Rational(t.max_degree + 1)).str());

    ModuleRealization r;
    r.weights = w;
    r.truncation = t;
    r.kind = kind;
    r.domain = monomial_basis(w.n(), t.max_order, t.max_degree, kind);
    r.codomain = kind == ModuleKind::super ? monomial_basis(w.n(), t.max_order + 1, t.max_degree, kind) : r.domain;

    for (int gi = 0; gi < r.generator_count(); ++gi) {
        const auto g = static_cast<Generator>(gi);
        std::vector<Eigen::Triplet<Rational>> trips;
        for (std::size_t j = 0; j < r.domain.size(); ++j)
            for (const auto& [m, c] : act_monomial(g, r.domain[j], w)) {
                const Index i = r.codomain_index(m);
                if (i < 0)
                    throw std::logic_error("action left the codomain truncation");
                trips.emplace_back(i, static_cast<Index>(j), c);
            }
        Eigen::SparseMatrix<Rational> mat(static_cast<Index>(r.codomain.size()), static_cast<Index>(r.domain.size()));
        mat.setFromTriplets(trips.begin(), trips.end());
        r.actions.push_back(std::move(mat));
    }
    return r;
}

}  // namespace cohomolab
