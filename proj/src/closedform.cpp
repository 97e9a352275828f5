#include "cohomolab/closedform.hpp"

#include <map>
#include <set>
#include <sstream>

#include <gmpxx.h>

namespace cohomolab {

namespace {

std::optional<long> natural_value(const Rational& q)
{
    if (!is_natural(q))
        return std::nullopt;
    return q.floor();
}

Polynomial constant(int c) { return Polynomial::constant(Rational(c)); }

std::string describe(const SectorKey& k)
{
    std::ostringstream os;
    os << "eps=" << k.eps << " theta=" << k.theta << " alpha=" << k.alpha;
    return os.str();
}

Polynomial coefficient(const SuperNaryOperator& y, const EpsilonMask& e, int h, const std::optional<MultiIndex>& a)
{
    if (!a)
        return {};
    const auto it = y.terms().find({e, h, *a});
    return it == y.terms().end() ? Polynomial{} : it->second;
}

}  // namespace

long binomial(long m, long j)
{
    if (j < 0 || m < 0 || j > m)
        return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(j));
    if (!r.fits_slong_p())
        throw std::overflow_error("binomial out of range");
    return r.get_si();
}

long predicted_dim_aff1(int n, const Rational& delta)
{
    const auto k = natural_value(delta);
    return k ? binomial(n + *k - 1, *k) : 0;
}

long predicted_dim_aff11(int n, const Rational& delta)
{
    if (const auto k = natural_value(delta)) {
        long s = 0;
        for (long r = 0; r <= n / 2; ++r)
            s += binomial(n, 2 * r) * binomial(n + *k - r - 1, *k - r);
        return s;
    }
    if (const auto k = natural_value(delta - Rational(1, 2))) {
        long s = 0;
        for (long r = 0; r <= (n - 1) / 2; ++r)
            s += binomial(n, 2 * r + 1) * binomial(n + *k - r - 1, *k - r);
        return s;
    }
    return 0;
}

Prediction predict(const std::string& algebra, int n, const Rational& delta)
{
    Prediction p{algebra, n, delta, 0, std::nullopt};
    if (algebra == "aff1")
        p.dim = predicted_dim_aff1(n, delta);
    else if (algebra == "aff11")
        p.dim = predicted_dim_aff11(n, delta);
    else
        throw std::invalid_argument("no closed form for algebra " + algebra);
    if (p.dim > 0)
        p.parity = delta.is_integer() ? 0 : 1;
    return p;
}

Cochain1 basis_cocycle_aff1(const Weights& w, const MultiIndex& a)
{
    if (a.size() != w.n())
        throw std::invalid_argument("basis_cocycle_aff1: index length does not match n");
    if (Rational(a.total()) != w.delta())
        throw std::invalid_argument("basis_cocycle_aff1: |alpha| must equal delta");
    Cochain1 c = zero_cochain(AlgebraPresentation::aff1(), w, 0);
    c.values[1].add_term({EpsilonMask::zero(w.n()), 0, a}, constant(1));
    return c;
}

Cochain1 basis_cocycle_aff11_restricted(const Weights& w, const EpsilonMask& e, const MultiIndex& a)
{
    const int n = w.n();
    if (a.size() != n || e.size() != n)
        throw std::invalid_argument("basis_cocycle_aff11_restricted: label length does not match n");
    const bool even_case = is_natural(w.delta());
    const bool odd_case = is_natural(w.delta() - Rational(1, 2));
    if (!(even_case && e.in_class_e()) && !(odd_case && !e.in_class_e()))
        throw std::invalid_argument("basis_cocycle_aff11_restricted: mask class does not match delta");
    if (Rational(a.total()) != w.delta_eps(e))
        throw std::invalid_argument("basis_cocycle_aff11_restricted: |alpha| must equal delta_eps");

    Cochain1 c = zero_cochain(AlgebraPresentation::aff1(), w, e.parity());
    // odd values pick up a sign when X_theta passes the theta factor
    const int s = sign_power(e.parity());
    auto& v = c.values[1];
    v.add_term({e, 0, a}, constant(1));
    for (int i = 1; i <= n; ++i)
        v.add_term({eps_flip(e, i), 1, alpha_theta_up(a, e, i)}, constant(s * xi_sign(e, i)));
    return c;
}

std::vector<MultiIndex> aff1_family(int n, const Rational& delta)
{
    const auto k = natural_value(delta);
    if (!k)
        return {};
    return enumerate_alphas(n, static_cast<int>(*k));
}

std::vector<BasisLabel> aff11_family(int n, const Rational& delta)
{
    std::vector<BasisLabel> out;
    if (!natural_value(2 * delta))
        return out;
    const bool even_case = delta.is_integer();
    for (const auto& e : enumerate_all_masks(n)) {
        if (e.in_class_e() != even_case)
            continue;
        const auto k = natural_value(delta - e.total());
        if (!k)
            continue;
        for (auto& a : enumerate_alphas(n, static_cast<int>(*k)))
            out.push_back({e, std::move(a)});
    }
    return out;
}

Cochain1 extend_to_theta(const Cochain1& c, const ModuleRealization& mod)
{
    const auto aff1 = AlgebraPresentation::aff1();
    const auto aff11 = AlgebraPresentation::aff11();
    if (mod.kind != ModuleKind::super)
        throw std::invalid_argument("extend_to_theta needs a super realization");
    if (c.values.size() != 2)
        throw std::invalid_argument("extend_to_theta expects a cochain on aff(1)");
    if (!coboundary1(aff1, c).is_zero())
        throw NotACocycle("extend_to_theta: input is not an aff(1)-cocycle");

    const int q = c.parity;
    const auto& w = mod.weights;
    Cochain1 full = zero_cochain(aff11, w, q);
    full.values[0] = c.values[0];
    full.values[1] = c.values[1];
    if (c.is_zero())
        return full;

    std::set<Rational> weights;
    for (int i = 0; i < 2; ++i)
        for (const auto& [m, x] : c.values[static_cast<std::size_t>(i)].monomials())
            weights.insert(monomial_weight(m, w) + aff1.dual_weight(i));

    std::map<std::pair<int, OperatorMonomial>, Index> rows;
    std::vector<std::pair<std::pair<int, int>, OperatorMonomial>> row_keys;
    auto to_sparse = [&](const Cochain2& v, const Rational& scale) {
        std::vector<std::pair<Index, Rational>> entries;
        for (std::size_t s = 0; s < v.values.size(); ++s)
            for (const auto& [m, x] : v.values[s].second.monomials()) {
                const auto [it, fresh] =
                    rows.try_emplace({static_cast<int>(s), m}, static_cast<Index>(rows.size()));
                if (fresh)
                    row_keys.push_back({v.values[s].first, m});
                entries.emplace_back(it->second, scale * x);
            }
        return make_sparse(std::move(entries));
    };

    const WindowLevels levels = window_levels(mod);
    std::vector<OperatorMonomial> unknowns;
    SparseColumnEchelon<Rational> ech(true);
    for (auto& m : monomial_basis(w.n(), levels.c1.order, levels.c1.degree, ModuleKind::super)) {
        if (m.parity() != (q + 1) % 2 || !weights.count(monomial_weight(m, w) + aff11.dual_weight(2)))
            continue;
        Cochain1 probe = zero_cochain(aff11, w, q);
        probe.values[2].add_monomial(m, Rational(1));
        ech.insert(to_sparse(coboundary1(aff11, probe), Rational(1)));
        unknowns.push_back(std::move(m));
    }

    const auto sol = ech.solve(to_sparse(coboundary1(aff11, full), Rational(-1)));
    if (!sol.solution) {
        const auto& [pair, m] = row_keys[static_cast<std::size_t>(*sol.inconsistent_row)];
        std::ostringstream os;
        os << "no extension: equation (" << aff11.generator_name(pair.first) << ", "
           << aff11.generator_name(pair.second) << ") at " << describe(m.sector) << " x^" << m.degree
           << " is inconsistent";
        throw NoExtension(os.str());
    }
    for (const auto& [k, x] : *sol.solution)
        full.values[2].add_monomial(unknowns[static_cast<std::size_t>(k)], x);

    if (!coboundary1(aff11, full).is_zero())
        throw std::logic_error("extend_to_theta: solution fails the cocycle equations");
    if (c.values[0].is_zero()) {
        const auto bad = theta_relation_violations(full.values[2]);
        if (!bad.empty())
            throw std::logic_error("extend_to_theta: coefficient recurrence violated at " + bad.front());
    }
    return full;
}

std::vector<std::string> theta_relation_violations(const SuperNaryOperator& y)
{
    std::vector<std::string> out;
    if (y.is_zero())
        return out;
    const int n = y.n();
    const Rational s(sign_power(y.parity()));
    const auto masks = enumerate_all_masks(n);
    for (const auto& b : enumerate_alphas_upto(n, y.order() + 1))
        for (const auto& eta : masks) {
            // h = 0 target: Y^{eta,1}_b = (-1)^p sum_i xi^i_eta Y^{eta^i,0}_{b^i-bar_eta}
            if ((eta.parity() + 1) % 2 == y.parity()) {
                Polynomial rhs;
                for (int i = 1; i <= n; ++i)
                    rhs = rhs + Rational(xi_sign(eta, i)) *
                                    coefficient(y, eps_flip(eta, i), 0, alpha_theta_down(b, eta, i));
                if (coefficient(y, eta, 1, b) != s * rhs)
                    out.push_back(describe({eta, 1, b}));
            }
            // h = 1 target: (Y^{eta,0}_b)' + sum_i Y^{eta,0}_{b^i-bar}
            //               = (-1)^p sum_i xi^i_eta Y^{eta^i,1}_{b^i-bar_eta}
            if (eta.parity() == y.parity()) {
                Polynomial lhs = coefficient(y, eta, 0, b).derivative();
                Polynomial rhs;
                for (int i = 1; i <= n; ++i) {
                    lhs = lhs + coefficient(y, eta, 0, alpha_down(b, i));
                    rhs = rhs + Rational(xi_sign(eta, i)) *
                                    coefficient(y, eps_flip(eta, i), 1, alpha_theta_down(b, eta, i));
                }
                if (lhs != s * rhs)
                    out.push_back(describe({eta, 0, b}));
            }
        }
    return out;
}

bool alph_relation_trivial(int n, int max_order, bool even_case)
{
    // y odd in the even case: C on h = 0 with eps in O, D on h = 1 with eps in E
    using Symbol = std::pair<EpsilonMask, MultiIndex>;
    using Form = std::map<Symbol, Rational>;
    const Rational s(even_case ? -1 : 1);
    const bool c_class_e = !even_case;

    auto add = [](Form& f, const Symbol& k, const Rational& x) {
        auto& v = f[k];
        v += x;
        if (v.is_zero())
            f.erase(k);
    };
    // D^eta_b = s sum_i xi^i_eta C^{eta^i}_{b^i-bar_eta}
    auto d_symbol = [&](const EpsilonMask& eta, const MultiIndex& b) {
        Form f;
        for (int i = 1; i <= n; ++i)
            if (const auto a = alpha_theta_down(b, eta, i))
                add(f, {eps_flip(eta, i), *a}, s * Rational(xi_sign(eta, i)));
        return f;
    };

    for (const auto& eta : enumerate_all_masks(n)) {
        if (eta.in_class_e() != c_class_e)
            continue;
        for (const auto& b : enumerate_alphas_upto(n, max_order)) {
            Form lhs;
            Form rhs;
            for (int i = 1; i <= n; ++i) {
                if (const auto a = alpha_down(b, i))
                    add(lhs, {eta, *a}, Rational(1));
                if (const auto a = alpha_theta_down(b, eta, i))
                    for (const auto& [k, x] : d_symbol(eps_flip(eta, i), *a))
                        add(rhs, k, s * Rational(xi_sign(eta, i)) * x);
            }
            if (lhs != rhs)
                return false;
        }
    }
    return true;
}

}  // namespace cohomolab
