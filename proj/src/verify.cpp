#include "cohomolab/verify.hpp"

#include <sstream>
#include <stdexcept>

#include "cohomolab/closedform.hpp"

namespace cohomolab {

namespace {

Rational random_rational(std::mt19937& rng)
{
    std::uniform_int_distribution<int> num(-5, 5);
    std::uniform_int_distribution<int> den(1, 3);
    return Rational(num(rng), den(rng));
}

Polynomial random_polynomial(std::mt19937& rng, int max_degree)
{
    std::vector<Rational> c;
    for (int d = 0; d <= max_degree; ++d)
        c.push_back(random_rational(rng));
    return Polynomial(std::move(c));
}

template <class T>
std::string str(const T& x)
{
    std::ostringstream os;
    os << x;
    return os.str();
}

Weights uniform_weights(int n, const Rational& lambda, const Rational& delta)
{
    return {std::vector<Rational>(static_cast<std::size_t>(n), lambda), delta + Rational(n) * lambda};
}

// X_theta on constant coefficients B (theta = 0) and R (theta = 1), written
// sector by sector:
//   theta-free part at (eta, b): 1/2 R^eta_b - (-1)^p 1/2 sum_i xi^i_eta B^{eta^i}_{b^i-bar_eta}
//   theta part at (eta, b):      1/2 sum_i B^eta_{b^i-bar} - (-1)^p 1/2 sum_i xi^i_eta R^{eta^i}_{b^i-bar_eta}
SuperNaryOperator theta_display(const SuperNaryOperator& v)
{
    const int n = v.n();
    const Rational half(1, 2);
    const Rational s(-sign_power(v.parity()));
    auto coeff = [&](const EpsilonMask& e, int h, const std::optional<MultiIndex>& a) {
        if (!a)
            return Rational(0);
        const auto it = v.terms().find({e, h, *a});
        return it == v.terms().end() ? Rational(0) : it->second.coefficient(0);
    };
    SuperNaryOperator out(v.weights(), (v.parity() + 1) % 2);
    for (const auto& b : enumerate_alphas_upto(n, v.order() + 1))
        for (const auto& eta : enumerate_all_masks(n)) {
            Rational zero_part = half * coeff(eta, 1, b);
            Rational theta_part(0);
            for (int i = 1; i <= n; ++i) {
                const Rational xi(xi_sign(eta, i));
                zero_part += s * half * xi * coeff(eps_flip(eta, i), 0, alpha_theta_down(b, eta, i));
                theta_part += half * coeff(eta, 0, alpha_down(b, i));
                theta_part += s * half * xi * coeff(eps_flip(eta, i), 1, alpha_theta_down(b, eta, i));
            }
            if (!zero_part.is_zero())
                out.add_term({eta, 0, b}, Polynomial::constant(zero_part));
            if (!theta_part.is_zero())
                out.add_term({eta, 1, b}, Polynomial::constant(theta_part));
        }
    return out;
}

void suite_brackets(SuiteResult& r)
{
    const auto x1 = ContactField::x1().hamiltonian;
    const auto xx = ContactField::xx().hamiltonian;
    const auto xt = ContactField::xtheta().hamiltonian;
    r.expect(contact_bracket(x1, xx) == x1, "[X_1, X_x] = X_1");
    r.expect(contact_bracket(xx, xt) == Rational(-1, 2) * xt, "[X_x, X_theta] = -1/2 X_theta");
    r.expect(contact_bracket(xt, xt) == Rational(1, 2) * x1, "[X_theta, X_theta] = 1/2 X_1");
    r.expect(contact_bracket(x1, xt).odd_part().is_zero() && contact_bracket(x1, xt).even_part().is_zero(),
             "[X_1, X_theta] = 0");

    std::mt19937 rng(3);
    for (int n = 1; n <= 3; ++n) {
        Weights w;
        for (int i = 0; i < n; ++i)
            w.lambda.push_back(Rational(2 * i - 1, 3));
        w.mu = Rational(5, 2);
        for (int trial = 0; trial < 20; ++trial) {
            const auto a = random_operator(rng, w, trial % 2, 3, 2, ModuleKind::super);
            const auto inputs = random_inputs(rng, n, 3, ModuleKind::super);
            for (const auto g : {Generator::X1, Generator::Xx, Generator::Xtheta})
                r.expect(eval_operator(act_super(g, a), inputs) == reference_action(g, a, inputs),
                         std::string("action of ") + generator_name(g) + " matches Lie derivatives, n=" +
                             std::to_string(n));
            auto tt = act_super(Generator::Xtheta, act_super(Generator::Xtheta, a));
            for (const auto& [m, c] : act_super(Generator::X1, a).monomials())
                tt.add_monomial(m, Rational(-1, 4) * c);
            r.expect(tt.is_zero(), "X_theta^2 = 1/4 X_1 on operators");
        }
    }
}

void suite_combinatorics(SuiteResult& r)
{
    for (int n = 1; n <= 4; ++n)
        for (const auto& e : enumerate_all_masks(n))
            for (int i = 1; i <= n; ++i) {
                r.expect(eps_flip(eps_flip(e, i), i) == e, "eps^i^i = eps");
                r.expect(eps_flip(e, i).in_class_e() != e.in_class_e(), "eps^i changes class");
                r.expect(xi_sign(e, i) == xi_sign(eps_flip(e, i), i), "xi^i_{eps^i} = xi^i_eps");
                for (int j = 1; j <= n; ++j)
                    if (i != j)
                        r.expect(xi_sign(e, i) * xi_sign(eps_flip(e, i), j) ==
                                     -xi_sign(e, j) * xi_sign(eps_flip(e, j), i),
                                 "xi^i_eps xi^j_{eps^i} = -xi^j_eps xi^i_{eps^j}");
                for (const auto& a : enumerate_alphas_upto(n, 3)) {
                    const auto down = alpha_theta_down(a, e, i);
                    if (down)
                        r.expect(alpha_theta_up(*down, eps_flip(e, i), i) == a, "(alpha^{i-bar}_eps)^i_{eps^i} = alpha");
                    r.expect(alpha_down(alpha_up(a, i), i) == a, "(alpha^i)^{i-bar} = alpha");
                }
            }
    for (int n = 1; n <= 5; ++n)
        for (int k = 0; k <= 6; ++k)
            r.expect(static_cast<long>(enumerate_alphas(n, k).size()) == binomial(n + k - 1, k),
                     "alpha count C(n+k-1, k)");
    for (int n = 1; n <= 3; ++n) {
        r.expect(alph_relation_trivial(n, 4, true), "relation (alph) trivial, even case, n=" + std::to_string(n));
        r.expect(alph_relation_trivial(n, 4, false), "relation (alph) trivial, odd case, n=" + std::to_string(n));
    }
}

void suite_aff1(SuiteResult& r)
{
    const auto alg = AlgebraPresentation::aff1();
    for (int n = 1; n <= 2; ++n)
        for (int k = 0; k <= 3; ++k) {
            const auto w = uniform_weights(n, Rational(1, 2), Rational(k));
            const auto mod = realize_module(w, {k + 1, 2}, ModuleKind::classical);
            const auto rep = h1(alg, mod);
            r.expect(rep.dim_H1 == predicted_dim_aff1(n, w.delta()),
                     "dim H^1(aff(1)) = C(n+k-1, k) at n=" + std::to_string(n) + " k=" + std::to_string(k));
            for (const auto& a : aff1_family(n, w.delta())) {
                const auto c = basis_cocycle_aff1(w, a);
                r.expect(coboundary1(alg, c).is_zero(), "Omega^alpha is a cocycle, alpha=" + str(a));
                r.expect(!is_coboundary(alg, c, mod), "Omega^alpha is not a coboundary, alpha=" + str(a));
            }
        }
    for (const auto& d : {Rational(-1), Rational(1, 2), Rational(7, 3)}) {
        const auto w = uniform_weights(2, Rational(0), d);
        const auto mod = realize_module(w, {1, 2}, ModuleKind::classical);
        r.expect(h1(alg, mod).dim_H1 == 0, "dim H^1(aff(1)) = 0 for delta=" + d.str());
    }
}

void suite_aff11(SuiteResult& r)
{
    const auto alg = AlgebraPresentation::aff11();
    for (int n = 1; n <= 2; ++n)
        for (int twice = 0; twice <= 3; ++twice) {
            const auto w = uniform_weights(n, Rational(0), Rational(twice, 2));
            const auto mod = realize_module(w, {minimal_window(w), 2}, ModuleKind::super);
            const auto rep = h1(alg, mod);
            const std::string where = " at n=" + std::to_string(n) + " 2delta=" + std::to_string(twice);
            r.expect(rep.dim_H1 == predicted_dim_aff11(n, w.delta()), "dim H^1(aff(1|1)) matches the sum" + where);
            r.expect(rep.h1_by_parity[static_cast<std::size_t>(1 - twice % 2)] == 0, "classes have one parity" + where);
            std::vector<Cochain1> family;
            for (const auto& l : aff11_family(n, w.delta())) {
                const auto c = extend_to_theta(basis_cocycle_aff11_restricted(w, l.eps, l.alpha), mod);
                r.expect(coboundary1(alg, c).is_zero(), "Gamma is a cocycle" + where);
                family.push_back(c);
            }
            r.expect(rank_modulo_coboundaries(alg, mod, family) == rep.dim_H1, "Gamma family is a basis" + where);
        }
    std::mt19937 rng(12);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 1 + trial % 3;
        const auto w = uniform_weights(n, Rational(1, 3), Rational(trial % 5, 2));
        const auto v = random_operator(rng, w, trial % 2, 3, 0, ModuleKind::super);
        r.expect(act_super(Generator::Xtheta, v) == theta_display(v), "X_theta on constant coefficients (B/R display)");
    }
    for (int q = 0; q <= 1; ++q) {
        const auto w = uniform_weights(2, Rational(0), Rational(1 + q, 2));
        r.expect(theta_relation_violations(SuperNaryOperator(w, q)).empty(), "recurrences hold on 0");
    }
}

void suite_relative(SuiteResult& r)
{
    const auto alg = AlgebraPresentation::aff11();
    const auto sub = AlgebraPresentation::aff1();
    for (int n = 1; n <= 2; ++n)
        for (const auto& d : {Rational(0), Rational(1, 2), Rational(1), Rational(3, 2), Rational(1, 3)}) {
            const auto w = uniform_weights(n, Rational(-1, 2), d);
            const auto mod = realize_module(w, {minimal_window(w), 2}, ModuleKind::super);
            const auto rel = relative_h1(alg, sub, mod);
            r.expect(rel.dim_H1 == 0, "relative H^1 vanishes at n=" + std::to_string(n) + " delta=" + d.str());
            r.expect(rel.dim_H1 <= h1(alg, mod).dim_H1, "relative H^1 embeds in H^1");
        }
}

void suite_invariants(SuiteResult& r)
{
    for (int n = 1; n <= 3; ++n)
        for (const auto& d : {Rational(-1, 2), Rational(1, 2), Rational(3, 2), Rational(1, 4)}) {
            // operators into densities of weight mu + 1/2
            const auto w = uniform_weights(n, Rational(0), d + Rational(1, 2));
            const auto top = d + Rational(1, 2);
            const auto caps = TruncationSpec{static_cast<int>(top.ceil()) + 1, 2};
            const auto found = invariant_operators(realize_module(w, caps, ModuleKind::classical));
            const long expected = is_natural(top) ? binomial(n + top.floor() - 1, top.floor()) : 0;
            r.expect(static_cast<long>(found.size()) == expected,
                     "invariant operator count at n=" + std::to_string(n) + " delta=" + d.str());
            for (const auto& a : found)
                for (const auto& [alpha, c] : a.terms())
                    r.expect(Rational(alpha.total()) == top && c.degree() == 0, "invariants are constant with |alpha| = delta + 1/2");
        }
}

}  // namespace

std::vector<std::string> suite_names()
{
    return {"brackets", "combinatorics", "aff1", "aff11", "relative", "invariants"};
}

namespace {

void dispatch(const std::string& name, SuiteResult& r)
{
    if (name == "brackets")
        suite_brackets(r);
    else if (name == "combinatorics")
        suite_combinatorics(r);
    else if (name == "aff1")
        suite_aff1(r);
    else if (name == "aff11")
        suite_aff11(r);
    else if (name == "relative")
        suite_relative(r);
    else if (name == "invariants")
        suite_invariants(r);
    else
        throw std::invalid_argument("unknown suite " + name);
}

}  // namespace

SuiteResult run_suite(const std::string& name)
{
    SuiteResult r;
    r.name = name;
    try {
        dispatch(name, r);
    } catch (const std::exception& e) {
        r.failures.push_back(std::string("exception: ") + e.what());
    }
    return r;
}

SuperFunction reference_action(Generator g, const SuperNaryOperator& a, const std::vector<SuperFunction>& inputs)
{
    const auto field = generator_field(g);
    const int pg = generator_parity(g);
    const auto& w = a.weights();
    std::vector<int> parities;
    for (const auto& f : inputs) {
        const auto p = f.parity();
        if (!p)
            throw std::invalid_argument("reference_action needs homogeneous inputs");
        parities.push_back(*p);
    }

    SuperFunction out = super_lie_derivative(field, w.mu, eval_operator(a, inputs));
    SuperFunction inner;
    for (int i = 1; i <= a.n(); ++i) {
        auto shifted = inputs;
        auto& slot = shifted[static_cast<std::size_t>(i - 1)];
        slot = super_lie_derivative(field, w.lambda[static_cast<std::size_t>(i - 1)], slot);
        const int sign = pg ? tensor_koszul_sign(parities, i) : 1;
        inner += Rational(sign) * eval_operator(a, shifted);
    }
    out -= Rational(sign_power(a.parity() * pg)) * inner;
    return out;
}

SuperNaryOperator random_operator(std::mt19937& rng, const Weights& w, int parity, int max_order, int max_degree,
                                  ModuleKind kind)
{
    std::vector<OperatorMonomial> pool;
    for (auto& m : monomial_basis(w.n(), max_order, max_degree, kind))
        if (m.parity() == parity)
            pool.push_back(std::move(m));
    if (pool.empty())
        throw std::invalid_argument("random_operator: no monomial of the requested parity");
    SuperNaryOperator a(w, parity);
    std::uniform_int_distribution<int> count(1, 4);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int k = count(rng); k > 0; --k)
        a.add_monomial(pool[pick(rng)], random_rational(rng));
    return a;
}

std::vector<SuperFunction> random_inputs(std::mt19937& rng, int n, int max_degree, ModuleKind kind)
{
    std::bernoulli_distribution odd(0.5);
    std::vector<SuperFunction> out;
    for (int i = 0; i < n; ++i) {
        auto p = random_polynomial(rng, max_degree);
        if (kind == ModuleKind::super && odd(rng))
            out.push_back(SuperFunction::odd(std::move(p)));
        else
            out.push_back(SuperFunction::even(std::move(p)));
    }
    return out;
}

}  // namespace cohomolab
