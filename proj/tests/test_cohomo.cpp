#include <random>

#include <gtest/gtest.h>

#include "cohomolab/closedform.hpp"
#include "cohomolab/verify.hpp"

using namespace cohomolab;

namespace {

Weights weights(std::vector<Rational> lambda, Rational mu) { return {std::move(lambda), std::move(mu)}; }

const auto kAff1 = AlgebraPresentation::aff1();
const auto kAff11 = AlgebraPresentation::aff11();

SuperNaryOperator constant_term(const Weights& w, const MultiIndex& a, const Rational& c)
{
    SuperNaryOperator v(w, 0);
    v.add_term({EpsilonMask::zero(w.n()), 0, a}, Polynomial::constant(c));
    return v;
}

}  // namespace

TEST(Algebra, Presentations)
{
    EXPECT_EQ(kAff1.size(), 2);
    EXPECT_EQ(kAff11.size(), 3);
    EXPECT_EQ(kAff11.dual_weight(0), Rational(1));
    EXPECT_EQ(kAff11.dual_weight(1), Rational(0));
    EXPECT_EQ(kAff11.dual_weight(2), Rational(1, 2));
    EXPECT_EQ(kAff11.square_basis().size(), 4u);
    EXPECT_EQ(kAff11.square_basis().back(), std::make_pair(2, 2));

    const Rational z(0);
    // not antisymmetric
    EXPECT_THROW(AlgebraPresentation("bad", {"X_1", "X_x"}, {0, 0}, {{{z, z}, {Rational(1), z}}, {{Rational(1), z}, {z, z}}}, 1),
                 std::invalid_argument);
}

TEST(Coboundary0, Examples)
{
    const auto w = weights({Rational(0), Rational(1)}, Rational(4));  // delta = 3
    const MultiIndex a({1, 1});
    const auto c = coboundary0(kAff1, constant_term(w, a, Rational(1)));
    EXPECT_TRUE(c.values[0].is_zero());
    EXPECT_EQ(c.values[1], constant_term(w, a, w.delta() - Rational(2)));

    const auto top = coboundary0(kAff1, constant_term(w, MultiIndex({2, 1}), Rational(1)));
    EXPECT_TRUE(top.is_zero());
}

TEST(Coboundary1, ClassicalExamples)
{
    const auto w = weights({Rational(1), Rational(0)}, Rational(3));  // delta = 2
    EXPECT_TRUE(coboundary1(kAff1, basis_cocycle_aff1(w, MultiIndex({1, 1}))).is_zero());

    Cochain1 c = zero_cochain(kAff1, w, 0);
    c.values[0] = constant_term(w, MultiIndex({1, 0}), Rational(1));
    EXPECT_FALSE(coboundary1(kAff1, c).is_zero());
}

TEST(Coboundary1, KillsCoboundaries)
{
    std::mt19937 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + trial % 3;
        Weights w;
        for (int i = 0; i < n; ++i)
            w.lambda.push_back(Rational(trial - 3 * i, 4));
        w.mu = Rational(trial, 3);
        const auto v = random_operator(rng, w, trial % 2, 3, 2, ModuleKind::super);
        EXPECT_TRUE(coboundary1(kAff11, coboundary0(kAff11, v)).is_zero());
        const auto vc = random_operator(rng, w, 0, 3, 2, ModuleKind::classical);
        EXPECT_TRUE(coboundary1(kAff1, coboundary0(kAff1, vc)).is_zero());
    }
}

TEST(Coboundary1, ThetaThetaValue)
{
    const auto w = weights({Rational(1, 2)}, Rational(1));
    std::mt19937 rng(5);
    for (int q = 0; q <= 1; ++q) {
        Cochain1 c = zero_cochain(kAff11, w, q);
        c.values[0] = random_operator(rng, w, q, 2, 2, ModuleKind::super);
        c.values[2] = random_operator(rng, w, (q + 1) % 2, 2, 2, ModuleKind::super);
        const auto d = coboundary1(kAff11, c);
        auto expected = act_super(Generator::Xtheta, c.values[2]);
        SuperNaryOperator v(w, q);
        for (const auto& [m, x] : expected.monomials())
            v.add_monomial(m, Rational(2 * sign_power(q)) * x);
        for (const auto& [m, x] : c.values[0].monomials())
            v.add_monomial(m, Rational(-1, 2) * x);
        EXPECT_EQ(d.values.back().second, v);
    }
}

TEST(H1, ClassicalExamples)
{
    const auto m1 = realize_module(weights({Rational(0)}, Rational(2)), {4, 2}, ModuleKind::classical);
    const auto r1 = h1(kAff1, m1);
    EXPECT_EQ(r1.dim_H1, 1);
    EXPECT_EQ(r1.dim_H1, r1.dim_Z1 - r1.dim_B1);

    const auto m2 = realize_module(weights({Rational(1), Rational(1)}, Rational(1)), {1, 2}, ModuleKind::classical);
    EXPECT_EQ(h1(kAff1, m2).dim_H1, 0);

    EXPECT_THROW(h1(kAff11, m1), std::invalid_argument);
}

TEST(H1, SuperExample)
{
    const auto w = weights({Rational(0), Rational(0)}, Rational(1));
    const auto m = realize_module(w, {4, 2}, ModuleKind::super);
    const auto r = h1(kAff11, m, {ParitySelector::both, true, TruncationPolicy::enforce});
    EXPECT_EQ(r.dim_H1, 3);
    EXPECT_EQ(r.h1_by_parity[1], 0);
    ASSERT_EQ(r.representatives.size(), 3u);
    for (const auto& c : r.representatives) {
        EXPECT_TRUE(coboundary1(kAff11, c).is_zero());
        EXPECT_FALSE(is_coboundary(kAff11, c, m).has_value());
    }
    EXPECT_EQ(rank_modulo_coboundaries(kAff11, m, r.representatives), 3);
}

TEST(H1, WindowTooSmall)
{
    const auto w = weights({Rational(0)}, Rational(3));  // delta = 3
    const auto m = realize_module(w, {4, 2}, ModuleKind::super);
    EXPECT_THROW(h1(kAff11, m), WindowTooSmall);
}

TEST(H1, InvalidTruncation)
{
    const auto w = weights({Rational(0)}, Rational(2));
    const auto m = realize_module(w, {5, 2}, ModuleKind::classical, TruncationPolicy::allow_invalid);
    EXPECT_THROW(h1(kAff1, m), InvalidTruncation);
    H1Options opt;
    opt.policy = TruncationPolicy::allow_invalid;
    EXPECT_EQ(h1(kAff1, m, opt).dim_H1, 2);
}

TEST(IsCoboundary, Examples)
{
    const auto w = weights({Rational(0), Rational(1, 2)}, Rational(5, 2));  // delta = 2
    const auto m = realize_module(w, {3, 2}, ModuleKind::classical);

    SuperNaryOperator v(w, 0);
    v.add_term({EpsilonMask::zero(2), 0, MultiIndex({0, 1})}, Polynomial::x());
    const auto c = coboundary0(kAff1, v);
    const auto witness = is_coboundary(kAff1, c, m);
    ASSERT_TRUE(witness.has_value());
    EXPECT_EQ(coboundary0(kAff1, *witness), c);

    EXPECT_FALSE(is_coboundary(kAff1, basis_cocycle_aff1(w, MultiIndex({1, 1})), m).has_value());

    const auto zero = is_coboundary(kAff1, zero_cochain(kAff1, w, 0), m);
    ASSERT_TRUE(zero.has_value());
    EXPECT_TRUE(zero->is_zero());

    Cochain1 bad = zero_cochain(kAff1, w, 0);
    bad.values[0] = constant_term(w, MultiIndex({1, 0}), Rational(1));
    EXPECT_THROW(is_coboundary(kAff1, bad, m), NotACocycle);
}

TEST(RelativeH1, Examples)
{
    const auto m1 = realize_module(weights({Rational(0)}, Rational(1)), {3, 2}, ModuleKind::super);
    EXPECT_EQ(relative_h1(kAff11, kAff1, m1).dim_H1, 0);
    const auto m2 = realize_module(weights({Rational(0), Rational(1, 2)}, Rational(2)), {4, 2}, ModuleKind::super);
    EXPECT_EQ(relative_h1(kAff11, kAff1, m2).dim_H1, 0);
    const auto m3 = realize_module(weights({Rational(1, 3)}, Rational(1)), {3, 2}, ModuleKind::super);
    const auto r3 = relative_h1(kAff11, kAff1, m3);
    EXPECT_EQ(r3.dim_Z1, 0);
    EXPECT_EQ(r3.dim_H1, 0);
}

TEST(RelativeH1, BoundedByAbsolute)
{
    for (int twice = 0; twice <= 4; ++twice)
        for (int n = 1; n <= 2; ++n) {
            Weights w{std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)), Rational(twice, 2)};
            const auto m = realize_module(w, {minimal_window(w), 2}, ModuleKind::super);
            EXPECT_LE(relative_h1(kAff11, kAff1, m).dim_H1, h1(kAff11, m).dim_H1);
        }
}

TEST(InvariantOperators, Examples)
{
    // module weights (lambda, mu + 1/2): delta + 1/2 of the shifted module
    const auto i1 = invariant_operators(
        realize_module(weights({Rational(0)}, Rational(1)), {3, 2}, ModuleKind::classical));
    ASSERT_EQ(i1.size(), 1u);
    ASSERT_EQ(i1[0].terms().size(), 1u);
    EXPECT_EQ(i1[0].terms().begin()->first, MultiIndex({1}));
    EXPECT_EQ(i1[0].terms().begin()->second.degree(), 0);

    const auto i2 = invariant_operators(
        realize_module(weights({Rational(0), Rational(0)}, Rational(2)), {3, 2}, ModuleKind::classical));
    EXPECT_EQ(i2.size(), 3u);
    for (const auto& a : i2)
        for (const auto& [alpha, c] : a.terms()) {
            EXPECT_EQ(alpha.total(), 2);
            EXPECT_EQ(c.degree(), 0);
        }

    const auto i3 = invariant_operators(
        realize_module(weights({Rational(0)}, Rational(3, 4)), {3, 2}, ModuleKind::classical));
    EXPECT_TRUE(i3.empty());
}

TEST(DerivedAction, VanishesOnCocycleZeros)
{
    // for a cocycle with value 0 at a, the derived cochain a . Omega is zero
    std::mt19937 rng(17);
    int tested = 0;
    for (int trial = 0; tested < 20 && trial < 200; ++trial) {
        const int n = 1 + trial % 2;
        Weights w{std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)), Rational(1 + trial % 3)};
        const auto v = random_operator(rng, w, trial % 2, 2, 2, ModuleKind::super);
        Cochain1 omega = coboundary0(kAff11, v);
        if (trial % 4 == 0) {
            const auto labels = aff11_family(n, w.delta());
            const auto& l = labels[static_cast<std::size_t>(trial) % labels.size()];
            const auto m = realize_module(w, {minimal_window(w), 2}, ModuleKind::super);
            omega = extend_to_theta(basis_cocycle_aff11_restricted(w, l.eps, l.alpha), m);
        }
        ASSERT_TRUE(coboundary1(kAff11, omega).is_zero());
        for (int a = 0; a < 3; ++a) {
            if (!omega.values[static_cast<std::size_t>(a)].is_zero())
                continue;
            ++tested;
            EXPECT_TRUE(derived_action(kAff11, a, omega).is_zero()) << "generator " << a << " trial " << trial;
        }
    }
    EXPECT_GE(tested, 20);
}

TEST(H1, StableAcrossWindows)
{
    for (int twice = 0; twice <= 3; ++twice) {
        Weights w{{Rational(0), Rational(0)}, Rational(twice, 2)};
        const int b0 = minimal_window(w);
        std::optional<Index> first;
        for (int b = b0; b <= b0 + 2; ++b)
            for (int deg = 2; deg <= 3; ++deg) {
                const auto d = h1(kAff11, realize_module(w, {b, deg}, ModuleKind::super)).dim_H1;
                if (!first)
                    first = d;
                EXPECT_EQ(d, *first) << "2delta=" << twice << " B=" << b << " M=" << deg;
            }
        EXPECT_EQ(*first, twice + 1);
    }
}
