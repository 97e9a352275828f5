#include <gtest/gtest.h>

#include "cohomolab/multiidx.hpp"

using namespace cohomolab;

namespace {

MultiIndex mi(std::vector<int> v) { return MultiIndex(std::move(v)); }
EpsilonMask em(std::vector<int> v) { return EpsilonMask(std::move(v)); }

long binom(long m, long j)
{
    if (j < 0 || m < j)
        return 0;
    long r = 1;
    for (long k = 1; k <= j; ++k)
        r = r * (m - j + k) / k;
    return r;
}

}  // namespace

TEST(AlphaUpDown, Examples)
{
    EXPECT_EQ(alpha_up(mi({1, 0}), 2), mi({1, 1}));
    EXPECT_FALSE(alpha_down(mi({0, 2}), 1));
    EXPECT_EQ(alpha_down(mi({0, 2}), 2), mi({0, 1}));
    EXPECT_THROW(alpha_up(mi({1, 0}), 3), std::out_of_range);
    EXPECT_THROW(alpha_down(mi({1, 0}), 0), std::out_of_range);
}

TEST(AlphaUpDown, RoundTrip)
{
    for (int n = 1; n <= 3; ++n)
        for (const auto& a : enumerate_alphas_upto(n, 3))
            for (int i = 1; i <= n; ++i)
                EXPECT_EQ(alpha_down(alpha_up(a, i), i), a);
}

TEST(AlphaTheta, Examples)
{
    EXPECT_EQ(alpha_theta_up(mi({1, 0}), em({1, 0}), 1), mi({2, 0}));
    EXPECT_EQ(alpha_theta_up(mi({1, 0}), em({0, 1}), 1), mi({1, 0}));
    EXPECT_THROW(alpha_theta_down(mi({1}), em({0}), 2), std::out_of_range);
}

TEST(AlphaTheta, RoundTripWithFlippedMask)
{
    for (int n = 1; n <= 3; ++n)
        for (const auto& e : enumerate_all_masks(n))
            for (const auto& a : enumerate_alphas_upto(n, 3))
                for (int i = 1; i <= n; ++i) {
                    const auto up = alpha_theta_up(a, e, i);
                    EXPECT_EQ(alpha_theta_down(up, eps_flip(e, i), i), a);
                    if (const auto down = alpha_theta_down(a, e, i))
                        EXPECT_EQ(alpha_theta_up(*down, eps_flip(e, i), i), a);
                    // twice down through eps and eps^i lands on alpha^{i-bar}
                    std::optional<MultiIndex> dd;
                    if (const auto b = alpha_theta_down(a, e, i))
                        dd = alpha_theta_down(*b, eps_flip(e, i), i);
                    EXPECT_EQ(dd, alpha_down(a, i));
                }
}

TEST(EpsFlip, Examples)
{
    const auto f = eps_flip(em({0, 0}), 1);
    EXPECT_EQ(f, em({1, 0}));
    EXPECT_TRUE(em({0, 0}).in_class_e());
    EXPECT_FALSE(f.in_class_e());

    const auto g = eps_flip(em({1, 1}), 2);
    EXPECT_EQ(g, em({1, 0}));
    EXPECT_EQ(em({1, 1}).total(), Rational(1));
    EXPECT_EQ(g.total(), Rational(1, 2));
}

TEST(EpsFlip, InvolutionAndClassToggle)
{
    for (int n = 1; n <= 4; ++n)
        for (const auto& e : enumerate_all_masks(n))
            for (int i = 1; i <= n; ++i) {
                EXPECT_EQ(eps_flip(eps_flip(e, i), i), e);
                EXPECT_NE(eps_flip(e, i).in_class_e(), e.in_class_e());
            }
}

TEST(XiSign, Examples)
{
    EXPECT_EQ(xi_sign(em({1, 1, 0}), 3), 1);
    EXPECT_EQ(xi_sign(em({1, 0}), 2), -1);
    for (const auto& e : enumerate_all_masks(3))
        EXPECT_EQ(xi_sign(e, 1), 1);
    EXPECT_THROW(xi_sign(em({1, 0}), 3), std::out_of_range);
}

TEST(XiSign, Identities)
{
    for (int n = 1; n <= 4; ++n)
        for (const auto& e : enumerate_all_masks(n))
            for (int i = 1; i <= n; ++i) {
                EXPECT_EQ(xi_sign(e, i), xi_sign(eps_flip(e, i), i));
                for (int j = 1; j <= n; ++j) {
                    if (i == j)
                        continue;
                    EXPECT_EQ(xi_sign(e, i) * xi_sign(eps_flip(e, i), j),
                              -xi_sign(e, j) * xi_sign(eps_flip(e, j), i))
                        << e << " i=" << i << " j=" << j;
                }
            }
}

TEST(TensorKoszulSign, Examples)
{
    EXPECT_EQ(tensor_koszul_sign({0, 0, 0}, 3), 1);
    EXPECT_EQ(tensor_koszul_sign({1, 0}, 2), -1);
    EXPECT_EQ(tensor_koszul_sign({1, 1, 0}, 3), 1);
    EXPECT_THROW(tensor_koszul_sign({1, 1}, 3), std::out_of_range);
}

TEST(Enumerators, Examples)
{
    EXPECT_EQ(enumerate_alphas(2, 3).size(), 4u);
    const auto single = enumerate_alphas(1, 0);
    ASSERT_EQ(single.size(), 1u);
    EXPECT_EQ(single[0], mi({0}));

    const auto e3 = enumerate_masks(3, MaskClass::E);
    const std::vector<EpsilonMask> expected{em({0, 0, 0}), em({0, 1, 1}), em({1, 0, 1}), em({1, 1, 0})};
    EXPECT_EQ(e3, expected);

    const std::vector<MultiIndex> lex{mi({0, 2}), mi({1, 1}), mi({2, 0})};
    EXPECT_EQ(enumerate_alphas(2, 2), lex);
}

TEST(Enumerators, CountsMatchBinomials)
{
    for (int n = 1; n <= 5; ++n) {
        for (int t = 0; t <= 6; ++t)
            EXPECT_EQ(static_cast<long>(enumerate_alphas(n, t).size()), binom(n + t - 1, t));
        long even = 0;
        long odd = 0;
        for (int r = 0; 2 * r <= n; ++r)
            even += binom(n, 2 * r);
        for (int r = 0; 2 * r + 1 <= n; ++r)
            odd += binom(n, 2 * r + 1);
        EXPECT_EQ(static_cast<long>(enumerate_masks(n, MaskClass::E).size()), even);
        EXPECT_EQ(static_cast<long>(enumerate_masks(n, MaskClass::O).size()), odd);
    }
}

TEST(Enumerators, GradedLexIsSorted)
{
    const auto all = enumerate_alphas_upto(3, 4);
    EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
    EXPECT_TRUE(std::adjacent_find(all.begin(), all.end()) == all.end());
}
